use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eiscoc::cache::Cache;
use eiscoc::render;
use eiscoc::suites::{self, Config, DEFAULT_SEED};
use eiscoc_core::circle_complex::Ray;
use eiscoc_core::cone_laurent::{dedekind_sum, phi_pair, rademacher_compare, theta_l_arc};
use eiscoc_core::exact_arith::FracQSeries;
use eiscoc_core::gm_cocycle::{defect_report, specialize_theta_n, theta_gamma};
use eiscoc_core::siegel_units::siegel_g12;
use eiscoc_core::sl2_toolkit::Mat2Z;
use eiscoc_core::Rat;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "eiscoc", version, about = "Exact computations with the Eisenstein cocycle")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symbol sum of γ and its image on the circle.
    Theta {
        #[arg(long, value_parser = parse_mat)]
        gamma: Mat2Z,
    },
    /// Cyclotomic specialization at level N.
    ThetaN {
        #[arg(long)]
        level: u64,
        #[arg(long, value_parser = parse_mat)]
        gamma: Mat2Z,
    },
    /// Hecke-Eisenstein defect with tame symbols.
    Defect {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_parser = parse_mat)]
        gamma: Mat2Z,
        /// Also test membership in the relation lattice (experimental).
        #[arg(long)]
        lattice: bool,
    },
    /// Regularized value φ(γ₁, γ₂).
    Phi {
        #[arg(long, value_parser = parse_mat)]
        gamma: Mat2Z,
        #[arg(long, value_parser = parse_mat, default_value = "1 0 0 1")]
        gamma2: Mat2Z,
    },
    /// Dedekind sum s(p, q).
    Dedekind {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        q: i64,
    },
    /// Both sides of Rademacher's formula.
    Rademacher {
        #[arg(long, value_parser = parse_mat)]
        gamma: Mat2Z,
    },
    /// Toric Todd series of the arc from l1 to l2.
    Brion {
        #[arg(long, value_parser = parse_vec)]
        l1: (i64, i64),
        #[arg(long, value_parser = parse_vec)]
        l2: (i64, i64),
        #[arg(long, default_value_t = 4)]
        prec: u32,
    },
    /// q-expansion of g¹²_{c/M, d/M}.
    Siegel {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 20)]
        prec: i64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        slow: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn parse_mat(s: &str) -> Result<Mat2Z, String> {
    match ints(s)?[..] {
        [a, b, c, d] => Ok(Mat2Z::new(a, b, c, d)),
        _ => Err("expected four integers \"a b c d\"".into()),
    }
}

fn parse_vec(s: &str) -> Result<(i64, i64), String> {
    match ints(s)?[..] {
        [x, y] => Ok((x, y)),
        _ => Err("expected two integers \"x y\"".into()),
    }
}

fn ray(v: (i64, i64)) -> Result<Ray, String> {
    Ray::new(v.0, v.1).ok_or_else(|| format!("{v:?} is not primitive"))
}

fn unimodular(g: &Mat2Z) -> Result<(), String> {
    if g.det().abs() == 1 {
        Ok(())
    } else {
        Err(format!("{g} is not in GL2(Z)"))
    }
}

fn series_text(s: &FracQSeries) -> String {
    let k = s.base_denom();
    let mut out = String::new();
    for (e, c) in s.terms() {
        let cs: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
        out += &format!("q^({e}/{k}): [{}]\n", cs.join(", "));
    }
    out += &format!("+ O(q^{})\n", s.prec_rat());
    out
}

fn series_json(s: &FracQSeries) -> Value {
    json!({
        "exponent_denominator": s.base_denom(),
        "terms": s.terms().map(|(e, c)| json!({ "exp": e, "coeff": render::cyc_elt(c) })).collect::<Vec<_>>(),
        "precision": render::rat(&s.prec_rat()),
    })
}

fn emit(fmt: Format, text: String, value: Value) {
    match fmt {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializes")),
    }
}

fn rat_line(r: &Rat) -> String {
    format!("{r}\n")
}

fn run(cli: Cli) -> Result<bool, String> {
    let fmt = cli.format;
    let e = |e: eiscoc_core::Error| e.to_string();
    match cli.cmd {
        Cmd::Theta { gamma } => {
            unimodular(&gamma)?;
            let t = theta_gamma(&gamma).map_err(e)?;
            let f = t.n_image().map_err(e)?;
            emit(
                fmt,
                format!("symbols: {}\ncircle: {}\n", render::symbols_text(&t), render::circ_text(&f)),
                json!({ "gamma": render::mat(&gamma), "symbols": render::symbols(&t), "circle": render::circ(&f) }),
            );
        }
        Cmd::ThetaN { level, gamma } => {
            let v = specialize_theta_n(&gamma, level).map_err(e)?;
            emit(fmt, format!("{}\n", render::cyc_vec_text(&v)), render::cyc_vec(&v));
        }
        Cmd::Defect { level, ell, gamma, lattice } => {
            let lat = if lattice { Some(Cache::from_env().relation_lattice(level).map_err(e)?) } else { None };
            let r = defect_report(&gamma, ell, level, lat.as_ref()).map_err(e)?;
            emit(fmt, render::defect_text(&r), render::defect(&r));
        }
        Cmd::Phi { gamma, gamma2 } => {
            let v = phi_pair(&gamma, &gamma2).map_err(e)?;
            emit(fmt, rat_line(&v), render::rat(&v));
        }
        Cmd::Dedekind { p, q } => {
            let v = dedekind_sum(p, q).map_err(e)?;
            emit(fmt, rat_line(&v), render::rat(&v));
        }
        Cmd::Rademacher { gamma } => {
            let (l, r) = rademacher_compare(&gamma).map_err(e)?;
            emit(
                fmt,
                format!("phi: {l}\nformula: {r}\n"),
                json!({ "phi": render::rat(&l), "formula": render::rat(&r) }),
            );
        }
        Cmd::Brion { l1, l2, prec } => {
            let s = theta_l_arc(ray(l1)?, ray(l2)?, prec).map_err(e)?;
            emit(fmt, format!("{}\n", render::pole_series_text(&s)), render::pole_series(&s));
        }
        Cmd::Siegel { level, c, d, prec } => {
            let s = siegel_g12(c, d, level, prec).map_err(e)?;
            emit(fmt, series_text(&s), series_json(&s));
        }
        Cmd::Verify { suite, seed, slow, report } => {
            let cfg = Config { seed, slow };
            let r = suites::run_suite(&suite, &cfg, &Cache::from_env()).ok_or("unknown suite")?;
            if let Some(p) = report {
                std::fs::write(&p, r.to_json()).map_err(|err| format!("{}: {err}", p.display()))?;
            }
            match fmt {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            return Ok(r.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
