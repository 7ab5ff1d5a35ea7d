//! Text and JSON renderings of core values.

use eiscoc_core::circle_complex::CircFn;
use eiscoc_core::cone_laurent::{HomRat, LinForm, PoleSeries};
use eiscoc_core::exact_arith::{CycElt, RfElt};
use eiscoc_core::gm_cocycle::{CycSymbolVec, DefectReport, SymbolSum2};
use eiscoc_core::sl2_toolkit::{Mat2Z, PrimVec};
use eiscoc_core::Rat;
use serde_json::{json, Value};

pub fn rat(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn mat(g: &Mat2Z) -> Value {
    json!([[g.a, g.b], [g.c, g.d]])
}

pub fn vec2(v: PrimVec) -> Value {
    json!([v.x, v.y])
}

pub fn circ(f: &CircFn) -> Value {
    match f {
        CircFn::Const(c) => json!({ "breakpoints": [], "values": [c] }),
        CircFn::Pieces(p) => json!({
            "breakpoints": p.iter().map(|(r, _)| { let (x, y) = r.tuple(); json!([x, y]) }).collect::<Vec<_>>(),
            "values": p.iter().map(|(_, v)| *v).collect::<Vec<_>>(),
        }),
    }
}

pub fn circ_text(f: &CircFn) -> String {
    match f {
        CircFn::Const(c) => format!("constant {c}"),
        CircFn::Pieces(p) => p
            .iter()
            .map(|(r, v)| {
                let (x, y) = r.tuple();
                format!("({x},{y})→{v}")
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

pub fn symbols(s: &SymbolSum2) -> Value {
    json!({
        "terms": s.terms.iter().map(|(c, g)| json!({ "coeff": c, "matrix": mat(g) })).collect::<Vec<_>>(),
        "constant": s.constant,
    })
}

pub fn symbols_text(s: &SymbolSum2) -> String {
    let mut parts: Vec<String> = s
        .terms
        .iter()
        .map(|(c, g)| format!("{c:+}·⟨({},{}),({},{})⟩", g.a, g.c, g.b, g.d))
        .collect();
    if s.constant != 0 {
        parts.push(format!("{:+}·{{−z₁,−z₂}}", s.constant));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

pub fn cyc_vec(v: &CycSymbolVec) -> Value {
    json!({
        "level": v.n,
        "entries": v.entries.iter().map(|(&(a, b), &c)| json!([a, b, c])).collect::<Vec<_>>(),
    })
}

pub fn cyc_vec_text(v: &CycSymbolVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.entries.iter().map(|(&(a, b), &c)| format!("{c:+}·{{1−ζ^{a},1−ζ^{b}}}")).collect::<Vec<_>>().join(" ")
}

pub fn cyc_elt(x: &CycElt) -> Value {
    Value::Array(x.coeffs().iter().map(rat).collect())
}

pub fn rf_elt(x: &RfElt) -> Value {
    json!(x.0)
}

fn form_text(l: &LinForm) -> String {
    match (l.a, l.b) {
        (1, 0) => "u₁".into(),
        (0, 1) => "u₂".into(),
        (a, b) => format!("({a}u₁{b:+}u₂)"),
    }
}

fn denom_text<'a>(d: impl Iterator<Item = (&'a LinForm, &'a u32)>) -> String {
    d.map(|(l, &e)| if e == 1 { form_text(l) } else { format!("{}^{e}", form_text(l)) }).collect::<Vec<_>>().join("·")
}

pub fn homrat_text(h: &HomRat) -> String {
    let deg = h.num.len().saturating_sub(1);
    let num: Vec<String> = h
        .num
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| format!("({c})u₁^{i}u₂^{}", deg - i))
        .collect();
    let num = if num.is_empty() { "0".into() } else { num.join(" + ") };
    if h.denom.is_empty() {
        num
    } else {
        format!("[{num}] / [{}]", denom_text(h.denom.iter()))
    }
}

pub fn homrat(h: &HomRat) -> Value {
    json!({
        "numerator": h.num.iter().map(rat).collect::<Vec<_>>(),
        "denominator": h.denom.iter().map(|(l, e)| json!({ "form": [l.a, l.b], "power": e })).collect::<Vec<_>>(),
    })
}

pub fn pole_series_text(s: &PoleSeries) -> String {
    let num: Vec<String> = s.num.0.iter().map(|((i, j), c)| format!("({c})u₁^{i}u₂^{j}")).collect();
    let num = if num.is_empty() { "0".into() } else { num.join(" + ") };
    format!("[{num} + O(deg {})] / [{}]", s.prec, denom_text(s.denom.iter()))
}

pub fn pole_series(s: &PoleSeries) -> Value {
    json!({
        "numerator": s.num.0.iter().map(|((i, j), c)| json!({ "exp": [i, j], "coeff": rat(c) })).collect::<Vec<_>>(),
        "precision": s.prec,
        "denominator": s.denom.iter().map(|(l, e)| json!({ "form": [l.a, l.b], "power": e })).collect::<Vec<_>>(),
    })
}

pub fn defect(r: &DefectReport) -> Value {
    json!({
        "level": r.n,
        "ell": r.ell,
        "gamma": mat(&r.gamma),
        "doubled": r.doubled,
        "defect": cyc_vec(&r.defect),
        "tame_trivial": r.tame_trivial.iter().map(|(p, t)| json!({ "prime": p, "trivial": t })).collect::<Vec<_>>(),
        "undoubled_tame_trivial": r.undoubled_tame_trivial.as_ref().map(|v| v.iter().map(|(p, t)| json!({ "prime": p, "trivial": t })).collect::<Vec<_>>()),
        "lattice_membership_2adic": r.lattice_membership.map(|m| m.map_or(Value::Null, |k| json!(k))),
    })
}

pub fn defect_text(r: &DefectReport) -> String {
    let mut s = format!("defect ({}): {}\n", if r.doubled { "doubled" } else { "plain" }, cyc_vec_text(&r.defect));
    for (p, t) in &r.tame_trivial {
        s += &format!("tame symbol at {p}: {}\n", if *t { "trivial" } else { "NONTRIVIAL" });
    }
    if let Some(u) = &r.undoubled_tame_trivial {
        for (p, t) in u {
            s += &format!("undoubled tame symbol at {p}: {}\n", if *t { "trivial" } else { "nontrivial" });
        }
    }
    if let Some(m) = r.lattice_membership {
        s += &format!(
            "relation lattice (experimental): {}\n",
            match m {
                Some(k) => format!("2^{k}·defect is a member"),
                None => "not in the span over Z[1/2]".into(),
            }
        );
    }
    s
}
