//! Independent reference computations used by the verification suites.
//! None of these call the corresponding routine in the core crate.

use eiscoc_core::exact_arith::{CycElt, CycField, FracQSeries};
use eiscoc_core::int_lattice::IntMat;
use eiscoc_core::sl2_toolkit::PrimVec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

type Rows = Vec<Vec<BigInt>>;

pub fn to_rows(m: &IntMat) -> Rows {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Row Hermite normal form by plain elementary row operations.
pub fn naive_hnf(m: &IntMat) -> Rows {
    let mut h = to_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    let pr = h[r].clone();
                    for (x, y) in h[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                    done &= h[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pr = h[r].clone();
            for i in 0..r {
                let q = h[i][c].div_floor(&pr[c]);
                for (x, y) in h[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
    }
    h
}

/// Fraction-free determinant.
pub fn det_bareiss(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// d_k = gcd of all k×k minors, for k = 1..min(rows, cols).
pub fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                    g = g.gcd(&det_bareiss(&sub));
                }
            }
            g
        })
        .collect()
}

/// Smith invariants from determinantal divisors.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<i128> {
    let d = determinantal_divisors(m);
    let mut prev = 1i128;
    d.iter()
        .map(|&x| {
            if x == 0 {
                0
            } else {
                let s = x / prev;
                prev = x;
                s
            }
        })
        .collect()
}

/// Integral solvability of M·x = b by comparing determinantal divisors of
/// M and [M | b].
pub fn solvable_by_minors(m: &[Vec<i64>], b: &[i64]) -> bool {
    let rank = |d: &[i128]| d.iter().take_while(|&&x| x != 0).count();
    let dm = determinantal_divisors(m);
    let aug: Vec<Vec<i64>> = m.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    let da = determinantal_divisors(&aug);
    let (rm, ra) = (rank(&dm), rank(&da));
    if rm != ra {
        return false;
    }
    rm == 0 || dm[rm - 1] == da[rm - 1]
}

/// Whether `v` lies in the row lattice spanned by an echelon basis.
pub fn in_row_lattice(basis: &Rows, v: &[BigInt]) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        let (q, r) = w[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in w.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    w.iter().all(Zero::is_zero)
}

fn wedge(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Counterclockwise chain from u to t (u∧t > 0) with unit wedges, built
/// greedily from u.
fn chain_ccw(u: (i128, i128), t: (i128, i128)) -> Vec<(i128, i128)> {
    let mut out = vec![u];
    let mut u = u;
    loop {
        let w_ut = wedge(u, t);
        if w_ut == 1 {
            out.push(t);
            return out;
        }
        let e = u.0.extended_gcd(&u.1);
        // u.0·x + u.1·y = ±1, so w0 = (−y, x)·sign has u∧w0 = 1
        let s = if e.gcd == 1 { 1 } else { -1 };
        let w0 = (-e.y * s, e.x * s);
        debug_assert_eq!(wedge(u, w0), 1);
        let k = Integer::div_floor(&(-wedge(w0, t)), &w_ut) + 1;
        let w = (w0.0 + k * u.0, w0.1 + k * u.1);
        out.push(w);
        u = w;
    }
}

/// A connecting sequence from (0, 1) to `target`, generally different
/// from the core one: a random first step, then a greedy chain, then
/// random mediant insertions.
pub fn alt_connecting_sequence(target: (i64, i64), rng: &mut impl Rng) -> Vec<PrimVec> {
    let t = (target.0 as i128, target.1 as i128);
    let u = (0i128, 1i128);
    let mut seq: Vec<(i128, i128)>;
    if t == u {
        seq = vec![u];
    } else {
        let w = (-1i128, rng.gen_range(-3i128..=3));
        if wedge(w, t) > 0 {
            seq = vec![u];
            seq.extend(chain_ccw(w, t));
        } else {
            seq = vec![u];
            let mut cur = u;
            while wedge(cur, t) <= 0 && cur != t {
                cur = (-cur.1, cur.0);
                seq.push(cur);
            }
            if cur != t {
                seq.pop();
                seq.extend(chain_ccw(cur, t));
            }
        }
    }
    let inserts = if seq.len() > 1 { rng.gen_range(0..4) } else { 0 };
    for _ in 0..inserts {
        let i = rng.gen_range(0..seq.len() - 1);
        let m = (seq[i].0 + seq[i + 1].0, seq[i].1 + seq[i + 1].1);
        seq.insert(i + 1, m);
    }
    seq.into_iter().map(|(x, y)| PrimVec::new(x as i64, y as i64).expect("primitive")).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod_prime(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Tame symbol at the prime above ℓ of Σ c·{1 − ζ^a, 1 − ζ^b} for
/// N = ℓ^r with ℓ odd, evaluated in F_ℓ from leading terms in
/// π = 1 − ζ_N: 1 − ζ^{uℓ^s} ≡ u·π^{ℓ^s}.
pub fn telescoping_tame(n: u64, ell: u64, terms: &[((u64, u64), i64)]) -> Option<u64> {
    if ell == 2 || {
        let mut m = n;
        while m % ell == 0 {
            m /= ell;
        }
        m != 1
    } {
        return None;
    }
    let lead = |x: u64| -> (u64, u64) {
        let (mut u, mut v) = (x % n, 1u64);
        while u % ell == 0 {
            u /= ell;
            v *= ell;
        }
        (u % ell, v)
    };
    let mut acc = 1u64;
    for &((a, b), c) in terms {
        let (ua, va) = lead(a);
        let (ub, vb) = lead(b);
        let sign = if (va * vb) % 2 == 1 { ell - 1 } else { 1 };
        let num = pow_mod(ub, va, ell);
        let den = pow_mod(ua, vb, ell);
        let t = sign * num % ell * inv_mod_prime(den, ell) % ell;
        let e = c.rem_euclid((ell - 1) as i64) as u64;
        acc = acc * pow_mod(t, e, ell) % ell;
    }
    Some(acc)
}

/// Telescoped closed form Π d_{i−1}/d_i along a sequence of second
/// coordinates, all units mod ℓ.
pub fn telescoping_product(ds: &[i64], ell: u64) -> Option<u64> {
    let mut acc = 1u64;
    for w in ds.windows(2) {
        let (p, q) = (w[0].rem_euclid(ell as i64) as u64, w[1].rem_euclid(ell as i64) as u64);
        if p == 0 || q == 0 {
            return None;
        }
        acc = acc * p % ell * inv_mod_prime(q, ell) % ell;
    }
    Some(acc)
}

/// g¹²_{c/M,d/M} over ℚ(μ_K) by multiplying one factor at a time, with
/// exponents over K² and `prec` steps of q^{1/K}.
pub fn naive_g12(c: i64, d: i64, m: u64, k: u64, prec: i64) -> FracQSeries {
    let f = CycField::new(k);
    let (mi, ki) = (m as i64, k as i64);
    let (c, d) = (c.rem_euclid(mi), d.rem_euclid(mi));
    let r = ki / mi;
    let d2 = k * k;
    let one = CycElt::one(&f);
    let mut acc = FracQSeries::monomial(&f, d2, 0, one.clone(), prec * ki);
    for j in 0..=prec {
        for (e, z) in [((j * mi + c) * r, d * r), (((j + 1) * mi - c) * r, -d * r)] {
            if e < prec {
                let fac = FracQSeries::from_terms(&f, d2, [(0, one.clone()), (e * ki, -&CycElt::zeta_pow(&f, z))], prec * ki);
                acc = acc.mul(&fac);
            }
        }
    }
    let u = c * r;
    let shift = FracQSeries::monomial(&f, d2, 6 * u * u - 6 * u * ki + ki * ki, one, i64::MAX / 4);
    acc.pow(12).mul(&shift)
}

/// Ratio of the two sides of the distribution relation from
/// [`naive_g12`], or None if it is not constant to precision.
pub fn naive_distribution_ratio(m: u64, c: i64, d: i64, ml: u64, prec: i64) -> Option<CycElt> {
    let k = ml * m;
    let rhs = naive_g12(c, d, ml, k, prec);
    let mut lhs = FracQSeries::monomial(rhs.field(), k * k, 0, CycElt::one(rhs.field()), i64::MAX / 4);
    let (c, d) = (c.rem_euclid(ml as i64), d.rem_euclid(ml as i64));
    for i in 0..m as i64 {
        for j in 0..m as i64 {
            lhs = lhs.mul(&naive_g12(c + i * ml as i64, d + j * ml as i64, k, k, prec));
        }
    }
    let ratio = lhs.leading()?.1 * &rhs.leading()?.1.inverse().ok()?;
    lhs.eq_to_precision(&rhs.scale(&ratio)).then_some(ratio)
}

/// Dedekind sum by the sawtooth definition over ℚ.
pub fn dedekind_sawtooth(p: i64, q: i64) -> eiscoc_core::Rat {
    use eiscoc_core::exact_arith::rat;
    let saw = |x: eiscoc_core::Rat| -> eiscoc_core::Rat {
        if x.is_integer() {
            eiscoc_core::Rat::zero()
        } else {
            &x - x.floor() - rat(1, 2)
        }
    };
    let mut acc = eiscoc_core::Rat::zero();
    for k in 1..q {
        acc += saw(rat(k, q)) * saw(rat(p * k, q));
    }
    acc
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
