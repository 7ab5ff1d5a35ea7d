//! Generating functions of two-dimensional cones as truncated Laurent series,
//! their degree-zero parts, regularized values, φ, Dedekind sums and the
//! lift of 12Θ.
//!
//! A linear form λ = a·u₁ + b·u₂ is a [`LinForm`]. Series are stored as a
//! truncated numerator over a product of forms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::circle_complex::{delta, theta_tilde, unimodular_subdivision, CircFn, Ray};
use crate::error::{Error, Result};
use crate::exact_arith::{rat, rint, Rat};
use crate::sl2_toolkit::{wedge, Mat2Z, PrimVec};

/// Primitive linear form a·u₁ + b·u₂ whose first nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub a: i64,
    pub b: i64,
}

impl LinForm {
    /// Writes a nonzero (a, b) as k·L with L normalized; returns (L, k).
    pub fn normalize(a: i64, b: i64) -> (LinForm, i64) {
        assert!(a != 0 || b != 0, "zero linear form");
        let mut g = a.gcd(&b);
        if a < 0 || (a == 0 && b < 0) {
            g = -g;
        }
        (LinForm { a: a / g, b: b / g }, g)
    }

    /// The form vanishing on the line through v.
    pub fn vanishing_on(v: PrimVec) -> LinForm {
        Self::normalize(-v.y, v.x).0
    }

    pub fn eval(&self, x: i64, y: i64) -> Rat {
        rint(self.a * x + self.b * y)
    }
}

/// Bivariate polynomial, keyed by exponents (i, j) of u₁ⁱu₂ʲ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2(pub BTreeMap<(u32, u32), Rat>);

impl Poly2 {
    pub fn constant(c: Rat) -> Poly2 {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((0, 0), c);
        }
        Poly2(m)
    }

    fn add_term(&mut self, k: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn truncate(&mut self, prec: u32) {
        self.0.retain(|(i, j), _| i + j < prec);
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &o.0 {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Poly2 {
        if s.is_zero() {
            return Poly2::default();
        }
        Poly2(self.0.iter().map(|(k, c)| (*k, c * s)).collect())
    }

    pub fn mul_trunc(&self, o: &Poly2, prec: u32) -> Poly2 {
        let mut out = Poly2::default();
        for ((i, j), c) in &self.0 {
            for ((k, l), d) in &o.0 {
                if i + j + k + l < prec {
                    out.add_term((i + k, j + l), c * d);
                }
            }
        }
        out
    }

    pub fn mul_form(&self, l: LinForm, prec: u32) -> Poly2 {
        let mut out = Poly2::default();
        let (a, b) = (rint(l.a), rint(l.b));
        for ((i, j), c) in &self.0 {
            if i + j + 1 < prec {
                out.add_term((i + 1, *j), c * &a);
                out.add_term((*i, j + 1), c * &b);
            }
        }
        out
    }

    /// Σ_k t_k·λᵏ truncated below total degree `prec`.
    fn series_in_form(t: &[Rat], l: LinForm, prec: u32) -> Poly2 {
        let mut out = Poly2::default();
        let mut pw = Poly2::constant(Rat::one());
        for (k, tk) in t.iter().enumerate() {
            if k as u32 >= prec {
                break;
            }
            out = out.add(&pw.scale(tk));
            pw = pw.mul_form(l, prec);
        }
        out
    }

    /// Homogeneous component of degree d, as coefficients of u₁ⁱu₂^{d−i}.
    pub fn homogeneous(&self, d: u32) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); d as usize + 1];
        for ((i, j), c) in &self.0 {
            if i + j == d {
                out[*i as usize] = c.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Coefficients of x/(1 − e^{−x}) through degree T.
pub fn todd_coeffs(t: usize) -> Vec<Rat> {
    // (1 − e^{−x})/x = Σ (−1)^k x^k/(k+1)!, inverted as a power series
    let mut fact = BigInt::one();
    let mut g = Vec::with_capacity(t + 1);
    for k in 0..=t {
        fact *= BigInt::from(k as u64 + 1);
        let s = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        g.push(Rat::new(s, fact.clone()));
    }
    let mut out: Vec<Rat> = Vec::with_capacity(t + 1);
    for n in 0..=t {
        if n == 0 {
            out.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        for k in 1..=n {
            acc += &g[k] * &out[n - k];
        }
        out.push(-acc);
    }
    out
}

/// num / Π denom, with num known below total degree `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSeries {
    pub denom: BTreeMap<LinForm, u32>,
    pub num: Poly2,
    pub prec: u32,
}

impl PoleSeries {
    pub fn constant(c: Rat, prec: u32) -> PoleSeries {
        let mut num = Poly2::constant(c);
        num.truncate(prec);
        PoleSeries { denom: BTreeMap::new(), num, prec }
    }

    pub fn denom_degree(&self) -> u32 {
        self.denom.values().sum()
    }

    fn lift_to(&self, target: &BTreeMap<LinForm, u32>) -> PoleSeries {
        let mut num = self.num.clone();
        let mut prec = self.prec;
        let mut denom = self.denom.clone();
        for (l, &e) in target {
            let have = self.denom.get(l).copied().unwrap_or(0);
            for _ in have..e {
                prec += 1;
                num = num.mul_form(*l, prec);
            }
            denom.insert(*l, e.max(have));
        }
        PoleSeries { denom, num, prec }
    }

    pub fn add(&self, o: &PoleSeries) -> PoleSeries {
        let mut common = self.denom.clone();
        for (l, &e) in &o.denom {
            let x = common.entry(*l).or_insert(0);
            *x = (*x).max(e);
        }
        let (a, b) = (self.lift_to(&common), o.lift_to(&common));
        let prec = a.prec.min(b.prec);
        let mut num = a.num.add(&b.num);
        num.truncate(prec);
        PoleSeries { denom: common, num, prec }
    }

    pub fn scale(&self, s: &Rat) -> PoleSeries {
        PoleSeries { denom: self.denom.clone(), num: self.num.scale(s), prec: self.prec }
    }

    pub fn sub(&self, o: &PoleSeries) -> PoleSeries {
        self.add(&o.scale(&-Rat::one()))
    }

    /// Zero as far as the precision allows.
    pub fn is_zero_to_precision(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality of the represented Laurent series to the common precision.
    pub fn eq_to_precision(&self, o: &PoleSeries) -> bool {
        self.sub(o).is_zero_to_precision()
    }
}

/// Dual basis forms (λ₁, λ₂) of a pair with ν₁∧ν₂ = 1.
pub fn dual_forms(nu1: PrimVec, nu2: PrimVec) -> ((i64, i64), (i64, i64)) {
    ((nu2.y, -nu2.x), (-nu1.y, nu1.x))
}

/// 1/((1 − e^{−λ₁})(1 − e^{−λ₂})) with the numerator truncated at degree T.
pub fn theta_l_unimodular(nu1: PrimVec, nu2: PrimVec, t: u32) -> Result<PoleSeries> {
    if wedge(nu1, nu2) != 1 {
        return Err(Error::NotUnimodular);
    }
    let prec = t + 1;
    let td = todd_coeffs(t as usize);
    let (l1, l2) = dual_forms(nu1, nu2);
    let (f1, k1) = LinForm::normalize(l1.0, l1.1);
    let (f2, k2) = LinForm::normalize(l2.0, l2.1);
    // Todd(λ) is a series in λ = k·f; the denominator λ₁λ₂ = k₁k₂·f₁f₂
    let scaled = |k: i64| -> Vec<Rat> {
        let mut pw = Rat::one();
        td.iter()
            .map(|c| {
                let out = c * &pw;
                pw *= rint(k);
                out
            })
            .collect()
    };
    let s1 = Poly2::series_in_form(&scaled(k1), f1, prec);
    let s2 = Poly2::series_in_form(&scaled(k2), f2, prec);
    let num = s1.mul_trunc(&s2, prec).scale(&rat(1, k1 * k2));
    let mut denom = BTreeMap::new();
    *denom.entry(f1).or_insert(0) += 1;
    *denom.entry(f2).or_insert(0) += 1;
    Ok(PoleSeries { denom, num, prec })
}

/// θ_L of the counterclockwise arc, summed over a unimodular subdivision.
pub fn theta_l_arc(l1: Ray, l2: Ray, t: u32) -> Result<PoleSeries> {
    if l1 == l2 {
        return Err(Error::EmptyArc);
    }
    let chain = unimodular_subdivision(l1, l2);
    let mut acc: Option<PoleSeries> = None;
    for w in chain.windows(2) {
        let s = theta_l_unimodular(w[0], w[1], t)?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.add(&s),
        });
    }
    Ok(acc.unwrap())
}

/// Homogeneous degree-zero rational function: Σ cᵢu₁ⁱu₂^{D−i} / Π Lᵉ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomRat {
    pub num: Vec<Rat>,
    pub denom: BTreeMap<LinForm, u32>,
}

impl HomRat {
    pub fn constant(c: Rat) -> HomRat {
        HomRat { num: vec![c], denom: BTreeMap::new() }.reduced()
    }

    /// L₁/L₂ for two forms.
    pub fn ratio(l1: (i64, i64), l2: (i64, i64)) -> HomRat {
        let (f2, k2) = LinForm::normalize(l2.0, l2.1);
        let mut denom = BTreeMap::new();
        denom.insert(f2, 1);
        let k = rat(1, k2);
        HomRat { num: vec![rint(l1.1) * &k, rint(l1.0) * &k], denom }.reduced()
    }

    pub fn degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        (self.denom.is_empty()).then(|| self.num[0].clone())
    }

    fn mul_form(num: &[Rat], l: LinForm) -> Vec<Rat> {
        let (a, b) = (rint(l.a), rint(l.b));
        let mut out = vec![Rat::zero(); num.len() + 1];
        for (i, c) in num.iter().enumerate() {
            out[i + 1] += c * &a;
            out[i] += c * &b;
        }
        out
    }

    /// Exact quotient of num by l, if l divides it.
    fn div_form(num: &[Rat], l: LinForm) -> Option<Vec<Rat>> {
        let d = num.len() - 1;
        if d == 0 {
            return None;
        }
        let (a, b) = (rint(l.a), rint(l.b));
        let mut q = vec![Rat::zero(); d];
        if !b.is_zero() {
            q[0] = &num[0] / &b;
            for i in 1..d {
                q[i] = (&num[i] - &a * &q[i - 1]) / &b;
            }
            (num[d] == &a * &q[d - 1]).then_some(q)
        } else {
            if !num[0].is_zero() {
                return None;
            }
            for i in 1..=d {
                q[i - 1] = &num[i] / &a;
            }
            Some(q)
        }
    }

    /// Cancels common factors; the zero function becomes the constant 0.
    pub fn reduced(mut self) -> HomRat {
        if self.is_zero() {
            return HomRat { num: vec![Rat::zero()], denom: BTreeMap::new() };
        }
        let forms: Vec<LinForm> = self.denom.keys().copied().collect();
        for l in forms {
            while let Some(e) = self.denom.get(&l).copied() {
                match Self::div_form(&self.num, l) {
                    Some(q) => {
                        self.num = q;
                        if e == 1 {
                            self.denom.remove(&l);
                        } else {
                            self.denom.insert(l, e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn add(&self, o: &HomRat) -> HomRat {
        let mut common = self.denom.clone();
        for (l, &e) in &o.denom {
            let x = common.entry(*l).or_insert(0);
            *x = (*x).max(e);
        }
        let lift = |h: &HomRat| -> Vec<Rat> {
            let mut num = h.num.clone();
            for (l, &e) in &common {
                for _ in h.denom.get(l).copied().unwrap_or(0)..e {
                    num = Self::mul_form(&num, *l);
                }
            }
            num
        };
        let (x, y) = (lift(self), lift(o));
        let num = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        HomRat { num, denom: common }.reduced()
    }

    pub fn scale(&self, s: &Rat) -> HomRat {
        HomRat { num: self.num.iter().map(|c| c * s).collect(), denom: self.denom.clone() }.reduced()
    }

    pub fn sub(&self, o: &HomRat) -> HomRat {
        self.add(&o.scale(&-Rat::one()))
    }

    /// Value at an integer point off the polar lines.
    pub fn eval(&self, x: i64, y: i64) -> Result<Rat> {
        let mut den = Rat::one();
        for (l, &e) in &self.denom {
            let v = l.eval(x, y);
            if v.is_zero() {
                return Err(Error::DegenerateDirection);
            }
            den *= num_traits::pow::pow(v, e as usize);
        }
        let d = self.degree();
        let (xr, yr) = (rint(x), rint(y));
        let mut num = Rat::zero();
        for (i, c) in self.num.iter().enumerate() {
            num += c * num_traits::pow::pow(xr.clone(), i) * num_traits::pow::pow(yr.clone(), d - i);
        }
        Ok(num / den)
    }
}

/// The degree-zero component P^{(deg L)}/L of a pole series.
pub fn degree_zero(s: &PoleSeries) -> Result<HomRat> {
    let d = s.denom_degree();
    if s.prec <= d {
        return Err(Error::InsufficientPrecision);
    }
    Ok(HomRat { num: s.num.homogeneous(d), denom: s.denom.clone() }.reduced())
}

/// Degree-zero part of the counterclockwise arc [ℓ1, ℓ2].
pub fn theta0_arc(l1: Ray, l2: Ray) -> Result<HomRat> {
    if l1 == l2 {
        return Err(Error::EmptyArc);
    }
    let chain = unimodular_subdivision(l1, l2);
    let mut acc = HomRat::constant(Rat::zero());
    for w in chain.windows(2) {
        let s = theta_l_unimodular(w[0], w[1], 2)?;
        acc = acc.add(&degree_zero(&s)?);
    }
    Ok(acc)
}

// product of binary forms given by coefficient vectors in (X, Y), X-power index
fn bin_mul(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// h = A₁ + A₂ with A₁ polar only along `first` = 0 and A₂ only along the
/// other denominator form; the constant term goes to A₁.
pub fn pf_split(h: &HomRat, first: LinForm) -> Result<(HomRat, HomRat)> {
    let h = h.clone().reduced();
    let others: Vec<LinForm> = h.denom.keys().copied().filter(|l| *l != first).collect();
    if others.len() > 1 {
        return Err(Error::DenominatorNotSplit);
    }
    let q = match others.first() {
        Some(q) => *q,
        None if first.a != 0 => LinForm { a: 0, b: 1 },
        None => LinForm { a: 1, b: 0 },
    };
    let ep = h.denom.get(&first).copied().unwrap_or(0) as usize;
    let eq = h.denom.get(&q).copied().unwrap_or(0) as usize;
    let d = h.degree();
    debug_assert_eq!(d, ep + eq);
    // u = M⁻¹(P, Q)
    let (pa, pb, qa, qb) = (rint(first.a), rint(first.b), rint(q.a), rint(q.b));
    let det = &pa * &qb - &pb * &qa;
    // u₁ = (qb·P − pb·Q)/det, u₂ = (−qa·P + pa·Q)/det; vectors indexed by P-power
    let u1 = [-&pb / &det, &qb / &det];
    let u2 = [&pa / &det, -&qa / &det];
    let u1 = [u1[0].clone(), u1[1].clone()];
    let u2 = [u2[0].clone(), u2[1].clone()];
    // coefficient vectors are indexed by the power of P (index 0 = Q-only)
    let mut pows1 = vec![vec![Rat::one()]];
    let mut pows2 = vec![vec![Rat::one()]];
    for _ in 0..d {
        pows1.push(bin_mul(pows1.last().unwrap(), &u1));
        pows2.push(bin_mul(pows2.last().unwrap(), &u2));
    }
    let mut c = vec![Rat::zero(); d + 1];
    for (i, ci) in h.num.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let term = bin_mul(&pows1[i], &pows2[d - i]);
        for (k, t) in term.iter().enumerate() {
            c[k] += ci * t;
        }
    }
    // A₁ = Σ_{k ≤ eP} c_k P^k Q^{eP−k} / P^{eP}, A₂ = Σ_{k > eP} c_k P^{k−eP} Q^{D−k} / Q^{eQ}
    let expand = |coeffs: &[(usize, usize, Rat)]| -> Vec<Rat> {
        let deg = coeffs.first().map(|t| t.0 + t.1).unwrap_or(0);
        let mut out = vec![Rat::zero(); deg + 1];
        for (kp, kq, ck) in coeffs {
            let mut poly = vec![ck.clone()];
            for _ in 0..*kp {
                poly = HomRat::mul_form(&poly, first);
            }
            for _ in 0..*kq {
                poly = HomRat::mul_form(&poly, q);
            }
            for (i, x) in poly.into_iter().enumerate() {
                out[i] += x;
            }
        }
        out
    };
    let a1_terms: Vec<(usize, usize, Rat)> = (0..=ep).map(|k| (k, ep - k, c[k].clone())).collect();
    let a2_terms: Vec<(usize, usize, Rat)> = (ep + 1..=d).map(|k| (k - ep, d - k, c[k].clone())).collect();
    let mut d1 = BTreeMap::new();
    if ep > 0 {
        d1.insert(first, ep as u32);
    }
    let mut d2 = BTreeMap::new();
    if eq > 0 {
        d2.insert(q, eq as u32);
    }
    let a1 = HomRat { num: expand(&a1_terms), denom: d1 }.reduced();
    let a2 = if a2_terms.is_empty() {
        HomRat::constant(Rat::zero())
    } else {
        HomRat { num: expand(&a2_terms), denom: d2 }.reduced()
    };
    Ok((a1, a2))
}

fn same_line(a: PrimVec, b: PrimVec) -> bool {
    wedge(a, b) == 0
}

/// Regularized value A₁(ν₁′) + A₂(ν₂′) of the degree-zero part on [ν₁, ν₂].
pub fn reg_value(nu1: PrimVec, nu1p: PrimVec, nu2: PrimVec, nu2p: PrimVec) -> Result<Rat> {
    if same_line(nu1, nu2) || same_line(nu1, nu1p) || same_line(nu2, nu2p) {
        return Err(Error::DegenerateDirection);
    }
    let h = theta0_arc(Ray::from_vec(nu1), Ray::from_vec(nu2))?;
    let (a1, a2) = pf_split(&h, LinForm::vanishing_on(nu1))?;
    Ok(a1.eval(nu1p.x, nu1p.y)? + a2.eval(nu2p.x, nu2p.y)?)
}

/// ν = ℝ₊(−1,0)γ⁻¹ and ν′ = (0,−1)γ⁻¹ for γ ∈ SL₂(ℤ).
fn nu_pair(g: &Mat2Z) -> (PrimVec, PrimVec) {
    (PrimVec { x: -g.d, y: g.b }, PrimVec { x: g.c, y: -g.a })
}

/// φ(γ₁, γ₂), extended to coincident lines through the cocycle relation.
pub fn phi_pair(g1: &Mat2Z, g2: &Mat2Z) -> Result<Rat> {
    if g1.det() != 1 || g2.det() != 1 {
        return Err(Error::NotUnimodular);
    }
    let (n1, n1p) = nu_pair(g1);
    let (n2, n2p) = nu_pair(g2);
    if !same_line(n1, n2) {
        return reg_value(n1, n1p, n2, n2p);
    }
    let mut k = 0i64;
    let g3 = loop {
        let g3 = Mat2Z::new(1, k, 0, 1);
        let n3 = nu_pair(&g3).0;
        if !same_line(n3, n1) {
            break g3;
        }
        k = if k > 0 { -k } else { 1 - k };
    };
    let n3 = nu_pair(&g3).0;
    let d = delta(Ray::from_vec(n1), Ray::from_vec(n2), Ray::from_vec(n3));
    Ok(rint(d) - phi_pair(g2, &g3)? + phi_pair(g1, &g3)?)
}

/// s(p, q) = Σ_{k=1}^{q−1} ((k/q))((pk/q)).
pub fn dedekind_sum(p: i64, q: i64) -> Result<Rat> {
    if q < 1 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    // each term is (2k − q)(2r − q)/(4q²) with r = pk mod q ≠ 0
    let mut acc: i128 = 0;
    let (q1, p1) = (q as i128, p as i128);
    for k in 1..q1 {
        let r = (p1 * k).rem_euclid(q1);
        if r != 0 {
            acc += (2 * k - q1) * (2 * r - q1);
        }
    }
    Ok(Rat::new(BigInt::from(acc), BigInt::from(4 * q1 * q1)))
}

/// (φ(I, γ), 1/4 + s(p,q) − (p+q′)/(12q)) with (p p′; q q′) the
/// transpose-inverse of γ.
pub fn rademacher_compare(g: &Mat2Z) -> Result<(Rat, Rat)> {
    if g.det() != 1 {
        return Err(Error::NotUnimodular);
    }
    let (p, q, qp) = (g.d, -g.b, g.a);
    if q <= 0 {
        return Err(Error::BadOrientation);
    }
    let lhs = phi_pair(&Mat2Z::IDENTITY, g)?;
    let rhs = rat(1, 4) + dedekind_sum(p, q)? - Rat::new(BigInt::from(p) + BigInt::from(qp), BigInt::from(12) * BigInt::from(q));
    Ok((lhs, rhs))
}

/// (12·θ̃(γ), 12·φ(I, γ)).
pub fn lift12_value(g: &Mat2Z) -> Result<(CircFn, Rat)> {
    let f = theta_tilde(g)?.scale(12);
    let c = phi_pair(&Mat2Z::IDENTITY, g)? * rint(12);
    Ok((f, c))
}

/// The lift as a single function: 12θ̃(γ) − 12φ(I, γ)·1.
pub fn lift12_function(g: &Mat2Z) -> Result<CircFn> {
    let (f, c) = lift12_value(g)?;
    if !c.is_integer() {
        return Err(Error::NonIntegral);
    }
    let c = c.to_integer().to_i64().expect("small constant");
    Ok(f.add_const(-c))
}

/// F(γ₁γ₂) = γ₁·F(γ₂) + F(γ₁) for the lift F.
pub fn lift12_cocycle_check(g1: &Mat2Z, g2: &Mat2Z) -> Result<bool> {
    let lhs = lift12_function(&g1.mul(g2))?;
    let rhs = lift12_function(g2)?.act(g1)?.add(&lift12_function(g1)?);
    Ok(lhs == rhs)
}

/// Whether 12·x is an integer.
pub fn in_twelfths(x: &Rat) -> bool {
    (x * rint(12)).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(x: i64, y: i64) -> PrimVec {
        PrimVec::new(x, y).unwrap()
    }

    fn r(x: i64, y: i64) -> Ray {
        Ray::new(x, y).unwrap()
    }

    // Bernoulli numbers by the recurrence Σ_{j≤m} C(m+1, j) B_j = 0, B₁ flipped to +1/2.
    fn bernoulli_plus(n: usize) -> Vec<Rat> {
        let mut b: Vec<Rat> = vec![Rat::one()];
        let binom = |n: usize, k: usize| -> BigInt {
            let mut out = BigInt::one();
            for i in 0..k {
                out = out * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            out
        };
        for m in 1..=n {
            let mut s = Rat::zero();
            for (j, bj) in b.iter().enumerate() {
                s += Rat::from_integer(binom(m + 1, j)) * bj;
            }
            b.push(-s / Rat::from_integer(BigInt::from(m + 1)));
        }
        if n >= 1 {
            b[1] = rat(1, 2);
        }
        b
    }

    #[test]
    fn todd_examples() {
        let t = todd_coeffs(4);
        assert_eq!(t, vec![rint(1), rat(1, 2), rat(1, 12), rint(0), rat(-1, 720)]);
        let b = bernoulli_plus(14);
        let t = todd_coeffs(14);
        let mut f = BigInt::one();
        for k in 0..=14 {
            if k > 0 {
                f *= BigInt::from(k);
            }
            assert_eq!(t[k], &b[k] / Rat::from_integer(f.clone()));
        }
    }

    #[test]
    fn unimodular_examples() {
        let s = theta_l_unimodular(pv(1, 0), pv(0, 1), 3).unwrap();
        assert_eq!(s.denom.len(), 2);
        assert!(s.denom.contains_key(&LinForm { a: 1, b: 0 }) && s.denom.contains_key(&LinForm { a: 0, b: 1 }));
        assert_eq!(s.num.0.get(&(1, 1)), Some(&rat(1, 4)));
        assert_eq!(s.num.0.get(&(2, 0)), Some(&rat(1, 12)));
        assert_eq!(s.num.0.get(&(2, 1)), Some(&rat(1, 24)));
        assert_eq!(s.num.0.get(&(3, 0)), None);
        let s0 = theta_l_unimodular(pv(1, 0), pv(0, 1), 0).unwrap();
        assert_eq!(s0.num, Poly2::constant(Rat::one()));
        assert_eq!(theta_l_unimodular(pv(1, 0), pv(1, 2), 3), Err(Error::NotUnimodular));
        // ν1=(0,1), ν2=(−1,0): λ₁ = (0,1)·adj.. checked against a 2×2 inverse
        let (l1, l2) = dual_forms(pv(0, 1), pv(-1, 0));
        for (l, j) in [(l1, 0), (l2, 1)] {
            for (k, v) in [pv(0, 1), pv(-1, 0)].iter().enumerate() {
                assert_eq!(l.0 * v.x + l.1 * v.y, (j == k) as i64);
            }
        }
    }

    #[test]
    fn arc_examples() {
        let a = theta_l_arc(r(1, 0), r(0, 1), 5).unwrap();
        let b = theta_l_unimodular(pv(1, 0), pv(0, 1), 5).unwrap();
        assert!(a.eq_to_precision(&b));
        let split = theta_l_arc(r(1, 0), r(1, 1), 5).unwrap().add(&theta_l_arc(r(1, 1), r(0, 1), 5).unwrap());
        assert!(split.eq_to_precision(&b));
        assert_eq!(theta_l_arc(r(1, 0), r(1, 0), 5), Err(Error::EmptyArc));
    }

    fn brion_defect_ok(a: Ray, b: Ray, c: Ray, t: u32) -> bool {
        let th = |x: Ray, y: Ray| if x == y { PoleSeries::constant(Rat::zero(), t + 1) } else { theta_l_arc(x, y, t).unwrap() };
        let lhs = th(a, b).add(&th(b, c)).sub(&th(a, c));
        lhs.eq_to_precision(&PoleSeries::constant(rint(delta(a, b, c)), t + 1))
    }

    #[test]
    fn brion_additivity_small() {
        let rays = [r(1, 0), r(2, 1), r(0, 1), r(-1, 2), r(-1, -1), r(1, -3), r(-2, 1)];
        for &a in &rays {
            for &b in &rays {
                for &c in &rays {
                    assert!(brion_defect_ok(a, b, c, 4), "{a:?} {b:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn degree_zero_examples() {
        let s = theta_l_unimodular(pv(1, 0), pv(0, 1), 2).unwrap();
        let h = degree_zero(&s).unwrap();
        let tl3 = HomRat::constant(rat(1, 4)).add(&HomRat::ratio((1, 0), (0, 1)).add(&HomRat::ratio((0, 1), (1, 0))).scale(&rat(1, 12)));
        assert_eq!(h, tl3);
        let c = PoleSeries::constant(rat(3, 7), 4);
        assert_eq!(degree_zero(&c).unwrap(), HomRat::constant(rat(3, 7)));
        let low = theta_l_unimodular(pv(1, 0), pv(0, 1), 1).unwrap();
        assert_eq!(degree_zero(&low), Err(Error::InsufficientPrecision));
        // linearity
        let s2 = theta_l_unimodular(pv(1, 1), pv(0, 1), 3).unwrap();
        assert_eq!(degree_zero(&s.add(&s2)).unwrap(), h.add(&degree_zero(&s2).unwrap()));
    }

    #[test]
    fn degree_zero_matches_closed_form() {
        // 1/4 + (λ₁/λ₂ + λ₂/λ₁)/12 for every unimodular pair in a box
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let Some(v) = PrimVec::new(x, y) else { continue };
                for k in -2..=2 {
                    let e = x.extended_gcd(&y);
                    let (s, t) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
                    let w = pv(-t + k * x, s + k * y);
                    let (l1, l2) = dual_forms(v, w);
                    let want = HomRat::constant(rat(1, 4)).add(&HomRat::ratio(l1, l2).add(&HomRat::ratio(l2, l1)).scale(&rat(1, 12)));
                    let got = degree_zero(&theta_l_unimodular(v, w, 4).unwrap()).unwrap();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn pf_split_examples() {
        let l1 = LinForm { a: 1, b: 0 };
        let l2 = LinForm { a: 0, b: 1 };
        let r12 = HomRat::ratio((1, 0), (0, 1));
        let r21 = HomRat::ratio((0, 1), (1, 0));
        let tl3 = HomRat::constant(rat(1, 4)).add(&r12.add(&r21).scale(&rat(1, 12)));
        // poles of A₁ along λ₂ = 0
        let (a1, a2) = pf_split(&tl3, l2).unwrap();
        assert_eq!(a1, HomRat::constant(rat(1, 4)).add(&r12.scale(&rat(1, 12))));
        assert_eq!(a2, r21.scale(&rat(1, 12)));
        let (a1, a2) = pf_split(&r21.scale(&rat(1, 12)), l2).unwrap();
        assert!(a1.is_zero() && a2 == r21.scale(&rat(1, 12)));
        let (a1, a2) = pf_split(&HomRat::constant(rint(5)), l1).unwrap();
        assert_eq!((a1, a2), (HomRat::constant(rint(5)), HomRat::constant(rint(0))));
        let three = r12.add(&HomRat::ratio((1, 0), (1, 1)));
        assert_eq!(pf_split(&three, l1), Err(Error::DenominatorNotSplit));
    }

    #[test]
    fn reg_value_examples() {
        let v = reg_value(pv(-1, 0), pv(0, -1), pv(0, -1), pv(1, 0)).unwrap();
        assert_eq!(v, rat(1, 4));
        assert_eq!(reg_value(pv(1, 0), pv(-1, 0), pv(0, 1), pv(1, 1)), Err(Error::DegenerateDirection));
        assert_eq!(reg_value(pv(1, 0), pv(0, 1), pv(-1, 0), pv(1, 1)), Err(Error::DegenerateDirection));
        let a = reg_value(pv(-1, 0), pv(1, -2), pv(2, -3), pv(1, 1)).unwrap();
        // degree zero: rescaling the auxiliary points changes nothing
        let h = theta0_arc(r(-1, 0), r(2, -3)).unwrap();
        let (a1, a2) = pf_split(&h, LinForm::vanishing_on(pv(-1, 0))).unwrap();
        assert_eq!(a1.eval(3, -6).unwrap() + a2.eval(5, 5).unwrap(), a.clone());
        // moving the constant between the pieces changes nothing
        let c = rat(7, 5);
        assert_eq!(a1.add(&HomRat::constant(c.clone())).eval(1, -2).unwrap() + a2.sub(&HomRat::constant(c)).eval(1, 1).unwrap(), a.clone());
        // with ν′ completing ν to a basis the value lies in (1/12)ℤ
        assert!(in_twelfths(&reg_value(pv(-1, 0), pv(0, -1), pv(2, -3), pv(1, -1)).unwrap()));
    }

    #[test]
    fn phi_examples() {
        let s = Mat2Z::new(0, -1, 1, 0);
        assert_eq!(phi_pair(&Mat2Z::IDENTITY, &s).unwrap(), rat(1, 4));
        assert_eq!(phi_pair(&s, &s).unwrap(), rint(0));
        assert_eq!(phi_pair(&Mat2Z::IDENTITY, &Mat2Z::IDENTITY).unwrap(), rint(0));
        let (l, rr) = rademacher_compare(&s).unwrap();
        assert_eq!((l, rr), (rat(1, 4), rat(1, 4)));
        assert_eq!(rademacher_compare(&Mat2Z::new(0, 1, -1, 0)), Err(Error::BadOrientation));
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(0, 1).unwrap(), rint(0));
        assert_eq!(dedekind_sum(1, 3).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(1, 2).unwrap(), rint(0));
        assert_eq!(dedekind_sum(2, 4), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn lift12_examples() {
        let (f, c) = lift12_value(&Mat2Z::IDENTITY).unwrap();
        assert_eq!((f, c), (CircFn::zero(), rint(0)));
        let s = Mat2Z::new(0, -1, 1, 0);
        let t = Mat2Z::new(1, 1, 0, 1);
        assert!(lift12_cocycle_check(&s, &t).unwrap());
        assert!(lift12_cocycle_check(&s, &s).unwrap());
        assert!(lift12_cocycle_check(&t, &s.mul(&t)).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sl2(b: i64) -> impl Strategy<Value = Mat2Z> {
            (-b..=b, -b..=b).prop_filter_map("coprime", |(a, c)| {
                if a.gcd(&c) != 1 {
                    return None;
                }
                let e = a.extended_gcd(&c);
                let (s, t) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
                Some(Mat2Z::new(a, -t, c, s))
            })
        }

        fn ray(b: i64) -> impl Strategy<Value = Ray> {
            (-b..=b, -b..=b).prop_filter_map("nonzero", |(x, y)| Ray::new(x, y))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn reciprocity(p in 1i64..400, q in 1i64..400) {
                prop_assume!(p.gcd(&q) == 1);
                let lhs = dedekind_sum(p, q).unwrap() + dedekind_sum(q, p).unwrap();
                let rhs = rat(-1, 4) + (Rat::new(p.into(), q.into()) + Rat::new(q.into(), p.into()) + Rat::new(1.into(), (p * q).into())) / rint(12);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn phi_cocycle(g1 in sl2(30), g2 in sl2(30), g3 in sl2(30)) {
                let d = delta(Ray::from_vec(nu_pair(&g1).0), Ray::from_vec(nu_pair(&g2).0), Ray::from_vec(nu_pair(&g3).0));
                let lhs = phi_pair(&g1, &g2).unwrap() + phi_pair(&g2, &g3).unwrap() - phi_pair(&g1, &g3).unwrap();
                prop_assert_eq!(lhs, rint(d));
            }

            #[test]
            fn phi_left_invariant(g in sl2(20), g1 in sl2(20), g2 in sl2(20)) {
                prop_assert_eq!(phi_pair(&g.mul(&g1), &g.mul(&g2)).unwrap(), phi_pair(&g1, &g2).unwrap());
            }

            #[test]
            fn rademacher(g in sl2(60)) {
                prop_assume!(g.b < 0);
                let (l, r) = rademacher_compare(&g).unwrap();
                prop_assert_eq!(l, r);
            }

            #[test]
            fn lift_cocycle(g1 in sl2(40), g2 in sl2(40)) {
                prop_assert!(in_twelfths(&phi_pair(&Mat2Z::IDENTITY, &g1).unwrap()));
                prop_assert!(lift12_cocycle_check(&g1, &g2).unwrap());
            }

            #[test]
            fn brion(a in ray(6), b in ray(6), c in ray(6), t in prop::sample::select(vec![4u32, 6])) {
                prop_assert!(brion_defect_ok(a, b, c, t));
            }

            #[test]
            fn pf_split_sums_back(a in ray(8), b in ray(8)) {
                prop_assume!(wedge(a.dir(), b.dir()) != 0);
                let h = theta0_arc(a, b).unwrap();
                let (a1, a2) = pf_split(&h, LinForm::vanishing_on(a.dir())).unwrap();
                prop_assert_eq!(a1.add(&a2), h);
            }
        }
    }
}
