//! 2×2 integer matrices: connecting sequences, N-connecting sequences,
//! Hecke coset representatives, coset matching and lifts from SL₂(ℤ/N).
//!
//! Entries are `i64`; products are formed in `i128` and narrowed with an
//! overflow check, so a result that does not fit panics instead of wrapping.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact_arith::{gcd_i64, inv_mod, modn};

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in 2x2 integer arithmetic")
}

/// Integer 2×2 matrix (a b; c d).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl fmt::Debug for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Mat2Z {
        Mat2Z { a, b, c, d }
    }

    /// Matrix whose columns are `v` and `w`.
    pub fn from_columns(v: PrimVec, w: PrimVec) -> Mat2Z {
        Mat2Z::new(v.x, w.x, v.y, w.y)
    }

    pub fn col1(&self) -> (i64, i64) {
        (self.a, self.c)
    }

    pub fn col2(&self) -> (i64, i64) {
        (self.b, self.d)
    }

    pub fn det(&self) -> i64 {
        narrow(self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn mul(&self, o: &Mat2Z) -> Mat2Z {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (o.a as i128, o.b as i128, o.c as i128, o.d as i128);
        Mat2Z::new(narrow(a * e + b * g), narrow(a * f + b * h), narrow(c * e + d * g), narrow(c * f + d * h))
    }

    /// (d −b; −c a), so that M·adj(M) = det(M)·I.
    pub fn adjugate(&self) -> Mat2Z {
        Mat2Z::new(self.d, -self.b, -self.c, self.a)
    }

    /// Inverse of an element of GL₂(ℤ).
    pub fn inverse(&self) -> Result<Mat2Z> {
        match self.det() {
            1 => Ok(self.adjugate()),
            -1 => Ok(self.adjugate().scale(-1)),
            _ => Err(Error::NotUnimodular),
        }
    }

    pub fn scale(&self, k: i64) -> Mat2Z {
        Mat2Z::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn transpose(&self) -> Mat2Z {
        Mat2Z::new(self.a, self.c, self.b, self.d)
    }

    /// Row vector times matrix: (x, y)·M.
    pub fn row_act(&self, v: (i64, i64)) -> (i64, i64) {
        let (x, y) = (v.0 as i128, v.1 as i128);
        (narrow(x * self.a as i128 + y * self.c as i128), narrow(x * self.b as i128 + y * self.d as i128))
    }

    /// Matrix times column vector: M·(x, y)ᵀ.
    pub fn col_act(&self, v: (i64, i64)) -> (i64, i64) {
        let (x, y) = (v.0 as i128, v.1 as i128);
        (narrow(self.a as i128 * x + self.b as i128 * y), narrow(self.c as i128 * x + self.d as i128 * y))
    }
}

/// Primitive integer vector (gcd(x, y) = 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimVec {
    pub x: i64,
    pub y: i64,
}

impl fmt::Debug for PrimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl PrimVec {
    /// Accepts only primitive vectors.
    pub fn new(x: i64, y: i64) -> Option<PrimVec> {
        (gcd_i64(x, y) == 1).then_some(PrimVec { x, y })
    }

    /// Primitive vector on the ray through a nonzero (x, y).
    pub fn normalized(x: i64, y: i64) -> PrimVec {
        let g = gcd_i64(x, y);
        assert!(g != 0, "zero vector has no direction");
        PrimVec { x: x / g, y: y / g }
    }

    pub fn neg(self) -> PrimVec {
        PrimVec { x: -self.x, y: -self.y }
    }

    /// Counterclockwise rotation by a quarter turn, i.e. W·v with W = (0 −1; 1 0).
    pub fn rot90(self) -> PrimVec {
        PrimVec { x: -self.y, y: self.x }
    }

    pub fn tuple(self) -> (i64, i64) {
        (self.x, self.y)
    }
}

/// x_v·y_w − y_v·x_w.
pub fn wedge(v: PrimVec, w: PrimVec) -> i64 {
    wedge_raw(v.tuple(), w.tuple())
}

pub(crate) fn wedge_raw(v: (i64, i64), w: (i64, i64)) -> i64 {
    narrow(v.0 as i128 * w.1 as i128 - v.1 as i128 * w.0 as i128)
}

/// Chain v₀ = (0,1), …, v_k with consecutive wedges 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingSeq {
    pub vecs: Vec<PrimVec>,
}

impl ConnectingSeq {
    pub fn len(&self) -> usize {
        self.vecs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.len() == 1
    }

    pub fn endpoint(&self) -> PrimVec {
        *self.vecs.last().unwrap()
    }

    /// Starts at (0,1) and every consecutive wedge is 1.
    pub fn is_valid(&self) -> bool {
        self.vecs.first() == Some(&PrimVec { x: 0, y: 1 })
            && self.vecs.windows(2).all(|w| wedge(w[0], w[1]) == 1)
    }

    /// No second coordinate before the last one is divisible by `n`.
    pub fn avoids(&self, n: u64) -> bool {
        self.vecs[..self.vecs.len() - 1].iter().all(|v| modn(v.y, n) != 0)
    }
}

/// Chain from `u` to `t` (wedge(u, t) > 0) with consecutive wedges 1, staying
/// inside the cone they span.
pub fn farey_chain(u: PrimVec, t: PrimVec) -> Vec<PrimVec> {
    assert!(wedge(u, t) > 0, "farey_chain needs wedge(u, t) > 0");
    let mut tail = vec![t];
    let mut cur = t;
    loop {
        let w = wedge(u, cur) as i128;
        if w == 1 {
            break;
        }
        // x0 with wedge(x0, cur) = 1
        let g = cur.y.extended_gcd(&cur.x);
        debug_assert_eq!(g.gcd.abs(), 1);
        let (s, r) = if g.gcd == 1 { (g.x, g.y) } else { (-g.x, -g.y) };
        let (x0, y0) = (s as i128, -r as i128);
        let base = u.x as i128 * y0 - u.y as i128 * x0;
        let target = (base - 1).rem_euclid(w) + 1;
        let k = (target - base) / w;
        let x = PrimVec { x: narrow(x0 + k * cur.x as i128), y: narrow(y0 + k * cur.y as i128) };
        debug_assert_eq!(wedge(x, cur), 1);
        tail.push(x);
        cur = x;
    }
    let mut out = vec![u];
    out.extend(tail.into_iter().rev());
    out
}

/// A connecting sequence for γ, ending at det(γ)·(b, d).
///
/// Walks counterclockwise from (0,1) along the axes until the target lies
/// less than a half turn ahead, then refines with [`farey_chain`].
pub fn connecting_sequence(g: &Mat2Z) -> Result<ConnectingSeq> {
    let det = g.det();
    if det.abs() != 1 {
        return Err(Error::NotUnimodular);
    }
    let t = PrimVec { x: det * g.b, y: det * g.d };
    let mut cur = PrimVec { x: 0, y: 1 };
    let mut vecs = vec![cur];
    while cur != t {
        if wedge(cur, t) > 0 {
            vecs.extend(farey_chain(cur, t).into_iter().skip(1));
            break;
        }
        cur = cur.rot90();
        vecs.push(cur);
    }
    Ok(ConnectingSeq { vecs })
}

pub fn in_gamma0_tilde(g: &Mat2Z, n: u64) -> bool {
    g.is_unimodular() && modn(g.c, n) == 0
}

pub fn in_gamma1(g: &Mat2Z, n: u64) -> bool {
    g.det() == 1 && modn(g.c, n) == 0 && modn(g.d, n) == 1 % n
}

/// A connecting sequence for γ ∈ Γ̃₀(N) none of whose second coordinates
/// v₀..v_{k−1} is divisible by N.
pub fn n_connecting_sequence(g: &Mat2Z, n: u64) -> Result<ConnectingSeq> {
    if n < 2 || !in_gamma0_tilde(g, n) {
        return Err(Error::NotInGamma0(n));
    }
    let vs = connecting_sequence(g)?.vecs;
    let k = vs.len() - 1;
    let mut out = vec![vs[0]];
    let mut i = 1;
    while i <= k {
        if i < k && modn(vs[i].y, n) == 0 {
            let (p, v, q) = (vs[i - 1], vs[i], vs[i + 1]);
            let t = wedge(p, q);
            let w = |m: i64| PrimVec { x: narrow(q.x as i128 + m as i128 * v.x as i128), y: narrow(q.y as i128 + m as i128 * v.y as i128) };
            let m0 = 1 - t;
            if m0 >= 0 {
                // wedge(w_m, w_{m-1}) = 1
                for m in (0..=m0).rev() {
                    out.push(w(m));
                }
            } else {
                // steps w_m -> w_{m+1} have wedge -1; replace each (x, y) by x, -y, -x, y
                out.push(w(m0));
                for m in m0..0 {
                    let (x, y) = (w(m), w(m + 1));
                    out.push(y.neg());
                    out.push(x.neg());
                    out.push(y);
                }
            }
            i += 2;
        } else {
            out.push(vs[i]);
            i += 1;
        }
    }
    let seq = ConnectingSeq { vecs: out };
    debug_assert!(seq.is_valid() && seq.avoids(n));
    Ok(seq)
}

/// g_j = (ℓ j; 0 1) for 0 ≤ j < ℓ and g_ℓ = (1 0; 0 ℓ).
pub fn hecke_reps(ell: u64) -> Vec<Mat2Z> {
    let l = ell as i64;
    let mut out: Vec<Mat2Z> = (0..l).map(|j| Mat2Z::new(l, j, 0, 1)).collect();
    out.push(Mat2Z::new(1, 0, 0, l));
    out
}

/// Hecke representatives with lower-right entry ≡ 1 mod N:
/// g_j = (ℓ j; 0 1) for j < ℓ and g_ℓ = δ_ℓ·(1 0; 0 ℓ) with
/// δ_ℓ ∈ SL₂(ℤ), δ_ℓ ≡ (ℓ 0; 0 ℓ⁻¹) mod N and δ_ℓ ≡ I mod ℓ. The second
/// congruence keeps g_ℓ in the left coset of (1 0; 0 ℓ).
pub fn hecke_reps_gamma1(ell: u64, n: u64) -> Result<Vec<Mat2Z>> {
    if gcd_i64(ell as i64, n as i64) != 1 {
        return Err(Error::NotCoprime(ell as i64, n as i64));
    }
    let l = ell as i64;
    let inv = inv_mod(l, n).unwrap_or(0) as i64;
    let m = n * ell;
    // x ≡ r mod N, x ≡ s mod ℓ
    let crt = |r: i64, s: i64| -> i64 {
        let u = inv_mod(n as i64, ell).unwrap_or(0) as i128;
        let k = ((s - r) as i128 * u).rem_euclid(ell as i128);
        narrow((r as i128 + k * n as i128).rem_euclid(m as i128))
    };
    let target = Mat2Z::new(crt(modn(l, n) as i64, 1), 0, 0, crt(inv, 1));
    let delta = sl2_lift_mod(m, &target)?;
    let mut out: Vec<Mat2Z> = (0..l).map(|j| Mat2Z::new(l, j, 0, 1)).collect();
    out.push(delta.mul(&Mat2Z::new(1, 0, 0, l)));
    Ok(out)
}

/// Solves γ·g_j = g_{σ(j)}·γ_j with γ_j integral.
pub fn coset_decompose(g: &Mat2Z, reps: &[Mat2Z]) -> Result<(Vec<usize>, Vec<Mat2Z>)> {
    let mut sigma = Vec::with_capacity(reps.len());
    let mut gammas = Vec::with_capacity(reps.len());
    let mut used = vec![false; reps.len()];
    for gj in reps {
        let lhs = g.mul(gj);
        let mut found = None;
        for (i, gi) in reps.iter().enumerate() {
            let det = gi.det();
            let m = gi.adjugate().mul(&lhs);
            if [m.a, m.b, m.c, m.d].iter().all(|x| x % det == 0) {
                found = Some((i, Mat2Z::new(m.a / det, m.b / det, m.c / det, m.d / det)));
                break;
            }
        }
        let (i, gam) = found.ok_or(Error::NotACosetSystem)?;
        if used[i] {
            return Err(Error::NotACosetSystem);
        }
        used[i] = true;
        sigma.push(i);
        gammas.push(gam);
    }
    Ok((sigma, gammas))
}

/// An element of SL₂(ℤ) reducing to the given matrix mod N.
pub fn sl2_lift_mod(n: u64, m: &Mat2Z) -> Result<Mat2Z> {
    if n == 0 {
        return Err(Error::BadDeterminant(n));
    }
    if modn(m.det(), n) != 1 % n {
        return Err(Error::BadDeterminant(n));
    }
    if n == 1 {
        return Ok(Mat2Z::IDENTITY);
    }
    let nn = n as i64;
    let (a, b) = (modn(m.a, n) as i64, modn(m.b, n) as i64);
    let d0 = modn(m.d, n) as i64;
    let mut c = modn(m.c, n) as i64;
    let search = |c: i64| -> Option<i64> {
        // d0, d0 − N, d0 + N, d0 − 2N, …
        (0..4 * nn.max(c.abs()) + 8).map(|t| if t % 2 == 0 { d0 + (t / 2) * nn } else { d0 - (t / 2 + 1) * nn }).find(|&d| gcd_i64(c, d) == 1)
    };
    let d = match search(c) {
        Some(d) => d,
        None => {
            c = nn;
            search(c).expect("a coprime lift exists")
        }
    };
    let e = d.extended_gcd(&c);
    let (s, r) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    // s·d + r·c = 1, so (s, −r; c, d) has determinant 1
    let lift = Mat2Z::new(s, -r, c, d);
    let k = narrow(a as i128 * r as i128 + b as i128 * s as i128).rem_euclid(nn);
    let out = Mat2Z::new(1, k, 0, 1).mul(&lift);
    debug_assert_eq!(out.det(), 1);
    Ok(out)
}
