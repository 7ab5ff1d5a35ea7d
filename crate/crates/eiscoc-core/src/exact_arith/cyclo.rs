use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd_i64, modn, rint, totient, Rat};
use crate::error::{Error, Result};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic_polynomial needs n >= 1");
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut r = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = r[i + dn];
        q[i] = c;
        for (k, &dk) in den.iter().enumerate() {
            r[i + k] -= c * dk;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// The field ℚ(μ_N) presented as ℚ[x]/Φ_N.
#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    n: u64,
    phi: Vec<i64>,
    deg: usize,
    // x^k mod Φ_N for 0 <= k < N
    powers: Vec<Vec<i64>>,
}

impl CycField {
    pub fn new(n: u64) -> Arc<CycField> {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        debug_assert_eq!(deg as u64, totient(n));
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        if deg > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1];
            for k in (1..deg).rev() {
                cur[k] = cur[k - 1] - top * phi[k];
            }
            cur[0] = -top * phi[0];
        }
        Arc::new(CycField { n, phi, deg, powers })
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn phi_poly(&self) -> &[i64] {
        &self.phi
    }

    fn reduce(&self, mut p: Vec<Rat>) -> Vec<Rat> {
        let d = self.deg;
        if p.len() > d {
            for i in (d..p.len()).rev() {
                let c = core::mem::replace(&mut p[i], Rat::zero());
                if c.is_zero() {
                    continue;
                }
                for k in 0..d {
                    if self.phi[k] != 0 {
                        p[i - d + k] -= &c * rint(self.phi[k]);
                    }
                }
            }
            p.truncate(d);
        }
        p.resize(d, Rat::zero());
        p
    }
}

/// An element of ℚ(μ_N) in the power basis 1, ζ, …, ζ^{φ(N)−1}.
#[derive(Clone, PartialEq, Eq)]
pub struct CycElt {
    field: Arc<CycField>,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*z", c)?,
                _ => write!(f, "({})*z^{}", c, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycElt {
    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<Rat>) -> CycElt {
        let coeffs = field.reduce(coeffs);
        CycElt { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<CycField>) -> CycElt {
        CycElt { field: field.clone(), coeffs: vec![Rat::zero(); field.deg] }
    }

    pub fn from_rat(field: &Arc<CycField>, r: Rat) -> CycElt {
        let mut z = CycElt::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn one(field: &Arc<CycField>) -> CycElt {
        CycElt::from_rat(field, Rat::one())
    }

    /// ζ^a.
    pub fn zeta_pow(field: &Arc<CycField>, a: i64) -> CycElt {
        let row = &field.powers[modn(a, field.n) as usize];
        CycElt { field: field.clone(), coeffs: row.iter().map(|&c| rint(c)).collect() }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, r: &Rat) -> CycElt {
        CycElt { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn inverse(&self) -> Result<CycElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rat> = self.field.phi.iter().map(|&c| rint(c)).collect();
        let s = poly::inverse_mod(&trim(self.coeffs.clone()), &modulus);
        Ok(CycElt::from_coeffs(&self.field, s))
    }

    pub fn pow(&self, e: i64) -> Result<CycElt> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycElt::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// σ_j : ζ ↦ ζ^j.
    pub fn galois_apply(&self, j: i64) -> Result<CycElt> {
        let n = self.field.n;
        if gcd_i64(j, n as i64) != 1 {
            return Err(Error::NonUnitIndex(j, n));
        }
        let mut acc = vec![Rat::zero(); self.field.deg];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.field.powers[modn(j * k as i64, n) as usize];
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    acc[t] += c * rint(r);
                }
            }
        }
        Ok(CycElt { field: self.field.clone(), coeffs: acc })
    }

    fn check_same(&self, other: &CycElt) {
        assert_eq!(self.field.n, other.field.n, "mixing cyclotomic fields of different level");
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

impl Add for &CycElt {
    type Output = CycElt;
    fn add(self, rhs: &CycElt) -> CycElt {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycElt { field: self.field.clone(), coeffs }
    }
}

impl Sub for &CycElt {
    type Output = CycElt;
    fn sub(self, rhs: &CycElt) -> CycElt {
        self.check_same(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycElt { field: self.field.clone(), coeffs }
    }
}

impl Neg for &CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        CycElt { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycElt {
    type Output = CycElt;
    fn mul(self, rhs: &CycElt) -> CycElt {
        self.check_same(rhs);
        let d = self.field.deg;
        let mut prod = vec![Rat::zero(); 2 * d.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycElt { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }
}

/// 1 − ζ^a.
pub fn cyc_unit(field: &Arc<CycField>, a: i64) -> Result<CycElt> {
    if modn(a, field.n) == 0 {
        return Err(Error::ZeroIndex(a));
    }
    Ok(&CycElt::one(field) - &CycElt::zeta_pow(field, a))
}

/// Checks η + (1 − y⁻¹)/(1 − x⁻¹y⁻¹) = 1 for η = (1 − x)/(1 − xy), x = ζ^a, y = ζ^b.
pub fn steinberg_unit_identity(field: &Arc<CycField>, a: i64, b: i64) -> Result<bool> {
    for idx in [a, b, a + b] {
        if modn(idx, field.n) == 0 {
            return Err(Error::ZeroIndex(idx));
        }
    }
    let eta = &cyc_unit(field, a)? * &cyc_unit(field, a + b)?.inverse()?;
    let other = &cyc_unit(field, -b)? * &cyc_unit(field, -a - b)?.inverse()?;
    Ok((&eta + &other).is_one())
}

mod poly {
    //! Dense polynomials over ℚ, constant term first, no trailing zeros.
    use super::{trim, Rat};
    use alloc::vec;
    use alloc::vec::Vec;
    use num_traits::{One, Zero};

    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = a.to_vec();
        if a.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut q = vec![Rat::zero(); a.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (k, bk) in b.iter().enumerate() {
                r[i + k] -= &c * bk;
            }
            q[i] = c;
        }
        (trim(q), trim(r))
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    /// s with s·a ≡ 1 mod m, for a coprime to m.
    pub fn inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        let (mut s0, mut s1): (Vec<Rat>, Vec<Rat>) = (Vec::new(), vec![Rat::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        assert!(r1.len() == 1, "inverse_mod: inputs not coprime");
        let c = r1[0].clone();
        s1.iter().map(|x| x / &c).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: u64) -> i64 {
        let f = super::super::factorize(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    // Π_{d|N} (x^{N/d} − 1)^{μ(d)}, by separate products of numerator and denominator.
    fn mobius_oracle(n: u64) -> Vec<i64> {
        let mut num = vec![1i64];
        let mut den = vec![1i64];
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let m = (n / d) as usize;
            let mut f = vec![0i64; m + 1];
            f[0] = -1;
            f[m] = 1;
            let target = match mobius(d) {
                1 => &mut num,
                -1 => &mut den,
                _ => continue,
            };
            let mut out = vec![0i64; target.len() + m];
            for (i, a) in target.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            *target = out;
        }
        // long division num / den, den has leading coefficient ±1
        let dl = den.len() - 1;
        let lead = den[dl];
        let mut r = num.clone();
        let mut q = vec![0i64; num.len() - dl];
        for i in (0..q.len()).rev() {
            let c = r[i + dl] / lead;
            q[i] = c;
            for (k, dk) in den.iter().enumerate() {
                r[i + k] -= c * dk;
            }
        }
        assert!(r.iter().all(|&x| x == 0));
        q
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_matches_mobius_product() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n), mobius_oracle(n), "N = {n}");
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, totient(n));
        }
    }

    #[test]
    fn units_and_inverses() {
        let f2 = CycField::new(2);
        assert_eq!(cyc_unit(&f2, 1).unwrap(), CycElt::from_rat(&f2, rint(2)));
        let f4 = CycField::new(4);
        assert_eq!(cyc_unit(&f4, 2).unwrap(), CycElt::from_rat(&f4, rint(2)));
        let f5 = CycField::new(5);
        let u = cyc_unit(&f5, 1).unwrap();
        assert_eq!(u.coeffs(), &[rint(1), rint(-1), rint(0), rint(0)]);
        assert!((&u.inverse().unwrap() * &u).is_one());
        assert_eq!(cyc_unit(&f5, 10), Err(Error::ZeroIndex(10)));
        assert_eq!(CycElt::zero(&f5).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn galois_action() {
        let f5 = CycField::new(5);
        let z = CycElt::zeta_pow(&f5, 1);
        let x = &(&z * &z) + &CycElt::from_rat(&f5, rat(3, 7));
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert_eq!(z.galois_apply(2).unwrap(), CycElt::zeta_pow(&f5, 2));
        assert_eq!(z.galois_apply(5), Err(Error::NonUnitIndex(5, 5)));
        for n in [5u64, 8, 9, 12] {
            let f = CycField::new(n);
            for j in 1..n as i64 {
                if gcd_i64(j, n as i64) != 1 {
                    continue;
                }
                for a in 1..n as i64 {
                    let lhs = cyc_unit(&f, a).unwrap().galois_apply(j).unwrap();
                    assert_eq!(lhs, cyc_unit(&f, j * a).unwrap());
                }
            }
        }
    }

    use super::super::rat;

    #[test]
    fn steinberg_examples() {
        assert_eq!(steinberg_unit_identity(&CycField::new(5), 1, 2), Ok(true));
        assert_eq!(steinberg_unit_identity(&CycField::new(7), 3, 3), Ok(true));
        assert_eq!(steinberg_unit_identity(&CycField::new(4), 2, 2), Err(Error::ZeroIndex(4)));
    }

    #[test]
    fn norm_relation_in_larger_field() {
        // Π_{i<m} (1 − ζ_{Nm}^{a + iN}) = 1 − ζ_N^{a}, inside ℚ(μ_{Nm}).
        for (n, m) in [(5u64, 2u64), (3, 3), (4, 2), (7, 2)] {
            let big = CycField::new(n * m);
            for a in 1..n as i64 {
                let mut prod = CycElt::one(&big);
                for i in 0..m as i64 {
                    prod = &prod * &cyc_unit(&big, a + i * n as i64).unwrap();
                }
                assert_eq!(prod, cyc_unit(&big, a * m as i64).unwrap());
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elt(n: u64) -> impl Strategy<Value = CycElt> {
            let f = CycField::new(n);
            proptest::collection::vec((-20i64..20, 1i64..6), f.degree()).prop_map(move |cs| {
                CycElt::from_coeffs(&f, cs.into_iter().map(|(a, b)| rat(a, b)).collect())
            })
        }

        proptest! {
            #[test]
            fn inverse_is_inverse(x in elt(9)) {
                prop_assume!(!x.is_zero());
                prop_assert!((&x.inverse().unwrap() * &x).is_one());
            }

            #[test]
            fn galois_is_multiplicative(x in elt(12), y in elt(12), j in prop::sample::select(vec![1i64, 5, 7, 11])) {
                let lhs = (&x * &y).galois_apply(j).unwrap();
                let rhs = &x.galois_apply(j).unwrap() * &y.galois_apply(j).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn ring_distributes(x in elt(7), y in elt(7), z in elt(7)) {
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            }
        }
    }
}
