use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{cyclotomic_polynomial, is_prime, CycElt};
use crate::error::{Error, Result};

/// Search cap on ℓ^deg when looking for the least irreducible factor.
const SEARCH_CAP: u64 = 1 << 22;

/// Residue field 𝔽_ℓ[t]/(f) at one prime above ℓ in ℤ[μ_N], with f the
/// least monic irreducible factor of Φ_N mod ℓ (smallest degree, then
/// lexicographic from the leading coefficient down).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    ell: u64,
    n: u64,
    modulus: Vec<u64>,
}

/// Element of a [`ResidueField`]: coefficients in 𝔽_ℓ, constant term first,
/// length equal to the field degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RfElt(pub Vec<u64>);

impl ResidueField {
    pub fn new(n: u64, ell: u64) -> Result<ResidueField> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let phi: Vec<u64> =
            cyclotomic_polynomial(n).iter().map(|&c| c.rem_euclid(ell as i64) as u64).collect();
        for deg in 1..phi.len() {
            let count = (ell as u128).pow(deg as u32);
            if count > SEARCH_CAP as u128 {
                return Err(Error::ResidueFieldTooLarge);
            }
            for idx in 0..count as u64 {
                let mut cand = vec![0u64; deg + 1];
                cand[deg] = 1;
                let mut rest = idx;
                for k in 0..deg {
                    cand[k] = rest % ell;
                    rest /= ell;
                }
                // idx enumerates with the constant term as least significant digit,
                // so increasing idx is lexicographic from c_{deg-1} down to c_0.
                if poly_rem(&phi, &cand, ell).iter().all(|&c| c == 0) {
                    return Ok(ResidueField { ell, n, modulus: cand });
                }
            }
        }
        unreachable!("Φ_N has a monic factor of degree ≤ φ(N)")
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.ell as u128).pow(self.degree() as u32)
    }

    pub fn from_int(&self, a: i64) -> RfElt {
        let mut v = vec![0u64; self.degree()];
        v[0] = a.rem_euclid(self.ell as i64) as u64;
        RfElt(v)
    }

    pub fn one(&self) -> RfElt {
        self.from_int(1)
    }

    pub fn is_one(&self, x: &RfElt) -> bool {
        *x == self.one()
    }

    pub fn mul(&self, x: &RfElt, y: &RfElt) -> RfElt {
        let p = self.ell;
        let mut prod = vec![0u64; x.0.len() + y.0.len()];
        for (i, &a) in x.0.iter().enumerate() {
            for (j, &b) in y.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        self.reduce(prod)
    }

    pub fn pow(&self, x: &RfElt, e: i64) -> Result<RfElt> {
        let base = if e < 0 { self.inverse(x)? } else { x.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self, x: &RfElt) -> Result<RfElt> {
        if x.0.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero);
        }
        let q = self.size();
        let e = (q - 2) as i64;
        self.pow(x, e)
    }

    fn reduce(&self, mut p: Vec<u64>) -> RfElt {
        let ell = self.ell;
        let d = self.degree();
        for i in (d..p.len()).rev() {
            let c = p[i] % ell;
            p[i] = 0;
            if c == 0 {
                continue;
            }
            for k in 0..d {
                p[i - d + k] = (p[i - d + k] + (ell - c) * self.modulus[k]) % ell;
            }
        }
        p.resize(d, 0);
        for c in p.iter_mut() {
            *c %= ell;
        }
        RfElt(p)
    }

    /// Image of ζ_N ↦ t. Coefficients must have denominators prime to ℓ.
    pub fn reduce_at(&self, x: &CycElt) -> Result<RfElt> {
        assert_eq!(x.field().level(), self.n, "reduce_at: level mismatch");
        let ell = BigInt::from(self.ell);
        let mut out = vec![0u64; x.coeffs().len().max(self.degree())];
        for (k, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let den = c.denom().mod_floor(&ell).to_u64().unwrap();
            if den == 0 {
                return Err(Error::NonIntegral);
            }
            let num = c.numer().mod_floor(&ell).to_u64().unwrap();
            out[k] = num * modpow(den, self.ell - 2, self.ell) % self.ell;
        }
        Ok(self.reduce(out))
    }
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
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

/// a mod b over 𝔽_ℓ, b monic.
fn poly_rem(a: &[u64], b: &[u64], ell: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return r;
    }
    for i in (db..r.len()).rev() {
        let c = r[i] % ell;
        if c == 0 {
            continue;
        }
        for k in 0..=db {
            r[i - db + k] = (r[i - db + k] + (ell - c) * b[k]) % ell;
        }
    }
    r.truncate(db);
    r
}
