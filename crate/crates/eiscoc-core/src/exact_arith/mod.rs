//! Rationals, cyclotomic fields, residue fields and fractional q-series.

mod cyclo;
mod qseries;
mod residue;

pub use cyclo::{cyc_unit, cyclotomic_polynomial, steinberg_unit_identity, CycElt, CycField};
pub use qseries::FracQSeries;
pub use residue::{ResidueField, RfElt};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Distinct prime factors with multiplicity, ascending.
pub fn factorize(mut n: u64) -> alloc::vec::Vec<(u64, u32)> {
    let mut out = alloc::vec::Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == alloc::vec![(n, 1)]
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Representative of `a` in `0..n`.
pub fn modn(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: i64, n: u64) -> Option<u64> {
    let n = n as i64;
    let g = a.rem_euclid(n).extended_gcd(&n);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n) as u64)
}

/// 2-adic valuation of a nonzero integer.
pub(crate) fn v2(x: &BigInt) -> u64 {
    x.trailing_zeros().unwrap_or(0)
}
