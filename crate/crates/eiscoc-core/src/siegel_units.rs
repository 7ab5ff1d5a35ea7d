//! q-expansions of 12th powers of Siegel units
//!
//! g_{c/M,d/M}¹² = q^{6B₂(c/M)} Π_{j≥0}(1 − q^{j+c/M}ζ_M^d)¹² Π_{j≥1}(1 − q^{j−c/M}ζ_M^{−d})¹²
//!
//! with 0 ≤ c < M. Products are accumulated in ℤ[C_K][[q^{1/K}]] and only
//! reduced into ℚ(μ_K) at the end.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{gcd_i64, modn, CycElt, CycField, FracQSeries, Rat};

/// Smallest precision accepted by [`distribution_check`].
pub const MIN_PREC: i64 = 20;

/// Truncated series on the grid q^{t/K}, t < prec, with coefficients in
/// the group ring ℤ[ℤ/K].
struct GridSeries {
    k: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl GridSeries {
    fn one(k: usize, prec: usize) -> Self {
        let mut coeffs = vec![vec![BigInt::zero(); k]; prec];
        if prec > 0 {
            coeffs[0][0] = BigInt::one();
        }
        GridSeries { k, coeffs }
    }

    /// Multiply by 1 − q^{t/K}ζ^a.
    fn mul_factor(&mut self, t: usize, a: usize) {
        let k = self.k;
        for i in (t..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            let src = if t == 0 { hi[0].clone() } else { lo[i - t].clone() };
            for (j, x) in src.iter().enumerate() {
                if !x.is_zero() {
                    hi[0][(j + a) % k] -= x;
                }
            }
        }
    }

    fn to_cyc(&self, field: &Arc<CycField>) -> Vec<CycElt> {
        self.coeffs
            .iter()
            .map(|row| CycElt::from_coeffs(field, row.iter().map(|x| Rat::from_integer(x.clone())).collect()))
            .collect()
    }
}

/// 6B₂(u/K)·K² for 0 ≤ u < K.
fn bernoulli_shift(u: i64, k: i64) -> i64 {
    6 * u * u - 6 * u * k + k * k
}

/// g¹²_{c/M, d/M} over ℚ(μ_K), M | K, known modulo q^{prec/K} relative to
/// its leading term. Exponents are numerators over K².
pub fn siegel_g12_in(c: i64, d: i64, m_level: u64, k_level: u64, prec: i64) -> Result<FracQSeries> {
    assert!(k_level % m_level == 0, "ambient level must be a multiple of M");
    let (c, d) = (modn(c, m_level) as i64, modn(d, m_level) as i64);
    if c == 0 && d == 0 {
        return Err(Error::TorsionIndexZero);
    }
    if prec < 1 {
        return Err(Error::PrecisionTooLow);
    }
    let (mm, kk) = (m_level as i64, k_level as i64);
    let r = kk / mm;
    let (u, zd) = (c * r, d * r);
    let p = prec as usize;
    let mut s = GridSeries::one(k_level as usize, p);
    for j in 0.. {
        let t1 = j * kk + u;
        let t2 = (j + 1) * kk - u;
        if t1 >= prec && t2 >= prec {
            break;
        }
        for _ in 0..12 {
            if t1 < prec {
                s.mul_factor(t1 as usize, modn(zd, k_level) as usize);
            }
            if t2 < prec {
                s.mul_factor(t2 as usize, modn(-zd, k_level) as usize);
            }
        }
    }
    let field = CycField::new(k_level);
    let shift = bernoulli_shift(u, kk);
    let terms = s.to_cyc(&field).into_iter().enumerate().map(|(t, x)| (t as i64 * kk + shift, x));
    Ok(FracQSeries::from_terms(&field, k_level * k_level, terms, prec * kk + shift))
}

/// g¹²_{c/M, d/M} over ℚ(μ_M), exponents over M².
pub fn siegel_g12(c: i64, d: i64, m_level: u64, prec: i64) -> Result<FracQSeries> {
    siegel_g12_in(c, d, m_level, m_level, prec)
}

/// ₘg¹² = (g¹²_{c/M,d/M})^{m²} · (g¹²_{mc/M,md/M})⁻¹.
pub fn m_siegel_g12(m: i64, c: i64, d: i64, m_level: u64, prec: i64) -> Result<FracQSeries> {
    let ml = m_level as i64;
    let cond = (ml / gcd_i64(c, ml)) * (ml / gcd_i64(d, ml));
    if m <= 0 || gcd_i64(m, cond) != 1 {
        return Err(Error::BadAuxiliary);
    }
    let g = siegel_g12(c, d, m_level, prec)?;
    let h = siegel_g12(m * c, m * d, m_level, prec)?;
    Ok(g.pow((m * m) as u32).mul(&h.inverse()?))
}

/// Π_{i,j<m} g¹²_{(c+iM)/Mm, (d+jM)/Mm} divided by g¹²_{c/M,d/M}: returns
/// the constant ratio and whether it is a root of unity.
pub fn distribution_check(m: u64, c: i64, d: i64, m_level: u64, prec: i64) -> Result<(CycElt, bool)> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow);
    }
    if m == 0 {
        return Err(Error::BadAuxiliary);
    }
    let k = m_level * m;
    let (c, d) = (modn(c, m_level) as i64, modn(d, m_level) as i64);
    let ml = m_level as i64;
    let rhs = siegel_g12_in(c, d, m_level, k, prec)?;
    let mut lhs: Option<FracQSeries> = None;
    for i in 0..m as i64 {
        for j in 0..m as i64 {
            let g = siegel_g12_in(c + i * ml, d + j * ml, k, k, prec)?;
            lhs = Some(match lhs {
                None => g,
                Some(acc) => acc.mul(&g),
            });
        }
    }
    let lhs = lhs.expect("m ≥ 1");
    let (el, cl) = lhs.leading().ok_or(Error::ZeroLeadingTerm)?;
    let (er, cr) = rhs.leading().ok_or(Error::ZeroLeadingTerm)?;
    let ratio = cl * &cr.inverse()?;
    let constant = el == er && lhs.eq_to_precision(&rhs.scale(&ratio));
    let order = 2u64.lcm(&k) as i64;
    let root = constant && ratio.pow(order)?.is_one();
    Ok((ratio, root))
}
