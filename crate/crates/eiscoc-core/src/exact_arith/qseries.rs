use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{CycElt, CycField, Rat};
use crate::error::{Error, Result};

/// Truncated q-series Σ c_e q^{e/D} with coefficients in ℚ(μ_K).
///
/// Only exponents `e < prec` are meaningful: the series is known modulo
/// q^{prec/D}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracQSeries {
    field: Arc<CycField>,
    base_denom: u64,
    coeffs: BTreeMap<i64, CycElt>,
    prec: i64,
}

impl FracQSeries {
    pub fn zero(field: &Arc<CycField>, base_denom: u64, prec: i64) -> Self {
        FracQSeries { field: field.clone(), base_denom, coeffs: BTreeMap::new(), prec }
    }

    /// c·q^{e/D} + O(q^{prec/D}).
    pub fn monomial(field: &Arc<CycField>, base_denom: u64, e: i64, c: CycElt, prec: i64) -> Self {
        let mut s = Self::zero(field, base_denom, prec);
        s.insert(e, c);
        s
    }

    pub fn from_terms(
        field: &Arc<CycField>,
        base_denom: u64,
        terms: impl IntoIterator<Item = (i64, CycElt)>,
        prec: i64,
    ) -> Self {
        let mut s = Self::zero(field, base_denom, prec);
        for (e, c) in terms {
            s.insert(e, c);
        }
        s
    }

    fn insert(&mut self, e: i64, c: CycElt) {
        if e >= self.prec {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(|| CycElt::zero(&self.field));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn base_denom(&self) -> u64 {
        self.base_denom
    }

    /// Cutoff as an exponent numerator over the base denominator.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn prec_rat(&self) -> Rat {
        super::rat(self.prec, self.base_denom as i64)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycElt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> Option<&CycElt> {
        self.coeffs.get(&e)
    }

    pub fn leading(&self) -> Option<(i64, &CycElt)> {
        self.coeffs.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn leading_exponent(&self) -> Option<Rat> {
        self.leading().map(|(e, _)| super::rat(e, self.base_denom as i64))
    }

    /// Valuation, or the cutoff for a series indistinguishable from zero.
    fn val(&self) -> i64 {
        self.leading().map(|(e, _)| e).unwrap_or(self.prec)
    }

    /// Same series over a finer base denominator `new_denom` (a multiple of the old one).
    pub fn rebase(&self, new_denom: u64) -> Self {
        assert!(new_denom % self.base_denom == 0, "rebase needs a multiple of the base denominator");
        let k = (new_denom / self.base_denom) as i64;
        FracQSeries {
            field: self.field.clone(),
            base_denom: new_denom,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
            prec: self.prec * k,
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        assert_eq!(self.field.level(), other.field.level(), "mixing coefficient fields");
        let d = self.base_denom.lcm(&other.base_denom);
        (self.rebase(d), other.rebase(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut out = Self::zero(&a.field, a.base_denom, a.prec.min(b.prec));
        for (e, c) in a.terms().chain(b.terms()) {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycElt) -> Self {
        let terms: Vec<_> = self.terms().map(|(e, x)| (e, x * c)).collect();
        Self::from_terms(&self.field, self.base_denom, terms, self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let prec = (a.prec + b.val()).min(b.prec + a.val());
        let mut out = Self::zero(&a.field, a.base_denom, prec);
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                if ea + eb < prec {
                    out.insert(ea + eb, ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial(&self.field, self.base_denom, 0, CycElt::one(&self.field), i64::MAX / 4);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse, known modulo q^{(prec − 2v)/D} where v is the valuation.
    pub fn inverse(&self) -> Result<Self> {
        let (v, lead) = self.leading().ok_or(Error::ZeroLeadingTerm)?;
        let lead_inv = lead.inverse()?;
        let rel = self.prec - v;
        // u = self / (lead q^v) = 1 + h, and s = u^{-1} by the triangular recursion
        let h: Vec<(i64, CycElt)> =
            self.terms().skip(1).map(|(e, c)| (e - v, c * &lead_inv)).collect();
        let mut s: BTreeMap<i64, CycElt> = BTreeMap::new();
        s.insert(0, CycElt::one(&self.field));
        // exponents of s lie in the additive monoid generated by those of h
        let mut frontier: Vec<i64> = alloc::vec![0];
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(0i64);
        while let Some(x) = frontier.pop() {
            for (e, _) in &h {
                let y = x + e;
                if y < rel && seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        for &e in seen.iter().skip(1) {
            let mut acc = CycElt::zero(&self.field);
            for (he, hc) in &h {
                if *he > e {
                    break;
                }
                if let Some(sc) = s.get(&(e - he)) {
                    acc = &acc - &(hc * sc);
                }
            }
            if !acc.is_zero() {
                s.insert(e, acc);
            }
        }
        let terms = s.into_iter().map(|(e, c)| (e - v, &c * &lead_inv));
        Ok(Self::from_terms(&self.field, self.base_denom, terms, rel - v))
    }

    /// Agreement of all coefficients below the smaller cutoff.
    pub fn eq_to_precision(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.sub(&b).coeffs.is_empty()
    }

    /// True when every known term sits at exponent zero.
    pub fn is_constant(&self) -> bool {
        self.terms().all(|(e, _)| e == 0)
    }
}
