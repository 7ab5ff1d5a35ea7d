//! Symbols on 𝔾ₘ², the cocycle Θ, its specialization Θ_N at a torsion
//! point of order N, Manin symbols, the cyclotomic relation lattice and
//! tame symbols of the specialized values.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::circle_complex::{symbol_to_circ, CircFn};
use crate::error::{Error, Result};
use crate::exact_arith::{cyc_unit, factorize, gcd_i64, modn, totient, CycElt, CycField, ResidueField, RfElt};
use crate::int_lattice::{ColumnLattice, IntMat};
use crate::sl2_toolkit::{
    coset_decompose, connecting_sequence, hecke_reps_gamma1, in_gamma1, n_connecting_sequence, ConnectingSeq, Mat2Z, PrimVec,
};

/// Σ cᵢ⟨γᵢ⟩ + k·{−z₁, −z₂}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolSum2 {
    pub terms: Vec<(i64, Mat2Z)>,
    pub constant: i64,
}

impl SymbolSum2 {
    pub fn push(&mut self, c: i64, g: Mat2Z) {
        self.terms.push((c, g));
    }

    pub fn add(&self, o: &SymbolSum2) -> SymbolSum2 {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().copied());
        SymbolSum2 { terms, constant: self.constant + o.constant }
    }

    pub fn neg(&self) -> SymbolSum2 {
        SymbolSum2 { terms: self.terms.iter().map(|&(c, g)| (-c, g)).collect(), constant: -self.constant }
    }

    /// Pullback γ*⟨ρ⟩ = ⟨γρ⟩.
    pub fn pullback(&self, g: &Mat2Z) -> SymbolSum2 {
        SymbolSum2 { terms: self.terms.iter().map(|&(c, r)| (c, g.mul(&r))).collect(), constant: self.constant }
    }

    /// The n-image; two sums are equal exactly when their n-images are.
    pub fn n_image(&self) -> Result<CircFn> {
        let mut out = CircFn::Const(self.constant);
        for &(c, g) in &self.terms {
            let v = PrimVec::new(g.a, g.c).ok_or(Error::NotUnimodular)?;
            let w = PrimVec::new(g.b, g.d).ok_or(Error::NotUnimodular)?;
            out = out.add(&symbol_to_circ(v, w)?.scale(c));
        }
        Ok(out)
    }
}

/// Σ c·⟨a, c⟩ over primitive vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivSymbolSum(pub BTreeMap<PrimVec, i64>);

impl DivSymbolSum {
    pub fn add_at(&mut self, v: PrimVec, c: i64) {
        let e = self.0.entry(v).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&v);
        }
    }

    pub fn single(v: PrimVec) -> DivSymbolSum {
        let mut out = DivSymbolSum::default();
        out.add_at(v, 1);
        out
    }

    pub fn add(&self, o: &DivSymbolSum) -> DivSymbolSum {
        let mut out = self.clone();
        for (v, c) in &o.0 {
            out.add_at(*v, *c);
        }
        out
    }

    pub fn sub(&self, o: &DivSymbolSum) -> DivSymbolSum {
        let mut out = self.clone();
        for (v, c) in &o.0 {
            out.add_at(*v, -*c);
        }
        out
    }
}

fn pv(x: i64, y: i64) -> PrimVec {
    PrimVec::new(x, y).expect("column of a unimodular matrix")
}

/// ∂⟨γ⟩ = ⟨a,c⟩ − ⟨−b,−d⟩ (det 1) or ⟨−a,−c⟩ − ⟨b,d⟩ (det −1).
pub fn boundary2(s: &SymbolSum2) -> Result<DivSymbolSum> {
    let mut out = DivSymbolSum::default();
    for &(k, g) in &s.terms {
        match g.det() {
            1 => {
                out.add_at(pv(g.a, g.c), k);
                out.add_at(pv(-g.b, -g.d), -k);
            }
            -1 => {
                out.add_at(pv(-g.a, -g.c), k);
                out.add_at(pv(g.b, g.d), -k);
            }
            _ => return Err(Error::NotUnimodular),
        }
    }
    Ok(out)
}

/// ∂⟨a, c⟩ = e, so the coefficient of e is the coefficient sum.
pub fn boundary1(d: &DivSymbolSum) -> i64 {
    d.0.values().sum()
}

/// γ*⟨0,1⟩.
pub fn pullback_01(g: &Mat2Z) -> Result<DivSymbolSum> {
    match g.det() {
        1 => Ok(DivSymbolSum::single(pv(g.b, g.d))),
        -1 => Ok(DivSymbolSum::single(pv(-g.b, -g.d))),
        _ => Err(Error::NotUnimodular),
    }
}

/// Σ⟨vᵢ, −v_{i−1}⟩ along a given connecting sequence.
pub fn theta_from_sequence(seq: &ConnectingSeq) -> SymbolSum2 {
    let mut out = SymbolSum2::default();
    for w in seq.vecs.windows(2) {
        out.push(1, Mat2Z::from_columns(w[1], w[0].neg()));
    }
    out
}

/// Θ_γ from the default connecting sequence.
pub fn theta_gamma(g: &Mat2Z) -> Result<SymbolSum2> {
    Ok(theta_from_sequence(&connecting_sequence(g)?))
}

/// The constant k with Θ_{γγ′} − γ*Θ_{γ′} − Θ_γ = k·{−z₁, −z₂}.
pub fn theta_cocycle_defect(g: &Mat2Z, gp: &Mat2Z) -> Result<i64> {
    let s = theta_gamma(&g.mul(gp))?.add(&theta_gamma(gp)?.pullback(g).neg()).add(&theta_gamma(g)?.neg());
    s.n_image()?.constant_value().ok_or(Error::BadWedge)
}

/// Σ c·{1 − ζ_N^a, 1 − ζ_N^b} indexed by (a, b) mod N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycSymbolVec {
    pub n: u64,
    pub entries: BTreeMap<(u64, u64), i64>,
}

impl CycSymbolVec {
    pub fn zero(n: u64) -> CycSymbolVec {
        CycSymbolVec { n, entries: BTreeMap::new() }
    }

    pub fn add_at(&mut self, a: i64, b: i64, c: i64) -> Result<()> {
        let (a, b) = (modn(a, self.n), modn(b, self.n));
        if a == 0 {
            return Err(Error::ZeroIndex(a as i64));
        }
        if b == 0 {
            return Err(Error::ZeroIndex(b as i64));
        }
        let e = self.entries.entry((a, b)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(&(a, b));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &CycSymbolVec) -> CycSymbolVec {
        assert_eq!(self.n, o.n, "levels differ");
        let mut out = self.clone();
        for (&(a, b), &c) in &o.entries {
            out.add_at(a as i64, b as i64, c).unwrap();
        }
        out
    }

    pub fn scale(&self, k: i64) -> CycSymbolVec {
        let mut out = CycSymbolVec::zero(self.n);
        if k != 0 {
            out.entries = self.entries.iter().map(|(&ab, &c)| (ab, c * k)).collect();
        }
        out
    }

    pub fn sub(&self, o: &CycSymbolVec) -> CycSymbolVec {
        self.add(&o.scale(-1))
    }

    /// σ_j: ζ ↦ ζʲ, i.e. (a, b) ↦ (ja, jb).
    pub fn sigma(&self, j: i64) -> CycSymbolVec {
        let mut out = CycSymbolVec::zero(self.n);
        for (&(a, b), &c) in &self.entries {
            out.add_at(j * a as i64, j * b as i64, c).unwrap();
        }
        out
    }

    /// Coordinates in the ordering used by [`relation_lattice`].
    pub fn to_vector(&self) -> Vec<BigInt> {
        let m = (self.n - 1) as usize;
        let mut out = vec![BigInt::from(0); m * m];
        for (&(a, b), &c) in &self.entries {
            out[lattice_index(self.n, a, b)] += c;
        }
        out
    }
}

fn lattice_index(n: u64, a: u64, b: u64) -> usize {
    ((a - 1) * (n - 1) + (b - 1)) as usize
}

/// Θ_{N,γ} = Σ{1 − ζ^{dᵢ}, 1 − ζ^{−d_{i−1}}} over an N-connecting sequence.
pub fn specialize_theta_n(g: &Mat2Z, n: u64) -> Result<CycSymbolVec> {
    let seq = n_connecting_sequence(g, n)?;
    let mut out = CycSymbolVec::zero(n);
    for w in seq.vecs.windows(2) {
        out.add_at(w[1].y, -w[0].y, 1)?;
    }
    Ok(out)
}

/// Columns: sign relations, the three-term relation and antisymmetry, on
/// coordinates u(a, b) for a, b ∈ (ℤ/N) ∖ 0.
pub fn relation_lattice(n: u64) -> Result<IntMat> {
    if n < 3 {
        return Err(Error::BadAuxiliary);
    }
    let m = ((n - 1) * (n - 1)) as usize;
    let ni = n as i64;
    let idx = |a: i64, b: i64| lattice_index(n, modn(a, n), modn(b, n));
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut push = |terms: &[(usize, i64)]| {
        let mut c = vec![0i64; m];
        for &(i, v) in terms {
            c[i] += v;
        }
        if c.iter().any(|&x| x != 0) {
            cols.push(c);
        }
    };
    for a in 1..ni {
        for b in 1..ni {
            push(&[(idx(a, b), 1), (idx(-a, b), -1)]);
            push(&[(idx(a, b), 1), (idx(a, -b), -1)]);
            if (a + b) % ni != 0 {
                push(&[(idx(a, -(a + b)), 1), (idx(a + b, -b), 1), (idx(a, -b), -1)]);
            }
            if a <= b {
                push(&[(idx(a, b), 1), (idx(b, a), 1)]);
            }
        }
    }
    Ok(IntMat::from_columns(m, &cols))
}

/// The Manin symbol [u:v] as the unit vector at (u, v).
pub fn pi_manin(u: i64, v: i64, n: u64) -> Result<CycSymbolVec> {
    let mut out = CycSymbolVec::zero(n);
    out.add_at(u, v, 1)?;
    Ok(out)
}

/// Images of [u:v] + [−v:u] and [u:v] − [u:u+v] − [u+v:v] with their
/// 2-adic membership in the relation lattice.
pub fn manin_relation_images(n: u64, lattice: &ColumnLattice) -> Result<Vec<(CycSymbolVec, Option<u32>)>> {
    let ni = n as i64;
    let mut out = Vec::new();
    for u in 1..ni {
        for v in 1..ni {
            let x = pi_manin(u, v, n)?.add(&pi_manin(-v, u, n)?);
            let k = lattice.membership_2adic(&x.to_vector())?;
            out.push((x, k));
            if (u + v) % ni != 0 {
                let y = pi_manin(u, v, n)?.sub(&pi_manin(u, u + v, n)?).sub(&pi_manin(u + v, v, n)?);
                let k = lattice.membership_2adic(&y.to_vector())?;
                out.push((y, k));
            }
        }
    }
    Ok(out)
}

/// The γⱼ ∈ Γ₁(N) with γgⱼ = g_{σ(j)}γⱼ.
pub fn hecke_homology(g: &Mat2Z, ell: u64, n: u64) -> Result<Vec<Mat2Z>> {
    if gcd_i64(ell as i64, n as i64) != 1 {
        return Err(Error::NotCoprime(ell as i64, n as i64));
    }
    if !in_gamma1(g, n) {
        return Err(Error::NotInGamma1(n));
    }
    let reps = hecke_reps_gamma1(ell, n)?;
    let (_, gs) = coset_decompose(g, &reps)?;
    debug_assert!(gs.iter().all(|x| in_gamma1(x, n)));
    Ok(gs)
}

/// Σⱼ Θ_N(γⱼ) − ℓ·Θ_N(γ) − σ_ℓΘ_N(γ).
pub fn eisenstein_defect(g: &Mat2Z, ell: u64, n: u64) -> Result<CycSymbolVec> {
    let mut out = CycSymbolVec::zero(n);
    for gj in hecke_homology(g, ell, n)? {
        out = out.add(&specialize_theta_n(&gj, n)?);
    }
    let base = specialize_theta_n(g, n)?;
    Ok(out.sub(&base.scale(ell as i64)).sub(&base.sigma(ell as i64)))
}

/// Tame symbols at one prime λ above ℓ′ | N.
pub struct TameSymbol {
    field: Arc<CycField>,
    rf: ResidueField,
    ell: u64,
    ramification: u64,
    cache: BTreeMap<(u64, u64), RfElt>,
}

impl TameSymbol {
    pub fn new(n: u64, ell: u64) -> Result<TameSymbol> {
        let Some(&(_, r)) = factorize(n).iter().find(|(p, _)| *p == ell) else {
            return Err(Error::UnsupportedLevelShape);
        };
        let field = CycField::new(n);
        let rf = ResidueField::new(n, ell)?;
        Ok(TameSymbol { field, rf, ell, ramification: totient(ell.pow(r)), cache: BTreeMap::new() })
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.rf
    }

    /// Valuation of 1 − ζ_N^a at λ.
    pub fn valuation(&self, a: u64) -> i64 {
        let n = self.field.level();
        let ord = n / gcd_i64(a as i64, n as i64) as u64;
        let f = factorize(ord);
        match f.as_slice() {
            [(p, s)] if *p == self.ell => (self.ramification / totient(p.pow(*s))) as i64,
            _ => 0,
        }
    }

    /// δ_λ{1 − ζ^a, 1 − ζ^b} = (−1)^{v_f v_g} g^{v_f} f^{−v_g} mod λ.
    pub fn pair(&mut self, a: u64, b: u64) -> Result<RfElt> {
        if let Some(x) = self.cache.get(&(a, b)) {
            return Ok(x.clone());
        }
        let f = cyc_unit(&self.field, a as i64)?;
        let g = cyc_unit(&self.field, b as i64)?;
        let (vf, vg) = (self.valuation(a), self.valuation(b));
        let mut x: CycElt = &g.pow(vf)? * &f.pow(-vg)?;
        if (vf * vg) % 2 != 0 {
            x = -&x;
        }
        let r = self.rf.reduce_at(&x)?;
        self.cache.insert((a, b), r.clone());
        Ok(r)
    }

    pub fn of(&mut self, v: &CycSymbolVec) -> Result<RfElt> {
        assert_eq!(v.n, self.field.level(), "level mismatch");
        let mut acc = self.rf.one();
        for (&(a, b), &c) in &v.entries {
            let t = self.pair(a, b)?;
            acc = self.rf.mul(&acc, &self.rf.pow(&t, c)?);
        }
        Ok(acc)
    }
}

/// δ_λ of a specialized symbol vector at a prime above ℓ′ | N.
pub fn tame_symbol_cyclo(v: &CycSymbolVec, ell: u64) -> Result<RfElt> {
    TameSymbol::new(v.n, ell)?.of(v)
}

/// Structured outcome of the Eisenstein-defect pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub n: u64,
    pub ell: u64,
    pub gamma: Mat2Z,
    pub doubled: bool,
    pub defect: CycSymbolVec,
    /// (ℓ′, tame symbol is 1) for each prime ℓ′ | N.
    pub tame_trivial: Vec<(u64, bool)>,
    /// Same for the defect before doubling (ℓ = 2 only).
    pub undoubled_tame_trivial: Option<Vec<(u64, bool)>>,
    /// Experimental: 2-adic membership in the relation lattice.
    pub lattice_membership: Option<Option<u32>>,
}

/// Eisenstein defect, doubled when ℓ = 2, with its tame symbols.
pub fn defect_report(g: &Mat2Z, ell: u64, n: u64, lattice: Option<&ColumnLattice>) -> Result<DefectReport> {
    let raw = eisenstein_defect(g, ell, n)?;
    let doubled = ell == 2;
    let defect = if doubled { raw.scale(2) } else { raw.clone() };
    let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
    let tame = |v: &CycSymbolVec| -> Result<Vec<(u64, bool)>> {
        primes
            .iter()
            .map(|&p| {
                let mut t = TameSymbol::new(n, p)?;
                let x = t.of(v)?;
                Ok((p, t.residue_field().is_one(&x)))
            })
            .collect()
    };
    let tame_trivial = tame(&defect)?;
    let undoubled_tame_trivial = if doubled { Some(tame(&raw)?) } else { None };
    let lattice_membership = match lattice {
        Some(l) => Some(l.membership_2adic(&defect.to_vector())?),
        None => None,
    };
    Ok(DefectReport { n, ell, gamma: *g, doubled, defect, tame_trivial, undoubled_tame_trivial, lattice_membership })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_complex::{arc, delta, ell0, theta_tilde, Ray};
    use crate::exact_arith::inv_mod;
    use crate::int_lattice::membership_2adic;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2Z {
        Mat2Z::new(a, b, c, d)
    }

    #[test]
    fn boundary_examples() {
        let mut s = SymbolSum2::default();
        s.push(1, Mat2Z::IDENTITY);
        assert_eq!(boundary2(&s).unwrap(), DivSymbolSum::single(pv(1, 0)).sub(&DivSymbolSum::single(pv(0, -1))));
        let mut s = SymbolSum2::default();
        s.push(1, m(1, 0, 0, -1));
        assert_eq!(boundary2(&s).unwrap(), DivSymbolSum::single(pv(-1, 0)).sub(&DivSymbolSum::single(pv(0, -1))));
        assert_eq!(boundary2(&SymbolSum2::default()).unwrap(), DivSymbolSum::default());
        assert_eq!(boundary1(&DivSymbolSum::single(pv(1, 0))), 1);
        assert_eq!(boundary1(&DivSymbolSum::single(pv(1, 0)).sub(&DivSymbolSum::single(pv(0, 1)))), 0);
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pullback_01(&Mat2Z::IDENTITY).unwrap(), DivSymbolSum::single(pv(0, 1)));
        assert_eq!(pullback_01(&m(1, 0, 7, 1)).unwrap(), DivSymbolSum::single(pv(0, 1)));
        assert_eq!(pullback_01(&m(1, 0, 0, -1)).unwrap(), DivSymbolSum::single(pv(0, 1)));
        assert_eq!(pullback_01(&m(2, 1, 1, 1)).unwrap(), DivSymbolSum::single(pv(1, 1)));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_gamma(&Mat2Z::IDENTITY).unwrap(), SymbolSum2::default());
        let t = theta_gamma(&m(-1, 0, 0, -1)).unwrap();
        assert_eq!(t.terms, vec![(1, m(-1, 0, 0, -1)), (1, m(0, 1, -1, 0))]);
        let expected = arc(ell0(), Ray::new(1, 0).unwrap());
        assert_eq!(t.n_image().unwrap(), expected);
        assert_eq!(t.n_image().unwrap(), theta_tilde(&m(-1, 0, 0, -1)).unwrap());
    }

    #[test]
    fn parabolic_vanishing() {
        for c in -20..=20 {
            for d in [1, -1] {
                let g = m(1, 0, c, d);
                assert!(theta_gamma(&g).unwrap().n_image().unwrap().is_constant());
            }
        }
    }

    #[test]
    fn n_image_equivariance() {
        for g in [m(1, 1, 0, 1), m(0, -1, 1, 0), m(2, 3, 1, 2), m(5, 2, 2, 1)] {
            for r in [Mat2Z::IDENTITY, m(1, 0, 1, 1), m(3, 1, 2, 1), m(0, 1, -1, 0)] {
                let mut s = SymbolSum2::default();
                s.push(1, r);
                assert_eq!(s.pullback(&g).n_image().unwrap(), s.n_image().unwrap().act(&g).unwrap());
            }
        }
    }

    #[test]
    fn specialize_examples() {
        assert!(specialize_theta_n(&m(1, 0, 5, 1), 5).unwrap().is_zero());
        let v = specialize_theta_n(&m(2, 1, 5, 3), 5).unwrap();
        let seq = n_connecting_sequence(&m(2, 1, 5, 3), 5).unwrap();
        let mut expect = CycSymbolVec::zero(5);
        for w in seq.vecs.windows(2) {
            expect.add_at(w[1].y, -w[0].y, 1).unwrap();
        }
        assert_eq!(v, expect);
        let v = specialize_theta_n(&m(1, 1, 4, 5), 4).unwrap();
        assert!(v.entries.keys().all(|&(a, b)| a % 4 != 0 && b % 4 != 0));
        assert_eq!(specialize_theta_n(&m(1, 1, 1, 2), 5), Err(Error::NotInGamma0(5)));
    }

    #[test]
    fn lattice_small() {
        let l = relation_lattice(3).unwrap();
        assert_eq!(l.rows(), 4);
        let cl = ColumnLattice::new(&l);
        assert!(manin_relation_images(3, &cl).unwrap().iter().all(|(_, k)| k.is_some()));
        assert_eq!(pi_manin(1, 1, 5).unwrap().entries, BTreeMap::from([((1, 1), 1)]));
        assert_eq!(pi_manin(0, 1, 5), Err(Error::ZeroIndex(0)));
    }

    #[test]
    fn manin_images_members() {
        for n in [5u64, 7] {
            let l = relation_lattice(n).unwrap();
            let cl = ColumnLattice::new(&l);
            for (v, k) in manin_relation_images(n, &cl).unwrap() {
                assert!(matches!(k, Some(k) if k <= 2), "{v:?}");
                assert_eq!(k, membership_2adic(&l, &v.to_vector()).unwrap());
            }
        }
    }

    #[test]
    fn hecke_homology_examples() {
        let gs = hecke_homology(&Mat2Z::IDENTITY, 3, 5).unwrap();
        assert!(gs.iter().all(|g| *g == Mat2Z::IDENTITY));
        let gs = hecke_homology(&m(1, 1, 5, 6), 2, 5).unwrap();
        assert_eq!(gs.len(), 3);
        assert!(gs.iter().all(|g| in_gamma1(g, 5)));
        assert_eq!(hecke_homology(&m(1, 0, 4, 1), 3, 4).unwrap().len(), 4);
        assert_eq!(hecke_homology(&m(1, 0, 4, 1), 2, 4), Err(Error::NotCoprime(2, 4)));
        assert_eq!(hecke_homology(&m(2, 1, 5, 3), 2, 5), Err(Error::NotInGamma1(5)));
    }

    #[test]
    fn tame_examples() {
        let v = specialize_theta_n(&m(2, 1, 5, 3), 5).unwrap();
        let mut t = TameSymbol::new(5, 5).unwrap();
        let x = t.of(&v).unwrap();
        // det·d⁻¹ = 3⁻¹ = 2 in F₅
        assert_eq!(x, t.residue_field().from_int(2));
        let v = specialize_theta_n(&m(1, 1, 5, 6), 5).unwrap();
        let x = t.of(&v).unwrap();
        assert!(t.residue_field().is_one(&x));
        let g = m(5, 2, 12, 5);
        let v = specialize_theta_n(&g, 12).unwrap();
        for p in [2, 3] {
            let mut t = TameSymbol::new(12, p).unwrap();
            let x = t.of(&v).unwrap();
            assert!(t.residue_field().is_one(&x));
        }
        assert!(matches!(TameSymbol::new(12, 5), Err(Error::UnsupportedLevelShape)));
    }

    #[test]
    fn tame_matches_formula_prime_power() {
        for n in [5u64, 9, 25] {
            let p = factorize(n)[0].0;
            let mut t = TameSymbol::new(n, p).unwrap();
            for c in (-40i64..=40).filter(|c| c % n as i64 == 0) {
                for d in -12i64..=12 {
                    if gcd_i64(c, d) != 1 {
                        continue;
                    }
                    use num_integer::Integer;
                    let e = d.extended_gcd(&c);
                    let (s, r) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
                    for g in [m(s, -r, c, d), m(-s, r, c, d)] {
                        let v = specialize_theta_n(&g, n).unwrap();
                        let want = modn(g.det() * inv_mod(d, p).unwrap() as i64, p) as i64;
                        assert_eq!(t.of(&v).unwrap(), t.residue_field().from_int(want), "{g:?} N={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn eisenstein_examples() {
        assert!(eisenstein_defect(&Mat2Z::IDENTITY, 3, 5).unwrap().is_zero());
        let r = defect_report(&m(1, 1, 5, 6), 3, 5, None).unwrap();
        assert!(r.tame_trivial.iter().all(|t| t.1));
        let r = defect_report(&m(1, 1, 9, 10), 2, 9, None).unwrap();
        assert!(r.doubled && r.tame_trivial.iter().all(|t| t.1));
        let r = defect_report(&m(1, 1, 12, 13), 5, 12, None).unwrap();
        assert_eq!(r.tame_trivial, vec![(2, true), (3, true)]);
    }

    #[test]
    fn cocycle_defect_examples() {
        assert_eq!(theta_cocycle_defect(&m(2, 1, 1, 1), &Mat2Z::IDENTITY).unwrap(), 0);
        assert_eq!(theta_cocycle_defect(&m(1, 0, 3, 1), &m(1, 0, -5, 1)).unwrap(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn gl2(b: i64, det_one: bool) -> impl Strategy<Value = Mat2Z> {
            (-b..=b, -b..=b, any::<bool>()).prop_filter_map("coprime", move |(a, c, neg)| {
                use num_integer::Integer;
                if a.gcd(&c) != 1 {
                    return None;
                }
                let e = a.extended_gcd(&c);
                let (s, t) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
                let g = Mat2Z::new(a, -t, c, s);
                Some(if neg && !det_one { g.mul(&Mat2Z::new(1, 0, 0, -1)) } else { g })
            })
        }

        proptest! {
            #[test]
            fn boundary_of_theta(g in gl2(1_000_000, false)) {
                let t = theta_gamma(&g).unwrap();
                let b = boundary2(&t).unwrap();
                prop_assert_eq!(b.clone(), pullback_01(&g).unwrap().sub(&DivSymbolSum::single(pv(0, 1))));
                prop_assert_eq!(boundary1(&b), 0);
            }

            #[test]
            fn theta_is_theta_tilde(g in gl2(1000, false)) {
                prop_assert_eq!(theta_gamma(&g).unwrap().n_image().unwrap(), theta_tilde(&g).unwrap());
            }

            #[test]
            fn defect_is_minus_delta(g in gl2(300, true), h in gl2(300, true)) {
                let l1 = ell0().act(&g).unwrap();
                let l2 = ell0().act(&g.mul(&h)).unwrap();
                prop_assert_eq!(theta_cocycle_defect(&g, &h).unwrap(), -delta(ell0(), l1, l2));
            }
        }
    }
}
