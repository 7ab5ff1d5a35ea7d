//! Zero-cycles on the n-torsion of E and E², modeled as integer functions
//! on (ℤ/n)² and (ℤ/n)⁴ after fixing a basis at one geometric point.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_arith::{is_prime, modn};
use crate::sl2_toolkit::{hecke_reps, Mat2Z};

/// An integer function on (ℤ/n)², stored densely by x₀ + n·x₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMap2 {
    pub n: u64,
    pub values: Vec<i64>,
}

/// An integer function on pairs (P, Q) of points of (ℤ/n)², read as the
/// matrix with columns P, Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleMap4 {
    pub n: u64,
    pub values: Vec<i64>,
}

impl CycleMap2 {
    pub fn zero(n: u64) -> Self {
        CycleMap2 { n, values: vec![0; (n * n) as usize] }
    }

    pub fn from_fn(n: u64, f: impl Fn([u64; 2]) -> i64) -> Self {
        let mut out = Self::zero(n);
        for (i, v) in out.values.iter_mut().enumerate() {
            *v = f(point2(n, i));
        }
        out
    }

    /// Indicator of the origin.
    pub fn origin(n: u64) -> Self {
        Self::from_fn(n, |p| (p == [0, 0]) as i64)
    }

    pub fn all(n: u64) -> Self {
        Self::from_fn(n, |_| 1)
    }

    pub fn get(&self, p: [u64; 2]) -> i64 {
        self.values[(p[0] + self.n * p[1]) as usize]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        CycleMap2 { n: self.n, values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycleMap2 { n: self.n, values: self.values.iter().map(|a| a * k).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// (P, Q) ↦ f(P)·g(Q).
    pub fn boxtimes(&self, o: &Self) -> CycleMap4 {
        assert_eq!(self.n, o.n);
        CycleMap4::from_fn(self.n, |[p, q]| self.get(p) * o.get(q))
    }
}

impl CycleMap4 {
    pub fn zero(n: u64) -> Self {
        CycleMap4 { n, values: vec![0; (n * n * n * n) as usize] }
    }

    pub fn from_fn(n: u64, f: impl Fn([[u64; 2]; 2]) -> i64) -> Self {
        let mut out = Self::zero(n);
        let nn = (n * n) as usize;
        for (i, v) in out.values.iter_mut().enumerate() {
            *v = f([point2(n, i % nn), point2(n, i / nn)]);
        }
        out
    }

    pub fn get(&self, pq: [[u64; 2]; 2]) -> i64 {
        let n = self.n;
        self.values[(pq[0][0] + n * pq[0][1] + n * n * (pq[1][0] + n * pq[1][1])) as usize]
    }

    pub fn points(&self) -> impl Iterator<Item = ([[u64; 2]; 2], i64)> + '_ {
        let (n, nn) = (self.n, (self.n * self.n) as usize);
        self.values.iter().enumerate().map(move |(i, &v)| ([point2(n, i % nn), point2(n, i / nn)], v))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        CycleMap4 { n: self.n, values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycleMap4 { n: self.n, values: self.values.iter().map(|a| a * k).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Pushforward along (P, Q) ↦ v₀P + v₁Q.
    pub fn pushforward(&self, v: [u64; 2]) -> CycleMap2 {
        let n = self.n;
        let mut out = CycleMap2::zero(n);
        for ([p, q], c) in self.points() {
            let x = (v[0] * p[0] + v[1] * q[0]) % n;
            let y = (v[0] * p[1] + v[1] * q[1]) % n;
            out.values[(x + n * y) as usize] += c;
        }
        out
    }
}

fn point2(n: u64, i: usize) -> [u64; 2] {
    [i as u64 % n, i as u64 / n]
}

fn require_prime(n: u64) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

fn row_act_mod(x: [u64; 2], g: &Mat2Z, n: u64) -> [u64; 2] {
    let (x0, x1) = (x[0] as i64, x[1] as i64);
    [modn(x0 * g.a + x1 * g.c, n), modn(x0 * g.b + x1 * g.d, n)]
}

/// Indicator of {x ∈ (ℤ/n)² : x·g ≡ 0}.
pub fn kernel_cycle(g: &Mat2Z, n: u64) -> Result<CycleMap2> {
    if g.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(CycleMap2::from_fn(n, |x| (row_act_mod(x, g, n) == [0, 0]) as i64))
}

/// Indicator of {(P, Q) : P·g ≡ 0 and Q·g ≡ 0}.
pub fn kernel_cycle4(g: &Mat2Z, n: u64) -> Result<CycleMap4> {
    if g.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(CycleMap4::from_fn(n, |[p, q]| (row_act_mod(p, g, n) == [0, 0] && row_act_mod(q, g, n) == [0, 0]) as i64))
}

/// The ℓ + 1 cyclic subgroups of order ℓ, as kernels of the Hecke
/// representatives.
pub fn cyclic_subgroups(ell: u64) -> Result<Vec<CycleMap2>> {
    require_prime(ell)?;
    hecke_reps(ell).iter().map(|g| kernel_cycle(g, ell)).collect()
}

/// Σⱼ ker(gⱼ) = ℓ·(0) + ℰ[ℓ].
pub fn hecke_identity_check(ell: u64) -> Result<bool> {
    let lhs = cyclic_subgroups(ell)?.iter().fold(CycleMap2::zero(ell), |acc, k| acc.add(k));
    let rhs = CycleMap2::origin(ell).scale(ell as i64).add(&CycleMap2::all(ell));
    Ok(lhs == rhs)
}

/// Σ_K 1_{K×K} = Σ_{[a:b] ∈ P¹(F_ℓ)} 1_{aP + bQ = 0}.
pub fn rows_vs_cols_check(ell: u64) -> Result<bool> {
    let lhs = cyclic_subgroups(ell)?.iter().fold(CycleMap4::zero(ell), |acc, k| acc.add(&k.boxtimes(k)));
    let mut lines: Vec<[u64; 2]> = (0..ell).map(|j| [1, j]).collect();
    lines.push([0, 1]);
    let rhs = lines.iter().fold(CycleMap4::zero(ell), |acc, &v| {
        acc.add(&CycleMap4::from_fn(ell, |[p, q]| {
            ((v[0] * p[0] + v[1] * q[0]) % ell == 0 && (v[0] * p[1] + v[1] * q[1]) % ell == 0) as i64
        }))
    });
    Ok(lhs == rhs)
}

/// T_n^K(0) on E², i.e. Σ_K 1_{K×K}.
pub fn hecke_of_origin4(n: u64) -> Result<CycleMap4> {
    Ok(cyclic_subgroups(n)?.iter().fold(CycleMap4::zero(n), |acc, k| acc.add(&k.boxtimes(k))))
}

fn origin4(n: u64) -> CycleMap4 {
    CycleMap4::from_fn(n, |pq| (pq == [[0, 0], [0, 0]]) as i64)
}

fn all4(n: u64) -> CycleMap4 {
    CycleMap4::from_fn(n, |_| 1)
}

/// e_n = n(n³(0) − n·T_n^K(0) + ℰ[n]²).
pub fn e_n_build(n: u64) -> Result<CycleMap4> {
    let ni = n as i64;
    let t = hecke_of_origin4(n)?;
    Ok(origin4(n).scale(ni * ni * ni).sub(&t.scale(ni)).add(&all4(n)).scale(ni))
}

/// Rank of the matrix with columns P, Q over F_n.
pub fn rank_mod(pq: [[u64; 2]; 2], n: u64) -> u32 {
    let [p, q] = pq;
    if p == [0, 0] && q == [0, 0] {
        0
    } else if (p[0] * q[1] + n * n - (p[1] * q[0]) % n) % n == 0 {
        1
    } else {
        2
    }
}

/// Values of φ_n by rank.
pub fn phi_n_values(n: u64) -> [i64; 3] {
    let n = n as i64;
    [n * n * n * n - n * n * n - n * n + n, n - n * n, n]
}

/// φ_n(M) filled in by the rank of M.
pub fn phi_n_table(n: u64) -> Result<CycleMap4> {
    require_prime(n)?;
    let vals = phi_n_values(n);
    Ok(CycleMap4::from_fn(n, |pq| vals[rank_mod(pq, n) as usize]))
}

/// Pushforward of e_n along M ↦ M·v vanishes for every v ≠ 0.
pub fn pushforward_zero_check(n: u64) -> Result<bool> {
    let e = e_n_build(n)?;
    for v0 in 0..n {
        for v1 in 0..n {
            if (v0, v1) != (0, 0) && !e.pushforward([v0, v1]).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// δ⊠δ − Σ_K δ′_K⊠δ′_K = e_n together with the intermediate norm
/// identities of the residue computation.
pub fn norm_identity_check(n: u64) -> Result<bool> {
    let ni = n as i64;
    let ks = cyclic_subgroups(n)?;
    let (o, all) = (CycleMap2::origin(n), CycleMap2::all(n));
    let delta = o.scale(ni * ni).sub(&all);
    let t = hecke_of_origin4(n)?;
    let mut dd = CycleMap4::zero(n);
    let mut k_all = CycleMap4::zero(n);
    let mut all_k = CycleMap4::zero(n);
    for k in &ks {
        let dk = k.scale(ni).sub(&all);
        dd = dd.add(&dk.boxtimes(&dk));
        k_all = k_all.add(&k.boxtimes(&all));
        all_k = all_k.add(&all.boxtimes(k));
    }
    let o_all = o.boxtimes(&all);
    let all_o = all.boxtimes(&o);
    let ok1 = k_all == all4(n).add(&o_all.scale(ni));
    let ok2 = all_k == all4(n).add(&all_o.scale(ni));
    let ok3 = dd == t.scale(ni * ni).sub(&o_all.add(&all_o).scale(ni * ni)).add(&all4(n).scale(1 - ni));
    let ok4 = delta.boxtimes(&delta) == origin4(n).scale(ni.pow(4)).sub(&o_all.add(&all_o).scale(ni * ni)).add(&all4(n));
    let ok5 = delta.boxtimes(&delta).sub(&dd) == e_n_build(n)?;
    Ok(ok1 && ok2 && ok3 && ok4 && ok5)
}

/// V_n^K(0) = n⁴(0) − n²T_n^K(0) + n[n]*(0) equals e_n, with T_n^K taken
/// from kernels of the diagonal action on E².
pub fn v_n_zero_check(n: u64) -> Result<bool> {
    require_prime(n)?;
    let ni = n as i64;
    let t = hecke_reps(n).iter().try_fold(CycleMap4::zero(n), |acc, g| Ok::<_, Error>(acc.add(&kernel_cycle4(g, n)?)))?;
    let n_pullback = kernel_cycle4(&Mat2Z::new(ni, 0, 0, ni), n)?;
    let v = origin4(n).scale(ni.pow(4)).sub(&t.scale(ni * ni)).add(&n_pullback.scale(ni));
    Ok(v == e_n_build(n)?)
}

/// deg T_n^K(0) = n(n + 1) and deg [n]*(0) = n² on E; on E² these become
/// n²(n + 1) and n⁴.
pub fn degree_check(n: u64) -> Result<bool> {
    let ni = n as i64;
    let t1 = cyclic_subgroups(n)?.iter().map(CycleMap2::degree).sum::<i64>();
    let p1 = kernel_cycle(&Mat2Z::new(ni, 0, 0, ni), n)?.degree();
    let t2 = hecke_of_origin4(n)?.degree();
    let p2 = kernel_cycle4(&Mat2Z::new(ni, 0, 0, ni), n)?.degree();
    Ok(t1 == ni * (ni + 1) && p1 == ni * ni && t2 == ni * ni * (ni + 1) && p2 == ni.pow(4))
}
