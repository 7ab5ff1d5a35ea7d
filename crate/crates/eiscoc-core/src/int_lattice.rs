//! Exact integer linear algebra: Hermite and Smith normal forms, integral
//! solvability, and lattice membership after clearing powers of two.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::Rat;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = self.row(i).iter().map(|x| alloc::format!("{x}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> IntMat {
        let mut m = IntMat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "product dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &m[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let t = s * q;
                self.data[dst * self.cols + j] -= t;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let t = s * q;
                self.data[i * self.cols + dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -core::mem::take(v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Row echelon data: pivot column of each nonzero row of an HNF.
fn pivots(h: &IntMat) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..h.rows {
        match h.row(i).iter().position(|x| !x.is_zero()) {
            Some(p) => out.push(p),
            None => break,
        }
    }
    out
}

fn hnf_impl(m: &IntMat, track: bool) -> (IntMat, Option<IntMat>) {
    let mut h = m.clone();
    let mut u = track.then(|| IntMat::identity(m.rows));
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            if let Some(u) = u.as_mut() {
                u.swap_rows(r, p);
            }
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.row_axpy(i, r, &q);
                if let Some(u) = u.as_mut() {
                    u.row_axpy(i, r, &q);
                }
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.row_axpy(i, r, &q);
            if let Some(u) = u.as_mut() {
                u.row_axpy(i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Row Hermite normal form: `H = U·M` with `U` unimodular, pivots positive
/// and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let (h, u) = hnf_impl(m, true);
    (h, u.unwrap())
}

/// Nonzero rows of the HNF of `m`: a canonical basis of its row lattice.
pub fn row_lattice_basis(m: &IntMat) -> IntMat {
    let (h, _) = hnf_impl(m, false);
    let k = pivots(&h).len();
    IntMat { rows: k, cols: h.cols, data: h.data[..k * h.cols].to_vec() }
}

/// Smith normal form: `D = U·M·V` diagonal with d₁ | d₂ | …, all dᵢ ≥ 0.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut d = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..d.rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..d.cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..d.rows)
                .flat_map(|i| (t + 1..d.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    // row t += row i, then repeat
                    let minus_one = -BigInt::one();
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Integer solution of `M·x = b`, if any.
pub fn solve_int(m: &IntMat, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch("right-hand side length must equal row count"));
    }
    // H = U·Mᵀ, rows of H span the column lattice of M
    let (h, u) = hnf(&m.transpose());
    let piv = pivots(&h);
    let mut w = b.to_vec();
    let mut y = vec![BigInt::zero(); h.rows];
    for (k, &p) in piv.iter().enumerate() {
        let (q, r) = w[p].div_rem(&h[(k, p)]);
        if !r.is_zero() {
            return Ok(None);
        }
        for (wj, hj) in w.iter_mut().zip(h.row(k)) {
            *wj -= &q * hj;
        }
        y[k] = q;
    }
    if w.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    // x = Uᵀ y
    Ok(Some(u.transpose().mul_vec(&y)))
}

/// Precomputed column lattice of a matrix, for repeated membership queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnLattice {
    basis: IntMat,
    pivots: Vec<usize>,
}

impl ColumnLattice {
    pub fn new(m: &IntMat) -> ColumnLattice {
        Self::from_basis(row_lattice_basis(&m.transpose()))
    }

    /// Wraps an HNF basis (rows) computed earlier, e.g. loaded from a cache.
    pub fn from_basis(basis: IntMat) -> ColumnLattice {
        let pivots = pivots(&basis);
        ColumnLattice { basis, pivots }
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rational coordinates of `b` in the basis, if `b` is in its ℚ-span.
    fn coordinates(&self, b: &[BigInt]) -> Option<Vec<Rat>> {
        let mut w: Vec<Rat> = b.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let mut y = Vec::with_capacity(self.pivots.len());
        for (k, &p) in self.pivots.iter().enumerate() {
            let q = &w[p] / Rat::from_integer(self.basis[(k, p)].clone());
            if !q.is_zero() {
                for (wj, hj) in w.iter_mut().zip(self.basis.row(k)) {
                    if !hj.is_zero() {
                        *wj -= &q * Rat::from_integer(hj.clone());
                    }
                }
            }
            y.push(q);
        }
        w.iter().all(|x| x.is_zero()).then_some(y)
    }

    /// Least k ≤ 64 with 2^k·b in the lattice.
    pub fn membership_2adic(&self, b: &[BigInt]) -> Result<Option<u32>> {
        if b.len() != self.basis.cols {
            return Err(Error::DimensionMismatch("vector length must equal ambient dimension"));
        }
        let Some(y) = self.coordinates(b) else { return Ok(None) };
        let mut k = 0u64;
        for q in &y {
            let den = q.denom();
            let e = crate::exact_arith::v2(den);
            if (den >> e) != BigInt::one() {
                return Ok(None);
            }
            k = k.max(e);
        }
        Ok((k <= 64).then_some(k as u32))
    }
}

/// Least k ≤ 64 with 2^k·b in the column lattice of `m`.
pub fn membership_2adic(m: &IntMat, b: &[BigInt]) -> Result<Option<u32>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch("vector length must equal row count"));
    }
    ColumnLattice::new(m).membership_2adic(b)
}

/// Row Hermite normal form predicate.
pub fn is_hnf(h: &IntMat) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..h.rows {
        match h.row(i).iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last.is_some_and(|l| p <= l) || !h[(i, p)].is_positive() {
                    return false;
                }
                for k in 0..i {
                    if h[(k, p)].is_negative() || h[(k, p)] >= h[(i, p)] {
                        return false;
                    }
                }
                last = Some(p);
            }
        }
    }
    true
}

/// Smith normal form predicate.
pub fn is_snf(d: &IntMat) -> bool {
    for i in 0..d.rows {
        for j in 0..d.cols {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&BigInt> = (0..d.rows.min(d.cols)).map(|i| &d[(i, i)]).collect();
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(w[0]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hnf(&IntMat::identity(2));
        assert_eq!((h, u), (IntMat::identity(2), IntMat::identity(2)));
        let m = IntMat::from_rows(&[vec![2, 4], vec![0, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMat::from_rows(&[vec![2, 1], vec![0, 3]]));
        assert_eq!(u.mul(&m), h);
        let z = IntMat::zeros(2, 3);
        assert_eq!(hnf(&z), (z.clone(), IntMat::identity(2)));
    }

    #[test]
    fn snf_examples() {
        let (d, u, v) = snf(&IntMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d, IntMat::from_rows(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(u.mul(&IntMat::from_rows(&[vec![2, 0], vec![0, 3]])).mul(&v), d);
        assert_eq!(snf(&IntMat::identity(2)).0, IntMat::identity(2));
        assert_eq!(snf(&IntMat::zeros(1, 1)).0, IntMat::zeros(1, 1));
    }

    #[test]
    fn solve_examples() {
        let b = big(&[3, -4]);
        assert_eq!(solve_int(&IntMat::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve_int(&IntMat::from_rows(&[vec![2]]), &big(&[1])).unwrap(), None);
        let m = IntMat::from_rows(&[vec![2, 3]]);
        let x = solve_int(&m, &big(&[1])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), big(&[1]));
        assert_eq!(x, big(&[-1, 1]));
        assert!(solve_int(&m, &big(&[1, 2])).is_err());
    }

    #[test]
    fn membership_examples() {
        let b = big(&[5, 7]);
        assert_eq!(membership_2adic(&IntMat::identity(2), &b).unwrap(), Some(0));
        assert_eq!(membership_2adic(&IntMat::from_rows(&[vec![2]]), &big(&[1])).unwrap(), Some(1));
        assert_eq!(membership_2adic(&IntMat::from_rows(&[vec![3]]), &big(&[1])).unwrap(), None);
        // outside the rational span
        assert_eq!(membership_2adic(&IntMat::from_rows(&[vec![1], vec![0]]), &big(&[0, 1])).unwrap(), None);
        assert_eq!(membership_2adic(&IntMat::from_rows(&[vec![8, 0], vec![0, 2]]), &big(&[1, 1])).unwrap(), Some(3));
    }

    #[test]
    fn det_small() {
        assert_eq!(IntMat::from_rows(&[vec![0, 1], vec![1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMat::from_rows(&[vec![2, 3, 1], vec![4, 1, 0], vec![1, 1, 1]]).det(), BigInt::from(-7));
    }
}
