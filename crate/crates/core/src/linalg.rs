//! Sparse exact linear algebra over [`FracScalar`].

use crate::coeff::FracScalar;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse vector indexed by `usize`, without stored zeros.
pub type SparseVec = BTreeMap<usize, FracScalar>;

/// `acc += c * v`.
pub fn axpy(acc: &mut SparseVec, c: &FracScalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let add = c * x;
        match acc.get_mut(&k) {
            Some(y) => {
                let sum = &*y + &add;
                if sum.is_zero() {
                    acc.remove(&k);
                } else {
                    *y = sum;
                }
            }
            None => {
                acc.insert(k, add);
            }
        }
    }
}

/// Row-reduced echelon form maintained under insertion.
///
/// Every stored row has a pivot entry equal to one and no entries in other
/// pivot columns. The pivot of a new row is its smallest surviving column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot column to row index map.
    pub fn pivots(&self) -> &BTreeMap<usize, usize> {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Row whose pivot is `col`.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        self.pivots.get(&col).map(|&r| &self.rows[r])
    }

    /// Reduces `v` modulo the row space; the result has no pivot-column entries.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let hits: Vec<usize> = v.keys().copied().filter(|k| self.pivots.contains_key(k)).collect();
        for col in hits {
            if let Some(c) = out.get(&col).cloned() {
                axpy(&mut out, &-c, &self.rows[self.pivots[&col]]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a row; returns `true` when the rank grows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some((&col, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let lead_col = col;
        if !inv.is_one() {
            for x in r.values_mut() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&lead_col).cloned() {
                axpy(row, &-c, &r);
            }
        }
        r.retain(|_, x| !x.is_zero());
        self.pivots.insert(lead_col, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Basis of the null space of the row space, restricted to columns `0..ncols`.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        (0..ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, FracScalar::one());
                for (&pc, &ri) in &self.pivots {
                    if let Some(x) = self.rows[ri].get(&free) {
                        v.insert(pc, -x);
                    }
                }
                v
            })
            .collect()
    }
}

/// Row reduce a list of vectors and return the echelon form.
pub fn echelon_of<I: IntoIterator<Item = SparseVec>>(rows: I) -> Echelon {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e
}

/// Sparse matrix over [`FracScalar`] stored row-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseQMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseQMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FracScalar::one());
        }
        m
    }

    pub fn diag(d: Vec<FracScalar>) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> FracScalar {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: FracScalar) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &FracScalar) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + v);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FracScalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseVec::new();
                for (&k, a) in r {
                    axpy(&mut acc, a, &o.rows[k]);
                }
                acc
            })
            .collect();
        Self { nrows: self.nrows, ncols: o.ncols, rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, &FracScalar::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, &FracScalar::from_int(-1))
    }

    fn combine(&self, o: &Self, c: &FracScalar) -> Self {
        assert_eq!((self.nrows, self.ncols), (o.nrows, o.ncols), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(o.rows.iter())
            .map(|(a, b)| {
                let mut acc = a.clone();
                axpy(&mut acc, c, b);
                acc
            })
            .collect();
        Self { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn scale(&self, c: &FracScalar) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(&k, v)| (k, v * c)).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, j, v) in self.entries() {
            t.rows[j].insert(i, v.clone());
        }
        t
    }

    /// Kronecker product `self ⊗ o`, with row index `i * o.nrows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.nrows * o.nrows, self.ncols * o.ncols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                m.rows[i * o.nrows + k].insert(j * o.ncols + l, a * b);
            }
        }
        m
    }

    pub fn trace(&self) -> FracScalar {
        (0..self.nrows.min(self.ncols)).fold(FracScalar::zero(), |acc, i| &acc + &self.get(i, i))
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = FracScalar::zero();
            for (k, x) in v {
                if let Some(a) = r.get(k) {
                    acc = &acc + &(a * x);
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        echelon_of(self.rows.iter().cloned()).rank()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.nrows), |acc, _| acc.mul(self))
    }

    /// True when `self = c * I` for some scalar `c`; returns `c`.
    pub fn as_scalar(&self) -> Option<FracScalar> {
        if self.nrows != self.ncols {
            return None;
        }
        let c = self.get(0, 0);
        let ok = self
            .rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.keys().all(|&j| i == j) && (r.get(&i).cloned().unwrap_or_default() == c));
        ok.then_some(c)
    }
}

impl fmt::Debug for SparseQMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix, {} nonzeros", self.nrows, self.ncols, self.nnz())?;
        for (i, j, v) in self.entries() {
            writeln!(f, "  ({i},{j}) = {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, FracScalar::from_int(x))).collect()
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let e = echelon_of([v(&[(0, 1), (1, 2), (2, 3)]), v(&[(0, 2), (1, 4), (2, 6)]), v(&[(1, 1), (2, 1)])]);
        assert_eq!(e.rank(), 2);
        let ker = e.kernel(3);
        assert_eq!(ker.len(), 1);
        for row in e.rows() {
            let dot = row
                .iter()
                .fold(FracScalar::zero(), |acc, (k, x)| &acc + &(x * &ker[0].get(k).cloned().unwrap_or_default()));
            assert!(dot.is_zero());
        }
        assert!(e.contains(&v(&[(0, 1), (1, 3), (2, 4)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kron_and_mul() {
        let mut a = SparseQMatrix::zeros(2, 2);
        a.set(0, 1, FracScalar::one());
        let i = SparseQMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.nnz(), 2);
        assert!(k.mul(&k).is_zero());
        assert_eq!(i.kron(&i), SparseQMatrix::identity(4));
        assert_eq!(SparseQMatrix::identity(3).as_scalar(), Some(FracScalar::one()));
    }
}
