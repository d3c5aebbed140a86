//! Ungraded sparse matrices and vectors over an exact field.

use std::collections::BTreeMap;

use super::field::Field;
use crate::error::{Error, Result};

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone + Send + Sync> SparseVec<E> {
    pub fn zero() -> SparseVec<E> {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize) -> SparseVec<E> {
        SparseVec { entries: vec![(i, f.one())] }
    }

    /// Build from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries<F: Field<Elem = E>>(f: &F, entries: impl IntoIterator<Item = (usize, E)>) -> SparseVec<E> {
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (i, x) in entries {
            match acc.get_mut(&i) {
                Some(y) => *y = f.add(y, &x),
                None => {
                    acc.insert(i, x);
                }
            }
        }
        SparseVec { entries: acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect() }
    }

    /// Entries must already be sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(usize, E)>) -> SparseVec<E> {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, dense: &[E]) -> SparseVec<E> {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F, len: usize) -> Vec<E> {
        let mut out = vec![f.zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, E)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> SparseVec<E> {
        if f.is_zero(c) {
            return SparseVec::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, f.mul(c, x))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &SparseVec<E>) -> SparseVec<E> {
        if f.is_zero(c) {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, f.mul(c, y)));
                        b.next();
                    } else {
                        let s = f.add(x, &f.mul(c, y));
                        if !f.is_zero(&s) {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, f.mul(c, y)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &SparseVec<E>) -> SparseVec<E> {
        self.axpy(f, &f.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &SparseVec<E>) -> SparseVec<E> {
        self.axpy(f, &f.from_i64(-1), other)
    }

    pub fn dot<F: Field<Elem = E>>(&self, f: &F, other: &SparseVec<E>) -> E {
        let mut acc = f.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc = f.add(&acc, &f.mul(x, y));
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindex through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec<E> {
        let mut entries: Vec<(usize, E)> = self
            .entries
            .iter()
            .filter_map(|(i, x)| map(*i).map(|j| (j, x.clone())))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }
}

/// Linear combination `Σ c_k v_k` of sparse vectors.
pub fn combine<F: Field>(f: &F, terms: &[(F::Elem, &SparseVec<F::Elem>)]) -> SparseVec<F::Elem> {
    SparseVec::from_entries(
        f,
        terms
            .iter()
            .flat_map(|(c, v)| v.entries().iter().map(move |(i, x)| (*i, f.mul(c, x)))),
    )
}

/// A sparse matrix in compressed row form with canonical (sorted) entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<E>,
}

impl<E: Clone + Send + Sync> Matrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Matrix<E> {
        Matrix { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Matrix<E> {
        Matrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            vals: vec![f.one(); n],
        }
    }

    pub fn diagonal<F: Field<Elem = E>>(f: &F, diag: &[E]) -> Matrix<E> {
        let n = diag.len();
        Matrix::from_triplets(f, n, n, diag.iter().enumerate().map(|(i, x)| (i, i, x.clone())))
            .expect("diagonal entries in range")
    }

    /// Build from unsorted triplets, summing duplicates and dropping zeros.
    pub fn from_triplets<F: Field<Elem = E>>(
        f: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Matrix<E>> {
        let mut acc: BTreeMap<(usize, usize), E> = BTreeMap::new();
        for (r, c, x) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            match acc.get_mut(&(r, c)) {
                Some(y) => *y = f.add(y, &x),
                None => {
                    acc.insert((r, c), x);
                }
            }
        }
        Ok(Matrix::from_sorted_unchecked(
            rows,
            cols,
            acc.into_iter().filter(|(_, x)| !f.is_zero(x)).map(|((r, c), x)| (r, c, x)),
        ))
    }

    fn from_sorted_unchecked(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, E)>) -> Matrix<E> {
        let mut row_ptr = vec![0; rows + 1];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for (r, c, x) in entries {
            row_ptr[r + 1] += 1;
            col_idx.push(c);
            vals.push(x);
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Matrix { rows, cols, row_ptr, col_idx, vals }
    }

    /// Build from sparse rows (each already canonical).
    pub fn from_rows(cols: usize, rows: Vec<SparseVec<E>>) -> Matrix<E> {
        let n = rows.len();
        Matrix::from_sorted_unchecked(
            n,
            cols,
            rows.into_iter()
                .enumerate()
                .flat_map(|(r, v)| v.into_entries().into_iter().map(move |(c, x)| (r, c, x))),
        )
    }

    /// Build from sparse columns (each already canonical).
    pub fn from_columns(rows: usize, columns: &[SparseVec<E>]) -> Matrix<E> {
        let mut t: Vec<(usize, usize, E)> = columns
            .iter()
            .enumerate()
            .flat_map(|(c, v)| v.entries().iter().map(move |(r, x)| (*r, c, x.clone())))
            .collect();
        t.sort_by_key(|(r, c, _)| (*r, *c));
        Matrix::from_sorted_unchecked(rows, columns.len(), t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entries `(col, value)` of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &E)> + '_ {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        self.col_idx[a..b].iter().copied().zip(&self.vals[a..b])
    }

    pub fn row_vec(&self, r: usize) -> SparseVec<E> {
        SparseVec::from_sorted(self.row(r).map(|(c, x)| (c, x.clone())).collect())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&E> {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        self.col_idx[a..b].binary_search(&c).ok().map(|k| &self.vals[a + k])
    }

    /// All entries `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, x)| (r, c, x)))
    }

    pub fn transpose(&self) -> Matrix<E> {
        let mut t: Vec<(usize, usize, E)> = self.entries().map(|(r, c, x)| (c, r, x.clone())).collect();
        t.sort_by_key(|(r, c, _)| (*r, *c));
        Matrix::from_sorted_unchecked(self.cols, self.rows, t)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<E>> {
        let mut cols: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.cols];
        for (r, c, x) in self.entries() {
            cols[c].push((r, x.clone()));
        }
        cols.into_iter().map(SparseVec::from_sorted).collect()
    }

    pub fn map_values<F: Field<Elem = E>>(&self, f: &F, g: impl Fn(usize, usize, &E) -> E) -> Matrix<E> {
        Matrix::from_sorted_unchecked(
            self.rows,
            self.cols,
            self.entries()
                .map(|(r, c, x)| (r, c, g(r, c, x)))
                .filter(|(_, _, x)| !f.is_zero(x))
                .collect::<Vec<_>>(),
        )
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Matrix<E> {
        self.map_values(f, |_, _, x| f.mul(c, x))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        self.map_values(f, |_, _, x| f.neg(x))
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &Matrix<E>) -> Result<Matrix<E>> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "adding {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = (0..self.rows)
            .map(|r| self.row_vec(r).axpy(f, c, &other.row_vec(r)))
            .collect();
        Ok(Matrix::from_rows(self.cols, rows))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Result<Matrix<E>> {
        self.axpy(f, &f.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Result<Matrix<E>> {
        self.axpy(f, &f.from_i64(-1), other)
    }

    /// Matrix product `self * other`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "composing {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = crate::par::map_range(self.rows, |r| {
            let mut acc: BTreeMap<usize, E> = BTreeMap::new();
            for (k, x) in self.row(r) {
                for (c, y) in other.row(k) {
                    let p = f.mul(x, y);
                    match acc.get_mut(&c) {
                        Some(z) => *z = f.add(z, &p),
                        None => {
                            acc.insert(c, p);
                        }
                    }
                }
            }
            SparseVec::from_sorted(acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect())
        });
        Ok(Matrix::from_rows(other.cols, rows))
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            let mut acc = f.zero();
            for (c, x) in self.row(r) {
                if let Some(y) = v.get(c) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            if !f.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Plain Kronecker product, with an optional sign per entry pair.
    pub fn kron_signed<F: Field<Elem = E>>(
        &self,
        f: &F,
        other: &Matrix<E>,
        negate: impl Fn((usize, usize), (usize, usize)) -> bool,
    ) -> Matrix<E> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for r1 in 0..self.rows {
            for r2 in 0..other.rows {
                for (c1, x) in self.row(r1) {
                    for (c2, y) in other.row(r2) {
                        let mut p = f.mul(x, y);
                        if negate((r1, c1), (r2, c2)) {
                            p = f.neg(&p);
                        }
                        entries.push((r1 * other.rows + r2, c1 * other.cols + c2, p));
                    }
                }
            }
        }
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        Matrix::from_sorted_unchecked(rows, cols, entries)
    }

    pub fn kron<F: Field<Elem = E>>(&self, f: &F, other: &Matrix<E>) -> Matrix<E> {
        self.kron_signed(f, other, |_, _| false)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        (0..self.rows.min(self.cols))
            .filter_map(|i| self.get(i, i))
            .fold(f.zero(), |acc, x| f.add(&acc, x))
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVec<E> {
        SparseVec::from_sorted(self.entries().map(|(r, c, x)| (r * self.cols + c, x.clone())).collect())
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVec<E>) -> Matrix<E> {
        Matrix::from_sorted_unchecked(rows, cols, v.entries().iter().map(|(i, x)| (i / cols, i % cols, x.clone())).collect::<Vec<_>>())
    }

    /// Embed as the block at (`row_off`, `col_off`) of a larger zero matrix.
    pub fn embed(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> Matrix<E> {
        Matrix::from_sorted_unchecked(
            rows,
            cols,
            self.entries().map(|(r, c, x)| (r + row_off, c + col_off, x.clone())).collect::<Vec<_>>(),
        )
    }

    /// Sub-block of rows `r0..r0+nr`, columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix<E> {
        Matrix::from_sorted_unchecked(
            nr,
            nc,
            (r0..r0 + nr)
                .flat_map(|r| {
                    self.row(r)
                        .filter(move |(c, _)| *c >= c0 && *c < c0 + nc)
                        .map(move |(c, x)| (r - r0, c - c0, x.clone()))
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![f.zero(); self.cols]; self.rows];
        for (r, c, x) in self.entries() {
            out[r][c] = x.clone();
        }
        out
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, dense: &[Vec<E>]) -> Matrix<E> {
        let cols = dense.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, dense.iter().map(|r| SparseVec::from_dense(f, r)).collect())
    }

    pub fn from_i64<F: Field<Elem = E>>(f: &F, dense: &[Vec<i64>]) -> Matrix<E> {
        let conv: Vec<Vec<E>> = dense.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        let mut m = Matrix::from_dense(f, &conv);
        if dense.is_empty() {
            m = Matrix::zero(0, 0);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    #[test]
    fn compose_and_transpose() {
        let f = Rationals;
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![0, 1]]);
        let b = Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]);
        let ab = a.compose(&f, &b).unwrap();
        assert_eq!(ab, Matrix::from_i64(&f, &[vec![2, 1], vec![1, 0]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.trace(&f), f.from_i64(2));
        assert!(a.compose(&f, &Matrix::zero(3, 3)).is_err());
    }

    #[test]
    fn kron_matches_dense_definition() {
        let f = Rationals;
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![3, 4]]);
        let b = Matrix::from_i64(&f, &[vec![0, 5], vec![6, 7]]);
        let k = a.kron(&f, &b);
        for r in 0..4 {
            for c in 0..4 {
                let want = f.mul(
                    a.get(r / 2, c / 2).cloned().as_ref().unwrap_or(&f.zero()),
                    b.get(r % 2, c % 2).cloned().as_ref().unwrap_or(&f.zero()),
                );
                assert_eq!(k.get(r, c).cloned().unwrap_or(f.zero()), want);
            }
        }
    }

    #[test]
    fn sparse_vec_axpy_cancels() {
        let f = Rationals;
        let v = SparseVec::from_entries(&f, vec![(3, f.one()), (1, f.from_i64(2))]);
        let w = v.axpy(&f, &f.from_i64(-1), &v);
        assert!(w.is_zero());
        assert_eq!(v.leading(), Some(1));
        assert_eq!(v.dot(&f, &v), f.from_i64(5));
    }

    #[test]
    fn flatten_roundtrip() {
        let f = Rationals;
        let a = Matrix::from_i64(&f, &[vec![1, 0, 2], vec![0, 3, 0]]);
        assert_eq!(Matrix::unflatten(2, 3, &a.flatten()), a);
        assert_eq!(a.block(0, 2, 1, 2), Matrix::from_i64(&f, &[vec![0, 2], vec![3, 0]]));
    }
}
