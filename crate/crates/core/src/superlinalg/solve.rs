//! Exact sparse elimination: echelon forms, ranks, joint kernels and
//! subalgebra closure.

use std::collections::{BTreeMap, HashMap};

use super::field::{Field, PrimeField, Rationals, SCREEN_PRIME};
use super::matrix::{Matrix, SparseVec};
use crate::error::{Error, Result};
use crate::par;

/// Incremental row echelon form. Every stored row is monic at its smallest
/// column, which is its pivot.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Echelon<F> {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, F::Elem> = v.entries().iter().cloned().collect();
        let mut cursor = 0;
        while let Some(c) = acc.range(cursor..).next().map(|(c, _)| *c) {
            cursor = c + 1;
            let Some(&ri) = self.pivot_row.get(&c) else { continue };
            let x = acc.remove(&c).expect("key just found");
            for (k, y) in self.rows[ri].entries().iter().skip(1) {
                let d = f.mul(&x, y);
                match acc.get_mut(k) {
                    Some(z) => {
                        *z = f.sub(z, &d);
                        if f.is_zero(z) {
                            acc.remove(k);
                        }
                    }
                    None => {
                        acc.insert(*k, f.neg(&d));
                    }
                }
            }
        }
        SparseVec::from_sorted(acc.into_iter().collect())
    }

    /// Insert a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        let Some((c, lead)) = r.entries().first().cloned() else { return false };
        let inv = self.field.inv(&lead).expect("nonzero leading entry");
        let r = r.scale(&self.field, &inv);
        self.pivot_row.insert(c, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Fully reduced echelon form, rows sorted by pivot.
    pub fn into_rref(self) -> Rref<F> {
        let f = self.field.clone();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].leading());
        let mut done: Echelon<F> = Echelon::new(f, self.ncols);
        let mut reduced: Vec<Option<SparseVec<F::Elem>>> = vec![None; self.rows.len()];
        // back-substitute from the largest pivot down
        for &i in order.iter().rev() {
            let row = &self.rows[i];
            let (lead, rest) = row.entries().split_first().expect("stored rows are nonzero");
            let tail = done.reduce(&SparseVec::from_sorted(rest.to_vec()));
            let mut entries = vec![lead.clone()];
            entries.extend(tail.into_entries());
            let full = SparseVec::from_sorted(entries);
            done.pivot_row.insert(lead.0, done.rows.len());
            done.rows.push(full.clone());
            reduced[i] = Some(full);
        }
        let rows: Vec<SparseVec<F::Elem>> = order.iter().map(|&i| reduced[i].take().expect("filled")).collect();
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero")).collect();
        Rref { field: self.field, ncols: self.ncols, rows, pivots }
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn from_rows(field: F, ncols: usize, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Rref<F> {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert(&r);
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec<F::Elem>> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Normal form of `v` modulo the row space (supported on free columns).
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let terms: Vec<(F::Elem, &SparseVec<F::Elem>)> = self
            .pivots
            .iter()
            .zip(&self.rows)
            .filter_map(|(p, r)| v.get(*p).map(|x| (f.neg(x), r)))
            .collect();
        if terms.is_empty() {
            return v.clone();
        }
        let mut all = vec![(f.one(), v)];
        all.extend(terms.iter().map(|(c, r)| (c.clone(), *r)));
        super::matrix::combine(f, &all)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the row space.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v.get(*p).cloned().unwrap_or_else(|| self.field.zero())).collect())
    }

    /// Basis of `{x : R x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let free = self.free_columns();
        let mut at_free: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for (p, r) in self.pivots.iter().zip(&self.rows) {
            for (c, x) in r.entries().iter().skip(1) {
                at_free.entry(*c).or_default().push((*p, f.neg(x)));
            }
        }
        free.into_iter()
            .map(|c| {
                let mut entries = at_free.remove(&c).unwrap_or_default();
                entries.push((c, f.one()));
                entries.sort_by_key(|(i, _)| *i);
                SparseVec::from_sorted(entries)
            })
            .collect()
    }
}

/// Canonical (reduced echelon) basis of the span of `vectors`.
pub fn canonical_basis<F: Field>(f: &F, ncols: usize, vectors: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    Rref::from_rows(f.clone(), ncols, vectors.iter().cloned()).into_rows()
}

fn screened_rank<F: Field>(f: &F, ncols: usize, rows: &[SparseVec<F::Elem>]) -> Option<usize> {
    if f.characteristic() != 0 {
        return None;
    }
    let p = PrimeField::new(SCREEN_PRIME).expect("screening modulus is prime");
    let mut e = Echelon::new(p, ncols);
    for r in rows {
        let mut entries = Vec::with_capacity(r.nnz());
        for (i, x) in r.entries() {
            let y = f.reduce_mod(x, SCREEN_PRIME)?;
            if y != 0 {
                entries.push((*i, y));
            }
        }
        e.insert(&SparseVec::from_sorted(entries));
        if e.is_full() {
            break;
        }
    }
    Some(e.rank())
}

/// Exact rank of a list of sparse rows. Over the rationals a modular rank
/// equal to the largest possible value certifies the answer; otherwise the
/// exact elimination runs and must agree with the modular screen.
pub fn rank<F: Field>(f: &F, ncols: usize, rows: &[SparseVec<F::Elem>]) -> Result<usize> {
    let bound = ncols.min(rows.len());
    let screen = screened_rank(f, ncols, rows);
    if screen == Some(bound) {
        return Ok(bound);
    }
    let mut e = Echelon::new(f.clone(), ncols);
    for r in rows {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    if let Some(s) = screen {
        if s != e.rank() {
            return Err(Error::Internal(format!("modular rank {s} disagrees with exact rank {}", e.rank())));
        }
    }
    Ok(e.rank())
}

pub fn dense_rank<F: Field>(f: &F, dense: &[Vec<F::Elem>]) -> usize {
    let ncols = dense.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(f.clone(), ncols);
    for r in dense {
        e.insert(&SparseVec::from_dense(f, r));
    }
    e.rank()
}

/// Inverse of a small square matrix, by elimination on `[A | I]`.
pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let rows = (0..n).map(|r| {
        let mut entries = a.row_vec(r).into_entries();
        entries.push((n + r, f.one()));
        SparseVec::from_sorted(entries)
    });
    let rref = Rref::from_rows(f.clone(), 2 * n, rows);
    if rref.rank() != n || rref.pivots().iter().any(|&p| p >= n) {
        return Err(Error::Arithmetic("matrix is singular".into()));
    }
    let inv_rows = rref
        .rows()
        .iter()
        .map(|r| SparseVec::from_sorted(r.entries().iter().filter(|(c, _)| *c >= n).map(|(c, x)| (c - n, x.clone())).collect()))
        .collect();
    Ok(Matrix::from_rows(n, inv_rows))
}

/// A linear map given column by column.
pub trait LinearMap<F: Field>: Sync {
    fn source_dim(&self) -> usize;
    fn target_dim(&self) -> usize;
    fn column(&self, j: usize) -> SparseVec<F::Elem>;
}

/// A matrix viewed as a [`LinearMap`], with columns extracted once.
pub struct MatrixMap<E> {
    rows: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone + Send + Sync> MatrixMap<E> {
    pub fn new(m: &Matrix<E>) -> MatrixMap<E> {
        MatrixMap { rows: m.rows(), columns: m.columns() }
    }
}

impl<F: Field> LinearMap<F> for MatrixMap<F::Elem> {
    fn source_dim(&self) -> usize {
        self.columns.len()
    }
    fn target_dim(&self) -> usize {
        self.rows
    }
    fn column(&self, j: usize) -> SparseVec<F::Elem> {
        self.columns[j].clone()
    }
}

/// Kernel of the matrix whose columns are given, as vectors of length `columns.len()`.
pub fn kernel_of_columns<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> Result<Vec<SparseVec<F::Elem>>> {
    let k = columns.len();
    let mut by_row: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
    for (j, c) in columns.iter().enumerate() {
        for (t, x) in c.entries() {
            by_row.entry(*t).or_default().push((j, x.clone()));
        }
    }
    let mut rows: Vec<SparseVec<F::Elem>> = by_row.into_values().map(SparseVec::from_sorted).collect();
    rows.sort_by_key(|r| r.nnz());
    let screen = screened_rank(f, k, &rows);
    let mut e = Echelon::new(f.clone(), k);
    for r in &rows {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    if let Some(s) = screen {
        if s != e.rank() {
            return Err(Error::Internal(format!("modular rank {s} disagrees with exact rank {}", e.rank())));
        }
    }
    if e.is_full() {
        return Ok(Vec::new());
    }
    Ok(e.into_rref().kernel())
}

fn check_sources<F: Field>(ops: &[&dyn LinearMap<F>]) -> Result<Option<usize>> {
    let Some(first) = ops.first() else { return Ok(None) };
    let n = first.source_dim();
    if let Some(bad) = ops.iter().find(|o| o.source_dim() != n) {
        return Err(Error::Shape(format!("operators act on spaces of dims {n} and {}", bad.source_dim())));
    }
    Ok(Some(n))
}

/// Whether nonzero columns have pairwise disjoint supports, in which case the
/// kernel is spanned by the coordinate vectors of the zero columns.
fn separates_coordinates<E: Clone + Send + Sync>(columns: &[SparseVec<E>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    columns.iter().all(|c| c.entries().iter().all(|(t, _)| seen.insert(*t)))
}

/// Basis of the common kernel of `ops` on a space of dimension `dim`, in
/// reduced echelon form (so it does not depend on the order of `ops`).
///
/// Maps whose nonzero columns have disjoint supports (diagonal maps, block
/// idempotent conditions) are applied first as coordinate filters. The rest
/// restrict the current kernel one map at a time.
pub fn joint_kernel<F: Field>(f: &F, dim: usize, ops: &[&dyn LinearMap<F>]) -> Result<Vec<SparseVec<F::Elem>>> {
    if let Some(n) = check_sources(ops)? {
        if n != dim {
            return Err(Error::Shape(format!("operators act on dim {n}, expected {dim}")));
        }
    }
    let mut active: Vec<usize> = (0..dim).collect();
    let mut pending = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let cols = par::map(&active, |&j| op.column(j));
        if separates_coordinates(&cols) {
            active = active.into_iter().zip(&cols).filter(|(_, c)| c.is_zero()).map(|(j, _)| j).collect();
        } else {
            pending.push(i);
        }
    }
    // current kernel basis; `None` means the coordinate vectors of `active`
    let mut basis: Option<Vec<SparseVec<F::Elem>>> = None;
    for &i in &pending {
        let op = ops[i];
        let current_dim = basis.as_ref().map_or(active.len(), |b| b.len());
        if current_dim == 0 {
            break;
        }
        let images: Vec<SparseVec<F::Elem>> = match &basis {
            None => par::map(&active, |&j| op.column(j)),
            Some(b) => apply_to_basis(f, op, b),
        };
        let null = kernel_of_columns(f, &images)?;
        basis = Some(match &basis {
            None => null.iter().map(|v| v.remap(|k| Some(active[k]))).collect(),
            Some(b) => par::map(&null, |v| {
                let terms: Vec<(F::Elem, &SparseVec<F::Elem>)> =
                    v.entries().iter().map(|(k, c)| (c.clone(), &b[*k])).collect();
                super::matrix::combine(f, &terms)
            }),
        });
    }
    let vectors = match basis {
        None => return Ok(active.into_iter().map(|j| SparseVec::unit(f, j)).collect()),
        Some(b) => b,
    };
    Ok(canonical_basis(f, dim, &vectors))
}

/// `op` applied to each vector of `basis`, sharing column evaluations.
fn apply_to_basis<F: Field>(f: &F, op: &dyn LinearMap<F>, basis: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut needed: Vec<usize> = basis.iter().flat_map(|v| v.entries().iter().map(|(j, _)| *j)).collect();
    needed.sort_unstable();
    needed.dedup();
    let cols: HashMap<usize, SparseVec<F::Elem>> = needed.iter().copied().zip(par::map(&needed, |&j| op.column(j))).collect();
    par::map(basis, |v| {
        let terms: Vec<(F::Elem, &SparseVec<F::Elem>)> = v.entries().iter().map(|(j, c)| (c.clone(), &cols[j])).collect();
        super::matrix::combine(f, &terms)
    })
}

/// Common kernel of square or rectangular matrices sharing a column space.
pub fn kernel_basis<F: Field>(f: &F, dim: usize, ops: &[Matrix<F::Elem>]) -> Result<Vec<SparseVec<F::Elem>>> {
    let maps: Vec<MatrixMap<F::Elem>> = ops.iter().map(MatrixMap::new).collect();
    let dyn_maps: Vec<&dyn LinearMap<F>> = maps.iter().map(|m| m as &dyn LinearMap<F>).collect();
    joint_kernel(f, dim, &dyn_maps)
}

/// Linear basis of the unital algebra generated by square matrices of size `n`,
/// built by left-multiplying by generators until the span stops growing.
pub fn generated_subalgebra<F: Field>(f: &F, n: usize, gens: &[Matrix<F::Elem>]) -> Result<Vec<Matrix<F::Elem>>> {
    if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
        return Err(Error::Shape(format!("generator {}x{} on a space of dim {n}", g.rows(), g.cols())));
    }
    let mut span = Echelon::new(f.clone(), n * n);
    let id = Matrix::identity(f, n);
    span.insert(&id.flatten());
    let mut basis = vec![id];
    let mut next = 0;
    while next < basis.len() {
        let x = basis[next].clone();
        next += 1;
        let products = par::try_map_range(gens.len(), |g| gens[g].compose(f, &x))?;
        for p in products {
            if span.insert(&p.flatten()) {
                basis.push(p);
            }
        }
    }
    Ok(basis)
}

/// Image of `m` in `F_p`, if every entry reduces.
pub fn reduce_matrix<F: Field>(f: &F, m: &Matrix<F::Elem>, p: u64) -> Option<Matrix<u64>> {
    let pf = PrimeField::new(p).ok()?;
    let mut triplets = Vec::with_capacity(m.nnz());
    for (r, c, x) in m.entries() {
        triplets.push((r, c, f.reduce_mod(x, p)?));
    }
    Matrix::from_triplets(&pf, m.rows(), m.cols(), triplets).ok()
}

/// Rank of a matrix given as a list of rows over the rationals; convenience
/// used by oracles and tests.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let f = Rationals;
    let dense: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
    dense_rank(&f, &dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let f = q();
        let id = Matrix::identity(&f, 3);
        assert!(kernel_basis(&f, 3, &[id]).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_nothing_is_everything() {
        let f = q();
        assert_eq!(kernel_basis(&f, 4, &[]).unwrap().len(), 4);
        let z = Matrix::zero(3, 3);
        let d = Matrix::identity(&f, 3).sub(&f, &Matrix::identity(&f, 3)).unwrap();
        assert_eq!(kernel_basis(&f, 3, &[z, d]).unwrap().len(), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = q();
        let a = Matrix::from_i64(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let b = Matrix::from_i64(&f, &[vec![1, 0, 0, -1]]);
        let k = kernel_basis(&f, 4, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.apply(&f, v).is_zero());
            assert!(b.apply(&f, v).is_zero());
        }
    }

    #[test]
    fn rank_nullity() {
        let f = q();
        let a = Matrix::from_i64(&f, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        let rows: Vec<_> = (0..3).map(|r| a.row_vec(r)).collect();
        let r = rank(&f, 3, &rows).unwrap();
        let k = kernel_basis(&f, 3, &[a]).unwrap().len();
        assert_eq!(r + k, 3);
        assert_eq!(r, 2);
    }

    #[test]
    fn diagonal_filter_matches_elimination() {
        let f = q();
        let d = Matrix::diagonal(&f, &[f.zero(), f.one(), f.zero(), f.from_i64(2)]);
        let k = kernel_basis(&f, 4, &[d]).unwrap();
        assert_eq!(k, vec![SparseVec::unit(&f, 0), SparseVec::unit(&f, 2)]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = q();
        let a = Matrix::from_i64(&f, &[vec![0, 1], vec![-1, 0]]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(a.compose(&f, &inv).unwrap(), Matrix::identity(&f, 2));
        assert!(inverse(&f, &Matrix::from_i64(&f, &[vec![1, 1], vec![1, 1]])).is_err());
    }

    #[test]
    fn subalgebra_of_matrix_units_is_full() {
        let f = q();
        let units: Vec<_> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::from_triplets(&f, 2, 2, [(i, j, f.one())]).unwrap())
            .collect();
        assert_eq!(generated_subalgebra(&f, 2, &units).unwrap().len(), 4);
        assert_eq!(generated_subalgebra(&f, 3, &[]).unwrap().len(), 1);
    }

    #[test]
    fn rref_coordinates() {
        let f = q();
        let rows = vec![
            SparseVec::from_dense(&f, &[f.one(), f.one(), f.zero()]),
            SparseVec::from_dense(&f, &[f.zero(), f.one(), f.one()]),
        ];
        let r = Rref::from_rows(f, 3, rows.clone());
        let v = rows[0].add(&f, &rows[1].scale(&f, &f.from_i64(3)));
        let c = r.coordinates(&v).unwrap();
        let back = super::super::matrix::combine(&f, &[(c[0].clone(), &r.rows()[0]), (c[1].clone(), &r.rows()[1])]);
        assert_eq!(back, v);
        assert!(r.coordinates(&SparseVec::unit(&f, 0)).is_none());
    }
}
