//! Specht modules of symmetric groups in the polytabloid basis.

use std::collections::HashMap;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::superlinalg::field::Field;
use crate::superlinalg::matrix::{Matrix, SparseVec};
use crate::superlinalg::solve::Rref;

/// Row-filled tableaux with entries `0..n`.
type Tableau = Vec<Vec<usize>>;

pub fn standard_tableaux(p: &Partition) -> Vec<Tableau> {
    fn go(p: &[usize], t: &mut Tableau, next: usize, n: usize, out: &mut Vec<Tableau>) {
        if next == n {
            out.push(t.clone());
            return;
        }
        for r in 0..p.len() {
            let len = t[r].len();
            if len < p[r] && (r == 0 || t[r - 1].len() > len) {
                t[r].push(next);
                go(p, t, next + 1, n, out);
                t[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut t = vec![Vec::new(); p.parts().len()];
    go(p.parts(), &mut t, 0, p.size(), &mut out);
    out
}

fn permutations_of(items: &[usize]) -> Vec<(Vec<usize>, bool)> {
    // (image of items in order, odd?)
    if items.len() <= 1 {
        return vec![(items.to_vec(), false)];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for (mut tail, odd) in permutations_of(&rest) {
            let mut v = vec![x];
            v.append(&mut tail);
            out.push((v, odd ^ (i % 2 == 1)));
        }
    }
    out
}

fn all_tabloids(shape: &[usize], row_of: &mut Vec<usize>, next: usize, fill: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if next == row_of.len() {
        visit(row_of);
        return;
    }
    for r in 0..shape.len() {
        if fill[r] < shape[r] {
            fill[r] += 1;
            row_of[next] = r;
            all_tabloids(shape, row_of, next + 1, fill, visit);
            fill[r] -= 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpechtModule<F: Field> {
    field: F,
    partition: Partition,
    n: usize,
    tabloids: HashMap<Vec<usize>, usize>,
    basis: Vec<Tableau>,
    span: Rref<F>,
}

impl<F: Field> SpechtModule<F> {
    pub fn new(field: &F, partition: &Partition) -> Result<SpechtModule<F>> {
        let n = partition.size();
        let c = field.characteristic();
        if c != 0 && c <= n as u64 {
            return Err(Error::Unsupported(format!(
                "Specht module {partition} needs characteristic 0 or above {n}, got {c}"
            )));
        }
        let basis = standard_tableaux(partition);
        let mut m = SpechtModule {
            field: field.clone(),
            partition: partition.clone(),
            n,
            tabloids: HashMap::new(),
            basis: basis.clone(),
            span: Rref::from_rows(field.clone(), 0, Vec::new()),
        };
        all_tabloids(partition.parts(), &mut vec![0; n], 0, &mut vec![0; partition.parts().len()], &mut |t| {
            m.tabloid_index(t.to_vec());
        });
        let vecs: Vec<Vec<(usize, i64)>> = basis.iter().map(|t| m.polytabloid(t)).collect();
        let ncols = m.tabloids.len();
        let rows = vecs.into_iter().map(|v| SparseVec::from_entries(field, v.into_iter().map(|(i, x)| (i, field.from_i64(x)))));
        m.span = Rref::from_rows(field.clone(), ncols, rows);
        Ok(m)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn tabloid_index(&mut self, row_of: Vec<usize>) -> usize {
        let next = self.tabloids.len();
        *self.tabloids.entry(row_of).or_insert(next)
    }

    fn polytabloid(&mut self, t: &Tableau) -> Vec<(usize, i64)> {
        let width = t.first().map_or(0, |r| r.len());
        let columns: Vec<Vec<usize>> = (0..width).map(|c| t.iter().filter_map(|row| row.get(c).copied()).collect()).collect();
        let mut acc: HashMap<usize, i64> = HashMap::new();
        let mut states: Vec<(Vec<usize>, bool)> = vec![(vec![0; self.n], false)];
        for col in &columns {
            let mut next = Vec::new();
            for (row_of, odd) in &states {
                for (img, podd) in permutations_of(col) {
                    let mut r = row_of.clone();
                    // entry col[k] moves to the row of col's k-th cell, i.e. row k
                    for (k, &e) in img.iter().enumerate() {
                        r[e] = k;
                    }
                    next.push((r, odd ^ podd));
                }
            }
            states = next;
        }
        for (row_of, odd) in states {
            let i = self.tabloid_index(row_of);
            *acc.entry(i).or_insert(0) += if odd { -1 } else { 1 };
        }
        let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|(_, x)| *x != 0).collect();
        v.sort_unstable();
        v
    }

    /// Matrix of the permutation `i ↦ perm[i]` acting on entries.
    pub fn matrix(&self, perm: &[usize]) -> Result<Matrix<F::Elem>> {
        if perm.len() != self.n {
            return Err(Error::Shape(format!("permutation of {} points on a Specht module of S_{}", perm.len(), self.n)));
        }
        let f = &self.field;
        let mut scratch = self.clone();
        let mut cols = Vec::with_capacity(self.dim());
        for t in &self.basis {
            let moved: Tableau = t.iter().map(|row| row.iter().map(|&e| perm[e]).collect()).collect();
            let v = scratch.polytabloid(&moved);
            if scratch.tabloids.len() != self.span.ncols() {
                return Err(Error::Internal("tabloid outside the shape".into()));
            }
            let sv = SparseVec::from_entries(f, v.into_iter().map(|(i, x)| (i, f.from_i64(x))));
            let c = self.span.coordinates(&sv).ok_or_else(|| Error::Internal("polytabloid outside the Specht span".into()))?;
            cols.push(SparseVec::from_dense(f, &c));
        }
        Ok(Matrix::from_columns(self.dim(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        permutations_of(&(0..n).collect::<Vec<_>>()).into_iter().map(|(p, _)| p).collect()
    }

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&x| a[x]).collect()
    }

    #[test]
    fn dimensions_are_standard_tableau_counts() {
        let f = Rationals;
        let dims: Vec<usize> = ["1,1", "2,1", "3", "2,2", "3,1", "2,1,1"]
            .iter()
            .map(|s| SpechtModule::new(&f, &s.parse().unwrap()).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![1, 2, 1, 2, 3, 3]);
    }

    #[test]
    fn sign_and_trivial() {
        let f = Rationals;
        let sign = SpechtModule::new(&f, &"1,1".parse().unwrap()).unwrap();
        assert_eq!(sign.matrix(&[1, 0]).unwrap(), Matrix::identity(&f, 1).neg(&f));
        let triv = SpechtModule::new(&f, &"3".parse().unwrap()).unwrap();
        assert_eq!(triv.matrix(&[2, 0, 1]).unwrap(), Matrix::identity(&f, 1));
    }

    #[test]
    fn matrices_form_a_representation() {
        let f = Rationals;
        for s in ["2,1", "2,2", "3,1", "2,1,1"] {
            let m = SpechtModule::new(&f, &s.parse().unwrap()).unwrap();
            let n = m.partition().size();
            let perms = all_perms(n);
            for a in &perms {
                for b in &perms {
                    let lhs = m.matrix(a).unwrap().compose(&f, &m.matrix(b).unwrap()).unwrap();
                    assert_eq!(lhs, m.matrix(&compose(a, b)).unwrap(), "{s}");
                }
            }
        }
    }

    #[test]
    fn character_of_the_standard_representation() {
        let f = Rationals;
        let m = SpechtModule::new(&f, &"2,1".parse().unwrap()).unwrap();
        assert_eq!(m.matrix(&[1, 0, 2]).unwrap().trace(&f), f.zero());
        assert_eq!(m.matrix(&[1, 2, 0]).unwrap().trace(&f), f.from_i64(-1));
    }

    #[test]
    fn small_characteristic_is_refused() {
        let p = crate::superlinalg::field::PrimeField::new(3).unwrap();
        assert!(SpechtModule::new(&p, &"2,1".parse().unwrap()).is_err());
        assert!(SpechtModule::new(&p, &"1,1".parse().unwrap()).is_ok());
    }
}
