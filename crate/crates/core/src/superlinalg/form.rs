//! Even and odd supersymmetric bilinear forms.

use serde::{Deserialize, Serialize};

use super::field::{Field, Parity};
use super::matrix::Matrix;
use super::solve::dense_rank;
use super::space::SuperSpace;
use crate::error::{Error, Result};

/// Standard form shapes. `Even { m, n }` lives on `(m|2n)`, `Odd { n }` on `(n|n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Even { m: usize, n: usize },
    Odd { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<E> {
    space: SuperSpace,
    gram: Matrix<E>,
    parity: Parity,
}

impl<E: Clone + PartialEq + Send + Sync> BilinearForm<E> {
    /// Checked constructor: nondegenerate, symmetric under the braiding, and
    /// supported on the blocks allowed by `parity`.
    pub fn new<F: Field<Elem = E>>(f: &F, space: SuperSpace, gram: Matrix<E>, parity: Parity) -> Result<Self> {
        let d = space.dim();
        if gram.rows() != d || gram.cols() != d {
            return Err(Error::Shape(format!("gram is {}x{} on a space of dim {d}", gram.rows(), gram.cols())));
        }
        for (i, j, x) in gram.entries() {
            let pi = space.parity(i);
            let pj = space.parity(j);
            if pi + pj != parity {
                return Err(Error::Parity(format!("g[{i},{j}] nonzero for a {parity:?} form")));
            }
            let expect = if pi.is_odd() && pj.is_odd() { f.neg(x) } else { x.clone() };
            let back = gram.get(j, i).cloned().unwrap_or_else(|| f.zero());
            if back != expect {
                return Err(Error::DegenerateForm(format!("g[{j},{i}] breaks supersymmetry")));
            }
        }
        if dense_rank(f, &gram.to_dense(f)) != d {
            return Err(Error::DegenerateForm("gram matrix is singular".into()));
        }
        Ok(BilinearForm { space, gram, parity })
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn gram(&self) -> &Matrix<E> {
        &self.gram
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn value<F: Field<Elem = E>>(&self, f: &F, i: usize, j: usize) -> E {
        self.gram.get(i, j).cloned().unwrap_or_else(|| f.zero())
    }
}

/// The standard form of the given kind and the space it lives on.
pub fn standard_form<F: Field>(f: &F, kind: FormKind) -> Result<(SuperSpace, BilinearForm<F::Elem>)> {
    match kind {
        FormKind::Even { m, n } => {
            let space = SuperSpace::new(m, 2 * n);
            let mut t: Vec<(usize, usize, F::Elem)> = (0..m).map(|i| (i, i, f.one())).collect();
            for i in 0..n {
                t.push((m + i, m + n + i, f.one()));
                t.push((m + n + i, m + i, f.from_i64(-1)));
            }
            let gram = Matrix::from_triplets(f, space.dim(), space.dim(), t)?;
            Ok((space, BilinearForm::new(f, space, gram, Parity::Even)?))
        }
        FormKind::Odd { n } => {
            let space = SuperSpace::new(n, n);
            let t = (0..n).flat_map(|i| [(i, n + i, f.one()), (n + i, i, f.one())]);
            let gram = Matrix::from_triplets(f, space.dim(), space.dim(), t)?;
            Ok((space, BilinearForm::new(f, space, gram, Parity::Odd)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    #[test]
    fn standard_grams() {
        let f = Rationals;
        let (s, g) = standard_form(&f, FormKind::Even { m: 1, n: 0 }).unwrap();
        assert_eq!(s, SuperSpace::new(1, 0));
        assert_eq!(g.gram(), &Matrix::from_i64(&f, &[vec![1]]));
        let (_, g) = standard_form(&f, FormKind::Even { m: 0, n: 1 }).unwrap();
        assert_eq!(g.gram(), &Matrix::from_i64(&f, &[vec![0, 1], vec![-1, 0]]));
        let (s, g) = standard_form(&f, FormKind::Odd { n: 1 }).unwrap();
        assert_eq!(s, SuperSpace::new(1, 1));
        assert_eq!(g.gram(), &Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]));
        assert_eq!(g.parity(), Parity::Odd);
    }

    #[test]
    fn invalid_forms_rejected() {
        let f = Rationals;
        let s = SuperSpace::new(0, 2);
        let sym = Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]);
        assert!(BilinearForm::new(&f, s, sym, Parity::Even).is_err());
        let s = SuperSpace::new(2, 0);
        let singular = Matrix::from_i64(&f, &[vec![1, 1], vec![1, 1]]);
        assert!(BilinearForm::new(&f, s, singular, Parity::Even).is_err());
        let s = SuperSpace::new(1, 1);
        let wrong_block = Matrix::from_i64(&f, &[vec![1, 0], vec![0, 0]]);
        assert!(BilinearForm::new(&f, s, wrong_block, Parity::Odd).is_err());
    }
}
