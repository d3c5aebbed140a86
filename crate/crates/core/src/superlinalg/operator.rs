//! Homogeneous linear maps between graded index spaces, with Koszul-signed
//! tensor products and the symmetric braiding.

use super::field::{Field, Parity};
use super::matrix::Matrix;
use super::space::{IndexSpace, SuperSpace, TensorSpace};
use crate::error::{Error, Result};

/// A homogeneous linear map `cols -> rows` between graded spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseOperator<E> {
    rows: IndexSpace,
    cols: IndexSpace,
    parity: Parity,
    matrix: Matrix<E>,
}

/// Parity an entry at `(r, c)` forces on its operator.
fn entry_parity(rp: &[Parity], cp: &[Parity], r: usize, c: usize) -> Parity {
    rp[r] + cp[c]
}

impl<E: Clone + PartialEq + Send + Sync> SparseOperator<E> {
    /// Checked constructor: every nonzero entry must respect `parity`.
    pub fn new(rows: IndexSpace, cols: IndexSpace, parity: Parity, matrix: Matrix<E>) -> Result<Self> {
        if matrix.rows() != rows.dim() || matrix.cols() != cols.dim() {
            return Err(Error::Shape(format!(
                "matrix {}x{} on spaces of dims {} and {}",
                matrix.rows(),
                matrix.cols(),
                rows.dim(),
                cols.dim()
            )));
        }
        let (rp, cp) = (rows.parities(), cols.parities());
        if let Some((r, c, _)) = matrix.entries().find(|(r, c, _)| entry_parity(&rp, &cp, *r, *c) != parity) {
            return Err(Error::Parity(format!("entry ({r},{c}) violates declared parity {parity:?}")));
        }
        Ok(SparseOperator { rows, cols, parity, matrix })
    }

    /// Infer the parity from the entries; the zero map is even.
    pub fn homogeneous(rows: IndexSpace, cols: IndexSpace, matrix: Matrix<E>) -> Result<Self> {
        let (rp, cp) = (rows.parities(), cols.parities());
        let parity = matrix
            .entries()
            .next()
            .map_or(Parity::Even, |(r, c, _)| entry_parity(&rp, &cp, r, c));
        SparseOperator::new(rows, cols, parity, matrix)
    }

    /// Split an arbitrary matrix into its even and odd parts.
    pub fn split_parity<F: Field<Elem = E>>(
        f: &F,
        rows: &IndexSpace,
        cols: &IndexSpace,
        matrix: &Matrix<E>,
    ) -> (SparseOperator<E>, SparseOperator<E>) {
        let (rp, cp) = (rows.parities(), cols.parities());
        let part = |p: Parity| {
            let m = Matrix::from_triplets(
                f,
                matrix.rows(),
                matrix.cols(),
                matrix
                    .entries()
                    .filter(|(r, c, _)| entry_parity(&rp, &cp, *r, *c) == p)
                    .map(|(r, c, x)| (r, c, x.clone())),
            )
            .expect("entries copied from a matrix of the same shape");
            SparseOperator { rows: rows.clone(), cols: cols.clone(), parity: p, matrix: m }
        };
        (part(Parity::Even), part(Parity::Odd))
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, space: IndexSpace) -> Self {
        let n = space.dim();
        SparseOperator { rows: space.clone(), cols: space, parity: Parity::Even, matrix: Matrix::identity(f, n) }
    }

    pub fn zero(rows: IndexSpace, cols: IndexSpace, parity: Parity) -> Self {
        let matrix = Matrix::zero(rows.dim(), cols.dim());
        SparseOperator { rows, cols, parity, matrix }
    }

    pub fn rows(&self) -> &IndexSpace {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSpace {
        &self.cols
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix<E> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<E> {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.cols.check_same(&other.rows, "compose")?;
        Ok(SparseOperator {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            parity: self.parity + other.parity,
            matrix: self.matrix.compose(f, &other.matrix)?,
        })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        SparseOperator { matrix: self.matrix.scale(f, c), ..self.clone() }
    }

    /// `self + c * other`; both must have the same parity unless one is zero.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &Self) -> Result<Self> {
        self.rows.check_same(&other.rows, "add")?;
        self.cols.check_same(&other.cols, "add")?;
        let parity = match (self.is_zero(), other.is_zero() || f.is_zero(c)) {
            (_, true) => self.parity,
            (true, false) => other.parity,
            (false, false) if self.parity == other.parity => self.parity,
            _ => return Err(Error::Parity("adding operators of different parity".into())),
        };
        Ok(SparseOperator {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            parity,
            matrix: self.matrix.axpy(f, c, &other.matrix)?,
        })
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.axpy(f, &f.from_i64(-1), other)
    }

    /// Supercommutator `[X, Y] = XY - (-1)^{|X||Y|} YX`.
    pub fn supercommutator<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        let xy = self.compose(f, other)?;
        let yx = other.compose(f, self)?;
        let sign = f.sign(self.parity.is_odd() && other.parity.is_odd());
        let mut out = xy.axpy(f, &f.neg(&sign), &yx)?;
        out.parity = self.parity + other.parity;
        Ok(out)
    }

    /// Replace the row/column space descriptors (same dimensions and parities).
    pub fn relabel(&self, rows: IndexSpace, cols: IndexSpace) -> Result<Self> {
        SparseOperator::new(rows, cols, self.parity, self.matrix.clone())
    }
}

/// Koszul-signed tensor product: `(f⊗g)(v⊗w) = (-1)^{|g||v|} f(v)⊗g(w)`.
pub fn tensor_operator<F: Field>(
    f: &F,
    a: &SparseOperator<F::Elem>,
    b: &SparseOperator<F::Elem>,
) -> SparseOperator<F::Elem> {
    let rows = a.rows.tensor(&b.rows);
    let cols = a.cols.tensor(&b.cols);
    let a_col_par = a.cols.parities();
    let odd_b = b.parity.is_odd();
    let mut entries = Vec::with_capacity(a.matrix.nnz() * b.matrix.nnz());
    for (r1, c1, x) in a.matrix.entries() {
        let negate = odd_b && a_col_par[c1].is_odd();
        for (r2, c2, y) in b.matrix.entries() {
            let mut p = f.mul(x, y);
            if negate {
                p = f.neg(&p);
            }
            entries.push((a.rows.tensor_index(&b.rows, r1, r2), a.cols.tensor_index(&b.cols, c1, c2), p));
        }
    }
    let matrix = Matrix::from_triplets(f, rows.dim(), cols.dim(), entries).expect("indices inside tensor spaces");
    SparseOperator { rows, cols, parity: a.parity + b.parity, matrix }
}

/// Tensor product of several operators, left to right.
pub fn tensor_all<F: Field>(f: &F, ops: &[SparseOperator<F::Elem>]) -> SparseOperator<F::Elem> {
    ops.iter().fold(SparseOperator::identity(f, IndexSpace::ground()), |acc, op| {
        tensor_operator(f, &acc, op)
    })
}

/// Braiding `A ⊗ B -> B ⊗ A`, `a⊗b ↦ (-1)^{|a||b|} b⊗a`.
pub fn braiding_tensor<F: Field>(f: &F, a: &TensorSpace, b: &TensorSpace) -> SparseOperator<F::Elem> {
    let (da, db) = (a.dim(), b.dim());
    let entries = (0..da).flat_map(|i| {
        (0..db).map(move |j| {
            let neg = a.parity(i).is_odd() && b.parity(j).is_odd();
            (j * da + i, i * db + j, f.sign(neg))
        })
    });
    let matrix = Matrix::from_triplets(f, da * db, da * db, entries).expect("permutation indices in range");
    SparseOperator {
        rows: IndexSpace::single(b.concat(a)),
        cols: IndexSpace::single(a.concat(b)),
        parity: Parity::Even,
        matrix,
    }
}

pub fn braiding_operator<F: Field>(f: &F, v: SuperSpace, w: SuperSpace) -> SparseOperator<F::Elem> {
    braiding_tensor(f, &TensorSpace::power(v, 1), &TensorSpace::power(w, 1))
}

/// The signed permutation of tensor factors sending factor `perm[k]` of the
/// source to position `k` of the target.
pub fn permutation_operator<F: Field>(f: &F, source: &TensorSpace, perm: &[usize]) -> Result<SparseOperator<F::Elem>> {
    let n = source.arity();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Shape(format!("{perm:?} is not a permutation of {n} factors")));
    }
    let target = TensorSpace::new(perm.iter().map(|&p| source.factors()[p]).collect());
    let dim = source.dim();
    let entries: Vec<(usize, usize, F::Elem)> = (0..dim)
        .map(|c| {
            let multi = source.split(c);
            let odd: Vec<bool> = multi
                .iter()
                .zip(source.factors())
                .map(|(&i, fac)| fac.space.parity(i).is_odd())
                .collect();
            // count odd pairs whose relative order is reversed
            let mut neg = false;
            for x in 0..n {
                for y in x + 1..n {
                    if perm[x] > perm[y] && odd[perm[x]] && odd[perm[y]] {
                        neg = !neg;
                    }
                }
            }
            let image: Vec<usize> = perm.iter().map(|&p| multi[p]).collect();
            (target.join(&image), c, f.sign(neg))
        })
        .collect();
    let matrix = Matrix::from_triplets(f, dim, dim, entries)?;
    Ok(SparseOperator {
        rows: IndexSpace::single(target),
        cols: IndexSpace::single(source.clone()),
        parity: Parity::Even,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    fn v11() -> SuperSpace {
        SuperSpace::new(1, 1)
    }

    fn on(space: SuperSpace) -> IndexSpace {
        IndexSpace::single(TensorSpace::power(space, 1))
    }

    #[test]
    fn braiding_odd_line_is_minus_one() {
        let f = Rationals;
        let b = braiding_operator(&f, SuperSpace::new(0, 1), SuperSpace::new(0, 1));
        assert_eq!(b.matrix().to_dense(&f), vec![vec![f.from_i64(-1)]]);
        let b = braiding_operator(&f, SuperSpace::new(1, 0), SuperSpace::new(1, 0));
        assert_eq!(b.matrix().to_dense(&f), vec![vec![f.one()]]);
    }

    #[test]
    fn braiding_on_one_one() {
        let f = Rationals;
        let b = braiding_operator(&f, v11(), v11());
        let want = Matrix::from_i64(
            &f,
            &[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -1]],
        );
        assert_eq!(b.matrix(), &want);
        let sq = b.compose(&f, &b).unwrap();
        assert_eq!(sq.matrix(), &Matrix::identity(&f, 4));
    }

    #[test]
    fn koszul_sign_on_odd_swap() {
        let f = Rationals;
        let id = SparseOperator::identity(&f, on(v11()));
        let swap = SparseOperator::new(on(v11()), on(v11()), Parity::Odd, Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]))
            .unwrap();
        let t = tensor_operator(&f, &id, &swap);
        assert_eq!(t.parity(), Parity::Odd);
        // (id ⊗ swap)(e2 ⊗ e1) = -(e2 ⊗ e2): column 2, row 3
        assert_eq!(t.matrix().get(3, 2), Some(&f.from_i64(-1)));
        assert_eq!(t.matrix().get(1, 0), Some(&f.one()));
        assert_eq!(t.matrix().get(0, 1), Some(&f.one()));
        assert_eq!(t.matrix().get(2, 3), Some(&f.from_i64(-1)));
    }

    #[test]
    fn even_tensor_is_kronecker() {
        let f = Rationals;
        let a = SparseOperator::new(on(v11()), on(v11()), Parity::Even, Matrix::from_i64(&f, &[vec![2, 0], vec![0, 3]]))
            .unwrap();
        let t = tensor_operator(&f, &a, &a);
        assert_eq!(t.matrix(), &a.matrix().kron(&f, a.matrix()));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let f = Rationals;
        let m = Matrix::from_i64(&f, &[vec![1, 1], vec![0, 0]]);
        assert!(matches!(SparseOperator::homogeneous(on(v11()), on(v11()), m), Err(Error::Parity(_))));
    }

    #[test]
    fn permutation_matches_braiding() {
        let f = Rationals;
        let t = TensorSpace::power(SuperSpace::new(1, 2), 2);
        let p = permutation_operator(&f, &t, &[1, 0]).unwrap();
        let b = braiding_operator(&f, SuperSpace::new(1, 2), SuperSpace::new(1, 2));
        assert_eq!(p.matrix(), b.matrix());
    }
}
