//! Finite-dimensional left modules over a diagram algebra, given by one
//! matrix per basis element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagrams::DiagramAlgebra;
use crate::error::{Error, Result};
use crate::interp::RepModule;
use crate::superlinalg::field::Field;
use crate::superlinalg::matrix::{combine, Matrix, SparseVec};
use crate::superlinalg::solve::{joint_kernel, kernel_of_columns, rank, LinearMap, Rref};

#[derive(Clone, Debug)]
pub struct AlgebraModule<F: Field> {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix<F::Elem>>,
}

impl<F: Field> AlgebraModule<F> {
    pub fn new(a: &DiagramAlgebra<F>, name: impl Into<String>, dim: usize, action: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if action.len() != a.dim() {
            return Err(Error::Shape(format!("{} action matrices for an algebra of dim {}", action.len(), a.dim())));
        }
        if let Some(m) = action.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape(format!("action matrix {}x{} on a module of dim {dim}", m.rows(), m.cols())));
        }
        Ok(AlgebraModule { name: name.into(), dim, action })
    }

    pub fn from_rep(a: &DiagramAlgebra<F>, name: impl Into<String>, m: &RepModule<F>) -> Result<Self> {
        AlgebraModule::new(a, name, m.dim(), m.generators.iter().map(|g| g.matrix().clone()).collect())
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &DiagramAlgebra<F>) -> Self {
        AlgebraModule { name: "A".into(), dim: a.dim(), action: (0..a.dim()).map(|x| a.left_mult(x)).collect() }
    }

    /// Basis pairs `(x, y)` with `ρ(x)ρ(y) ≠ ρ(xy)`, plus a failure at
    /// `(n, n)` if the unit does not act as the identity.
    pub fn action_failures(&self, a: &DiagramAlgebra<F>) -> Vec<(usize, usize)> {
        let f = a.field();
        let n = a.dim();
        let bad = crate::par::map_range(n * n, |k| {
            let (x, y) = (k / n, k % n);
            let lhs = self.action[x].compose(f, &self.action[y]).expect("square");
            let rhs = match a.product(x, y) {
                Some((c, z)) => self.action[*z].scale(f, c),
                None => Matrix::zero(self.dim, self.dim),
            };
            (lhs != rhs).then_some((x, y))
        });
        let mut out: Vec<(usize, usize)> = bad.into_iter().flatten().collect();
        if self.act_vec(a, &a.identity_vector()) != Matrix::identity(f, self.dim) {
            out.push((n, n));
        }
        out
    }

    /// Action of an algebra element given in the diagram basis.
    pub fn act_vec(&self, a: &DiagramAlgebra<F>, v: &SparseVec<F::Elem>) -> Matrix<F::Elem> {
        let f = a.field();
        let mut acc = Matrix::zero(self.dim, self.dim);
        for (i, c) in v.entries() {
            acc = acc.axpy(f, c, &self.action[*i]).expect("same shape");
        }
        acc
    }

    /// Basis of `e_o M` for the identity of object `o`.
    pub fn object_part(&self, a: &DiagramAlgebra<F>, o: usize) -> Vec<SparseVec<F::Elem>> {
        let e = &self.action[a.identities()[o]];
        Rref::from_rows(a.field().clone(), self.dim, e.columns()).into_rows()
    }

    /// `dim e_o M` for every object.
    pub fn object_dims(&self, a: &DiagramAlgebra<F>) -> Vec<usize> {
        (0..a.objects().len()).map(|o| self.object_part(a, o).len()).collect()
    }

    /// `tr ρ(x)` for every basis element.
    pub fn traces(&self, a: &DiagramAlgebra<F>) -> Vec<F::Elem> {
        self.action.iter().map(|m| m.trace(a.field())).collect()
    }
}

/// The contragredient dual twisted by the star anti-automorphism:
/// `x` acts on `M*` by the transpose of `ρ(x*)`.
pub fn dual_module<F: Field>(a: &DiagramAlgebra<F>, m: &AlgebraModule<F>) -> AlgebraModule<F> {
    let f = a.field();
    let action = (0..a.dim())
        .map(|i| {
            let (c, j) = a.star_basis(i);
            m.action[j].transpose().scale(f, &c)
        })
        .collect();
    AlgebraModule { name: format!("d({})", m.name), dim: m.dim, action }
}

/// `φ ↦ φ X(a) − Y(a) φ` on `dim Y × dim X` matrices, flattened row-major.
struct HomMap<'a, F: Field> {
    field: F,
    dx: usize,
    dy: usize,
    x: &'a Matrix<F::Elem>,
    yt: Matrix<F::Elem>,
}

impl<F: Field> LinearMap<F> for HomMap<'_, F> {
    fn source_dim(&self) -> usize {
        self.dx * self.dy
    }

    fn target_dim(&self) -> usize {
        self.dx * self.dy
    }

    fn column(&self, u: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let (i, j) = (u / self.dx, u % self.dx);
        // E_ij X: row i is row j of X; Y E_ij: column j is column i of Y
        let mut terms: Vec<(usize, F::Elem)> = self.x.row(j).map(|(c, v)| (i * self.dx + c, v.clone())).collect();
        for (r, v) in self.yt.row(i) {
            terms.push((r * self.dx + j, f.neg(v)));
        }
        SparseVec::from_entries(f, terms)
    }
}

/// Basis of `Hom_A(X, Y)` as `dim Y × dim X` matrices.
pub fn hom_space<F: Field>(a: &DiagramAlgebra<F>, x: &AlgebraModule<F>, y: &AlgebraModule<F>) -> Result<Vec<Matrix<F::Elem>>> {
    let f = a.field();
    if x.dim == 0 || y.dim == 0 {
        return Ok(Vec::new());
    }
    let maps: Vec<HomMap<'_, F>> = (0..a.dim())
        .map(|i| HomMap { field: f.clone(), dx: x.dim, dy: y.dim, x: &x.action[i], yt: y.action[i].transpose() })
        .collect();
    let dyn_maps: Vec<&dyn LinearMap<F>> = maps.iter().map(|m| m as &dyn LinearMap<F>).collect();
    let kernel = joint_kernel(f, x.dim * y.dim, &dyn_maps)?;
    Ok(kernel.iter().map(|v| Matrix::unflatten(y.dim, x.dim, v)).collect())
}

fn is_invertible<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<bool> {
    if m.rows() != m.cols() {
        return Ok(false);
    }
    let rows: Vec<SparseVec<F::Elem>> = (0..m.rows()).map(|r| m.row_vec(r)).collect();
    Ok(rank(f, m.cols(), &rows)? == m.rows())
}

/// An isomorphism `X → Y`, if one is found among the hom-space basis and a
/// few seeded random combinations of it.
pub fn find_isomorphism<F: Field>(
    a: &DiagramAlgebra<F>,
    x: &AlgebraModule<F>,
    y: &AlgebraModule<F>,
) -> Result<Option<Matrix<F::Elem>>> {
    let f = a.field();
    if x.dim != y.dim {
        return Ok(None);
    }
    if x.dim == 0 {
        return Ok(Some(Matrix::zero(0, 0)));
    }
    let homs = hom_space(a, x, y)?;
    for h in &homs {
        if is_invertible(f, h)? {
            return Ok(Some(h.clone()));
        }
    }
    if homs.len() < 2 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let flats: Vec<SparseVec<F::Elem>> = homs.iter().map(|h| h.flatten()).collect();
    for _ in 0..4 {
        let terms: Vec<(F::Elem, &SparseVec<F::Elem>)> = flats.iter().map(|v| (f.from_i64(rng.random_range(-1000..=1000)), v)).collect();
        let h = Matrix::unflatten(y.dim, x.dim, &combine(f, &terms));
        if is_invertible(f, &h)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// The submodule on an `A`-stable subspace, in the canonical basis of `span`.
pub fn restrict<F: Field>(a: &DiagramAlgebra<F>, m: &AlgebraModule<F>, span: &Rref<F>, name: impl Into<String>) -> Result<AlgebraModule<F>> {
    let f = a.field();
    let rows = span.rows();
    let action = crate::par::try_map_range(a.dim(), |i| {
        let cols: Vec<SparseVec<F::Elem>> = rows
            .iter()
            .map(|v| {
                let image = m.action[i].apply(f, v);
                span.coordinates(&image)
                    .map(|c| SparseVec::from_dense(f, &c))
                    .ok_or_else(|| Error::Internal(format!("subspace of {} is not stable", m.name)))
            })
            .collect::<Result<_>>()?;
        Ok::<_, Error>(Matrix::from_columns(rows.len(), &cols))
    })?;
    Ok(AlgebraModule { name: name.into(), dim: rows.len(), action })
}

/// The image of a module map `φ: X → Y` as a submodule of `Y`.
pub fn image<F: Field>(a: &DiagramAlgebra<F>, y: &AlgebraModule<F>, phi: &Matrix<F::Elem>, name: impl Into<String>) -> Result<AlgebraModule<F>> {
    let span = Rref::from_rows(a.field().clone(), y.dim, phi.columns());
    restrict(a, y, &span, name)
}

/// Generators `(object, vector)` with each vector in `e_o M`, chosen greedily
/// object by object.
pub fn module_generators<F: Field>(a: &DiagramAlgebra<F>, m: &AlgebraModule<F>) -> Vec<(usize, SparseVec<F::Elem>)> {
    let f = a.field();
    let mut span = crate::superlinalg::solve::Echelon::new(f.clone(), m.dim);
    let mut out = Vec::new();
    for o in 0..a.objects().len() {
        for v in m.object_part(a, o) {
            if span.contains(&v) {
                continue;
            }
            for (b, el) in a.basis().iter().enumerate() {
                if el.source == o {
                    span.insert(&m.action[b].apply(f, &v));
                }
            }
            out.push((o, v));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ext1 {
    pub dim: usize,
    pub hom_syzygy: usize,
    pub hom_projective: usize,
    pub hom: usize,
}

/// `dim Ext¹_A(X, Y)` from the presentation `0 → Ω → ⊕ A e_o → X → 0`:
/// `Ext¹ = Hom(Ω, Y) / im Hom(P, Y)`, and the restriction has kernel `Hom(X, Y)`.
pub fn ext1<F: Field>(a: &DiagramAlgebra<F>, x: &AlgebraModule<F>, y: &AlgebraModule<F>) -> Result<Ext1> {
    let f = a.field();
    let gens = module_generators(a, x);
    // basis of P: (generator, basis element with the generator's source object)
    let mut p_basis: Vec<(usize, usize)> = Vec::new();
    let mut p_index = std::collections::HashMap::new();
    for (g, (o, _)) in gens.iter().enumerate() {
        for (b, el) in a.basis().iter().enumerate() {
            if el.source == *o {
                p_index.insert((g, b), p_basis.len());
                p_basis.push((g, b));
            }
        }
    }
    let pi_cols: Vec<SparseVec<F::Elem>> = p_basis.iter().map(|&(g, b)| x.action[b].apply(f, &gens[g].1)).collect();
    let omega = kernel_of_columns(f, &pi_cols)?;
    let hom_projective: usize = gens.iter().map(|(o, _)| y.object_part(a, *o).len()).sum();
    let hom = hom_space(a, x, y)?.len();
    let hom_syzygy = if omega.is_empty() {
        0
    } else {
        let np = p_basis.len();
        let action = crate::par::map_range(a.dim(), |b| {
            let triplets = p_basis.iter().enumerate().filter_map(|(col, &(g, c))| {
                a.product(b, c).as_ref().map(|(s, z)| (p_index[&(g, *z)], col, s.clone()))
            });
            Matrix::from_triplets(f, np, np, triplets).expect("indices in range")
        });
        let p = AlgebraModule { name: "P".into(), dim: np, action };
        let span = Rref::from_rows(f.clone(), np, omega);
        let om = restrict(a, &p, &span, "Ω")?;
        hom_space(a, &om, y)?.len()
    };
    let dim = (hom_syzygy + hom)
        .checked_sub(hom_projective)
        .ok_or_else(|| Error::Internal("negative Ext dimension".into()))?;
    Ok(Ext1 { dim, hom_syzygy, hom_projective, hom })
}
