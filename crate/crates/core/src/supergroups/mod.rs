//! Matrix Lie superalgebras gl, osp, pe and q, solved from their defining
//! equations, with their actions on mixed tensor powers.

use serde::{Deserialize, Serialize};

use crate::diagrams::walled::Orient;
use crate::error::{Error, Result};
use crate::interp::RepModule;
use crate::superlinalg::field::{Field, Parity};
use crate::superlinalg::form::{standard_form, BilinearForm, FormKind};
use crate::superlinalg::matrix::{Matrix, SparseVec};
use crate::superlinalg::operator::{tensor_operator, SparseOperator};
use crate::superlinalg::solve::{kernel_of_columns, LinearMap, Rref};
use crate::superlinalg::space::{Factor, IndexSpace, SuperSpace, TensorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LieKind {
    Gl,
    Osp,
    Pe,
    Q,
}

impl std::fmt::Display for LieKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LieKind::Gl => "gl",
            LieKind::Osp => "osp",
            LieKind::Pe => "pe",
            LieKind::Q => "q",
        })
    }
}

/// A Lie superalgebra of matrices on `V`, with a homogeneous basis.
#[derive(Clone, Debug)]
pub struct MatrixSuperLieAlgebra<F: Field> {
    pub kind: LieKind,
    pub space: SuperSpace,
    pub basis: Vec<SparseOperator<F::Elem>>,
    pub form: Option<BilinearForm<F::Elem>>,
}

impl<F: Field> MatrixSuperLieAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis elements that are diagonal matrices.
    pub fn diagonal_part(&self) -> Vec<&SparseOperator<F::Elem>> {
        self.basis.iter().filter(|x| x.matrix().is_diagonal()).collect()
    }
}

fn v_space(space: SuperSpace) -> IndexSpace {
    IndexSpace::single(TensorSpace::power(space, 1))
}

fn operator_from_flat<F: Field>(space: SuperSpace, parity: Parity, v: &SparseVec<F::Elem>) -> Result<SparseOperator<F::Elem>> {
    let d = space.dim();
    SparseOperator::new(v_space(space), v_space(space), parity, Matrix::unflatten(d, d, v))
}

/// Homogeneous solutions `X` (flattened row-major) of a linear system given
/// by `equations(p, (i, j))`: the equation-space column of the unknown `X_ij`
/// for parity `p`.
fn solve_homogeneous<F: Field>(
    f: &F,
    space: SuperSpace,
    equations: impl Fn(Parity, usize, usize) -> SparseVec<F::Elem>,
) -> Result<Vec<SparseOperator<F::Elem>>> {
    let d = space.dim();
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let unknowns: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| space.parity(i) + space.parity(j) == p)
            .collect();
        let cols: Vec<SparseVec<F::Elem>> = unknowns.iter().map(|&(i, j)| equations(p, i, j)).collect();
        for k in kernel_of_columns(f, &cols)? {
            let flat = k.remap(|u| Some(unknowns[u].0 * d + unknowns[u].1));
            out.push(operator_from_flat::<F>(space, p, &flat)?);
        }
    }
    Ok(out)
}

/// `gl(V)` with the matrix-unit basis `E_ij`.
pub fn gl<F: Field>(f: &F, space: SuperSpace) -> MatrixSuperLieAlgebra<F> {
    let d = space.dim();
    let basis = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| {
            let m = Matrix::from_triplets(f, d, d, [(i, j, f.one())]).expect("unit in range");
            SparseOperator::new(v_space(space), v_space(space), space.parity(i) + space.parity(j), m).expect("E_ij is homogeneous")
        })
        .collect();
    MatrixSuperLieAlgebra { kind: LieKind::Gl, space, basis, form: None }
}

/// Matrices preserving `form`: `<Xv,w> + (-1)^{|X||v|} <v,Xw> = 0`.
pub fn form_algebra<F: Field>(f: &F, form: &BilinearForm<F::Elem>) -> Result<MatrixSuperLieAlgebra<F>> {
    let space = form.space();
    let d = space.dim();
    let g = form.gram();
    // equation (a, b) sits at index a*d + b
    let basis = solve_homogeneous(f, space, |p, i, j| {
        // X_ij contributes g_ib to <X e_j, e_b> and sign * g_ai to <e_a, X e_j>
        let mut terms = Vec::new();
        for (b, x) in g.row(i) {
            terms.push((j * d + b, x.clone()));
        }
        for a in 0..d {
            if let Some(x) = g.get(a, i) {
                terms.push((a * d + j, f.mul(&f.sign(p.is_odd() && space.parity(a).is_odd()), x)));
            }
        }
        SparseVec::from_entries(f, terms)
    })?;
    let kind = if form.parity().is_odd() { LieKind::Pe } else { LieKind::Osp };
    Ok(MatrixSuperLieAlgebra { kind, space, basis, form: Some(form.clone()) })
}

/// `osp(m|2n)` for the standard even form.
pub fn osp<F: Field>(f: &F, m: usize, n: usize) -> Result<MatrixSuperLieAlgebra<F>> {
    let (_, form) = standard_form(f, FormKind::Even { m, n })?;
    form_algebra(f, &form)
}

/// `pe(n)` for the standard odd form on `(n|n)`.
pub fn pe<F: Field>(f: &F, n: usize) -> Result<MatrixSuperLieAlgebra<F>> {
    let (_, form) = standard_form(f, FormKind::Odd { n })?;
    form_algebra(f, &form)
}

/// The odd involution `e_i ↔ e_{i±n}` on `(n|n)`.
pub fn odd_involution<F: Field>(f: &F, n: usize) -> SparseOperator<F::Elem> {
    let space = SuperSpace::new(n, n);
    let t = (0..n).flat_map(|i| [(i, n + i, f.one()), (n + i, i, f.one())]);
    let m = Matrix::from_triplets(f, 2 * n, 2 * n, t).expect("indices in range");
    SparseOperator::new(v_space(space), v_space(space), Parity::Odd, m).expect("swap is odd")
}

/// `q(n)`: matrices supercommuting with the odd involution.
pub fn q<F: Field>(f: &F, n: usize) -> Result<MatrixSuperLieAlgebra<F>> {
    let space = SuperSpace::new(n, n);
    let d = 2 * n;
    let qh = odd_involution(f, n);
    let qm = qh.matrix();
    // X q - (-1)^{|X|} q X, entry (a, b) at a*d + b
    let basis = solve_homogeneous(f, space, |p, i, j| {
        let mut terms = Vec::new();
        for (b, x) in qm.row(j) {
            terms.push((i * d + b, x.clone()));
        }
        let neg = f.neg(&f.sign(p.is_odd()));
        for a in 0..d {
            if let Some(x) = qm.get(a, i) {
                terms.push((a * d + j, f.mul(&neg, x)));
            }
        }
        SparseVec::from_entries(f, terms)
    })?;
    Ok(MatrixSuperLieAlgebra { kind: LieKind::Q, space, basis, form: None })
}

pub fn lie_basis<F: Field>(f: &F, kind: LieKind, space: SuperSpace, form: Option<&BilinearForm<F::Elem>>) -> Result<MatrixSuperLieAlgebra<F>> {
    match (kind, form) {
        (LieKind::Gl, _) => Ok(gl(f, space)),
        (LieKind::Osp | LieKind::Pe, Some(g)) => {
            let want = if kind == LieKind::Pe { Parity::Odd } else { Parity::Even };
            if g.parity() != want {
                return Err(Error::Parity(format!("{kind} needs a {want:?} form")));
            }
            form_algebra(f, g)
        }
        (LieKind::Osp, None) => {
            if space.odd % 2 == 1 {
                return Err(Error::Shape(format!("osp needs an even odd dimension, got {space}")));
            }
            osp(f, space.even, space.odd / 2)
        }
        (LieKind::Pe, None) | (LieKind::Q, _) => {
            if space.even != space.odd {
                return Err(Error::Shape(format!("{kind} lives on (n|n), got {space}")));
            }
            if kind == LieKind::Pe {
                pe(f, space.even)
            } else {
                q(f, space.even)
            }
        }
    }
}

/// Coordinates of `[X_a, X_b]` failing to lie in the span of the basis.
pub fn closure_failures<F: Field>(f: &F, g: &MatrixSuperLieAlgebra<F>) -> Result<Vec<(usize, usize)>> {
    let d = g.space.dim();
    let span = Rref::from_rows(f.clone(), d * d, g.basis.iter().map(|x| x.matrix().flatten()));
    let n = g.dim();
    let bad = crate::par::try_map_range(n * n, |k| -> Result<Option<(usize, usize)>> {
        let (a, b) = (k / n, k % n);
        if b < a {
            return Ok(None);
        }
        let c = g.basis[a].supercommutator(f, &g.basis[b])?;
        Ok((!span.contains(&c.matrix().flatten())).then_some((a, b)))
    })?;
    Ok(bad.into_iter().flatten().collect())
}

/// Whether every basis element satisfies the form-invariance identity on basis vectors.
pub fn form_invariance_holds<F: Field>(f: &F, g: &MatrixSuperLieAlgebra<F>) -> bool {
    let Some(form) = &g.form else { return true };
    let d = g.space.dim();
    let gram = form.gram();
    g.basis.iter().all(|x| {
        let xm = x.matrix();
        let xg = xm.transpose().compose(f, gram).expect("square"); // <X e_v, e_w> = (X^T G)_{vw}
        let gx = gram.compose(f, xm).expect("square");
        (0..d).all(|v| {
            (0..d).all(|w| {
                let s = f.sign(x.parity().is_odd() && g.space.parity(v).is_odd());
                let lhs = xg.get(v, w).cloned().unwrap_or_else(|| f.zero());
                let rhs = gx.get(v, w).cloned().unwrap_or_else(|| f.zero());
                f.is_zero(&f.add(&lhs, &f.mul(&s, &rhs)))
            })
        })
    })
}

/// Action of `X` on the dual space: `X^W_{jk} = -(-1)^{|X|[k]} X_{kj}`.
pub fn dual_action<F: Field>(f: &F, x: &SparseOperator<F::Elem>, space: SuperSpace) -> Result<SparseOperator<F::Elem>> {
    let d = space.dim();
    let t = x.matrix().entries().map(|(k, j, v)| {
        let s = f.sign(!(x.parity().is_odd() && space.parity(k).is_odd()));
        (j, k, f.mul(&s, v))
    });
    let m = Matrix::from_triplets(f, d, d, t)?;
    let w = IndexSpace::single(TensorSpace::new(vec![Factor::dual(space)]));
    SparseOperator::new(w.clone(), w, x.parity(), m)
}

fn single_word_space(space: SuperSpace, word: &[Orient]) -> TensorSpace {
    TensorSpace::new(
        word.iter()
            .map(|o| match o {
                Orient::Down => Factor::plain(space),
                Orient::Up => Factor::dual(space),
            })
            .collect(),
    )
}

/// Derivation action of `X` on the tensor product described by `word`
/// (`v` for `V`, `^` for `W`), with Koszul signs.
pub fn mixed_action<F: Field>(f: &F, x: &SparseOperator<F::Elem>, space: SuperSpace, word: &[Orient]) -> Result<SparseOperator<F::Elem>> {
    let target = IndexSpace::single(single_word_space(space, word));
    let xv = x.relabel(v_space(space), v_space(space))?;
    let xw = dual_action(f, x, space)?;
    let mut total = SparseOperator::zero(target.clone(), target.clone(), x.parity());
    for (a, o) in word.iter().enumerate() {
        let left = SparseOperator::identity(f, IndexSpace::single(single_word_space(space, &word[..a])));
        let right = SparseOperator::identity(f, IndexSpace::single(single_word_space(space, &word[a + 1..])));
        let mid = if *o == Orient::Down { &xv } else { &xw };
        let term = tensor_operator(f, &left, &tensor_operator(f, mid, &right));
        let term = term.relabel(target.clone(), target.clone())?;
        total = total.axpy(f, &f.one(), &term)?;
    }
    SparseOperator::new(target.clone(), target, x.parity(), total.into_matrix())
}

/// `Σ_a id^{⊗a} ⊗ X ⊗ id^{⊗(r-a-1)}` on `V^{⊗r}`.
pub fn tensor_derivation<F: Field>(f: &F, x: &SparseOperator<F::Elem>, space: SuperSpace, r: usize) -> Result<SparseOperator<F::Elem>> {
    mixed_action(f, x, space, &vec![Orient::Down; r])
}

/// `g^{⊗r}` for a group element acting on `V` (and by inverse transpose on `W`).
pub fn group_power<F: Field>(f: &F, g: &SparseOperator<F::Elem>, space: SuperSpace, word: &[Orient]) -> Result<SparseOperator<F::Elem>> {
    if g.parity().is_odd() {
        return Err(Error::Parity("group elements are even".into()));
    }
    let gv = g.relabel(v_space(space), v_space(space))?;
    let w = IndexSpace::single(TensorSpace::new(vec![Factor::dual(space)]));
    let inv = crate::superlinalg::solve::inverse(f, g.matrix())?;
    let gw = SparseOperator::new(w.clone(), w, Parity::Even, inv.transpose())?;
    let mut acc = SparseOperator::identity(f, IndexSpace::ground());
    for o in word {
        acc = tensor_operator(f, &acc, if *o == Orient::Down { &gv } else { &gw });
    }
    Ok(acc)
}

/// Finite data beyond the Lie superalgebra.
#[derive(Clone, Debug)]
pub struct ComponentExtras<F: Field> {
    /// `diag(-1, 1, ..., 1)`; absent when `V` has no even part.
    pub reflection: Option<SparseOperator<F::Elem>>,
    /// `(-1)^{[i]}` on `e_i`.
    pub parity_element: SparseOperator<F::Elem>,
}

pub fn component_extras<F: Field>(f: &F, space: SuperSpace) -> ComponentExtras<F> {
    let d = space.dim();
    let v = v_space(space);
    let reflection = (space.even >= 1).then(|| {
        let diag: Vec<F::Elem> = (0..d).map(|i| f.sign(i == 0)).collect();
        SparseOperator::new(v.clone(), v.clone(), Parity::Even, Matrix::diagonal(f, &diag)).expect("diagonal is even")
    });
    let diag: Vec<F::Elem> = (0..d).map(|i| f.sign(space.parity(i).is_odd())).collect();
    let parity_element = SparseOperator::new(v.clone(), v, Parity::Even, Matrix::diagonal(f, &diag)).expect("diagonal is even");
    ComponentExtras { reflection, parity_element }
}

/// The module `V^{word}` with generators the derivations of `g` and the
/// tensor powers of the given group elements.
pub fn lie_module<F: Field>(
    f: &F,
    g: &MatrixSuperLieAlgebra<F>,
    word: &[Orient],
    group: &[SparseOperator<F::Elem>],
) -> Result<RepModule<F>> {
    let carrier = IndexSpace::single(single_word_space(g.space, word));
    let mut names: Vec<String> = (0..g.dim()).map(|i| format!("{}[{i}]", g.kind)).collect();
    let mut gens = crate::par::try_map_range(g.dim(), |i| {
        let op = mixed_action(f, &g.basis[i], g.space, word)?;
        op.relabel(carrier.clone(), carrier.clone())
    })?;
    for (k, h) in group.iter().enumerate() {
        names.push(format!("group[{k}]"));
        gens.push(group_power(f, h, g.space, word)?.relabel(carrier.clone(), carrier.clone())?);
    }
    RepModule::new(carrier, names, gens, true)
}

/// Derivation action of `X` on `V^{⊗r}` evaluated column by column, for
/// carriers too large to assemble.
pub struct DerivationMap<'a, F: Field> {
    field: F,
    x: &'a SparseOperator<F::Elem>,
    space: SuperSpace,
    r: usize,
    columns: Vec<Vec<(usize, F::Elem)>>,
}

impl<'a, F: Field> DerivationMap<'a, F> {
    pub fn new(f: &F, x: &'a SparseOperator<F::Elem>, space: SuperSpace, r: usize) -> Self {
        let columns = x.matrix().columns().into_iter().map(|c| c.into_entries()).collect();
        DerivationMap { field: f.clone(), x, space, r, columns }
    }
}

impl<F: Field> LinearMap<F> for DerivationMap<'_, F> {
    fn source_dim(&self) -> usize {
        self.space.dim().pow(self.r as u32)
    }

    fn target_dim(&self) -> usize {
        self.source_dim()
    }

    fn column(&self, j: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let d = self.space.dim();
        let mut digits = vec![0; self.r];
        let mut rest = j;
        for k in (0..self.r).rev() {
            digits[k] = rest % d;
            rest /= d;
        }
        let odd_x = self.x.parity().is_odd();
        let mut prefix_odd = false;
        let mut stride = self.source_dim();
        let mut terms = Vec::new();
        for &digit in &digits {
            stride /= d;
            let negate = odd_x && prefix_odd;
            for (row, v) in &self.columns[digit] {
                let val = if negate { f.neg(v) } else { v.clone() };
                terms.push((j - digit * stride + row * stride, val));
            }
            if self.space.parity(digit).is_odd() {
                prefix_odd = !prefix_odd;
            }
        }
        SparseVec::from_entries(f, terms)
    }
}

/// `h^{⊗r} - id` for a diagonal group element `h`, column by column.
pub struct DiagonalPowerMinusId<F: Field> {
    field: F,
    diag: Vec<F::Elem>,
    r: usize,
}

impl<F: Field> DiagonalPowerMinusId<F> {
    pub fn new(f: &F, h: &SparseOperator<F::Elem>, r: usize) -> Result<Self> {
        let m = h.matrix();
        if !m.is_diagonal() {
            return Err(Error::Unsupported("lazy group powers need a diagonal element".into()));
        }
        let diag = (0..m.rows()).map(|i| m.get(i, i).cloned().unwrap_or_else(|| f.zero())).collect();
        Ok(DiagonalPowerMinusId { field: f.clone(), diag, r })
    }
}

impl<F: Field> LinearMap<F> for DiagonalPowerMinusId<F> {
    fn source_dim(&self) -> usize {
        self.diag.len().pow(self.r as u32)
    }

    fn target_dim(&self) -> usize {
        self.source_dim()
    }

    fn column(&self, j: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let d = self.diag.len();
        let mut rest = j;
        let mut acc = f.one();
        for _ in 0..self.r {
            acc = f.mul(&acc, &self.diag[rest % d]);
            rest /= d;
        }
        SparseVec::from_entries(f, [(j, f.sub(&acc, &f.one()))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    #[test]
    fn dimensions() {
        let f = Rationals;
        assert_eq!(gl(&f, SuperSpace::new(2, 1)).dim(), 9);
        for (m, n) in [(2, 2), (1, 1), (3, 1), (0, 2)] {
            let g = osp(&f, m, n).unwrap();
            assert_eq!(g.dim(), m * (m.saturating_sub(1)) / 2 + n * (2 * n + 1) + 2 * m * n, "m={m} n={n}");
        }
        assert_eq!(pe(&f, 2).unwrap().dim(), 8);
        assert_eq!(q(&f, 2).unwrap().dim(), 8);
    }

    #[test]
    fn closed_and_invariant() {
        let f = Rationals;
        for g in [osp(&f, 2, 1).unwrap(), pe(&f, 2).unwrap(), q(&f, 2).unwrap(), gl(&f, SuperSpace::new(1, 2))] {
            assert!(closure_failures(&f, &g).unwrap().is_empty(), "{}", g.kind);
            assert!(form_invariance_holds(&f, &g), "{}", g.kind);
        }
    }

    #[test]
    fn q_has_block_shape() {
        let f = Rationals;
        let g = q(&f, 1).unwrap();
        // [[a, b], [-b, a]] style blocks: X q = ± q X
        let qh = odd_involution(&f, 1);
        for x in &g.basis {
            let c = x.supercommutator(&f, &qh).unwrap();
            assert!(c.is_zero());
        }
    }

    #[test]
    fn derivation_examples() {
        let f = Rationals;
        let s = SuperSpace::new(1, 1);
        let swap = Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]);
        let x = SparseOperator::new(v_space(s), v_space(s), Parity::Odd, swap).unwrap();
        let d = tensor_derivation(&f, &x, s, 2).unwrap();
        // e_odd ⊗ e_even = index 2: X⊗id gives e_even⊗e_even, id⊗X gives -e_odd⊗e_odd
        let col: Vec<_> = d.matrix().to_dense(&f).iter().map(|r| r[2].clone()).collect();
        assert_eq!(col, vec![f.one(), f.zero(), f.zero(), f.from_i64(-1)]);
        assert_eq!(tensor_derivation(&f, &x, s, 1).unwrap().matrix(), x.matrix());
        let id = SparseOperator::identity(&f, v_space(SuperSpace::new(2, 1)));
        let vw = mixed_action(&f, &id, SuperSpace::new(2, 1), &[Orient::Down, Orient::Up]).unwrap();
        assert!(vw.is_zero());
        let e = gl(&f, SuperSpace::new(2, 1));
        let w = mixed_action(&f, &e.basis[1], SuperSpace::new(2, 1), &[Orient::Up]).unwrap();
        assert_eq!(w.matrix(), &e.basis[1].matrix().transpose().neg(&f));
    }

    #[test]
    fn derivation_is_lie_homomorphism() {
        let f = Rationals;
        let g = osp(&f, 1, 1).unwrap();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let c = g.basis[a].supercommutator(&f, &g.basis[b]).unwrap();
                let da = tensor_derivation(&f, &g.basis[a], g.space, 3).unwrap();
                let db = tensor_derivation(&f, &g.basis[b], g.space, 3).unwrap();
                let dc = tensor_derivation(&f, &c, g.space, 3).unwrap();
                assert_eq!(da.supercommutator(&f, &db).unwrap().matrix(), dc.matrix());
            }
        }
    }

    #[test]
    fn lazy_derivation_matches_assembled() {
        let f = Rationals;
        let g = osp(&f, 1, 1).unwrap();
        for x in &g.basis {
            let full = tensor_derivation(&f, x, g.space, 3).unwrap();
            let lazy = DerivationMap::new(&f, x, g.space, 3);
            let cols = full.matrix().columns();
            for (j, c) in cols.iter().enumerate() {
                assert_eq!(&lazy.column(j), c);
            }
        }
    }

    #[test]
    fn extras() {
        let f = Rationals;
        let e = component_extras(&f, SuperSpace::new(1, 2));
        assert_eq!(e.parity_element.matrix(), &Matrix::from_i64(&f, &[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]));
        let (s, form) = standard_form(&f, FormKind::Even { m: 2, n: 1 }).unwrap();
        let e = component_extras(&f, s);
        let sig = e.reflection.unwrap();
        assert_eq!(sig.compose(&f, &sig).unwrap().matrix(), &Matrix::identity(&f, 4));
        let back = sig.matrix().transpose().compose(&f, form.gram()).unwrap().compose(&f, sig.matrix()).unwrap();
        assert_eq!(&back, form.gram());
        assert!(component_extras(&f, SuperSpace::new(0, 2)).reflection.is_none());
    }
}
