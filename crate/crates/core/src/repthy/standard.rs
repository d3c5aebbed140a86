//! Standard modules `Δ(λ) = A ⊗_R S(λ)` over the cupless subalgebra `R`, and
//! simple modules as images of canonical maps `Δ(λ) → dΔ(λ)`.

use serde::{Deserialize, Serialize};

use super::module::{dual_module, hom_space, image, AlgebraModule};
use super::partition::{labels, Label};
use super::specht::SpechtModule;
use crate::diagrams::{DiagramAlgebra, Object, Orient};
use crate::error::{Error, Result};
use crate::superlinalg::field::Field;
use crate::superlinalg::matrix::{Matrix, SparseVec};
use crate::superlinalg::solve::{rank, Rref};

/// Action of a permutation on the tensor product of the Specht modules of
/// a label; walled labels act blockwise on the `v` and `^` positions.
struct LabelAction<F: Field> {
    blocks: Vec<(usize, SpechtModule<F>)>,
}

impl<F: Field> LabelAction<F> {
    fn new(f: &F, label: &Label, object: &Object) -> Result<LabelAction<F>> {
        let sizes: Vec<usize> = match object {
            Object::Points(k) => vec![*k],
            Object::Word(w) => {
                let down = w.iter().filter(|o| **o == Orient::Down).count();
                vec![down, w.len() - down]
            }
        };
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (p, &n) in label.parts.iter().zip(&sizes) {
            if p.size() != n {
                return Err(Error::Label(format!("{label} does not fit object {object}")));
            }
            blocks.push((offset, SpechtModule::new(f, p)?));
            offset += n;
        }
        Ok(LabelAction { blocks })
    }

    fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s.dim()).product()
    }

    fn matrix(&self, f: &F, perm: &[usize]) -> Result<Matrix<F::Elem>> {
        let mut acc = Matrix::identity(f, 1);
        for (k, (off, s)) in self.blocks.iter().enumerate() {
            let n = s.partition().size();
            let end = self.blocks.get(k + 1).map_or(perm.len(), |b| b.0);
            debug_assert_eq!(end - off, n);
            let local: Vec<usize> = perm[*off..end]
                .iter()
                .map(|&t| t.checked_sub(*off).filter(|&x| x < n))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Internal("permutation mixes orientation blocks".into()))?;
            acc = acc.kron(f, &s.matrix(&local)?);
        }
        Ok(acc)
    }
}

/// `Δ(λ)` for an extended algebra; non-extended algebras get the image of
/// the extension's standard module under the top idempotent.
pub fn standard_module<F: Field>(a: &DiagramAlgebra<F>, label: &Label) -> Result<AlgebraModule<F>> {
    let kind = a.kind();
    if !labels(kind).contains(label) {
        return Err(Error::Label(format!("{label} is not a label of {kind}")));
    }
    if kind.is_extended() {
        return extended_standard(a, label);
    }
    let ext = DiagramAlgebra::build(a.field(), kind.extended(), a.delta().clone())?;
    let big = extended_standard(&ext, label)?;
    restrict_to_top(a, &ext, &big, format!("Δ{label}"))
}

/// The `e_0 A^c e_0 = A` module `e_0 M` for the top object `0`.
fn restrict_to_top<F: Field>(
    a: &DiagramAlgebra<F>,
    ext: &DiagramAlgebra<F>,
    m: &AlgebraModule<F>,
    name: String,
) -> Result<AlgebraModule<F>> {
    let f = a.field();
    let map: Vec<usize> = a
        .basis()
        .iter()
        .map(|b| ext.find(0, 0, &b.diagram).ok_or_else(|| Error::Internal("basis element missing from the extension".into())))
        .collect::<Result<_>>()?;
    let span = Rref::from_rows(f.clone(), m.dim, m.object_part(ext, 0));
    let rows = span.rows();
    let action = map
        .iter()
        .map(|&i| {
            let cols: Vec<SparseVec<F::Elem>> = rows
                .iter()
                .map(|v| {
                    let c = span.coordinates(&m.action[i].apply(f, v)).expect("e_0 M is e_0 A e_0-stable");
                    SparseVec::from_dense(f, &c)
                })
                .collect();
            Matrix::from_columns(rows.len(), &cols)
        })
        .collect();
    AlgebraModule::new(a, name, rows.len(), action)
}

fn extended_standard<F: Field>(a: &DiagramAlgebra<F>, label: &Label) -> Result<AlgebraModule<F>> {
    let f = a.field();
    let o = label.object;
    let spe = LabelAction::new(f, label, &a.objects()[o])?;
    let ds = spe.dim();
    // A e_o ⊗ S(λ), coordinates (position of a in `cols`) * ds + s
    let cols: Vec<usize> = (0..a.dim()).filter(|&i| a.basis()[i].source == o).collect();
    let mut pos = vec![usize::MAX; a.dim()];
    for (p, &i) in cols.iter().enumerate() {
        pos[i] = p;
    }
    let ncols = cols.len() * ds;
    let mut relations: Vec<SparseVec<F::Elem>> = Vec::new();
    for x in a.cupless() {
        let bx = &a.basis()[x];
        if bx.source != o {
            continue;
        }
        let perm = if bx.target == o { bx.diagram.as_permutation() } else { None };
        let sx = perm.as_ref().map(|p| spe.matrix(f, p)).transpose()?;
        for y in (0..a.dim()).filter(|&y| a.basis()[y].source == bx.target) {
            // y·x ⊗ s − y ⊗ x·s
            let yx = a.product(y, x).clone();
            for s in 0..ds {
                let mut terms: Vec<(usize, F::Elem)> = Vec::new();
                if let Some((c, z)) = &yx {
                    terms.push((pos[*z] * ds + s, c.clone()));
                }
                if let Some(m) = &sx {
                    for t in 0..ds {
                        if let Some(v) = m.get(t, s) {
                            terms.push((pos[y] * ds + t, f.neg(v)));
                        }
                    }
                }
                let v = SparseVec::from_entries(f, terms);
                if !v.is_zero() {
                    relations.push(v);
                }
            }
        }
    }
    let rel = Rref::from_rows(f.clone(), ncols, relations);
    let free = rel.free_columns();
    let mut free_pos = vec![usize::MAX; ncols];
    for (k, &c) in free.iter().enumerate() {
        free_pos[c] = k;
    }
    let n = free.len();
    let action = crate::par::map_range(a.dim(), |b| {
        let columns: Vec<SparseVec<F::Elem>> = free
            .iter()
            .map(|&c| {
                let (y, s) = (cols[c / ds], c % ds);
                match a.product(b, y) {
                    Some((coef, z)) => {
                        let v = SparseVec::from_entries(f, [(pos[*z] * ds + s, coef.clone())]);
                        rel.reduce(&v).remap(|i| Some(free_pos[i]))
                    }
                    None => SparseVec::zero(),
                }
            })
            .collect();
        Matrix::from_columns(n, &columns)
    });
    AlgebraModule::new(a, format!("Δ{label}"), n, action)
}

/// `∇(λ) = dΔ(λ)`.
pub fn costandard_module<F: Field>(a: &DiagramAlgebra<F>, label: &Label) -> Result<AlgebraModule<F>> {
    let d = standard_module(a, label)?;
    let mut n = dual_module(a, &d);
    n.name = format!("∇{label}");
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleFlag {
    /// `Hom(Δ(λ), ∇(λ))` is not one-dimensional.
    HomDimension(usize),
    /// The canonical map is zero.
    ZeroMap,
}

#[derive(Clone, Debug)]
pub struct SimpleModule<F: Field> {
    pub label: Label,
    pub standard_dim: usize,
    pub module: Option<AlgebraModule<F>>,
    pub flags: Vec<SimpleFlag>,
}

impl<F: Field> SimpleModule<F> {
    pub fn dim(&self) -> Option<usize> {
        self.module.as_ref().map(|m| m.dim)
    }
}

/// `L(λ)` as the image of the canonical map `Δ(λ) → ∇(λ)`; flagged instead
/// of answered when that map is not unique up to scalars.
pub fn simple_module<F: Field>(a: &DiagramAlgebra<F>, label: &Label) -> Result<SimpleModule<F>> {
    let d = standard_module(a, label)?;
    let n = dual_module(a, &d);
    let homs = hom_space(a, &d, &n)?;
    let mut out = SimpleModule { label: label.clone(), standard_dim: d.dim, module: None, flags: Vec::new() };
    if homs.len() != 1 {
        out.flags.push(SimpleFlag::HomDimension(homs.len()));
        return Ok(out);
    }
    let phi = &homs[0];
    let rows: Vec<SparseVec<F::Elem>> = (0..phi.rows()).map(|r| phi.row_vec(r)).collect();
    if rank(a.field(), phi.cols(), &rows)? == 0 {
        out.flags.push(SimpleFlag::ZeroMap);
        return Ok(out);
    }
    out.module = Some(image(a, &n, phi, format!("L{label}"))?);
    Ok(out)
}

pub fn simple_dim<F: Field>(a: &DiagramAlgebra<F>, label: &Label) -> Result<std::result::Result<usize, Vec<SimpleFlag>>> {
    let s = simple_module(a, label)?;
    Ok(s.dim().ok_or(s.flags))
}

/// Multiplicities `[M : L(μ)]` from traces (characteristic 0, split
/// simples with linearly independent characters). `None` if the traces of
/// `simples` are dependent or `M` is not a combination of them.
pub fn composition_multiplicities<F: Field>(
    a: &DiagramAlgebra<F>,
    m: &AlgebraModule<F>,
    simples: &[AlgebraModule<F>],
) -> Result<Option<Vec<usize>>> {
    let f = a.field();
    if f.characteristic() != 0 {
        return Err(Error::Unsupported("trace decomposition needs characteristic 0".into()));
    }
    let mut columns: Vec<SparseVec<F::Elem>> = simples.iter().map(|s| SparseVec::from_dense(f, &s.traces(a))).collect();
    columns.push(SparseVec::from_dense(f, &m.traces(a)).scale(f, &f.neg(&f.one())));
    let kernel = crate::superlinalg::solve::kernel_of_columns(f, &columns)?;
    let k = simples.len();
    let [v] = kernel.as_slice() else { return Ok(None) };
    let Some(last) = v.get(k).cloned() else { return Ok(None) };
    let inv = f.inv(&last).expect("nonzero");
    let mut mult = Vec::with_capacity(k);
    for i in 0..k {
        let x = v.get(i).map(|x| f.mul(x, &inv)).unwrap_or_else(|| f.zero());
        match (0..=m.dim as i64).find(|&n| f.from_i64(n) == x) {
            Some(n) => mult.push(n as usize),
            None => return Ok(None),
        }
    }
    Ok(Some(mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::AlgebraKind;
    use crate::repthy::module::{ext1, find_isomorphism};
    use crate::superlinalg::field::Rationals;

    fn build(kind: AlgebraKind, delta: i64) -> DiagramAlgebra<Rationals> {
        let f = Rationals;
        DiagramAlgebra::build(&f, kind, f.from_i64(delta)).unwrap()
    }

    fn standard_dims(a: &DiagramAlgebra<Rationals>) -> Vec<usize> {
        labels(a.kind()).iter().map(|l| standard_module(a, l).unwrap().dim).collect()
    }

    #[test]
    fn standard_dimensions_brauer_c() {
        // labels in order (2), (1,1), ∅ and (3), (2,1), (1,1,1), (1)
        assert_eq!(standard_dims(&build(AlgebraKind::BrauerC { r: 2 }, -2)), vec![1, 1, 2]);
        assert_eq!(standard_dims(&build(AlgebraKind::BrauerC { r: 3 }, 1)), vec![1, 2, 1, 4]);
    }

    #[test]
    fn standard_modules_are_modules() {
        for (kind, delta) in [
            (AlgebraKind::BrauerC { r: 2 }, 0),
            (AlgebraKind::BrauerC { r: 3 }, 1),
            (AlgebraKind::WalledC { r: 1, s: 1 }, 1),
            (AlgebraKind::WalledC { r: 2, s: 1 }, 2),
            (AlgebraKind::PeriplecticC { r: 2 }, 0),
            (AlgebraKind::PeriplecticC { r: 3 }, 0),
            (AlgebraKind::Brauer { r: 2 }, 0),
        ] {
            let a = build(kind, delta);
            for l in labels(kind) {
                let d = standard_module(&a, &l).unwrap();
                assert!(d.action_failures(&a).is_empty(), "{kind} {l}");
            }
        }
    }

    #[test]
    fn non_extended_brauer_cell_modules() {
        assert_eq!(standard_dims(&build(AlgebraKind::Brauer { r: 2 }, 3)), vec![1, 1, 1]);
        assert_eq!(standard_dims(&build(AlgebraKind::Brauer { r: 3 }, 3)), vec![1, 2, 1, 3]);
    }

    #[test]
    fn semisimple_point_has_simple_standards() {
        let a = build(AlgebraKind::BrauerC { r: 2 }, 5);
        for l in labels(a.kind()) {
            let s = simple_module(&a, &l).unwrap();
            assert_eq!(s.dim(), Some(s.standard_dim), "{l}");
        }
    }

    #[test]
    fn rank_drop_at_delta_zero() {
        let a = build(AlgebraKind::BrauerC { r: 2 }, 0);
        let empty = labels(a.kind()).into_iter().find(|l| l.size() == 0).unwrap();
        let s = simple_module(&a, &empty).unwrap();
        assert_eq!(s.standard_dim, 2);
        assert!(s.dim().is_none_or(|d| d < 2));
    }

    #[test]
    fn standard_costandard_orthogonality() {
        for (kind, delta) in [(AlgebraKind::BrauerC { r: 2 }, -2), (AlgebraKind::BrauerC { r: 3 }, 1), (AlgebraKind::WalledC { r: 1, s: 1 }, 1)] {
            let a = build(kind, delta);
            let ls = labels(kind);
            for l in &ls {
                let d = standard_module(&a, l).unwrap();
                for m in &ls {
                    let n = costandard_module(&a, m).unwrap();
                    assert_eq!(ext1(&a, &d, &n).unwrap().dim, 0, "{kind} {l} {m}");
                    let h = hom_space(&a, &d, &n).unwrap().len();
                    assert_eq!(h, usize::from(l == m), "{kind} hom {l} {m}");
                }
            }
        }
    }

    #[test]
    fn duality_is_an_involution_on_standards() {
        let a = build(AlgebraKind::BrauerC { r: 3 }, 1);
        for l in labels(a.kind()) {
            let d = standard_module(&a, &l).unwrap();
            let dd = dual_module(&a, &dual_module(&a, &d));
            assert!(find_isomorphism(&a, &d, &dd).unwrap().is_some());
        }
    }

    #[test]
    fn composition_factors_lie_below() {
        let a = build(AlgebraKind::BrauerC { r: 2 }, -2);
        let ls = labels(a.kind());
        let simples: Vec<_> = ls.iter().map(|l| simple_module(&a, l).unwrap().module.unwrap()).collect();
        for (i, l) in ls.iter().enumerate() {
            let d = standard_module(&a, l).unwrap();
            let mult = composition_multiplicities(&a, &d, &simples).unwrap().unwrap();
            assert_eq!(mult[i], 1);
            for (j, m) in ls.iter().enumerate() {
                if j != i && mult[j] > 0 {
                    assert!(m.less_than(l), "{m} in Δ{l}");
                }
            }
        }
    }
}
