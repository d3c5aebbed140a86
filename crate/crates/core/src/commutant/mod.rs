//! Commutants, invariants, coends, action kernels and double centralisers.

use serde::{Deserialize, Serialize};

use crate::diagrams::walled::Orient;
use crate::diagrams::DiagramAlgebra;
use crate::error::{Error, Result};
use crate::interp::RepModule;
use crate::superlinalg::field::{Field, Parity, PrimeField, SCREEN_PRIME};
use crate::superlinalg::matrix::{combine, Matrix, SparseVec};
use crate::superlinalg::operator::SparseOperator;
use crate::superlinalg::solve::{generated_subalgebra, joint_kernel, kernel_of_columns, rank, reduce_matrix, Echelon, LinearMap, Rref};
use crate::superlinalg::space::IndexSpace;
use crate::supergroups::{group_power, mixed_action, DerivationMap, DiagonalPowerMinusId, MatrixSuperLieAlgebra};

/// `φ ↦ φ A - s A φ` on operators `φ` of one parity, flattened row-major.
struct CommutatorMap<'a, F: Field> {
    field: F,
    d: usize,
    unknowns: &'a [(usize, usize)],
    a: &'a Matrix<F::Elem>,
    at: Matrix<F::Elem>,
    negative: bool,
}

impl<F: Field> LinearMap<F> for CommutatorMap<'_, F> {
    fn source_dim(&self) -> usize {
        self.unknowns.len()
    }

    fn target_dim(&self) -> usize {
        self.d * self.d
    }

    fn column(&self, u: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        let (i, j) = self.unknowns[u];
        let d = self.d;
        // E_ij A has row i equal to row j of A; A E_ij has column j equal to column i of A
        let mut terms: Vec<(usize, F::Elem)> = self.a.row(j).map(|(c, x)| (i * d + c, x.clone())).collect();
        for (r, x) in self.at.row(i) {
            terms.push((r * d + j, if self.negative { x.clone() } else { f.neg(x) }));
        }
        SparseVec::from_entries(f, terms)
    }
}

fn unknowns_of_parity(carrier: &IndexSpace, p: Parity) -> Vec<(usize, usize)> {
    let par = carrier.parities();
    let d = carrier.dim();
    (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).filter(|&(i, j)| par[i] + par[j] == p).collect()
}

/// Operators of parity `p` (super)commuting with every generator of `m`.
pub fn commutant_of_parity<F: Field>(f: &F, m: &RepModule<F>, p: Parity) -> Result<Vec<SparseOperator<F::Elem>>> {
    let d = m.dim();
    let unknowns = unknowns_of_parity(&m.carrier, p);
    let transposes: Vec<Matrix<F::Elem>> = crate::par::map(&m.generators, |g| g.matrix().transpose());
    let maps: Vec<CommutatorMap<'_, F>> = m
        .generators
        .iter()
        .zip(transposes)
        .map(|(g, at)| CommutatorMap {
            field: f.clone(),
            d,
            unknowns: &unknowns,
            a: g.matrix(),
            at,
            negative: m.graded && p.is_odd() && g.parity().is_odd(),
        })
        .collect();
    let dyn_maps: Vec<&dyn LinearMap<F>> = maps.iter().map(|x| x as &dyn LinearMap<F>).collect();
    let kernel = joint_kernel(f, unknowns.len(), &dyn_maps)?;
    kernel
        .iter()
        .map(|v| {
            let flat = v.remap(|u| Some(unknowns[u].0 * d + unknowns[u].1));
            SparseOperator::new(m.carrier.clone(), m.carrier.clone(), p, Matrix::unflatten(d, d, &flat))
        })
        .collect()
}

/// Basis of the (super)commutant, even operators first.
pub fn commutant_basis<F: Field>(f: &F, m: &RepModule<F>) -> Result<Vec<SparseOperator<F::Elem>>> {
    let mut out = commutant_of_parity(f, m, Parity::Even)?;
    out.extend(commutant_of_parity(f, m, Parity::Odd)?);
    Ok(out)
}

/// Vectors killed by every Lie-algebra element and fixed by every group element.
pub fn lie_invariants<F: Field>(
    f: &F,
    g: &MatrixSuperLieAlgebra<F>,
    group: &[SparseOperator<F::Elem>],
    word: &[Orient],
) -> Result<Vec<SparseVec<F::Elem>>> {
    let mut ops: Vec<Matrix<F::Elem>> = crate::par::try_map_range(g.dim(), |i| Ok::<_, Error>(mixed_action(f, &g.basis[i], g.space, word)?.into_matrix()))?;
    for h in group {
        let p = group_power(f, h, g.space, word)?;
        let n = p.matrix().rows();
        ops.push(p.matrix().sub(f, &Matrix::identity(f, n))?);
    }
    let dim = g.space.dim().pow(word.len() as u32);
    crate::superlinalg::solve::kernel_basis(f, dim, &ops)
}

/// Invariants in `V^{⊗r}` without assembling operators: diagonal group
/// elements and diagonal Lie elements first, then the rest one at a time.
pub fn lie_invariants_lazy<F: Field>(
    f: &F,
    g: &MatrixSuperLieAlgebra<F>,
    diagonal_group: &[SparseOperator<F::Elem>],
    r: usize,
) -> Result<Vec<SparseVec<F::Elem>>> {
    let dim = g.space.dim().pow(r as u32);
    let group: Vec<DiagonalPowerMinusId<F>> =
        diagonal_group.iter().map(|h| DiagonalPowerMinusId::new(f, h, r)).collect::<Result<_>>()?;
    let mut order: Vec<&SparseOperator<F::Elem>> = g.basis.iter().filter(|x| x.matrix().is_diagonal()).collect();
    order.extend(g.basis.iter().filter(|x| !x.matrix().is_diagonal()));
    let derivs: Vec<DerivationMap<'_, F>> = order.iter().map(|x| DerivationMap::new(f, x, g.space, r)).collect();
    let mut maps: Vec<&dyn LinearMap<F>> = group.iter().map(|m| m as &dyn LinearMap<F>).collect();
    maps.extend(derivs.iter().map(|m| m as &dyn LinearMap<F>));
    joint_kernel(f, dim, &maps)
}

/// `dim M* ⊗_A M`: `d²` minus the rank of `α∘ρ(a) ⊗ v - α ⊗ ρ(a)v`.
pub fn coend_dim<F: Field>(f: &F, m: &RepModule<F>) -> Result<usize> {
    let d = m.dim();
    let rows: Vec<Vec<SparseVec<F::Elem>>> = crate::par::map(&m.generators, |g| {
        let a = g.matrix();
        let at = a.transpose();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                // α = e_i*, v = e_j; coordinates (k, l) ↦ k*d + l
                let mut t: Vec<(usize, F::Elem)> = a.row(i).map(|(k, x)| (k * d + j, x.clone())).collect();
                t.extend(at.row(j).map(|(l, x)| (i * d + l, f.neg(x))));
                let v = SparseVec::from_entries(f, t);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        out
    });
    let rows: Vec<SparseVec<F::Elem>> = rows.into_iter().flatten().collect();
    Ok(d * d - rank(f, d * d, &rows)?)
}

#[derive(Clone, Debug)]
pub struct ActionKernel<E> {
    pub algebra_dim: usize,
    pub image_dim: usize,
    /// Kernel vectors in basis coordinates of the algebra.
    pub kernel: Vec<SparseVec<E>>,
    pub is_two_sided_ideal: bool,
}

/// Kernel of the action of `a` on `m` (whose generators are the basis images).
pub fn action_kernel<F: Field>(a: &DiagramAlgebra<F>, m: &RepModule<F>) -> Result<ActionKernel<F::Elem>> {
    let f = a.field();
    if m.generators.len() != a.dim() {
        return Err(Error::Shape("module generators must be the basis images".into()));
    }
    let cols: Vec<SparseVec<F::Elem>> = m.generators.iter().map(|g| g.matrix().flatten()).collect();
    let kernel = kernel_of_columns(f, &cols)?;
    let span = Rref::from_rows(f.clone(), a.dim(), kernel.iter().cloned());
    let ideal = kernel.iter().all(|k| {
        (0..a.dim()).all(|x| {
            let e = SparseVec::unit(f, x);
            span.contains(&a.mul(&e, k)) && span.contains(&a.mul(k, &e))
        })
    });
    Ok(ActionKernel { algebra_dim: a.dim(), image_dim: a.dim() - kernel.len(), kernel, is_two_sided_ideal: ideal })
}

/// Dimension of the span of the generators of `m`.
pub fn image_dim<F: Field>(f: &F, m: &RepModule<F>) -> Result<usize> {
    let d = m.dim();
    let rows: Vec<SparseVec<F::Elem>> = m.generators.iter().map(|g| g.matrix().flatten()).collect();
    rank(f, d * d, &rows)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleCentraliser {
    pub image_dim: usize,
    pub commutant_dim: usize,
    pub bicommutant_dim: usize,
    pub contains_image: bool,
    pub equal: bool,
}

/// Commutant of the commutant of `m`, compared with the span of its generators.
pub fn double_centraliser_check<F: Field>(f: &F, m: &RepModule<F>) -> Result<DoubleCentraliser> {
    let c = commutant_basis(f, m)?;
    let names = (0..c.len()).map(|i| format!("c{i}")).collect();
    let cm = RepModule::new(m.carrier.clone(), names, c.clone(), m.graded)?;
    let bc = commutant_basis(f, &cm)?;
    let d = m.dim();
    let span = Rref::from_rows(f.clone(), d * d, bc.iter().map(|x| x.matrix().flatten()));
    let contains = m.generators.iter().all(|g| span.contains(&g.matrix().flatten()));
    let image = image_dim(f, m)?;
    Ok(DoubleCentraliser {
        image_dim: image,
        commutant_dim: c.len(),
        bicommutant_dim: bc.len(),
        contains_image: contains,
        equal: contains && bc.len() == image,
    })
}

/// Dimension of the unital algebra generated by the derivations of `g` on `V^{word}`.
pub fn enveloping_image_dim<F: Field>(f: &F, g: &MatrixSuperLieAlgebra<F>, word: &[Orient]) -> Result<usize> {
    let ops: Vec<Matrix<F::Elem>> = crate::par::try_map_range(g.dim(), |i| Ok::<_, Error>(mixed_action(f, &g.basis[i], g.space, word)?.into_matrix()))?;
    let n = g.space.dim().pow(word.len() as u32);
    Ok(generated_subalgebra(f, n, &ops)?.len())
}

/// A generating set drawn from `basis`, chosen greedily. Over the rationals
/// the closure is computed modulo the screening prime; generation there
/// implies generation in characteristic 0.
pub fn algebra_generators<F: Field>(f: &F, basis: &[Matrix<F::Elem>]) -> Result<Vec<Matrix<F::Elem>>> {
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    let n = first.rows();
    let reduced: Option<Vec<Matrix<u64>>> = if f.characteristic() == 0 {
        basis.iter().map(|b| reduce_matrix(f, b, SCREEN_PRIME)).collect()
    } else {
        None
    };
    let picked = match reduced {
        Some(r) => greedy_generators(&PrimeField::new(SCREEN_PRIME)?, n, &r)?,
        None => greedy_generators(f, n, basis)?,
    };
    match picked {
        Some(idx) => Ok(idx.into_iter().map(|i| basis[i].clone()).collect()),
        None => Ok(basis.to_vec()),
    }
}

fn greedy_generators<G: Field>(g: &G, n: usize, basis: &[Matrix<G::Elem>]) -> Result<Option<Vec<usize>>> {
    let mut picked = Vec::new();
    let mut gens: Vec<Matrix<G::Elem>> = Vec::new();
    loop {
        let closure = generated_subalgebra(g, n, &gens)?;
        if closure.len() >= basis.len() {
            return Ok(Some(picked));
        }
        let mut span = Echelon::new(g.clone(), n * n);
        for m in &closure {
            span.insert(&m.flatten());
        }
        let Some(i) = basis.iter().position(|b| !span.contains(&b.flatten())) else {
            return Ok(None);
        };
        picked.push(i);
        gens.push(basis[i].clone());
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimpleCount {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub commutator_plus_radical_dim: usize,
    pub simples: usize,
}

/// Number of simple modules of a split matrix algebra with basis `basis`
/// (char 0): `dim E - dim([E,E] + rad E)`, with `rad E` the radical of the
/// trace form of the given faithful representation.
pub fn simple_count<F: Field>(f: &F, basis: &[Matrix<F::Elem>]) -> Result<SimpleCount> {
    if f.characteristic() != 0 {
        return Err(Error::Unsupported("the trace-form radical needs characteristic 0".into()));
    }
    let n = basis.len();
    if n == 0 {
        return Ok(SimpleCount { algebra_dim: 0, radical_dim: 0, commutator_plus_radical_dim: 0, simples: 0 });
    }
    let d = basis[0].rows();
    let flats: Vec<SparseVec<F::Elem>> = basis.iter().map(|b| b.flatten()).collect();
    let tflats: Vec<SparseVec<F::Elem>> = basis.iter().map(|b| b.transpose().flatten()).collect();
    // Gram columns tr(b_i b_j) = <flat b_i, flat b_j^T>
    let gram_cols: Vec<SparseVec<F::Elem>> = crate::par::map_range(n, |j| {
        SparseVec::from_entries(f, (0..n).map(|i| (i, flats[i].dot(f, &tflats[j]))))
    });
    let rad_coords = kernel_of_columns(f, &gram_cols)?;
    let rad: Vec<SparseVec<F::Elem>> = rad_coords
        .iter()
        .map(|c| {
            let terms: Vec<(F::Elem, &SparseVec<F::Elem>)> = c.entries().iter().map(|(i, x)| (x.clone(), &flats[*i])).collect();
            combine(f, &terms)
        })
        .collect();
    let gens = algebra_generators(f, basis)?;
    let comms: Vec<Vec<SparseVec<F::Elem>>> = crate::par::map(&gens, |g| {
        basis
            .iter()
            .map(|b| {
                let gb = g.compose(f, b).expect("square");
                let bg = b.compose(f, g).expect("square");
                gb.sub(f, &bg).expect("same shape").flatten()
            })
            .collect()
    });
    let mut rows: Vec<SparseVec<F::Elem>> = comms.into_iter().flatten().collect();
    rows.extend(rad.iter().cloned());
    let cr = rank(f, d * d, &rows)?;
    Ok(SimpleCount { algebra_dim: n, radical_dim: rad.len(), commutator_plus_radical_dim: cr, simples: n - cr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::AlgebraKind;
    use crate::interp::{algebra_action, InterpContext};
    use crate::superlinalg::field::Rationals;
    use crate::superlinalg::space::SuperSpace;
    use crate::supergroups::{gl, osp};

    #[test]
    fn trivial_commutant_is_full() {
        let f = Rationals;
        let m = RepModule::<Rationals>::new(IndexSpace::even(3), vec![], vec![], false).unwrap();
        assert_eq!(commutant_basis(&f, &m).unwrap().len(), 9);
        let full: Vec<Matrix<_>> = (0..9).map(|k| Matrix::from_triplets(&f, 3, 3, [(k / 3, k % 3, f.one())]).unwrap()).collect();
        let ops: Vec<_> = full.iter().map(|x| SparseOperator::new(IndexSpace::even(3), IndexSpace::even(3), Parity::Even, x.clone()).unwrap()).collect();
        let m = RepModule::new(IndexSpace::even(3), vec!["e".into(); 9], ops, false).unwrap();
        let dc = double_centraliser_check(&f, &m).unwrap();
        assert_eq!((dc.commutant_dim, dc.bicommutant_dim, dc.equal), (1, 9, true));
        assert_eq!(simple_count(&f, &full).unwrap().simples, 1);
    }

    #[test]
    fn small_brauer_action() {
        let f = Rationals;
        let a = DiagramAlgebra::build(&f, AlgebraKind::Brauer { r: 2 }, f.one()).unwrap();
        let ctx = InterpContext::orthosymplectic(&f, 1, 0).unwrap();
        let m = algebra_action(&a, &ctx).unwrap();
        let k = action_kernel(&a, &m).unwrap();
        assert_eq!((k.image_dim, k.kernel.len(), k.is_two_sided_ideal), (1, 2, true));
        assert_eq!(coend_dim(&f, &m).unwrap(), 1);
        assert_eq!(commutant_basis(&f, &m).unwrap().len(), 1);
        let dc = double_centraliser_check(&f, &m).unwrap();
        assert!(dc.equal && dc.bicommutant_dim == 1);
    }

    #[test]
    fn lie_invariants_small() {
        let f = Rationals;
        let g = gl(&f, SuperSpace::new(1, 1));
        let inv = lie_invariants(&f, &g, &[], &[Orient::Down, Orient::Up]).unwrap();
        assert_eq!(inv.len(), 1);
        let o = osp(&f, 1, 1).unwrap();
        let sigma = crate::supergroups::component_extras(&f, o.space).reflection.unwrap();
        let word = vec![Orient::Down; 2];
        let inv = lie_invariants(&f, &o, std::slice::from_ref(&sigma), &word).unwrap();
        assert_eq!(inv.len(), 1);
        let lazy = lie_invariants_lazy(&f, &o, std::slice::from_ref(&sigma), 2).unwrap();
        assert_eq!(lazy, inv);
        let lazy4 = lie_invariants_lazy(&f, &o, &[sigma.clone()], 4).unwrap();
        let full4 = lie_invariants(&f, &o, &[sigma], &vec![Orient::Down; 4]).unwrap();
        assert_eq!(lazy4, full4);
    }

    #[test]
    fn zero_lie_algebra_envelope_is_scalars() {
        let f = Rationals;
        let mut g = gl(&f, SuperSpace::new(1, 1));
        g.basis.clear();
        assert_eq!(enveloping_image_dim(&f, &g, &[Orient::Down, Orient::Down]).unwrap(), 1);
    }
}
