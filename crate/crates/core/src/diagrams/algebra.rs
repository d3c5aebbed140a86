//! Finite-dimensional diagram algebras on a finite set of objects, with a full
//! multiplication table.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::brauer::{enumerate_diagrams, BrauerDiagram};
use super::cache;
use super::notation::render;
use super::walled::{compatible, render_word, word, Orient};
use crate::error::{Error, Result};
use crate::interp::{composition_scalar, InterpContext};
use crate::superlinalg::field::{Field, Rationals};
use crate::superlinalg::matrix::{Matrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    Brauer { r: usize },
    BrauerC { r: usize },
    Walled { r: usize, s: usize },
    WalledC { r: usize, s: usize },
    Periplectic { r: usize },
    PeriplecticC { r: usize },
}

impl AlgebraKind {
    pub fn is_periplectic(self) -> bool {
        matches!(self, AlgebraKind::Periplectic { .. } | AlgebraKind::PeriplecticC { .. })
    }

    pub fn is_walled(self) -> bool {
        matches!(self, AlgebraKind::Walled { .. } | AlgebraKind::WalledC { .. })
    }

    /// Whether the objects run over `J(r)` rather than just `[r]`.
    pub fn is_extended(self) -> bool {
        matches!(self, AlgebraKind::BrauerC { .. } | AlgebraKind::WalledC { .. } | AlgebraKind::PeriplecticC { .. })
    }

    pub fn objects(self) -> Vec<Object> {
        let points = |r: usize, ext: bool| {
            let low = if ext { r % 2 } else { r };
            (low..=r).rev().step_by(2).map(Object::Points).collect()
        };
        match self {
            AlgebraKind::Brauer { r } | AlgebraKind::Periplectic { r } => points(r, false),
            AlgebraKind::BrauerC { r } | AlgebraKind::PeriplecticC { r } => points(r, true),
            AlgebraKind::Walled { r, s } => vec![Object::Word(word(r, s))],
            AlgebraKind::WalledC { r, s } => (0..=r.min(s)).map(|j| Object::Word(word(r - j, s - j))).collect(),
        }
    }

    /// The algebra on all objects of the same parity class.
    pub fn extended(self) -> AlgebraKind {
        match self {
            AlgebraKind::Brauer { r } => AlgebraKind::BrauerC { r },
            AlgebraKind::Walled { r, s } => AlgebraKind::WalledC { r, s },
            AlgebraKind::Periplectic { r } => AlgebraKind::PeriplecticC { r },
            k => k,
        }
    }

    /// The non-extended algebra on the largest object.
    pub fn base(self) -> AlgebraKind {
        match self {
            AlgebraKind::BrauerC { r } => AlgebraKind::Brauer { r },
            AlgebraKind::WalledC { r, s } => AlgebraKind::Walled { r, s },
            AlgebraKind::PeriplecticC { r } => AlgebraKind::Periplectic { r },
            k => k,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Brauer { r } => write!(f, "brauer(r={r})"),
            AlgebraKind::BrauerC { r } => write!(f, "brauer_c(r={r})"),
            AlgebraKind::Walled { r, s } => write!(f, "walled(r={r},s={s})"),
            AlgebraKind::WalledC { r, s } => write!(f, "walled_c(r={r},s={s})"),
            AlgebraKind::Periplectic { r } => write!(f, "periplectic(r={r})"),
            AlgebraKind::PeriplecticC { r } => write!(f, "periplectic_c(r={r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Object {
    Points(usize),
    Word(Vec<Orient>),
}

impl Object {
    pub fn len(&self) -> usize {
        match self {
            Object::Points(n) => *n,
            Object::Word(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Points(n) => write!(f, "[{n}]"),
            Object::Word(w) if w.is_empty() => write!(f, "[]"),
            Object::Word(w) => write!(f, "{}", render_word(w)),
        }
    }
}

/// A diagram from object `source` to object `target` (indices into the object list).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub diagram: BrauerDiagram,
}

/// One table entry: `basis[x] * basis[y] = coeff * basis[z]`, or zero.
pub type Product<E> = Option<(E, usize)>;

#[derive(Clone, Debug)]
pub struct DiagramAlgebra<F: Field> {
    field: F,
    kind: AlgebraKind,
    delta: F::Elem,
    objects: Vec<Object>,
    basis: Vec<BasisElement>,
    index: HashMap<(usize, usize, BrauerDiagram), usize>,
    table: Vec<Product<F::Elem>>,
    identities: Vec<usize>,
}

fn enumerate_basis(objects: &[Object]) -> Vec<BasisElement> {
    let mut basis = Vec::new();
    for (s, so) in objects.iter().enumerate() {
        for (t, to) in objects.iter().enumerate() {
            for d in enumerate_diagrams(so.len(), to.len()) {
                let ok = match (so, to) {
                    (Object::Word(sw), Object::Word(tw)) => compatible(sw, tw, &d),
                    _ => true,
                };
                if ok {
                    basis.push(BasisElement { source: s, target: t, diagram: d });
                }
            }
        }
    }
    basis
}

type SignKey = (BrauerDiagram, BrauerDiagram);

fn sign_memo() -> &'static Mutex<HashMap<SignKey, i64>> {
    static MEMO: OnceLock<Mutex<HashMap<SignKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Smallest `n` with `2n` at least the dot count of either factor.
pub fn periplectic_rank_for(upper: &BrauerDiagram, lower: &BrauerDiagram) -> usize {
    let dots = (lower.bottom() + lower.top()).max(upper.bottom() + upper.top());
    dots.div_ceil(2).max(1)
}

/// The sign `s` with `interp(upper) ∘ interp(lower) = s · interp(upper ∘ lower)` for
/// the odd form on `(n|n)`; `None` when a loop closes (the product is zero).
pub fn periplectic_sign_at(upper: &BrauerDiagram, lower: &BrauerDiagram, n: usize) -> Result<Option<i64>> {
    let (loops, c) = upper.compose(lower)?;
    if loops > 0 {
        return Ok(None);
    }
    let q = Rationals;
    let ctx = InterpContext::periplectic(&q, n)?;
    let s = composition_scalar(&ctx, upper, lower, &c)?
        .ok_or_else(|| Error::Internal(format!("composite of {} and {} is not proportional", render(upper), render(lower))))?;
    if s == q.one() {
        Ok(Some(1))
    } else if s == q.from_i64(-1) {
        Ok(Some(-1))
    } else {
        Err(Error::Internal(format!("solved periplectic scalar {} is not a sign", q.render(&s))))
    }
}

/// Memoised periplectic composition sign at the default rank.
pub fn periplectic_sign(upper: &BrauerDiagram, lower: &BrauerDiagram) -> Result<Option<i64>> {
    let key = (upper.clone(), lower.clone());
    if let Some(&s) = sign_memo().lock().expect("sign memo poisoned").get(&key) {
        return Ok(Some(s));
    }
    let n = periplectic_rank_for(upper, lower);
    let s = periplectic_sign_at(upper, lower, n)?;
    if let Some(s) = s {
        sign_memo().lock().expect("sign memo poisoned").insert(key, s);
    }
    Ok(s)
}

impl<F: Field> DiagramAlgebra<F> {
    /// Build with loop parameter `delta` (ignored for the periplectic kinds,
    /// where loops vanish).
    pub fn build(field: &F, kind: AlgebraKind, delta: F::Elem) -> Result<DiagramAlgebra<F>> {
        Self::build_cached(field, kind, delta, None)
    }

    /// As [`DiagramAlgebra::build`], reading and writing the table under `cache_dir`.
    pub fn build_cached(field: &F, kind: AlgebraKind, delta: F::Elem, cache_dir: Option<&Path>) -> Result<DiagramAlgebra<F>> {
        let f = field.clone();
        let delta = if kind.is_periplectic() { f.zero() } else { delta };
        let objects = kind.objects();
        let basis = enumerate_basis(&objects);
        let index: HashMap<_, _> =
            basis.iter().enumerate().map(|(i, b)| ((b.source, b.target, b.diagram.clone()), i)).collect();
        let identities = (0..objects.len())
            .map(|o| index[&(o, o, BrauerDiagram::identity(objects[o].len()))])
            .collect();
        let mut a = DiagramAlgebra { field: f, kind, delta, objects, basis, index, table: Vec::new(), identities };
        let key = cache::CacheKey::new(&a);
        if let Some(dir) = cache_dir {
            if let Some(table) = cache::load(&a, dir, &key)? {
                a.table = table;
                return Ok(a);
            }
        }
        a.table = a.compute_table()?;
        if let Some(dir) = cache_dir {
            cache::store(&a, dir, &key)?;
        }
        Ok(a)
    }

    fn compute_table(&self) -> Result<Vec<Product<F::Elem>>> {
        let n = self.basis.len();
        crate::par::try_map_range(n * n, |k| self.compute_product(k / n, k % n))
    }

    fn compute_product(&self, x: usize, y: usize) -> Result<Product<F::Elem>> {
        let f = &self.field;
        let (bx, by) = (&self.basis[x], &self.basis[y]);
        if bx.source != by.target {
            return Ok(None);
        }
        let (loops, d) = bx.diagram.compose(&by.diagram)?;
        let coeff = if self.kind.is_periplectic() {
            match periplectic_sign(&bx.diagram, &by.diagram)? {
                Some(s) => f.from_i64(s),
                None => return Ok(None),
            }
        } else {
            f.pow(&self.delta, loops as u32)
        };
        if f.is_zero(&coeff) {
            return Ok(None);
        }
        let z = self
            .index
            .get(&(by.source, bx.target, d))
            .copied()
            .ok_or_else(|| Error::Internal("composite diagram missing from the basis".into()))?;
        Ok(Some((coeff, z)))
    }

    pub(crate) fn with_table(mut self, table: Vec<Product<F::Elem>>) -> Result<Self> {
        if table.len() != self.basis.len() * self.basis.len() || table.iter().flatten().any(|(_, z)| *z >= self.basis.len()) {
            return Err(Error::Cache("cached table has the wrong shape".into()));
        }
        self.table = table;
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn delta(&self) -> &F::Elem {
        &self.delta
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn table(&self) -> &[Product<F::Elem>] {
        &self.table
    }

    pub fn find(&self, source: usize, target: usize, d: &BrauerDiagram) -> Option<usize> {
        self.index.get(&(source, target, d.clone())).copied()
    }

    pub fn object_index(&self, o: &Object) -> Option<usize> {
        self.objects.iter().position(|x| x == o)
    }

    /// Basis index of the identity diagram on each object.
    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn identity_vector(&self) -> SparseVec<F::Elem> {
        SparseVec::from_entries(&self.field, self.identities.iter().map(|&i| (i, self.field.one())))
    }

    pub fn basis_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        format!("{}->{}: {}", self.objects[b.source], self.objects[b.target], render(&b.diagram))
    }

    pub fn product(&self, x: usize, y: usize) -> &Product<F::Elem> {
        &self.table[x * self.basis.len() + y]
    }

    /// Product of two elements in basis coordinates.
    pub fn mul(&self, a: &SparseVec<F::Elem>, b: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut terms = Vec::new();
        for (x, ax) in a.entries() {
            for (y, by) in b.entries() {
                if let Some((c, z)) = self.product(*x, *y) {
                    terms.push((*z, f.mul(&f.mul(ax, by), c)));
                }
            }
        }
        SparseVec::from_entries(f, terms)
    }

    /// Matrix of `v ↦ basis[x] · v` in basis coordinates (columns indexed by `v`).
    pub fn left_mult(&self, x: usize) -> Matrix<F::Elem> {
        let n = self.dim();
        let t = (0..n).filter_map(|y| self.product(x, y).as_ref().map(|(c, z)| (*z, y, c.clone())));
        Matrix::from_triplets(&self.field, n, n, t).expect("table indices in range")
    }

    /// Matrix of `v ↦ v · basis[x]`.
    pub fn right_mult(&self, x: usize) -> Matrix<F::Elem> {
        let n = self.dim();
        let t = (0..n).filter_map(|y| self.product(y, x).as_ref().map(|(c, z)| (*z, y, c.clone())));
        Matrix::from_triplets(&self.field, n, n, t).expect("table indices in range")
    }

    /// Index of the reflected diagram.
    pub fn star_index(&self, i: usize) -> usize {
        let b = &self.basis[i];
        self.index[&(b.target, b.source, b.diagram.star())]
    }

    /// The anti-involution on a basis element: reflection, twisted in the
    /// periplectic case by `(-1)^(crossings + caps)`.
    pub fn star_basis(&self, i: usize) -> (F::Elem, usize) {
        let d = &self.basis[i].diagram;
        let negative = self.kind.is_periplectic() && (d.crossing_number() + d.caps().len()) % 2 == 1;
        (self.field.sign(negative), self.star_index(i))
    }

    pub fn star_vec(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        SparseVec::from_entries(
            f,
            v.entries().iter().map(|(i, x)| {
                let (c, j) = self.star_basis(*i);
                (j, f.mul(x, &c))
            }),
        )
    }

    /// Basis indices of diagrams without cups (the "lower" subalgebra) and
    /// without caps respectively.
    pub fn cupless(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].diagram.has_cups()).collect()
    }

    pub fn capless(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].diagram.has_caps()).collect()
    }

    fn triples(&self, exhaustive_up_to: usize, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        if n <= exhaustive_up_to {
            return (0..n * n * n).map(|k| (k / (n * n), (k / n) % n, k % n)).collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))).collect()
    }

    /// Failing triples of `(xy)z = x(yz)`: exhaustive up to 30 basis elements,
    /// otherwise 500 seeded random triples.
    pub fn associativity_failures(&self) -> Vec<(usize, usize, usize)> {
        let f = &self.field;
        let triples = self.triples(30, 500, 0x5eed);
        let bad = crate::par::map(&triples, |&(x, y, z)| {
            let (ex, ey, ez) = (SparseVec::unit(f, x), SparseVec::unit(f, y), SparseVec::unit(f, z));
            let l = self.mul(&self.mul(&ex, &ey), &ez);
            let r = self.mul(&ex, &self.mul(&ey, &ez));
            (l != r).then_some((x, y, z))
        });
        bad.into_iter().flatten().collect()
    }

    /// Pairs violating `star(xy) = star(y) star(x)`: exhaustive up to 60 basis
    /// elements, otherwise 500 random pairs.
    pub fn star_failures(&self) -> Vec<(usize, usize)> {
        let f = &self.field;
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = if n <= 60 {
            (0..n * n).map(|k| (k / n, k % n)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x57a2);
            (0..500).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect()
        };
        let bad = crate::par::map(&pairs, |&(x, y)| {
            let xy = self.mul(&SparseVec::unit(f, x), &SparseVec::unit(f, y));
            let rhs = self.mul(&self.star_vec(&SparseVec::unit(f, y)), &self.star_vec(&SparseVec::unit(f, x)));
            (self.star_vec(&xy) != rhs).then_some((x, y))
        });
        bad.into_iter().flatten().collect()
    }

    /// Whether the object identities sum to a two-sided unit.
    pub fn unit_holds(&self) -> bool {
        let one = self.identity_vector();
        (0..self.dim()).all(|i| {
            let e = SparseVec::unit(&self.field, i);
            self.mul(&one, &e) == e && self.mul(&e, &one) == e
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::PrimeField;

    fn brauer_c(r: usize, delta: i64) -> DiagramAlgebra<Rationals> {
        DiagramAlgebra::build(&Rationals, AlgebraKind::BrauerC { r }, Rationals.from_i64(delta)).unwrap()
    }

    #[test]
    fn dimensions() {
        let q = Rationals;
        let dim = |k| DiagramAlgebra::build(&q, k, q.from_i64(3)).unwrap().dim();
        assert_eq!(dim(AlgebraKind::Brauer { r: 2 }), 3);
        assert_eq!(dim(AlgebraKind::Brauer { r: 3 }), 15);
        assert_eq!(dim(AlgebraKind::BrauerC { r: 2 }), 6);
        assert_eq!(dim(AlgebraKind::BrauerC { r: 3 }), 22);
        assert_eq!(dim(AlgebraKind::Walled { r: 2, s: 1 }), 6);
        assert_eq!(dim(AlgebraKind::WalledC { r: 1, s: 1 }), 2 + 1 + 1 + 1);
        assert_eq!(dim(AlgebraKind::Periplectic { r: 2 }), 3);
    }

    #[test]
    fn brauer_tables_are_associative_with_unit() {
        for (r, d) in [(2, -2), (3, 1), (2, 0)] {
            let a = brauer_c(r, d);
            assert!(a.associativity_failures().is_empty());
            assert!(a.star_failures().is_empty());
            assert!(a.unit_holds());
        }
        let q = Rationals;
        let w = DiagramAlgebra::build(&q, AlgebraKind::WalledC { r: 2, s: 1 }, q.from_i64(1)).unwrap();
        assert!(w.associativity_failures().is_empty());
        assert!(w.star_failures().is_empty());
    }

    #[test]
    fn cup_cap_squares_to_delta() {
        let a = brauer_c(2, 7);
        let o = a.object_index(&Object::Points(2)).unwrap();
        let e = a.find(o, o, &BrauerDiagram::cup_cap()).unwrap();
        assert_eq!(a.product(e, e), &Some((Rationals.from_i64(7), e)));
    }

    #[test]
    fn periplectic_loops_vanish_and_table_is_associative() {
        let q = Rationals;
        let a = DiagramAlgebra::build(&q, AlgebraKind::PeriplecticC { r: 3 }, q.zero()).unwrap();
        let o = a.object_index(&Object::Points(2));
        assert!(o.is_none());
        let p = DiagramAlgebra::build(&q, AlgebraKind::Periplectic { r: 2 }, q.zero()).unwrap();
        let e = p.find(0, 0, &BrauerDiagram::cup_cap()).unwrap();
        assert_eq!(p.product(e, e), &None);
        assert!(a.associativity_failures().is_empty());
        assert!(p.associativity_failures().is_empty());
        assert!(a.star_failures().is_empty());
        assert!(a.unit_holds());
    }

    #[test]
    fn crossing_squared_sign_is_pinned() {
        let x = BrauerDiagram::crossing();
        assert_eq!(periplectic_sign(&x, &x).unwrap(), Some(1));
    }

    #[test]
    fn periplectic_signs_do_not_depend_on_rank() {
        let all: Vec<_> = enumerate_diagrams(2, 2).into_iter().chain(enumerate_diagrams(1, 3)).collect();
        for u in enumerate_diagrams(2, 2) {
            for l in &all {
                if l.top() != u.bottom() {
                    continue;
                }
                let s1 = periplectic_sign_at(&u, l, 1).unwrap();
                let s3 = periplectic_sign_at(&u, l, 3).unwrap();
                assert_eq!(s1, s3);
            }
        }
    }

    #[test]
    fn prime_field_tables_match_reduction() {
        let p = PrimeField::new(7).unwrap();
        let a = DiagramAlgebra::build(&p, AlgebraKind::BrauerC { r: 2 }, p.from_i64(-2)).unwrap();
        let b = brauer_c(2, -2);
        for (x, y) in a.table().iter().zip(b.table()) {
            assert_eq!(x.as_ref().map(|t| t.1), y.as_ref().map(|t| t.1));
        }
    }
}
