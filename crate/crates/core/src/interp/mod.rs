//! Interpretation of diagrams as operators on mixed tensor powers of a super
//! vector space: dots become copies of `V` (or `W = V*`), caps become the
//! form (or evaluation), cups the matching coform, crossings the braiding.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagrams::brauer::BrauerDiagram;
use crate::diagrams::walled::{Orient, WalledDiagram};
use crate::diagrams::{DiagramAlgebra, Object};
use crate::error::{Error, Result};
use crate::superlinalg::field::{Field, Parity};
use crate::superlinalg::form::{standard_form, BilinearForm, FormKind};
use crate::superlinalg::matrix::Matrix;
use crate::superlinalg::operator::{permutation_operator, tensor_all, tensor_operator, SparseOperator};
use crate::superlinalg::solve::inverse;
use crate::superlinalg::space::{Factor, IndexSpace, SuperSpace, TensorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Orthosymplectic,
    GeneralLinear,
    Periplectic,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor> {
        match s.to_ascii_lowercase().as_str() {
            "osp" | "orthosymplectic" => Ok(Flavor::Orthosymplectic),
            "gl" | "general_linear" => Ok(Flavor::GeneralLinear),
            "pe" | "p" | "periplectic" => Ok(Flavor::Periplectic),
            _ => Err(Error::Parse(format!("unknown flavor `{s}`"))),
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Orthosymplectic => "osp",
            Flavor::GeneralLinear => "gl",
            Flavor::Periplectic => "pe",
        })
    }
}

type Pairing<E> = (SparseOperator<E>, SparseOperator<E>);

/// Everything needed to turn diagrams into operators.
#[derive(Clone, Debug)]
pub struct InterpContext<F: Field> {
    field: F,
    flavor: Flavor,
    space: SuperSpace,
    form: Option<BilinearForm<F::Elem>>,
    /// (cap, cup) for each ordered pair of dot orientations that may be joined.
    pairings: HashMap<(Orient, Orient), Pairing<F::Elem>>,
}

fn factor(space: SuperSpace, o: Orient) -> Factor {
    match o {
        Orient::Down => Factor::plain(space),
        Orient::Up => Factor::dual(space),
    }
}

fn pair_space(space: SuperSpace, a: Orient, b: Orient) -> IndexSpace {
    IndexSpace::single(TensorSpace::new(vec![factor(space, a), factor(space, b)]))
}

impl<F: Field> InterpContext<F> {
    /// Context for a symmetric form; the flavor follows the form's parity.
    pub fn from_form(field: &F, form: BilinearForm<F::Elem>) -> Result<InterpContext<F>> {
        let f = field;
        let space = form.space();
        let d = space.dim();
        let vv = pair_space(space, Orient::Down, Orient::Down);
        let cap_m = Matrix::from_triplets(
            f,
            1,
            d * d,
            form.gram().entries().map(|(i, j, x)| (0, i * d + j, x.clone())),
        )?;
        let cap = SparseOperator::new(IndexSpace::ground(), vv.clone(), form.parity(), cap_m)?;
        // cup from the zigzag (cap ⊗ id)(id ⊗ cup) = id: G C = diag((-1)^{|form|[x]})
        let ginv = inverse(f, form.gram()).map_err(|_| Error::DegenerateForm("gram matrix is singular".into()))?;
        let signs: Vec<F::Elem> = (0..d).map(|x| f.sign(form.parity().is_odd() && space.parity(x).is_odd())).collect();
        let c = ginv.compose(f, &Matrix::diagonal(f, &signs))?;
        let cup_m = Matrix::from_triplets(f, d * d, 1, c.entries().map(|(i, j, x)| (i * d + j, 0, x.clone())))?;
        let cup = SparseOperator::new(vv, IndexSpace::ground(), form.parity(), cup_m)?;
        let flavor = if form.parity().is_odd() { Flavor::Periplectic } else { Flavor::Orthosymplectic };
        let mut pairings = HashMap::new();
        pairings.insert((Orient::Down, Orient::Down), (cap, cup));
        Ok(InterpContext { field: f.clone(), flavor, space, form: Some(form), pairings })
    }

    /// `V = (m|2n)` with the standard even form.
    pub fn orthosymplectic(f: &F, m: usize, n: usize) -> Result<InterpContext<F>> {
        let (_, form) = standard_form(f, FormKind::Even { m, n })?;
        InterpContext::from_form(f, form)
    }

    /// `V = (n|n)` with the standard odd form.
    pub fn periplectic(f: &F, n: usize) -> Result<InterpContext<F>> {
        let (_, form) = standard_form(f, FormKind::Odd { n })?;
        InterpContext::from_form(f, form)
    }

    /// `V` and its dual joined by evaluation and coevaluation.
    pub fn general_linear(f: &F, space: SuperSpace) -> Result<InterpContext<F>> {
        let d = space.dim();
        let (dn, up) = (Orient::Down, Orient::Up);
        let sign = |i: usize| f.sign(space.parity(i).is_odd());
        let diag = |signed: bool| (0..d).map(move |i| (i * d + i, if signed { sign(i) } else { f.one() }));
        let row = |signed: bool| Matrix::from_triplets(f, 1, d * d, diag(signed).map(|(k, x)| (0, k, x)));
        let col = |signed: bool| Matrix::from_triplets(f, d * d, 1, diag(signed).map(|(k, x)| (k, 0, x)));
        let g = IndexSpace::ground();
        let mut pairings = HashMap::new();
        // e_i* ⊗ e_j ↦ δ_ij and e_i ⊗ e_j* ↦ (-1)^{[i]} δ_ij
        let ev_wv = SparseOperator::new(g.clone(), pair_space(space, up, dn), Parity::Even, row(false)?)?;
        let ev_vw = SparseOperator::new(g.clone(), pair_space(space, dn, up), Parity::Even, row(true)?)?;
        // 1 ↦ Σ e_i ⊗ e_i* and 1 ↦ Σ (-1)^{[i]} e_i* ⊗ e_i
        let co_vw = SparseOperator::new(pair_space(space, dn, up), g.clone(), Parity::Even, col(false)?)?;
        let co_wv = SparseOperator::new(pair_space(space, up, dn), g, Parity::Even, col(true)?)?;
        pairings.insert((dn, up), (ev_vw, co_vw));
        pairings.insert((up, dn), (ev_wv, co_wv));
        Ok(InterpContext { field: f.clone(), flavor: Flavor::GeneralLinear, space, form: None, pairings })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn form(&self) -> Option<&BilinearForm<F::Elem>> {
        self.form.as_ref()
    }

    /// Value of a closed loop.
    pub fn loop_value(&self) -> F::Elem {
        match self.flavor {
            Flavor::Periplectic => self.field.zero(),
            _ => self.field.from_i64(self.space.sdim()),
        }
    }

    fn pairing(&self, a: Orient, b: Orient) -> Result<&Pairing<F::Elem>> {
        self.pairings
            .get(&(a, b))
            .ok_or_else(|| Error::Unsupported(format!("{} flavor cannot join {a:?} with {b:?}", self.flavor)))
    }

    pub fn cap_operator(&self) -> Result<&SparseOperator<F::Elem>> {
        Ok(&self.pairing(Orient::Down, Orient::Down)?.0)
    }

    pub fn cup_operator(&self) -> Result<&SparseOperator<F::Elem>> {
        Ok(&self.pairing(Orient::Down, Orient::Down)?.1)
    }

    pub fn tensor_space(&self, word: &[Orient]) -> TensorSpace {
        TensorSpace::new(word.iter().map(|&o| factor(self.space, o)).collect())
    }

    pub fn object_space(&self, obj: &Object) -> TensorSpace {
        match obj {
            Object::Points(n) => TensorSpace::power(self.space, *n),
            Object::Word(w) => self.tensor_space(w),
        }
    }

    /// Operator of an unoriented diagram (every dot is `V`).
    pub fn interpret(&self, d: &BrauerDiagram) -> Result<SparseOperator<F::Elem>> {
        if self.flavor == Flavor::GeneralLinear {
            return Err(Error::Unsupported("general linear flavor interprets oriented diagrams".into()));
        }
        let bottom = vec![Orient::Down; d.bottom()];
        let top = vec![Orient::Down; d.top()];
        self.interpret_typed(&bottom, &top, d)
    }

    pub fn interpret_walled(&self, d: &WalledDiagram) -> Result<SparseOperator<F::Elem>> {
        self.interpret_typed(d.bottom_word(), d.top_word(), d.diagram())
    }

    /// Fixed planar decomposition: sort the bottom so that through strands come
    /// first (in bottom order) followed by the caps, apply caps, apply cups, and
    /// sort the top back.
    pub fn interpret_typed(&self, bottom: &[Orient], top: &[Orient], d: &BrauerDiagram) -> Result<SparseOperator<F::Elem>> {
        let f = &self.field;
        if bottom.len() != d.bottom() || top.len() != d.top() {
            return Err(Error::Shape(format!(
                "diagram {}->{} on words of lengths {} and {}",
                d.bottom(),
                d.top(),
                bottom.len(),
                top.len()
            )));
        }
        let through = d.through_strands();
        let caps = d.caps();
        let cups = d.cups();
        if let Some(&(b, t)) = through.iter().find(|&&(b, t)| bottom[b] != top[t]) {
            return Err(Error::Shape(format!("strand B{}->T{} joins different orientations", b + 1, t + 1)));
        }
        let src = self.tensor_space(bottom);
        let mut order: Vec<usize> = through.iter().map(|&(b, _)| b).collect();
        order.extend(caps.iter().flat_map(|&(a, b)| [a, b]));
        let p_bot = permutation_operator(f, &src, &order)?;
        let through_space = self.tensor_space(&through.iter().map(|&(b, _)| bottom[b]).collect::<Vec<_>>());
        let id_t = SparseOperator::identity(f, IndexSpace::single(through_space));
        let mut down = vec![id_t.clone()];
        for &(a, b) in &caps {
            down.push(self.pairing(bottom[a], bottom[b])?.0.clone());
        }
        let mut up = vec![id_t];
        for &(a, b) in &cups {
            up.push(self.pairing(top[a], top[b])?.1.clone());
        }
        let mut top_order: Vec<usize> = through.iter().map(|&(_, t)| t).collect();
        top_order.extend(cups.iter().flat_map(|&(a, b)| [a, b]));
        let mid_top = TensorSpace::new(top_order.iter().map(|&t| factor(self.space, top[t])).collect());
        let mut position = vec![0; top.len()];
        for (k, &t) in top_order.iter().enumerate() {
            position[t] = k;
        }
        let p_top = permutation_operator(f, &mid_top, &position)?;
        let down = tensor_all(f, &down);
        let up = tensor_all(f, &up);
        let core = up.compose(f, &down)?.compose(f, &p_bot)?;
        let out = p_top.compose(f, &core)?;
        out.relabel(IndexSpace::single(self.tensor_space(top)), IndexSpace::single(src))
    }

    /// Operator for a basis element of a diagram algebra, on its own objects.
    pub fn interpret_in(&self, a: &DiagramAlgebra<F>, idx: usize) -> Result<SparseOperator<F::Elem>> {
        let b = &a.basis()[idx];
        let (src, tgt) = (&a.objects()[b.source], &a.objects()[b.target]);
        let words = |o: &Object| match o {
            Object::Points(n) => vec![Orient::Down; *n],
            Object::Word(w) => w.clone(),
        };
        self.interpret_typed(&words(src), &words(tgt), &b.diagram)
    }
}

/// A module given by a carrier space and named generators acting on it.
#[derive(Clone, Debug)]
pub struct RepModule<F: Field> {
    pub carrier: IndexSpace,
    pub names: Vec<String>,
    pub generators: Vec<SparseOperator<F::Elem>>,
    /// Whether commutation with odd generators picks up Koszul signs.
    pub graded: bool,
}

impl<F: Field> RepModule<F> {
    pub fn new(carrier: IndexSpace, names: Vec<String>, generators: Vec<SparseOperator<F::Elem>>, graded: bool) -> Result<Self> {
        if names.len() != generators.len() {
            return Err(Error::Shape("one name per generator".into()));
        }
        for g in &generators {
            if g.rows().dim() != carrier.dim() || g.cols().dim() != carrier.dim() {
                return Err(Error::Shape(format!(
                    "generator of shape {}x{} on a carrier of dim {}",
                    g.rows().dim(),
                    g.cols().dim(),
                    carrier.dim()
                )));
            }
        }
        Ok(RepModule { carrier, names, generators, graded })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
}

/// The carrier of a diagram algebra: the direct sum of its objects' spaces.
pub fn carrier<F: Field>(a: &DiagramAlgebra<F>, ctx: &InterpContext<F>) -> IndexSpace {
    IndexSpace::new(a.objects().iter().map(|o| ctx.object_space(o)).collect())
}

fn check_flavor<F: Field>(a: &DiagramAlgebra<F>, ctx: &InterpContext<F>) -> Result<()> {
    use crate::diagrams::AlgebraKind as K;
    let want = match a.kind() {
        K::Brauer { .. } | K::BrauerC { .. } => Flavor::Orthosymplectic,
        K::Walled { .. } | K::WalledC { .. } => Flavor::GeneralLinear,
        K::Periplectic { .. } | K::PeriplecticC { .. } => Flavor::Periplectic,
    };
    if want != ctx.flavor {
        return Err(Error::Unsupported(format!("{:?} algebra with a {} context", a.kind(), ctx.flavor)));
    }
    if want != Flavor::Periplectic && *a.delta() != ctx.loop_value() {
        return Err(Error::Unsupported(format!(
            "loop parameter {} differs from sdim V = {}",
            a.field().render(a.delta()),
            ctx.space.sdim()
        )));
    }
    Ok(())
}

/// The action of every basis element of `a` on the direct sum of its objects.
pub fn algebra_action<F: Field>(a: &DiagramAlgebra<F>, ctx: &InterpContext<F>) -> Result<RepModule<F>> {
    check_flavor(a, ctx)?;
    let carrier = carrier(a, ctx);
    let n = carrier.dim();
    let gens = crate::par::try_map_range(a.dim(), |idx| {
        let b = &a.basis()[idx];
        let op = ctx.interpret_in(a, idx)?;
        let m = op.matrix().embed(n, n, carrier.offset(b.target), carrier.offset(b.source));
        SparseOperator::new(carrier.clone(), carrier.clone(), op.parity(), m)
    })?;
    let names = (0..a.dim()).map(|i| a.basis_label(i)).collect();
    RepModule::new(carrier, names, gens, ctx.flavor == Flavor::Periplectic)
}

/// Check `ρ(a)ρ(b) = ρ(ab)` on every basis pair; returns the failing pairs.
pub fn homomorphism_failures<F: Field>(a: &DiagramAlgebra<F>, m: &RepModule<F>) -> Result<Vec<(usize, usize)>> {
    let f = a.field();
    let n = a.dim();
    let fails = crate::par::try_map_range(n * n, |k| -> Result<Option<(usize, usize)>> {
        let (x, y) = (k / n, k % n);
        let lhs = m.generators[x].matrix().compose(f, m.generators[y].matrix())?;
        let rhs = match a.product(x, y) {
            Some((c, z)) => m.generators[*z].matrix().scale(f, c),
            None => Matrix::zero(m.dim(), m.dim()),
        };
        Ok((lhs != rhs).then_some((x, y)))
    })?;
    Ok(fails.into_iter().flatten().collect())
}

/// `interpret(d1 ∘ d2)` against `interpret(d1) ∘ interpret(d2)` with the
/// loop scalar; unoriented diagrams.
pub fn functoriality_holds<F: Field>(ctx: &InterpContext<F>, upper: &BrauerDiagram, lower: &BrauerDiagram) -> Result<bool> {
    let f = &ctx.field;
    let (loops, c) = upper.compose(lower)?;
    let lhs = ctx.interpret(upper)?.compose(f, &ctx.interpret(lower)?)?;
    let scalar = f.pow(&ctx.loop_value(), loops as u32);
    let rhs = ctx.interpret(&c)?.scale(f, &scalar);
    Ok(lhs.matrix() == rhs.matrix())
}

/// The scalar `s` with `interpret(upper) ∘ interpret(lower) = s · interpret(c)`,
/// where `c` is the loop-free concatenation. `None` if the left side is zero
/// while the right is not proportional.
pub fn composition_scalar<F: Field>(
    ctx: &InterpContext<F>,
    upper: &BrauerDiagram,
    lower: &BrauerDiagram,
    c: &BrauerDiagram,
) -> Result<Option<F::Elem>> {
    let f = &ctx.field;
    let lhs = ctx.interpret(upper)?.compose(f, &ctx.interpret(lower)?)?;
    let rhs = ctx.interpret(c)?;
    let Some((r, col, y)) = rhs.matrix().entries().next() else {
        return Ok(None);
    };
    let x = lhs.matrix().get(r, col).cloned().unwrap_or_else(|| f.zero());
    let s = f.div(&x, y)?;
    Ok((rhs.matrix().scale(f, &s) == *lhs.matrix()).then_some(s))
}

/// Both zigzag composites `V -> V`: `(cap⊗id)(id⊗cup)` and `(id⊗cap)(cup⊗id)`.
pub fn zigzags<F: Field>(ctx: &InterpContext<F>) -> Result<(SparseOperator<F::Elem>, SparseOperator<F::Elem>)> {
    let f = &ctx.field;
    let v = IndexSpace::single(TensorSpace::power(ctx.space, 1));
    let id = SparseOperator::identity(f, v.clone());
    let cap = ctx.cap_operator()?;
    let cup = ctx.cup_operator()?;
    let first = tensor_operator(f, cap, &id).compose(f, &tensor_operator(f, &id, cup))?;
    let second = tensor_operator(f, &id, cap).compose(f, &tensor_operator(f, cup, &id))?;
    Ok((first.relabel(v.clone(), v.clone())?, second.relabel(v.clone(), v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::brauer::enumerate_diagrams;
    use crate::superlinalg::field::Rationals;
    use crate::superlinalg::operator::braiding_operator;

    #[test]
    fn cap_cup_is_sdim() {
        let f = Rationals;
        for (m, n, want) in [(1, 0, 1), (0, 1, -2), (2, 2, -2), (3, 1, 1)] {
            let ctx = InterpContext::orthosymplectic(&f, m, n).unwrap();
            let s = ctx.cap_operator().unwrap().compose(&f, ctx.cup_operator().unwrap()).unwrap();
            assert_eq!(s.matrix().to_dense(&f), vec![vec![f.from_i64(want)]], "m={m} n={n}");
        }
        let ctx = InterpContext::periplectic(&f, 1).unwrap();
        let s = ctx.cap_operator().unwrap().compose(&f, ctx.cup_operator().unwrap()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn odd_cup_matches_hand_computation() {
        let f = Rationals;
        let ctx = InterpContext::periplectic(&f, 1).unwrap();
        // cup(1) = -e1⊗e2 + e2⊗e1
        let cup = ctx.cup_operator().unwrap().matrix().to_dense(&f);
        let col: Vec<_> = cup.iter().map(|r| r[0].clone()).collect();
        assert_eq!(col, vec![f.zero(), f.from_i64(-1), f.one(), f.zero()]);
    }

    #[test]
    fn zigzag_identities() {
        let f = Rationals;
        for ctx in [
            InterpContext::orthosymplectic(&f, 2, 1).unwrap(),
            InterpContext::orthosymplectic(&f, 0, 2).unwrap(),
            InterpContext::periplectic(&f, 2).unwrap(),
        ] {
            let (a, b) = zigzags(&ctx).unwrap();
            let d = ctx.space().dim();
            assert_eq!(a.matrix(), &Matrix::identity(&f, d));
            let id = Matrix::identity(&f, d);
            assert!(b.matrix() == &id || b.matrix() == &id.neg(&f), "{:?}", ctx.flavor());
        }
    }

    #[test]
    fn crossing_is_braiding() {
        let f = Rationals;
        let ctx = InterpContext::orthosymplectic(&f, 2, 2).unwrap();
        let x = ctx.interpret(&BrauerDiagram::crossing()).unwrap();
        let b = braiding_operator(&f, ctx.space(), ctx.space());
        assert_eq!(x.matrix(), b.matrix());
        let id = ctx.interpret(&BrauerDiagram::identity(2)).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(&f, 36));
    }

    #[test]
    fn cup_cap_squares_to_sdim_multiple() {
        let f = Rationals;
        let ctx = InterpContext::orthosymplectic(&f, 2, 2).unwrap();
        let e = ctx.interpret(&BrauerDiagram::cup_cap()).unwrap();
        let e2 = e.compose(&f, &e).unwrap();
        assert_eq!(e2.matrix(), &e.matrix().scale(&f, &f.from_i64(-2)));
    }

    #[test]
    fn functorial_on_small_diagrams() {
        let f = Rationals;
        let ctx = InterpContext::orthosymplectic(&f, 1, 1).unwrap();
        for lower in enumerate_diagrams(2, 2) {
            for upper in enumerate_diagrams(2, 2) {
                assert!(functoriality_holds(&ctx, &upper, &lower).unwrap());
            }
        }
        for lower in enumerate_diagrams(1, 3) {
            for upper in enumerate_diagrams(3, 1) {
                assert!(functoriality_holds(&ctx, &upper, &lower).unwrap());
            }
        }
    }
}
