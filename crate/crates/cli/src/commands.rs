use std::path::Path;

use ringel::commutant::{
    action_kernel, coend_dim, commutant_basis, double_centraliser_check, enveloping_image_dim, lie_invariants, lie_invariants_lazy,
    simple_count,
};
use ringel::diagrams::algebra::periplectic_sign;
use ringel::diagrams::brauer::matching_count;
use ringel::diagrams::notation::{parse, render, DiagramJson};
use ringel::diagrams::walled::{render_word, word};
use ringel::diagrams::{enumerate_diagrams, enumerate_walled, AlgebraKind, DiagramAlgebra, Object, Orient};
use ringel::interp::{algebra_action, InterpContext, RepModule};
use ringel::repthy::{qh_report, tilting_check, AlgebraModule};
use ringel::superlinalg::matrix::{Matrix, SparseVec};
use ringel::superlinalg::operator::SparseOperator;
use ringel::superlinalg::solve::{rank, Rref};
use ringel::superlinalg::space::SuperSpace;
use ringel::supergroups::{component_extras, gl, lie_module, osp, pe, MatrixSuperLieAlgebra};
use ringel::Field;
use serde_json::{json, Value};

use crate::artifact::{Artifact, Verdict};
use crate::error::{CliError, Result};
use crate::{AlgebraArgs, Command, FlavorArg, KindArg, Setting};

fn kind_of(k: KindArg, r: usize, s: usize) -> AlgebraKind {
    match k {
        KindArg::Brauer => AlgebraKind::Brauer { r },
        KindArg::BrauerC => AlgebraKind::BrauerC { r },
        KindArg::Walled => AlgebraKind::Walled { r, s },
        KindArg::WalledC => AlgebraKind::WalledC { r, s },
        KindArg::Periplectic => AlgebraKind::Periplectic { r },
        KindArg::PeriplecticC => AlgebraKind::PeriplecticC { r },
    }
}

/// Everything a supergroup-side command needs.
struct Flavored<F: Field> {
    ctx: InterpContext<F>,
    lie: MatrixSuperLieAlgebra<F>,
    group: Vec<SparseOperator<F::Elem>>,
    kind: AlgebraKind,
    delta: F::Elem,
    word: Vec<Orient>,
    params: Value,
    warnings: Vec<String>,
}

fn setup<F: Field>(f: &F, s: &Setting) -> Result<Flavored<F>> {
    let usage = |msg: String| Err(CliError::Usage(msg));
    if s.flavor != FlavorArg::Gl && s.s != 0 {
        return usage(format!("-s counts dual factors and only applies to gl, got s = {}", s.s));
    }
    let (ctx, lie, group, kind, sdim, word, hyp, space) = match s.flavor {
        FlavorArg::Osp => {
            let g = osp(f, s.m, s.n)?;
            let group: Vec<_> = component_extras(f, g.space).reflection.into_iter().collect();
            let sdim = s.m as i64 - 2 * s.n as i64;
            let word = vec![Orient::Down; s.r];
            (InterpContext::orthosymplectic(f, s.m, s.n)?, g, group, AlgebraKind::Brauer { r: s.r }, sdim, word, "m-2n", (s.m, 2 * s.n))
        }
        FlavorArg::Gl => {
            let space = SuperSpace::new(s.m, s.n);
            let sdim = s.m as i64 - s.n as i64;
            let kind = AlgebraKind::Walled { r: s.r, s: s.s };
            (InterpContext::general_linear(f, space)?, gl(f, space), Vec::new(), kind, sdim, word(s.r, s.s), "m-n", (s.m, s.n))
        }
        FlavorArg::Pe => {
            if s.m != 0 && s.m != s.n {
                return usage(format!("pe acts on (n|n); got m = {} and n = {}", s.m, s.n));
            }
            let word = vec![Orient::Down; s.r];
            (InterpContext::periplectic(f, s.n)?, pe(f, s.n)?, Vec::new(), AlgebraKind::Periplectic { r: s.r }, 0, word, "0", (s.n, s.n))
        }
    };
    let delta = f.from_i64(sdim);
    if let Some(given) = &s.delta {
        if f.parse(given)? != delta {
            return usage(format!("delta = {given} violates delta = {hyp} = {sdim} for {:?}", s.flavor).to_lowercase());
        }
    }
    let mut warnings = Vec::new();
    let bound = match s.flavor {
        FlavorArg::Pe => s.n,
        _ => s.m.min(s.n),
    };
    if bound < s.r + s.s {
        warnings.push(format!("outside the stable range: {bound} < {} tensor factors", s.r + s.s));
    }
    let params = json!({
        "flavor": format!("{:?}", s.flavor).to_lowercase(),
        "m": s.m, "n": s.n, "r": s.r, "s": s.s,
        "space": format!("({}|{})", space.0, space.1),
        "delta": f.render(&delta),
        "word": render_word(&word),
    });
    Ok(Flavored { ctx, lie, group, kind, delta, word, params, warnings })
}

fn build<F: Field>(f: &F, kind: AlgebraKind, delta: &F::Elem, cache: Option<&Path>) -> Result<DiagramAlgebra<F>> {
    Ok(DiagramAlgebra::build_cached(f, kind, delta.clone(), cache)?)
}

fn field_name<F: Field>(f: &F) -> String {
    f.kind().to_string()
}

fn lie_level_warning<F: Field>(f: &F) -> Option<String> {
    (f.characteristic() != 0).then(|| "Lie-level count over a prime field; no group-scheme claim".to_string())
}

fn render_vector<F: Field>(a: &DiagramAlgebra<F>, v: &SparseVec<F::Elem>) -> String {
    let f = a.field();
    let terms: Vec<String> = v.entries().iter().map(|(i, x)| format!("{}*[{}]", f.render(x), a.basis_label(*i))).collect();
    terms.join(" + ")
}

fn matrices<F: Field>(ops: &[SparseOperator<F::Elem>]) -> Vec<Matrix<F::Elem>> {
    ops.iter().map(|x| x.matrix().clone()).collect()
}

/// Simple counts of the algebra (regular representation) and of the commutant of `rep`.
fn simple_counts<F: Field>(f: &F, a: &DiagramAlgebra<F>, rep: &RepModule<F>) -> Result<Option<(usize, usize)>> {
    if f.characteristic() != 0 {
        return Ok(None);
    }
    let regular: Vec<_> = (0..a.dim()).map(|x| a.left_mult(x)).collect();
    let algebra = simple_count(f, &regular)?.simples;
    let commutant = simple_count(f, &matrices::<F>(&commutant_basis(f, rep)?))?.simples;
    Ok(Some((algebra, commutant)))
}

pub fn execute<F: Field>(f: &F, cmd: &Command, cache: Option<&Path>) -> Result<Artifact> {
    match cmd {
        Command::Dims { kind, r, s } => dims(f, kind_of(*kind, *r, *s)),
        Command::Fft(s) => fft(f, s, cache),
        Command::Sft(s) => sft(f, s, cache),
        Command::Invariants(s) => invariants(f, s),
        Command::Coend { setting, extended } => coend(f, setting, *extended, cache),
        Command::DoubleCentraliser { setting, extended } => double_centraliser(f, setting, *extended, cache),
        Command::QhReport(args) => qh(f, args, cache),
        Command::Tilting(s) => tilting(f, s, cache),
        Command::Envelope(s) => envelope(f, s, cache),
        Command::PeriplecticExplore { n, r } => periplectic_explore(f, *n, *r, cache),
        Command::Compose { lhs, rhs, flavor, delta } => compose(f, lhs, rhs, *flavor, delta),
    }
}

fn dims<F: Field>(f: &F, kind: AlgebraKind) -> Result<Artifact> {
    let objects = kind.objects();
    let count = |a: &Object, b: &Object| match (a, b) {
        (Object::Points(x), Object::Points(y)) => matching_count(x + y),
        (Object::Word(x), Object::Word(y)) => enumerate_walled(x, y).len(),
        _ => 0,
    };
    let blocks: Vec<Vec<usize>> = objects.iter().map(|t| objects.iter().map(|s| count(s, t)).collect()).collect();
    let dim: usize = blocks.iter().flatten().sum();
    let result = json!({
        "algebra": kind.to_string(),
        "objects": objects.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "blocks": blocks,
        "dim": dim,
    });
    Ok(Artifact::new("dims", field_name(f), json!({ "algebra": kind }), result, Verdict::Pass))
}

fn fft<F: Field>(f: &F, s: &Setting, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let a = build(f, fl.kind, &fl.delta, cache)?;
    let k = action_kernel(&a, &algebra_action(&a, &fl.ctx)?)?;
    let lm = lie_module(f, &fl.lie, &fl.word, &fl.group)?;
    let c = commutant_basis(f, &lm)?.len();
    let surjective = c == k.image_dim;
    let status = match (surjective, k.kernel.is_empty()) {
        (true, true) => "isomorphism",
        (true, false) => "surjection",
        (false, _) => "not surjective",
    };
    let verdict = match (surjective, f.characteristic()) {
        (true, _) => Verdict::Pass,
        (false, 0) => Verdict::Fail,
        (false, _) => Verdict::Flagged,
    };
    let result = json!({
        "algebra": a.kind().to_string(),
        "algebra_dim": a.dim(),
        "image_dim": k.image_dim,
        "kernel_dim": k.kernel.len(),
        "commutant_dim": c,
        "verdict": status,
    });
    let mut warnings = fl.warnings;
    warnings.extend(lie_level_warning(f));
    Ok(Artifact::new("fft", field_name(f), fl.params, result, verdict).warn(warnings))
}

fn sft<F: Field>(f: &F, s: &Setting, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let a = build(f, fl.kind, &fl.delta, cache)?;
    let k = action_kernel(&a, &algebra_action(&a, &fl.ctx)?)?;
    let result = json!({
        "algebra": a.kind().to_string(),
        "algebra_dim": a.dim(),
        "image_dim": k.image_dim,
        "kernel_dim": k.kernel.len(),
        "two_sided_ideal": k.is_two_sided_ideal,
        "kernel": k.kernel.iter().map(|v| render_vector(&a, v)).collect::<Vec<_>>(),
    });
    let verdict = if k.is_two_sided_ideal { Verdict::Pass } else { Verdict::Fail };
    Ok(Artifact::new("sft", field_name(f), fl.params, result, verdict).warn(fl.warnings))
}

fn invariants<F: Field>(f: &F, s: &Setting) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let lazy = fl.word.iter().all(|o| *o == Orient::Down);
    let inv = if lazy {
        lie_invariants_lazy(f, &fl.lie, &fl.group, fl.word.len())?
    } else {
        lie_invariants(f, &fl.lie, &fl.group, &fl.word)?
    };
    let dim = fl.lie.space.dim().pow(fl.word.len() as u32);
    let first_column = |op: SparseOperator<F::Elem>| op.into_matrix().columns().swap_remove(0);
    let vectors: Vec<SparseVec<F::Elem>> = if s.flavor == FlavorArg::Gl {
        enumerate_walled(&[], &fl.word).iter().map(|d| Ok(first_column(fl.ctx.interpret_walled(d)?))).collect::<Result<_>>()?
    } else {
        enumerate_diagrams(0, fl.word.len()).iter().map(|d| Ok(first_column(fl.ctx.interpret(d)?))).collect::<Result<_>>()?
    };
    let span = Rref::from_rows(f.clone(), dim, inv.iter().cloned());
    let contained = vectors.iter().all(|v| span.contains(v));
    let diagram_rank = rank(f, dim, &vectors)?;
    let spanned = contained && diagram_rank == inv.len();
    let level = match (f.characteristic(), fl.group.is_empty()) {
        (0, true) => "lie",
        (0, false) => "lie+component",
        _ => "lie-level",
    };
    let result = json!({
        "carrier_dim": dim,
        "invariant_dim": inv.len(),
        "diagram_count": vectors.len(),
        "diagram_rank": diagram_rank,
        "diagrams_invariant": contained,
        "spanned": spanned,
        "level": level,
    });
    let verdict = match (spanned, f.characteristic()) {
        (true, _) => Verdict::Pass,
        (false, 0) => Verdict::Fail,
        (false, _) => Verdict::Flagged,
    };
    let mut warnings = fl.warnings;
    warnings.extend(lie_level_warning(f));
    Ok(Artifact::new("invariants", field_name(f), fl.params, result, verdict).warn(warnings))
}

fn coend<F: Field>(f: &F, s: &Setting, extended: bool, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let kind = if extended { fl.kind.extended() } else { fl.kind };
    let a = build(f, kind, &fl.delta, cache)?;
    let m = algebra_action(&a, &fl.ctx)?;
    let (e, c) = (coend_dim(f, &m)?, commutant_basis(f, &m)?.len());
    let result = json!({
        "algebra": kind.to_string(),
        "carrier_dim": m.dim(),
        "coend_dim": e,
        "commutant_dim": c,
        "equal": e == c,
    });
    let verdict = if e == c { Verdict::Pass } else { Verdict::Fail };
    Ok(Artifact::new("coend", field_name(f), fl.params, result, verdict).warn(fl.warnings))
}

fn double_centraliser<F: Field>(f: &F, s: &Setting, extended: bool, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let kind = if extended { fl.kind.extended() } else { fl.kind };
    let a = build(f, kind, &fl.delta, cache)?;
    let dc = double_centraliser_check(f, &algebra_action(&a, &fl.ctx)?)?;
    let verdict = if dc.equal { Verdict::Pass } else { Verdict::Fail };
    let mut result = serde_json::to_value(&dc)?;
    result["algebra"] = json!(kind.to_string());
    Ok(Artifact::new("double-centraliser", field_name(f), fl.params, result, verdict).warn(fl.warnings))
}

fn qh<F: Field>(f: &F, args: &AlgebraArgs, cache: Option<&Path>) -> Result<Artifact> {
    let kind = kind_of(args.kind, args.r, args.s);
    let delta = f.parse(&args.delta)?;
    let a = build(f, kind, &delta, cache)?;
    let report = qh_report(&a, None)?;
    let verdict = if !report.degenerate.is_empty() {
        Verdict::Flagged
    } else if report.identities.cellular_dim
        && report.order_consistent != Some(false)
        && report.simple_count.is_none_or(|c| c == report.label_count)
        && report.labels.iter().all(|l| l.dim_simple.is_some())
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut warnings = report.degenerate.clone();
    if f.characteristic() != 0 {
        warnings.push("composition factors and simple counts need characteristic 0; skipped".into());
    }
    let params = json!({ "algebra": kind, "delta": f.render(&delta) });
    Ok(Artifact::new("qh-report", field_name(f), params, serde_json::to_value(&report)?, verdict).warn(warnings))
}

fn tilting<F: Field>(f: &F, s: &Setting, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let kind = fl.kind.extended();
    let a = build(f, kind, &fl.delta, cache)?;
    let rep = algebra_action(&a, &fl.ctx)?;
    let t = tilting_check(&a, &AlgebraModule::from_rep(&a, "T", &rep)?)?;
    let counts = simple_counts(f, &a, &rep)?;
    let counts_agree = counts.is_none_or(|(x, y)| x == y);
    let result = json!({
        "algebra": kind.to_string(),
        "tilting": t,
        "simple_count_algebra": counts.map(|c| c.0),
        "simple_count_commutant": counts.map(|c| c.1),
    });
    let verdict = if t.verdict && counts_agree { Verdict::Pass } else { Verdict::Fail };
    let mut warnings = fl.warnings;
    if kind.is_periplectic() {
        warnings.push("periplectic modules are treated ungraded".into());
    }
    Ok(Artifact::new("tilting", field_name(f), fl.params, result, verdict).warn(warnings))
}

fn envelope<F: Field>(f: &F, s: &Setting, cache: Option<&Path>) -> Result<Artifact> {
    let fl = setup(f, s)?;
    let a = build(f, fl.kind, &fl.delta, cache)?;
    let m = algebra_action(&a, &fl.ctx)?;
    let env = enveloping_image_dim(f, &fl.lie, &fl.word)?;
    let centraliser = commutant_basis(f, &m)?.len();
    let kernel = action_kernel(&a, &m)?.kernel.len();
    let lie = commutant_basis(f, &lie_module(f, &fl.lie, &fl.word, &[])?)?.len();
    let result = json!({
        "algebra": a.kind().to_string(),
        "algebra_dim": a.dim(),
        "envelope_dim": env,
        "centraliser_dim": centraliser,
        "equal": env == centraliser,
        "kernel_dim": kernel,
        "lie_commutant_dim": lie,
        "injective": kernel == 0 && lie == a.dim(),
    });
    let mut warnings = fl.warnings;
    let verdict = match (env == centraliser, s.flavor) {
        (true, _) => Verdict::Pass,
        (false, FlavorArg::Osp) => {
            warnings.push("the envelope of osp misses the reflection; equality is not expected".into());
            Verdict::Flagged
        }
        (false, _) => Verdict::Fail,
    };
    Ok(Artifact::new("envelope", field_name(f), fl.params, result, verdict).warn(warnings))
}

fn periplectic_explore<F: Field>(f: &F, n: usize, r: usize, cache: Option<&Path>) -> Result<Artifact> {
    let s = Setting { flavor: FlavorArg::Pe, m: 0, n, r, s: 0, delta: None };
    let fl = setup(f, &s)?;
    let a = build(f, fl.kind, &fl.delta, cache)?;
    let ac = build(f, fl.kind.extended(), &fl.delta, cache)?;
    let m = algebra_action(&a, &fl.ctx)?;
    let mc = algebra_action(&ac, &fl.ctx)?;
    let t = tilting_check(&ac, &AlgebraModule::from_rep(&ac, "T", &mc)?)?;
    let counts = simple_counts(f, &ac, &mc)?;
    let result = json!({
        "algebra_dim": a.dim(),
        "extended_dim": ac.dim(),
        "kernel_dim": action_kernel(&a, &m)?.kernel.len(),
        "centraliser_dim": commutant_basis(f, &m)?.len(),
        "extended_centraliser_dim": commutant_basis(f, &mc)?.len(),
        "lie_commutant_dim": commutant_basis(f, &lie_module(f, &fl.lie, &fl.word, &[])?)?.len(),
        "envelope_dim": enveloping_image_dim(f, &fl.lie, &fl.word)?,
        "tilting": t,
        "simple_count_algebra": counts.map(|c| c.0),
        "simple_count_commutant": counts.map(|c| c.1),
    });
    let mut warnings = fl.warnings;
    warnings.push("exploratory: no verdict is drawn".into());
    Ok(Artifact::new("periplectic-explore", field_name(f), fl.params, result, Verdict::Exploratory).warn(warnings))
}

fn compose<F: Field>(f: &F, lhs: &str, rhs: &str, flavor: FlavorArg, delta: &str) -> Result<Artifact> {
    let (upper, lower) = (parse(lhs)?, parse(rhs)?);
    if upper.bottom() != lower.top() {
        return Err(CliError::Usage(format!(
            "lhs has {} bottom dots but rhs has {} top dots",
            upper.bottom(),
            lower.top()
        )));
    }
    let (loops, c) = upper.compose(&lower)?;
    let (coeff, params) = match flavor {
        FlavorArg::Osp => {
            let d = f.parse(delta)?;
            (f.pow(&d, loops as u32), json!({ "flavor": "osp", "delta": f.render(&d), "lhs": lhs, "rhs": rhs }))
        }
        FlavorArg::Pe => {
            let s = periplectic_sign(&upper, &lower)?.unwrap_or(0);
            (f.from_i64(s), json!({ "flavor": "pe", "lhs": lhs, "rhs": rhs }))
        }
        FlavorArg::Gl => return Err(CliError::Usage("compose takes unoriented diagrams: use --flavor osp or pe".into())),
    };
    let coeff = f.render(&coeff);
    let result = json!({
        "loops": loops,
        "coeff": coeff,
        "text": render(&c),
        "diagram": DiagramJson::new(&c, coeff.clone()),
    });
    Ok(Artifact::new("compose", field_name(f), params, result, Verdict::Pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ringel::Rationals;

    #[test]
    fn dims_of_small_algebras() {
        let d = |k| dims(&Rationals, k).unwrap().result["dim"].as_u64().unwrap();
        assert_eq!(d(AlgebraKind::Brauer { r: 3 }), 15);
        assert_eq!(d(AlgebraKind::BrauerC { r: 2 }), 6);
        assert_eq!(d(AlgebraKind::BrauerC { r: 3 }), 22);
        assert_eq!(d(AlgebraKind::Walled { r: 1, s: 1 }), 2);
    }

    #[test]
    fn delta_must_match_the_superdimension() {
        let s = Setting { flavor: FlavorArg::Osp, m: 2, n: 2, r: 2, s: 0, delta: Some("3".into()) };
        assert!(matches!(setup(&Rationals, &s), Err(CliError::Usage(_))));
        let s = Setting { delta: Some("-2".into()), ..s };
        assert!(setup(&Rationals, &s).is_ok());
    }
}
