use serde::{Deserialize, Serialize};

use super::module::{dual_module, ext1, find_isomorphism, AlgebraModule};
use super::partition::{labels, Label};
use super::standard::{composition_multiplicities, simple_module, standard_module, SimpleFlag};
use crate::commutant::simple_count;
use crate::diagrams::{AlgebraKind, DiagramAlgebra};
use crate::error::Result;
use crate::superlinalg::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellularIdentity {
    pub algebra_dim: usize,
    pub standard_dims: Vec<usize>,
    pub sum_of_squares: usize,
    pub holds: bool,
}

/// `dim A = Σ_λ (dim Δ(λ))²`.
pub fn cellular_dim_identity<F: Field>(a: &DiagramAlgebra<F>) -> Result<CellularIdentity> {
    let dims = labels(a.kind()).iter().map(|l| Ok(standard_module(a, l)?.dim)).collect::<Result<Vec<usize>>>()?;
    let sum = dims.iter().map(|d| d * d).sum();
    Ok(CellularIdentity { algebra_dim: a.dim(), standard_dims: dims, sum_of_squares: sum, holds: sum == a.dim() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelExt {
    pub lambda: String,
    pub ext1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingReport {
    pub module: String,
    pub module_dim: usize,
    pub self_dual: bool,
    pub per_lambda_ext: Vec<LabelExt>,
    pub verdict: bool,
    pub failing: Vec<String>,
}

/// `M` is tilting if `M ≅ dM` and `Ext¹(Δ(λ), M) = 0` for every label.
pub fn tilting_check<F: Field>(a: &DiagramAlgebra<F>, m: &AlgebraModule<F>) -> Result<TiltingReport> {
    let d = dual_module(a, m);
    let self_dual = find_isomorphism(a, m, &d)?.is_some();
    let ls = labels(a.kind());
    let per = crate::par::try_map(&ls, |l| {
        let delta = standard_module(a, l)?;
        Ok::<_, crate::error::Error>(LabelExt { lambda: l.to_string(), ext1: ext1(a, &delta, m)?.dim })
    })?;
    let mut failing = Vec::new();
    if !self_dual {
        failing.push("no isomorphism M → dM".to_string());
    }
    for e in per.iter().filter(|e| e.ext1 != 0) {
        failing.push(format!("Ext¹(Δ{}, M) has dim {}", e.lambda, e.ext1));
    }
    Ok(TiltingReport { module: m.name.clone(), module_dim: m.dim, self_dual, verdict: failing.is_empty(), per_lambda_ext: per, failing })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelReport {
    pub lambda: String,
    pub object: usize,
    pub dim_delta: usize,
    pub dim_simple: Option<usize>,
    pub flags: Vec<String>,
    /// `[Δ(λ) : L(μ)]` in label order, when every simple was found.
    pub composition: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identities {
    pub cellular_dim: bool,
    pub algebra_dim: usize,
    pub sum_of_squares: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhReport {
    pub algebra: String,
    pub params: serde_json::Value,
    pub labels: Vec<LabelReport>,
    pub label_count: usize,
    /// Simple count of `A` from its regular representation (characteristic 0).
    pub simple_count: Option<usize>,
    pub degenerate: Vec<String>,
    pub identities: Identities,
    /// Composition factors of each `Δ(λ)` other than `L(λ)` lie strictly below `λ`.
    pub order_consistent: Option<bool>,
    pub tilting: Option<TiltingReport>,
}

/// Parameter choices where quasi-heredity is known to fail.
pub fn degenerate_flags<F: Field>(a: &DiagramAlgebra<F>) -> Vec<String> {
    let f = a.field();
    let mut out = Vec::new();
    let (r, brauer) = match a.kind() {
        AlgebraKind::Brauer { r } | AlgebraKind::BrauerC { r } => (r, true),
        AlgebraKind::Walled { r, s } | AlgebraKind::WalledC { r, s } => (r.max(s), false),
        AlgebraKind::Periplectic { r } | AlgebraKind::PeriplecticC { r } => (r, false),
    };
    if brauer && f.is_zero(a.delta()) && r % 2 == 0 && r > 0 {
        out.push(format!("delta = 0 with even r = {r}: not quasi-hereditary"));
    }
    let p = f.characteristic();
    if p >= 2 && p <= r as u64 {
        out.push(format!("characteristic {p} lies in [2, {r}]"));
    }
    out
}

pub fn qh_report<F: Field>(a: &DiagramAlgebra<F>, tilting: Option<&AlgebraModule<F>>) -> Result<QhReport> {
    let f = a.field();
    let ls: Vec<Label> = labels(a.kind());
    let simples = crate::par::try_map(&ls, |l| simple_module(a, l))?;
    let standards = crate::par::try_map(&ls, |l| standard_module(a, l))?;
    let all_simple: Option<Vec<AlgebraModule<F>>> = simples.iter().map(|s| s.module.clone()).collect();
    let char0 = f.characteristic() == 0;
    let mut compositions: Vec<Option<Vec<usize>>> = vec![None; ls.len()];
    if let (Some(sm), true) = (&all_simple, char0) {
        for (i, d) in standards.iter().enumerate() {
            compositions[i] = composition_multiplicities(a, d, sm)?;
        }
    }
    let order_consistent = if compositions.iter().all(Option::is_some) && char0 && all_simple.is_some() {
        Some(compositions.iter().enumerate().all(|(i, c)| {
            let c = c.as_ref().expect("checked");
            c[i] == 1 && c.iter().enumerate().all(|(j, &m)| j == i || m == 0 || ls[j].less_than(&ls[i]))
        }))
    } else {
        None
    };
    let label_reports: Vec<LabelReport> = ls
        .iter()
        .zip(&simples)
        .zip(compositions)
        .map(|((l, s), composition)| LabelReport {
            lambda: l.to_string(),
            object: l.object,
            dim_delta: s.standard_dim,
            dim_simple: s.dim(),
            flags: s
                .flags
                .iter()
                .map(|fl| match fl {
                    SimpleFlag::HomDimension(k) => format!("Hom(Δ, ∇) has dim {k}"),
                    SimpleFlag::ZeroMap => "canonical map Δ → ∇ is zero".to_string(),
                })
                .collect(),
            composition,
        })
        .collect();
    let simple_count = if char0 {
        let regular: Vec<_> = (0..a.dim()).map(|x| a.left_mult(x)).collect();
        Some(simple_count(f, &regular)?.simples)
    } else {
        None
    };
    let sum: usize = label_reports.iter().map(|l| l.dim_delta * l.dim_delta).sum();
    let tilting = tilting.map(|m| tilting_check(a, m)).transpose()?;
    Ok(QhReport {
        algebra: a.kind().to_string(),
        params: serde_json::json!({ "delta": f.render(a.delta()), "field": f.kind().to_string() }),
        label_count: ls.len(),
        labels: label_reports,
        simple_count,
        degenerate: degenerate_flags(a),
        identities: Identities { cellular_dim: sum == a.dim(), algebra_dim: a.dim(), sum_of_squares: sum },
        order_consistent,
        tilting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::field::Rationals;

    fn build(kind: AlgebraKind, delta: i64) -> DiagramAlgebra<Rationals> {
        let f = Rationals;
        DiagramAlgebra::build(&f, kind, f.from_i64(delta)).unwrap()
    }

    #[test]
    fn cellular_identities() {
        assert!(cellular_dim_identity(&build(AlgebraKind::BrauerC { r: 2 }, -2)).unwrap().holds);
        let c3 = cellular_dim_identity(&build(AlgebraKind::BrauerC { r: 3 }, 1)).unwrap();
        assert_eq!((c3.algebra_dim, c3.sum_of_squares), (22, 22));
        let b2 = cellular_dim_identity(&build(AlgebraKind::Brauer { r: 2 }, 4)).unwrap();
        assert_eq!((b2.algebra_dim, b2.standard_dims.clone()), (3, vec![1, 1, 1]));
    }

    #[test]
    fn report_at_a_quasi_hereditary_point() {
        let r = qh_report(&build(AlgebraKind::BrauerC { r: 2 }, -2), None).unwrap();
        assert_eq!(r.simple_count, Some(3));
        assert_eq!(r.label_count, 3);
        assert!(r.degenerate.is_empty());
        assert_eq!(r.order_consistent, Some(true));
    }

    #[test]
    fn delta_zero_is_flagged() {
        let r = qh_report(&build(AlgebraKind::BrauerC { r: 2 }, 0), None).unwrap();
        assert_eq!(r.degenerate.len(), 1);
    }

    #[test]
    fn regular_module_at_a_semisimple_point_is_tilting() {
        let a = build(AlgebraKind::BrauerC { r: 2 }, 5);
        let t = tilting_check(&a, &AlgebraModule::regular(&a)).unwrap();
        assert!(t.verdict, "{:?}", t.failing);
    }

    #[test]
    fn lowest_standard_fails_self_duality_at_delta_zero() {
        let a = build(AlgebraKind::BrauerC { r: 2 }, 0);
        let empty = labels(a.kind()).into_iter().find(|l| l.size() == 0).unwrap();
        let t = tilting_check(&a, &standard_module(&a, &empty).unwrap()).unwrap();
        assert!(!t.verdict);
        assert!(!t.failing.is_empty());
    }
}
