use proptest::prelude::*;

use ringel::diagrams::notation::{parse, render};
use ringel::diagrams::{enumerate_diagrams, BrauerDiagram};
use ringel::interp::{functoriality_holds, InterpContext};
use ringel::superlinalg::matrix::{Matrix, SparseVec};
use ringel::superlinalg::operator::{braiding_operator, tensor_operator, SparseOperator};
use ringel::superlinalg::solve::{dense_rank, rank};
use ringel::superlinalg::space::{IndexSpace, SuperSpace, TensorSpace};
use ringel::{Field, Parity, PrimeField, Rationals};

type Q = <Rationals as Field>::Elem;

fn vspace(e: usize, o: usize) -> IndexSpace {
    IndexSpace::single(TensorSpace::power(SuperSpace::new(e, o), 1))
}

/// A homogeneous operator `cols -> rows` filled from `vals`.
fn operator(rows: &IndexSpace, cols: &IndexSpace, odd: bool, vals: &[i64]) -> SparseOperator<Q> {
    let f = Rationals;
    let (rp, cp) = (rows.parities(), cols.parities());
    let mut k = 0;
    let mut t = Vec::new();
    for i in 0..rows.dim() {
        for j in 0..cols.dim() {
            if (rp[i] + cp[j]).is_odd() == odd {
                t.push((i, j, f.from_i64(vals[k % vals.len()])));
                k += 1;
            }
        }
    }
    let m = Matrix::from_triplets(&f, rows.dim(), cols.dim(), t).unwrap();
    SparseOperator::new(rows.clone(), cols.clone(), Parity::from_bit(usize::from(odd)), m).unwrap()
}

fn small_space() -> impl Strategy<Value = (usize, usize)> {
    (0..=2usize, 0..=2usize).prop_filter("nonzero", |(e, o)| e + o > 0)
}

/// A composable pair `upper ∘ lower` with at most `max` dots over the three rows.
fn composable(max: usize) -> impl Strategy<Value = (BrauerDiagram, BrauerDiagram)> {
    (0..=4usize, 0..=4usize, 0..=4usize, any::<usize>(), any::<usize>())
        .prop_filter("parity and size", move |(a, b, c, _, _)| a + b + c <= max && (a + b) % 2 == 0 && (b + c) % 2 == 0)
        .prop_map(|(a, b, c, i, j)| {
            let lower = enumerate_diagrams(a, b);
            let upper = enumerate_diagrams(b, c);
            (upper[i % upper.len()].clone(), lower[j % lower.len()].clone())
        })
}

fn diagram(max_side: usize) -> impl Strategy<Value = BrauerDiagram> {
    (0..=max_side, 0..=max_side, any::<usize>()).prop_filter("even", |(a, b, _)| (a + b) % 2 == 0).prop_map(|(a, b, i)| {
        let all = enumerate_diagrams(a, b);
        all[i % all.len()].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_interchange(
        a in small_space(), b in small_space(), c in small_space(), d in small_space(),
        fo in any::<bool>(), go in any::<bool>(),
        vals in prop::collection::vec(-3i64..=3, 1..16),
    ) {
        let f = Rationals;
        let (a, b, c, d) = (vspace(a.0, a.1), vspace(b.0, b.1), vspace(c.0, c.1), vspace(d.0, d.1));
        let x = operator(&b, &a, fo, &vals);
        let y = operator(&d, &c, go, &vals[1..].iter().chain(&vals[..1]).copied().collect::<Vec<_>>());
        let both = tensor_operator(&f, &x, &y);
        let first = tensor_operator(&f, &x, &SparseOperator::identity(&f, d.clone()))
            .compose(&f, &tensor_operator(&f, &SparseOperator::identity(&f, a.clone()), &y)).unwrap();
        let second = tensor_operator(&f, &SparseOperator::identity(&f, b), &y)
            .compose(&f, &tensor_operator(&f, &x, &SparseOperator::identity(&f, c))).unwrap();
        prop_assert_eq!(first.matrix(), both.matrix());
        prop_assert_eq!(second.matrix(), &both.matrix().scale(&f, &f.sign(fo && go)));
    }

    #[test]
    fn braiding_squares_to_identity(v in small_space(), w in small_space()) {
        let f = Rationals;
        let (v, w) = (SuperSpace::new(v.0, v.1), SuperSpace::new(w.0, w.1));
        let sq = braiding_operator(&f, w, v).compose(&f, &braiding_operator(&f, v, w)).unwrap();
        prop_assert_eq!(sq.matrix(), &Matrix::identity(&f, v.dim() * w.dim()));
    }

    #[test]
    fn osp_functoriality((upper, lower) in composable(8), m in 0..=2usize, n in 0..=1usize) {
        prop_assume!(m + n > 0);
        let ctx = InterpContext::orthosymplectic(&Rationals, m, n).unwrap();
        prop_assert!(functoriality_holds(&ctx, &upper, &lower).unwrap());
    }

    #[test]
    fn composition_is_associative((b, c) in composable(8), i in any::<usize>()) {
        let below = enumerate_diagrams(0, c.bottom()).into_iter().chain(enumerate_diagrams(2, c.bottom())).collect::<Vec<_>>();
        prop_assume!(!below.is_empty());
        let a = &below[i % below.len()];
        let (l1, bc) = b.compose(&c).unwrap();
        let (l2, left) = bc.compose(a).unwrap();
        let (r1, ca) = c.compose(a).unwrap();
        let (r2, right) = b.compose(&ca).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l1 + l2, r1 + r2);
    }

    #[test]
    fn star_reverses_composition((upper, lower) in composable(8)) {
        let (l1, c) = upper.compose(&lower).unwrap();
        let (l2, d) = lower.star().compose(&upper.star()).unwrap();
        prop_assert_eq!(l1, l2);
        prop_assert_eq!(c.star(), d);
        prop_assert_eq!(upper.star().star(), upper);
    }

    #[test]
    fn notation_round_trips(d in diagram(4)) {
        // dot counts are inferred from the names, so every dot must appear
        prop_assume!(d.bottom() + d.top() > 0);
        prop_assert_eq!(parse(&render(&d)).unwrap(), d);
    }

    #[test]
    fn reduction_is_a_ring_map(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
        let q = Rationals;
        let p = PrimeField::new(101).unwrap();
        let x = q.from_ratio(a, c).unwrap();
        let y = q.from_i64(b);
        let red = |v: &Q| q.reduce_mod(v, 101).unwrap();
        prop_assert_eq!(red(&q.mul(&x, &y)), p.mul(&red(&x), &red(&y)));
        prop_assert_eq!(red(&q.add(&x, &y)), p.add(&red(&x), &red(&y)));
    }

    #[test]
    fn screened_rank_is_exact(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..7)) {
        let q = Rationals;
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let sparse: Vec<SparseVec<Q>> = dense.iter().map(|r| SparseVec::from_dense(&q, r)).collect();
        prop_assert_eq!(rank(&q, 5, &sparse).unwrap(), dense_rank(&q, &dense));
    }
}
