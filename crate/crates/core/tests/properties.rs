//! Invariants over random semidirect products `R x_A R^m`, where `A` is an
//! upper-triangular integer matrix acting on an abelian ideal.

use proptest::prelude::*;
use twisted_cohomology::dixmier::verify_les;
use twisted_cohomology::{
    betti, differential_rep_form, differential_wedge_form, scan_line, weight_system, Covector, LieAlgebra, Rational,
    Twist,
};

/// `[e0, e_j] = sum_i A[i][j] e_i` for the ideal basis `e1..em`.
#[allow(clippy::needless_range_loop)]
fn semidirect(a: &[Vec<i64>]) -> LieAlgebra {
    let m = a.len();
    let mut b = LieAlgebra::builder(m + 1);
    for j in 0..m {
        let terms: Vec<(usize, i64)> = (0..m).filter(|&i| a[i][j] != 0).map(|i| (i + 1, a[i][j])).collect();
        if !terms.is_empty() {
            b = b.bracket(0, j + 1, &terms);
        }
    }
    b.build().expect("semidirect products satisfy Jacobi")
}

fn triangular(nilpotent: bool) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(move |m| {
        let diag = if nilpotent { Just(0i64).boxed() } else { (-3i64..=3).boxed() };
        (prop::collection::vec(diag, m), prop::collection::vec(-2i64..=2, m * m)).prop_map(move |(d, upper)| {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| match i.cmp(&j) {
                            std::cmp::Ordering::Equal => d[i],
                            std::cmp::Ordering::Less => upper[i * m + j],
                            std::cmp::Ordering::Greater => 0,
                        })
                        .collect()
                })
                .collect()
        })
    })
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![triangular(false), triangular(true)].prop_map(|a| semidirect(&a))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q))
}

fn w1(alg: &LieAlgebra) -> Covector {
    Covector::basis(alg.dim(), 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_squares_to_zero_and_forms_agree(alg in algebra(), lambda in small_rational()) {
        let t = Twist::new(&alg, w1(&alg), lambda).unwrap();
        let mut previous = None;
        for q in 0..=alg.dim() {
            let wedge = differential_wedge_form(&alg, q, &t).unwrap().matrix;
            let rep = differential_rep_form(&alg, q, &t).unwrap().matrix;
            prop_assert_eq!(&wedge, &rep);
            if let Some(p) = previous {
                prop_assert!(wedge.mul(&p).is_zero());
            }
            previous = Some(wedge);
        }
    }

    #[test]
    fn euler_characteristic_vanishes(alg in algebra(), lambda in small_rational()) {
        let t = Twist::new(&alg, w1(&alg), lambda).unwrap();
        prop_assert_eq!(betti(&alg, &t).unwrap().euler, 0);
    }

    #[test]
    fn dimension_identity_holds(alg in algebra(), lambda in -4i64..=4) {
        let report = verify_les(&alg, &w1(&alg), &Rational::from(lambda)).unwrap();
        prop_assert!(report.holds(), "{:?} vs {:?}", report.predicted_betti, report.actual_betti);
    }

    #[test]
    fn nonzero_cohomology_only_at_candidates(alg in algebra()) {
        let ws = weight_system(&alg).unwrap();
        let omega = w1(&alg);
        let candidates = ws.line_candidates(&omega);
        let lambdas: Vec<Rational> = (-8..=8).map(Rational::from).collect();
        for (l, table) in lambdas.iter().zip(scan_line(&alg, &omega, &lambdas).unwrap()) {
            if !table.is_zero() {
                prop_assert!(candidates.contains(l), "lambda {} not in {:?}", l, candidates);
            }
        }
    }

    #[test]
    fn weights_sum_to_the_trace_form(alg in algebra()) {
        let ws = weight_system(&alg).unwrap();
        let trace: Vec<Rational> = (0..alg.dim()).map(|i| alg.ad_trace(i)).collect();
        prop_assert_eq!(ws.sum_of_all, Covector(trace));
    }

    #[test]
    fn scan_is_order_independent(alg in algebra(), lambdas in prop::collection::vec(small_rational(), 1..8)) {
        let omega = w1(&alg);
        let forward = scan_line(&alg, &omega, &lambdas).unwrap();
        let reversed: Vec<Rational> = lambdas.iter().rev().cloned().collect();
        let mut backward = scan_line(&alg, &omega, &reversed).unwrap();
        backward.reverse();
        prop_assert_eq!(forward, backward);
    }
}
