//! Property tests over the whole construction surface: every reachable
//! construction must validate, classify consistently, stay balanced under
//! vertex rotation, and survive a document round trip.

use b1f::balance::{classify_balance, BalanceVerdict};
use b1f::cubic::{construct_one_n, construct_two_n};
use b1f::doc::FactorisationDocument;
use b1f::graph::{CirculantGraph, OneFactor, OneFactorisation};
use b1f::onethree::construct_13;
use b1f::onetwo::{construct_12_order8, construct_12_rotation};
use b1f::rotation::{construct_general, RotationParams, RotationVariant};
use proptest::prelude::*;

fn any_construction() -> impl Strategy<Value = (CirculantGraph, OneFactorisation)> {
    prop_oneof![
        (3usize..=15).prop_map(|i| construct_one_n(2 * i).expect("even n in range")),
        (4usize..=14).prop_map(|i| construct_one_n(2 * i + 1).expect("odd n in range")),
        (4usize..=14).prop_map(|i| construct_two_n(2 * i + 1).expect("odd n in range")),
        Just(construct_12_order8()),
        (2usize..=10).prop_map(|i| construct_12_rotation(3 * i).expect("multiple of three")),
        (5usize..=20).prop_map(|n| construct_13(2, n).expect("feasible")),
        (6usize..=20).prop_map(|n| construct_13(3, n).expect("feasible")),
        (9usize..=20).prop_map(|n| construct_13(6, n).expect("feasible")),
        ((1usize..=4), (1usize..=4)).prop_filter_map(
            "span needs more than six vertices",
            |(h, a)| {
                let p = RotationParams {
                    ell: 2 * h,
                    a,
                    variant: RotationVariant::Span,
                };
                construct_general(p).ok()
            }
        ),
        ((1usize..=4), (2usize..=4)).prop_map(|(h, a)| {
            let p = RotationParams {
                ell: 2 * h,
                a,
                variant: RotationVariant::DoubleSpan,
            };
            construct_general(p).expect("two windows suffice")
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn constructions_validate_and_balance_is_rotation_invariant(
        (graph, of) in any_construction(),
        shift in 0usize..64,
    ) {
        of.validate(&graph).unwrap();
        let report = classify_balance(&of).unwrap();
        let r = graph.regularity();
        let pair_count: usize = report.profile.iter().map(|(_, c)| c).sum();
        prop_assert_eq!(pair_count, r * (r - 1) / 2);
        prop_assert!(matches!(report.verdict, BalanceVerdict::MBalanced(_)));
        for (t, _) in &report.profile {
            prop_assert_eq!(t.total(), graph.order());
            prop_assert!(t.parts().iter().all(|&p| p % 2 == 0 && p >= 4));
        }

        // rotation is a graph automorphism, so it preserves the profile
        let s = shift % graph.order();
        let rotated: Vec<OneFactor> = of.factors().iter().map(|f| f.rotate(s)).collect();
        let rof = OneFactorisation::new(graph.order(), rotated).unwrap();
        rof.validate(&graph).unwrap();
        let rreport = classify_balance(&rof).unwrap();
        prop_assert_eq!(&report.profile, &rreport.profile);
    }

    #[test]
    fn documents_round_trip((graph, of) in any_construction()) {
        let doc = FactorisationDocument::new(&graph, &of);
        let parsed = FactorisationDocument::parse(&doc.emit()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        let (g2, of2) = parsed.restore().unwrap();
        prop_assert_eq!(g2, graph);
        prop_assert_eq!(of2, of);
    }
}
