//! Cross checks against slow reference implementations that share no code
//! with the library: a matching-tuple generator for enumeration and a
//! permutation search for connection-set isomorphism.

use std::collections::BTreeSet;

use b1f::balance::classify_balance;
use b1f::cubic::construct_one_n;
use b1f::graph::{
    canonical_connection_set, connection_sets_isomorphic, CirculantGraph, Edge, OneFactorisation,
};
use b1f::onethree::construct_13;
use b1f::onetwo::{construct_12_order8, construct_12_rotation};
use b1f::rotation::{construct_general, RotationParams, RotationVariant};
use b1f::search::{enumerate_factorisations, exists_mb1f, ExistenceOutcome, SearchOptions};
use itertools::Itertools;

/// All connected circulant graphs on `order` vertices with two distinct
/// distances, as sorted distance pairs.
fn connected_two_sets(order: usize) -> Vec<Vec<usize>> {
    let half = order / 2;
    let mut out = Vec::new();
    for d1 in 1..=half {
        for d2 in d1 + 1..=half {
            if let Ok(g) = CirculantGraph::new(order, &[d1, d2]) {
                if g.is_connected() {
                    out.push(vec![d1, d2]);
                }
            }
        }
    }
    out
}

/// Every perfect matching of `graph`, found by always matching the lowest
/// unmatched vertex. Edges inside a matching are in canonical order.
fn all_perfect_matchings(graph: &CirculantGraph) -> Vec<Vec<(usize, usize)>> {
    let n = graph.order();
    let mut matched = vec![false; n];
    let mut current = Vec::with_capacity(n / 2);
    let mut out = Vec::new();
    fn go(
        graph: &CirculantGraph,
        matched: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let u = match matched.iter().position(|&m| !m) {
            Some(u) => u,
            None => {
                out.push(current.clone());
                return;
            }
        };
        let n = graph.order();
        for &d in graph.distances() {
            for v in [(u + d) % n, (u + n - d) % n] {
                if v > u && !matched[v] && graph.contains_edge(Edge::new(u, v)) {
                    matched[u] = true;
                    matched[v] = true;
                    current.push((u, v));
                    go(graph, matched, current, out);
                    current.pop();
                    matched[u] = false;
                    matched[v] = false;
                }
            }
        }
    }
    go(graph, &mut matched, &mut current, &mut out);
    out.sort();
    out.dedup();
    out
}

type CanonicalFactorisation = Vec<Vec<(usize, usize)>>;

/// Unordered factorisations as sorted lists of sorted matchings, built by
/// choosing r pairwise disjoint perfect matchings that cover every edge.
fn naive_factorisations(graph: &CirculantGraph) -> BTreeSet<CanonicalFactorisation> {
    let pms = all_perfect_matchings(graph);
    let r = graph.regularity();
    let edge_count = graph.edge_count();
    let mut out = BTreeSet::new();
    for combo in (0..pms.len()).combinations(r) {
        let mut seen = BTreeSet::new();
        let mut total = 0usize;
        let mut ok = true;
        for &i in &combo {
            for &e in &pms[i] {
                if !seen.insert(e) {
                    ok = false;
                    break;
                }
                total += 1;
            }
            if !ok {
                break;
            }
        }
        if ok && total == edge_count {
            let mut fact: CanonicalFactorisation = combo.iter().map(|&i| pms[i].clone()).collect();
            fact.sort();
            out.insert(fact);
        }
    }
    out
}

fn canonicalise(of: &OneFactorisation) -> CanonicalFactorisation {
    let mut fact: CanonicalFactorisation = of
        .factors()
        .iter()
        .map(|f| f.edges().iter().map(|e| (e.a(), e.b())).sorted().collect())
        .collect();
    fact.sort();
    fact
}

#[test]
fn enumeration_matches_naive_generator_through_order_ten() {
    for order in [4usize, 6, 8, 10] {
        for set in connected_two_sets(order) {
            let graph = CirculantGraph::new(order, &set).unwrap();
            let expected = naive_factorisations(&graph);
            let run = enumerate_factorisations(&graph, &SearchOptions::default()).unwrap();
            assert!(run.complete, "search was cut on {order} {set:?}");
            let got: BTreeSet<CanonicalFactorisation> =
                run.factorisations.iter().map(canonicalise).collect();
            assert_eq!(got.len(), run.factorisations.len(), "duplicate output");
            assert_eq!(got, expected, "mismatch on order {order} set {set:?}");
        }
    }
}

/// Decides graph isomorphism by a backtracking search over vertex bijections,
/// extending the map one vertex at a time and checking adjacency both ways.
fn iso_by_permutation_search(order: usize, set1: &[usize], set2: &[usize]) -> bool {
    let g1 = CirculantGraph::new(order, set1).unwrap();
    let g2 = CirculantGraph::new(order, set2).unwrap();
    if g1.regularity() != g2.regularity() {
        return false;
    }
    let adj = |g: &CirculantGraph, u: usize, v: usize| g.contains_edge(Edge::new(u, v));
    fn extend(
        g1: &CirculantGraph,
        g2: &CirculantGraph,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        adj: &dyn Fn(&CirculantGraph, usize, usize) -> bool,
    ) -> bool {
        let u = map.len();
        if u == g1.order() {
            return true;
        }
        for v in 0..g2.order() {
            if used[v] {
                continue;
            }
            if (0..u).all(|w| adj(g1, w, u) == adj(g2, map[w], v)) {
                map.push(v);
                used[v] = true;
                if extend(g1, g2, map, used, adj) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut map = Vec::with_capacity(order);
    let mut used = vec![false; order];
    extend(&g1, &g2, &mut map, &mut used, &adj)
}

#[test]
fn connection_set_criterion_matches_permutation_search_through_order_sixteen() {
    for order in [6usize, 8, 10, 12, 14, 16] {
        let sets = connected_two_sets(order);
        for (i, s1) in sets.iter().enumerate() {
            for s2 in &sets[i..] {
                let fast = connection_sets_isomorphic(order, s1, s2).unwrap();
                let slow = iso_by_permutation_search(order, s1, s2);
                assert_eq!(
                    fast, slow,
                    "criterion disagrees with search on {order} {s1:?} {s2:?}"
                );
            }
        }
    }
}

/// Existence boundaries of the 4-regular families: the first order carrying
/// a 6-balanced factorisation of a {1,3}-circulant, and the 3-balanced
/// factorisations of Circ(12,{1,6}).
#[test]
fn search_confirms_existence_at_family_boundaries() {
    let opts = SearchOptions::default();
    for (order, set, m) in [(18usize, [1usize, 3], 6usize), (12, [1, 6], 3)] {
        let graph = CirculantGraph::new(order, &set).unwrap();
        let outcome = exists_mb1f(&graph, m, &opts).unwrap();
        assert!(
            matches!(outcome, ExistenceOutcome::Found(_)),
            "expected a {m}-balanced factorisation of Circ({order},{set:?})"
        );
    }
}

/// Every constructed factorisation of order at most 16 is rediscovered by
/// the exhaustive search when asked for its balance.
#[test]
fn search_rediscovers_small_constructions() {
    let mut constructions: Vec<(CirculantGraph, OneFactorisation)> = vec![
        construct_one_n(6).unwrap(),
        construct_one_n(8).unwrap(),
        construct_12_order8(),
        construct_12_rotation(6).unwrap(),
    ];
    for n in 5..=8 {
        constructions.push(construct_13(2, n).unwrap());
    }
    for n in 6..=8 {
        constructions.push(construct_13(3, n).unwrap());
    }
    for (ell, a, variant) in [
        (2, 2, RotationVariant::Span),
        (4, 1, RotationVariant::Span),
        (2, 2, RotationVariant::DoubleSpan),
    ] {
        constructions.push(construct_general(RotationParams { ell, a, variant }).unwrap());
    }

    for (graph, of) in constructions {
        assert!(graph.order() <= 16);
        let m = classify_balance(&of).unwrap().balance().expect("balanced");
        let outcome = exists_mb1f(&graph, m, &SearchOptions::default()).unwrap();
        let found = match outcome {
            ExistenceOutcome::Found(witness) => {
                assert_eq!(classify_balance(&witness).unwrap().balance(), Some(m));
                witness.validate(&graph).is_ok()
            }
            _ => false,
        };
        assert!(
            found,
            "no {m}-balanced factorisation found on Circ({},{:?})",
            graph.order(),
            graph.distances()
        );
    }
}

#[test]
fn canonical_sets_are_idempotent_and_separate_classes() {
    for order in [6usize, 8, 10, 12, 14, 16] {
        let sets = connected_two_sets(order);
        for s in &sets {
            let c = canonical_connection_set(order, s).unwrap();
            assert!(connection_sets_isomorphic(order, s, &c).unwrap());
            assert_eq!(canonical_connection_set(order, &c).unwrap(), c);
        }
        for s1 in &sets {
            for s2 in &sets {
                let same_canon = canonical_connection_set(order, s1).unwrap()
                    == canonical_connection_set(order, s2).unwrap();
                let iso = connection_sets_isomorphic(order, s1, s2).unwrap();
                assert_eq!(same_canon, iso, "canonical form mismatch on {order}");
            }
        }
    }
}
