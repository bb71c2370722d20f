//! 2-balanced 1-factorisations of `Circ(2n, {1, 2})` and the local structure
//! every 1-factorisation of these graphs must have.
//!
//! Edges of distance 1 and 2 are called 1-edges and 2-edges. For each 1-edge
//! `e = {v, v+1}` the configuration at `e` is the edge triple
//! `{v-1,v+1}, {v,v+1}, {v,v+2}`; its class is the number of distinct factors
//! meeting it (2 or 3 in any proper factorisation). The lemma report checks
//! the facts that drive the nonexistence results: configurations alternate
//! around the circle, the 2-class anchor 1-edges form one factor of 1-edges
//! only (the base factor), base unions are Hamiltonian, and every other pair
//! union has cycles with 0 or 2 one-edges each, so its cycle count is half
//! its 1-edge count (or two when it has no 1-edges).

use thiserror::Error;

use crate::graph::{
    union_cycles, CirculantGraph, Edge, FactorisationError, OneFactor, OneFactorisation, Vertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OneTwoError {
    #[error("expected connection set {{1,2}}, got Circ({order},{set:?})")]
    WrongConnectionSet { order: usize, set: Vec<usize> },
    #[error("order {0} too small (need at least 6)")]
    OrderTooSmall(usize),
    #[error("no 2-balanced 1-factorisation of Circ({order},{{1,2}}): n must be 4 or divisible by 3", order = 2 * n)]
    NoConstruction { n: usize },
    #[error(transparent)]
    Invalid(#[from] FactorisationError),
}

fn graph_12(order: usize) -> Result<CirculantGraph, OneTwoError> {
    if order < 6 {
        return Err(OneTwoError::OrderTooSmall(order));
    }
    Ok(CirculantGraph::new(order, &[1, 2]).expect("order checked even and >= 6"))
}

fn require_12(graph: &CirculantGraph) -> Result<(), OneTwoError> {
    if graph.distances() != [1, 2] || graph.order() < 6 {
        return Err(OneTwoError::WrongConnectionSet {
            order: graph.order(),
            set: graph.distances().to_vec(),
        });
    }
    Ok(())
}

/// The sporadic 2-balanced 1-factorisation of `Circ(8, {1, 2})` with pair
/// types `[8]` and `[4,4]`.
pub fn construct_12_order8() -> (CirculantGraph, OneFactorisation) {
    let graph = CirculantGraph::new(8, &[1, 2]).unwrap();
    let of = OneFactorisation::from_edge_lists(
        8,
        &[
            vec![(0, 1), (2, 3), (4, 5), (6, 7)],
            vec![(0, 2), (1, 3), (4, 6), (5, 7)],
            vec![(0, 6), (1, 7), (2, 4), (3, 5)],
            vec![(0, 7), (1, 2), (3, 4), (5, 6)],
        ],
    )
    .unwrap();
    (graph, of)
}

/// Rotation-built 2-balanced 1-factorisation of `Circ(2n, {1, 2})` for
/// `n ≡ 0 (mod 3)`, `n > 3`, with pair types `[2n]` and `[6^(2n/6)]`.
///
/// The map `v -> v + 2` fixes the base factor and permutes the other three
/// cyclically, which is what forces the pair types to come out equal.
pub fn construct_12_rotation(n: usize) -> Result<(CirculantGraph, OneFactorisation), OneTwoError> {
    if !n.is_multiple_of(3) || n <= 3 {
        return Err(OneTwoError::NoConstruction { n });
    }
    let order = 2 * n;
    let m = |x: usize| x % order;
    let mut r = Vec::new();
    let mut g = Vec::new();
    let mut b = Vec::new();
    let mut y = Vec::new();
    for x in 0..order {
        match x % 6 {
            1 => r.push((x, m(x + 1))),
            3 => g.push((x, m(x + 1))),
            5 => b.push((x, m(x + 1))),
            _ => y.push((x, m(x + 1))),
        }
        match x % 6 {
            3 | 4 => r.push((x, m(x + 2))),
            0 | 5 => g.push((x, m(x + 2))),
            1 | 2 => b.push((x, m(x + 2))),
            _ => {}
        }
    }
    let graph = graph_12(order)?;
    let of = OneFactorisation::from_edge_lists(order, &[r, g, b, y])
        .expect("rotation schema yields matchings");
    Ok((graph, of))
}

/// Number of distinct factors meeting the configuration at the 1-edge
/// `{v, v+1}`: the triple `{v-1,v+1}, {v,v+1}, {v,v+2}`.
pub fn configuration_class(
    graph: &CirculantGraph,
    of: &OneFactorisation,
    v: Vertex,
) -> Result<usize, OneTwoError> {
    require_12(graph)?;
    of.validate(graph)?;
    Ok(config_class_unchecked(of, v))
}

fn factor_of(of: &OneFactorisation, e: Edge) -> usize {
    for (i, f) in of.factors().iter().enumerate() {
        if f.contains_edge(e) {
            return i;
        }
    }
    unreachable!("edge {e} of a validated factorisation is in some factor")
}

fn config_class_unchecked(of: &OneFactorisation, v: Vertex) -> usize {
    let n = of.order();
    let es = [
        Edge::new((v + n - 1) % n, (v + 1) % n),
        Edge::new(v, (v + 1) % n),
        Edge::new(v, (v + 2) % n),
    ];
    let mut cols: Vec<usize> = es.iter().map(|&e| factor_of(of, e)).collect();
    cols.sort_unstable();
    cols.dedup();
    cols.len()
}

fn one_edge_count(graph: &CirculantGraph, f: &OneFactor) -> usize {
    f.edges()
        .iter()
        .filter(|e| graph.distance(e.a(), e.b()) == 1)
        .count()
}

/// Outcome of every structural check on one factorisation of
/// `Circ(2n, {1, 2})`. Each field is independent so a single failure can be
/// located; `all_pass` folds them together.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LemmaReport {
    /// Configuration classes alternate 2,3,2,3,... around the circle.
    pub alternating_configurations: bool,
    /// Both 2-edges of each 2-class configuration lie in one factor.
    pub two_config_edges_one_factor: bool,
    /// The out 2-edges `{v,v+2}`, `{v+1,v+3}` of each 3-class configuration
    /// at `{v,v+1}` lie in one factor.
    pub three_config_out_edges_one_factor: bool,
    /// Every factor contains an even number of 2-edges.
    pub even_two_edge_counts: bool,
    /// The anchor 1-edges of the 2-class configurations form exactly one
    /// factor, consisting of 1-edges only.
    pub base_factor_exists: bool,
    /// The union of the base factor with each other factor is one Hamilton
    /// cycle.
    pub base_unions_hamiltonian: bool,
    /// In each non-base pair union, every cycle carries 0 or 2 one-edges.
    pub cycles_carry_0_or_2_one_edges: bool,
    /// Each non-base pair union has `h/2` cycles where `h` is its 1-edge
    /// count, or two cycles when `h = 0`.
    pub cycle_count_matches_one_edges: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.alternating_configurations
            && self.two_config_edges_one_factor
            && self.three_config_out_edges_one_factor
            && self.even_two_edge_counts
            && self.base_factor_exists
            && self.base_unions_hamiltonian
            && self.cycles_carry_0_or_2_one_edges
            && self.cycle_count_matches_one_edges
    }
}

/// Index of the base factor: the one holding the anchor 1-edges of all
/// 2-class configurations. (A factorisation can contain a second all-1-edge
/// factor, but its unions need not be Hamiltonian; the 2-class anchors pick
/// the right one.)
pub fn base_factor(
    graph: &CirculantGraph,
    of: &OneFactorisation,
) -> Result<Option<usize>, OneTwoError> {
    require_12(graph)?;
    of.validate(graph)?;
    Ok(base_factor_unchecked(of))
}

fn base_factor_unchecked(of: &OneFactorisation) -> Option<usize> {
    let n = of.order();
    let mut base: Option<usize> = None;
    for v in 0..n {
        if config_class_unchecked(of, v) != 2 {
            continue;
        }
        let c = factor_of(of, Edge::new(v, (v + 1) % n));
        match base {
            None => base = Some(c),
            Some(b) if b != c => return None,
            _ => {}
        }
    }
    base
}

/// Runs the full structural-lemma battery on a valid factorisation of
/// `Circ(2n, {1, 2})`, `n >= 3`.
pub fn verify_structure_lemmas(
    graph: &CirculantGraph,
    of: &OneFactorisation,
) -> Result<LemmaReport, OneTwoError> {
    require_12(graph)?;
    of.validate(graph)?;
    let order = of.order();
    let m = |x: usize| x % order;

    let classes: Vec<usize> = (0..order).map(|v| config_class_unchecked(of, v)).collect();
    let alternating_configurations =
        (0..order).all(|v| matches!(classes[v], 2 | 3) && classes[v] != classes[m(v + 1)]);

    let mut two_config_edges_one_factor = true;
    let mut three_config_out_edges_one_factor = true;
    for (v, &class) in classes.iter().enumerate() {
        let in2 = factor_of(of, Edge::new(m(v + order - 1), m(v + 1)));
        let out2 = factor_of(of, Edge::new(v, m(v + 2)));
        match class {
            2 => {
                if in2 != out2 {
                    two_config_edges_one_factor = false;
                }
            }
            _ => {
                let next_out = factor_of(of, Edge::new(m(v + 1), m(v + 3)));
                if out2 != next_out {
                    three_config_out_edges_one_factor = false;
                }
            }
        }
    }

    let even_two_edge_counts = of.factors().iter().all(|f| {
        let twos = f
            .edges()
            .iter()
            .filter(|e| graph.distance(e.a(), e.b()) == 2)
            .count();
        twos % 2 == 0
    });

    let base = base_factor_unchecked(of);
    let base_factor_exists = match base {
        Some(b) => one_edge_count(graph, of.factor(b)) == order / 2,
        None => false,
    };

    let mut base_unions_hamiltonian = true;
    let mut cycles_carry_0_or_2_one_edges = true;
    let mut cycle_count_matches_one_edges = true;
    if let Some(b) = base {
        for i in 0..of.len() {
            if i == b {
                continue;
            }
            let cycles = union_cycles(of.factor(b), of.factor(i))?;
            if cycles.len() != 1 {
                base_unions_hamiltonian = false;
            }
        }
        let rest: Vec<usize> = (0..of.len()).filter(|&i| i != b).collect();
        for (k, &i) in rest.iter().enumerate() {
            for &j in &rest[k + 1..] {
                let cycles = union_cycles(of.factor(i), of.factor(j))?;
                let h = one_edge_count(graph, of.factor(i)) + one_edge_count(graph, of.factor(j));
                for cycle in &cycles {
                    let ones = cycle
                        .iter()
                        .enumerate()
                        .filter(|&(t, &v)| {
                            let u = cycle[(t + 1) % cycle.len()];
                            graph.distance(v, u) == 1
                        })
                        .count();
                    if ones != 0 && ones != 2 {
                        cycles_carry_0_or_2_one_edges = false;
                    }
                }
                let expected = if h > 0 { h / 2 } else { 2 };
                if cycles.len() != expected {
                    cycle_count_matches_one_edges = false;
                }
            }
        }
    } else {
        base_unions_hamiltonian = false;
        cycles_carry_0_or_2_one_edges = false;
        cycle_count_matches_one_edges = false;
    }

    Ok(LemmaReport {
        alternating_configurations,
        two_config_edges_one_factor,
        three_config_out_edges_one_factor,
        even_two_edge_counts,
        base_factor_exists,
        base_unions_hamiltonian,
        cycles_carry_0_or_2_one_edges,
        cycle_count_matches_one_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::classify_balance;
    use crate::graph::CycleType;

    #[test]
    fn order8_has_types_8_and_44() {
        let (g, of) = construct_12_order8();
        of.validate(&g).unwrap();
        let report = classify_balance(&of).unwrap();
        assert_eq!(report.balance(), Some(2));
        let types: Vec<&CycleType> = report.profile.iter().map(|(t, _)| t).collect();
        assert_eq!(*types[0], CycleType::new(vec![8]));
        assert_eq!(*types[1], CycleType::new(vec![4, 4]));
        assert!(verify_structure_lemmas(&g, &of).unwrap().all_pass());
    }

    #[test]
    fn rotation_is_equivariant_under_shift_by_two() {
        let (g, of) = construct_12_rotation(9).unwrap();
        of.validate(&g).unwrap();
        assert_eq!(classify_balance(&of).unwrap().balance(), Some(2));
        // v -> v+2 maps factor 0 -> 1 -> 2 -> 0 and fixes factor 3
        let img: Vec<OneFactor> = of.factors().iter().map(|f| f.rotate(2)).collect();
        assert_eq!(img[0], *of.factor(1));
        assert_eq!(img[1], *of.factor(2));
        assert_eq!(img[2], *of.factor(0));
        assert_eq!(img[3], *of.factor(3));
    }

    #[test]
    fn rotation_rejects_bad_n() {
        assert!(construct_12_rotation(3).is_err());
        assert!(construct_12_rotation(5).is_err());
        assert!(construct_12_rotation(7).is_err());
    }

    #[test]
    fn configuration_classes_alternate_on_order8() {
        let (g, of) = construct_12_order8();
        let ks: Vec<usize> = (0..8)
            .map(|v| configuration_class(&g, &of, v).unwrap())
            .collect();
        for v in 0..8 {
            assert_ne!(ks[v], ks[(v + 1) % 8]);
        }
    }

    #[test]
    fn wrong_connection_set_is_rejected() {
        let g = CirculantGraph::new(10, &[1, 3]).unwrap();
        let of = OneFactorisation::from_edge_lists(
            10,
            &[
                vec![(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)],
                vec![(0, 3), (1, 2), (4, 7), (5, 8), (6, 9)],
                vec![(0, 9), (1, 4), (2, 5), (3, 6), (7, 8)],
                vec![(0, 7), (1, 8), (2, 9), (3, 4), (5, 6)],
            ],
        )
        .unwrap();
        assert!(matches!(
            verify_structure_lemmas(&g, &of).unwrap_err(),
            OneTwoError::WrongConnectionSet { .. }
        ));
    }

    #[test]
    fn base_factor_prefers_two_class_anchors() {
        // both factor 0 and factor 1 are all 1-edges; only the 2-class anchor
        // factor has Hamiltonian unions with the rest
        let of = OneFactorisation::from_edge_lists(
            8,
            &[
                vec![(0, 1), (2, 3), (4, 5), (6, 7)],
                vec![(1, 2), (3, 4), (5, 6), (7, 0)],
                vec![(0, 2), (1, 3), (4, 6), (5, 7)],
                vec![(2, 4), (3, 5), (6, 0), (7, 1)],
            ],
        )
        .unwrap();
        let g = CirculantGraph::new(8, &[1, 2]).unwrap();
        of.validate(&g).unwrap();
        assert_eq!(base_factor(&g, &of).unwrap(), Some(1));
        let report = verify_structure_lemmas(&g, &of).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn hamilton_pair_with_two_one_edges_passes_count_rule() {
        // a union with exactly two 1-edges forms a single Hamilton cycle
        let of = OneFactorisation::from_edge_lists(
            8,
            &[
                vec![(1, 3), (2, 4), (5, 7), (6, 0)],
                vec![(3, 5), (4, 6), (1, 2), (7, 0)],
                vec![(7, 1), (0, 2), (3, 4), (5, 6)],
                vec![(0, 1), (2, 3), (4, 5), (6, 7)],
            ],
        )
        .unwrap();
        let g = CirculantGraph::new(8, &[1, 2]).unwrap();
        of.validate(&g).unwrap();
        let cycles = union_cycles(of.factor(0), of.factor(1)).unwrap();
        assert_eq!(cycles.len(), 1, "expected a Hamilton pair union");
        let report = verify_structure_lemmas(&g, &of).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }
}
