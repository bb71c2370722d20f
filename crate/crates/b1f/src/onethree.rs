//! Balanced 1-factorisations of `Circ(2n, {1, 3})`: explicit base
//! factorisations for small orders and a 4-vertex extension step that grows
//! them while preserving balance.
//!
//! A factor has a gap at `(v, v+1)` when it avoids the four edges
//! `{v,v+1}`, `{v-2,v+1}`, `{v,v+3}`, `{v-1,v+2}`. A factorisation admits an
//! extension certificate when its four factors can be ordered `F1..F4` with
//! gaps at `(0,1)..(3,4)` respectively, `{2,3}` in `F1` and `{1,2}` in `F4`.
//! Splitting the circle open inside those gaps and inserting four vertices
//! produces a factorisation of the order-(2n+4) graph with the same
//! certificate, and the pair cycle types change in a predictable way: each
//! pair union has one or two special vertices whose cycles absorb the new
//! length (+4 per step to a shared cycle, +2 each to two distinct cycles).

use thiserror::Error;

use crate::graph::{
    union_cycles, CirculantGraph, CycleType, Edge, FactorisationError, OneFactor, OneFactorisation,
    Vertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OneThreeError {
    #[error("expected connection set {{1,3}}, got Circ({order},{set:?})")]
    WrongConnectionSet { order: usize, set: Vec<usize> },
    #[error("no extension certificate for this factorisation of Circ({order},{{1,3}})")]
    ConditionCNotSatisfied { order: usize },
    #[error("no explicit base {m}-balanced 1-factorisation of order {order}")]
    UnsupportedBase { m: usize, order: usize },
    #[error("no {m}-balanced 1-factorisation of Circ({order},{{1,3}}) exists", order = 2 * n)]
    ProvenNonexistent { m: usize, n: usize },
    #[error("Circ({order},{{1,3}}) is not a connected 4-regular simple graph", order = 2 * n)]
    DegenerateParameter { n: usize },
    #[error("balance class m={0} is not realised on Circ(2n,{{1,3}})")]
    UnsupportedBalance(usize),
    #[error(transparent)]
    Invalid(#[from] FactorisationError),
}

/// Parameters `(m, order)` of every explicit base factorisation.
pub const BASE_PARAMETERS: [(usize, usize); 12] = [
    (2, 10),
    (2, 12),
    (2, 14),
    (2, 16),
    (3, 12),
    (3, 14),
    (3, 16),
    (3, 18),
    (3, 20),
    (6, 18),
    (6, 20),
    (6, 22),
];

fn require_13(graph: &CirculantGraph) -> Result<(), OneThreeError> {
    if graph.distances() != [1, 3] || graph.order() < 8 {
        return Err(OneThreeError::WrongConnectionSet {
            order: graph.order(),
            set: graph.distances().to_vec(),
        });
    }
    Ok(())
}

fn graph_13(order: usize) -> CirculantGraph {
    CirculantGraph::new(order, &[1, 3]).expect("order even and >= 8")
}

/// True when `f` avoids all four edges `{v,v+1}`, `{v-2,v+1}`, `{v,v+3}`,
/// `{v-1,v+2}` (mod its order), i.e. has a gap at `(v, v+1)`.
pub fn has_gap(f: &OneFactor, v: Vertex) -> bool {
    let n = f.order();
    let m = |x: usize| x % n;
    let edges = [
        Edge::new(m(v), m(v + 1)),
        Edge::new(m(v + n - 2), m(v + 1)),
        Edge::new(m(v), m(v + 3)),
        Edge::new(m(v + n - 1), m(v + 2)),
    ];
    edges.iter().all(|&e| !f.contains_edge(e))
}

/// Factor ordering `F1..F4` realising gaps at `(0,1)..(3,4)` with
/// `{2,3} ∈ F1` and `{1,2} ∈ F4`. `factor_order[i]` is the index (into the
/// factorisation as given) of the factor playing the role of `F(i+1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConditionCCertificate {
    pub factor_order: [usize; 4],
}

/// Searches factor orderings for an extension certificate. Returns the first
/// ordering found (scanning indices ascending), or `None` when the
/// factorisation admits no certificate.
pub fn satisfies_condition_c(
    graph: &CirculantGraph,
    of: &OneFactorisation,
) -> Result<Option<ConditionCCertificate>, OneThreeError> {
    require_13(graph)?;
    of.validate(graph)?;
    Ok(find_certificate(of))
}

fn find_certificate(of: &OneFactorisation) -> Option<ConditionCCertificate> {
    let candidates: Vec<Vec<usize>> = (0..4)
        .map(|v| (0..4).filter(|&i| has_gap(of.factor(i), v)).collect())
        .collect();
    for &a in &candidates[0] {
        if !of.factor(a).contains_edge(Edge::new(2, 3)) {
            continue;
        }
        for &b in &candidates[1] {
            if b == a {
                continue;
            }
            for &c in &candidates[2] {
                if c == a || c == b {
                    continue;
                }
                for &d in &candidates[3] {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if of.factor(d).contains_edge(Edge::new(1, 2)) {
                        // consequence of the four sequential gaps
                        debug_assert!(of.factor(d).contains_edge(Edge::new(0, 3)));
                        debug_assert!(of.factor(a).contains_edge(Edge::new(1, 4)));
                        return Some(ConditionCCertificate {
                            factor_order: [a, b, c, d],
                        });
                    }
                }
            }
        }
    }
    None
}

fn has_identity_certificate(of: &OneFactorisation) -> bool {
    (0..4).all(|i| has_gap(of.factor(i), i))
        && of.factor(0).contains_edge(Edge::new(2, 3))
        && of.factor(3).contains_edge(Edge::new(1, 2))
}

/// Inserts four vertices into the gap window, producing a factorisation of
/// the order-(2n+4) graph. Output factors are in certificate order, so the
/// result carries the identity certificate and can be extended again.
///
/// The factor in certificate position `i` (threshold `t = i+1`) keeps edge
/// endpoints below `t`, shifts endpoints at or above `t` by 4, and gains the
/// two inserted edges `{t, t+3}` and `{t+1, t+2}`.
pub fn extend_once(
    graph: &CirculantGraph,
    of: &OneFactorisation,
) -> Result<(CirculantGraph, OneFactorisation), OneThreeError> {
    require_13(graph)?;
    of.validate(graph)?;
    let cert =
        find_certificate(of).ok_or(OneThreeError::ConditionCNotSatisfied { order: of.order() })?;
    let new_order = of.order() + 4;
    let mut lists: Vec<Vec<(Vertex, Vertex)>> = Vec::with_capacity(4);
    for (i, &fi) in cert.factor_order.iter().enumerate() {
        let t = i + 1;
        let shift = |x: usize| if x < t { x } else { x + 4 };
        let mut edges: Vec<(Vertex, Vertex)> = of
            .factor(fi)
            .edges()
            .iter()
            .map(|e| (shift(e.a()), shift(e.b())))
            .collect();
        edges.push((t, t + 3));
        edges.push((t + 1, t + 2));
        lists.push(edges);
    }
    let new_graph = graph_13(new_order);
    let new_of = OneFactorisation::from_edge_lists(new_order, &lists)?;
    new_of.validate(&new_graph)?;
    Ok((new_graph, new_of))
}

/// Which special vertices a pair union owns, and whether they share a cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexCase {
    /// The pair has one special vertex.
    Single,
    /// Two special vertices on the same union cycle.
    PairSameCycle,
    /// Two special vertices on different union cycles.
    PairSplitCycles,
}

/// Locates the special vertices of one factor pair inside its union cycles.
/// `carriers[t]` is `(cycle index, cycle length)` for `special[t]`, indexing
/// the deterministic cycle order of [`union_cycles`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexCondition {
    pub pair: (usize, usize),
    pub special: Vec<Vertex>,
    pub carriers: Vec<(usize, usize)>,
    pub case: VertexCase,
}

fn special_vertices(pair: (usize, usize)) -> &'static [Vertex] {
    match pair {
        (0, 1) => &[1],
        (1, 2) => &[2],
        (2, 3) => &[3],
        (0, 2) => &[1, 2],
        (1, 3) => &[2, 3],
        (0, 3) => &[0],
        _ => unreachable!("pairs are normalised to i < j <= 3"),
    }
}

/// Special-vertex placement for `pair` (factor positions in certificate
/// order). Requires the factorisation to carry the identity certificate,
/// since the special vertices are defined relative to that ordering.
pub fn vertex_condition(
    graph: &CirculantGraph,
    of: &OneFactorisation,
    pair: (usize, usize),
) -> Result<VertexCondition, OneThreeError> {
    require_13(graph)?;
    of.validate(graph)?;
    if !has_identity_certificate(of) {
        return Err(OneThreeError::ConditionCNotSatisfied { order: of.order() });
    }
    let (i, j) = normalise_pair(pair);
    Ok(condition_for(of, (i, j)))
}

fn normalise_pair(pair: (usize, usize)) -> (usize, usize) {
    let (i, j) = if pair.0 < pair.1 {
        pair
    } else {
        (pair.1, pair.0)
    };
    assert!(j <= 3 && i != j, "factor pair out of range: {pair:?}");
    (i, j)
}

fn condition_for(of: &OneFactorisation, pair: (usize, usize)) -> VertexCondition {
    let cycles = union_cycles(of.factor(pair.0), of.factor(pair.1))
        .expect("factors of a validated factorisation are disjoint");
    let special = special_vertices(pair).to_vec();
    let carriers: Vec<(usize, usize)> = special
        .iter()
        .map(|&v| {
            let idx = cycles
                .iter()
                .position(|c| c.contains(&v))
                .expect("union cycles cover every vertex");
            (idx, cycles[idx].len())
        })
        .collect();
    let case = match carriers.as_slice() {
        [_] => VertexCase::Single,
        [(a, _), (b, _)] if a == b => VertexCase::PairSameCycle,
        _ => VertexCase::PairSplitCycles,
    };
    VertexCondition {
        pair,
        special,
        carriers,
        case,
    }
}

/// Pair cycle types after `k` extension steps, computed from the base pair
/// unions: the cycle carrying a pair's special vertices gains 4 per step, or
/// each of two carrying cycles gains 2 per step when the special vertices
/// are split. The six predictions are returned in descending order.
///
/// `k = 0` reads off the actual pair types and needs no certificate; `k >= 1`
/// requires the identity certificate.
pub fn predict_types(
    graph: &CirculantGraph,
    of: &OneFactorisation,
    k: usize,
) -> Result<Vec<CycleType>, OneThreeError> {
    require_13(graph)?;
    of.validate(graph)?;
    if k > 0 && !has_identity_certificate(of) {
        return Err(OneThreeError::ConditionCNotSatisfied { order: of.order() });
    }
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            let cycles = union_cycles(of.factor(i), of.factor(j))?;
            let mut lens: Vec<usize> = cycles.iter().map(Vec::len).collect();
            if k > 0 {
                let cond = condition_for(of, (i, j));
                match cond.case {
                    VertexCase::Single | VertexCase::PairSameCycle => {
                        lens[cond.carriers[0].0] += 4 * k;
                    }
                    VertexCase::PairSplitCycles => {
                        lens[cond.carriers[0].0] += 2 * k;
                        lens[cond.carriers[1].0] += 2 * k;
                    }
                }
            }
            out.push(CycleType::new(lens));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// One explicit base factorisation per supported `(m, order)`; see
/// [`BASE_PARAMETERS`]. Factors are listed in certificate order whenever the
/// base carries a certificate.
pub fn base_factorisation(
    m: usize,
    order: usize,
) -> Result<(CirculantGraph, OneFactorisation), OneThreeError> {
    let lists = base_edges(m, order).ok_or(OneThreeError::UnsupportedBase { m, order })?;
    let graph = graph_13(order);
    let of = OneFactorisation::from_edge_lists(
        order,
        &lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>(),
    )
    .expect("base tables are perfect matchings");
    debug_assert!(of.validate(&graph).is_ok());
    Ok((graph, of))
}

type EdgeTable = [&'static [(usize, usize)]; 4];

#[rustfmt::skip]
fn base_edges(m: usize, order: usize) -> Option<EdgeTable> {
    Some(match (m, order) {
        (2, 10) => [
            &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)],
            &[(0, 3), (1, 2), (4, 7), (5, 8), (6, 9)],
            &[(0, 9), (1, 4), (2, 5), (3, 6), (7, 8)],
            &[(0, 7), (1, 8), (2, 9), (3, 4), (5, 6)],
        ],
        (2, 12) => [
            &[(0, 1), (2, 5), (3, 4), (6, 9), (7, 10), (8, 11)],
            &[(0, 3), (1, 4), (2, 11), (5, 6), (7, 8), (9, 10)],
            &[(0, 11), (1, 10), (2, 3), (4, 5), (6, 7), (8, 9)],
            &[(0, 9), (1, 2), (3, 6), (4, 7), (5, 8), (10, 11)],
        ],
        (2, 14) => [
            &[(0, 13), (1, 4), (2, 3), (5, 8), (6, 7), (9, 12), (10, 11)],
            &[(0, 1), (2, 5), (3, 6), (4, 7), (8, 9), (10, 13), (11, 12)],
            &[(0, 11), (1, 12), (2, 13), (3, 4), (5, 6), (7, 8), (9, 10)],
            &[(0, 3), (1, 2), (4, 5), (6, 9), (7, 10), (8, 11), (12, 13)],
        ],
        (2, 16) => [
            &[(0, 15), (1, 4), (2, 3), (5, 8), (6, 9), (7, 10), (11, 14), (12, 13)],
            &[(0, 13), (1, 14), (2, 5), (3, 4), (6, 7), (8, 9), (10, 11), (12, 15)],
            &[(0, 1), (2, 15), (3, 6), (4, 5), (7, 8), (9, 10), (11, 12), (13, 14)],
            &[(0, 3), (1, 2), (4, 7), (5, 6), (8, 11), (9, 12), (10, 13), (14, 15)],
        ],
        (3, 12) => [
            &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)],
            &[(0, 3), (1, 2), (4, 7), (5, 6), (8, 11), (9, 10)],
            &[(0, 11), (1, 10), (2, 5), (3, 4), (6, 9), (7, 8)],
            &[(0, 9), (1, 4), (2, 11), (3, 6), (5, 8), (7, 10)],
        ],
        (3, 14) => [
            &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 13), (11, 12)],
            &[(0, 13), (1, 2), (3, 4), (5, 6), (7, 8), (9, 12), (10, 11)],
            &[(0, 3), (1, 4), (2, 5), (6, 9), (7, 10), (8, 11), (12, 13)],
            &[(0, 11), (1, 12), (2, 13), (3, 6), (4, 7), (5, 8), (9, 10)],
        ],
        (3, 16) => [
            &[(0, 1), (2, 3), (4, 5), (6, 9), (7, 8), (10, 13), (11, 14), (12, 15)],
            &[(0, 3), (1, 4), (2, 15), (5, 6), (7, 10), (8, 11), (9, 12), (13, 14)],
            &[(0, 15), (1, 14), (2, 5), (3, 6), (4, 7), (8, 9), (10, 11), (12, 13)],
            &[(0, 13), (1, 2), (3, 4), (5, 8), (6, 7), (9, 10), (11, 12), (14, 15)],
        ],
        (3, 18) => [
            &[(0, 15), (1, 4), (2, 3), (5, 6), (7, 8), (9, 10), (11, 12), (13, 14), (16, 17)],
            &[(0, 17), (1, 16), (2, 5), (3, 4), (6, 7), (8, 9), (10, 11), (12, 13), (14, 15)],
            &[(0, 1), (2, 17), (3, 6), (4, 7), (5, 8), (9, 12), (10, 13), (11, 14), (15, 16)],
            &[(0, 3), (1, 2), (4, 5), (6, 9), (7, 10), (8, 11), (12, 15), (13, 16), (14, 17)],
        ],
        (3, 20) => [
            &[(0, 19), (1, 4), (2, 3), (5, 8), (6, 9), (7, 10), (11, 14), (12, 13), (15, 16), (17, 18)],
            &[(0, 17), (1, 18), (2, 5), (3, 4), (6, 7), (8, 11), (9, 12), (10, 13), (14, 15), (16, 19)],
            &[(0, 1), (2, 19), (3, 6), (4, 5), (7, 8), (9, 10), (11, 12), (13, 16), (14, 17), (15, 18)],
            &[(0, 3), (1, 2), (4, 7), (5, 6), (8, 9), (10, 11), (12, 15), (13, 14), (16, 17), (18, 19)],
        ],
        (6, 18) => [
            &[(0, 1), (2, 3), (4, 5), (6, 9), (7, 8), (10, 11), (12, 13), (14, 17), (15, 16)],
            &[(0, 17), (1, 2), (3, 4), (5, 6), (7, 10), (8, 9), (11, 14), (12, 15), (13, 16)],
            &[(0, 3), (1, 4), (2, 5), (6, 7), (8, 11), (9, 12), (10, 13), (14, 15), (16, 17)],
            &[(0, 15), (1, 16), (2, 17), (3, 6), (4, 7), (5, 8), (9, 10), (11, 12), (13, 14)],
        ],
        (6, 20) => [
            &[(0, 19), (1, 4), (2, 3), (5, 8), (6, 7), (9, 10), (11, 12), (13, 16), (14, 17), (15, 18)],
            &[(0, 1), (2, 5), (3, 6), (4, 7), (8, 9), (10, 13), (11, 14), (12, 15), (16, 19), (17, 18)],
            &[(0, 17), (1, 18), (2, 19), (3, 4), (5, 6), (7, 10), (8, 11), (9, 12), (13, 14), (15, 16)],
            &[(0, 3), (1, 2), (4, 5), (6, 9), (7, 8), (10, 11), (12, 13), (14, 15), (16, 17), (18, 19)],
        ],
        (6, 22) => [
            &[(0, 19), (1, 4), (2, 3), (5, 6), (7, 8), (9, 12), (10, 11), (13, 14), (15, 16), (17, 18), (20, 21)],
            &[(0, 21), (1, 20), (2, 5), (3, 6), (4, 7), (8, 11), (9, 10), (12, 13), (14, 15), (16, 17), (18, 19)],
            &[(0, 1), (2, 21), (3, 4), (5, 8), (6, 9), (7, 10), (11, 12), (13, 16), (14, 17), (15, 18), (19, 20)],
            &[(0, 3), (1, 2), (4, 5), (6, 7), (8, 9), (10, 13), (11, 14), (12, 15), (16, 19), (17, 20), (18, 21)],
        ],
        _ => return None,
    })
}

/// Builds an m-balanced 1-factorisation of `Circ(2n, {1, 3})` for any
/// feasible parameter: `m=2, n>=5`; `m=3, n>=6`; `m=6, n>=9`. Picks the
/// largest base of the m-family with order congruent to 2n mod 4, then
/// applies the extension step `(2n - base order)/4` times.
pub fn construct_13(
    m: usize,
    n: usize,
) -> Result<(CirculantGraph, OneFactorisation), OneThreeError> {
    let threshold = match m {
        2 => 5,
        3 => 6,
        6 => 9,
        _ => return Err(OneThreeError::UnsupportedBalance(m)),
    };
    if n < 4 {
        return Err(OneThreeError::DegenerateParameter { n });
    }
    if n < threshold {
        return Err(OneThreeError::ProvenNonexistent { m, n });
    }
    let order = 2 * n;
    let base_order = BASE_PARAMETERS
        .iter()
        .filter(|&&(bm, bo)| bm == m && bo <= order && bo % 4 == order % 4)
        .map(|&(_, bo)| bo)
        .max()
        .expect("every feasible (m, n) is covered by a base parity class");
    let k = (order - base_order) / 4;
    let (mut graph, mut of) = base_factorisation(m, base_order)?;
    for _ in 0..k {
        let (g2, of2) = extend_once(&graph, &of)?;
        graph = g2;
        of = of2;
    }
    Ok((graph, of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::classify_balance;

    fn types(parts: &[&[usize]]) -> Vec<CycleType> {
        let mut ts: Vec<CycleType> = parts.iter().map(|p| CycleType::new(p.to_vec())).collect();
        ts.sort_unstable_by(|a, b| b.cmp(a));
        ts
    }

    fn distinct_types(of: &OneFactorisation) -> Vec<CycleType> {
        let report = classify_balance(of).unwrap();
        let mut ts: Vec<CycleType> = report.profile.iter().map(|(t, _)| t.clone()).collect();
        ts.sort_unstable_by(|a, b| b.cmp(a));
        ts
    }

    #[test]
    fn all_bases_validate_and_balance() {
        let expected: [(usize, usize, &[&[usize]]); 12] = [
            (2, 10, &[&[10], &[6, 4]]),
            (2, 12, &[&[12], &[8, 4]]),
            (2, 14, &[&[14], &[10, 4]]),
            (2, 16, &[&[16], &[12, 4]]),
            (3, 12, &[&[12], &[6, 6], &[4, 4, 4]]),
            (3, 14, &[&[14], &[10, 4], &[8, 6]]),
            (3, 16, &[&[12, 4], &[10, 6], &[8, 8]]),
            (3, 18, &[&[18], &[14, 4], &[12, 6]]),
            (3, 20, &[&[16, 4], &[14, 6], &[12, 8]]),
            (
                6,
                18,
                &[&[18], &[14, 4], &[12, 6], &[10, 8], &[10, 4, 4], &[8, 6, 4]],
            ),
            (
                6,
                20,
                &[
                    &[20],
                    &[16, 4],
                    &[14, 6],
                    &[12, 8],
                    &[12, 4, 4],
                    &[10, 6, 4],
                ],
            ),
            (
                6,
                22,
                &[&[22], &[18, 4], &[16, 6], &[14, 8], &[14, 4, 4], &[8, 8, 6]],
            ),
        ];
        for (m, order, want) in expected {
            let (g, of) = base_factorisation(m, order).unwrap();
            of.validate(&g).unwrap();
            let report = classify_balance(&of).unwrap();
            assert_eq!(report.balance(), Some(m), "base ({m},{order})");
            assert_eq!(distinct_types(&of), types(want), "base ({m},{order})");
        }
    }

    #[test]
    fn unknown_base_is_rejected() {
        assert_eq!(
            base_factorisation(2, 18).unwrap_err(),
            OneThreeError::UnsupportedBase { m: 2, order: 18 }
        );
        assert_eq!(
            base_factorisation(4, 12).unwrap_err(),
            OneThreeError::UnsupportedBase { m: 4, order: 12 }
        );
    }

    #[test]
    fn gaps_of_the_order14_base() {
        let (_, of) = base_factorisation(2, 14).unwrap();
        assert!(has_gap(of.factor(0), 0));
        assert!(!has_gap(of.factor(0), 2), "{{2,3}} blocks the gap");
        for i in 0..4 {
            assert!(has_gap(of.factor(i), i), "sequential gap {i}");
        }
    }

    #[test]
    fn exactly_six_bases_carry_certificates() {
        let with_cert = [(2, 14), (2, 16), (3, 18), (3, 20), (6, 20), (6, 22)];
        for (m, order) in BASE_PARAMETERS {
            let (g, of) = base_factorisation(m, order).unwrap();
            let cert = satisfies_condition_c(&g, &of).unwrap();
            if with_cert.contains(&(m, order)) {
                assert_eq!(
                    cert,
                    Some(ConditionCCertificate {
                        factor_order: [0, 1, 2, 3]
                    }),
                    "base ({m},{order})"
                );
            } else {
                assert_eq!(cert, None, "base ({m},{order})");
            }
        }
    }

    #[test]
    fn extension_grows_order_and_keeps_certificate() {
        let (g, of) = base_factorisation(2, 14).unwrap();
        let (g1, of1) = extend_once(&g, &of).unwrap();
        assert_eq!(of1.order(), 18);
        assert_eq!(classify_balance(&of1).unwrap().balance(), Some(2));
        assert_eq!(distinct_types(&of1), types(&[&[18], &[14, 4]]));
        let (g2, of2) = extend_once(&g1, &of1).unwrap();
        assert_eq!(of2.order(), 22);
        of2.validate(&g2).unwrap();
        assert!(satisfies_condition_c(&g2, &of2).unwrap().is_some());
    }

    #[test]
    fn extension_without_certificate_is_refused() {
        let (g, of) = base_factorisation(3, 12).unwrap();
        assert_eq!(
            extend_once(&g, &of).unwrap_err(),
            OneThreeError::ConditionCNotSatisfied { order: 12 }
        );
    }

    #[test]
    fn vertex_conditions_match_known_placements() {
        let (g, of) = base_factorisation(2, 16).unwrap();
        let c = vertex_condition(&g, &of, (0, 1)).unwrap();
        assert_eq!(c.special, vec![1]);
        assert_eq!(c.case, VertexCase::Single);
        assert_eq!(c.carriers[0].1, 12);
        let c = vertex_condition(&g, &of, (1, 3)).unwrap();
        assert_eq!(c.special, vec![2, 3]);
        assert_eq!(c.case, VertexCase::PairSameCycle);
        assert_eq!(c.carriers[0].1, 16);

        let (g, of) = base_factorisation(6, 20).unwrap();
        let c = vertex_condition(&g, &of, (0, 2)).unwrap();
        assert_eq!(c.special, vec![1, 2]);
        assert_eq!(c.case, VertexCase::PairSameCycle);
        assert_eq!(c.carriers[0].1, 12);
    }

    #[test]
    fn predictions_match_closed_forms() {
        let (g, of) = base_factorisation(2, 14).unwrap();
        let p = predict_types(&g, &of, 2).unwrap();
        assert_eq!(
            p,
            types(&[&[22], &[22], &[22], &[18, 4], &[18, 4], &[18, 4]])
        );

        let (g, of) = base_factorisation(3, 20).unwrap();
        let p = predict_types(&g, &of, 1).unwrap();
        assert_eq!(
            p,
            types(&[&[20, 4], &[20, 4], &[18, 6], &[18, 6], &[16, 8], &[16, 8]])
        );

        let (g, of) = base_factorisation(3, 18).unwrap();
        let p0 = predict_types(&g, &of, 0).unwrap();
        let mut actual: Vec<CycleType> = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let cycles = union_cycles(of.factor(i), of.factor(j)).unwrap();
                actual.push(CycleType::new(cycles.iter().map(Vec::len).collect()));
            }
        }
        actual.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(p0, actual);
    }

    #[test]
    fn prediction_at_k0_works_without_certificate() {
        let (g, of) = base_factorisation(3, 12).unwrap();
        assert!(predict_types(&g, &of, 0).is_ok());
        assert_eq!(
            predict_types(&g, &of, 1).unwrap_err(),
            OneThreeError::ConditionCNotSatisfied { order: 12 }
        );
    }

    #[test]
    fn construct_dispatches_to_bases_and_towers() {
        let (g, of) = construct_13(2, 11).unwrap();
        assert_eq!(g.order(), 22);
        assert_eq!(classify_balance(&of).unwrap().balance(), Some(2));
        assert_eq!(distinct_types(&of), types(&[&[22], &[18, 4]]));

        let (g, of) = construct_13(6, 9).unwrap();
        assert_eq!(g.order(), 18);
        let (_, base) = base_factorisation(6, 18).unwrap();
        assert_eq!(of, base);
    }

    #[test]
    fn construct_rejects_out_of_range_parameters() {
        assert_eq!(
            construct_13(3, 5).unwrap_err(),
            OneThreeError::ProvenNonexistent { m: 3, n: 5 }
        );
        assert_eq!(
            construct_13(2, 4).unwrap_err(),
            OneThreeError::ProvenNonexistent { m: 2, n: 4 }
        );
        assert_eq!(
            construct_13(6, 8).unwrap_err(),
            OneThreeError::ProvenNonexistent { m: 6, n: 8 }
        );
        assert_eq!(
            construct_13(2, 3).unwrap_err(),
            OneThreeError::DegenerateParameter { n: 3 }
        );
        assert_eq!(
            construct_13(4, 10).unwrap_err(),
            OneThreeError::UnsupportedBalance(4)
        );
    }

    #[test]
    fn construct_sweep_small_range() {
        for (m, lo) in [(2, 5), (3, 6), (6, 9)] {
            for n in lo..=14 {
                let (g, of) = construct_13(m, n).unwrap();
                of.validate(&g).unwrap();
                assert_eq!(
                    classify_balance(&of).unwrap().balance(),
                    Some(m),
                    "construct_13({m},{n})"
                );
            }
        }
    }
}
