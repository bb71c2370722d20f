//! Circulant graphs, 1-factors and the cycle structure of factor unions.

use std::fmt;

use thiserror::Error;

/// Vertex of a circulant graph, an element of `Z_order`.
pub type Vertex = usize;

/// Undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    a: Vertex,
    b: Vertex,
}

impl Edge {
    /// Creates an edge, normalising endpoint order. Panics on a loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "loops are not edges");
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn a(&self) -> Vertex {
        self.a
    }

    pub fn b(&self) -> Vertex {
        self.b
    }

    /// The endpoint other than `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: Vertex) -> Vertex {
        if v == self.a {
            self.b
        } else if v == self.b {
            self.a
        } else {
            panic!("vertex {v} not on edge {self}")
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("circulant order must be even, got {0}")]
    OddOrder(usize),
    #[error("distance {distance} out of range for order {order} (must be in 1..={})", order / 2)]
    DistanceOutOfRange { order: usize, distance: usize },
    #[error("duplicate distance {0} in connection set")]
    DuplicateDistance(usize),
    #[error(
        "connection-set isomorphism criterion applies to 2-distance sets only, got {0} distances"
    )]
    UnsupportedConnectionSetSize(usize),
}

/// The circulant graph on `Z_order` whose vertices `u`, `v` are adjacent
/// exactly when the circular distance `|u - v|` lies in the connection set.
///
/// Distances are kept as representatives in `1..=order/2`, strictly
/// increasing. A distance below `order/2` contributes 2 to the degree, the
/// diameter distance `order/2` contributes 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CirculantGraph {
    order: usize,
    distances: Vec<usize>,
}

impl CirculantGraph {
    pub fn new(order: usize, distances: &[usize]) -> Result<Self, GraphError> {
        if !order.is_multiple_of(2) || order == 0 {
            return Err(GraphError::OddOrder(order));
        }
        let mut ds = distances.to_vec();
        ds.sort_unstable();
        for (i, &d) in ds.iter().enumerate() {
            if d < 1 || d > order / 2 {
                return Err(GraphError::DistanceOutOfRange { order, distance: d });
            }
            if i > 0 && ds[i - 1] == d {
                return Err(GraphError::DuplicateDistance(d));
            }
        }
        Ok(CirculantGraph {
            order,
            distances: ds,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    /// Degree of every vertex.
    pub fn regularity(&self) -> usize {
        self.distances
            .iter()
            .map(|&d| if d == self.order / 2 { 1 } else { 2 })
            .sum()
    }

    /// Circular distance between two vertices, reduced to `0..=order/2`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        let d = (self.order + u) - v;
        let d = d % self.order;
        d.min(self.order - d)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.a < self.order && e.b < self.order && self.distances.contains(&self.distance(e.a, e.b))
    }

    /// Connected exactly when the connection set generates `Z_order`.
    pub fn is_connected(&self) -> bool {
        let g = self
            .distances
            .iter()
            .fold(self.order, |acc, &d| gcd(acc, d));
        g == 1
    }

    /// All edges in the fixed enumeration order: by smaller endpoint, then by
    /// distance, then by larger endpoint. Every search and document uses this
    /// order, so results are reproducible.
    pub fn edges(&self) -> Vec<Edge> {
        // each edge is generated from both endpoints; sort + dedup keeps one
        let mut es = Vec::with_capacity(2 * self.order * self.distances.len());
        for v in 0..self.order {
            for &d in &self.distances {
                es.push(Edge::new(v, (v + d) % self.order));
            }
        }
        es.sort_by_key(|e| (e.a, self.distance(e.a, e.b), e.b));
        es.dedup();
        es
    }

    pub fn edge_count(&self) -> usize {
        self.order * self.regularity() / 2
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("vertex {0} appears on more than one edge")]
    VertexRepeated(Vertex),
    #[error("vertex {0} is unmatched")]
    VertexUnmatched(Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

/// A perfect matching on `0..order`, stored as the partner involution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneFactor {
    partner: Vec<Vertex>,
}

impl OneFactor {
    pub fn from_edges(order: usize, edges: &[Edge]) -> Result<Self, FactorError> {
        let mut partner = vec![usize::MAX; order];
        for e in edges {
            if e.b >= order {
                return Err(FactorError::VertexOutOfRange(e.b));
            }
            for v in [e.a, e.b] {
                if partner[v] != usize::MAX {
                    return Err(FactorError::VertexRepeated(v));
                }
            }
            partner[e.a] = e.b;
            partner[e.b] = e.a;
        }
        if let Some(v) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(FactorError::VertexUnmatched(v));
        }
        Ok(OneFactor { partner })
    }

    /// Builds from `(u, v)` pairs; convenient for fixed tables.
    pub fn from_pairs(order: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, FactorError> {
        let edges: Vec<Edge> = pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect();
        Self::from_edges(order, &edges)
    }

    pub fn order(&self) -> usize {
        self.partner.len()
    }

    /// The unique vertex matched with `v`.
    pub fn partner(&self, v: Vertex) -> Vertex {
        self.partner[v]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.a < self.order() && self.partner[e.a] == e.b
    }

    /// Edges sorted by smaller endpoint.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.partner.len())
            .filter(|&v| v < self.partner[v])
            .map(|v| Edge::new(v, self.partner[v]))
            .collect()
    }

    /// Image under the relabelling `v -> (v + shift) mod order`.
    pub fn rotate(&self, shift: usize) -> OneFactor {
        let n = self.order();
        let mut partner = vec![usize::MAX; n];
        for v in 0..n {
            partner[(v + shift) % n] = (self.partner[v] + shift) % n;
        }
        OneFactor { partner }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorisationError {
    #[error("factor {factor} is not a perfect matching: {source}")]
    NotPerfectMatching {
        factor: usize,
        #[source]
        source: FactorError,
    },
    #[error("factor {factor} contains {edge}, which is not a graph edge")]
    EdgeNotInGraph { factor: usize, edge: Edge },
    #[error("edge {edge} appears in two factors")]
    OverlappingFactors { edge: Edge },
    #[error("{missing} graph edges are not covered by any factor")]
    IncompleteCover { missing: usize },
    #[error("factor count {factors} does not match regularity {regularity}")]
    WrongFactorCount { factors: usize, regularity: usize },
    #[error("the two factors share the edge {edge}")]
    FactorsShareEdge { edge: Edge },
    #[error("factors have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
}

/// An ordered list of edge-disjoint 1-factors on a common vertex set.
///
/// Construction does not check membership in any particular graph; call
/// [`validate`](Self::validate) to check that the factors partition a graph's
/// edge set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneFactorisation {
    order: usize,
    factors: Vec<OneFactor>,
}

impl OneFactorisation {
    pub fn new(order: usize, factors: Vec<OneFactor>) -> Result<Self, FactorisationError> {
        for (i, f) in factors.iter().enumerate() {
            if f.order() != order {
                return Err(FactorisationError::OrderMismatch(order, f.order()));
            }
            let _ = i;
        }
        Ok(OneFactorisation { order, factors })
    }

    pub fn from_edge_lists(
        order: usize,
        lists: &[Vec<(Vertex, Vertex)>],
    ) -> Result<Self, FactorisationError> {
        let mut factors = Vec::with_capacity(lists.len());
        for (i, pairs) in lists.iter().enumerate() {
            let f = OneFactor::from_pairs(order, pairs)
                .map_err(|source| FactorisationError::NotPerfectMatching { factor: i, source })?;
            factors.push(f);
        }
        Self::new(order, factors)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[OneFactor] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &OneFactor {
        &self.factors[i]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Returns the factors rearranged by `perm` (new position `i` takes the
    /// factor previously at `perm[i]`).
    pub fn reorder(&self, perm: &[usize]) -> OneFactorisation {
        let factors = perm.iter().map(|&i| self.factors[i].clone()).collect();
        OneFactorisation {
            order: self.order,
            factors,
        }
    }

    /// Checks that the factors are pairwise edge-disjoint perfect matchings
    /// whose union is exactly the edge set of `graph`.
    pub fn validate(&self, graph: &CirculantGraph) -> Result<(), FactorisationError> {
        if self.order != graph.order() {
            return Err(FactorisationError::OrderMismatch(self.order, graph.order()));
        }
        if self.factors.len() != graph.regularity() {
            return Err(FactorisationError::WrongFactorCount {
                factors: self.factors.len(),
                regularity: graph.regularity(),
            });
        }
        let mut seen: std::collections::BTreeSet<Edge> = std::collections::BTreeSet::new();
        for (i, f) in self.factors.iter().enumerate() {
            for e in f.edges() {
                if !graph.contains_edge(e) {
                    return Err(FactorisationError::EdgeNotInGraph { factor: i, edge: e });
                }
                if !seen.insert(e) {
                    return Err(FactorisationError::OverlappingFactors { edge: e });
                }
            }
        }
        let missing = graph.edge_count() - seen.len();
        if missing > 0 {
            return Err(FactorisationError::IncompleteCover { missing });
        }
        Ok(())
    }
}

/// The cycles of the union of two edge-disjoint perfect matchings.
///
/// Every vertex lies on exactly one cycle and cycles alternate between the
/// two factors, so each has even length at least 4. Each cycle is reported
/// starting at its minimum vertex, leaving that vertex along `f1`; the cycles
/// are ordered by minimum vertex. This fixes a single traversal for every
/// caller, so printed cycles are comparable across runs.
pub fn union_cycles(
    f1: &OneFactor,
    f2: &OneFactor,
) -> Result<Vec<Vec<Vertex>>, FactorisationError> {
    if f1.order() != f2.order() {
        return Err(FactorisationError::OrderMismatch(f1.order(), f2.order()));
    }
    let n = f1.order();
    for v in 0..n {
        if f1.partner(v) == f2.partner(v) {
            return Err(FactorisationError::FactorsShareEdge {
                edge: Edge::new(v, f1.partner(v)),
            });
        }
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        let mut use_first = true;
        loop {
            cycle.push(v);
            seen[v] = true;
            v = if use_first {
                f1.partner(v)
            } else {
                f2.partner(v)
            };
            use_first = !use_first;
            if v == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Multiset of cycle lengths of a union of two disjoint perfect matchings,
/// in descending order. All entries are even and at least 4, and they sum to
/// the order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for CycleType {
    type Err = std::num::ParseIntError;

    /// Parses `[18,4]` (brackets optional, whitespace ignored).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycleType::new(parts))
    }
}

/// Cycle type of `f1 ∪ f2`.
pub fn cycle_type(f1: &OneFactor, f2: &OneFactor) -> Result<CycleType, FactorisationError> {
    Ok(CycleType::new(
        union_cycles(f1, f2)?.iter().map(Vec::len).collect(),
    ))
}

/// Reduces `value` to its distance representative in `0..=order/2`.
fn distance_rep(order: usize, value: usize) -> usize {
    let v = value % order;
    v.min(order - v)
}

/// Decides whether two 2-distance circulants of the same order are
/// isomorphic: `Circ(order, {c, d})` and `Circ(order, {c', d'})` are
/// isomorphic exactly when some unit `m` of `Z_order` maps `{c', d'}` onto
/// `{±c, ±d}`. Distances of other set sizes are rejected, since the criterion
/// is only valid for 2-distance sets.
pub fn connection_sets_isomorphic(
    order: usize,
    set1: &[usize],
    set2: &[usize],
) -> Result<bool, GraphError> {
    let g1 = CirculantGraph::new(order, set1)?;
    let g2 = CirculantGraph::new(order, set2)?;
    if g1.distances().len() != 2 {
        return Err(GraphError::UnsupportedConnectionSetSize(
            g1.distances().len(),
        ));
    }
    if g2.distances().len() != 2 {
        return Err(GraphError::UnsupportedConnectionSetSize(
            g2.distances().len(),
        ));
    }
    let target = g1.distances().to_vec();
    Ok(units(order).any(|m| {
        let mut image: Vec<usize> = g2
            .distances()
            .iter()
            .map(|&d| distance_rep(order, m * d))
            .collect();
        image.sort_unstable();
        image == target
    }))
}

/// The lexicographically least image of a connection set under all units of
/// `Z_order`; two sets are isomorphic exactly when their canonical forms
/// agree (2-distance sets only, same caveat as `connection_sets_isomorphic`).
pub fn canonical_connection_set(order: usize, set: &[usize]) -> Result<Vec<usize>, GraphError> {
    let g = CirculantGraph::new(order, set)?;
    if g.distances().len() != 2 {
        return Err(GraphError::UnsupportedConnectionSetSize(
            g.distances().len(),
        ));
    }
    let mut best: Option<Vec<usize>> = None;
    for m in units(order) {
        let mut image: Vec<usize> = g
            .distances()
            .iter()
            .map(|&d| distance_rep(order, m * d))
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    Ok(best.unwrap())
}

fn units(order: usize) -> impl Iterator<Item = usize> {
    (1..order).filter(move |&m| gcd(m, order) == 1)
}
