//! Exhaustive enumeration of 1-factorisations of small circulant graphs.
//!
//! A 1-factorisation of an r-regular graph is exactly a proper r-edge-
//! colouring, so the searcher backtracks over edges in a fixed canonical
//! order, assigning each a factor index that is still free at both endpoints.
//! A per-vertex availability bitmask drives constraint propagation: whenever
//! an uncoloured edge has a single candidate index left it is assigned
//! eagerly, and a vertex with fewer available indices than uncoloured edges
//! prunes the branch.
//!
//! Factor-relabelling symmetry is removed by fixing the indices of the edges
//! at vertex 0 (ascending neighbour label gets ascending index), so each
//! partition into factors is produced exactly once. Vertex symmetries are
//! deliberately not removed; counts are therefore per labelled factorisation
//! up to factor order.
//!
//! The tree is split into prefix subtrees by a breadth-first expansion whose
//! shape depends only on the problem, never on the worker count. Subtrees
//! are processed in fixed-size batches, sequentially or via a rayon pool
//! behind the `parallel` feature, and results are concatenated in prefix
//! order, so output documents and node counts are identical for any worker
//! count.

use thiserror::Error;

use crate::balance::{classify_balance, BalanceVerdict};
use crate::graph::{canonical_connection_set, CirculantGraph, GraphError, OneFactorisation};

const UNSET: u8 = u8::MAX;
const PREFIX_TARGET: usize = 64;
const BATCH: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("Circ({order},{set:?}) is {regularity}-regular; enumeration supports 3- and 4-regular graphs")]
    NotRegular34 {
        order: usize,
        set: Vec<usize>,
        regularity: usize,
    },
    #[error("Circ({order},{set:?}) is disconnected")]
    Disconnected { order: usize, set: Vec<usize> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Search controls. `parallelism` is the worker count: 1 runs in-thread,
/// 0 lets the thread pool pick, anything else sizes the pool explicitly.
/// Without the `parallel` feature every value runs in-thread.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchOptions {
    pub symmetry_break: bool,
    pub limit: Option<usize>,
    pub node_budget: Option<u64>,
    pub parallelism: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_break: true,
            limit: None,
            node_budget: None,
            parallelism: 1,
        }
    }
}

/// Enumeration result. `nodes` is a deterministic measure of search effort
/// (assignments performed), identical across worker counts; `complete` is
/// true only when the whole tree was explored with no budget or limit cut.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Enumeration {
    pub factorisations: Vec<OneFactorisation>,
    pub nodes: u64,
    pub complete: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExistenceOutcome {
    Found(Box<OneFactorisation>),
    NotFound { nodes: u64 },
    Unknown { nodes: u64 },
}

struct Problem {
    order: usize,
    r: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    forced: Vec<Option<u8>>,
    full_mask: u8,
}

impl Problem {
    fn build(graph: &CirculantGraph, symmetry_break: bool) -> Result<Problem, SearchError> {
        let r = graph.regularity();
        if r != 3 && r != 4 {
            return Err(SearchError::NotRegular34 {
                order: graph.order(),
                set: graph.distances().to_vec(),
                regularity: r,
            });
        }
        if !graph.is_connected() {
            return Err(SearchError::Disconnected {
                order: graph.order(),
                set: graph.distances().to_vec(),
            });
        }
        let order = graph.order();
        let edges: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.a(), e.b())).collect();
        let mut incident = vec![Vec::with_capacity(r); order];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut forced = vec![None; edges.len()];
        if symmetry_break {
            let mut neighbours: Vec<usize> = incident[0]
                .iter()
                .map(|&e| edges[e].1.max(edges[e].0))
                .collect();
            neighbours.sort_unstable();
            for (i, &nb) in neighbours.iter().enumerate() {
                let idx = edges
                    .iter()
                    .position(|&(u, v)| u == 0 && v == nb)
                    .expect("vertex-0 edges are canonical");
                forced[idx] = Some(i as u8);
            }
        }
        Ok(Problem {
            order,
            r,
            edges,
            incident,
            forced,
            full_mask: (1u8 << r) - 1,
        })
    }
}

struct Searcher<'a> {
    prob: &'a Problem,
    colour: Vec<u8>,
    avail: Vec<u8>,
    left: Vec<u8>,
    trail: Vec<usize>,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(prob: &'a Problem) -> Searcher<'a> {
        Searcher {
            prob,
            colour: vec![UNSET; prob.edges.len()],
            avail: vec![prob.full_mask; prob.order],
            left: vec![prob.r as u8; prob.order],
            trail: Vec::with_capacity(prob.edges.len()),
            nodes: 0,
        }
    }

    fn candidates(&self, e: usize) -> u8 {
        let (u, v) = self.prob.edges[e];
        let mut mask = self.avail[u] & self.avail[v];
        if let Some(fc) = self.prob.forced[e] {
            mask &= 1 << fc;
        }
        mask
    }

    fn raw_assign(&mut self, e: usize, c: u8) {
        self.colour[e] = c;
        let (u, v) = self.prob.edges[e];
        self.avail[u] &= !(1 << c);
        self.avail[v] &= !(1 << c);
        self.left[u] -= 1;
        self.left[v] -= 1;
        self.trail.push(e);
        self.nodes += 1;
    }

    /// Cascades forced assignments reachable from the endpoints of `e`.
    /// Returns false on contradiction (some edge has no candidate index, or
    /// a vertex has fewer indices than uncoloured edges).
    fn propagate(&mut self, e: usize) -> bool {
        let mut queue = vec![e];
        while let Some(e0) = queue.pop() {
            let (a, b) = self.prob.edges[e0];
            for v in [a, b] {
                if (self.avail[v].count_ones() as u8) < self.left[v] {
                    return false;
                }
                for k in 0..self.prob.incident[v].len() {
                    let e2 = self.prob.incident[v][k];
                    if self.colour[e2] != UNSET {
                        continue;
                    }
                    let mask = self.candidates(e2);
                    if mask == 0 {
                        return false;
                    }
                    if mask.count_ones() == 1 {
                        self.raw_assign(e2, mask.trailing_zeros() as u8);
                        queue.push(e2);
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("trail length checked");
            let c = self.colour[e];
            self.colour[e] = UNSET;
            let (u, v) = self.prob.edges[e];
            self.avail[u] |= 1 << c;
            self.avail[v] |= 1 << c;
            self.left[u] += 1;
            self.left[v] += 1;
        }
    }

    fn replay(&mut self, decisions: &[(usize, u8)]) -> bool {
        for &(e, c) in decisions {
            if self.colour[e] != UNSET || self.candidates(e) & (1 << c) == 0 {
                return false;
            }
            self.raw_assign(e, c);
            if !self.propagate(e) {
                return false;
            }
        }
        true
    }

    fn next_uncoloured(&self, from: usize) -> Option<usize> {
        (from..self.prob.edges.len()).find(|&e| self.colour[e] == UNSET)
    }

    fn leaf(&self) -> OneFactorisation {
        let mut lists: Vec<Vec<(usize, usize)>> =
            vec![Vec::with_capacity(self.prob.order / 2); self.prob.r];
        for (e, &(u, v)) in self.prob.edges.iter().enumerate() {
            lists[self.colour[e] as usize].push((u, v));
        }
        OneFactorisation::from_edge_lists(self.prob.order, &lists)
            .expect("a completed proper edge colouring is a 1-factorisation")
    }

    /// Depth-first exploration below the current state. Returns false when
    /// the node budget cut the subtree short.
    fn dfs<F>(
        &mut self,
        from: usize,
        budget: u64,
        cap: usize,
        keep: &F,
        out: &mut Vec<OneFactorisation>,
    ) -> bool
    where
        F: Fn(&OneFactorisation) -> bool + Sync,
    {
        let Some(e) = self.next_uncoloured(from) else {
            let of = self.leaf();
            if keep(&of) {
                out.push(of);
            }
            return true;
        };
        let mut mask = self.candidates(e);
        while mask != 0 {
            let c = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            if self.nodes >= budget || out.len() >= cap {
                return false;
            }
            let mark = self.trail.len();
            self.raw_assign(e, c);
            let ok = self.propagate(e) && self.dfs(e + 1, budget, cap, keep, out);
            self.undo_to(mark);
            if !ok && (self.nodes >= budget || out.len() >= cap) {
                return false;
            }
        }
        true
    }
}

/// A node of the deterministic prefix split: either a factorisation already
/// completed during splitting, or the decision list of an open subtree.
enum PrefixNode {
    Leaf(OneFactorisation),
    Open(Vec<(usize, u8)>),
}

struct SubtreeOutcome {
    found: Vec<OneFactorisation>,
    nodes: u64,
    complete: bool,
}

/// Expands the search tree breadth-first until at least [`PREFIX_TARGET`]
/// open subtrees exist (or the tree is exhausted), preserving depth-first
/// order. Returns the ordered nodes and the assignments spent splitting.
fn split_prefixes(prob: &Problem) -> (Vec<PrefixNode>, u64) {
    let mut nodes: Vec<PrefixNode> = vec![PrefixNode::Open(Vec::new())];
    let mut spent = 0u64;
    loop {
        let open = nodes
            .iter()
            .filter(|n| matches!(n, PrefixNode::Open(_)))
            .count();
        if open == 0 || open >= PREFIX_TARGET {
            return (nodes, spent);
        }
        let mut next: Vec<PrefixNode> = Vec::with_capacity(nodes.len() * 2);
        for node in nodes {
            let PrefixNode::Open(decisions) = node else {
                next.push(node);
                continue;
            };
            let mut s = Searcher::new(prob);
            let live = s.replay(&decisions);
            spent += s.nodes;
            debug_assert!(live, "prefix decisions were valid when recorded");
            match s.next_uncoloured(0) {
                None => next.push(PrefixNode::Leaf(s.leaf())),
                Some(e) => {
                    let mut mask = s.candidates(e);
                    while mask != 0 {
                        let c = mask.trailing_zeros() as u8;
                        mask &= mask - 1;
                        let mark = s.trail.len();
                        s.raw_assign(e, c);
                        let ok = s.propagate(e);
                        spent += (s.trail.len() - mark) as u64;
                        s.undo_to(mark);
                        if ok {
                            let mut d = decisions.clone();
                            d.push((e, c));
                            next.push(PrefixNode::Open(d));
                        }
                    }
                }
            }
        }
        nodes = next;
    }
}

fn run_subtree<F>(
    prob: &Problem,
    decisions: &[(usize, u8)],
    budget: u64,
    cap: usize,
    keep: &F,
) -> SubtreeOutcome
where
    F: Fn(&OneFactorisation) -> bool + Sync,
{
    let mut s = Searcher::new(prob);
    if !s.replay(decisions) {
        unreachable!("prefix decisions were valid when recorded");
    }
    let mut found = Vec::new();
    let complete = s.dfs(0, budget.saturating_add(s.nodes), cap, keep, &mut found);
    SubtreeOutcome {
        found,
        nodes: s.nodes,
        complete,
    }
}

#[cfg(feature = "parallel")]
fn run_batch<F>(
    prob: &Problem,
    batch: &[&PrefixNode],
    budget: u64,
    cap: usize,
    keep: &F,
    pool: Option<&rayon::ThreadPool>,
) -> Vec<SubtreeOutcome>
where
    F: Fn(&OneFactorisation) -> bool + Sync,
{
    use rayon::prelude::*;
    let run = |node: &&PrefixNode| match node {
        PrefixNode::Leaf(of) => SubtreeOutcome {
            found: if keep(of) {
                vec![of.clone()]
            } else {
                Vec::new()
            },
            nodes: 0,
            complete: true,
        },
        PrefixNode::Open(decisions) => run_subtree(prob, decisions, budget, cap, keep),
    };
    match pool {
        Some(p) => p.install(|| batch.par_iter().map(run).collect()),
        None => batch.iter().map(run).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_batch<F>(
    prob: &Problem,
    batch: &[&PrefixNode],
    budget: u64,
    cap: usize,
    keep: &F,
    _pool: Option<&()>,
) -> Vec<SubtreeOutcome>
where
    F: Fn(&OneFactorisation) -> bool + Sync,
{
    batch
        .iter()
        .map(|node| match node {
            PrefixNode::Leaf(of) => SubtreeOutcome {
                found: if keep(of) {
                    vec![of.clone()]
                } else {
                    Vec::new()
                },
                nodes: 0,
                complete: true,
            },
            PrefixNode::Open(decisions) => run_subtree(prob, decisions, budget, cap, keep),
        })
        .collect()
}

/// Enumerates factorisations satisfying `keep`. The produced order, node
/// count and completeness flag are deterministic functions of the graph and
/// options alone.
pub fn enumerate_where<F>(
    graph: &CirculantGraph,
    opts: &SearchOptions,
    keep: F,
) -> Result<Enumeration, SearchError>
where
    F: Fn(&OneFactorisation) -> bool + Sync,
{
    let prob = Problem::build(graph, opts.symmetry_break)?;
    let (prefixes, split_nodes) = split_prefixes(&prob);
    let open_count = prefixes
        .iter()
        .filter(|n| matches!(n, PrefixNode::Open(_)))
        .count();
    let per_subtree = match opts.node_budget {
        Some(b) => std::cmp::max(1, b.saturating_sub(split_nodes) / open_count.max(1) as u64),
        None => u64::MAX,
    };
    let cap = opts.limit.unwrap_or(usize::MAX);

    #[cfg(feature = "parallel")]
    let pool = match opts.parallelism {
        1 => None,
        w => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("worker pool construction"),
        ),
    };
    #[cfg(feature = "parallel")]
    let pool_ref = pool.as_ref();
    #[cfg(not(feature = "parallel"))]
    let pool_ref: Option<&()> = None;

    let mut factorisations = Vec::new();
    let mut nodes = split_nodes;
    let mut truncated = false;
    let mut stopped_early = false;
    let mut batch_start = 0;
    while batch_start < prefixes.len() {
        let end = (batch_start + BATCH).min(prefixes.len());
        let batch: Vec<&PrefixNode> = prefixes[batch_start..end].iter().collect();
        let outcomes = run_batch(&prob, &batch, per_subtree, cap, &keep, pool_ref);
        for o in outcomes {
            factorisations.extend(o.found);
            nodes += o.nodes;
            truncated |= !o.complete;
        }
        batch_start = end;
        if factorisations.len() >= cap {
            stopped_early = batch_start < prefixes.len();
            break;
        }
    }
    factorisations.truncate(cap);
    Ok(Enumeration {
        factorisations,
        nodes,
        complete: !truncated && !stopped_early,
    })
}

/// All 1-factorisations of `graph` (up to factor order when symmetry
/// breaking is on), in deterministic order.
pub fn enumerate_factorisations(
    graph: &CirculantGraph,
    opts: &SearchOptions,
) -> Result<Enumeration, SearchError> {
    enumerate_where(graph, opts, |_| true)
}

/// Searches for an m-balanced 1-factorisation. `NotFound` is only reported
/// after the full space was exhausted; a budget cut yields `Unknown`.
pub fn exists_mb1f(
    graph: &CirculantGraph,
    m: usize,
    opts: &SearchOptions,
) -> Result<ExistenceOutcome, SearchError> {
    let mut with_limit = *opts;
    with_limit.limit = Some(1);
    let result = enumerate_where(
        graph,
        &with_limit,
        |of| matches!(classify_balance(of), Ok(report) if report.verdict == BalanceVerdict::MBalanced(m)),
    )?;
    Ok(match result.factorisations.into_iter().next() {
        Some(of) => ExistenceOutcome::Found(Box::new(of)),
        None if result.complete => ExistenceOutcome::NotFound {
            nodes: result.nodes,
        },
        None => ExistenceOutcome::Unknown {
            nodes: result.nodes,
        },
    })
}

/// One existence-table cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableCell {
    Found,
    None,
    Unknown,
    Infeasible,
}

impl TableCell {
    pub fn as_str(self) -> &'static str {
        match self {
            TableCell::Found => "found",
            TableCell::None => "none",
            TableCell::Unknown => "unknown",
            TableCell::Infeasible => "infeasible",
        }
    }
}

/// One row per isomorphism class of connected two-distance circulant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    pub order: usize,
    pub connection_set: Vec<usize>,
    /// Cells for m = 1, 2, 3, 6 in that order.
    pub cells: [(usize, TableCell); 4],
}

/// Existence table over all connected two-distance circulants of even order
/// up to `max_order`, one row per canonical connection set, rows ordered by
/// (order, set). `m` values that do not divide the pair count C(r,2) are
/// marked infeasible without searching.
pub fn existence_table(
    max_order: usize,
    opts: &SearchOptions,
) -> Result<Vec<TableRow>, SearchError> {
    let mut rows = Vec::new();
    for order in (4..=max_order).step_by(2) {
        let half = order / 2;
        let mut canonicals: Vec<Vec<usize>> = Vec::new();
        for d1 in 1..=half {
            for d2 in d1 + 1..=half {
                let graph = CirculantGraph::new(order, &[d1, d2])?;
                if !graph.is_connected() {
                    continue;
                }
                let canon = canonical_connection_set(order, &[d1, d2])?;
                if !canonicals.contains(&canon) {
                    canonicals.push(canon);
                }
            }
        }
        canonicals.sort_unstable();
        for set in canonicals {
            let graph = CirculantGraph::new(order, &set)?;
            let r = graph.regularity();
            let pairs = r * (r - 1) / 2;
            let mut cells = [(0usize, TableCell::Infeasible); 4];
            for (slot, m) in [1usize, 2, 3, 6].into_iter().enumerate() {
                let cell = if pairs % m != 0 {
                    TableCell::Infeasible
                } else {
                    match exists_mb1f(&graph, m, opts)? {
                        ExistenceOutcome::Found(_) => TableCell::Found,
                        ExistenceOutcome::NotFound { .. } => TableCell::None,
                        ExistenceOutcome::Unknown { .. } => TableCell::Unknown,
                    }
                };
                cells[slot] = (m, cell);
            }
            rows.push(TableRow {
                order,
                connection_set: set,
                cells,
            });
        }
    }
    Ok(rows)
}
