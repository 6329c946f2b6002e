//! Multi-objective maximum asymmetric TSP.
//!
//! The approximation works on complete directed graphs with an even number
//! of vertices. For every set `F` of at most `d` edges (`d` the number of
//! objectives, rounded up to even) forming vertex-disjoint paths, it
//! contracts `F`, takes a Pareto set of matchings in the contracted graph,
//! completes each matching to a Hamiltonian cycle and expands it back
//! through `F`. With an exact matching backend the output is a
//! ½-approximate Pareto set.
//!
//! Contracting an edge `(u, v)` deletes `v`; `u` keeps its ingoing edges
//! and takes over the outgoing edges of `v`. Paths are contracted
//! edge-by-edge starting from their last edge, which leaves the first
//! vertex of each path standing in for the whole path. Expansion reinserts
//! the contracted edges so that `w(expand(T')) = w'(T') + w(Q)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::balancing::{balance_combinatorial, BalanceError, BalancingInstance};
use crate::pareto::{pareto_filter, Fraction, SolutionSet, WeightVector};

/// Default operation budget, counted in enumerated matchings.
pub const DEFAULT_BUDGET: u128 = 100_000_000;
/// Default vertex cap of the exact matching backend.
pub const DEFAULT_MATCHING_CAP: usize = 10;
/// Default vertex cap of the cycle-enumeration oracle.
pub const DEFAULT_ORACLE_CAP: usize = 9;

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtspError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a set of vertex-disjoint paths: {0}")]
    NotPathSet(String),
    #[error("not a Hamiltonian cycle: {0}")]
    NotHamiltonian(String),
    #[error("not a matching: {0}")]
    NotMatching(String),
    #[error("the approximation needs an even number of vertices, got {0} (use the wrapper)")]
    OddVertexCount(usize),
    #[error("instance too large: estimated {required} matching enumerations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("{what} supports at most {cap} vertices, graph has {n}")]
    VertexCapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error(transparent)]
    Balance(#[from] BalanceError),
}

/// Complete directed graph with a non-negative weight vector on every
/// ordered pair of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDigraph {
    n: usize,
    dim: usize,
    weights: Vec<WeightVector>,
}

impl LabeledDigraph {
    /// Builds the graph from `weight(u, v)` for all `u != v`.
    pub fn from_fn(
        n: usize,
        dim: usize,
        mut weight: impl FnMut(usize, usize) -> WeightVector,
    ) -> Result<Self, AtspError> {
        if n == 0 || dim == 0 {
            return Err(AtspError::InvalidGraph(format!(
                "need at least one vertex and one objective (n={n}, k={dim})"
            )));
        }
        let mut weights = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    weights.push(WeightVector::zeros(dim));
                    continue;
                }
                let w = weight(u, v);
                if w.dim() != dim {
                    return Err(AtspError::InvalidGraph(format!(
                        "edge ({u},{v}) has {} objectives, expected {dim}",
                        w.dim()
                    )));
                }
                if !w.is_non_negative() {
                    return Err(AtspError::InvalidGraph(format!(
                        "edge ({u},{v}) has a negative weight"
                    )));
                }
                weights.push(w);
            }
        }
        Ok(LabeledDigraph { n, dim, weights })
    }

    /// Builds the graph from an edge map that must contain every ordered pair.
    pub fn from_edges(
        n: usize,
        dim: usize,
        edges: &BTreeMap<Edge, WeightVector>,
    ) -> Result<Self, AtspError> {
        for u in 0..n {
            for v in 0..n {
                if u != v && !edges.contains_key(&(u, v)) {
                    return Err(AtspError::InvalidGraph(format!(
                        "graph is not complete: edge ({u},{v}) missing"
                    )));
                }
            }
        }
        if let Some(&(u, v)) = edges.keys().find(|&&(u, v)| u == v || u >= n || v >= n) {
            return Err(AtspError::InvalidGraph(format!(
                "edge ({u},{v}) is a self-loop or out of range"
            )));
        }
        Self::from_fn(n, dim, |u, v| edges[&(u, v)].clone())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self, u: usize, v: usize) -> &WeightVector {
        debug_assert!(u != v);
        &self.weights[u * self.n + v]
    }

    /// All ordered pairs `(u, v)` with `u != v`, row-major.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| (0..self.n).filter(move |&v| v != u).map(move |v| (u, v)))
    }

    pub fn edge_set_weight(&self, edges: &[Edge]) -> WeightVector {
        let mut acc = WeightVector::zeros(self.dim);
        for &(u, v) in edges {
            acc.add_assign(self.weight(u, v));
        }
        acc
    }
}

/// Edge set in which no two edges share a vertex (as head or tail). Edges
/// are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching(Vec<Edge>);

impl Matching {
    pub fn new(n: usize, mut edges: Vec<Edge>) -> Result<Self, AtspError> {
        let mut used = vec![false; n];
        for &(u, v) in &edges {
            if u == v || u >= n || v >= n {
                return Err(AtspError::NotMatching(format!("edge ({u},{v}) is invalid")));
            }
            for x in [u, v] {
                if used[x] {
                    return Err(AtspError::NotMatching(format!("vertex {x} is used twice")));
                }
                used[x] = true;
            }
        }
        edges.sort_unstable();
        Ok(Matching(edges))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(u, v)| format!("{}>{}", u + 1, v + 1))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Set of pairwise vertex-disjoint simple paths, each stored as its vertex
/// sequence (at least two vertices), sorted by first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PathSet(Vec<Vec<usize>>);

impl PathSet {
    pub fn empty() -> Self {
        PathSet(Vec::new())
    }

    /// Decomposes an edge set into paths; fails on shared vertices or cycles.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, AtspError> {
        let mut succ = vec![None; n];
        let mut has_pred = vec![false; n];
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(AtspError::NotPathSet(format!("edge ({u},{v}) is invalid")));
            }
            if succ[u].is_some() {
                return Err(AtspError::NotPathSet(format!(
                    "vertex {u} has two outgoing edges"
                )));
            }
            if has_pred[v] {
                return Err(AtspError::NotPathSet(format!(
                    "vertex {v} has two ingoing edges"
                )));
            }
            succ[u] = Some(v);
            has_pred[v] = true;
        }
        let mut paths = Vec::new();
        let mut covered = 0;
        for start in 0..n {
            if has_pred[start] || succ[start].is_none() {
                continue;
            }
            let mut path = vec![start];
            let mut cur = start;
            while let Some(next) = succ[cur] {
                path.push(next);
                cur = next;
                covered += 1;
            }
            paths.push(path);
        }
        if covered != edges.len() {
            return Err(AtspError::NotPathSet("edges contain a cycle".into()));
        }
        Ok(PathSet(paths))
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn num_edges(&self) -> usize {
        self.0.iter().map(|p| p.len() - 1).sum()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.0
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Directed Hamiltonian cycle, stored as its vertex order starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HamiltonianCycle(Vec<usize>);

impl HamiltonianCycle {
    /// Accepts any rotation of a permutation of `0..n`, `n >= 2`.
    pub fn from_order(order: Vec<usize>) -> Result<Self, AtspError> {
        let n = order.len();
        if n < 2 {
            return Err(AtspError::NotHamiltonian(format!("{n} vertices")));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(AtspError::NotHamiltonian(format!(
                    "order {order:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        let zero = order.iter().position(|&v| v == 0).unwrap_or(0);
        let mut order = order;
        order.rotate_left(zero);
        Ok(HamiltonianCycle(order))
    }

    /// Accepts an edge set forming a single directed cycle through all `n` vertices.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, AtspError> {
        if edges.len() != n || n < 2 {
            return Err(AtspError::NotHamiltonian(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut succ = vec![None; n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v || succ[u].is_some() {
                return Err(AtspError::NotHamiltonian(format!(
                    "edge ({u},{v}) breaks the cycle"
                )));
            }
            succ[u] = Some(v);
        }
        let mut order = Vec::with_capacity(n);
        let mut cur = 0;
        for _ in 0..n {
            order.push(cur);
            cur = succ[cur].ok_or_else(|| {
                AtspError::NotHamiltonian(format!("vertex {cur} has no successor"))
            })?;
        }
        if cur != 0 {
            return Err(AtspError::NotHamiltonian(
                "edges do not close a single cycle".into(),
            ));
        }
        Self::from_order(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn num_vertices(&self) -> usize {
        self.0.len()
    }

    /// Edges in traversal order, starting at vertex 0.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.0.len();
        (0..n).map(|i| (self.0[i], self.0[(i + 1) % n])).collect()
    }

    pub fn weight(&self, g: &LabeledDigraph) -> WeightVector {
        g.edge_set_weight(&self.edges())
    }
}

impl fmt::Display for HamiltonianCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        f.write_str(&parts.join(">"))
    }
}

/// A contracted graph together with what is needed to expand cycles back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionRecord {
    pub original_vertices: usize,
    pub paths: PathSet,
    /// Contracted vertex index → original vertex.
    pub remap: Vec<usize>,
    pub graph: LabeledDigraph,
}

impl ContractionRecord {
    pub fn contracted_index(&self, original: usize) -> Option<usize> {
        self.remap.iter().position(|&v| v == original)
    }

    /// Contracts an edge set of the original graph the same way the graph
    /// was contracted: for each contracted edge `(u, v)`, edges at `v` are
    /// dropped except `(v, z)`, which becomes `(u, z)`; other edges leaving
    /// `u` are dropped. Returned edges use contracted indices.
    pub fn contract_edge_set(&self, edges: &[Edge]) -> Vec<Edge> {
        let mut set: BTreeSet<Edge> = edges.iter().copied().collect();
        for path in self.paths.paths() {
            for w in path.windows(2).rev() {
                let (u, v) = (w[0], w[1]);
                set = set
                    .into_iter()
                    .filter_map(|(x, y)| {
                        if x == v && y != u {
                            Some((u, y))
                        } else if x == v || y == v || x == u {
                            None
                        } else {
                            Some((x, y))
                        }
                    })
                    .collect();
            }
        }
        set.into_iter()
            .filter_map(|(x, y)| Some((self.contracted_index(x)?, self.contracted_index(y)?)))
            .collect()
    }
}

/// Contracts every path of `q`, in the path set's own order.
pub fn contract(g: &LabeledDigraph, q: &PathSet) -> Result<ContractionRecord, AtspError> {
    let order: Vec<usize> = (0..q.paths().len()).collect();
    contract_in_order(g, q, &order)
}

/// Contracts the paths of `q` in the given order (a permutation of path
/// indices). The result does not depend on the order.
pub fn contract_in_order(
    g: &LabeledDigraph,
    q: &PathSet,
    order: &[usize],
) -> Result<ContractionRecord, AtspError> {
    let n = g.n;
    // revalidate: q may have been built by hand
    let q = PathSet::from_edges(n, &q.edges())?;
    if order.len() != q.paths().len() || order.iter().collect::<BTreeSet<_>>().len() != order.len()
    {
        return Err(AtspError::NotPathSet(
            "contraction order is not a permutation of the paths".into(),
        ));
    }
    let mut alive = vec![true; n];
    let mut rows: Vec<Vec<WeightVector>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    if u == v {
                        WeightVector::zeros(g.dim)
                    } else {
                        g.weight(u, v).clone()
                    }
                })
                .collect()
        })
        .collect();
    for &pi in order {
        let path = q
            .paths()
            .get(pi)
            .ok_or_else(|| AtspError::NotPathSet(format!("no path {pi}")))?;
        for w in path.windows(2).rev() {
            let (u, v) = (w[0], w[1]);
            alive[v] = false;
            for z in 0..n {
                if z != u && z != v && alive[z] {
                    rows[u][z] = rows[v][z].clone();
                }
            }
        }
    }
    let remap: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let graph =
        LabeledDigraph::from_fn(remap.len(), g.dim, |a, b| rows[remap[a]][remap[b]].clone())?;
    Ok(ContractionRecord {
        original_vertices: n,
        paths: q,
        remap,
        graph,
    })
}

/// Expands a Hamiltonian cycle of the contracted graph to one of the
/// original graph that contains every contracted edge.
pub fn expand(
    rec: &ContractionRecord,
    t: &HamiltonianCycle,
) -> Result<HamiltonianCycle, AtspError> {
    if t.num_vertices() != rec.graph.n {
        return Err(AtspError::NotHamiltonian(format!(
            "cycle has {} vertices, contracted graph has {}",
            t.num_vertices(),
            rec.graph.n
        )));
    }
    let mut edges: BTreeSet<Edge> = t
        .edges()
        .into_iter()
        .map(|(a, b)| (rec.remap[a], rec.remap[b]))
        .collect();
    for path in rec.paths.paths() {
        for w in path.windows(2) {
            let (u, v) = (w[0], w[1]);
            let mut next: BTreeSet<Edge> = edges.iter().copied().filter(|&(x, _)| x != u).collect();
            next.insert((u, v));
            next.extend(edges.iter().filter(|&&(x, _)| x == u).map(|&(_, y)| (v, y)));
            edges = next;
        }
    }
    let edges: Vec<Edge> = edges.into_iter().collect();
    HamiltonianCycle::from_edges(rec.original_vertices, &edges)
}

/// Completes a matching to a Hamiltonian cycle: every matching edge and
/// every unmatched vertex is a fragment, fragments are chained in order of
/// their first vertex and the chain is closed into a cycle.
pub fn extend_to_cycle(n: usize, m: &Matching) -> Result<HamiltonianCycle, AtspError> {
    let mut fragments: Vec<Vec<usize>> = m.edges().iter().map(|&(u, v)| vec![u, v]).collect();
    let mut matched = vec![false; n];
    for &(u, v) in m.edges() {
        matched[u] = true;
        matched[v] = true;
    }
    fragments.extend((0..n).filter(|&v| !matched[v]).map(|v| vec![v]));
    fragments.sort_by_key(|f| f[0]);
    HamiltonianCycle::from_order(fragments.concat())
}

/// Number of matchings (with orientation) in the complete digraph on `n`
/// vertices: `Σ_j C(n, 2j) (2j-1)!! 2^j`.
pub fn matching_count(n: usize) -> u128 {
    let mut total = 0u128;
    let mut j = 0;
    while 2 * j <= n {
        let choose = binomial(n, 2 * j);
        let pairings: u128 = (1..=j as u128).map(|i| 2 * i - 1).product();
        total += choose * pairings * (1u128 << j);
        j += 1;
    }
    total
}

/// Number of path sets with `t` edges in the complete digraph on `n`
/// vertices: the Lah number `L(n, n - t)`.
pub fn path_set_count(n: usize, t: usize) -> u128 {
    if t >= n {
        return u128::from(n == 0 && t == 0);
    }
    let k = n - t;
    let falling: u128 = ((k + 1)..=n).map(|i| i as u128).product();
    binomial(n - 1, k - 1) * falling
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Result of a matching backend call.
#[derive(Debug, Clone)]
pub struct MatchingOutcome {
    pub matchings: SolutionSet<Matching>,
    /// Probability that the set is not a `(1 - ε)`-approximate Pareto set.
    pub failure_probability: f64,
}

/// Source of `(1 - ε)`-approximate Pareto sets of matchings. Must be
/// callable concurrently on distinct graphs.
pub trait MatchingBackend: Sync {
    fn pareto_matchings(
        &self,
        g: &LabeledDigraph,
        eps: Fraction,
    ) -> Result<MatchingOutcome, AtspError>;
}

/// Enumerates all matchings and keeps one representative (the smallest) per
/// Pareto-optimal weight vector. Exact for every ε.
#[derive(Debug, Clone, Copy)]
pub struct ExactMatchingBackend {
    pub vertex_cap: usize,
}

impl Default for ExactMatchingBackend {
    fn default() -> Self {
        ExactMatchingBackend {
            vertex_cap: DEFAULT_MATCHING_CAP,
        }
    }
}

/// Calls `visit` on every matching of the complete digraph on `n` vertices.
pub fn for_each_matching(n: usize, mut visit: impl FnMut(&[Edge])) {
    fn rec(
        free: &mut Vec<bool>,
        from: usize,
        stack: &mut Vec<Edge>,
        visit: &mut dyn FnMut(&[Edge]),
    ) {
        let Some(v) = (from..free.len()).find(|&v| free[v]) else {
            visit(stack);
            return;
        };
        free[v] = false;
        // v stays unmatched
        rec(free, v + 1, stack, visit);
        for u in v + 1..free.len() {
            if !free[u] {
                continue;
            }
            free[u] = false;
            for e in [(v, u), (u, v)] {
                stack.push(e);
                rec(free, v + 1, stack, visit);
                stack.pop();
            }
            free[u] = true;
        }
        free[v] = true;
    }
    let mut free = vec![true; n];
    rec(&mut free, 0, &mut Vec::new(), &mut visit);
}

impl MatchingBackend for ExactMatchingBackend {
    fn pareto_matchings(
        &self,
        g: &LabeledDigraph,
        _eps: Fraction,
    ) -> Result<MatchingOutcome, AtspError> {
        let n = g.n;
        if n > self.vertex_cap {
            return Err(AtspError::VertexCapExceeded {
                what: "exact matching backend",
                n,
                cap: self.vertex_cap,
            });
        }
        // weight -> smallest matching with that weight
        let mut best: BTreeMap<WeightVector, Vec<Edge>> = BTreeMap::new();
        for_each_matching(n, |edges| {
            let w = g.edge_set_weight(edges);
            let mut sorted = edges.to_vec();
            sorted.sort_unstable();
            match best.get_mut(&w) {
                Some(cur) if *cur <= sorted => {}
                Some(cur) => *cur = sorted,
                None => {
                    best.insert(w, sorted);
                }
            }
        });
        let set = SolutionSet::from_entries(best.into_iter().map(|(w, e)| (Matching(e), w)));
        Ok(MatchingOutcome {
            matchings: pareto_filter(set),
            failure_probability: 0.0,
        })
    }
}

/// Pareto set of matchings from the exact backend.
pub fn matching_pareto(
    g: &LabeledDigraph,
    eps: Fraction,
) -> Result<SolutionSet<Matching>, AtspError> {
    Ok(ExactMatchingBackend::default()
        .pareto_matchings(g, eps)?
        .matchings)
}

#[derive(Debug, Clone, Copy)]
pub struct AtspConfig {
    /// Maximum estimated number of enumerated matchings.
    pub budget: u128,
    pub oracle_cap: usize,
}

impl Default for AtspConfig {
    fn default() -> Self {
        AtspConfig {
            budget: DEFAULT_BUDGET,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

fn even_dim(dim: usize) -> usize {
    dim + dim % 2
}

/// Every path set of at most `max_edges` edges whose contraction leaves at
/// least two vertices, optionally restricted to one parity of edge count.
pub fn path_set_candidates(n: usize, max_edges: usize, parity: Option<usize>) -> Vec<PathSet> {
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for size in 0..=max_edges.min(n.saturating_sub(2)) {
        if parity.is_some_and(|p| size % 2 != p) {
            continue;
        }
        for combo in edges.iter().copied().combinations(size) {
            if let Ok(ps) = PathSet::from_edges(n, &combo) {
                out.push(ps);
            }
        }
    }
    out
}

/// Estimated matchings enumerated by [`maxatsp_approx`] on `n` vertices.
pub fn approx_cost(n: usize, dim: usize) -> u128 {
    let max_f = even_dim(dim).min(n.saturating_sub(2));
    (0..=max_f)
        .map(|t| path_set_count(n, t).saturating_mul(matching_count(n - t)))
        .fold(0u128, u128::saturating_add)
}

/// Estimated matchings enumerated by [`maxatsp_half_wrapper`].
pub fn wrapper_cost(n: usize, dim: usize) -> u128 {
    let max_f = even_dim(dim).min(n.saturating_sub(2));
    (0..=max_f)
        .filter(|t| (n - t).is_multiple_of(2))
        .map(|t| path_set_count(n, t).saturating_mul(approx_cost(n - t, dim)))
        .fold(0u128, u128::saturating_add)
}

fn collect_cycles(
    g: &LabeledDigraph,
    cycles: Vec<HamiltonianCycle>,
) -> SolutionSet<HamiltonianCycle> {
    let unique: BTreeSet<HamiltonianCycle> = cycles.into_iter().collect();
    let set = SolutionSet::from_entries(unique.into_iter().map(|c| {
        let w = c.weight(g);
        (c, w)
    }));
    pareto_filter(set)
}

/// ½-approximation (with an exact backend) for an even number of vertices,
/// using the exact matching backend and default budget.
pub fn maxatsp_approx(
    g: &LabeledDigraph,
    eps: Fraction,
) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    maxatsp_approx_with(
        g,
        eps,
        &AtspConfig::default(),
        &ExactMatchingBackend::default(),
    )
}

pub fn maxatsp_approx_with(
    g: &LabeledDigraph,
    eps: Fraction,
    config: &AtspConfig,
    backend: &dyn MatchingBackend,
) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    let n = g.n;
    if n % 2 == 1 {
        return Err(AtspError::OddVertexCount(n));
    }
    let required = approx_cost(n, g.dim);
    if required > config.budget {
        return Err(AtspError::BudgetExceeded {
            required,
            budget: config.budget,
        });
    }
    Ok(collect_cycles(g, approx_cycles(g, eps, backend)?))
}

/// Raw (unfiltered) output cycles of the approximation loop.
fn approx_cycles(
    g: &LabeledDigraph,
    eps: Fraction,
    backend: &dyn MatchingBackend,
) -> Result<Vec<HamiltonianCycle>, AtspError> {
    let candidates = path_set_candidates(g.n, even_dim(g.dim), None);
    let per_f: Vec<Vec<HamiltonianCycle>> = candidates
        .par_iter()
        .map(|f| {
            let rec = contract(g, f)?;
            let outcome = backend.pareto_matchings(&rec.graph, eps)?;
            outcome
                .matchings
                .iter()
                .map(|(m, _)| expand(&rec, &extend_to_cycle(rec.graph.n, m)?))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(per_f.into_iter().flatten().collect())
}

/// ½-approximation that also absorbs the loss of an approximate matching
/// backend: guesses a small set of heavy edges (even cardinality for even
/// `|V|`, odd for odd `|V|`), contracts it, runs the approximation with
/// `ε = 1/|V|` and expands the results. The odd-`|V|` path is experimental.
pub fn maxatsp_half_wrapper(
    g: &LabeledDigraph,
) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    maxatsp_half_wrapper_with(g, &AtspConfig::default(), &ExactMatchingBackend::default())
}

pub fn maxatsp_half_wrapper_with(
    g: &LabeledDigraph,
    config: &AtspConfig,
    backend: &dyn MatchingBackend,
) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    let n = g.n;
    if n < 2 {
        return Err(AtspError::InvalidGraph("need at least two vertices".into()));
    }
    let required = wrapper_cost(n, g.dim);
    if required > config.budget {
        return Err(AtspError::BudgetExceeded {
            required,
            budget: config.budget,
        });
    }
    let eps = Fraction::new(1, n as u64).expect("n >= 2");
    let outer = path_set_candidates(n, even_dim(g.dim), Some(n % 2));
    let mut cycles = Vec::new();
    for f in &outer {
        let rec = contract(g, f)?;
        for t in approx_cycles(&rec.graph, eps, backend)? {
            cycles.push(expand(&rec, &t)?);
        }
    }
    Ok(collect_cycles(g, cycles))
}

/// Exact Pareto set over all `(n-1)!` Hamiltonian cycles.
pub fn tsp_oracle(g: &LabeledDigraph) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    tsp_oracle_with(g, DEFAULT_ORACLE_CAP)
}

pub fn tsp_oracle_with(
    g: &LabeledDigraph,
    cap: usize,
) -> Result<SolutionSet<HamiltonianCycle>, AtspError> {
    let n = g.n;
    if n > cap {
        return Err(AtspError::VertexCapExceeded {
            what: "cycle oracle",
            n,
            cap,
        });
    }
    if n < 2 {
        return Err(AtspError::InvalidGraph("need at least two vertices".into()));
    }
    let set = SolutionSet::from_entries((1..n).permutations(n - 1).map(|rest| {
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend(rest);
        let c = HamiltonianCycle(order);
        let w = c.weight(g);
        (c, w)
    }));
    Ok(pareto_filter(set))
}

/// The matching that the approximation's correctness argument exhibits for
/// a fixed Hamiltonian cycle `T`.
#[derive(Debug, Clone)]
pub struct ClaimWitness {
    /// Edges `e_{a_j}` and `f_{b_j}`, at most `d` of them.
    pub f: PathSet,
    /// `{f_{b_j}} ∪ {e_i : i ∈ I} ∪ {f_i : i ∉ I}`.
    pub s: Vec<Edge>,
    pub contraction: ContractionRecord,
    /// `contract_F(S)`, in contracted indices.
    pub matching: Vec<Edge>,
}

impl ClaimWitness {
    /// `w'(M') >= ½w(T) - w(F)`, checked as `2w'(M') + 2w(F) >= w(T)`.
    pub fn bound_holds(&self, g: &LabeledDigraph, t: &HamiltonianCycle) -> bool {
        let wm = self.contraction.graph.edge_set_weight(&self.matching);
        let wf = g.edge_set_weight(&self.f.edges());
        let wt = t.weight(g);
        (0..g.dim).all(|c| 2 * wm[c] + 2 * wf[c] >= wt[c])
    }
}

/// Builds the witness for `t`: writes `T = e_1 f_1 e_2 f_2 .. e_p f_p`,
/// balances the `e` weights against the `f` weights with at most `d/2`
/// intervals, and contracts the resulting heavy edges.
pub fn claim_witness(g: &LabeledDigraph, t: &HamiltonianCycle) -> Result<ClaimWitness, AtspError> {
    let n = g.n;
    if t.num_vertices() != n {
        return Err(AtspError::NotHamiltonian(format!(
            "cycle has {} vertices, graph {n}",
            t.num_vertices()
        )));
    }
    if n % 2 == 1 {
        return Err(AtspError::OddVertexCount(n));
    }
    let d = even_dim(g.dim);
    let edges = t.edges();
    let e: Vec<Edge> = edges.iter().copied().step_by(2).collect();
    let f: Vec<Edge> = edges.iter().copied().skip(1).step_by(2).collect();
    let x = e.iter().map(|&(u, v)| g.weight(u, v).padded(d)).collect();
    let y = f.iter().map(|&(u, v)| g.weight(u, v).padded(d)).collect();
    let res = balance_combinatorial(&BalancingInstance::combinatorial(d / 2, x, y))?;
    let inside = res.family.members(crate::balancing::Variant::Combinatorial);
    let mut s: BTreeSet<Edge> = BTreeSet::new();
    let mut heavy = Vec::new();
    for &(a, b) in &res.family.intervals {
        s.insert(f[b - 1]);
        heavy.push(e[a - 1]);
        heavy.push(f[b - 1]);
    }
    for i in 0..e.len() {
        s.insert(if inside[i] { e[i] } else { f[i] });
    }
    let fset = PathSet::from_edges(n, &heavy)?;
    if fset.num_edges() + 2 > n {
        return Err(AtspError::NotPathSet(
            "heavy edges leave fewer than two vertices".into(),
        ));
    }
    let contraction = contract(g, &fset)?;
    let s: Vec<Edge> = s.into_iter().collect();
    let matching = contraction.contract_edge_set(&s);
    Ok(ClaimWitness {
        f: fset,
        s,
        contraction,
        matching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(c: &[i64]) -> WeightVector {
        WeightVector::new(c.to_vec())
    }

    /// Vertices u=0, v=1, x=2, y=3 of the worked contraction example.
    fn figure_graph() -> LabeledDigraph {
        let table = [
            ((0, 3), 1),
            ((3, 0), 5),
            ((3, 1), 1),
            ((1, 3), 3),
            ((1, 2), 1),
            ((2, 1), 1),
            ((2, 0), 1),
            ((0, 2), 1),
            ((0, 1), 2),
            ((1, 0), 1),
            ((3, 2), 7),
            ((2, 3), 1),
        ];
        let map: BTreeMap<Edge, WeightVector> = table.iter().map(|&(e, w)| (e, wv(&[w]))).collect();
        LabeledDigraph::from_edges(4, 1, &map).unwrap()
    }

    #[test]
    fn figure_contraction() {
        let g = figure_graph();
        let q = PathSet::from_edges(4, &[(0, 1), (1, 3)]).unwrap();
        let rec = contract(&g, &q).unwrap();
        assert_eq!(rec.remap, vec![0, 2]);
        assert_eq!(rec.graph.weight(0, 1), &wv(&[7]));
        assert_eq!(rec.graph.weight(1, 0), &wv(&[1]));
        let t = HamiltonianCycle::from_order(vec![0, 1]).unwrap();
        let full = expand(&rec, &t).unwrap();
        assert_eq!(full.order(), &[0, 1, 3, 2]);
        assert_eq!(full.weight(&g), wv(&[13]));
        assert_eq!(t.weight(&rec.graph), wv(&[8]));
        assert_eq!(g.edge_set_weight(&q.edges()), wv(&[5]));
    }

    #[test]
    fn empty_contraction_is_identity() {
        let g = figure_graph();
        let rec = contract(&g, &PathSet::empty()).unwrap();
        assert_eq!(rec.graph, g);
        let t = HamiltonianCycle::from_order(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(expand(&rec, &t).unwrap(), t);
    }

    #[test]
    fn path_set_validation() {
        assert!(PathSet::from_edges(4, &[(0, 1), (1, 0)]).is_err());
        assert!(PathSet::from_edges(4, &[(0, 1), (0, 2)]).is_err());
        assert!(PathSet::from_edges(4, &[(0, 1), (2, 1)]).is_err());
        let ps = PathSet::from_edges(5, &[(3, 4), (1, 2), (2, 3)]).unwrap();
        assert_eq!(ps.paths(), &[vec![1, 2, 3, 4]]);
    }

    #[test]
    fn cycle_validation() {
        assert!(HamiltonianCycle::from_order(vec![0, 0]).is_err());
        assert!(HamiltonianCycle::from_edges(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]).is_err());
        let c = HamiltonianCycle::from_edges(3, &[(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(c.order(), &[0, 1, 2]);
    }

    #[test]
    fn expand_rejects_wrong_size() {
        let g = figure_graph();
        let rec = contract(&g, &PathSet::from_edges(4, &[(0, 1)]).unwrap()).unwrap();
        let t = HamiltonianCycle::from_order(vec![0, 1]).unwrap();
        assert!(matches!(
            expand(&rec, &t),
            Err(AtspError::NotHamiltonian(_))
        ));
    }

    #[test]
    fn two_vertex_matchings() {
        let map: BTreeMap<Edge, WeightVector> = [((0, 1), wv(&[3, 1])), ((1, 0), wv(&[1, 3]))]
            .into_iter()
            .collect();
        let g = LabeledDigraph::from_edges(2, 2, &map).unwrap();
        let p = matching_pareto(&g, Fraction::ZERO).unwrap();
        let got: Vec<_> = p.iter().map(|(m, _)| m.edges().to_vec()).collect();
        assert_eq!(got, vec![vec![(1, 0)], vec![(0, 1)]]);
    }

    #[test]
    fn zero_graph_single_matching() {
        let g = LabeledDigraph::from_fn(4, 2, |_, _| wv(&[0, 0])).unwrap();
        let p = matching_pareto(&g, Fraction::ZERO).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.entries()[0].1, wv(&[0, 0]));
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 0..=7 {
            let mut c = 0u128;
            for_each_matching(n, |_| c += 1);
            assert_eq!(c, matching_count(n), "n={n}");
        }
        for n in 2..=5 {
            for t in 0..n {
                let brute = path_set_candidates_all(n, t);
                assert_eq!(brute, path_set_count(n, t), "n={n} t={t}");
            }
        }
    }

    fn path_set_candidates_all(n: usize, t: usize) -> u128 {
        let edges: Vec<Edge> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        edges
            .into_iter()
            .combinations(t)
            .filter(|c| PathSet::from_edges(n, c).is_ok())
            .count() as u128
    }

    #[test]
    fn extension_keeps_matching() {
        let m = Matching::new(6, vec![(4, 1), (2, 5)]).unwrap();
        let c = extend_to_cycle(6, &m).unwrap();
        let edges = c.edges();
        assert!(edges.contains(&(4, 1)) && edges.contains(&(2, 5)));
        assert_eq!(c.order(), &[0, 2, 5, 3, 4, 1]);
    }

    #[test]
    fn oracle_small() {
        let g = LabeledDigraph::from_fn(2, 1, |_, _| wv(&[1])).unwrap();
        assert_eq!(tsp_oracle(&g).unwrap().len(), 1);
        let g = LabeledDigraph::from_fn(3, 2, |u, v| wv(&[(u * 3 + v) as i64, (v * 3 + u) as i64]))
            .unwrap();
        let o = tsp_oracle(&g).unwrap();
        // the two orientations are incomparable
        assert_eq!(o.len(), 2);
    }

    #[test]
    fn odd_vertices_rejected() {
        let g = LabeledDigraph::from_fn(5, 2, |_, _| wv(&[1, 1])).unwrap();
        assert_eq!(
            maxatsp_approx(&g, Fraction::ZERO),
            Err(AtspError::OddVertexCount(5))
        );
        // the wrapper accepts odd counts
        assert!(!maxatsp_half_wrapper(&g).unwrap().is_empty());
    }

    #[test]
    fn uniform_weights_exact() {
        let g = LabeledDigraph::from_fn(4, 2, |_, _| wv(&[3, 3])).unwrap();
        let out = maxatsp_approx(&g, Fraction::ZERO).unwrap();
        assert!(out.weights().all(|w| *w == wv(&[12, 12])));
    }

    #[test]
    fn budget_guard() {
        let g = LabeledDigraph::from_fn(8, 2, |_, _| wv(&[1, 1])).unwrap();
        let cfg = AtspConfig {
            budget: 1000,
            ..Default::default()
        };
        assert!(matches!(
            maxatsp_approx_with(&g, Fraction::ZERO, &cfg, &ExactMatchingBackend::default()),
            Err(AtspError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn incomplete_graph_rejected() {
        let map: BTreeMap<Edge, WeightVector> = [((0, 1), wv(&[1]))].into_iter().collect();
        assert!(LabeledDigraph::from_edges(2, 1, &map).is_err());
        assert!(LabeledDigraph::from_fn(2, 1, |_, _| wv(&[-1])).is_err());
    }
}
