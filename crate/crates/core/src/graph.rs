//! The weighted digraph of a timely constraint and the shortest-path engines
//! run on it.
//!
//! There is one vertex per action and an edge `i -> j` of weight `b` for every
//! finite stored bound `t(j) - t(i) <= b`. Distances in this graph are the
//! tightest bounds implied by the constraint.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::{Bound, Rational};
use crate::spec::TimelySpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    outgoing: Vec<Vec<usize>>,
}

impl ConstraintGraph {
    pub fn new(vertex_count: usize) -> Self {
        ConstraintGraph {
            vertex_count,
            edges: Vec::new(),
            outgoing: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from `(from, to, weight)` triples. Parallel edges keep
    /// the smallest weight.
    ///
    /// # Panics
    ///
    /// On self-loops or out-of-range endpoints.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut graph = ConstraintGraph::new(vertex_count);
        for (from, to, weight) in edges {
            graph.add_edge(from, to, weight);
        }
        graph
    }

    /// Inserts `from -> to`, or lowers its weight if the edge already exists.
    pub fn add_edge(&mut self, from: usize, to: usize, weight: Rational) {
        assert!(from < self.vertex_count && to < self.vertex_count);
        assert_ne!(from, to, "constraint graphs have no self-loops");
        if let Some(&k) = self.outgoing[from].iter().find(|&&k| self.edges[k].to == to) {
            if weight < self.edges[k].weight {
                self.edges[k].weight = weight;
            }
            return;
        }
        self.outgoing[from].push(self.edges.len());
        self.edges.push(Edge { from, to, weight });
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn outgoing(&self, vertex: usize) -> impl Iterator<Item = &Edge> {
        self.outgoing[vertex].iter().map(move |&k| &self.edges[k])
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<&Rational> {
        self.outgoing(from).find(|e| e.to == to).map(|e| &e.weight)
    }

    /// The graph of the finite entries of `spec`, plus the pairs bounded by
    /// `-inf` (which cannot be edges).
    pub(crate) fn finite_part(spec: &TimelySpec) -> (Self, Vec<(usize, usize)>) {
        let mut graph = ConstraintGraph::new(spec.action_count());
        let mut neg_inf = Vec::new();
        for (i, j, bound) in spec.entries() {
            match bound {
                Bound::Finite(w) => graph.add_edge(i, j, w.clone()),
                Bound::NegInf => neg_inf.push((i, j)),
                Bound::PosInf => unreachable!("specs never store +inf"),
            }
        }
        (graph, neg_inf)
    }
}

/// The constraint graph of `spec`. Fails if any bound is `-inf`.
pub fn build_graph(spec: &TimelySpec) -> Result<ConstraintGraph> {
    let (graph, neg_inf) = ConstraintGraph::finite_part(spec);
    match neg_inf.first() {
        Some(&(i, j)) => Err(Error::NegInfEntry {
            from: spec.action(i).to_owned(),
            to: spec.action(j).to_owned(),
        }),
        None => Ok(graph),
    }
}

/// A dense `n x n` matrix of extended distances, diagonal included.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<Bound>,
}

impl DistanceMatrix {
    /// Zero diagonal, `+inf` everywhere else.
    pub fn unconstrained(size: usize) -> Self {
        let mut entries = vec![Bound::PosInf; size * size];
        for i in 0..size {
            entries[i * size + i] = Bound::ZERO;
        }
        DistanceMatrix { size, entries }
    }

    pub fn filled(size: usize, value: Bound) -> Self {
        DistanceMatrix {
            size,
            entries: vec![value; size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Bound>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        DistanceMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Bound {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Bound) {
        self.entries[i * self.size + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Bound] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Bound]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    /// Entries in row-major order with their coordinates.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Bound)> {
        let n = self.size;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, b)| (k / n, k % n, b))
    }
}

impl Index<(usize, usize)> for DistanceMatrix {
    type Output = Bound;

    fn index(&self, (i, j): (usize, usize)) -> &Bound {
        self.get(i, j)
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// A directed cycle of negative total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycleWitness {
    /// Vertices in traversal order; the edge from the last back to the first
    /// closes the cycle. Starts at the smallest index on the cycle.
    pub cycle: Vec<usize>,
    pub total_weight: Rational,
}

impl NegativeCycleWitness {
    /// Re-checks the witness against `graph`: every step is an edge and the
    /// weights sum to a negative `total_weight`.
    pub fn validate(&self, graph: &ConstraintGraph) -> bool {
        if self.cycle.is_empty() {
            return false;
        }
        let mut sum = Rational::ZERO;
        for (k, &u) in self.cycle.iter().enumerate() {
            let v = self.cycle[(k + 1) % self.cycle.len()];
            match graph.weight(u, v) {
                Some(w) => sum = &sum + w,
                None => return false,
            }
        }
        sum == self.total_weight && sum.is_negative()
    }
}

/// Which negative cycles make [`bellman_ford`] fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMode {
    /// Only cycles reachable from the source.
    Reachable,
    /// Any cycle in the graph (searched from a virtual source joined to every
    /// vertex by a zero-weight edge).
    Global,
}

/// Single-source shortest distances from `source`, `+inf` for unreachable
/// vertices, or a negative cycle per `mode`.
pub fn bellman_ford(
    graph: &ConstraintGraph,
    source: usize,
    mode: DetectionMode,
) -> std::result::Result<Vec<Bound>, NegativeCycleWitness> {
    assert!(source < graph.vertex_count, "source out of range");
    if mode == DetectionMode::Global {
        relax_to_fixpoint(graph, None)?;
    }
    relax_to_fixpoint(graph, Some(source))
}

/// Any negative cycle of `graph`, or `None` if there is none.
pub fn find_negative_cycle(graph: &ConstraintGraph) -> Option<NegativeCycleWitness> {
    relax_to_fixpoint(graph, None).err()
}

/// Bellman-Ford relaxation from `source`, or from a virtual source at
/// distance 0 to every vertex when `source` is `None`.
fn relax_to_fixpoint(
    graph: &ConstraintGraph,
    source: Option<usize>,
) -> std::result::Result<Vec<Bound>, NegativeCycleWitness> {
    let n = graph.vertex_count;
    let mut dist = match source {
        Some(s) => {
            let mut d = vec![Bound::PosInf; n];
            d[s] = Bound::ZERO;
            d
        }
        None => vec![Bound::ZERO; n],
    };
    // Index of the edge that last lowered each vertex.
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut changing_rounds = 0;
    loop {
        let mut changed = false;
        for (k, edge) in graph.edges.iter().enumerate() {
            let Bound::Finite(du) = &dist[edge.from] else {
                continue;
            };
            let candidate = du + &edge.weight;
            let lower = match &dist[edge.to] {
                Bound::Finite(dv) => candidate < *dv,
                _ => true,
            };
            if lower {
                dist[edge.to] = Bound::Finite(candidate);
                pred[edge.to] = Some(k);
                changed = true;
            }
        }
        if !changed {
            return Ok(dist);
        }
        changing_rounds += 1;
        // Shortest paths have at most n - 1 edges (n with the virtual
        // source), so n changing rounds prove a negative cycle. It shows up in
        // the predecessor graph after finitely many further rounds.
        if changing_rounds >= n {
            if let Some(witness) = predecessor_cycle(graph, &pred) {
                return Err(witness);
            }
        }
    }
}

fn predecessor_cycle(graph: &ConstraintGraph, pred: &[Option<usize>]) -> Option<NegativeCycleWitness> {
    let n = graph.vertex_count;
    let mut stamp: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        let mut v = start;
        loop {
            match stamp[v] {
                Some(s) if s == start => {
                    if let Some(w) = cycle_through(graph, pred, v) {
                        return Some(w);
                    }
                    break;
                }
                Some(_) => break,
                None => stamp[v] = Some(start),
            }
            match pred[v] {
                Some(k) => v = graph.edges[k].from,
                None => break,
            }
        }
    }
    None
}

fn cycle_through(graph: &ConstraintGraph, pred: &[Option<usize>], on_cycle: usize) -> Option<NegativeCycleWitness> {
    let mut backwards = vec![on_cycle];
    let mut total = Rational::ZERO;
    let mut v = on_cycle;
    loop {
        let edge = &graph.edges[pred[v]?];
        total = &total + &edge.weight;
        v = edge.from;
        if v == on_cycle {
            break;
        }
        backwards.push(v);
    }
    if !total.is_negative() {
        return None;
    }
    backwards.reverse();
    let start = backwards
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(k, _)| k)
        .unwrap_or(0);
    backwards.rotate_left(start);
    Some(NegativeCycleWitness {
        cycle: backwards,
        total_weight: total,
    })
}

/// All-pairs distances by Floyd-Warshall.
///
/// Pairs joined by a walk through a negative cycle get `-inf`, so the result
/// is the exact distance function even when negative cycles exist.
pub fn floyd_warshall(graph: &ConstraintGraph) -> DistanceMatrix {
    let n = graph.vertex_count;
    let mut dist = DistanceMatrix::unconstrained(n);
    for e in &graph.edges {
        dist.set(e.from, e.to, Bound::Finite(e.weight.clone()));
    }
    let d = &mut dist.entries;
    for k in 0..n {
        for i in 0..n {
            let Bound::Finite(dik) = &d[i * n + k] else {
                continue;
            };
            let dik = dik.clone();
            for j in 0..n {
                let Bound::Finite(dkj) = &d[k * n + j] else {
                    continue;
                };
                let through = &dik + dkj;
                let slot = &mut d[i * n + j];
                let better = match slot {
                    Bound::Finite(dij) => through < *dij,
                    _ => true,
                };
                if better {
                    *slot = Bound::Finite(through);
                }
            }
        }
    }
    propagate_negative_cycles(&mut dist);
    dist
}

/// Marks every pair routed through a negative-diagonal vertex as `-inf`.
fn propagate_negative_cycles(dist: &mut DistanceMatrix) {
    let n = dist.size;
    let on_cycle: Vec<usize> = (0..n)
        .filter(|&k| *dist.get(k, k) < Bound::ZERO)
        .collect();
    if on_cycle.is_empty() {
        return;
    }
    let reaches = |dist: &DistanceMatrix, i: usize, j: usize| *dist.get(i, j) != Bound::PosInf;
    let mut marked = vec![false; n * n];
    for &k in &on_cycle {
        let sources: Vec<usize> = (0..n).filter(|&i| reaches(dist, i, k)).collect();
        let targets: Vec<usize> = (0..n).filter(|&j| reaches(dist, k, j)).collect();
        for &i in &sources {
            for &j in &targets {
                marked[i * n + j] = true;
            }
        }
    }
    for (slot, mark) in dist.entries.iter_mut().zip(marked) {
        if mark {
            *slot = Bound::NegInf;
        }
    }
}

/// All-pairs distances by reweighting with Bellman-Ford potentials and running
/// Dijkstra from every source. Produces exactly the same matrix as
/// [`floyd_warshall`]; with a negative cycle it delegates to it.
pub fn sparse_apsp(graph: &ConstraintGraph) -> DistanceMatrix {
    let potential = match relax_to_fixpoint(graph, None) {
        Ok(p) => p,
        Err(_) => return floyd_warshall(graph),
    };
    let potential: Vec<Rational> = potential
        .into_iter()
        .map(|b| b.as_finite().cloned().expect("virtual source reaches every vertex"))
        .collect();
    let n = graph.vertex_count;
    let reduced: Vec<Rational> = graph
        .edges
        .iter()
        .map(|e| &(&e.weight + &potential[e.from]) - &potential[e.to])
        .collect();
    debug_assert!(reduced.iter().all(|w| !w.is_negative()));

    let mut dist = DistanceMatrix::filled(n, Bound::PosInf);
    let mut settled: Vec<Option<Rational>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for s in 0..n {
        settled.iter_mut().for_each(|d| *d = None);
        let mut best: Vec<Option<Rational>> = vec![None; n];
        best[s] = Some(Rational::ZERO);
        heap.push(Reverse((Rational::ZERO, s)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if settled[u].is_some() || best[u].as_ref() != Some(&d) {
                continue;
            }
            for &k in &graph.outgoing[u] {
                let v = graph.edges[k].to;
                if settled[v].is_some() {
                    continue;
                }
                let candidate = &d + &reduced[k];
                if best[v].as_ref().map_or(true, |b| candidate < *b) {
                    best[v] = Some(candidate.clone());
                    heap.push(Reverse((candidate, v)));
                }
            }
            settled[u] = Some(d);
        }
        for (v, d) in settled.iter().enumerate() {
            if let Some(d) = d {
                let real = &(d - &potential[s]) + &potential[v];
                dist.set(s, v, Bound::Finite(real));
            }
        }
    }
    dist
}

/// Which all-pairs algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// [`sparse_apsp`] for graphs with fewer than `n^2 / 8` edges,
    /// [`floyd_warshall`] otherwise.
    #[default]
    Auto,
    Dense,
    Sparse,
}

impl Engine {
    pub fn all_pairs(self, graph: &ConstraintGraph) -> DistanceMatrix {
        let n = graph.vertex_count;
        let sparse = match self {
            Engine::Auto => graph.edge_count() * 8 < n * n,
            Engine::Dense => false,
            Engine::Sparse => true,
        };
        if sparse {
            sparse_apsp(graph)
        } else {
            floyd_warshall(graph)
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "dense" => Ok(Engine::Dense),
            "sparse" => Ok(Engine::Sparse),
            other => Err(Error::Parse(format!("unknown engine `{other}`"))),
        }
    }
}
