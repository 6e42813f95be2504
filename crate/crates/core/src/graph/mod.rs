//! Simple undirected unweighted graphs over a fixed vertex universe `0..n`.
//!
//! A [`Graph`] is immutable once built. Subgraphs (spanners) are ordinary
//! graphs over the same vertex count, so every BFS routine applies to both.

mod bfs;
mod cycle;
mod paths;
mod spanner;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bfs::{bfs, bfs_restricted, distance, distance_avoiding, DistView};
pub use cycle::{girth, girth_and_smallest_cycle, OrientedCycle};
pub use paths::{count_shortest_paths_avoiding, max_cycle_overlap_path};
pub use spanner::{
    is_k_spanner, is_k_spanner_all_pairs, spanner_violations, stretch_holds, SpannerInstance,
};

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Panics on a self-loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("self-loop")
    }

    pub fn try_new(u: usize, v: usize) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Some(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from(value: [usize; 2]) -> std::result::Result<Self, Self::Error> {
        Edge::try_new(value[0], value[1]).ok_or_else(|| format!("self-loop at {}", value[0]))
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from endpoint pairs, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            let e = Edge::try_new(u, v)
                .ok_or_else(|| Error::input(format!("self-loop at vertex {u}")))?;
            edges.push(e);
        }
        Self::from_edge_vec(n, edges)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Self::from_edge_vec(n, edges.into_iter().collect())
    }

    fn from_edge_vec(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge {}", w[0])));
        }
        if let Some(e) = edges.iter().find(|e| e.hi >= n) {
            return Err(Error::input(format!(
                "edge {e} has an endpoint outside 0..{n}"
            )));
        }
        Ok(Self::from_sorted_unchecked(n, edges))
    }

    /// `edges` must be sorted, duplicate-free and in range.
    fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.lo].push(e.hi);
            adj[e.hi].push(e.lo);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.hi < self.n && self.adj[e.lo].binary_search(&e.hi).is_ok()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn without_edge(&self, e: Edge) -> Graph {
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Self::from_sorted_unchecked(self.n, edges)
    }

    pub fn without_edges(&self, removed: &BTreeSet<Edge>) -> Graph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|f| !removed.contains(f))
            .collect();
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// Adds `e` (a no-op if already present). Panics if `e` is out of range.
    pub fn with_edge(&self, e: Edge) -> Graph {
        assert!(e.hi < self.n, "edge {e} out of range");
        let mut edges = self.edges.clone();
        if let Err(pos) = edges.binary_search(&e) {
            edges.insert(pos, e);
        }
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// The spanning subgraph keeping only `keep`, which must be a subset of this graph's edges.
    pub fn edge_subgraph(&self, keep: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let sub = Graph::from_edges(self.n, keep)?;
        if let Some(e) = sub.edges.iter().find(|e| !self.has_edge(**e)) {
            return Err(Error::invariant(format!("edge {e} is not in the base graph")));
        }
        Ok(sub)
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&e| other.has_edge(e))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut comps = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![root];
            label[root] = id;
            let mut head = 0;
            while head < members.len() {
                let v = members[head];
                head += 1;
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| index[e.lo] != usize::MAX && index[e.hi] != usize::MAX)
            .map(|e| Edge::new(index[e.lo], index[e.hi]))
            .collect();
        edges.sort_unstable();
        Self::from_sorted_unchecked(vertices.len(), edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid K_n")
    }

    pub fn star(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (0, v))).expect("valid star")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_duplicates_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::new(4, [(2, 0), (0, 1), (3, 2)]).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(2, 3)]);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(2), &[0, 3]);
        let total: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn edge_mutations() {
        let g = named::cycle(4);
        let h = g.without_edge(Edge::new(0, 3));
        assert_eq!(h.m(), 3);
        assert!(!h.has_edge(Edge::new(3, 0)));
        assert_eq!(h.with_edge(Edge::new(0, 3)), g);
        assert!(h.is_subgraph_of(&g));
        assert!(g.edge_subgraph([Edge::new(0, 2)]).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        let sub = g.induced(&[3, 4]);
        assert_eq!(sub.edges(), &[Edge::new(0, 1)]);
    }

    #[test]
    fn edge_serde_is_a_pair() {
        let e = Edge::new(5, 2);
        assert_eq!(serde_json::to_string(&e).unwrap(), "[2,5]");
        let back: Edge = serde_json::from_str("[5,2]").unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<Edge>("[1,1]").is_err());
    }
}
