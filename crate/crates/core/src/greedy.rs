//! The greedy k-spanner and its converse.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{BitGraph, MAX_VERTICES};
use crate::error::{Error, ReconstructFailure, Result};
use crate::graph::{girth, spanner_violations, Edge, Graph, SpannerInstance};

/// A permutation of a graph's edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeOrdering {
    edges: Vec<Edge>,
}

impl EdgeOrdering {
    pub fn lex(g: &Graph) -> Self {
        EdgeOrdering {
            edges: g.edges().to_vec(),
        }
    }

    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::shuffled(g, &mut rng)
    }

    pub fn shuffled(g: &Graph, rng: &mut impl rand::Rng) -> Self {
        let mut edges = g.edges().to_vec();
        edges.shuffle(rng);
        EdgeOrdering { edges }
    }

    /// Rejects sequences that are not a permutation of `g`'s edges.
    pub fn from_edges(g: &Graph, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &e in &edges {
            if !g.has_edge(e) {
                return Err(Error::input(format!("ordering lists {e}, which is not an edge")));
            }
            if !seen.insert(e) {
                return Err(Error::input(format!("ordering lists {e} twice")));
            }
        }
        if seen.len() != g.m() {
            return Err(Error::input(format!(
                "ordering covers {} of {} edges",
                seen.len(),
                g.m()
            )));
        }
        Ok(EdgeOrdering { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Incrementally built subgraph with a reusable bounded BFS.
struct Partial {
    adj: Vec<Vec<usize>>,
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<(usize, usize)>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Partial {
            adj: vec![Vec::new(); n],
            mark: vec![0; n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    fn within(&mut self, s: usize, t: usize, k: usize) -> bool {
        self.epoch += 1;
        self.queue.clear();
        self.mark[s] = self.epoch;
        self.queue.push_back((s, 0));
        while let Some((v, d)) = self.queue.pop_front() {
            if v == t {
                return true;
            }
            if d == k {
                continue;
            }
            for &w in &self.adj[v] {
                if self.mark[w] != self.epoch {
                    self.mark[w] = self.epoch;
                    self.queue.push_back((w, d + 1));
                }
            }
        }
        false
    }

    fn add(&mut self, e: Edge) {
        self.adj[e.lo()].push(e.hi());
        self.adj[e.hi()].push(e.lo());
    }
}

/// Scans `order`, keeping an edge exactly when its endpoints are farther than
/// `k` apart in the edges kept so far.
pub fn greedy_spanner(g: &Graph, k: usize, order: &EdgeOrdering) -> Result<SpannerInstance> {
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    if order.edges.len() != g.m() || order.edges.iter().any(|&e| !g.has_edge(e)) {
        return Err(Error::input("ordering is not a permutation of the graph's edges"));
    }
    let mut h = Partial::new(g.n());
    let mut kept = Vec::new();
    for &e in &order.edges {
        if !h.within(e.lo(), e.hi(), k) {
            h.add(e);
            kept.push(e);
        }
    }
    SpannerInstance::from_edges(g.clone(), k, kept)
}

/// Deletes edges in `order` whenever the rest still spans `g` with stretch `k`.
/// The result is inclusion-minimal: no single edge can be dropped.
pub fn reverse_delete(g: &Graph, k: usize, order: &EdgeOrdering) -> Result<SpannerInstance> {
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    let mut h = g.clone();
    for &e in &order.edges {
        let trial = h.without_edge(e);
        if crate::graph::is_k_spanner(g, &trial, k) {
            h = trial;
        }
    }
    SpannerInstance::new(g.clone(), k, h)
}

/// An ordering on which greedy outputs exactly `inst.sub`: its edges first
/// (lexicographically), then the rest of the base graph.
pub fn ordering_for_spanner(inst: &SpannerInstance) -> Result<EdgeOrdering> {
    if let Some(e) = spanner_violations(&inst.base, &inst.sub, inst.k, None).first() {
        return Err(Error::NotReconstructible(ReconstructFailure::Stretch {
            u: e.lo(),
            v: e.hi(),
        }));
    }
    if let Some(gi) = girth(&inst.sub) {
        if gi < inst.k + 2 {
            return Err(Error::NotReconstructible(ReconstructFailure::Girth {
                girth: gi,
                required: inst.k + 2,
            }));
        }
    }
    let mut edges = inst.sub.edges().to_vec();
    edges.extend(inst.base.edges().iter().filter(|&&e| !inst.sub.has_edge(e)));
    Ok(EdgeOrdering { edges })
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyMin {
    pub size: usize,
    pub ordering: EdgeOrdering,
    /// True when the search budget ran out, so `size` is only an upper bound.
    pub sampled: bool,
    pub explored: u64,
}

/// Fewest edges greedy can output on `g` over all edge orderings.
///
/// The outputs of greedy over all orderings are exactly the k-spanners of `g` whose
/// girth is at least `k + 2`: every intermediate state has that girth, a skipped edge
/// stays skippable, and any such subgraph is reached by listing its edges first. The
/// search therefore walks subgraphs of girth `>= k + 2` instead of `m!` permutations.
/// After `budget` search nodes it stops, samples `budget` random orderings (seeded by
/// `seed`) and reports the best seen with `sampled = true`.
pub fn exhaustive_greedy_min(g: &Graph, k: usize, budget: u64, seed: u64) -> Result<GreedyMin> {
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    let lex = greedy_spanner(g, k, &EdgeOrdering::lex(g))?;
    let mut best = lex.sub.clone();
    let mut explored = 0;
    let exhausted;

    if g.n() <= MAX_VERTICES && g.m() <= 64 {
        let mut search = Search {
            edges: g.edges(),
            k,
            target_components: g.component_count(),
            budget,
            explored: 0,
            best_mask: None,
            best_size: best.m(),
        };
        let mut state = BitGraph::empty(g.n());
        exhausted = !search.dfs(&mut state, 0, 0, 0, g.n());
        explored = search.explored;
        if let Some(mask) = search.best_mask {
            best = Graph::from_edges(
                g.n(),
                g.edges().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            )?;
        }
    } else {
        exhausted = true;
    }

    if exhausted {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let order = EdgeOrdering::shuffled(g, &mut rng);
            let h = greedy_spanner(g, k, &order)?;
            if h.sub.m() < best.m() {
                best = h.sub;
            }
        }
    }

    let inst = SpannerInstance::new(g.clone(), k, best)?;
    Ok(GreedyMin {
        size: inst.sub.m(),
        ordering: ordering_for_spanner(&inst)?,
        sampled: exhausted,
        explored,
    })
}

struct Search<'a> {
    edges: &'a [Edge],
    k: usize,
    target_components: usize,
    budget: u64,
    explored: u64,
    best_mask: Option<u64>,
    best_size: usize,
}

impl Search<'_> {
    /// Adds edges in increasing index order. Returns false once the budget is spent.
    fn dfs(&mut self, state: &mut BitGraph, mask: u64, size: usize, from: usize, components: usize) -> bool {
        self.explored += 1;
        if self.explored > self.budget {
            return false;
        }
        // Each further edge merges at most two components.
        if size + (components - self.target_components) >= self.best_size {
            return true;
        }
        let k = self.k;
        let addable = move |st: &BitGraph, e: Edge| !st.has(e) && !st.within(e.lo(), e.hi(), k);
        if !self.edges.iter().any(|&e| addable(state, e)) {
            self.best_size = size;
            self.best_mask = Some(mask);
            return true;
        }
        for i in from..self.edges.len() {
            let e = self.edges[i];
            if !addable(state, e) {
                continue;
            }
            let merges = !state.within(e.lo(), e.hi(), usize::MAX);
            state.insert(e);
            let ok = self.dfs(state, mask | 1 << i, size + 1, i + 1, components - usize::from(merges));
            state.remove(e);
            if !ok {
                return false;
            }
        }
        true
    }
}
