use serde::{Deserialize, Serialize};

use super::bfs::{bfs, layered};
use super::{Edge, Graph};
use crate::error::{Error, Result};

/// A base graph, a stretch `k` and a spanning subgraph over the same vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannerInstance {
    pub base: Graph,
    pub k: usize,
    pub sub: Graph,
}

impl SpannerInstance {
    /// Checks `k >= 1` and that `sub` is an edge subgraph of `base` on the same vertex set.
    pub fn new(base: Graph, k: usize, sub: Graph) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("stretch k must be at least 1"));
        }
        if sub.n() != base.n() {
            return Err(Error::invariant(format!(
                "subgraph has {} vertices but the base graph has {}",
                sub.n(),
                base.n()
            )));
        }
        if let Some(e) = sub.edges().iter().find(|&&e| !base.has_edge(e)) {
            return Err(Error::invariant(format!("edge {e} is not in the base graph")));
        }
        Ok(SpannerInstance { base, k, sub })
    }

    pub fn from_edges(base: Graph, k: usize, sub_edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let sub = Graph::from_edges(base.n(), sub_edges)?;
        Self::new(base, k, sub)
    }

    pub fn is_spanner(&self) -> bool {
        is_k_spanner(&self.base, &self.sub, self.k)
    }
}

/// `dist_h(e.lo, e.hi) <= k`.
pub fn stretch_holds(h: &Graph, k: usize, e: Edge) -> bool {
    super::distance(h, e.lo(), e.hi(), k).is_some()
}

/// Whether every edge of `g` has its endpoints within distance `k` in `h`.
pub fn is_k_spanner(g: &Graph, h: &Graph, k: usize) -> bool {
    scan(g, h, k, None, true).is_empty()
}

/// Edges of `g` whose endpoints are farther than `k` apart in `h` with `avoid` deleted.
pub fn spanner_violations(g: &Graph, h: &Graph, k: usize, avoid: Option<Edge>) -> Vec<Edge> {
    scan(g, h, k, avoid, false)
}

fn scan(g: &Graph, h: &Graph, k: usize, avoid: Option<Edge>, stop_early: bool) -> Vec<Edge> {
    let mut bad = Vec::new();
    let mut start = 0;
    let edges = g.edges();
    while start < edges.len() {
        let u = edges[start].lo();
        let mut end = start;
        while end < edges.len() && edges[end].lo() == u {
            end += 1;
        }
        let needs_bfs = edges[start..end]
            .iter()
            .any(|&e| Some(e) == avoid || !h.has_edge(e));
        if needs_bfs {
            let dist = layered(h, u, avoid, k);
            for &e in &edges[start..end] {
                if dist[e.hi()].is_none() {
                    bad.push(e);
                    if stop_early {
                        return bad;
                    }
                }
            }
        }
        start = end;
    }
    bad
}

/// The all-pairs definition: `dist_h(u, v) <= k * dist_g(u, v)` for every pair.
pub fn is_k_spanner_all_pairs(g: &Graph, h: &Graph, k: usize) -> bool {
    (0..g.n()).all(|u| {
        let dg = bfs(g, u).expect("vertex in range");
        let dh = bfs(h, u).expect("vertex in range");
        (0..g.n()).all(|v| match (dg.to(v), dh.to(v)) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b <= k * a,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn identity_is_a_spanner() {
        let g = named::complete(5);
        for k in 1..5 {
            assert!(is_k_spanner(&g, &g, k));
        }
    }

    #[test]
    fn five_cycle_minus_an_edge() {
        let g = named::cycle(5);
        let h = g.without_edge(Edge::new(0, 4));
        assert!(is_k_spanner(&g, &h, 4));
        assert!(!is_k_spanner(&g, &h, 3));
        assert_eq!(spanner_violations(&g, &h, 3, None), vec![Edge::new(0, 4)]);
    }

    #[test]
    fn violations_with_an_avoided_edge() {
        let g = named::cycle(6);
        assert_eq!(spanner_violations(&g, &g, 4, Some(Edge::new(2, 3))), vec![Edge::new(2, 3)]);
        assert!(spanner_violations(&g, &g, 5, Some(Edge::new(2, 3))).is_empty());
    }

    #[test]
    fn instance_validation() {
        let g = named::cycle(4);
        assert!(SpannerInstance::new(g.clone(), 0, g.clone()).is_err());
        assert!(SpannerInstance::new(g.clone(), 2, named::complete(4)).is_err());
        assert!(SpannerInstance::new(g.clone(), 2, Graph::empty(3)).is_err());
        let inst = SpannerInstance::from_edges(g.clone(), 3, g.edges()[..3].to_vec()).unwrap();
        assert!(inst.is_spanner());
    }

    #[test]
    fn edge_check_matches_all_pairs_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(2..=8);
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let g = Graph::new(n, pairs).unwrap();
            let keep: Vec<Edge> = g.edges().iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
            let h = g.edge_subgraph(keep).unwrap();
            for k in 1..=n {
                assert_eq!(is_k_spanner(&g, &h, k), is_k_spanner_all_pairs(&g, &h, k));
            }
        }
    }
}
