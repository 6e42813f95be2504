use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// Single-source hop distances. `None` marks an unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistView {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
    pub parent: Vec<Option<usize>>,
}

impl DistView {
    pub fn to(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    /// Vertices of the BFS-tree path from the source to `v`, or `None` if unreachable.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        self.dist[v]?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Breadth-first search from `src`. Neighbors are scanned in increasing order,
/// so parents are the smallest-index vertex of the previous layer that reaches them first.
pub fn bfs(g: &Graph, src: usize) -> Result<DistView> {
    bfs_filtered(g, src, |_| true)
}

/// BFS restricted to the edges in `allowed` (which should be a subset of `g`'s edges).
pub fn bfs_restricted(g: &Graph, allowed: &BTreeSet<Edge>, src: usize) -> Result<DistView> {
    if let Some(e) = allowed.iter().find(|e| !g.has_edge(**e)) {
        return Err(Error::input(format!("restricted edge {e} is not in the graph")));
    }
    bfs_filtered(g, src, |e| allowed.contains(&e))
}

fn bfs_filtered(g: &Graph, src: usize, keep: impl Fn(Edge) -> bool) -> Result<DistView> {
    if src >= g.n() {
        return Err(Error::input(format!(
            "source {src} outside the vertex range 0..{}",
            g.n()
        )));
    }
    let mut dist = vec![None; g.n()];
    let mut parent = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[src] = Some(0);
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices are labelled");
        for &w in g.neighbors(v) {
            if dist[w].is_none() && keep(Edge::new(v, w)) {
                dist[w] = Some(d + 1);
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    Ok(DistView {
        source: src,
        dist,
        parent,
    })
}

/// Hop distance between `s` and `t`, exploring at most `limit` layers.
/// Returns `None` when `t` is unreachable within the limit.
pub fn distance(g: &Graph, s: usize, t: usize, limit: usize) -> Option<usize> {
    distance_avoiding(g, s, t, None, limit)
}

/// Like [`distance`], but pretends `avoid` is absent from the graph.
pub fn distance_avoiding(
    g: &Graph,
    s: usize,
    t: usize,
    avoid: Option<Edge>,
    limit: usize,
) -> Option<usize> {
    if s == t {
        return Some(0);
    }
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut frontier = vec![s];
    let mut next = Vec::new();
    for d in 1..=limit {
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if seen[w] || avoid == Some(Edge::new(v, w)) {
                    continue;
                }
                if w == t {
                    return Some(d);
                }
                seen[w] = true;
                next.push(w);
            }
        }
        if next.is_empty() {
            return None;
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    None
}

/// Layered distances from `src` up to depth `limit` (entries beyond stay `None`).
pub(crate) fn layered(g: &Graph, src: usize, avoid: Option<Edge>, limit: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut frontier = vec![src];
    let mut next = Vec::new();
    for d in 1..=limit {
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if dist[w].is_none() && avoid != Some(Edge::new(v, w)) {
                    dist[w] = Some(d);
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    dist
}
