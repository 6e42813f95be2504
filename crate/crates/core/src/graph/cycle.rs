use std::collections::VecDeque;

use serde::Serialize;

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// A simple cycle `c_0, c_1, ..., c_{L-1}` with a traversal direction.
///
/// Position arithmetic is modulo `L`; the segment from `x` to `y` follows the
/// orientation, so `forward_len(x, y) + forward_len(y, x) == L` for `x != y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedCycle {
    vertices: Vec<usize>,
    #[serde(skip)]
    pos: Vec<Option<usize>>,
}

impl OrientedCycle {
    /// Validates the sequence against `host`: at least three distinct vertices,
    /// consecutive ones adjacent, including the closing pair.
    pub fn from_vertices(host: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::input("a cycle needs at least 3 vertices"));
        }
        let mut pos = vec![None; host.n()];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= host.n() {
                return Err(Error::input(format!("cycle vertex {v} out of range")));
            }
            if pos[v].replace(i).is_some() {
                return Err(Error::input(format!("cycle repeats vertex {v}")));
            }
        }
        let cycle = OrientedCycle { vertices, pos };
        if let Some(e) = cycle.edges().into_iter().find(|&e| !host.has_edge(e)) {
            return Err(Error::input(format!("cycle edge {e} missing from host graph")));
        }
        Ok(cycle)
    }

    fn from_trusted(n: usize, vertices: Vec<usize>) -> Self {
        let mut pos = vec![None; n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = Some(i);
        }
        OrientedCycle { vertices, pos }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Vertex at position `i` (taken modulo the length).
    pub fn at(&self, i: usize) -> usize {
        self.vertices[i % self.len()]
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.pos.get(v).copied().flatten()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }

    pub fn next(&self, v: usize) -> usize {
        self.at(self.position(v).expect("vertex on cycle") + 1)
    }

    pub fn prev(&self, v: usize) -> usize {
        let l = self.len();
        self.at(self.position(v).expect("vertex on cycle") + l - 1)
    }

    /// Cycle edges in oriented order: edge `i` joins `c_i` and `c_{i+1}`.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.len())
            .map(|i| Edge::new(self.at(i), self.at(i + 1)))
            .collect()
    }

    /// Oriented index of `e` on the cycle, if it is a cycle edge.
    pub fn edge_position(&self, e: Edge) -> Option<usize> {
        let (pu, pv) = (self.position(e.lo())?, self.position(e.hi())?);
        let l = self.len();
        if (pu + 1) % l == pv {
            Some(pu)
        } else if (pv + 1) % l == pu {
            Some(pv)
        } else {
            None
        }
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_position(e).is_some()
    }

    /// Number of edges on the oriented segment from `x` to `y`.
    pub fn forward_len(&self, x: usize, y: usize) -> usize {
        let l = self.len();
        let (px, py) = (
            self.position(x).expect("vertex on cycle"),
            self.position(y).expect("vertex on cycle"),
        );
        (py + l - px) % l
    }

    /// Vertices of the oriented segment from `x` to `y`, both inclusive.
    pub fn segment(&self, x: usize, y: usize) -> Vec<usize> {
        let start = self.position(x).expect("vertex on cycle");
        (0..=self.forward_len(x, y)).map(|i| self.at(start + i)).collect()
    }

    /// Same cycle and orientation, renumbered so that `v` is at position 0.
    pub fn rotated_to(&self, v: usize) -> OrientedCycle {
        let start = self.position(v).expect("vertex on cycle");
        let verts = (0..self.len()).map(|i| self.at(start + i)).collect();
        Self::from_trusted(self.pos.len(), verts)
    }

    /// Opposite orientation, keeping position 0 fixed.
    pub fn reversed(&self) -> OrientedCycle {
        let l = self.len();
        let verts = (0..l).map(|i| self.at(l - i)).collect();
        Self::from_trusted(self.pos.len(), verts)
    }
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(v) = queue.pop_front() {
            // Anything found deeper than this cannot beat the current best.
            if let Some(b) = best {
                if 2 * dist[v] >= b {
                    break 'bfs;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// The girth of `g` together with a canonical smallest cycle.
///
/// Among all cycles of minimum length the one returned has the lexicographically
/// least canonical rotation: it starts at its smallest vertex and proceeds towards
/// the smaller of that vertex's two cycle neighbours.
pub fn girth_and_smallest_cycle(g: &Graph) -> Option<OrientedCycle> {
    let target = girth(g)?;
    for start in 0..g.n() {
        if g.degree(start) < 2 {
            continue;
        }
        if let Some(verts) = least_cycle_through(g, start, target) {
            return Some(OrientedCycle::from_trusted(g.n(), verts));
        }
    }
    unreachable!("girth {target} reported but no cycle of that length found")
}

/// Lexicographically least cycle of length `len` whose smallest vertex is `start`.
fn least_cycle_through(g: &Graph, start: usize, len: usize) -> Option<Vec<usize>> {
    // Distances back to `start` using only vertices above it; a lower bound on the
    // number of edges still needed to close the cycle from any vertex.
    let mut back = vec![usize::MAX; g.n()];
    back[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w > start && back[w] == usize::MAX {
                back[w] = back[v] + 1;
                queue.push_back(w);
            }
        }
    }

    let mut path = vec![start];
    let mut on_path = vec![false; g.n()];
    on_path[start] = true;
    if extend(g, start, len, &back, &mut path, &mut on_path) {
        Some(path)
    } else {
        None
    }
}

fn extend(
    g: &Graph,
    start: usize,
    len: usize,
    back: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let last = *path.last().expect("non-empty path");
    if path.len() == len {
        return g.has_edge(Edge::new(last, start)) && path[1] < path[len - 1];
    }
    let used = path.len() - 1;
    for &w in g.neighbors(last) {
        if w <= start || on_path[w] || back[w] == usize::MAX {
            continue;
        }
        if used + 1 + back[w] > len {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if extend(g, start, len, back, path, on_path) {
            return true;
        }
        on_path[w] = false;
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    /// Every simple cycle as a canonical vertex sequence, by exhaustive DFS.
    fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
        fn dfs(g: &Graph, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                if w == start && path.len() >= 3 && path[1] < path[path.len() - 1] {
                    out.push(path.clone());
                } else if w > start && !path.contains(&w) {
                    path.push(w);
                    dfs(g, start, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..g.n() {
            dfs(g, s, &mut vec![s], &mut out);
        }
        out
    }

    #[test]
    fn forest_has_no_cycle() {
        let tree = Graph::new(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(girth(&tree), None);
        assert!(girth_and_smallest_cycle(&tree).is_none());
    }

    #[test]
    fn complete_graph_has_triangle() {
        let c = girth_and_smallest_cycle(&named::complete(4)).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn hexagon_with_long_chord() {
        let g = named::cycle(6).with_edge(Edge::new(0, 3));
        let c = girth_and_smallest_cycle(&g).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..400 {
            let n = rng.gen_range(3..=8);
            let p: f64 = rng.gen_range(0.15..0.7);
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, pairs).unwrap();
            let cycles = all_cycles(&g);
            let expected = cycles.iter().map(Vec::len).min();
            assert_eq!(girth(&g), expected, "{g:?}");
            let best = cycles
                .iter()
                .filter(|c| Some(c.len()) == expected)
                .min()
                .cloned();
            let got = girth_and_smallest_cycle(&g).map(|c| c.vertices().to_vec());
            assert_eq!(got, best, "{g:?}");
        }
    }

    #[test]
    fn segment_arithmetic() {
        let g = named::cycle(6);
        let c = girth_and_smallest_cycle(&g).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(c.forward_len(4, 1), 3);
        assert_eq!(c.segment(4, 1), vec![4, 5, 0, 1]);
        assert_eq!(c.edge_position(Edge::new(5, 0)), Some(5));
        assert_eq!(c.edge_position(Edge::new(0, 2)), None);
        let r = c.rotated_to(2).reversed();
        assert_eq!(r.vertices(), &[2, 1, 0, 5, 4, 3]);
        assert_eq!(r.next(2), 1);
        assert_eq!(r.prev(2), 3);
    }

    #[test]
    fn validation_of_explicit_cycles() {
        let g = named::cycle(5);
        assert!(OrientedCycle::from_vertices(&g, vec![0, 1, 2, 3, 4]).is_ok());
        assert!(OrientedCycle::from_vertices(&g, vec![0, 1, 3, 4]).is_err());
        assert!(OrientedCycle::from_vertices(&g, vec![0, 1]).is_err());
    }
}
