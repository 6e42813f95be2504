//! Adjacency bitmasks for graphs with at most 64 vertices.
//!
//! The exhaustive searches live on these; everything else uses [`Graph`].

use crate::graph::{Edge, Graph};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitGraph {
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "bitset graphs hold at most {MAX_VERTICES} vertices");
        BitGraph { adj: vec![0; n] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut b = Self::empty(g.n());
        for &e in g.edges() {
            b.insert(e);
        }
        b
    }

    /// Graph on `n` vertices holding the edges of `edges` selected by `mask`.
    pub fn from_mask(n: usize, edges: &[Edge], mask: u64) -> Self {
        let mut b = Self::empty(n);
        for (i, &e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.insert(e);
            }
        }
        b
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn insert(&mut self, e: Edge) {
        self.adj[e.lo()] |= 1 << e.hi();
        self.adj[e.hi()] |= 1 << e.lo();
    }

    pub fn remove(&mut self, e: Edge) {
        self.adj[e.lo()] &= !(1 << e.hi());
        self.adj[e.hi()] &= !(1 << e.lo());
    }

    pub fn has(&self, e: Edge) -> bool {
        self.adj[e.lo()] >> e.hi() & 1 == 1
    }

    /// `dist(u, v) <= k`, by expanding at most `k` frontier layers.
    pub fn within(&self, u: usize, v: usize, k: usize) -> bool {
        if u == v {
            return true;
        }
        let target = 1u64 << v;
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        for _ in 0..k {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[x];
            }
            next &= !seen;
            if next & target != 0 {
                return true;
            }
            if next == 0 {
                return false;
            }
            seen |= next;
            frontier = next;
        }
        false
    }

    pub fn spans(&self, base: &[Edge], k: usize) -> bool {
        base.iter().all(|&e| self.has(e) || self.within(e.lo(), e.hi(), k))
    }

    pub fn component_count(&self) -> usize {
        let n = self.n();
        let mut unseen: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut count = 0;
        while unseen != 0 {
            let root = unseen.trailing_zeros() as usize;
            let mut comp = 1u64 << root;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[x];
                }
                frontier = next & !comp;
                comp |= next;
            }
            unseen &= !comp;
            count += 1;
        }
        count
    }

    /// Shortest cycle length, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                if best.is_some_and(|b| 2 * dist[v] >= b) {
                    break;
                }
                let mut nb = self.adj[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, is_k_spanner, named};

    #[test]
    fn agrees_with_graph_routines() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let pairs: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.35))
                .collect();
            let g = Graph::new(n, pairs).unwrap();
            let keep: Vec<Edge> = g.edges().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            let h = g.edge_subgraph(keep).unwrap();
            let bh = BitGraph::from_graph(&h);
            assert_eq!(bh.girth(), girth(&h));
            assert_eq!(bh.component_count(), h.component_count());
            for k in 1..=n.max(1) {
                assert_eq!(bh.spans(g.edges(), k), is_k_spanner(&g, &h, k));
            }
        }
    }

    #[test]
    fn masks_select_edges() {
        let g = named::cycle(5);
        // Drop (0, 4), the second edge in canonical order.
        let b = BitGraph::from_mask(5, g.edges(), 0b11101);
        assert!(b.has(g.edges()[0]) && !b.has(g.edges()[1]));
        assert!(b.within(0, 1, 1));
        assert!(!b.within(0, 4, 3));
        assert!(b.within(0, 4, 4));
    }
}
