//! Connected graphs on a handful of vertices, one per isomorphism class.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub const MAX_UNIVERSE_N: usize = 7;

/// Index of the pair `u < v` in the lexicographic list of all pairs on `n` vertices.
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn encode(n: usize, adj: &[u32], perm: &[usize]) -> u32 {
    // perm[new] = old
    let mut code = 0u32;
    for a in 0..n {
        for b in a + 1..n {
            if adj[perm[a]] >> perm[b] & 1 == 1 {
                code |= 1 << (31 - pair_index(n, a, b));
            }
        }
    }
    code
}

/// Canonical code: the smallest encoding over relabellings that list vertices by
/// non-decreasing degree. Equal codes iff isomorphic.
pub fn canonical_code(g: &Graph) -> u32 {
    let n = g.n();
    assert!(n <= MAX_UNIVERSE_N + 1, "canonical codes are for tiny graphs");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.degree(v));
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && g.degree(order[j]) == g.degree(order[i]) {
            j += 1;
        }
        blocks.push((i, j));
        i = j;
    }
    let mut best = u32::MAX;
    permute_blocks(&mut order, &blocks, 0, &mut |perm| {
        best = best.min(encode(n, &adj, perm));
    });
    best
}

fn permute_blocks(perm: &mut Vec<usize>, blocks: &[(usize, usize)], bi: usize, f: &mut impl FnMut(&[usize])) {
    if bi == blocks.len() {
        f(perm);
        return;
    }
    let (lo, hi) = blocks[bi];
    heap_permute(perm, lo, hi - lo, &mut |p| permute_blocks(p, blocks, bi + 1, f));
}

/// Heap's algorithm over `perm[lo..hi]`.
fn heap_permute(perm: &mut Vec<usize>, lo: usize, size: usize, f: &mut impl FnMut(&mut Vec<usize>)) {
    if size <= 1 {
        f(perm);
        return;
    }
    for i in 0..size {
        heap_permute(perm, lo, size - 1, f);
        if size % 2 == 1 {
            perm.swap(lo, lo + size - 1);
        } else {
            perm.swap(lo + i, lo + size - 1);
        }
    }
}

fn decode(n: usize, code: u32) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if code >> (31 - pair_index(n, a, b)) & 1 == 1 {
                edges.push(Edge::new(a, b));
            }
        }
    }
    Graph::from_edges(n, edges).expect("decoded edges are valid")
}

/// Connected graphs on `n` vertices up to isomorphism, in canonical form and sorted
/// by canonical code.
pub fn connected_classes(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_UNIVERSE_N {
        return Err(Error::OracleCap(format!(
            "graph universes stop at n = {MAX_UNIVERSE_N}, asked for {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut layer: BTreeSet<u32> = [canonical_code(&Graph::empty(1))].into();
    for size in 2..=n {
        let prev: Vec<Graph> = layer.iter().map(|&c| decode(size - 1, c)).collect();
        let mut next = BTreeSet::new();
        for g in &prev {
            let new = size - 1;
            for mask in 1u32..(1 << new) {
                let extra = (0..new).filter(|&v| mask >> v & 1 == 1).map(|v| Edge::new(v, new));
                let grown = Graph::from_edges(size, g.edges().iter().copied().chain(extra))
                    .expect("fresh vertex edges are new");
                next.insert(canonical_code(&grown));
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().map(|c| decode(n, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn class_counts_match_the_known_sequence() {
        let expected = [1, 1, 2, 6, 21, 112, 853];
        for (i, &want) in expected.iter().enumerate() {
            let classes = connected_classes(i + 1).unwrap();
            assert_eq!(classes.len(), want, "n = {}", i + 1);
            assert!(classes.iter().all(Graph::is_connected));
        }
        assert!(connected_classes(8).is_err());
    }

    #[test]
    fn codes_are_isomorphism_invariant() {
        let c = named::cycle(6);
        let relabelled = Graph::new(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        assert_eq!(canonical_code(&c), canonical_code(&relabelled));
        assert_ne!(canonical_code(&c), canonical_code(&named::path(6)));
    }
}
