use std::collections::BTreeSet;

use serde::Serialize;

use super::{LemmaKind, LemmaViolation};
use crate::error::{Error, Result};
use crate::graph::{
    bfs, count_shortest_paths_avoiding, max_cycle_overlap_path, spanner_violations, Edge, Graph,
    OrientedCycle,
};

/// A base edge `(s, t)` that loses its stretch once the danger `e` is deleted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndangeredPair {
    pub s: usize,
    pub t: usize,
    pub danger: Edge,
    /// Shortest `s`-`t` path with maximal overlap with the cycle.
    pub cd_path: Vec<usize>,
    /// `cd_path[ccd.0..=ccd.1]` is the overlap segment.
    pub ccd: (usize, usize),
}

impl EndangeredPair {
    pub fn edge(&self) -> Edge {
        Edge::new(self.s, self.t)
    }

    pub fn ccd_len(&self) -> usize {
        self.ccd.1 - self.ccd.0
    }

    pub fn ccd_vertices(&self) -> &[usize] {
        &self.cd_path[self.ccd.0..=self.ccd.1]
    }
}

/// Every base edge endangered by the cycle edge `e`, with its overlap path.
///
/// Asserts on each pair that all shortest paths use `e` and that the overlap
/// is one consecutive run on both the path and the cycle, containing `e`.
pub fn find_endangered(
    g: &Graph,
    h: &Graph,
    k: usize,
    sc: &OrientedCycle,
    e: Edge,
) -> Result<Vec<EndangeredPair>> {
    if !sc.has_edge(e) || !h.has_edge(e) {
        return Err(Error::input(format!("{e} is not an edge of the cycle")));
    }
    spanner_violations(g, h, k, Some(e))
        .into_iter()
        .map(|st| endangered_pair(h, sc, st, e))
        .collect()
}

fn endangered_pair(h: &Graph, sc: &OrientedCycle, st: Edge, e: Edge) -> Result<EndangeredPair> {
    let (s, t) = st.endpoints();
    let avoiding = count_shortest_paths_avoiding(h, s, t, e)?;
    if avoiding != 0 {
        return Err(LemmaViolation::bare(
            LemmaKind::Dependence,
            format!("{avoiding} shortest {s}-{t} paths avoid the danger {e}"),
        )
        .into());
    }
    let path = max_cycle_overlap_path(h, s, t, sc)?;
    let on: Vec<bool> = path
        .windows(2)
        .map(|w| sc.has_edge(Edge::new(w[0], w[1])))
        .collect();
    let conse = |msg: String| -> Error { LemmaViolation::bare(LemmaKind::Consecutive, msg).into() };
    let (Some(first), Some(last)) = (on.iter().position(|&x| x), on.iter().rposition(|&x| x)) else {
        return Err(conse(format!("path {path:?} for ({s}, {t}) shares no edge with the cycle")));
    };
    if !on[first..=last].iter().all(|&x| x) {
        return Err(conse(format!("cycle overlap of {path:?} is not consecutive on the path")));
    }
    if !path[first..=last + 1]
        .windows(2)
        .any(|w| Edge::new(w[0], w[1]) == e)
    {
        return Err(conse(format!("overlap of {path:?} misses the danger {e}")));
    }
    let run = &path[first..=last + 1];
    let forward = run.windows(2).all(|w| sc.next(w[0]) == w[1]);
    let backward = run.windows(2).all(|w| sc.prev(w[0]) == w[1]);
    if !forward && !backward {
        return Err(conse(format!("overlap {run:?} is not a segment of the cycle")));
    }
    Ok(EndangeredPair {
        s,
        t,
        danger: e,
        cd_path: path,
        ccd: (first, last + 1),
    })
}

/// Shortest-path tree of `h` rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchorTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<Option<usize>>,
}

impl AnchorTree {
    /// BFS tree whose parent choice prefers edges of `preferred`, then the smaller index.
    pub fn build(h: &Graph, root: usize, preferred: &BTreeSet<Edge>) -> Result<Self> {
        let view = bfs(h, root)?;
        let mut parent = vec![None; h.n()];
        for (v, slot) in parent.iter_mut().enumerate() {
            let Some(d) = view.to(v) else { continue };
            if d == 0 {
                continue;
            }
            let ups = h.neighbors(v).iter().copied().filter(|&w| view.to(w) == Some(d - 1));
            let mut chosen = None;
            for w in ups {
                let pref = preferred.contains(&Edge::new(v, w));
                match chosen {
                    None => chosen = Some((w, pref)),
                    Some((_, false)) if pref => chosen = Some((w, pref)),
                    _ => {}
                }
            }
            *slot = chosen.map(|(w, _)| w);
        }
        Ok(AnchorTree {
            root,
            parent,
            depth: view.dist,
        })
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.parent[e.lo()] == Some(e.hi()) || self.parent[e.hi()] == Some(e.lo())
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v].expect("vertex reachable from the root")
    }

    /// Vertices from `v` up to the root, both inclusive.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Whether `x` lies on the tree path from `v` to the root.
    pub fn is_ancestor(&self, x: usize, v: usize) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if c == x {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Number of tree edges between `x` and `y`.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b) = (x, y);
        let mut steps = 0;
        while self.depth(a) > self.depth(b) {
            a = self.parent[a].expect("non-root has a parent");
            steps += 1;
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent[b].expect("non-root has a parent");
            steps += 1;
        }
        while a != b {
            a = self.parent[a].expect("non-root has a parent");
            b = self.parent[b].expect("non-root has a parent");
            steps += 2;
        }
        steps
    }
}

/// One iteration's frame: the chosen endangered pair anchored on the smallest cycle.
#[derive(Debug, Clone, Serialize)]
pub struct Frame {
    /// The smallest cycle rotated so that `a` is at position 0 and `a -> b` runs forward.
    pub sc: OrientedCycle,
    pub chosen: EndangeredPair,
    /// `p[s, a] + SC[a, b] + p[b, t]`, from `s` to `t`.
    pub path: Vec<usize>,
    /// Indices of `a` and `b` on `path`.
    pub a_index: usize,
    pub b_index: usize,
    pub a: usize,
    pub b: usize,
    pub a_prev: usize,
    pub b_next: usize,
    pub e1: Edge,
    pub e2: Edge,
    pub antipodal: Edge,
    pub tree: AnchorTree,
    /// Endangered pairs on which the dependence and consecutiveness facts were asserted.
    pub pairs_checked: usize,
}

impl Frame {
    /// `|SC[a, b]|`.
    pub fn segment_len(&self) -> usize {
        self.b_index - self.a_index
    }

    pub fn s(&self) -> usize {
        self.path[0]
    }

    pub fn t(&self) -> usize {
        *self.path.last().expect("non-empty path")
    }
}

/// Builds the frame from scratch. Fails with an invariant error when some cycle
/// edge endangers nothing (such an edge should have been pruned).
pub fn build_frame(g: &Graph, h: &Graph, k: usize, sc: &OrientedCycle) -> Result<Frame> {
    let mut dangers = Vec::with_capacity(sc.len());
    for e in sc.edges() {
        let pairs = find_endangered(g, h, k, sc, e)?;
        if pairs.is_empty() {
            return Err(Error::invariant(format!(
                "cycle edge {e} endangers no pair; prune it first"
            )));
        }
        dangers.push(pairs);
    }
    frame_from_dangers(h, sc, dangers)
}

/// `dangers[i]` lists the pairs endangered by cycle edge `i` (in oriented order).
pub(crate) fn frame_from_dangers(
    h: &Graph,
    sc: &OrientedCycle,
    dangers: Vec<Vec<EndangeredPair>>,
) -> Result<Frame> {
    let pairs_checked = dangers.iter().map(Vec::len).sum();
    let chosen = dangers
        .into_iter()
        .enumerate()
        .flat_map(|(pos, ps)| ps.into_iter().map(move |p| (pos, p)))
        .min_by_key(|(pos, p)| (std::cmp::Reverse(p.ccd_len()), p.s, p.t, *pos))
        .map(|(_, p)| p)
        .ok_or_else(|| Error::invariant("no endangered pair on the cycle"))?;

    let shape = |msg: String| -> Error { LemmaViolation::bare(LemmaKind::FrameShape, msg).into() };

    let mut path = chosen.cd_path.clone();
    let (mut ia, mut ib) = chosen.ccd;
    let last = path.len() - 1;
    if last - ib < ia {
        path.reverse();
        (ia, ib) = (last - ib, last - ia);
    }
    let (a, b) = (path[ia], path[ib]);
    let mut cyc = sc.rotated_to(a);
    if cyc.at(1) != path[ia + 1] {
        cyc = cyc.reversed();
    }
    let l = cyc.len();
    let seg = ib - ia;
    if cyc.position(b) != Some(seg) {
        return Err(shape(format!("segment {a}..{b} does not follow the cycle")));
    }
    if 2 * seg > l {
        return Err(shape(format!("segment length {seg} exceeds half the cycle length {l}")));
    }
    if let Some(&x) = path[..ia].iter().chain(&path[ib + 1..]).find(|&&x| cyc.contains(x)) {
        return Err(shape(format!("path touches the cycle at {x} outside the segment {a}..{b}")));
    }

    let a_prev = cyc.at(l - 1);
    let b_next = cyc.at(seg + 1);
    let antipodal = Edge::new(cyc.at(l / 2), cyc.at(l / 2 + 1));
    let mut e0: BTreeSet<Edge> = path[..=ia]
        .windows(2)
        .chain(path[ib..].windows(2))
        .map(|w| Edge::new(w[0], w[1]))
        .collect();
    e0.extend(cyc.edges().into_iter().filter(|&f| f != antipodal));

    let tree = AnchorTree::build(h, a, &e0)?;
    if let Some(f) = e0.iter().find(|&&f| !tree.has_edge(f)) {
        return Err(LemmaViolation::bare(
            LemmaKind::AnchorTree,
            format!("no shortest-path tree from {a} keeps the prescribed edge {f}"),
        )
        .into());
    }

    Ok(Frame {
        sc: cyc,
        chosen,
        path,
        a_index: ia,
        b_index: ib,
        a,
        b,
        a_prev,
        b_next,
        e1: Edge::new(b, b_next),
        e2: Edge::new(a_prev, a),
        antipodal,
        tree,
        pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth_and_smallest_cycle, named};

    #[test]
    fn cycle_endangers_its_own_edges() {
        let c = named::cycle(8);
        let sc = girth_and_smallest_cycle(&c).unwrap();
        let e = Edge::new(3, 4);
        let pairs = find_endangered(&c, &c, 5, &sc, e).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].edge(), e);
        assert_eq!(pairs[0].ccd_vertices(), &[3, 4]);
        assert!(find_endangered(&c, &c, 7, &sc, e).unwrap().is_empty());
        assert!(find_endangered(&c, &c, 5, &sc, Edge::new(0, 2)).is_err());
    }

    #[test]
    fn frame_on_a_plain_cycle() {
        let c = named::cycle(9);
        let sc = girth_and_smallest_cycle(&c).unwrap();
        let f = build_frame(&c, &c, 6, &sc).unwrap();
        // Every edge is its own only endangered pair; the tie goes to (0, 1).
        assert_eq!(f.chosen.edge(), Edge::new(0, 1));
        assert_eq!(f.segment_len(), 1);
        assert_eq!((f.a, f.b), (0, 1));
        assert_eq!(f.e2, Edge::new(8, 0));
        assert_eq!(f.e1, Edge::new(1, 2));
        assert_eq!(f.antipodal, Edge::new(4, 5));
        assert_eq!(f.pairs_checked, 9);
        for e in f.sc.edges() {
            assert_eq!(f.tree.has_edge(e), e != f.antipodal);
        }
    }

    #[test]
    fn tree_distance_and_ancestry() {
        let t = Graph::new(6, [(0, 1), (1, 2), (1, 3), (0, 4), (4, 5)]).unwrap();
        let tree = AnchorTree::build(&t, 0, &BTreeSet::new()).unwrap();
        assert_eq!(tree.distance(2, 5), 4);
        assert_eq!(tree.distance(2, 3), 2);
        assert!(tree.is_ancestor(1, 3));
        assert!(!tree.is_ancestor(4, 3));
        assert_eq!(tree.path_to_root(5), vec![5, 4, 0]);
    }

    #[test]
    fn preferred_edges_win_parent_ties() {
        let sq = named::cycle(4);
        let pref: BTreeSet<Edge> = [Edge::new(2, 3)].into();
        let tree = AnchorTree::build(&sq, 0, &pref).unwrap();
        assert_eq!(tree.parent[2], Some(3));
        let plain = AnchorTree::build(&sq, 0, &BTreeSet::new()).unwrap();
        assert_eq!(plain.parent[2], Some(1));
    }
}
