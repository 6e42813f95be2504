use serde::Serialize;

use super::frame::Frame;
use super::{LemmaKind, LemmaViolation};
use crate::error::{Error, Result};
use crate::graph::{distance_avoiding, is_k_spanner, spanner_violations, Edge, Graph, OrientedCycle};

/// A pair endangered by `e2`, oriented so that `u` hangs below `a'` in the anchor tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E2Pair {
    pub u: usize,
    pub v: usize,
    /// First cycle vertex on the tree path from `u` (resp. `v`) to `a`.
    pub u_proj: usize,
    pub v_proj: usize,
}

impl E2Pair {
    pub fn edge(&self) -> Edge {
        Edge::new(self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub removed: Edge,
    pub added: Vec<Edge>,
    /// Base edges stretched beyond `k` right after the removal.
    pub endangered: usize,
    /// Set when a later round would have picked an already-added pair.
    pub reselected: bool,
}

fn violation(kind: LemmaKind, detail: String) -> Error {
    LemmaViolation::bare(kind, detail).into()
}

/// First cycle edge (in oriented order) whose removal leaves a k-spanner.
pub fn first_safe_cycle_edge(g: &Graph, h: &Graph, k: usize, sc: &OrientedCycle) -> Option<Edge> {
    sc.edges()
        .into_iter()
        .find(|&e| is_k_spanner(g, &h.without_edge(e), k))
}

/// Removes safe edges of the current smallest cycle until none is left or the
/// girth reaches `k + 2`.
pub fn prune_safe_cycle_edges(g: &Graph, h: &Graph, k: usize) -> Graph {
    let mut h = h.clone();
    while let Some(sc) = crate::graph::girth_and_smallest_cycle(&h) {
        if sc.len() >= k + 2 {
            break;
        }
        match first_safe_cycle_edge(g, &h, k, &sc) {
            Some(e) => h = h.without_edge(e),
            None => break,
        }
    }
    h
}

/// A removable edge on a cycle whose length lies in `[2(n - k), k + 1]`.
pub fn break_large_cycle(g: &Graph, h: &Graph, k: usize, sc: &OrientedCycle) -> Result<Edge> {
    first_safe_cycle_edge(g, h, k, sc).ok_or_else(|| {
        violation(
            LemmaKind::LargeCycle,
            format!(
                "no edge of the {}-cycle {:?} can be removed (n = {}, k = {k})",
                sc.len(),
                sc.vertices(),
                h.n()
            ),
        )
    })
}

/// Orients an `e2`-endangered base edge and projects it onto the cycle.
pub fn orient_pair(frame: &Frame, e: Edge) -> Result<E2Pair> {
    let below = |x: usize| frame.tree.is_ancestor(frame.a_prev, x);
    let (u, v) = match (below(e.lo()), below(e.hi())) {
        (true, false) => (e.lo(), e.hi()),
        (false, true) => (e.hi(), e.lo()),
        (x, y) => {
            return Err(violation(
                LemmaKind::PairOrientation,
                format!(
                    "{e}: {} endpoints lie below a' = {} in the anchor tree",
                    if x && y { "both" } else { "neither" },
                    frame.a_prev
                ),
            ))
        }
    };
    let project = |x: usize| {
        frame
            .tree
            .path_to_root(x)
            .into_iter()
            .find(|&y| frame.sc.contains(y))
            .expect("the root lies on the cycle")
    };
    Ok(E2Pair {
        u,
        v,
        u_proj: project(u),
        v_proj: project(v),
    })
}

fn oriented(frame: &Frame, edges: &[Edge]) -> Result<Vec<E2Pair>> {
    edges.iter().map(|&e| orient_pair(frame, e)).collect()
}

fn pos(frame: &Frame, x: usize) -> usize {
    frame.sc.position(x).expect("projection on the cycle")
}

/// `|SC[u', v']|` along the frame orientation.
pub fn projection_span(frame: &Frame, p: &E2Pair) -> usize {
    frame.sc.forward_len(p.u_proj, p.v_proj)
}

fn approx_key(frame: &Frame, p: &E2Pair) -> (usize, usize, usize) {
    let e = p.edge();
    (projection_span(frame, p), e.lo(), e.hi())
}

fn good_key(frame: &Frame, p: &E2Pair) -> (usize, usize, usize, usize) {
    let e = p.edge();
    let l = frame.sc.len();
    (pos(frame, p.v_proj), l - 1 - pos(frame, p.u_proj), e.lo(), e.hi())
}

/// Adds `f` and certifies that it closes no cycle of length at most `k + 1`.
fn add_certified(h: &Graph, k: usize, f: Edge) -> Result<Graph> {
    let next = h.with_edge(f);
    if distance_avoiding(&next, f.lo(), f.hi(), Some(f), k).is_some() {
        return Err(violation(
            LemmaKind::AddedEdgeCycle,
            format!("added edge {f} closes a cycle of length at most {}", k + 1),
        ));
    }
    Ok(next)
}

fn finish(g: &Graph, k: usize, h: &Graph, kind: LemmaKind, what: &str) -> Result<()> {
    let left = spanner_violations(g, h, k, None);
    if left.is_empty() {
        Ok(())
    } else {
        Err(violation(
            kind,
            format!("{what}: {} base edges still stretched, first {}", left.len(), left[0]),
        ))
    }
}

/// Removes `e1` if that keeps a k-spanner, else `e2`.
pub fn step_extreme(g: &Graph, h: &Graph, k: usize, frame: &Frame) -> Result<StepOutcome> {
    for e in [frame.e1, frame.e2] {
        if is_k_spanner(g, &h.without_edge(e), k) {
            return Ok(StepOutcome {
                removed: e,
                added: Vec::new(),
                endangered: 0,
                reselected: false,
            });
        }
    }
    Err(violation(
        LemmaKind::Extreme,
        format!("neither e1 = {} nor e2 = {} is removable", frame.e1, frame.e2),
    ))
}

/// Removes `e2` and adds back at most one endangered pair.
pub fn step_good(g: &Graph, h: &Graph, k: usize, frame: &Frame) -> Result<StepOutcome> {
    let h2 = h.without_edge(frame.e2);
    let bad = spanner_violations(g, &h2, k, None);
    let mut out = StepOutcome {
        removed: frame.e2,
        added: Vec::new(),
        endangered: bad.len(),
        reselected: false,
    };
    if bad.is_empty() {
        return Ok(out);
    }
    let pairs = oriented(frame, &bad)?;
    let pick = *pairs
        .iter()
        .min_by_key(|p| good_key(frame, p))
        .expect("non-empty");
    let h3 = add_certified(&h2, k, pick.edge())?;
    out.added.push(pick.edge());
    finish(g, k, &h3, LemmaKind::Good, "one addition did not suffice")?;
    Ok(out)
}

/// One or two rounds of "add the pair with the shortest projection span".
fn approx_rounds(
    g: &Graph,
    k: usize,
    frame: &Frame,
    mut h: Graph,
    in_scope: impl Fn(&E2Pair) -> Result<bool>,
    out: &mut StepOutcome,
) -> Result<Graph> {
    for _round in 0..2 {
        let bad = spanner_violations(g, &h, k, None);
        let mut pairs = Vec::new();
        for p in oriented(frame, &bad)? {
            if in_scope(&p)? {
                pairs.push(p);
            }
        }
        let Some(pick) = pairs.iter().min_by_key(|p| approx_key(frame, p)).copied() else {
            break;
        };
        if out.added.contains(&pick.edge()) {
            out.reselected = true;
            break;
        }
        h = add_certified(&h, k, pick.edge())?;
        out.added.push(pick.edge());
    }
    Ok(h)
}

/// Removes `e2` and adds back at most two endangered pairs.
pub fn step_approx2(g: &Graph, h: &Graph, k: usize, frame: &Frame) -> Result<StepOutcome> {
    let h2 = h.without_edge(frame.e2);
    let mut out = StepOutcome {
        removed: frame.e2,
        added: Vec::new(),
        endangered: spanner_violations(g, &h2, k, None).len(),
        reselected: false,
    };
    let h3 = approx_rounds(g, k, frame, h2, |_| Ok(true), &mut out)?;
    finish(g, k, &h3, LemmaKind::Approx2, "two additions did not suffice")?;
    Ok(out)
}

/// Bucket `(i, j)` of a pair, both in `1..=t`.
pub fn bucket_of(frame: &Frame, p: &E2Pair, t: usize) -> Result<(usize, usize)> {
    let width = frame.segment_len().div_ceil(t);
    let i = frame.tree.depth(p.u_proj).div_ceil(width);
    let j = frame.tree.distance(p.v_proj, frame.a_prev).div_ceil(width);
    if i == 0 || j == 0 || i > t || j > t {
        return Err(violation(
            LemmaKind::Partition,
            format!(
                "pair {} falls outside the {t}x{t} buckets at ({i}, {j}) with width {width}",
                p.edge()
            ),
        ));
    }
    Ok((i, j))
}

/// Splits pairs into the `t * t` buckets in row-major order.
pub fn bucket_partition(frame: &Frame, pairs: &[E2Pair], t: usize) -> Result<Vec<Vec<E2Pair>>> {
    let mut buckets = vec![Vec::new(); t * t];
    for p in pairs {
        let (i, j) = bucket_of(frame, p, t)?;
        buckets[(i - 1) * t + (j - 1)].push(*p);
    }
    Ok(buckets)
}

/// Removes `e2` and runs the two-round rule on each of the `t * t` buckets in turn.
pub fn step_bucket(g: &Graph, h: &Graph, k: usize, frame: &Frame, t: usize) -> Result<StepOutcome> {
    if !(1..=4).contains(&t) {
        return Err(Error::input(format!("bucket count t = {t} outside 1..=4")));
    }
    let h2 = h.without_edge(frame.e2);
    let bad = spanner_violations(g, &h2, k, None);
    let mut out = StepOutcome {
        removed: frame.e2,
        added: Vec::new(),
        endangered: bad.len(),
        reselected: false,
    };
    // Every initial pair must land in a bucket.
    bucket_partition(frame, &oriented(frame, &bad)?, t)?;

    let mut cur = h2;
    for i in 1..=t {
        for j in 1..=t {
            let mut sub = StepOutcome {
                removed: frame.e2,
                added: Vec::new(),
                endangered: 0,
                reselected: false,
            };
            cur = approx_rounds(
                g,
                k,
                frame,
                cur,
                |p| Ok(bucket_of(frame, p, t)? == (i, j)),
                &mut sub,
            )?;
            out.reselected |= sub.reselected;
            out.added.extend(sub.added);
        }
    }
    finish(g, k, &cur, LemmaKind::Bucket, "all buckets processed")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enlarge::frame::build_frame;
    use crate::gadget::{gen_hanging, HangingSpec};
    use crate::graph::{girth_and_smallest_cycle, named};

    /// Hanging instances whose first smallest cycle has every edge endangered.
    fn framed_instances() -> Vec<(Graph, Graph, usize, Frame)> {
        let mut out = Vec::new();
        for seed in 0..40 {
            let spec = HangingSpec {
                n: 80 + (seed as usize % 5) * 6,
                k: 45 + seed as usize % 4,
                cycle: 12 + (seed as usize % 3) * 3,
                paths: 3,
                density: 0.6,
            };
            let inst = gen_hanging(spec, seed).unwrap();
            let sc = girth_and_smallest_cycle(&inst.sub).unwrap();
            if first_safe_cycle_edge(&inst.base, &inst.sub, spec.k, &sc).is_some() {
                continue;
            }
            let frame = build_frame(&inst.base, &inst.sub, spec.k, &sc).unwrap();
            out.push((inst.base, inst.sub, spec.k, frame));
        }
        assert!(out.len() >= 5, "only {} framed instances", out.len());
        out
    }

    #[test]
    fn large_cycle_takes_the_first_removable_edge() {
        // C_n with n = k + 1: every edge leaves a path of length k.
        let c = named::cycle(9);
        let sc = girth_and_smallest_cycle(&c).unwrap();
        assert_eq!(break_large_cycle(&c, &c, 8, &sc).unwrap(), sc.edges()[0]);
        // A 9-cycle with a pendant vertex, n = 10 and k = 8.
        let h = Graph::from_edges(10, c.edges().iter().copied().chain([Edge::new(0, 9)])).unwrap();
        let sc = girth_and_smallest_cycle(&h).unwrap();
        let e = break_large_cycle(&h, &h, 8, &sc).unwrap();
        assert!(is_k_spanner(&h, &h.without_edge(e), 8));
        // Below the stretch no edge of C_6 can go.
        let c6 = named::cycle(6);
        let sc = girth_and_smallest_cycle(&c6).unwrap();
        assert!(matches!(break_large_cycle(&c6, &c6, 4, &sc), Err(Error::Lemma(_))));
    }

    #[test]
    fn pruning_stops_at_endangered_cycles() {
        let c = named::cycle(7);
        assert_eq!(prune_safe_cycle_edges(&c, &c, 5), c);
        let k5 = named::complete(5);
        let pruned = prune_safe_cycle_edges(&k5, &k5, 2);
        assert!(is_k_spanner(&k5, &pruned, 2));
        assert!(pruned.m() < k5.m());
    }

    #[test]
    fn frames_satisfy_their_shape() {
        for (_, h, _, f) in framed_instances() {
            let l = f.sc.len();
            assert_eq!(f.sc.at(0), f.a);
            assert_eq!(f.sc.at(f.segment_len()), f.b);
            assert!(2 * f.segment_len() <= l);
            assert_eq!(f.a_prev, f.sc.at(l - 1));
            assert_eq!(f.b_next, f.sc.at(f.segment_len() + 1));
            assert!(f.tree.has_edge(f.e1) || f.tree.has_edge(f.e2));
            assert!(h.has_edge(f.e1) && h.has_edge(f.e2));
            assert_eq!(f.antipodal, Edge::new(f.sc.at(l / 2), f.sc.at(l / 2 + 1)));
        }
    }

    #[test]
    fn extreme_step_needs_a_removable_edge() {
        // A frame exists only when no cycle edge is safe, so the extreme rule fails.
        for (g, h, k, f) in framed_instances() {
            let err = step_extreme(&g, &h, k, &f).unwrap_err();
            let Error::Lemma(v) = err else { panic!("{err}") };
            assert_eq!(v.kind, LemmaKind::Extreme);
        }
    }

    #[test]
    fn buckets_partition_the_endangered_pairs() {
        for (g, h, k, f) in framed_instances() {
            let bad = spanner_violations(&g, &h.without_edge(f.e2), k, None);
            assert!(!bad.is_empty());
            let pairs = oriented(&f, &bad).unwrap();
            for p in &pairs {
                assert!(f.tree.is_ancestor(f.a_prev, p.u));
                assert!(!f.tree.is_ancestor(f.a_prev, p.v));
                assert!(f.sc.contains(p.u_proj) && f.sc.contains(p.v_proj));
            }
            for t in 1..=4 {
                let buckets = bucket_partition(&f, &pairs, t).unwrap();
                assert_eq!(buckets.len(), t * t);
                let mut seen: Vec<Edge> = buckets.iter().flatten().map(E2Pair::edge).collect();
                seen.sort();
                let mut want = bad.clone();
                want.sort();
                assert_eq!(seen, want, "t = {t}");
            }
        }
    }

    #[test]
    fn repair_steps_keep_the_spanner_within_their_budget() {
        for (g, h, k, f) in framed_instances() {
            let check = |out: &StepOutcome, budget: usize| {
                assert_eq!(out.removed, f.e2);
                assert!(out.added.len() <= budget);
                assert!(!out.reselected);
                let mut r = h.without_edge(out.removed);
                for &e in &out.added {
                    assert!(g.has_edge(e) && !h.has_edge(e) || e == f.e2);
                    r = r.with_edge(e);
                }
                assert!(is_k_spanner(&g, &r, k));
            };
            if let Ok(out) = step_good(&g, &h, k, &f) {
                check(&out, 1);
            }
            if let Ok(out) = step_approx2(&g, &h, k, &f) {
                check(&out, 2);
            }
            for t in 1..=4 {
                check(&step_bucket(&g, &h, k, &f, t).unwrap(), 2 * t * t);
            }
            assert!(step_bucket(&g, &h, k, &f, 5).is_err());
        }
    }

    #[test]
    fn steps_are_deterministic() {
        for (g, h, k, f) in framed_instances().into_iter().take(3) {
            let again = build_frame(&g, &h, k, &f.sc).unwrap();
            assert_eq!((again.e1, again.e2, again.a, again.b), (f.e1, f.e2, f.a, f.b));
            assert_eq!(step_bucket(&g, &h, k, &f, 3).unwrap(), step_bucket(&g, &h, k, &again, 3).unwrap());
        }
    }
}
