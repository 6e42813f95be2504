//! Turning an arbitrary k-spanner into one of girth at least `k + 2`.
//!
//! The driver repeatedly looks at a smallest cycle of the current spanner `H`.
//! Long cycles lose any removable edge; otherwise removable cycle edges are
//! pruned, and once every cycle edge is a danger a [`Frame`] is built and the
//! selected regime decides what to remove and what to add back. Every mutation
//! is verified before it is committed.

mod frame;
mod steps;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{girth, girth_and_smallest_cycle, is_k_spanner, Edge, Graph, OrientedCycle};

pub use frame::{build_frame, find_endangered, AnchorTree, EndangeredPair, Frame};
pub use steps::{
    break_large_cycle, bucket_of, bucket_partition, first_safe_cycle_edge, orient_pair,
    projection_span, prune_safe_cycle_edges, step_approx2, step_bucket, step_extreme, step_good,
    E2Pair, StepOutcome,
};
pub use trace::{Branch, ComponentSummary, EnlargeTrace, IterationRecord, Totals};

pub const DEFAULT_SLACK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Auto,
    Extreme,
    Good,
    Approx2,
    Bucket(usize),
}

impl Regime {
    /// Concrete regimes from strongest to weakest guarantee, as tried by `Auto`.
    pub const LADDER: [Regime; 5] = [
        Regime::Extreme,
        Regime::Good,
        Regime::Approx2,
        Regime::Bucket(3),
        Regime::Bucket(4),
    ];

    /// Threshold ratio `(num, den)`: the regime targets `k >= ceil(num * n / den) + slack`.
    pub fn threshold(self) -> Option<(usize, usize)> {
        match self {
            Regime::Auto => None,
            Regime::Extreme => Some((3, 4)),
            Regime::Good => Some((2, 3)),
            Regime::Approx2 => Some((4, 7)),
            Regime::Bucket(t) => Some((4 * t, 9 * t - 4)),
        }
    }

    /// Smallest `k` inside the regime's band for `n` vertices.
    pub fn min_k(self, n: usize, slack: usize) -> Option<usize> {
        self.threshold().map(|(num, den)| (num * n).div_ceil(den) + slack)
    }

    /// Largest allowed `|E_R|` on a connected component with `n` vertices and `m_h` spanner edges.
    pub fn bound_rhs(self, n: usize, m_h: usize) -> i64 {
        let (n, m) = (n as i64, m_h as i64);
        match self {
            Regime::Auto | Regime::Extreme | Regime::Good => m,
            Regime::Approx2 => n + 2 * (m - n) + 1,
            Regime::Bucket(t) => {
                let t2 = (t * t) as i64;
                n + 2 * t2 * (m - n) + 2 * t2
            }
        }
    }

    /// The concrete regime to run and whether `k` lies inside its band.
    pub fn resolve(self, n: usize, k: usize, slack: usize) -> (Regime, bool) {
        match self {
            Regime::Auto => Regime::LADDER
                .iter()
                .find(|r| r.min_k(n, slack).is_some_and(|m| k >= m))
                .map_or((Regime::Bucket(4), false), |&r| (r, true)),
            r => (r, r.min_k(n, slack).is_some_and(|m| k >= m)),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Auto => f.write_str("auto"),
            Regime::Extreme => f.write_str("extreme"),
            Regime::Good => f.write_str("good"),
            Regime::Approx2 => f.write_str("approx2"),
            Regime::Bucket(t) => write!(f, "bucket:{t}"),
        }
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Regime::Auto),
            "extreme" => Ok(Regime::Extreme),
            "good" => Ok(Regime::Good),
            "approx2" => Ok(Regime::Approx2),
            _ => {
                let t = s
                    .strip_prefix("bucket:")
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::input(format!("unknown regime `{s}`")))?;
                if (1..=4).contains(&t) {
                    Ok(Regime::Bucket(t))
                } else {
                    Err(Error::input(format!("bucket count {t} outside 1..=4")))
                }
            }
        }
    }
}

impl Serialize for Regime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKind {
    LargeCycle,
    Extreme,
    Good,
    Approx2,
    Bucket,
    Dependence,
    Consecutive,
    FrameShape,
    AnchorTree,
    PairOrientation,
    Partition,
    AddedEdgeCycle,
    Progress,
}

/// A step whose success the theory promises failed verification.
///
/// Carries the instance at the moment of failure so it can be replayed.
#[derive(Debug, Clone, Serialize, thiserror::Error)]
#[error("lemma violation ({kind:?}): {detail}")]
pub struct LemmaViolation {
    pub kind: LemmaKind,
    pub detail: String,
    pub k: Option<usize>,
    pub base: Option<Graph>,
    pub spanner: Option<Graph>,
    pub cycle: Option<Vec<usize>>,
    pub trace: Option<EnlargeTrace>,
}

impl LemmaViolation {
    pub fn bare(kind: LemmaKind, detail: impl Into<String>) -> Self {
        LemmaViolation {
            kind,
            detail: detail.into(),
            k: None,
            base: None,
            spanner: None,
            cycle: None,
            trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("violation serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnlargeOptions {
    pub regime: Regime,
    pub slack: usize,
}

impl Default for EnlargeOptions {
    fn default() -> Self {
        EnlargeOptions {
            regime: Regime::Auto,
            slack: DEFAULT_SLACK,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Enlarged {
    pub result: Graph,
    pub trace: EnlargeTrace,
}

/// Transforms the k-spanner `h` of `g` into a k-spanner of girth at least `k + 2`.
///
/// Components of `g` are handled independently, each with its own vertex count
/// for regime selection and bounds. A failed step yields [`Error::Lemma`] carrying
/// the full instance and the trace so far.
pub fn enlarge_girth(g: &Graph, h: &Graph, k: usize, opts: EnlargeOptions) -> Result<Enlarged> {
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    if !h.is_subgraph_of(g) {
        return Err(Error::invariant("the spanner is not a subgraph of the base graph"));
    }
    if !is_k_spanner(g, h, k) {
        return Err(Error::invariant(format!("the input is not a {k}-spanner of the base graph")));
    }

    let mut trace = EnlargeTrace {
        k,
        regime: opts.regime.to_string(),
        slack: opts.slack,
        n: g.n(),
        iterations: Vec::new(),
        components: Vec::new(),
        totals: None,
    };
    let mut stats = Stats::default();
    let mut result: Vec<Edge> = Vec::new();
    let comps = g.components();

    for (ci, verts) in comps.iter().enumerate() {
        let gc = g.induced(verts);
        let hc = h.induced(verts);
        let (regime, in_band) = opts.regime.resolve(verts.len(), k, opts.slack);
        let lift = |e: Edge| Edge::new(verts[e.lo()], verts[e.hi()]);
        let mut run = ComponentRun {
            g: &gc,
            k,
            regime,
            h: hc.clone(),
            records: Vec::new(),
        };
        let outcome = run.run(&mut stats);
        let lifted: Vec<IterationRecord> = run
            .records
            .iter()
            .map(|r| IterationRecord {
                component: ci,
                removed: lift(r.removed),
                added: r.added.iter().copied().map(lift).collect(),
                ..r.clone()
            })
            .collect();
        trace.iterations.extend(lifted);
        if let Err(err) = outcome {
            let Error::Lemma(mut v) = err else { return Err(err) };
            let mut current: Vec<Edge> = result.clone();
            current.extend(run.h.edges().iter().copied().map(lift));
            current.extend(
                h.edges()
                    .iter()
                    .copied()
                    .filter(|e| comps[ci + 1..].iter().any(|c| c.binary_search(&e.lo()).is_ok())),
            );
            v.k = Some(k);
            v.base = Some(g.clone());
            v.spanner = Some(Graph::from_edges(g.n(), current)?);
            v.cycle = v.cycle.take().map(|c| c.into_iter().map(|x| verts[x]).collect());
            trace.totals = Some(stats.totals(&trace.components, &trace.iterations, None));
            v.trace = Some(trace);
            return Err(Error::Lemma(v));
        }
        let out_edges = run.h.m();
        trace.components.push(ComponentSummary {
            vertices: verts.len(),
            regime: regime.to_string(),
            in_band,
            in_edges: hc.m(),
            out_edges,
            bound_rhs: regime.bound_rhs(verts.len(), hc.m()),
            iterations: run.records.len(),
            iteration_bound: hc.m() as i64 - verts.len() as i64 + 1,
        });
        if regime == Regime::Extreme && !run.h.is_subgraph_of(&hc) {
            stats.subset_broken = true;
        }
        result.extend(run.h.edges().iter().copied().map(lift));
    }

    let r = Graph::from_edges(g.n(), result)?;
    let totals = stats.totals(&trace.components, &trace.iterations, Some(&r));
    trace.totals = Some(totals);
    Ok(Enlarged { result: r, trace })
}

#[derive(Default)]
struct Stats {
    frames: usize,
    pairs: usize,
    reselections: usize,
    subset_broken: bool,
}

impl Stats {
    fn totals(&self, comps: &[ComponentSummary], iters: &[IterationRecord], r: Option<&Graph>) -> Totals {
        let in_edges = comps.iter().map(|c| c.in_edges).sum();
        let out_edges = comps.iter().map(|c| c.out_edges).sum();
        let bound_rhs = comps.iter().map(|c| c.bound_rhs).sum();
        let iteration_bound = comps.iter().map(|c| c.iteration_bound.max(0)).sum();
        Totals {
            in_edges,
            out_edges,
            bound_rhs,
            bound_ok: !self.subset_broken
                && comps.iter().all(|c| c.out_edges as i64 <= c.bound_rhs),
            iterations: iters.len(),
            iteration_bound,
            iterations_ok: comps
                .iter()
                .all(|c| c.iterations as i64 <= c.iteration_bound.max(0)),
            components: comps.len(),
            frames_checked: self.frames,
            pairs_checked: self.pairs,
            reselection_flags: self.reselections,
            girth_after: r.and_then(girth),
        }
    }
}

struct ComponentRun<'a> {
    g: &'a Graph,
    k: usize,
    regime: Regime,
    h: Graph,
    records: Vec<IterationRecord>,
}

impl ComponentRun<'_> {
    fn run(&mut self, stats: &mut Stats) -> Result<()> {
        let (g, k) = (self.g, self.k);
        let n = g.n();
        // Each iteration removes an edge; additions are bounded per step, so this only
        // trips if the loop stops making progress.
        let cap = 4 * g.m() + 16;
        while let Some(sc) = girth_and_smallest_cycle(&self.h) {
            let l = sc.len();
            if l >= k + 2 {
                break;
            }
            if self.records.len() >= cap {
                return Err(self.fail(
                    LemmaViolation::bare(
                        LemmaKind::Progress,
                        format!("no termination after {cap} iterations"),
                    ),
                    &sc,
                ));
            }
            let (branch, outcome) = if 2 * n.saturating_sub(k) <= l {
                let e = break_large_cycle(g, &self.h, k, &sc).map_err(|e| self.attach(e, &sc))?;
                (Branch::LargeCycle, plain_removal(e))
            } else if let Some(e) = first_safe_cycle_edge(g, &self.h, k, &sc) {
                (Branch::Prune, plain_removal(e))
            } else {
                let frame = self.frame(&sc).map_err(|e| self.attach(e, &sc))?;
                stats.frames += 1;
                stats.pairs += frame.pairs_checked;
                let out = match self.regime {
                    Regime::Extreme => step_extreme(g, &self.h, k, &frame),
                    Regime::Good => step_good(g, &self.h, k, &frame),
                    Regime::Approx2 => step_approx2(g, &self.h, k, &frame),
                    Regime::Bucket(t) => step_bucket(g, &self.h, k, &frame, t),
                    Regime::Auto => unreachable!("resolved before running"),
                }
                .map_err(|e| self.attach(e, &sc))?;
                if out.reselected {
                    stats.reselections += 1;
                }
                let branch = match self.regime {
                    Regime::Extreme => Branch::Extreme,
                    Regime::Good => Branch::Good,
                    Regime::Approx2 => Branch::Approx2,
                    _ => Branch::Bucket,
                };
                (branch, out)
            };

            let mut next = self.h.without_edge(outcome.removed);
            for &f in &outcome.added {
                next = next.with_edge(f);
            }
            let verified = is_k_spanner(g, &next, k);
            self.records.push(IterationRecord {
                component: 0,
                girth_before: l,
                branch,
                removed: outcome.removed,
                added: outcome.added,
                endangered: outcome.endangered,
                verified,
            });
            if !verified {
                return Err(self.fail(
                    LemmaViolation::bare(LemmaKind::Progress, "committed step lost the spanner property"),
                    &sc,
                ));
            }
            self.h = next;
        }
        Ok(())
    }

    fn frame(&self, sc: &OrientedCycle) -> Result<Frame> {
        let mut dangers = Vec::with_capacity(sc.len());
        for e in sc.edges() {
            dangers.push(find_endangered(self.g, &self.h, self.k, sc, e)?);
        }
        frame::frame_from_dangers(&self.h, sc, dangers)
    }

    fn attach(&self, err: Error, sc: &OrientedCycle) -> Error {
        match err {
            Error::Lemma(v) => self.fail(*v, sc),
            other => other,
        }
    }

    fn fail(&self, mut v: LemmaViolation, sc: &OrientedCycle) -> Error {
        v.cycle = Some(sc.vertices().to_vec());
        Error::Lemma(Box::new(v))
    }
}

fn plain_removal(e: Edge) -> StepOutcome {
    StepOutcome {
        removed: e,
        added: Vec::new(),
        endangered: 0,
        reselected: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn regime_parsing_and_thresholds() {
        for s in ["auto", "extreme", "good", "approx2", "bucket:3"] {
            assert_eq!(s.parse::<Regime>().unwrap().to_string(), s);
        }
        assert!("bucket:5".parse::<Regime>().is_err());
        assert!("fancy".parse::<Regime>().is_err());
        assert_eq!(Regime::Extreme.min_k(40, 8), Some(38));
        assert_eq!(Regime::Bucket(3).min_k(46, 0), Some(24));
        assert_eq!(Regime::Bucket(4).threshold(), Some((16, 32)));
        assert_eq!(Regime::Auto.resolve(40, 38, 8), (Regime::Extreme, true));
        assert_eq!(Regime::Auto.resolve(40, 35, 8), (Regime::Good, true));
        assert_eq!(Regime::Auto.resolve(40, 10, 8), (Regime::Bucket(4), false));
        assert_eq!(Regime::Approx2.bound_rhs(10, 12), 15);
        assert_eq!(Regime::Bucket(2).bound_rhs(10, 12), 10 + 16 + 8);
    }

    #[test]
    fn already_large_girth_is_a_fixed_point() {
        let c = named::cycle(7);
        let out = enlarge_girth(&c, &c, 5, EnlargeOptions::default()).unwrap();
        assert_eq!(out.result, c);
        assert!(out.trace.iterations.is_empty());
    }

    #[test]
    fn ten_cycle_with_chord() {
        let g = named::cycle(10).with_edge(Edge::new(0, 2));
        let out = enlarge_girth(&g, &g, 9, EnlargeOptions::default()).unwrap();
        assert_eq!(out.result.m(), 9);
        assert!(out.result.is_connected());
        let branches: Vec<Branch> = out.trace.iterations.iter().map(|r| r.branch).collect();
        assert_eq!(branches, vec![Branch::LargeCycle, Branch::LargeCycle]);
        assert_eq!(out.trace.iterations[0].removed, Edge::new(0, 1));
    }

    #[test]
    fn rejects_non_spanners() {
        let g = named::cycle(6);
        let h = named::path(6);
        assert!(matches!(
            enlarge_girth(&g, &h, 3, EnlargeOptions::default()),
            Err(Error::Invariant(_))
        ));
        assert!(enlarge_girth(&g, &named::complete(6), 3, EnlargeOptions::default()).is_err());
    }
}
