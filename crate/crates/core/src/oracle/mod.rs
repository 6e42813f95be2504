//! Exact answers by exhaustive search, for graphs small enough to afford it.

mod universe;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::BitGraph;
use crate::enlarge::{enlarge_girth, EnlargeOptions, Regime};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

pub use universe::{canonical_code, connected_classes, MAX_UNIVERSE_N};

pub const MAX_EDGES: usize = 22;
pub const WITNESS_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GirthCount {
    /// `None` stands for an acyclic witness.
    pub girth: Option<usize>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptReport {
    pub k: usize,
    pub opt_size: usize,
    /// Exact number of minimum k-spanners (1 when enumeration was not requested).
    pub witness_count: u64,
    /// Up to [`WITNESS_CAP`] minimum spanners.
    pub witnesses: Vec<Graph>,
    pub girth_profile: Vec<GirthCount>,
}

impl OptReport {
    /// Minimum spanners with girth at least `k + 2`.
    pub fn large_girth_count(&self) -> u64 {
        self.girth_profile
            .iter()
            .filter(|c| c.girth.is_none_or(|x| x >= self.k + 2))
            .map(|c| c.count)
            .sum()
    }
}

/// Minimum k-spanner by ascending-size subset search.
///
/// Sizes are tried from `n - components` upward; a branch is cut as soon as the
/// chosen edges plus all undecided ones no longer span `g`. With `enumerate_all`
/// every minimum spanner is counted and its girth recorded.
pub fn min_spanner(g: &Graph, k: usize, enumerate_all: bool) -> Result<OptReport> {
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    if g.m() > MAX_EDGES {
        return Err(Error::OracleCap(format!(
            "{} edges exceed the oracle cap of {MAX_EDGES}; try a graph with fewer edges",
            g.m()
        )));
    }
    let m = g.m();
    let full: u64 = (1u64 << m) - 1;
    let mut search = SubsetSearch {
        n: g.n(),
        edges: g.edges(),
        k,
        enumerate_all,
        count: 0,
        witnesses: Vec::new(),
        profile: BTreeMap::new(),
    };
    let lower = g.n() - g.component_count();
    for size in lower..=m {
        search.dfs(0, 0, 0, size, full);
        if search.count > 0 {
            let mut profile: Vec<GirthCount> = search
                .profile
                .iter()
                .map(|(&girth, &count)| GirthCount { girth, count })
                .collect();
            // Acyclic last.
            profile.sort_by_key(|c| c.girth.unwrap_or(usize::MAX));
            return Ok(OptReport {
                k,
                opt_size: size,
                witness_count: search.count,
                witnesses: search.witnesses,
                girth_profile: profile,
            });
        }
    }
    unreachable!("the graph spans itself")
}

struct SubsetSearch<'a> {
    n: usize,
    edges: &'a [Edge],
    k: usize,
    enumerate_all: bool,
    count: u64,
    witnesses: Vec<Graph>,
    profile: BTreeMap<Option<usize>, u64>,
}

impl SubsetSearch<'_> {
    /// Returns false to stop the whole search (first witness found, not enumerating).
    fn dfs(&mut self, i: usize, chosen: u64, size: usize, target: usize, full: u64) -> bool {
        let m = self.edges.len();
        if size == target {
            let h = BitGraph::from_mask(self.n, self.edges, chosen);
            if h.spans(self.edges, self.k) {
                self.record(chosen, &h);
                return self.enumerate_all;
            }
            return true;
        }
        if size + (m - i) < target {
            return true;
        }
        if !self.dfs(i + 1, chosen | 1 << i, size + 1, target, full) {
            return false;
        }
        // Excluding edge i: the best completion keeps everything undecided.
        let rest = full & !((1u64 << (i + 1)) - 1);
        let optimistic = BitGraph::from_mask(self.n, self.edges, chosen | rest);
        if optimistic.spans(self.edges, self.k) {
            return self.dfs(i + 1, chosen, size, target, full);
        }
        true
    }

    fn record(&mut self, mask: u64, h: &BitGraph) {
        self.count += 1;
        *self.profile.entry(h.girth()).or_default() += 1;
        if self.witnesses.len() < WITNESS_CAP {
            let edges = self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            self.witnesses
                .push(Graph::from_edges(self.n, edges).expect("subset of valid edges"));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    ExtremelyGood,
    Good,
    NotGood,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub n: usize,
    pub k: usize,
    pub class: PairClass,
    pub graphs_checked: usize,
    /// An `n`-vertex graph none of whose minimum spanners has girth `>= k + 2`.
    pub counterexample: Option<Graph>,
    /// An `n`-vertex graph with some minimum spanner of girth `<= k + 1`.
    pub mixed_example: Option<Graph>,
}

fn pad(g: &Graph, n: usize) -> Graph {
    Graph::from_edges(n, g.edges().iter().copied()).expect("padding keeps edges valid")
}

/// Classifies `(n, k)` over every graph on `n` vertices.
///
/// A disconnected graph's minimum spanners are unions of its components' minimum
/// spanners, so it is enough to range over connected graphs on at most `n`
/// vertices; witnesses found on fewer vertices are padded with isolated vertices.
pub fn classify_pair(n: usize, k: usize) -> Result<Classification> {
    if n > MAX_UNIVERSE_N {
        return Err(Error::OracleCap(format!(
            "classification stops at n = {MAX_UNIVERSE_N}, asked for {n}"
        )));
    }
    if k == 0 {
        return Err(Error::input("stretch k must be at least 1"));
    }
    let mut out = Classification {
        n,
        k,
        class: PairClass::ExtremelyGood,
        graphs_checked: 0,
        counterexample: None,
        mixed_example: None,
    };
    for size in 1..=n {
        for g in connected_classes(size)? {
            out.graphs_checked += 1;
            let rep = min_spanner(&g, k, true)?;
            let good = rep.large_girth_count();
            if good == 0 && out.counterexample.is_none() {
                out.counterexample = Some(pad(&g, n));
            }
            if good < rep.witness_count && out.mixed_example.is_none() {
                out.mixed_example = Some(pad(&g, n));
            }
        }
    }
    out.class = if out.counterexample.is_some() {
        PairClass::NotGood
    } else if out.mixed_example.is_some() {
        PairClass::Good
    } else {
        PairClass::ExtremelyGood
    };
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossReport {
    pub n: usize,
    pub k: usize,
    pub regime: String,
    pub opt: usize,
    pub in_edges: usize,
    pub out_edges: usize,
    pub bound_rhs: i64,
    pub bound_ok: bool,
    /// `(alpha, beta)` of the regime's approximation guarantee.
    pub alpha: i64,
    pub beta: i64,
    /// `|E_R| - n` against `alpha * (OPT - n) + beta`.
    pub approx_lhs: i64,
    pub approx_rhs: i64,
    pub approx_ok: bool,
    /// The guarantee only speaks about inputs that are themselves minimum spanners.
    pub approx_applicable: bool,
}

/// Runs the enlarger and sets its output against the exact optimum.
pub fn cross_check_enlarger(g: &Graph, h: &Graph, k: usize, regime: Regime, slack: usize) -> Result<CrossReport> {
    let opt = min_spanner(g, k, false)?.opt_size;
    let out = enlarge_girth(g, h, k, EnlargeOptions { regime, slack })?;
    let totals = out.trace.totals.expect("finished runs carry totals");
    let used = out
        .trace
        .components
        .iter()
        .map(|c| c.regime.parse::<Regime>())
        .collect::<Result<Vec<_>>>()?;
    let weakest = used.iter().copied().max_by_key(|&r| alpha_beta(r)).unwrap_or(Regime::Extreme);
    let (alpha, beta) = alpha_beta(weakest);
    let n = g.n() as i64;
    let approx_lhs = out.result.m() as i64 - n;
    let approx_rhs = alpha * (opt as i64 - n) + beta;
    Ok(CrossReport {
        n: g.n(),
        k,
        regime: regime.to_string(),
        opt,
        in_edges: h.m(),
        out_edges: out.result.m(),
        bound_rhs: totals.bound_rhs,
        bound_ok: totals.bound_ok,
        alpha,
        beta,
        approx_lhs,
        approx_rhs,
        approx_ok: approx_lhs <= approx_rhs,
        approx_applicable: h.m() == opt,
    })
}

fn alpha_beta(r: Regime) -> (i64, i64) {
    match r {
        Regime::Auto | Regime::Extreme | Regime::Good => (1, 0),
        Regime::Approx2 => (2, 1),
        Regime::Bucket(t) => {
            let t2 = (t * t) as i64;
            (2 * t2, 2 * t2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_k_spanner, named};

    #[test]
    fn trees_are_their_own_optimum() {
        let t = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let rep = min_spanner(&t, 2, true).unwrap();
        assert_eq!((rep.opt_size, rep.witness_count), (4, 1));
        assert_eq!(rep.witnesses[0], t);
    }

    #[test]
    fn pentagon_optima() {
        let c5 = named::cycle(5);
        let rep = min_spanner(&c5, 4, true).unwrap();
        assert_eq!((rep.opt_size, rep.witness_count), (4, 5));
        assert_eq!(rep.girth_profile, vec![GirthCount { girth: None, count: 5 }]);
        let rep = min_spanner(&c5, 3, true).unwrap();
        assert_eq!((rep.opt_size, rep.witness_count), (5, 1));
        assert_eq!(rep.girth_profile, vec![GirthCount { girth: Some(5), count: 1 }]);
    }

    #[test]
    fn witnesses_are_minimal_spanners() {
        let g = named::complete(5);
        for k in 1..5 {
            let rep = min_spanner(&g, k, true).unwrap();
            for w in &rep.witnesses {
                assert_eq!(w.m(), rep.opt_size);
                assert!(is_k_spanner(&g, w, k));
                for &e in w.edges() {
                    assert!(!is_k_spanner(&g, &w.without_edge(e), k));
                }
            }
        }
        // K5 with k = 2: stars are the optimum and there are five of them.
        let rep = min_spanner(&g, 2, true).unwrap();
        assert_eq!((rep.opt_size, rep.witness_count), (4, 5));
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(matches!(min_spanner(&named::complete(8), 2, false), Err(Error::OracleCap(_))));
        assert!(matches!(classify_pair(8, 3), Err(Error::OracleCap(_))));
    }

    #[test]
    fn spanning_trees_make_n_minus_one_good() {
        for n in 2..=6 {
            let c = classify_pair(n, n - 1).unwrap();
            assert_ne!(c.class, PairClass::NotGood, "n = {n}");
        }
    }

    #[test]
    fn triangle_with_k_one_is_extremely_good() {
        // k = 1 forces H = G, whose girth 3 is the required k + 2.
        assert_eq!(classify_pair(3, 1).unwrap().class, PairClass::ExtremelyGood);
    }

    #[test]
    fn cross_check_on_identity_input() {
        let g = named::cycle(6).with_edge(Edge::new(0, 3));
        let rep = cross_check_enlarger(&g, &g, 5, Regime::Auto, 0).unwrap();
        // A Hamiltonian path already 5-spans the chord and the closing edge.
        assert_eq!(rep.opt, 5);
        assert!(!rep.approx_applicable);
        assert!(rep.bound_ok && rep.approx_ok);
    }
}
