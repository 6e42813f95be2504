//! Seeded benchmark suites producing one row per trial.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enlarge::{enlarge_girth, EnlargeOptions, Regime, DEFAULT_SLACK};
use crate::error::{Error, Result};
use crate::gadget::{check_arc_inequality, gen_hanging, gen_lower_bound, gen_random, HangingSpec, RandomModel};
use crate::graph::{girth, is_k_spanner, Edge, Graph};
use crate::greedy::{greedy_spanner, reverse_delete, EdgeOrdering};
use crate::oracle::cross_check_enlarger;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Regimes,
    Gadget,
    OracleCross,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regimes" => Ok(Suite::Regimes),
            "gadget" => Ok(Suite::Gadget),
            "oracle-cross" => Ok(Suite::OracleCross),
            _ => Err(Error::input(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Regimes => "regimes",
            Suite::Gadget => "gadget",
            Suite::OracleCross => "oracle-cross",
        })
    }
}

/// How the input spanner is obtained from the base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    /// The base graph itself.
    Identity,
    /// A greedy spanner with a few base edges thrown back in.
    GreedyInjected,
    /// An inclusion-minimal spanner found by reverse deletion.
    ReverseDelete,
    /// A greedy spanner for a smaller stretch.
    GreedySmallerK,
}

impl Derivation {
    pub const ALL: [Derivation; 4] = [
        Derivation::Identity,
        Derivation::GreedyInjected,
        Derivation::ReverseDelete,
        Derivation::GreedySmallerK,
    ];
}

/// A k-spanner of `g` built as `how` prescribes.
pub fn derive_spanner(g: &Graph, k: usize, how: Derivation, rng: &mut impl Rng) -> Result<Graph> {
    Ok(match how {
        Derivation::Identity => g.clone(),
        Derivation::GreedyInjected => {
            let h = greedy_spanner(g, k, &EdgeOrdering::shuffled(g, rng))?.sub;
            let mut rest: Vec<Edge> = g.edges().iter().copied().filter(|&e| !h.has_edge(e)).collect();
            rest.shuffle(rng);
            let take = rng.gen_range(1..=5).min(rest.len());
            rest[..take].iter().fold(h, |acc, &e| acc.with_edge(e))
        }
        Derivation::ReverseDelete => reverse_delete(g, k, &EdgeOrdering::shuffled(g, rng))?.sub,
        Derivation::GreedySmallerK => {
            let k0 = rng.gen_range(1..=k);
            greedy_spanner(g, k0, &EdgeOrdering::shuffled(g, rng))?.sub
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub trial: usize,
    pub seed: u64,
    pub model: String,
    pub derivation: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub regime: String,
    pub in_edges: usize,
    pub out_edges: usize,
    pub bound_rhs: i64,
    pub bound_ok: bool,
    pub iterations: usize,
    pub iteration_bound: i64,
    pub iterations_ok: bool,
    pub girth_ok: bool,
    pub frames: usize,
    pub pairs: usize,
    /// Lemma violations for enlarger suites, arc-inequality violations for the gadget suite.
    pub violations: usize,
    pub lemma: String,
    pub opt: Option<usize>,
}

/// Regimes exercised by the `regimes` suite, in report order.
pub const SUITE_REGIMES: [Regime; 5] = Regime::LADDER;

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Result<Vec<Row>> {
    match suite {
        Suite::Regimes => regimes(seed, trials, DEFAULT_SLACK),
        Suite::Gadget => gadget(seed, trials),
        Suite::OracleCross => oracle_cross(seed, trials),
    }
}

fn trial_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = rng.gen::<u64>();
    for &p in parts {
        acc = ChaCha8Rng::seed_from_u64(acc ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15)).gen();
    }
    acc
}

/// Instance families of the `regimes` suite, in report order.
pub const REGIME_MODELS: [&str; 3] = ["chords", "gnp", "hanging"];

/// One enlarger trial per (regime, model, trial) with `k` uniform over the regime's
/// band `[ceil(ratio * n) + slack, n - 1]`.
///
/// The `hanging` family narrows `k` to the window where every edge of the short
/// cycle is endangered whenever the band allows it, so that frames get built.
pub fn regimes(seed: u64, trials: usize, slack: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (ri, &regime) in SUITE_REGIMES.iter().enumerate() {
        for (mi, &family) in REGIME_MODELS.iter().enumerate() {
            for trial in 0..trials {
                let ts = trial_seed(seed, &[ri as u64, mi as u64, trial as u64]);
                let mut rng = ChaCha8Rng::seed_from_u64(ts);
                let opts = EnlargeOptions { regime, slack };
                if family == "hanging" {
                    let (spec, model) = hanging_spec(regime, slack, &mut rng);
                    let inst = gen_hanging(spec, rng.gen())?;
                    let row = enlarge_row("regimes", trial, ts, &model, "sparse", &inst.base, &inst.sub, spec.k, opts);
                    rows.push(row);
                    continue;
                }
                let n = rng.gen_range(36..=52);
                let lo = regime.min_k(n, slack).expect("concrete regime");
                let k = rng.gen_range(lo..n);
                let model = if family == "chords" {
                    RandomModel::CyclePlusChords { c: rng.gen_range(1..=n) }
                } else {
                    RandomModel::Gnp {
                        p: rng.gen_range(0.06..0.16),
                        connected: true,
                    }
                };
                let g = gen_random(n, model, rng.gen())?;
                let how = Derivation::ALL[trial % Derivation::ALL.len()];
                let h = derive_spanner(&g, k, how, &mut rng)?;
                let name = derivation_name(how);
                rows.push(enlarge_row("regimes", trial, ts, &model.to_string(), &name, &g, &h, k, opts));
            }
        }
    }
    Ok(rows)
}

fn hanging_spec(regime: Regime, slack: usize, rng: &mut impl Rng) -> (HangingSpec, String) {
    let n = rng.gen_range(60..=130);
    let cycle = rng.gen_range(6..=36);
    let mut spec = HangingSpec {
        n,
        k: 0,
        cycle,
        paths: 3,
        density: rng.gen_range(0.3..1.0),
    };
    let band_lo = regime.min_k(n, slack).expect("concrete regime");
    // Frames need girth <= k + 1 and a cycle shorter than 2(n - k).
    let lo = band_lo.max(cycle - 1);
    let hi = spec.frame_k_max().min(n - 1).min(n - cycle / 2 - 1);
    spec.k = if lo <= hi { rng.gen_range(lo..=hi) } else { rng.gen_range(band_lo..n) };
    let model = format!("hanging:{}:{}:{:.3}", cycle, spec.paths, spec.density);
    (spec, model)
}

fn derivation_name(how: Derivation) -> String {
    serde_json::to_value(how)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

#[allow(clippy::too_many_arguments)]
fn enlarge_row(
    suite: &str,
    trial: usize,
    seed: u64,
    model: &str,
    derivation: &str,
    g: &Graph,
    h: &Graph,
    k: usize,
    opts: EnlargeOptions,
) -> Row {
    let mut row = Row {
        suite: suite.into(),
        trial,
        seed,
        model: model.into(),
        derivation: derivation.into(),
        n: g.n(),
        m: g.m(),
        k,
        regime: opts.regime.to_string(),
        in_edges: h.m(),
        out_edges: h.m(),
        bound_rhs: 0,
        bound_ok: false,
        iterations: 0,
        iteration_bound: 0,
        iterations_ok: false,
        girth_ok: false,
        frames: 0,
        pairs: 0,
        violations: 0,
        lemma: String::new(),
        opt: None,
    };
    match enlarge_girth(g, h, k, opts) {
        Ok(out) => {
            let t = out.trace.totals.expect("finished runs carry totals");
            row.out_edges = t.out_edges;
            row.bound_rhs = t.bound_rhs;
            row.bound_ok = t.bound_ok;
            row.iterations = t.iterations;
            row.iteration_bound = t.iteration_bound;
            row.iterations_ok = t.iterations_ok;
            row.girth_ok = girth(&out.result).is_none_or(|x| x >= k + 2) && is_k_spanner(g, &out.result, k);
            row.frames = t.frames_checked;
            row.pairs = t.pairs_checked;
        }
        Err(Error::Lemma(v)) => {
            row.violations = 1;
            row.lemma = format!("{:?}", v.kind);
            if let Some(t) = v.trace.as_ref().and_then(|t| t.totals.as_ref()) {
                row.iterations = t.iterations;
                row.frames = t.frames_checked;
                row.pairs = t.pairs_checked;
            }
        }
        Err(other) => {
            row.lemma = format!("error: {other}");
        }
    }
    row
}

const GADGET_KS: [usize; 5] = [36, 42, 48, 54, 60];

fn gadget(seed: u64, trials: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for trial in 0..trials {
        let ts = trial_seed(seed, &[trial as u64]);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let k = GADGET_KS[trial % GADGET_KS.len()];
        let core = k + 6 * (2 * (k / 6) + 9) - 6;
        let n = core + rng.gen_range(0..=20);
        let gd = gen_lower_bound(k, n)?;
        let report = check_arc_inequality(&gd);
        let base = &gd.baseline;
        let ok = base.sub.m() == n && base.is_spanner() && girth(&base.sub) == Some(k);
        rows.push(Row {
            suite: "gadget".into(),
            trial,
            seed: ts,
            model: "gadget".into(),
            derivation: "baseline".into(),
            n,
            m: gd.graph.m(),
            k,
            regime: "baseline".into(),
            in_edges: gd.graph.m(),
            out_edges: base.sub.m(),
            bound_rhs: n as i64,
            bound_ok: ok,
            iterations: 0,
            iteration_bound: 0,
            iterations_ok: true,
            girth_ok: girth(&base.sub) == Some(k),
            frames: 0,
            pairs: report.checked,
            violations: report.violations.len(),
            lemma: String::new(),
            opt: None,
        });
    }
    Ok(rows)
}

fn oracle_cross(seed: u64, trials: usize) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for trial in 0..trials {
        let ts = trial_seed(seed, &[trial as u64]);
        let mut rng = ChaCha8Rng::seed_from_u64(ts);
        let n = rng.gen_range(5..=8);
        let g = loop {
            let g = gen_random(n, RandomModel::Gnp { p: rng.gen_range(0.3..0.7), connected: true }, rng.gen())?;
            if g.m() <= 16 {
                break g;
            }
        };
        let k = rng.gen_range(1..n);
        let how = Derivation::ALL[trial % Derivation::ALL.len()];
        let h = derive_spanner(&g, k, how, &mut rng)?;
        let regime = Regime::Auto;
        let mut row = enlarge_row(
            "oracle-cross",
            trial,
            ts,
            "gnp",
            &derivation_name(how),
            &g,
            &h,
            k,
            EnlargeOptions { regime, slack: DEFAULT_SLACK },
        );
        if row.violations == 0 && row.lemma.is_empty() {
            let report = cross_check_enlarger(&g, &h, k, regime, DEFAULT_SLACK)?;
            row.opt = Some(report.opt);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(ROW_HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json(rows: &[Row]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

const ROW_HEADER: [&str; 22] = [
    "suite",
    "trial",
    "seed",
    "model",
    "derivation",
    "n",
    "m",
    "k",
    "regime",
    "in_edges",
    "out_edges",
    "bound_rhs",
    "bound_ok",
    "iterations",
    "iteration_bound",
    "iterations_ok",
    "girth_ok",
    "frames",
    "pairs",
    "violations",
    "lemma",
    "opt",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("suite,trial,seed,"));
        assert!(run_suite(Suite::Regimes, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn header_matches_row_fields() {
        let rows = run_suite(Suite::Gadget, 3, 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), ROW_HEADER.join(","));
    }

    #[test]
    fn derivations_are_spanners() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = gen_random(30, RandomModel::Gnp { p: 0.2, connected: true }, 8).unwrap();
        for how in Derivation::ALL {
            let h = derive_spanner(&g, 5, how, &mut rng).unwrap();
            assert!(h.is_subgraph_of(&g));
            assert!(is_k_spanner(&g, &h, 5), "{how:?}");
        }
    }
}
