use serde::{Deserialize, Serialize};

use crate::graph::Edge;

/// Which rule produced an iteration's removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    LargeCycle,
    Prune,
    Extreme,
    Good,
    Approx2,
    Bucket,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub component: usize,
    pub girth_before: usize,
    pub branch: Branch,
    pub removed: Edge,
    pub added: Vec<Edge>,
    /// Base edges stretched beyond `k` right after the removal, before any addition.
    pub endangered: usize,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: usize,
    pub regime: String,
    /// Whether `k` met the regime's threshold (with slack) on this component.
    pub in_band: bool,
    pub in_edges: usize,
    pub out_edges: usize,
    pub bound_rhs: i64,
    pub iterations: usize,
    pub iteration_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub in_edges: usize,
    pub out_edges: usize,
    pub bound_rhs: i64,
    pub bound_ok: bool,
    pub iterations: usize,
    pub iteration_bound: i64,
    pub iterations_ok: bool,
    pub components: usize,
    pub frames_checked: usize,
    pub pairs_checked: usize,
    pub reselection_flags: usize,
    pub girth_after: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnlargeTrace {
    pub k: usize,
    pub regime: String,
    pub slack: usize,
    pub n: usize,
    pub iterations: Vec<IterationRecord>,
    pub components: Vec<ComponentSummary>,
    pub totals: Option<Totals>,
}

impl EnlargeTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}
