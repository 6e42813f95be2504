//! The six-arc gadget: a blue `k`-cycle split into six segments, with six arcs
//! of length `p` joining every second anchor. Each arc carries one green edge;
//! the rest of the arc is orange.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{distance_avoiding, girth, is_k_spanner, Edge, Graph, SpannerInstance};

pub const MIN_K: usize = 36;

/// Anchor pairs joined by arcs, as indices into the anchor list `a..f`.
const ARC_ENDS: [(usize, usize); 6] = [(0, 2), (2, 4), (4, 0), (1, 3), (3, 5), (5, 1)];
const ANCHOR_NAMES: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetSpec {
    pub k: usize,
    pub n: usize,
    /// Edge counts of the segments `C_ab, C_bc, ..., C_fa`.
    pub segments: [usize; 6],
    /// Arc length (edges per arc).
    pub p: usize,
    /// Cycle positions of the anchors `a..f`.
    pub anchors: [usize; 6],
    /// Vertices of the gadget proper, `k + 6p - 6`.
    pub core: usize,
    pub pendant: usize,
}

impl GadgetSpec {
    /// Parameters with the standard arc length `2 floor(k/6) + 9`.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        Self::with_arc_len(k, n, 2 * (k / 6) + 9)
    }

    /// Parameters with a caller-chosen arc length (for probing the construction).
    pub fn with_arc_len(k: usize, n: usize, p: usize) -> Result<Self> {
        if k < MIN_K {
            return Err(Error::input(format!("gadget needs k >= {MIN_K}, got {k}")));
        }
        if p < 2 {
            return Err(Error::input("arcs need at least two edges"));
        }
        let base = k / 6;
        let extra = k % 6;
        let segments: [usize; 6] = std::array::from_fn(|i| base + usize::from(i < extra));
        let mut anchors = [0; 6];
        for i in 1..6 {
            anchors[i] = anchors[i - 1] + segments[i - 1];
        }
        let core = k + 6 * p - 6;
        if n < core {
            return Err(Error::input(format!("n = {n} is below the gadget size {core}")));
        }
        Ok(GadgetSpec {
            k,
            n,
            segments,
            p,
            anchors,
            core,
            pendant: n - core,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    /// Anchor names, e.g. `('a', 'c')`.
    pub ends: (char, char),
    /// Vertices from the first anchor to the second.
    pub vertices: Vec<usize>,
    pub green: Edge,
}

impl Arc {
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub graph: Graph,
    /// Blue cycle, orange arc edges and the pendant path.
    pub baseline: SpannerInstance,
    pub arcs: Vec<Arc>,
}

/// Builds the gadget padded with a pendant path at vertex 0 and checks the baseline.
pub fn gen_lower_bound(k: usize, n: usize) -> Result<Gadget> {
    Gadget::from_spec(GadgetSpec::new(k, n)?)
}

impl Gadget {
    /// Builds and self-checks the gadget described by `spec`.
    pub fn from_spec(spec: GadgetSpec) -> Result<Gadget> {
        build(spec)
    }
}

fn build(spec: GadgetSpec) -> Result<Gadget> {
    let k = spec.k;
    let mut edges: Vec<Edge> = (0..k).map(|i| Edge::new(i, (i + 1) % k)).collect();
    let mut next = k;
    let mut arcs = Vec::with_capacity(6);
    for &(x, y) in &ARC_ENDS {
        let mut vertices = vec![spec.anchors[x]];
        for _ in 1..spec.p {
            vertices.push(next);
            next += 1;
        }
        vertices.push(spec.anchors[y]);
        let mid = spec.p / 2;
        let green = Edge::new(vertices[mid], vertices[mid + 1]);
        let arc = Arc {
            ends: (ANCHOR_NAMES[x], ANCHOR_NAMES[y]),
            vertices,
            green,
        };
        edges.extend(arc.edges());
        arcs.push(arc);
    }
    debug_assert_eq!(next, spec.core);
    let mut prev = 0;
    for v in spec.core..spec.n {
        edges.push(Edge::new(prev, v));
        prev = v;
    }

    let graph = Graph::from_edges(spec.n, edges)?;
    let greens: Vec<Edge> = arcs.iter().map(|a| a.green).collect();
    let baseline_edges = graph.edges().iter().copied().filter(|e| !greens.contains(e));
    let baseline = SpannerInstance::from_edges(graph.clone(), k, baseline_edges)?;

    if baseline.sub.m() != spec.n {
        return Err(Error::Generator(format!(
            "baseline has {} edges, expected {}",
            baseline.sub.m(),
            spec.n
        )));
    }
    if !is_k_spanner(&graph, &baseline.sub, k) {
        return Err(Error::Generator(format!("baseline is not a {k}-spanner")));
    }
    if girth(&baseline.sub) != Some(k) {
        return Err(Error::Generator(format!(
            "baseline girth {:?}, expected {k}",
            girth(&baseline.sub)
        )));
    }
    Ok(Gadget {
        spec,
        graph,
        baseline,
        arcs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcViolation {
    pub segment: (char, char),
    pub cycle_edge: Edge,
    pub arc: (char, char),
    pub arc_edge: Edge,
    /// `None` when the endpoints are disconnected.
    pub distance: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcReport {
    pub checked: usize,
    pub violations: Vec<ArcViolation>,
}

/// For every segment edge `e`, every arc covering that segment and every arc edge
/// `e' = (u, v)`, checks `dist(u, v) >= k + 1` once both `e` and `e'` are deleted.
pub fn check_arc_inequality(gadget: &Gadget) -> ArcReport {
    let spec = &gadget.spec;
    let k = spec.k;
    let mut checked = 0;
    let mut violations = Vec::new();
    for seg in 0..6 {
        let name = (ANCHOR_NAMES[seg], ANCHOR_NAMES[(seg + 1) % 6]);
        // The arcs starting at the segment's first anchor or at the anchor before it.
        let covering = [seg, (seg + 5) % 6].map(|start| {
            gadget
                .arcs
                .iter()
                .find(|a| a.ends.0 == ANCHOR_NAMES[start])
                .expect("every anchor starts one arc")
        });
        for i in 0..spec.segments[seg] {
            let x = spec.anchors[seg] + i;
            let e = Edge::new(x, (x + 1) % k);
            let without_e = gadget.graph.without_edge(e);
            for arc in covering {
                for f in arc.edges() {
                    checked += 1;
                    let d = distance_avoiding(&without_e, f.lo(), f.hi(), Some(f), k);
                    if d.is_some() {
                        violations.push(ArcViolation {
                            segment: name,
                            cycle_edge: e,
                            arc: arc.ends,
                            arc_edge: f,
                            distance: d,
                        });
                    }
                }
            }
        }
    }
    ArcReport {
        checked,
        violations,
    }
}
