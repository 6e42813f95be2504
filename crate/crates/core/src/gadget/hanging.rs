//! A short cycle with long paths hanging off it, over a base graph sampled from the
//! pairs the sparse part already serves within stretch `k`.
//!
//! With the paths spread around the cycle, a pair of path vertices on neighbouring
//! attachments is served through the short arc between them and loses service if any
//! edge of that arc goes. This makes every cycle edge endangered, which is the
//! situation the enlarger's frame steps exist for.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs, Edge, Graph, SpannerInstance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HangingSpec {
    pub n: usize,
    pub k: usize,
    pub cycle: usize,
    pub paths: usize,
    /// Chance that a pair at sparse distance `2..=k` becomes a base edge.
    pub density: f64,
}

impl HangingSpec {
    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::input("stretch k must be at least 1"));
        }
        if self.cycle < 3 {
            return Err(Error::input("the cycle needs at least 3 vertices"));
        }
        if self.paths == 0 || self.paths > self.cycle {
            return Err(Error::input(format!("paths must be in 1..={}", self.cycle)));
        }
        if self.n < self.cycle + self.paths {
            return Err(Error::input(format!(
                "n = {} leaves no room for {} paths off a {}-cycle",
                self.n, self.paths, self.cycle
            )));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::input(format!("density {} outside [0, 1]", self.density)));
        }
        Ok(())
    }

    fn attachments(&self) -> Vec<usize> {
        (0..self.paths).map(|i| i * self.cycle / self.paths).collect()
    }

    fn path_lengths(&self) -> Vec<usize> {
        let rest = self.n - self.cycle;
        (0..self.paths)
            .map(|i| rest / self.paths + usize::from(i < rest % self.paths))
            .collect()
    }

    /// Largest `k` for which neighbouring path tips can still lose service through a
    /// single cycle edge. Above it no cycle edge is endangered by path pairs.
    pub fn frame_k_max(&self) -> usize {
        let at = self.attachments();
        let len = self.path_lengths();
        let r = self.paths;
        if r < 2 {
            return 0;
        }
        (0..r)
            .map(|i| {
                let j = (i + 1) % r;
                let gap = (at[j] + self.cycle - at[i]) % self.cycle;
                let gap = if gap == 0 { self.cycle } else { gap };
                (len[i] + len[j] + self.cycle - gap).saturating_sub(1)
            })
            .min()
            .unwrap_or(0)
    }
}

/// The sparse part (cycle plus paths) as a k-spanner of the sampled base graph.
pub fn gen_hanging(spec: HangingSpec, seed: u64) -> Result<SpannerInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Edge> = (0..spec.cycle).map(|i| Edge::new(i, (i + 1) % spec.cycle)).collect();
    let mut tips = spec.attachments();
    for (i, v) in (spec.cycle..spec.n).enumerate() {
        let j = i % spec.paths;
        edges.push(Edge::new(tips[j], v));
        tips[j] = v;
    }
    let sparse = Graph::from_edges(spec.n, edges.iter().copied())?;
    for s in 0..spec.n {
        let view = bfs(&sparse, s)?;
        for t in s + 1..spec.n {
            if let Some(d) = view.to(t) {
                if (2..=spec.k).contains(&d) && rng.gen_bool(spec.density) {
                    edges.push(Edge::new(s, t));
                }
            }
        }
    }
    let base = Graph::from_edges(spec.n, edges)?;
    SpannerInstance::new(base, spec.k, sparse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::girth;

    #[test]
    fn sparse_part_spans_the_base() {
        let spec = HangingSpec {
            n: 70,
            k: 45,
            cycle: 12,
            paths: 3,
            density: 0.4,
        };
        let inst = gen_hanging(spec, 5).unwrap();
        assert!(inst.is_spanner());
        assert_eq!(inst.sub.m(), 70);
        assert_eq!(girth(&inst.sub), Some(12));
        assert_eq!(gen_hanging(spec, 5).unwrap().base, inst.base);
    }

    #[test]
    fn frame_window() {
        let spec = HangingSpec {
            n: 72,
            k: 40,
            cycle: 12,
            paths: 3,
            density: 1.0,
        };
        // Paths of 20, gaps of 4: 20 + 20 + 12 - 4 - 1.
        assert_eq!(spec.frame_k_max(), 47);
    }

    #[test]
    fn rejects_bad_shapes() {
        let ok = HangingSpec {
            n: 20,
            k: 5,
            cycle: 6,
            paths: 2,
            density: 0.5,
        };
        assert!(gen_hanging(HangingSpec { cycle: 2, ..ok }, 0).is_err());
        assert!(gen_hanging(HangingSpec { paths: 7, ..ok }, 0).is_err());
        assert!(gen_hanging(HangingSpec { n: 7, ..ok }, 0).is_err());
        assert!(gen_hanging(HangingSpec { density: 1.5, ..ok }, 0).is_err());
        assert!(gen_hanging(ok, 0).is_ok());
    }
}
