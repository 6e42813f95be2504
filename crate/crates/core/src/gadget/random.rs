use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::greedy::{greedy_spanner, EdgeOrdering};

const CONNECT_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RandomModel {
    /// Each pair independently with probability `p`; resampled until connected if asked.
    Gnp { p: f64, connected: bool },
    /// The cycle `0 - 1 - ... - (n-1) - 0` plus `c` distinct random chords.
    CyclePlusChords { c: usize },
    /// Greedy k-spanner (random ordering) of a connected `gnp(p)` graph.
    GreedySeeded { k: usize, p: f64 },
}

impl fmt::Display for RandomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomModel::Gnp { p, connected: false } => write!(f, "gnp:{p}"),
            RandomModel::Gnp { p, connected: true } => write!(f, "gnp:{p}:connected"),
            RandomModel::CyclePlusChords { c } => write!(f, "chords:{c}"),
            RandomModel::GreedySeeded { k, p } => write!(f, "greedy:{k}:{p}"),
        }
    }
}

impl FromStr for RandomModel {
    type Err = Error;

    /// `gnp:P`, `gnp:P:connected`, `chords:C`, `greedy:K` or `greedy:K:P`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("unknown random model `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let prob = |x: &str| -> Result<f64> {
            let p: f64 = x.parse().map_err(|_| bad())?;
            if (0.0..=1.0).contains(&p) {
                Ok(p)
            } else {
                Err(Error::input(format!("probability {p} outside [0, 1]")))
            }
        };
        match parts.as_slice() {
            ["gnp", p] => Ok(RandomModel::Gnp { p: prob(p)?, connected: false }),
            ["gnp", p, "connected"] => Ok(RandomModel::Gnp { p: prob(p)?, connected: true }),
            ["chords", c] => Ok(RandomModel::CyclePlusChords { c: c.parse().map_err(|_| bad())? }),
            ["greedy", k] => Ok(RandomModel::GreedySeeded { k: k.parse().map_err(|_| bad())?, p: 0.5 }),
            ["greedy", k, p] => Ok(RandomModel::GreedySeeded {
                k: k.parse().map_err(|_| bad())?,
                p: prob(p)?,
            }),
            _ => Err(bad()),
        }
    }
}

fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, pairs).expect("sampled pairs are valid")
}

fn connected_gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    for _ in 0..CONNECT_ATTEMPTS {
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::input(format!(
        "no connected gnp({n}, {p}) sample in {CONNECT_ATTEMPTS} attempts"
    )))
}

/// Reproducible random graph: the same `(n, model, seed)` always yields the same edges.
pub fn gen_random(n: usize, model: RandomModel, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        RandomModel::Gnp { p, connected } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::input(format!("probability {p} outside [0, 1]")));
            }
            if connected {
                connected_gnp(n, p, &mut rng)
            } else {
                Ok(gnp(n, p, &mut rng))
            }
        }
        RandomModel::CyclePlusChords { c } => {
            if n < 3 {
                return Err(Error::input("a cycle needs at least 3 vertices"));
            }
            let max = n * (n - 3) / 2;
            if c > max {
                return Err(Error::input(format!("{c} chords requested but C_{n} has only {max}")));
            }
            let mut chords: Vec<Edge> = (0..n)
                .flat_map(|u| (u + 2..n).map(move |v| Edge::new(u, v)))
                .filter(|e| !(e.lo() == 0 && e.hi() == n - 1))
                .collect();
            chords.shuffle(&mut rng);
            let cycle = (0..n).map(|i| Edge::new(i, (i + 1) % n));
            Graph::from_edges(n, cycle.chain(chords.into_iter().take(c)))
        }
        RandomModel::GreedySeeded { k, p } => {
            if k == 0 {
                return Err(Error::input("stretch k must be at least 1"));
            }
            let g = connected_gnp(n, p, &mut rng)?;
            let order = EdgeOrdering::shuffled(&g, &mut rng);
            Ok(greedy_spanner(&g, k, &order)?.sub)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, named};

    #[test]
    fn degenerate_parameters() {
        let empty = gen_random(8, RandomModel::Gnp { p: 0.0, connected: false }, 1).unwrap();
        assert_eq!(empty.m(), 0);
        let full = gen_random(6, RandomModel::Gnp { p: 1.0, connected: true }, 1).unwrap();
        assert_eq!(full, named::complete(6));
        let c10 = gen_random(10, RandomModel::CyclePlusChords { c: 0 }, 4).unwrap();
        assert_eq!(c10, named::cycle(10));
        assert!(gen_random(6, RandomModel::CyclePlusChords { c: 10 }, 0).is_err());
        assert_eq!(gen_random(6, RandomModel::CyclePlusChords { c: 9 }, 0).unwrap(), named::complete(6));
    }

    #[test]
    fn seeds_are_reproducible() {
        for model in ["gnp:0.3", "chords:5", "greedy:3"] {
            let m: RandomModel = model.parse().unwrap();
            let a = gen_random(20, m, 77).unwrap();
            assert_eq!(a, gen_random(20, m, 77).unwrap());
            assert_eq!(m.to_string().parse::<RandomModel>().unwrap(), m);
        }
        let a = gen_random(20, RandomModel::CyclePlusChords { c: 5 }, 1).unwrap();
        let b = gen_random(20, RandomModel::CyclePlusChords { c: 5 }, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn greedy_model_has_large_girth() {
        let h = gen_random(25, RandomModel::GreedySeeded { k: 4, p: 0.4 }, 3).unwrap();
        assert!(h.is_connected());
        assert!(girth(&h).is_none_or(|g| g >= 6));
    }

    #[test]
    fn model_parsing_errors() {
        for s in ["gnp", "gnp:2", "chords:x", "tree:3", "gnp:0.2:loose"] {
            assert!(s.parse::<RandomModel>().is_err(), "{s}");
        }
    }
}
