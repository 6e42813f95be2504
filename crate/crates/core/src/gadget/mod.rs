//! Instance generators.

mod hanging;
mod lower_bound;
mod random;

pub use hanging::{gen_hanging, HangingSpec};
pub use lower_bound::{check_arc_inequality, gen_lower_bound, Arc, ArcReport, ArcViolation, Gadget, GadgetSpec, MIN_K};
pub use random::{gen_random, RandomModel};
