pub mod bench;
pub mod bits;
pub mod cli;
pub mod enlarge;
pub mod error;
pub mod gadget;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, OrientedCycle, SpannerInstance};
