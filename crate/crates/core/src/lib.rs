//! Token reconfiguration of c-colorable sets on split and chordal graphs.
//!
//! * [`graph`]: graphs, split partitions, elimination orders, colorability.
//! * [`model`]: instances, moves and certificate validation for c-colorable
//!   sets, NCL orientations and dominating sets.
//! * [`oracle`]: exhaustive breadth-first reachability with shortest witnesses.
//! * [`solver`]: polynomial token-sliding solver on split graphs for c >= 2.
//! * [`reductions`]: NCL gadgets, the split-to-chordal padding and the
//!   dominating-set reduction, with witness lifting and projection.
//! * [`format`]: the line-oriented text formats shared with the CLI.
//! * [`generate`]: seeded random instances.

pub mod format;
pub mod generate;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod set;
pub mod solver;

pub use graph::{Graph, SplitPartition};
pub use model::{Move, MoveSequence, ReconfigInstance, Rule};
pub use set::VertexSet;
