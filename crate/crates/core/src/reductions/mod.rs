//! Instance transformations between reconfiguration problems, with the
//! witness conversions that go along with them.
//!
//! * [`ncl_normalize`], [`build_gb`], [`build_gf`], [`lift_sequence`],
//!   [`project_sequence`]: constraint logic to independent-set sliding on
//!   split graphs.
//! * [`split_to_chordal`]: independent sets on split graphs to c-colorable
//!   sets on chordal graphs.
//! * [`dsr_to_split`], [`tar_to_tj`]: dominating set reconfiguration.

use thiserror::Error;

mod chordal;
mod domination;
mod gadget;
mod ncl;

pub use chordal::split_to_chordal;
pub use domination::{dsr_to_split, phi, phi_inverse, tar_to_tj, SplitRule};
pub use gadget::{
    build_gb, build_gf, configs_to_witness, lift_sequence, main_configurations, project_sequence,
    AmplifiedGraph, GadgetGraph, GadgetVertex,
};
pub use ncl::ncl_normalize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("malformed constraint logic instance: {0}")]
    MalformedNcl(String),
    #[error("blue edge {0} is not incident to exactly one COPY vertex")]
    NotNormalized(usize),
    #[error("configuration uses gate vertex {0}")]
    NonMainConfiguration(usize),
    #[error("move {index} breaks the gate round-trip structure: {reason}")]
    MalformedWitness { index: usize, reason: String },
    #[error("state {index} has fewer than 4 tokens on the copies of edge {edge}")]
    InvalidState { index: usize, edge: usize },
    #[error("color bound must be at least 2, got {0}")]
    BadColorBound(usize),
    #[error("input must be a token sliding instance with c = 1 on a split graph")]
    NotIndependentSetInstance,
    #[error("source and target must have size {expected}, got {source_size} and {target_size}")]
    SizeMismatch {
        expected: usize,
        source_size: usize,
        target_size: usize,
    },
    #[error("input witness is invalid at move {0}")]
    InvalidWitness(usize),
    #[error("input has the wrong rule: {0}")]
    WrongRule(String),
}
