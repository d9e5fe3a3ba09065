//! Desk-scale regularity pipeline: partition, reduced graph, case analysis,
//! exact spine extraction. Every certificate it returns has been checked
//! against the colouring.

mod density;
mod extract;
mod partition;
mod reduced;
mod transversal;

pub use density::{eps_regular_check, pair_density, RegularityMode, RegularityVerdict, Violation, EXHAUSTIVE_CAP};
pub use extract::{extract_book, Blowup, Candidate, CaseTag, ExtractOptions, Extraction, Prescription};
pub use partition::{make_partition, pick_regular_subset, regularity_score, EquitablePartition, SubsetChoice, SUBSET_TRIALS};
pub use reduced::{build_reduced, edge_colour_rule, DensityKind, ReducedGraph, GATE_TRIALS};
pub use transversal::{transversal_best_spine, Transversal};

use crate::error::Result;
use crate::graph::Colouring;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineParams {
    pub k: usize,
    pub parts: usize,
    pub eta: f64,
    pub delta: f64,
    pub seed: u64,
    /// Swap rounds of partition local search.
    pub steps: usize,
    pub extract: ExtractOptions,
}

/// Partition, reduced graph and extraction in one call.
pub fn run_pipeline(col: &Colouring, params: &PipelineParams) -> Result<Extraction> {
    let partition = make_partition(col, params.parts, params.seed, params.steps, params.eta)?;
    let reduced = build_reduced(col, &partition, params.eta, params.delta, params.seed)?;
    extract_book(col, &reduced, params.k, &params.extract)
}
