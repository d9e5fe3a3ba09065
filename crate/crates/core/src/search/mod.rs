//! Exact small book Ramsey numbers: branch-and-prune search over edge
//! colourings, and a CNF export for external SAT solvers.

mod dfs;
mod sat;

pub use dfs::{
    find_witness, ramsey_book, Budget, ExactResult, SearchOptions, Status, WitnessOutcome,
    WitnessSearch, MAX_SEARCH_N,
};
pub use sat::{decode_model, edge_var, sat_export, sat_size, DEFAULT_CLAUSE_CAP};
