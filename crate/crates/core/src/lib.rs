//! Tools for book Ramsey numbers.
//!
//! A book `B_n^(k)` is `n` copies of `K_{k+1}` glued along a common `K_k`
//! (the spine); the `n` extra vertices are its pages. This crate analyses
//! edge colourings of complete graphs for large monochromatic books,
//! computes tiny book Ramsey numbers exactly, builds and checks the known
//! lower-bound colourings, certifies the two inequalities behind the upper
//! bound numerically, and runs a checked, desk-scale version of the
//! regularity argument that finds books in arbitrary colourings.

pub mod bitset;
pub mod books;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod lemmas;
pub mod pipeline;
pub mod search;

pub use error::{Error, Result};
