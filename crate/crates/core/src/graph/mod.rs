//! Coloured complete graphs and hypergraphs, their file formats, and the
//! clique/page primitives the rest of the crate is built on.

mod certificate;
mod cliques;
mod colouring;
mod hyper;
mod knc;

pub use certificate::BookCertificate;
pub use cliques::{common_pages, count_mono_cliques, for_each_rooted_clique, mono_cliques, try_for_each_rooted_clique, MonoCliques};
pub use colouring::{Colour, Colouring, BLUE, RED};
pub use hyper::{emit_hyper, parse_hyper, HyperColouring, MAX_HYPER_EDGES};
pub use knc::{emit_colouring, parse_colouring};
