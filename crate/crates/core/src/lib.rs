pub mod codes;
pub mod constructions;
pub mod error;
pub mod graph;

pub use error::{Error, Result};
pub mod group;
pub mod group_sieve;
pub mod prodrep;
pub mod sieve;
pub mod spectral;

pub use graph::{Graph, VertexSet};
