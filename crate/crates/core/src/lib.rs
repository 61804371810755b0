//! Local computation algorithms for 2-colouring k-uniform hypergraphs
//! under Lovász Local Lemma conditions, with global reference oracles,
//! verification tools and witness-structure analysis.

pub mod analysis;
pub mod cli;
pub mod global;
pub mod harness;
pub mod hypergraph;
pub mod lca;
pub mod params;
pub mod state;
pub mod tape;
pub mod verify;

pub use hypergraph::{EdgeId, Hypergraph, VertexId};
pub use lca::{Engine, Mode};
pub use params::LllParams;
pub use tape::Color;
