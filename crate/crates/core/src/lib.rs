//! Deciding whether a matching covered graph has a conformal bisubdivision of
//! θ (two vertices joined by three edges), with checkable certificates either
//! way.
//!
//! The decider follows the tight cut structure of the input: maximal
//! barriers, 2-separations, and the bricks and braces left at the bottom.
//! Witnesses found in small pieces are lifted back into the input graph, and
//! every certificate can be checked by [`verify::verify_certificate`] without
//! trusting the code that produced it.

pub mod canon;
pub mod decomposition;
pub mod error;
pub mod family;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matching;
pub mod named;
pub mod oracle;
pub mod structure;
pub mod theta;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Contraction, Cut, Edge, EdgeId, Multigraph, Piece, VertexSet};
pub use named::NamedGraph;
pub use theta::{is_theta_free, Certificate, Verdict};
pub use witness::ThetaWitness;
