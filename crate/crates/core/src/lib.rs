//! Generalized Turán numbers for stars and cliques.
//!
//! * [`Graph`]: bitset graphs on at most 64 vertices with exact clique and
//!   star counts and the clone/delete calculus.
//! * [`constructions`]: Turán graphs, complete multipartite graphs, blowups.
//! * [`realfn`]: binomials with a real upper argument and their inverses.
//! * [`bounds`]: closed-form extremal numbers and supersaturation bounds.
//! * [`graphon`]: the limiting part-proportion optimization.
//! * [`oracle`]: exhaustive searches used to check all of the above.

// `!(x >= 0.0)` is how NaN gets rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod canon;
pub mod combin;
pub mod constructions;
pub mod edgelist;
mod error;
pub mod format;
pub mod graph;
pub mod graphon;
pub mod oracle;
pub mod realfn;

pub use bounds::SupersatBound;
pub use canon::CanonicalForm;
pub use constructions::PartitionProfile;
pub use error::{Error, Result};
pub use graph::{Graph, VertexDelta, MAX_VERTICES};
pub use graphon::{CriticalPoint, DensityProfile, OptParams, PointKind, Solution};
pub use oracle::{ExtremalCertificate, Pattern};
pub use realfn::GenBinomial;
