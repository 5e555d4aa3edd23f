//! Pointed triangulations of convex polytopes, their visibility partitions and
//! f/h/k/e-vectors, and polytope number sequences computed several
//! independent ways.

pub mod builtin;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod partition;
pub mod report;
pub mod sequences;
pub mod triangulation;
pub mod vectors;
pub mod vertex_set;

pub use builtin::BuiltinSpec;
pub use error::{Error, Result};
pub use geometry::{Point, Rational};
pub use lattice::{Face, FaceId, FaceLattice, Polytope, PolytopeFile};
pub use triangulation::{PointedTriangulation, Simplex};
pub use vertex_set::VertexSet;
