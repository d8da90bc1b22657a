//! Brauer graphs, biserial quivers and triangulation quivers: conversions,
//! relation generation for the associated algebras, and the star, sharp,
//! reduction and barycentric constructions.
//!
//! Paths are read left to right: `alpha*beta` means `alpha` followed by `beta`.

pub mod brauer;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod ids;
pub mod io;
pub mod iso;
pub mod perm;
pub mod presentation;
pub mod quiver;
pub mod scalar;
pub mod surface;
pub mod weighted;



pub use constructions::IdempotentSelection;
pub use error::{Diagnostics, Error, Result, Violation};
pub use ids::{ArrowId, EdgeId, HalfEdgeId, RibbonVertexId, VertexId};
pub use brauer::{BrauerGraph, LoopKind};
pub use iso::Isomorphism;
pub use perm::{OrbitDecomposition, Permutation};

pub use presentation::{AlgebraPresentation, Path, PresentationKind, Relation};
pub use quiver::{Arrow, BiserialQuiver, Quiver};
pub use scalar::{Field, Scalar};

pub use surface::SurfaceReport;
pub use weighted::WeightedBiserialQuiver;
