//! Exact symbolic toolkit for the geometry of overdetermined PDE systems:
//! distributions and derived flags, Cauchy-characteristic reduction, Carnot
//! symbols, Tanaka prolongation, contact symmetries and the catalog of model
//! systems the analysis layer verifies.

pub mod algebra;
pub mod analysis;
pub mod geometry;
pub mod jet;
pub mod lie;

pub use algebra::{Poly, Rat, RatFun, VarSet};
pub use geometry::{Chart, Distribution, Flag, PointAssignment, VectorField};

pub use lie::{GradedLieAlgebra, TanakaResult};
