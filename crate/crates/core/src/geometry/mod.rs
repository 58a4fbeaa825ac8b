//! Vector-field and distribution calculus on coordinate charts: brackets,
//! derived flags, Cauchy characteristics, reductions, prolongations and
//! symbol extraction.

pub mod cauchy;
pub mod chart;
pub mod distribution;
pub mod field;
pub mod flag;
pub mod reduce;
pub mod symbol;

pub use cauchy::{ad_closure, cauchy_characteristics, is_cauchy_direction};
pub use chart::{random_point, Chart, PointAssignment};
pub use distribution::{Distribution, OneForm};
pub use field::VectorField;
pub use flag::{derived_flag, Flag, FlagKind};
pub use reduce::{deprolong, prolong_rank2, reduce_along, Deprolongation, Reduction, Transversal};
pub use symbol::symbol_algebra;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("charts differ: `{left}` vs `{right}`")]
    ChartMismatch { left: String, right: String },

    #[error("coordinate `{name}` is not on the chart")]
    MissingCoordinate { name: String },

    #[error("point has {got} values, chart needs {expected}")]
    PointArity { expected: usize, got: usize },

    #[error("expected rank {expected}, found {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("transversal lists {got} coordinates, sub-distribution has rank {expected}")]
    TransversalArity { expected: usize, got: usize },

    #[error("slice is not transversal: coordinate `{coordinate}` degenerates")]
    NonTransversal { coordinate: String },

    #[error("no stabilization within {steps} steps (ranks {ranks:?})")]
    NoStabilization { steps: usize, ranks: Vec<usize> },

    #[error("non-generic configuration: {reason}")]
    NonGenericPoint { reason: String },

    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}
