//! Graded Lie algebras over ℚ, the truncated double-graded free algebra
//! and Tanaka prolongation.

pub mod algebra;
pub mod appendix;
pub mod nk;
pub mod tanaka;

pub use algebra::{GradedLieAlgebra, LinComb};
pub use appendix::{verify_appendix_formula, AppendixReport};
pub use nk::{build_nk, nk_dim, nk_layer_dims, verify_nk, NkVerdict};
pub use tanaka::{tanaka_prolong, GradedMap, Stabilization, TanakaLayer, TanakaResult};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("{message}")]
    ParameterRange { message: String },

    #[error("algebra has non-negative layers; expected a purely negative part")]
    NotNegativelyGraded,

    #[error("g_-1 does not generate the algebra")]
    NotFundamental,

    #[error("the supplied splitting vectors do not span g_-1")]
    DependentSplitting,
}
