//! Exact arithmetic foundation: arbitrary-precision rationals, multivariate
//! polynomials, rational functions and exact linear algebra.

pub mod gcd;
pub mod matrix;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod ratfun;
pub mod vars;

pub use gcd::{poly_gcd, poly_lcm};
pub use matrix::{FieldScalar, Mat};
pub use parse::{parse_expr, parse_expr_aliased};
pub use polynomial::Poly;
pub use rational::Rat;
pub use ratfun::RatFun;
pub use vars::{Mono, VarSet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },

    #[error("division by zero (denominator `{denominator}` vanishes)")]
    DivisionByZero { denominator: String },

    #[error("values belong to different variable sets")]
    VarSetMismatch,

    #[error("parse error at byte {position} in `{source_text}`: {message}")]
    Parse {
        position: usize,
        message: String,
        source_text: String,
    },
}
