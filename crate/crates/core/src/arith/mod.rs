//! Exact arithmetic: rationals, prime fields, Laurent polynomials, rational
//! functions, semifields and dense linear algebra.

pub mod field;
pub mod laurent;
pub mod linalg;
pub mod ratfunc;
pub mod rational;
pub mod semifield;
pub mod tropical;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact; remainder {remainder}")]
    NotExact { remainder: String },
    #[error("negative power of a non-monomial: {0}")]
    NotMonomial(String),
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("expression contains subtraction")]
    Subtraction,
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
}

pub use field::{Field, Fp};
pub use laurent::{Ctx, LaurentPoly, Monomial, VarCtx};
pub use linalg::Matrix;
pub use ratfunc::RatFunc;
pub use rational::{fmt_rat, parse_rat, pos, rat, rat2, Rational};
pub use semifield::{sf_eval, tropicalize, Semifield, SfExpr, SubtractionFreeValue};
pub use tropical::{trop_add, TropicalValue};
