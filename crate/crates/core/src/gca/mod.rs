//! Generalized cluster algebras: seeds and their mutation, g-vectors,
//! F-polynomials, c- and h-vectors, Laurent and upper-bound checks, the
//! cluster character and exchange-graph exploration.

mod character;
mod explore;
mod fg;
mod seed;

use thiserror::Error;

use crate::arith::ArithError;
use crate::quiver::QuiverError;
use crate::rep::RepError;

pub use character::{cluster_character, laurent_check, upper_membership, LaurentReport, LaurentViolation, Membership};
pub use explore::{explore, ExchangeGraph, ExploreMode, GraphEdge, GraphNode};
pub use fg::{f_context, gf_recursion, h_relation_check, h_vector, separation, FSignConvention, FgcState, HRelationReport};
pub(crate) use fg::y_mutation_images;
pub use seed::{mutate_seed, yhat, yhat_mutation_check, CoefficientMode, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcaError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
