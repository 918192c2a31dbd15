//! Truncated complete path algebra: potentials, cyclic derivatives,
//! premutation, reduction and QP mutation.

pub mod jacobian;
pub mod mutation;
pub mod potential;
pub mod random;
pub mod word;

use thiserror::Error;

use crate::quiver::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathAlgError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("potential references unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("invalid cyclic word: {0}")]
    BadWord(String),
    #[error("degenerate potential: 2-cycle coefficients between {i} and {j} have rank {rank}, need {needed}")]
    DegeneratePotential { i: usize, j: usize, rank: usize, needed: usize },
    #[error("QP is not reduced")]
    NotReduced,
    #[error("reduction did not converge within {0} rounds")]
    TooManyRounds(usize),
    #[error("reduction left a word mixing trivial and reduced arrows: {0}")]
    ReductionIncomplete(String),
}

pub use jacobian::{all_paths, jacobian_corner_dim};
pub use mutation::{mutate_qp, mutate_qp_full, premutate_qp, split_reduce, ArrowOrigin, ChangeLog, Premutation, QpMutation, Reduction, ReductionStep};
pub use potential::{cyclic_derivative, eps_derivative, Potential, Qp, DEFAULT_TRUNCATION};
pub use random::random_potential;
pub use word::{ArrowId, CycWord, Path, PathElem, QuiverShape};
