//! Exact engine for quivers with nilpotent loops, their potentials and
//! decorated representations, and generalized cluster algebras.

pub mod arith;
pub mod pathalg;
pub mod quiver;
pub mod gca;
pub mod rep;
pub mod io;
pub mod verify;

pub use arith::{ArithError, Field, Fp, Rational};

/// Laurent polynomials with rational coefficients.
pub type QPoly = arith::LaurentPoly<Rational>;
/// Dense rational matrices.
pub type QMatrix = arith::Matrix<Rational>;
