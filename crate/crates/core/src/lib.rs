//! Hilbert points, Kempf states under upper-unipotent coordinate changes,
//! and exact decision procedures built on them.
//!
//! The pipeline runs over exact rationals end to end:
//!
//! * [`poly`]: sparse polynomials over a two-sorted variable universe
//!   (space variables `x_i`, matrix entries `g_i_j`).
//! * [`exterior`]: the wedge basis of `Λ^b S_d`, coordinates and weights.
//! * [`action`]: matrices acting on forms and exterior vectors, states.
//! * [`reduction`]: the reduction from polynomial-system solvability to the
//!   state-avoidance problem.
//! * [`groebner`]: Buchberger's algorithm and the solvability test.
//! * [`lp`]: exact simplex feasibility.
//! * [`decision`]: state avoidance, hull membership, and semistability.

pub mod action;
pub mod decision;
pub mod error;
pub mod exterior;
pub mod groebner;
pub mod lp;
pub mod poly;
pub mod reduction;
pub mod unipoly;

pub use error::{Error, Result};
pub use exterior::{Ambient, Character, ExteriorVector, WedgeIndex};
pub use poly::{Monomial, Polynomial, Rational, Var};
