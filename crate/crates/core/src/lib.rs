//! Exact symbolic machinery for field diffeomorphisms of scalar theories.
//!
//! The tree-level series of a diffeomorphism-transformed free theory, with one
//! off-shell leg, is the compositional inverse of the diffeomorphism. This
//! crate computes that series four independent ways and checks the Bell
//! polynomial, differential-equation, S-matrix and Legendre-transform
//! identities around it, all in exact rational arithmetic.

pub mod amplitudes;
pub mod bell;
pub mod diffeoeq;
pub mod exactalg;
pub mod legendre;
pub mod report;
pub mod series;
pub mod suites;

pub use exactalg::{Monomial, PolyError, Polynomial, Rational, Var};
pub use report::{Check, Report};
pub use series::{compose, invert, Diffeomorphism, Kind, Series, SeriesError};
pub use suites::{run_suite, Suite, SuiteConfig};
