//! Quadratic factors `x^2 + px + q` of quadrinomials `x^n + ax^m + bx^k + c`
//! over the rationals.
//!
//! The crate is exact throughout: every scalar is a [`arith::Rational`].
//!
//! * [`modred`] computes `x^n mod (x^2 + px + q)`.
//! * [`solver`] finds all quadratic factors of a concrete quadrinomial, sweeps
//!   coefficient patterns over a height grid, and eliminates `a` symbolically.
//! * [`families`] is the catalog of known factorization families with a
//!   self-checking report.
//! * [`curves`] searches the auxiliary curves for rational points of bounded
//!   height.

pub mod arith;
pub mod bipoly;
pub mod cli;
pub mod curves;
pub mod error;
pub mod factor;
pub mod families;
pub mod modred;
pub mod parse;
pub mod ratfn;
pub mod solver;
pub mod upoly;

pub use arith::{Integer, Rational};
pub use bipoly::BiPoly;
pub use error::Error;
pub use upoly::UPoly;
