//! Exact rational cp-factorizations and copositive witnesses.
//!
//! Given a symmetric rational matrix `A`, [`walk::factorize`] walks the
//! vertices of a polyhedron of copositive matrices until it either writes `A`
//! as `sum alpha_i v_i v_i^T` with nonnegative integral `v_i` or finds a
//! copositive `W` with `<W, A> < 0`. All arithmetic is exact.

#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod copositive_min;
pub mod copositivity;
pub mod error;
pub mod format;
pub mod linalg;
pub mod lp;
pub mod walk;

pub use cone::{Factorization, PerfectVertex};
pub use error::{Error, Result};
pub use linalg::{LatticeVector, Rational, SymMatrix};
pub use walk::{factorize, verify_factorization, verify_witness, Certificate, PivotRule, WalkConfig, WalkReport};
