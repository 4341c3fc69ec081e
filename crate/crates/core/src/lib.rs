//! Bethe algebras of the gl_N XXX model at desk scale.
//!
//! The crate builds the Yangian action on tensor products of evaluation
//! modules, the transfer matrices and their `C_k` rebasing, Bethe ansatz
//! equations with homotopy solvers, Bethe vectors and eigenvalues, and the
//! discrete Wronski maps on spaces of quasi-exponentials and polynomials.
//! Every routine runs either over exact rationals or over complex doubles.

#![no_std]

extern crate alloc;

pub mod bethe;
pub mod combinat;
pub mod error;
pub mod linalg;
pub mod ratfun;
pub mod scalar;
pub mod symspace;
pub mod tensorrep;
pub mod wronski;
pub mod yangian;

pub use error::{Error, Result};
pub use scalar::{Complex, Rational, Scalar};
