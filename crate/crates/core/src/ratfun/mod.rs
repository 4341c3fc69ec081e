//! Scalars' function layer: polynomials, rational functions, series at
//! infinity, quasi-exponentials, difference operators and discrete Wronskians.

mod diffop;
mod poly;
mod quasiexp;
mod rational_function;
mod series;

pub use diffop::{poly_fun, product_of_first_order, rdet, DiffOp};
pub use poly::{elementary_symmetric, Poly};
pub use quasiexp::{discrete_wronskian, poly_determinant, QuasiExp, QuasiExpRat, QuasiExpWronskian};
pub use rational_function::RatFun;
pub use series::{expand_quotient, tau_basis_change, tau_basis_restore, IntLinear, SeriesUinv};
