//! Exact verification of identities between binomial-coefficient
//! polynomials.
//!
//! Identities are written in a small expression language ([`dsl`]),
//! elaborated into exact polynomials in `Q[x, y]` for each binding of their
//! integer parameters, and checked two independent ways ([`engine`]): by
//! comparing normal forms, and by comparing values on an integer grid large
//! enough to force equality from the degree bound.

pub mod arith;
pub mod binomial;
pub mod cli;
pub mod dsl;
pub mod engine;
pub mod poly;

pub use arith::{BigInt, Rational};
pub use engine::{
    builtin_catalog, elaborate, verify_points, verify_range, verify_symbolic, Binding, Expr,
    Identity, Status, Strategy, VerificationReport,
};
pub use poly::{Polynomial, Var};
