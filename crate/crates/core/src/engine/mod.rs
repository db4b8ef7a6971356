//! Identity ASTs, elaboration into polynomials, and the two verification
//! strategies (full expansion and the finite point grid).

mod catalog;
mod elaborate;
mod expr;
mod interp;
mod report;
mod verify;

use thiserror::Error;

use crate::arith::{BigInt, Rational};
use crate::binomial::DomainError;

pub use catalog::{acceptance_ranges, builtin_catalog, default_ranges, lookup, CATALOG_SOURCE};
pub use elaborate::{degree_bound, elaborate};
pub use expr::{Binding, Expr, Identity, ParamDecl};
pub use interp::evaluate;
pub use report::{
    BindingError, Disagreement, Failure, Method, Status, Strategy, VerificationReport, Witness,
};
pub use verify::{
    bindings_for, check_binding, parse_range, verify_grid, verify_points, verify_range,
    verify_range_with, verify_symbolic, ParamRange, Ranges, UsageError, VerifyOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unbound parameter `{0}`")]
    UnboundParam(String),
    #[error("{what} must not depend on x or y")]
    NonConstant { what: &'static str },
    #[error("{what} must be an integer, got {value}")]
    NonInteger { what: &'static str, value: Rational },
    #[error("negative exponent {0}")]
    NegativeExponent(BigInt),
    #[error(
        "binomial lower index {0} is negative and the upper argument is not an integer constant"
    )]
    NegativeLowerIndex(BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what} is too large")]
    TooLarge { what: &'static str },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("binding is missing parameter `{0}`")]
    MissingParam(String),
    #[error("binding sets undeclared parameter `{0}`")]
    UnexpectedParam(String),
    #[error("parameter `{param}` = {value} violates `{param} >= {min}`")]
    OutOfDomain {
        param: String,
        value: BigInt,
        min: BigInt,
    },
}
