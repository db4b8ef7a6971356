//! Translation of expressions into exact polynomials, and the structural
//! degree bounds used by the point criterion.

use num_traits::{Signed, ToPrimitive, Zero};

use super::expr::{Binding, Expr};
use super::EngineError;
use crate::arith::{as_integer, BigInt, Rational};
use crate::binomial::{choose_of, gen_binomial, GenBinomArgs};
use crate::poly::{Polynomial, Var};

/// Parameter values visible at one point of the walk. Sum indices are pushed
/// on top and shadow outer names.
#[derive(Debug, Clone)]
pub(crate) struct Scope {
    frames: Vec<(String, BigInt)>,
}

impl Scope {
    pub(crate) fn new(binding: &Binding) -> Self {
        Scope {
            frames: binding
                .iter()
                .map(|(n, v)| (n.to_string(), v.clone()))
                .collect(),
        }
    }

    pub(crate) fn lookup(&self, name: &str) -> Result<&BigInt, EngineError> {
        self.frames
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| EngineError::UnboundParam(name.to_string()))
    }

    pub(crate) fn push(&mut self, name: &str, value: BigInt) {
        self.frames.push((name.to_string(), value));
    }

    pub(crate) fn pop(&mut self) {
        self.frames.pop();
    }
}

pub(crate) fn small_int(value: &BigInt, what: &'static str) -> Result<i64, EngineError> {
    value.to_i64().ok_or(EngineError::TooLarge { what })
}

/// Inclusive integer bounds of a sum; `None` when the sum is empty.
pub(crate) fn sum_range(lo: &BigInt, hi: &BigInt) -> Result<Option<(i64, i64)>, EngineError> {
    if lo > hi {
        return Ok(None);
    }
    Ok(Some((
        small_int(lo, "sum bound")?,
        small_int(hi, "sum bound")?,
    )))
}

pub(crate) fn exponent_value(value: &BigInt) -> Result<u32, EngineError> {
    if value.is_negative() {
        return Err(EngineError::NegativeExponent(value.clone()));
    }
    value
        .to_u32()
        .ok_or(EngineError::TooLarge { what: "exponent" })
}

/// Elaborates `e` under `binding` into a polynomial in `Q[x, y]`.
pub fn elaborate(e: &Expr, binding: &Binding) -> Result<Polynomial, EngineError> {
    elaborate_in(e, &mut Scope::new(binding))
}

fn constant_int(e: &Expr, scope: &mut Scope, what: &'static str) -> Result<BigInt, EngineError> {
    let p = elaborate_in(e, scope)?;
    let c = p.as_constant().ok_or(EngineError::NonConstant { what })?;
    as_integer(&c).ok_or(EngineError::NonInteger { what, value: c })
}

pub(crate) fn elaborate_in(e: &Expr, scope: &mut Scope) -> Result<Polynomial, EngineError> {
    Ok(match e {
        Expr::Int(n) => Polynomial::from_int(n.clone()),
        Expr::Param(name) => Polynomial::from_int(scope.lookup(name)?.clone()),
        Expr::Var(v) => Polynomial::var(*v),
        Expr::Neg(a) => -elaborate_in(a, scope)?,
        Expr::Add(a, b) => elaborate_in(a, scope)? + elaborate_in(b, scope)?,
        Expr::Sub(a, b) => elaborate_in(a, scope)? - elaborate_in(b, scope)?,
        Expr::Mul(a, b) => elaborate_in(a, scope)? * elaborate_in(b, scope)?,
        Expr::Div(a, b) => {
            let num = elaborate_in(a, scope)?;
            let den = elaborate_in(b, scope)?
                .as_constant()
                .ok_or(EngineError::NonConstant { what: "divisor" })?;
            if den.is_zero() {
                return Err(EngineError::DivisionByZero);
            }
            num.scale(&(Rational::from_integer(1.into()) / den))
        }
        Expr::Pow(base, exp) => {
            let k = exponent_value(&constant_int(exp, scope, "exponent")?)?;
            elaborate_in(base, scope)?.pow(k)
        }
        Expr::Binom(upper, lower) => {
            let lower_value = constant_int(lower, scope, "binomial lower index")?;
            let upper_poly = elaborate_in(upper, scope)?;
            if lower_value.is_negative() {
                let upper_value = upper_poly
                    .as_constant()
                    .and_then(|c| as_integer(&c))
                    .ok_or(EngineError::NegativeLowerIndex(lower_value.clone()))?;
                let v = gen_binomial(&GenBinomArgs::new(upper_value, lower_value))?;
                Polynomial::from_int(v)
            } else {
                let k = lower_value.to_u32().ok_or(EngineError::TooLarge {
                    what: "binomial lower index",
                })?;
                choose_of(&upper_poly, k)
            }
        }
        Expr::Sum {
            index,
            lo,
            hi,
            body,
        } => {
            let lo = constant_int(lo, scope, "sum bound")?;
            let hi = constant_int(hi, scope, "sum bound")?;
            let mut acc = Polynomial::zero();
            if let Some((lo, hi)) = sum_range(&lo, &hi)? {
                for i in lo..=hi {
                    scope.push(index, BigInt::from(i));
                    let term = elaborate_in(body, scope);
                    scope.pop();
                    acc = acc + term?;
                }
            }
            acc
        }
    })
}

/// Structural upper bound on the degree of `e` in `var` after elaboration.
pub fn degree_bound(e: &Expr, binding: &Binding, var: Var) -> Result<u64, EngineError> {
    bound_in(e, &mut Scope::new(binding), var)
}

fn bound_in(e: &Expr, scope: &mut Scope, var: Var) -> Result<u64, EngineError> {
    Ok(match e {
        Expr::Int(_) => 0,
        Expr::Param(name) => {
            scope.lookup(name)?;
            0
        }
        Expr::Var(v) => u64::from(*v == var),
        Expr::Neg(a) => bound_in(a, scope, var)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => bound_in(a, scope, var)?.max(bound_in(b, scope, var)?),
        Expr::Mul(a, b) => bound_in(a, scope, var)? + bound_in(b, scope, var)?,
        Expr::Div(a, b) => {
            let den = elaborate_in(b, scope)?
                .as_constant()
                .ok_or(EngineError::NonConstant { what: "divisor" })?;
            if den.is_zero() {
                return Err(EngineError::DivisionByZero);
            }
            bound_in(a, scope, var)?
        }
        Expr::Pow(base, exp) => {
            let k = exponent_value(&constant_int(exp, scope, "exponent")?)?;
            u64::from(k) * bound_in(base, scope, var)?
        }
        Expr::Binom(upper, lower) => {
            let lower_value = constant_int(lower, scope, "binomial lower index")?;
            if lower_value.is_negative() {
                // Only defined for constant arguments.
                let upper_poly = elaborate_in(upper, scope)?;
                if upper_poly.as_constant().is_none() {
                    return Err(EngineError::NegativeLowerIndex(lower_value));
                }
                0
            } else {
                let k = lower_value.to_u64().ok_or(EngineError::TooLarge {
                    what: "binomial lower index",
                })?;
                k * bound_in(upper, scope, var)?
            }
        }
        Expr::Sum {
            index,
            lo,
            hi,
            body,
        } => {
            let lo = constant_int(lo, scope, "sum bound")?;
            let hi = constant_int(hi, scope, "sum bound")?;
            let mut best = 0;
            if let Some((lo, hi)) = sum_range(&lo, &hi)? {
                for i in lo..=hi {
                    scope.push(index, BigInt::from(i));
                    let b = bound_in(body, scope, var);
                    scope.pop();
                    best = best.max(b?);
                }
            }
            best
        }
    })
}
