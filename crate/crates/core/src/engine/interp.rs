//! Direct numeric evaluation of expressions at a point, without building
//! polynomials. This is the evaluation path of the point criterion and the
//! oracle for elaboration.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elaborate::{exponent_value, sum_range, Scope};
use super::expr::{Binding, Expr};
use super::EngineError;
use crate::arith::{as_integer, int_binomial, BigInt, Rational};
use crate::binomial::{gen_binomial, GenBinomArgs};
use crate::poly::Var;

/// Evaluates `e` with parameters from `binding` and the indeterminates set
/// to `x` and `y`.
pub fn evaluate(
    e: &Expr,
    binding: &Binding,
    x: &Rational,
    y: &Rational,
) -> Result<Rational, EngineError> {
    Evaluator { x, y }.eval(e, &mut Scope::new(binding))
}

struct Evaluator<'a> {
    x: &'a Rational,
    y: &'a Rational,
}

impl Evaluator<'_> {
    fn integer(
        &self,
        e: &Expr,
        scope: &mut Scope,
        what: &'static str,
    ) -> Result<BigInt, EngineError> {
        let v = self.eval(e, scope)?;
        as_integer(&v).ok_or(EngineError::NonInteger { what, value: v })
    }

    fn eval(&self, e: &Expr, scope: &mut Scope) -> Result<Rational, EngineError> {
        Ok(match e {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Param(name) => Rational::from_integer(scope.lookup(name)?.clone()),
            Expr::Var(Var::X) => self.x.clone(),
            Expr::Var(Var::Y) => self.y.clone(),
            Expr::Neg(a) => -self.eval(a, scope)?,
            Expr::Add(a, b) => self.eval(a, scope)? + self.eval(b, scope)?,
            Expr::Sub(a, b) => self.eval(a, scope)? - self.eval(b, scope)?,
            Expr::Mul(a, b) => self.eval(a, scope)? * self.eval(b, scope)?,
            Expr::Div(a, b) => {
                let num = self.eval(a, scope)?;
                let den = self.eval(b, scope)?;
                if den.is_zero() {
                    return Err(EngineError::DivisionByZero);
                }
                num / den
            }
            Expr::Pow(base, exp) => {
                let k = exponent_value(&self.integer(exp, scope, "exponent")?)?;
                power(&self.eval(base, scope)?, k)
            }
            Expr::Binom(upper, lower) => {
                let k = self.integer(lower, scope, "binomial lower index")?;
                let t = self.eval(upper, scope)?;
                binomial_value(&t, &k)?
            }
            Expr::Sum {
                index,
                lo,
                hi,
                body,
            } => {
                let lo = self.integer(lo, scope, "sum bound")?;
                let hi = self.integer(hi, scope, "sum bound")?;
                let mut acc = Rational::zero();
                if let Some((lo, hi)) = sum_range(&lo, &hi)? {
                    for i in lo..=hi {
                        scope.push(index, BigInt::from(i));
                        let term = self.eval(body, scope);
                        scope.pop();
                        acc += term?;
                    }
                }
                acc
            }
        })
    }
}

fn power(base: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= base;
    }
    acc
}

/// `C(t, k)` for a rational `t`; a negative `k` follows the generalized
/// convention and needs an integer `t`.
fn binomial_value(t: &Rational, k: &BigInt) -> Result<Rational, EngineError> {
    if k.is_negative() {
        let upper = as_integer(t).ok_or(EngineError::NegativeLowerIndex(k.clone()))?;
        let v = gen_binomial(&GenBinomArgs::new(upper, k.clone()))?;
        return Ok(Rational::from_integer(v));
    }
    let k = k.to_u64().ok_or(EngineError::TooLarge {
        what: "binomial lower index",
    })?;
    if let Some(n) = as_integer(t) {
        return Ok(Rational::from_integer(int_binomial(&n, k)));
    }
    let mut acc = Rational::one();
    let mut factor = t.clone();
    for i in 1..=k {
        acc = acc * &factor / Rational::from_integer(BigInt::from(i));
        factor -= Rational::one();
    }
    Ok(acc)
}
