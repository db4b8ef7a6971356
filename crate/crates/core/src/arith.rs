//! Exact integer and rational arithmetic.
//!
//! Integers are arbitrary precision ([`BigInt`]); rationals are always kept
//! in lowest terms with a positive denominator, so structural equality is
//! numeric equality.

use std::fmt;
use std::str::FromStr;

pub use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Normalized exact fraction.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for ArithOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        })
    }
}

/// Applies `op` to two rationals. Division by zero is reported, never panics.
pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, ArithError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn rational_from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds `num/den` in lowest terms.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational, ArithError> {
    let den = den.into();
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rational::new(num.into(), den))
}

/// Returns the integer value of `r` if its denominator is one.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.numer().clone())
}

/// Parses a decimal integer (`-12`) or fraction (`3/4`, `-6/8`).
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let text = text.trim();
    let bad = || ArithError::Parse(text.to_string());
    match text.split_once('/') {
        None => BigInt::from_str(text)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            rational(num, den)
        }
    }
}

pub fn parse_int(text: &str) -> Result<BigInt, ArithError> {
    BigInt::from_str(text.trim()).map_err(|_| ArithError::Parse(text.trim().to_string()))
}

/// The value of the binomial polynomial `C(t, k) = t(t-1)...(t-k+1)/k!` at
/// the integer `t = n`. Negative `n` is evaluated through the same
/// falling-factorial product, never through factorials of `n`.
pub fn int_binomial(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut factor = n.clone();
    for i in 1..=k {
        if acc.is_zero() {
            break;
        }
        // After this step acc = C(n, i), which is an integer.
        acc *= &factor;
        acc /= BigInt::from(i);
        factor -= 1;
    }
    acc
}

/// `(-1)^k`
pub fn sign_power(k: &BigInt) -> BigInt {
    if (k % 2u32).is_zero() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub(crate) fn is_nonnegative(n: &BigInt) -> bool {
    !n.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d).unwrap()
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(
            rat_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(),
            q(5, 6)
        );
    }

    #[test]
    fn additive_identity() {
        let a = q(-7, 9);
        assert_eq!(rat_arith(&a, &Rational::zero(), ArithOp::Add).unwrap(), a);
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = q(-3, 6);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let r = q(3, -6);
        assert_eq!(r, q(-1, 2));
        assert!(r.denom().is_positive());
        let z = q(0, -5);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rat_arith(&q(1, 2), &Rational::zero(), ArithOp::Div),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(rational(1, 0), Err(ArithError::DivisionByZero));
        assert_eq!(parse_rational("1/0"), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-6/8").unwrap(), q(-3, 4));
        assert_eq!(parse_rational(" 12 ").unwrap(), q(12, 1));
        assert_eq!(q(-3, 4).to_string(), "-3/4");
        assert_eq!(q(10, 5).to_string(), "2");
        assert!(matches!(parse_rational("1/x"), Err(ArithError::Parse(_))));
        assert!(parse_int("123456789012345678901234567890").is_ok());
    }

    #[test]
    fn binomial_values() {
        let b = |n: i64, k| int_binomial(&BigInt::from(n), k);
        assert_eq!(b(5, 2), BigInt::from(10));
        assert_eq!(b(-1, 0), BigInt::from(1));
        // (-1)(-2)/2!
        assert_eq!(b(-1, 2), BigInt::from(1));
        assert_eq!(b(3, 5), BigInt::zero());
        assert_eq!(b(-3, 3), BigInt::from(-10));
        assert_eq!(b(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    /// Falling factorial product divided by k! at the end.
    fn binomial_oracle(n: i64, k: u64) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..k {
            num *= BigInt::from(n) - BigInt::from(i);
            den *= BigInt::from(i + 1);
        }
        assert!((&num % &den).is_zero());
        num / den
    }

    proptest! {
        #[test]
        fn binomial_matches_full_product(n in -60i64..60, k in 0u64..40) {
            prop_assert_eq!(int_binomial(&BigInt::from(n), k), binomial_oracle(n, k));
        }

        #[test]
        fn reflection(n in -300i64..300, k in 0u64..=200) {
            let lhs = int_binomial(&BigInt::from(n), k);
            let rhs = sign_power(&BigInt::from(k))
                * int_binomial(&(BigInt::from(k) - 1 - n), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pascal(n in -300i64..300, k in 0u64..=200) {
            let n = BigInt::from(n);
            let lhs = int_binomial(&n, k + 1);
            let rhs = int_binomial(&(&n - 1), k + 1) + int_binomial(&(&n - 1), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_laws(
            a in (-1000i64..1000, 1i64..50),
            b in (-1000i64..1000, 1i64..50),
            c in (-1000i64..1000, 1i64..50),
        ) {
            let (a, b, c) = (q(a.0, a.1), q(b.0, b.1), q(c.0, c.1));
            let add = |u: &Rational, v: &Rational| rat_arith(u, v, ArithOp::Add).unwrap();
            let mul = |u: &Rational, v: &Rational| rat_arith(u, v, ArithOp::Mul).unwrap();
            prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
            prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
            prop_assert_eq!(add(&a, &b), add(&b, &a));
            prop_assert_eq!(mul(&a, &b), mul(&b, &a));
            prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
            let d = rat_arith(&a, &b, ArithOp::Sub).unwrap();
            for r in [add(&a, &b), mul(&a, &c), d] {
                prop_assert!(r.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
            }
            if !b.is_zero() {
                let quo = rat_arith(&a, &b, ArithOp::Div).unwrap();
                prop_assert_eq!(mul(&quo, &b), a);
            }
        }
    }
}
