//! Binomial-coefficient polynomials and the polynomial families built on them.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int_binomial, is_nonnegative, BigInt, Rational};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeIndex(BigInt),
    #[error("binom({upper}, {lower}) is undefined: upper - lower must be a nonnegative integer")]
    UndefinedConvention { upper: BigInt, lower: BigInt },
    #[error("binomial lower index {0} is too large")]
    IndexTooLarge(BigInt),
}

/// Integer arguments of a binomial whose lower index may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenBinomArgs {
    pub upper: BigInt,
    pub lower: BigInt,
}

impl GenBinomArgs {
    pub fn new(upper: impl Into<BigInt>, lower: impl Into<BigInt>) -> Self {
        GenBinomArgs {
            upper: upper.into(),
            lower: lower.into(),
        }
    }
}

/// `C(x, n) = x(x-1)...(x-n+1)/n!` as a polynomial in `x`.
pub fn choose_poly(n: i64) -> Result<Polynomial, DomainError> {
    let k = u32::try_from(n).map_err(|_| DomainError::NegativeIndex(n.into()))?;
    Ok(choose_of(&Polynomial::x(), k))
}

/// `C(arg, k)` for an arbitrary polynomial `arg`, i.e. `choose_poly(k)` with
/// `x` replaced by `arg`. Computed as the falling-factorial product, which
/// stays integral until the final division by `k!`.
pub fn choose_of(arg: &Polynomial, k: u32) -> Polynomial {
    let mut acc = Polynomial::one();
    let mut factorial = BigInt::one();
    for i in 0..k {
        let factor = arg - &Polynomial::from_int(i);
        acc = &acc * &factor;
        factorial *= i + 1;
    }
    acc.scale(&Rational::new(BigInt::one(), factorial))
}

/// `C(upper, lower) := C(upper, upper - lower)` whenever `upper - lower >= 0`.
/// For a nonnegative lower index this agrees with the ordinary binomial.
pub fn gen_binomial(args: &GenBinomArgs) -> Result<BigInt, DomainError> {
    let k = &args.upper - &args.lower;
    if !is_nonnegative(&k) {
        return Err(DomainError::UndefinedConvention {
            upper: args.upper.clone(),
            lower: args.lower.clone(),
        });
    }
    let k = u64::try_from(&k).map_err(|_| DomainError::IndexTooLarge(k.clone()))?;
    Ok(int_binomial(&args.upper, k))
}

/// The even-part filter of `(x+1)^n`:
/// `sum_m (1 + (-1)^(n-m))/2 * C(n, m) * x^m`, which equals
/// `((x+1)^n + (x-1)^n)/2`.
pub fn f_plus(n: u32) -> Polynomial {
    let n_big = BigInt::from(n);
    Polynomial::from_terms((0..=n).filter(|m| (n - m).is_multiple_of(2)).map(|m| {
        (
            Monomial::new(m, 0),
            Rational::from_integer(int_binomial(&n_big, u64::from(m))),
        )
    }))
}

/// `S_n(x) = sum_{m=0}^{n} C(x-m, m) * C(m, n-m)`; the zero polynomial for
/// negative `n`. `C(m, n-m)` is the ordinary integer binomial and vanishes
/// unless `0 <= n-m <= m`.
pub fn s_poly(n: i64) -> Polynomial {
    let mut acc = Polynomial::zero();
    for m in 0..=n {
        let weight = int_binomial(&BigInt::from(m), (n - m) as u64);
        if weight.is_zero() {
            continue;
        }
        let shifted = Polynomial::x() - Polynomial::from_int(m);
        let term = choose_of(&shifted, m as u32);
        acc = &acc + &term.scale(&Rational::from_integer(weight));
    }
    acc
}

/// `p(x - 1)`
pub fn shift_down(p: &Polynomial) -> Polynomial {
    p.compose(&(Polynomial::x() - Polynomial::one()))
        .expect("shift_down expects a polynomial in x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use crate::poly::Var;
    use proptest::prelude::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn at(p: &Polynomial, t: i64) -> Rational {
        p.eval(&int(t), &Rational::zero())
    }

    /// S_n(t) by direct summation over integers.
    fn s_oracle(n: i64, t: i64) -> BigInt {
        (0..=n)
            .map(|m| {
                int_binomial(&BigInt::from(t - m), m as u64)
                    * int_binomial(&BigInt::from(m), (n - m) as u64)
            })
            .sum()
    }

    #[test]
    fn choose_poly_small_cases() {
        assert_eq!(choose_poly(0).unwrap(), Polynomial::one());
        let half = rational(1, 2).unwrap();
        let expected = Polynomial::from_terms([
            (Monomial::new(2, 0), half.clone()),
            (Monomial::new(1, 0), -half),
        ]);
        assert_eq!(choose_poly(2).unwrap(), expected);
        assert_eq!(at(&choose_poly(3).unwrap(), 7), int(35));
        assert_eq!(
            choose_poly(-1),
            Err(DomainError::NegativeIndex((-1).into()))
        );
    }

    #[test]
    fn choose_poly_degree_and_leading_coefficient() {
        for n in 0..12u32 {
            let p = choose_poly(i64::from(n)).unwrap();
            assert_eq!(p.degree_in(Var::X), i64::from(n));
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            assert_eq!(
                p.coeff(Monomial::new(n, 0)),
                Rational::new(BigInt::one(), fact)
            );
        }
    }

    #[test]
    fn choose_poly_matches_integer_binomial() {
        for n in 0..=20i64 {
            let p = choose_poly(n).unwrap();
            for t in -50..=50i64 {
                assert_eq!(
                    at(&p, t),
                    Rational::from_integer(int_binomial(&BigInt::from(t), n as u64)),
                    "C({t}, {n})"
                );
            }
        }
    }

    #[test]
    fn generalized_convention() {
        assert_eq!(
            gen_binomial(&GenBinomArgs::new(-1, -1)).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            gen_binomial(&GenBinomArgs::new(5, 3)).unwrap(),
            BigInt::from(10)
        );
        for n in [-7, -1, 0, 4, 31] {
            assert_eq!(
                gen_binomial(&GenBinomArgs::new(n, n)).unwrap(),
                BigInt::one()
            );
        }
        assert!(matches!(
            gen_binomial(&GenBinomArgs::new(2, 3)),
            Err(DomainError::UndefinedConvention { .. })
        ));
    }

    #[test]
    fn f_plus_small_cases() {
        assert_eq!(f_plus(0), Polynomial::one());
        assert_eq!(f_plus(1), Polynomial::x());
        assert_eq!(f_plus(2).to_string(), "x^2 + 1");
    }

    #[test]
    fn f_plus_matches_closed_form() {
        let half = rational(1, 2).unwrap();
        let xp = Polynomial::x() + Polynomial::one();
        let xm = Polynomial::x() - Polynomial::one();
        for n in 0..=30u32 {
            let closed = (xp.pow(n) + xm.pow(n)).scale(&half);
            assert_eq!(f_plus(n), closed, "n = {n}");
        }
    }

    #[test]
    fn f_plus_parity() {
        for n in 0..=30u32 {
            assert!(f_plus(n).terms().all(|(m, _)| m.deg_x % 2 == n % 2));
        }
    }

    #[test]
    fn s_poly_small_cases() {
        assert_eq!(s_poly(0), Polynomial::one());
        assert_eq!(s_poly(-1), Polynomial::zero());
        assert_eq!(s_poly(-5), Polynomial::zero());
        assert_eq!(s_poly(1), Polynomial::x() - Polynomial::one());
        for t in [-3, 0, 2, 5, 11] {
            assert_eq!(at(&s_poly(1), t), Rational::from_integer(s_oracle(1, t)));
        }
    }

    #[test]
    fn s_poly_matches_direct_summation() {
        for n in -2..=20 {
            let p = s_poly(n);
            for t in -20..=20 {
                assert_eq!(at(&p, t), Rational::from_integer(s_oracle(n, t)));
            }
        }
    }

    #[test]
    fn s_diagonal_closed_form() {
        for n in 0..=30i64 {
            let expected = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(at(&s_poly(n), n), int(expected), "S_{n}({n})");
        }
    }

    #[test]
    fn s_difference_recurrence() {
        for n in 0..=30i64 {
            let s = s_poly(n);
            let prev = s_poly(n - 1);
            for t in -20..=20 {
                assert_eq!(at(&s, t) - at(&s, t - 1), at(&prev, t - 1));
            }
        }
    }

    #[test]
    fn binomial_splits_into_s_polynomials() {
        for n in 0..=30i64 {
            let lhs = choose_poly(n).unwrap();
            let rhs = &s_poly(n) + &shift_down(&s_poly(n - 1));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn choose_of_is_composition(
            coeffs in prop::collection::vec((0u32..3, 0u32..3, -4i64..4), 0..5),
            k in 0u32..7,
        ) {
            let arg = Polynomial::from_terms(
                coeffs.into_iter().map(|(a, b, c)| (Monomial::new(a, b), int(c))),
            );
            let via_compose = choose_poly(i64::from(k)).unwrap().compose(&arg).unwrap();
            prop_assert_eq!(choose_of(&arg, k), via_compose);
        }
    }
}
