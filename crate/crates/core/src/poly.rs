//! Sparse polynomials over the rationals in the two indeterminates `x`, `y`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{BigInt, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `x^deg_x * y^deg_y`, ordered graded-lexicographically with `x > y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub deg_x: u32,
    pub deg_y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg_x: 0, deg_y: 0 };

    pub fn new(deg_x: u32, deg_y: u32) -> Self {
        Monomial { deg_x, deg_y }
    }

    pub fn total_degree(&self) -> u32 {
        self.deg_x + self.deg_y
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        match var {
            Var::X => self.deg_x,
            Var::Y => self.deg_y,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.deg_x.cmp(&other.deg_x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.deg_x + rhs.deg_x, self.deg_y + rhs.deg_y)
    }
}

/// `coeff_x*x + coeff_y*y + constant`
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub coeff_x: BigInt,
    pub coeff_y: BigInt,
    pub constant: BigInt,
}

impl LinearForm {
    pub fn new(
        coeff_x: impl Into<BigInt>,
        coeff_y: impl Into<BigInt>,
        constant: impl Into<BigInt>,
    ) -> Self {
        LinearForm {
            coeff_x: coeff_x.into(),
            coeff_y: coeff_y.into(),
            constant: constant.into(),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(
            Monomial::new(1, 0),
            Rational::from_integer(self.coeff_x.clone()),
        );
        p.add_term(
            Monomial::new(0, 1),
            Rational::from_integer(self.coeff_y.clone()),
        );
        p.add_term(Monomial::ONE, Rational::from_integer(self.constant.clone()));
        p
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        x * Rational::from_integer(self.coeff_x.clone())
            + y * Rational::from_integer(self.coeff_y.clone())
            + Rational::from_integer(self.constant.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("substitution expects a polynomial in x only, found a term in y")]
    NotUnivariate,
}

/// Exact polynomial in `Q[x, y]`. No stored coefficient is zero, so the zero
/// polynomial is the empty map and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Polynomial::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        let m = match v {
            Var::X => Monomial::new(1, 0),
            Var::Y => Monomial::new(0, 1),
        };
        Polynomial::monomial(m, Rational::one())
    }

    pub fn x() -> Self {
        Polynomial::var(Var::X)
    }

    pub fn y() -> Self {
        Polynomial::var(Var::Y)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value of a polynomial without indeterminates.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Highest exponent of `var`; `-1` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> i64 {
        self.terms
            .keys()
            .map(|m| i64::from(m.degree_in(var)))
            .max()
            .unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map(|m| i64::from(m.total_degree()))
            .unwrap_or(-1)
    }

    pub fn uses(&self, var: Var) -> bool {
        self.degree_in(var) > 0
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let max_x = self.degree_in(Var::X).max(0) as usize;
        let max_y = self.degree_in(Var::Y).max(0) as usize;
        let xs = powers(x, max_x);
        let ys = powers(y, max_y);
        self.terms
            .iter()
            .map(|(m, c)| c * &xs[m.deg_x as usize] * &ys[m.deg_y as usize])
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Replaces `x` by `arg` in a univariate polynomial, fully expanded.
    pub fn compose(&self, arg: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.uses(Var::Y) {
            return Err(PolyError::NotUnivariate);
        }
        // Horner from the top coefficient down.
        let degree = self.degree_in(Var::X);
        let mut acc = Polynomial::zero();
        for d in (0..=degree.max(0) as u32).rev() {
            acc = &acc * arg;
            acc.add_term(Monomial::ONE, self.coeff(Monomial::new(d, 0)));
        }
        Ok(acc)
    }

    /// Replaces `x` by `coeff_x*x + coeff_y*y + constant`.
    pub fn compose_linear(&self, form: &LinearForm) -> Result<Polynomial, PolyError> {
        self.compose(&form.to_polynomial())
    }
}

fn powers(base: &Rational, max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Rational::one());
    for i in 0..max {
        let next = &out[i] * base;
        out.push(next);
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(*ma * *mb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { terms: acc }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (v, d) in [(Var::X, m.deg_x), (Var::Y, m.deg_y)] {
        if d == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if d == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{d}")?;
        }
    }
    Ok(())
}

/// Normal form, highest canonical term first: `x^2 + 2*x*y + y^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use proptest::prelude::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn xp1() -> Polynomial {
        Polynomial::x() + Polynomial::one()
    }

    #[test]
    fn square_of_x_plus_one() {
        let p = &xp1() * &xp1();
        assert_eq!(p.to_string(), "x^2 + 2*x + 1");
        assert_eq!(xp1().pow(2), p);
        assert_eq!(xp1().pow(0), Polynomial::one());
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = xp1().pow(3);
        assert_eq!(&p + &Polynomial::zero(), p);
        assert!((&p - &p).is_zero());
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn difference_of_squares() {
        let s = Polynomial::x() + Polynomial::y();
        let d = Polynomial::x() - Polynomial::y();
        assert_eq!((&s * &d).to_string(), "x^2 - y^2");
        assert_eq!(s.pow(2).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn evaluation() {
        let two = int(2);
        assert_eq!(Polynomial::x().pow(3).eval(&two, &int(0)), int(8));
        assert_eq!(xp1().pow(2).eval(&int(-1), &int(0)), int(0));
        assert_eq!(Polynomial::one().eval(&int(17), &int(-4)), int(1));
        let d = Polynomial::x().pow(2) - Polynomial::y().pow(2);
        assert_eq!(d.eval(&int(3), &int(2)), int(5));
    }

    #[test]
    fn linear_composition() {
        let sum = LinearForm::new(1, 1, 0);
        let sq = Polynomial::x().pow(2);
        assert_eq!(
            sq.compose_linear(&sum).unwrap().to_string(),
            "x^2 + 2*x*y + y^2"
        );

        // x(x-1)/2 at x+y, expanded by hand: (x^2 + 2xy + y^2 - x - y)/2
        let half = rational(1, 2).unwrap();
        let c2 = (Polynomial::x() * (Polynomial::x() - Polynomial::one())).scale(&half);
        let expected = Polynomial::from_terms([
            (Monomial::new(2, 0), half.clone()),
            (Monomial::new(1, 1), int(1)),
            (Monomial::new(0, 2), half.clone()),
            (Monomial::new(1, 0), -half.clone()),
            (Monomial::new(0, 1), -half.clone()),
        ]);
        assert_eq!(c2.compose_linear(&sum).unwrap(), expected);

        let three = LinearForm::new(0, 0, 3);
        assert_eq!(
            Polynomial::x().compose_linear(&three).unwrap(),
            Polynomial::from_int(3)
        );

        assert_eq!(
            Polynomial::y().compose_linear(&sum),
            Err(PolyError::NotUnivariate)
        );
    }

    #[test]
    fn degrees() {
        let p = Polynomial::x().pow(2) * Polynomial::y() + Polynomial::y().pow(3);
        assert_eq!(p.degree_in(Var::Y), 3);
        assert_eq!(p.degree_in(Var::X), 2);
        assert_eq!(Polynomial::zero().degree_in(Var::X), -1);
        assert_eq!(Polynomial::from_int(5).degree_in(Var::X), 0);
    }

    #[test]
    fn printing_uses_rational_coefficients() {
        let p = Polynomial::from_terms([
            (Monomial::new(3, 0), rational(1, 6).unwrap()),
            (Monomial::new(2, 0), rational(-1, 2).unwrap()),
            (Monomial::new(1, 0), rational(1, 3).unwrap()),
        ]);
        assert_eq!(p.to_string(), "1/6*x^3 - 1/2*x^2 + 1/3*x");
        assert_eq!((-Polynomial::x()).to_string(), "-x");
        assert_eq!(Polynomial::from_int(-4).to_string(), "-4");
    }

    #[test]
    fn constants() {
        assert_eq!(Polynomial::zero().as_constant(), Some(int(0)));
        assert_eq!(Polynomial::from_int(7).as_constant(), Some(int(7)));
        assert_eq!(xp1().as_constant(), None);
        assert_eq!(Polynomial::x().as_constant(), None);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..4, 0u32..4), -20i64..20, 1i64..6), 0..8).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|((a, b), n, d)| (Monomial::new(a, b), rational(n, d).unwrap())),
            )
        })
    }

    fn arb_point() -> impl Strategy<Value = (Rational, Rational)> {
        ((-9i64..9, 1i64..4), (-9i64..9, 1i64..4))
            .prop_map(|((a, b), (c, d))| (rational(a, b).unwrap(), rational(c, d).unwrap()))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_homomorphism(p in arb_poly(), q in arb_poly(), (a, b) in arb_point()) {
            prop_assert_eq!((&p * &q).eval(&a, &b), p.eval(&a, &b) * q.eval(&a, &b));
            prop_assert_eq!((&p + &q).eval(&a, &b), p.eval(&a, &b) + q.eval(&a, &b));
            prop_assert_eq!((&p - &q).eval(&a, &b), p.eval(&a, &b) - q.eval(&a, &b));
        }

        #[test]
        fn composition_commutes_with_evaluation(
            coeffs in prop::collection::vec(-10i64..10, 0..6),
            (cx, cy, c0) in (-3i64..3, -3i64..3, -5i64..5),
            (a, b) in arb_point(),
        ) {
            let p = Polynomial::from_terms(
                coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(i as u32, 0), int(*c))),
            );
            let form = LinearForm::new(cx, cy, c0);
            let composed = p.compose_linear(&form).unwrap();
            let at = form.eval(&a, &b);
            prop_assert_eq!(composed.eval(&a, &b), p.eval(&at, &Rational::zero()));
        }

        #[test]
        fn degree_of_product_is_additive(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let pq = &p * &q;
            for v in [Var::X, Var::Y] {
                prop_assert_eq!(pq.degree_in(v), p.degree_in(v) + q.degree_in(v));
            }
        }

        #[test]
        fn no_zero_coefficients(p in arb_poly(), q in arb_poly()) {
            for r in [&p * &q, &p - &q, &p + &q, p.pow(2)] {
                prop_assert!(r.terms().all(|(_, c)| !c.is_zero()));
            }
        }
    }
}
