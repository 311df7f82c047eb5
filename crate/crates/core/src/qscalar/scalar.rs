use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::format::{format_poly, parse_poly};
use super::{LaurentPoly, ScalarError};

/// An element of Q(v), `v = q^{1/2}`, kept in canonical reduced form.
///
/// Canonical means: the numerator and denominator share no factor in Q[v]
/// (powers of `v` are units and always live in the numerator), the
/// denominator has lowest exponent 0, integer coprime coefficients and a
/// positive leading coefficient. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    /// Canonical `n / d`.
    pub fn reduce(n: LaurentPoly, d: LaurentPoly) -> Result<Self, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce_nonzero(n, d))
    }

    /// Canonical `n / d` for a nonzero `d` already known to share no
    /// factor with `n`; skips the gcd.
    pub(crate) fn from_coprime(n: LaurentPoly, d: LaurentPoly) -> Self {
        Self::normalize(n, d, false)
    }

    fn reduce_nonzero(n: LaurentPoly, d: LaurentPoly) -> Self {
        Self::normalize(n, d, true)
    }

    fn normalize(n: LaurentPoly, d: LaurentPoly, cancel: bool) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        if d.is_one() {
            return Self { num: n, den: d };
        }
        let shift = d.low_exp();
        let (mut n, mut d) = (n.shift(-shift), d.shift(-shift));
        if d.is_monomial() {
            let inv = d.trailing_coeff().unwrap().recip();
            return Self {
                num: n.scale(&inv),
                den: LaurentPoly::one(),
            };
        }
        if cancel {
            let g = n.gcd(&d);
            if !g.is_one() {
                n = n.div_exact(&g).expect("gcd divides numerator");
                d = d.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let (d, content) = d.primitive_part();
        let n = n.scale(&content.recip());
        Self { num: n, den: d }
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `q^{k/2}`, i.e. `v^k`.
    pub fn q_half_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPoly::v_pow(k))
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::q_half_pow(2 * k)
    }

    /// The q-number `[2]_q = q + q^{-1}`.
    pub fn q_two() -> Self {
        Self::from_laurent(LaurentPoly::from_int_terms(&[(2, 1), (-2, 1)]))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(Self::reduce_nonzero(
            self.num.pow(e as u32),
            self.den.pow(e as u32),
        ))
    }

    /// Multiplies by a Laurent polynomial.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if self.den.is_one() {
            return Self::from_laurent(&self.num * p);
        }
        Self::reduce_nonzero(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            num: self.num.scale(c),
            den: if c.is_zero() { LaurentPoly::one() } else { self.den.clone() },
        }
    }

    /// Exact value at `v = v0`.
    pub fn evaluate(&self, v0: &BigRational) -> Result<BigRational, ScalarError> {
        let pole = || ScalarError::Pole(v0.to_string());
        let d = self.den.eval(v0).ok_or_else(pole)?;
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval(v0).ok_or_else(pole)?;
        Ok(n / d)
    }

    /// Value at the classical point `q = 1`.
    pub fn at_one(&self) -> Result<BigRational, ScalarError> {
        self.evaluate(&BigRational::one())
    }

    /// Formal conjugation `v -> v^{-1}`.
    pub fn star_conjugate(&self) -> Self {
        Self::reduce_nonzero(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Degree span of numerator plus denominator; a crude size measure.
    pub fn weight(&self) -> usize {
        self.num.span() + self.den.span() + self.num.term_count()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<BigInt> for Scalar {
    fn from(c: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(c))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar::from_laurent(&self.num + &rhs.num);
            }
            return Scalar::reduce_nonzero(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::reduce_nonzero(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(&self.num * &rhs.num);
        }
        Scalar::reduce_nonzero(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a fallible path.
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar::reduce_nonzero(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&format_poly(&self.num))
        } else {
            write!(f, "{} / {}", format_poly(&self.num), format_poly(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Parses the canonical text form `<poly>` or `<poly> / <poly>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(" / ") {
            Some((n, d)) => Scalar::reduce(parse_poly(n)?, parse_poly(d)?),
            None => Ok(Scalar::from_laurent(parse_poly(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn reduce_cancels_common_factor() {
        // (v^2 - 1) / (v - 1) = v + 1
        let s = Scalar::reduce(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(s, Scalar::from_laurent(lp(&[(1, 1), (0, 1)])));
        assert!(s.is_laurent());
    }

    #[test]
    fn reduce_keeps_printed_denominator_polynomial() {
        let d = lp(&[(24, 1), (20, -4), (16, 4), (8, -6), (4, 6), (0, -2)]);
        let s = Scalar::reduce(d.clone(), LaurentPoly::one()).unwrap();
        assert_eq!(s.numer(), &d);
        assert_eq!(s.to_string(), "q^12 - 4*q^10 + 4*q^8 - 6*q^4 + 6*q^2 - 2");
        assert_eq!(Scalar::reduce(s.numer().clone(), s.denom().clone()).unwrap(), s);
    }

    #[test]
    fn zero_numerator_reduces_to_zero() {
        let s = Scalar::reduce(LaurentPoly::zero(), LaurentPoly::v_pow(3)).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, Scalar::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Scalar::reduce(LaurentPoly::one(), LaurentPoly::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn denominator_canonical_form() {
        // 1 / (-2 v^3 - 4 v^4) -> -1/2 v^-3 / (2v + 1)... with den primitive and positive
        let s = Scalar::reduce(LaurentPoly::one(), lp(&[(3, -2), (4, -4)])).unwrap();
        assert_eq!(s.denom(), &lp(&[(1, 2), (0, 1)]));
        assert_eq!(s.numer(), &LaurentPoly::from_terms([(-3, BigRational::new((-1).into(), 2.into()))]));
    }

    #[test]
    fn evaluate_examples() {
        let d = Scalar::from_laurent(lp(&[(24, 1), (20, -4), (16, 4), (8, -6), (4, 6), (0, -2)]));
        assert_eq!(d.at_one().unwrap(), rat(-1));
        assert_eq!(Scalar::q_two().at_one().unwrap(), rat(2));
        let pole = Scalar::reduce(LaurentPoly::one(), lp(&[(1, 1), (0, -1)])).unwrap();
        assert!(matches!(pole.at_one(), Err(ScalarError::Pole(_))));
    }

    #[test]
    fn star_conjugate_examples() {
        assert_eq!(Scalar::q_half_pow(1).star_conjugate(), Scalar::q_half_pow(-1));
        assert_eq!(Scalar::q_two().star_conjugate(), Scalar::q_two());
        let a = Scalar::from_laurent(lp(&[(4, 1), (0, -1)]));
        let expected = -(Scalar::q_pow(-2) * &a);
        assert_eq!(a.star_conjugate(), expected);
        assert_eq!(a.star_conjugate().to_string(), "-1 + q^-2");
    }

    #[test]
    fn display_and_parse_rational_function() {
        let s = Scalar::reduce(lp(&[(3, 2), (0, -1)]), lp(&[(4, 1), (0, 1)])).unwrap();
        let text = s.to_string();
        assert_eq!(text, "2*q^(3/2) - 1 / q^2 + 1");
        assert_eq!(text.parse::<Scalar>().unwrap(), s);
    }
}
