//! Text format for algebra elements.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' ['-'] int)?
//! atom   := 'x_' int | 'y_' int | 'q' ('^(' rational ')')? | rational
//!         | '(' int int ')' | '(' expr ')'
//! ```
//!
//! `(i j)` is the bracket `q^(-1/2)*x_i*y_j - q^(1/2)*y_i*x_j`. Division
//! and negative powers are only allowed for scalar operands. The printer
//! emits terms in a fixed order with monomials written in ascending index
//! order, and [`parse_expression`] reads its output back exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::pbw::{Algebra, AlgebraError, Generator, Kind, NCPolynomial};
use crate::qscalar::{format_poly, LaurentPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown index {index} at offset {offset}")]
    UnknownIndex { offset: usize, index: usize },
}

fn format_coefficient_factor(c: &Scalar) -> String {
    if c.is_laurent() {
        format!("({})", format_poly(c.numer()))
    } else {
        format!("({})/({})", format_poly(c.numer()), format_poly(c.denom()))
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            // Single-term Laurent coefficients fold their sign into the separator.
            let simple = c.is_laurent() && c.numer().is_monomial();
            let negative = simple && c.numer().trailing_coeff().unwrap().is_negative();
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sep)?;
            let mono = m.to_string();
            let coeff = if simple {
                let abs = if negative { -c.numer() } else { c.numer().clone() };
                if abs.is_one() && !m.is_one() {
                    None
                } else {
                    Some(format_poly(&abs))
                }
            } else {
                Some(format_coefficient_factor(c))
            };
            match (coeff, m.is_one()) {
                (Some(c), true) => f.write_str(&c)?,
                (Some(c), false) => write!(f, "{c}*{mono}")?,
                (None, _) => f.write_str(&mono)?,
            }
        }
        Ok(())
    }
}

/// Parses an expression into its normal form in `alg`.
pub fn parse_expression(alg: &Algebra, text: &str) -> Result<NCPolynomial, ParseError> {
    let mut p = Parser {
        alg,
        src: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    alg: &'a Algebra,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<NCPolynomial, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPolynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = self.alg.multiply(&acc, &rhs);
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.factor()?;
                let s = self.as_scalar(&rhs).ok_or(ParseError::Syntax {
                    offset: at,
                    message: "divisor must be a nonzero scalar".into(),
                })?;
                acc = acc.scale(&s.inv().map_err(|_| ParseError::Syntax {
                    offset: at,
                    message: "division by zero".into(),
                })?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn as_scalar(&self, p: &NCPolynomial) -> Option<Scalar> {
        if p.is_zero() {
            return Some(Scalar::zero());
        }
        if p.len() == 1 {
            let (m, c) = p.terms().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    fn factor(&mut self) -> Result<NCPolynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let at = self.pos;
        let e = self.uint()?;
        let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
        if !negative {
            return Ok(self.alg.pow(&base, e));
        }
        let s = self
            .as_scalar(&base)
            .filter(|s| !s.is_zero())
            .ok_or(ParseError::Syntax {
                offset: at,
                message: "negative power of a non-scalar".into(),
            })?;
        let inv = s.pow(-(e as i32)).expect("nonzero base");
        Ok(self.alg.constant(inv))
    }

    fn atom(&mut self) -> Result<NCPolynomial, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'x') | Some(b'y') => {
                let kind = if self.src[self.pos] == b'x' { Kind::X } else { Kind::Y };
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'_') {
                    return Err(self.error("expected '_' after generator name"));
                }
                self.pos += 1;
                let idx_at = self.pos;
                let index = self.uint()?;
                let g = self.generator(kind, index, idx_at)?;
                Ok(self.alg.gen_poly(g))
            }
            Some(b'q') => {
                self.pos += 1;
                // `q^(r)` binds here; a plain `q^n` is handled by `factor`.
                if self.src.get(self.pos) == Some(&b'^') && self.lookahead_paren() {
                    self.pos += 1;
                    self.expect(b'(')?;
                    let neg = self.eat(b'-');
                    let mut r = self.rational()?;
                    if neg {
                        r = -r;
                    }
                    self.expect(b')')?;
                    let twice = &r * BigRational::from_integer(2.into());
                    if !twice.is_integer() {
                        return Err(ParseError::Syntax {
                            offset: start,
                            message: "q exponent must be a multiple of 1/2".into(),
                        });
                    }
                    let k: i32 = twice
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.error("exponent too large"))?;
                    return Ok(self.alg.constant(Scalar::q_half_pow(k)));
                }
                Ok(self.alg.constant(Scalar::q_pow(1)))
            }
            Some(b'(') => {
                self.pos += 1;
                if let Some(pair) = self.try_bracket()? {
                    return Ok(pair);
                }
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(self.alg.constant(Scalar::from_rational(r)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn lookahead_paren(&self) -> bool {
        let mut k = self.pos + 1;
        while k < self.src.len() && self.src[k].is_ascii_whitespace() {
            k += 1;
        }
        self.src.get(k) == Some(&b'(')
    }

    /// After an opening parenthesis: `int ws int ')'` is a bracket symbol.
    fn try_bracket(&mut self) -> Result<Option<NCPolynomial>, ParseError> {
        let save = self.pos;
        let digits = |p: &mut Self| -> Option<(usize, usize)> {
            p.skip_ws();
            let at = p.pos;
            let n = p.src[p.pos..].iter().take_while(|b| b.is_ascii_digit()).count();
            if n == 0 {
                return None;
            }
            p.pos += n;
            std::str::from_utf8(&p.src[at..at + n]).ok()?.parse().ok().map(|v| (v, at))
        };
        let Some((i, i_at)) = digits(self) else {
            return Ok(None);
        };
        let ws_between = self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace);
        let second = if ws_between { digits(self) } else { None };
        match second {
            Some((j, j_at)) if self.eat(b')') => {
                let i = self.check(i, i_at)?;
                let j = self.check(j, j_at)?;
                Ok(Some(crate::covariants::bracket(self.alg, i, j).expect("indices checked")))
            }
            _ => {
                self.pos = save;
                Ok(None)
            }
        }
    }

    fn check(&self, index: usize, offset: usize) -> Result<usize, ParseError> {
        self.alg
            .check_index(index)
            .map(|i| i as usize)
            .map_err(|_| ParseError::UnknownIndex { offset, index })
    }

    fn generator(&self, kind: Kind, index: usize, offset: usize) -> Result<Generator, ParseError> {
        self.alg.generator(kind, index).map_err(|e| match e {
            AlgebraError::ForeignIndex { index, .. } => ParseError::UnknownIndex { offset, index },
            other => ParseError::Syntax {
                offset,
                message: other.to_string(),
            },
        })
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let n = self.src[self.pos..].iter().take_while(|b| b.is_ascii_digit()).count();
        if n == 0 {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[self.pos..self.pos + n]).unwrap();
        let v = text.parse().map_err(|_| self.error("integer too large"))?;
        self.pos += n;
        Ok(v)
    }

    fn big_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let n = self.src[self.pos..].iter().take_while(|b| b.is_ascii_digit()).count();
        if n == 0 {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[self.pos..self.pos + n]).unwrap();
        self.pos += n;
        Ok(text.parse().unwrap())
    }

    /// `int` or `int/int` with no whitespace around the slash.
    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let n = self.big_uint()?;
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let at = self.pos;
            let d = self.big_uint()?;
            if d.is_zero() {
                return Err(ParseError::Syntax {
                    offset: at,
                    message: "zero denominator".into(),
                });
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }
}

/// Convenience for printing a Laurent polynomial coefficient the way
/// [`NCPolynomial`]'s printer does.
pub fn format_laurent(p: &LaurentPoly) -> String {
    format_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::bracket;

    #[test]
    fn parses_bracket_definition() {
        let alg = Algebra::default();
        let p = parse_expression(&alg, "q^(-1/2)*x_1*y_2 - q^(1/2)*y_1*x_2").unwrap();
        assert_eq!(p, bracket(&alg, 1, 2).unwrap());
        assert_eq!(parse_expression(&alg, "(1 2)").unwrap(), p);
    }

    #[test]
    fn parses_reordering() {
        let alg = Algebra::default();
        let p = parse_expression(&alg, "x_2*x_1").unwrap();
        let expected = alg.multiply(&alg.x(1), &alg.x(2)).scale(&Scalar::q_pow(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn syntax_error_offset() {
        let alg = Algebra::default();
        match parse_expression(&alg, "x_1 +") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_expression(&alg, "x_9"),
            Err(ParseError::UnknownIndex { index: 9, offset: 2 })
        ));
        assert!(parse_expression(&alg, "x_1/x_2").is_err());
        assert!(parse_expression(&alg, "x_1^-1").is_err());
    }

    #[test]
    fn scalar_expressions() {
        let alg = Algebra::default();
        let p = parse_expression(&alg, "(q^2 - 1)/(q + q^-1) * 3/2").unwrap();
        let expected = (Scalar::q_pow(2) - Scalar::one()) / Scalar::q_two()
            * Scalar::from_rational(BigRational::new(3.into(), 2.into()));
        assert_eq!(p, alg.constant(expected));
    }

    #[test]
    fn printed_form_reparses() {
        let alg = Algebra::default();
        for text in [
            "(1 2)*(3 4)",
            "x_2*y_1 + (q^2 - 1)/(q^4 + 1)*y_3^2",
            "-q^(3/2) + 2/3*x_0*y_0",
            "0",
        ] {
            let p = parse_expression(&alg, text).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_expression(&alg, &printed).unwrap(), p, "{printed}");
        }
    }
}
