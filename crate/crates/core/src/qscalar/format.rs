//! Canonical text form of Laurent polynomials in `q = v^2`.
//!
//! Terms are printed in decreasing exponent order as `<rat>*q^<e>`. Integral
//! powers of `q` print as `q`, `q^3`, `q^-2`; half-integral ones as
//! `q^(5/2)`, `q^(-1/2)`. Unit coefficients are omitted except on the
//! constant term, and signs are folded into the `+`/`-` separators:
//!
//! ```text
//! q^12 - 4*q^10 + 4*q^8 - 6*q^4 + 6*q^2 - 2
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use super::ScalarError;

pub(crate) fn format_q_power(v_exp: i32) -> String {
    if v_exp % 2 == 0 {
        match v_exp / 2 {
            1 => "q".to_string(),
            e => format!("q^{e}"),
        }
    } else {
        format!("q^({v_exp}/2)")
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_term(exp: i32, abs: &BigRational) -> String {
    if exp == 0 {
        format_rational(abs)
    } else if abs.is_one() {
        format_q_power(exp)
    } else {
        format!("{}*{}", format_rational(abs), format_q_power(exp))
    }
}

pub fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (exp, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format_term(exp, &c.abs()));
    }
    out
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parses `q`, `q^e`, `q^-e`, `q^(e)` or `q^(e/2)` into a `v` exponent.
fn parse_q_power(s: &str) -> Option<i32> {
    let rest = s.strip_prefix('q')?;
    if rest.is_empty() {
        return Some(2);
    }
    let rest = rest.strip_prefix('^')?;
    if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return match inner.split_once('/') {
            Some((n, "2")) => n.parse().ok(),
            Some(_) => None,
            None => inner.parse::<i32>().ok().map(|e| 2 * e),
        };
    }
    rest.parse::<i32>().ok().map(|e| 2 * e)
}

fn parse_term(s: &str) -> Option<(i32, BigRational)> {
    if let Some((c, q)) = s.split_once('*') {
        Some((parse_q_power(q)?, parse_rational(c)?))
    } else if s.starts_with('q') {
        Some((parse_q_power(s)?, BigRational::one()))
    } else {
        Some((0, parse_rational(s)?))
    }
}

/// Inverse of [`format_poly`].
pub fn parse_poly(s: &str) -> Result<LaurentPoly, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut rest = s;
    let mut negative = false;
    if let Some(r) = rest.strip_prefix('-') {
        negative = true;
        rest = r;
    }
    loop {
        let next_plus = rest.find(" + ");
        let next_minus = rest.find(" - ");
        let cut = match (next_plus, next_minus) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let (head, tail) = match cut {
            Some(k) => (&rest[..k], Some(&rest[k..])),
            None => (rest, None),
        };
        let (e, c) = parse_term(head.trim()).ok_or_else(bad)?;
        terms.push((e, if negative { -c } else { c }));
        match tail {
            Some(t) => {
                negative = t.starts_with(" - ");
                rest = &t[3..];
            }
            None => break,
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_reference_denominator() {
        let d = LaurentPoly::from_int_terms(&[(24, 1), (20, -4), (16, 4), (8, -6), (4, 6), (0, -2)]);
        assert_eq!(format_poly(&d), "q^12 - 4*q^10 + 4*q^8 - 6*q^4 + 6*q^2 - 2");
    }

    #[test]
    fn prints_half_integral_and_negative_powers() {
        let p = LaurentPoly::from_int_terms(&[(2, -1), (1, 3), (-2, 1), (-5, -1)]);
        assert_eq!(format_poly(&p), "-q + 3*q^(1/2) + q^-1 - q^(-5/2)");
        let half = LaurentPoly::from_terms([(0, BigRational::new((-3).into(), 2.into()))]);
        assert_eq!(format_poly(&half), "-3/2");
    }

    #[test]
    fn parse_inverts_format() {
        for text in [
            "q^12 - 4*q^10 + 4*q^8 - 6*q^4 + 6*q^2 - 2",
            "-q + 3*q^(1/2) + q^-1 - q^(-5/2)",
            "-3/2*q^7 + 1/3",
            "0",
        ] {
            let p = parse_poly(text).unwrap();
            assert_eq!(format_poly(&p), text);
        }
        assert!(parse_poly("q^").is_err());
        assert!(parse_poly("3 +").is_err());
    }
}
