//! Exact check of `M x = 0` without rational-function arithmetic.
//!
//! Rows of `M` and the vector `x` are scaled to integer polynomials in `v`
//! (rows by their denominators, `x` by a common multiple of its entry
//! denominators). Each row sum is then an integer polynomial `P` whose
//! coefficients are bounded by `H`, and `P(2^k) = 0` with `2^k > 2H` forces
//! `P = 0`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{clear_row_denominators, ScalarMatrix};
use crate::qscalar::{LaurentPoly, Scalar};

/// A polynomial in `v` with integer coefficients, `coeffs[e]` for `v^e`.
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    /// `p * scale` with nonnegative exponents after shifting by `shift`;
    /// the product must have integer coefficients.
    fn new(p: &LaurentPoly, scale: &BigInt, shift: i32) -> Self {
        if p.is_zero() {
            return Self(Vec::new());
        }
        let low = p.low_exp() + shift;
        assert!(low >= 0, "negative exponent after shift");
        let mut coeffs = vec![BigInt::zero(); low as usize + p.span() + 1];
        for (e, c) in p.terms() {
            let scaled = c * BigRational::from(scale.clone());
            assert!(scaled.is_integer(), "scale clears denominators");
            coeffs[(e + shift) as usize] = scaled.to_integer();
        }
        Self(coeffs)
    }

    fn norm1(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }

    fn at_power_of_two(&self, k: u64) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| (acc << k) + c)
    }
}

fn denominator_lcm(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// `true` iff every vector in `xs` is annihilated by `m`, decided exactly.
pub(crate) fn annihilates_all(m: &ScalarMatrix, xs: &[Vec<Scalar>]) -> bool {
    if xs.is_empty() {
        return true;
    }
    let cleared = clear_row_denominators(m);
    let rows: Vec<Vec<IntPoly>> = cleared
        .iter()
        .map(|row| {
            let scale = row.iter().fold(BigInt::one(), |acc, p| acc.lcm(&denominator_lcm(p)));
            row.iter().map(|p| IntPoly::new(p, &scale, 0)).collect()
        })
        .collect();
    let vectors: Vec<ClearedVector> = xs.iter().map(|x| ClearedVector::new(x)).collect();

    // One evaluation point for all rows and vectors.
    let mut bound = BigInt::zero();
    let norms: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(IntPoly::norm1).collect()).collect();
    for v in &vectors {
        for row in &norms {
            let h: BigInt = row.iter().zip(&v.norms).map(|(a, b)| a * b).sum();
            if h > bound {
                bound = h;
            }
        }
    }
    let k = (bound * 2u32 + 1u32).bits() + 1;

    let row_values: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|p| p.at_power_of_two(k)).collect()).collect();
    vectors.iter().all(|v| {
        let w = v.values(k);
        row_values.iter().all(|row| {
            let sum: BigInt = row.iter().zip(&w).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum();
            sum.sign() == Sign::NoSign
        })
    })
}

/// `x` times a common multiple of its denominators, kept factored as
/// `numer_j * prod_{b != den(j)} dens[b]`.
struct ClearedVector {
    numers: Vec<IntPoly>,
    den_of: Vec<Option<usize>>,
    dens: Vec<IntPoly>,
    /// Upper bound on the 1-norm of each cleared entry.
    norms: Vec<BigInt>,
}

impl ClearedVector {
    fn new(x: &[Scalar]) -> Self {
        let mut distinct: Vec<&LaurentPoly> = Vec::new();
        let den_of: Vec<Option<usize>> = x
            .iter()
            .map(|s| {
                if s.is_zero() {
                    return None;
                }
                Some(match distinct.iter().position(|d| *d == s.denom()) {
                    Some(i) => i,
                    None => {
                        distinct.push(s.denom());
                        distinct.len() - 1
                    }
                })
            })
            .collect();
        let den_scales: Vec<BigInt> = distinct.iter().map(|d| denominator_lcm(d)).collect();
        let dens: Vec<IntPoly> = distinct.iter().zip(&den_scales).map(|(d, c)| IntPoly::new(d, c, 0)).collect();
        // Numerators times their own denominator's scale, then one common
        // integer scale and one common shift for the whole vector.
        let shift = -x.iter().filter(|s| !s.is_zero()).map(|s| s.numer().low_exp()).min().unwrap_or(0).min(0);
        let common = x
            .iter()
            .zip(&den_of)
            .filter_map(|(s, d)| d.map(|b| (s, b)))
            .fold(BigInt::one(), |acc, (s, b)| {
                acc.lcm(&denominator_lcm(&s.numer().scale(&den_scales[b].clone().into())))
            });
        let numers: Vec<IntPoly> = x
            .iter()
            .zip(&den_of)
            .map(|(s, d)| match d {
                None => IntPoly(Vec::new()),
                Some(b) => IntPoly::new(&s.numer().scale(&den_scales[*b].clone().into()), &common, shift),
            })
            .collect();
        let den_norms: Vec<BigInt> = dens.iter().map(IntPoly::norm1).collect();
        let norms = numers
            .iter()
            .zip(&den_of)
            .map(|(n, d)| match d {
                None => BigInt::zero(),
                Some(b) => den_norms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i != b)
                    .fold(n.norm1(), |acc, (_, dn)| acc * dn),
            })
            .collect();
        Self {
            numers,
            den_of,
            dens,
            norms,
        }
    }

    fn values(&self, k: u64) -> Vec<BigInt> {
        let den_values: Vec<BigInt> = self.dens.iter().map(|d| d.at_power_of_two(k)).collect();
        self.numers
            .iter()
            .zip(&self.den_of)
            .map(|(n, d)| match d {
                None => BigInt::zero(),
                Some(b) => den_values
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i != b)
                    .fold(n.at_power_of_two(k), |acc, (_, dv)| acc * dv),
            })
            .collect()
    }
}
