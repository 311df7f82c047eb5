//! Brackets, quadratic forms and their joint covariants.
//!
//! A quadratic form is an invariant element `x^2 A + [2]_q xy B + y^2 C`
//! with `x = x_0`, `y = y_0` and right coefficients `A, B, C` free of
//! index 0. Because index 0 comes first in the normal order, the slots are
//! read off directly from the normal form.

use thiserror::Error;

use crate::pbw::{Algebra, AlgebraError, Monomial, NCPolynomial};
use crate::qscalar::Scalar;
use crate::uq::is_invariant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("monomial {0} does not have degree 2 in x_0, y_0")]
    Shape(String),
    #[error("element is not invariant")]
    NotInvariant,
    #[error("f_ij needs 0 < i < j, got ({0}, {1})")]
    BadPair(usize, usize),
    #[error("coefficient extraction needs index 0 first in the normal order")]
    IndexZeroNotFirst,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How the `xy` coefficient of a Jacobian is stored in the `B` slot.
///
/// The Jacobian is printed as `x^2 K + xy L + y^2 M`, without the `[2]_q`
/// that quadratic forms carry in the middle term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MiddleConvention {
    /// `B = L / [2]_q`, so `realize` reproduces `x^2 K + xy L + y^2 M`.
    #[default]
    QNumber,
    /// `B = L`; kept only as a regression witness.
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: NCPolynomial,
    pub b: NCPolynomial,
    pub c: NCPolynomial,
}

/// `(ij) = q^{-1/2} x_i y_j - q^{1/2} y_i x_j`.
pub fn bracket(alg: &Algebra, i: usize, j: usize) -> Result<NCPolynomial, AlgebraError> {
    let (i, j) = (alg.check_index(i)?, alg.check_index(j)?);
    let xy = alg.multiply(&alg.x(i), &alg.y(j));
    let yx = alg.multiply(&alg.y(i), &alg.x(j));
    Ok(xy
        .scale(&Scalar::q_half_pow(-1))
        .sub(&yx.scale(&Scalar::q_half_pow(1))))
}

fn strip_index_zero(m: &Monomial) -> Monomial {
    let mut pairs: Vec<(u16, u16)> = (0..m.num_indices()).map(|i| (m.x_exp(i), m.y_exp(i))).collect();
    pairs[0] = (0, 0);
    Monomial::from_pairs(&pairs)
}

/// Splits a degree-2-in-index-0 element into its `x^2`, `xy`, `y^2` parts
/// with index 0 removed.
fn read_slots(p: &NCPolynomial) -> Result<[NCPolynomial; 3], FormError> {
    let mut slots = [NCPolynomial::zero(), NCPolynomial::zero(), NCPolynomial::zero()];
    for (m, c) in p.terms() {
        let slot = match (m.x_exp(0), m.y_exp(0)) {
            (2, 0) => 0,
            (1, 1) => 1,
            (0, 2) => 2,
            _ => return Err(FormError::Shape(m.to_string())),
        };
        slots[slot].add_term(strip_index_zero(m), c);
    }
    Ok(slots)
}

impl QuadraticForm {
    /// `x^2 A + [2]_q xy B + y^2 C` as an element of `alg`.
    pub fn realize(&self, alg: &Algebra) -> NCPolynomial {
        let x2 = alg.multiply(&alg.x(0), &alg.x(0));
        let xy = alg.multiply(&alg.x(0), &alg.y(0)).scale(&Scalar::q_two());
        let y2 = alg.multiply(&alg.y(0), &alg.y(0));
        alg.multiply(&x2, &self.a)
            .add(&alg.multiply(&xy, &self.b))
            .add(&alg.multiply(&y2, &self.c))
    }

    pub fn coefficients(&self) -> [&NCPolynomial; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
        }
    }

    /// `Some(s)` when `self == s * other` slot by slot.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let pairs = [(&self.a, &other.a), (&self.b, &other.b), (&self.c, &other.c)];
        let (num, den) = pairs.iter().find(|(_, o)| !o.is_zero())?;
        let s = num.ratio_to(den)?;
        pairs
            .iter()
            .all(|(x, o)| **x == o.scale(&s))
            .then_some(s)
    }
}

/// Reads the unique right coefficients of an invariant quadratic element.
pub fn extract_quadratic_form(alg: &Algebra, p: &NCPolynomial) -> Result<QuadraticForm, FormError> {
    if alg.order().first() != Some(&0) {
        return Err(FormError::IndexZeroNotFirst);
    }
    let [a, b2, c] = read_slots(p)?;
    if !is_invariant(alg, p) {
        return Err(FormError::NotInvariant);
    }
    let inv_two = Scalar::q_two().inv().expect("[2]_q is nonzero");
    Ok(QuadraticForm {
        a,
        b: b2.scale(&inv_two),
        c,
    })
}

/// `f_ij = q (0i)(0j)` for `0 < i < j`.
pub fn make_f(alg: &Algebra, i: usize, j: usize) -> Result<QuadraticForm, FormError> {
    if i == 0 || i >= j {
        return Err(FormError::BadPair(i, j));
    }
    let p = alg
        .multiply(&bracket(alg, 0, i)?, &bracket(alg, 0, j)?)
        .scale(&Scalar::q_pow(1));
    extract_quadratic_form(alg, &p)
}

/// The q-Jacobian of two forms:
///
/// ```text
/// K = -q^7 B A' + q^9 A B'
/// L = -q^7 C A' - q^6 B B' + q^10 B B' + q^7 A C'
/// M = -q^7 C B' + q^9 B C'
/// ```
pub fn jacobian(alg: &Algebra, f: &QuadraticForm, g: &QuadraticForm) -> QuadraticForm {
    jacobian_with(alg, f, g, MiddleConvention::QNumber)
}

pub fn jacobian_with(
    alg: &Algebra,
    f: &QuadraticForm,
    g: &QuadraticForm,
    convention: MiddleConvention,
) -> QuadraticForm {
    let q = Scalar::q_pow;
    let mul = |a: &NCPolynomial, b: &NCPolynomial| alg.multiply(a, b);
    let k = mul(&f.b, &g.a)
        .scale(&-q(7))
        .add(&mul(&f.a, &g.b).scale(&q(9)));
    let l = mul(&f.c, &g.a)
        .scale(&-q(7))
        .add(&mul(&f.b, &g.b).scale(&(q(10) - q(6))))
        .add(&mul(&f.a, &g.c).scale(&q(7)));
    let m = mul(&f.c, &g.b)
        .scale(&-q(7))
        .add(&mul(&f.b, &g.c).scale(&q(9)));
    let b = match convention {
        MiddleConvention::QNumber => l.scale(&Scalar::q_two().inv().expect("nonzero")),
        MiddleConvention::Raw => l,
    };
    QuadraticForm { a: k, b, c: m }
}

/// `(slot of f, slot of g, slot of h, coefficient)` for the combinant, with
/// slots `A = 0, B = 1, C = 2`. `bbb` is the coefficient of `B B' B''`.
pub(crate) fn combinant_terms(bbb: Scalar) -> [(usize, usize, usize, Scalar); 7] {
    let v = Scalar::q_half_pow;
    [
        (0, 1, 2, v(-5)),
        (0, 2, 1, -v(-9)),
        (1, 0, 2, -v(-9)),
        (1, 2, 0, v(-9)),
        (2, 0, 1, v(-9)),
        (2, 1, 0, -v(-13)),
        (1, 1, 1, bbb),
    ]
}

/// Coefficient of `B B' B''` that makes the combinant invariant:
/// `-(q^{-3/2} - q^{-11/2})`.
pub fn combinant_bbb() -> Scalar {
    Scalar::q_half_pow(-11) - Scalar::q_half_pow(-3)
}

/// The combinant of three forms (right coefficients, primes on `g`, `h`):
///
/// ```text
///   q^{-5/2} A B' C'' - q^{-9/2} A C' B'' - q^{-9/2} B A' C''
/// + q^{-9/2} B C' A'' + q^{-9/2} C A' B'' - q^{-13/2} C B' A''
/// - (q^{-3/2} - q^{-11/2}) B B' B''
/// ```
///
/// The `B B' B''` weight `-(q^{-7/2} - q^{-15/2})` also circulates; it
/// breaks invariance and is available through [`combinant_with_bbb`] only
/// as a regression witness.
pub fn combinant(alg: &Algebra, f: &QuadraticForm, g: &QuadraticForm, h: &QuadraticForm) -> NCPolynomial {
    combinant_with_bbb(alg, f, g, h, combinant_bbb())
}

pub fn combinant_with_bbb(
    alg: &Algebra,
    f: &QuadraticForm,
    g: &QuadraticForm,
    h: &QuadraticForm,
    bbb: Scalar,
) -> NCPolynomial {
    let (f, g, h) = (f.coefficients(), g.coefficients(), h.coefficients());
    combinant_terms(bbb)
        .iter()
        .fold(NCPolynomial::zero(), |acc, (s0, s1, s2, c)| {
            let p = alg.multiply(&alg.multiply(f[*s0], g[*s1]), h[*s2]);
            acc.add(&p.scale(c))
        })
}

/// Left coefficients: `realize(f) = A_L x^2 + [2]_q B_L xy + C_L y^2`.
///
/// Computed by renormalizing `realize(f)` with index 0 moved to the end of
/// the normal order and reading the slots there.
pub fn left_coefficients(alg: &Algebra, f: &QuadraticForm) -> Result<QuadraticForm, FormError> {
    if alg.order().first() != Some(&0) {
        return Err(FormError::IndexZeroNotFirst);
    }
    let mut order: Vec<u8> = alg.order()[1..].to_vec();
    order.push(0);
    let last = Algebra::with_order(order)?;
    let moved = last.transport(&f.realize(alg), alg);
    let [a, b2, c] = read_slots(&moved)?;
    let inv_two = Scalar::q_two().inv().expect("[2]_q is nonzero");
    Ok(QuadraticForm {
        a,
        b: b2.scale(&inv_two),
        c,
    })
}
