//! The action of `U_q(sl(2))` on `H_I`.
//!
//! On generators: `K x_i = q^{-1/2} x_i`, `K y_i = q^{1/2} y_i`,
//! `E x_i = q^{1/2} y_i`, `E y_i = 0`, `F x_i = 0`, `F y_i = q^{-1/2} x_i`,
//! and `K 1 = 1`, `E 1 = F 1 = 0`. `K` is multiplicative; `E` and `F` obey
//! the twisted Leibniz rules
//!
//! ```text
//! E(ab) = E(a) K(b) + K^{-1}(a) E(b)
//! F(ab) = F(a) K(b) + K^{-1}(a) F(b)
//! ```
//!
//! The algebra `U_q` itself carries the involution `E* = F`, `K* = K^{-1}`;
//! no compatibility law between that involution and [`Algebra::star`] is
//! asserted here.

use std::fmt;

use crate::pbw::{Algebra, Generator, Kind, Monomial, NCPolynomial};
use crate::qscalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionOperator {
    E,
    F,
    K,
    KInv,
}

impl fmt::Display for ActionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::E => "E",
            Self::F => "F",
            Self::K => "K",
            Self::KInv => "K^-1",
        })
    }
}

/// `K` acts on a PBW monomial by `v^{#y - #x}`.
fn k_weight(m: &Monomial) -> i32 {
    m.y_count() as i32 - m.x_count() as i32
}

fn monomial_of(num_indices: usize, word: &[Generator]) -> Monomial {
    let mut pairs = vec![(0u16, 0u16); num_indices];
    for g in word {
        let slot = &mut pairs[g.index as usize];
        match g.kind {
            Kind::X => slot.0 += 1,
            Kind::Y => slot.1 += 1,
        }
    }
    Monomial::from_pairs(&pairs)
}

fn word_weight(word: &[Generator]) -> i32 {
    word.iter()
        .map(|g| match g.kind {
            Kind::X => -1,
            Kind::Y => 1,
        })
        .sum()
}

/// `E` or `F` on a normal word, by splitting it in half and applying the
/// twisted Leibniz rule to the halves. Halves of a normal word are normal.
fn raise_lower(alg: &Algebra, op: ActionOperator, word: &[Generator]) -> NCPolynomial {
    match word {
        [] => NCPolynomial::zero(),
        [g] => match (op, g.kind) {
            (ActionOperator::E, Kind::X) => alg.y(g.index).scale(&Scalar::q_half_pow(1)),
            (ActionOperator::F, Kind::Y) => alg.x(g.index).scale(&Scalar::q_half_pow(-1)),
            _ => NCPolynomial::zero(),
        },
        _ => {
            let (a, b) = word.split_at(word.len() / 2);
            let n = alg.num_indices();
            let ma = NCPolynomial::term(monomial_of(n, a), Scalar::q_half_pow(-word_weight(a)));
            let mb = NCPolynomial::term(monomial_of(n, b), Scalar::q_half_pow(word_weight(b)));
            let left = alg.multiply(&raise_lower(alg, op, a), &mb);
            let right = alg.multiply(&ma, &raise_lower(alg, op, b));
            left.add(&right)
        }
    }
}

/// Applies an operator of `U_q(sl(2))` to an element of `H_I`.
pub fn apply(alg: &Algebra, op: ActionOperator, p: &NCPolynomial) -> NCPolynomial {
    match op {
        ActionOperator::K | ActionOperator::KInv => {
            let sign = if op == ActionOperator::K { 1 } else { -1 };
            NCPolynomial::from_terms(
                p.terms()
                    .map(|(m, c)| (m.clone(), c * &Scalar::q_half_pow(sign * k_weight(m)))),
            )
        }
        ActionOperator::E | ActionOperator::F => {
            let mut out = NCPolynomial::zero();
            for (m, c) in p.terms() {
                out = out.add(&raise_lower(alg, op, &alg.word(m)).scale(c));
            }
            out
        }
    }
}

/// `E p = F p = 0` and `K p = p`.
pub fn is_invariant(alg: &Algebra, p: &NCPolynomial) -> bool {
    p.terms().all(|(m, _)| k_weight(m) == 0)
        && apply(alg, ActionOperator::E, p).is_zero()
        && apply(alg, ActionOperator::F, p).is_zero()
}
