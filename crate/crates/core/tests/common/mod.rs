//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use qpascal_core::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Word = Vec<Generator>;

fn key(g: &Generator) -> (u8, u8) {
    (g.index, if g.kind == Kind::X { 0 } else { 1 })
}

/// One straightening step on the adjacent descent `(b, a)`, written
/// directly from the defining relations.
fn rewrite_pair(b: Generator, a: Generator) -> Vec<(Scalar, Word)> {
    let q = Scalar::q_pow;
    let (i, j) = (a.index, b.index);
    match (b.kind, a.kind) {
        (Kind::Y, Kind::X) if i == j => vec![(q(-1), vec![a, b])],
        (Kind::X, Kind::X) => vec![(q(2), vec![a, b])],
        (Kind::Y, Kind::Y) => vec![(q(2), vec![a, b])],
        (Kind::Y, Kind::X) => vec![(q(1), vec![a, b])],
        (Kind::X, Kind::Y) => vec![
            (q(1), vec![a, b]),
            (q(2) - Scalar::one(), vec![Generator::x(i), Generator::y(j)]),
        ],
    }
}

/// Rewrites until every word is ordered, choosing the leftmost or the
/// rightmost descent at each step.
pub fn rewrite_oracle(word: Word, leftmost: bool) -> BTreeMap<Word, Scalar> {
    let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
    let mut todo = vec![(Scalar::one(), word)];
    while let Some((c, w)) = todo.pop() {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&k| key(&w[k]) > key(&w[k + 1])).collect();
        let pos = if leftmost { descents.first() } else { descents.last() };
        match pos {
            None => {
                let e = done.entry(w).or_insert_with(Scalar::zero);
                *e = &*e + &c;
            }
            Some(&k) => {
                for (s, mid) in rewrite_pair(w[k], w[k + 1]) {
                    let mut nw = w[..k].to_vec();
                    nw.extend(mid);
                    nw.extend_from_slice(&w[k + 2..]);
                    todo.push((&c * &s, nw));
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

pub fn as_words(alg: &Algebra, p: &NCPolynomial) -> BTreeMap<Word, Scalar> {
    p.terms().map(|(m, c)| (alg.word(m), c.clone())).collect()
}

/// Sum of up to three random words of length `len` over indices
/// `1..=max_index`, with coefficients `c q^(e/2)`.
pub fn random_poly(alg: &Algebra, rng: &mut ChaCha8Rng, len: usize, max_index: u8) -> NCPolynomial {
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(NCPolynomial::zero(), |acc, _| {
        let word: Vec<Generator> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=max_index);
                if rng.gen_bool(0.5) {
                    Generator::x(i)
                } else {
                    Generator::y(i)
                }
            })
            .collect();
        let coeff = Scalar::q_half_pow(rng.gen_range(-2..=2)) * Scalar::from_int(rng.gen_range(1..=3));
        acc.add(&alg.normal_form(&word, coeff).unwrap())
    })
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=20).into())
}

/// `Some(r)` with `b = r a` when the two polynomials are proportional,
/// found by comparing coefficient ratios monomial by monomial.
pub fn proportionality(a: &NCPolynomial, b: &NCPolynomial) -> Option<Scalar> {
    let am: BTreeMap<_, _> = a.terms().collect();
    let bm: BTreeMap<_, _> = b.terms().collect();
    if am.len() != bm.len() || am.is_empty() || am.keys().ne(bm.keys()) {
        return None;
    }
    let mut ratio: Option<Scalar> = None;
    for (m, ca) in &am {
        let r = bm[m] / *ca;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => return None,
            Some(_) => {}
        }
    }
    ratio
}
