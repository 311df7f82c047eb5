//! The coordinate algebra `H_I` on generators `x_i, y_i`, realized as a
//! rewriting system onto a PBW basis.
//!
//! For `i < j` the straightening rules are
//!
//! ```text
//! x_j x_i -> q^2 x_i x_j         y_j y_i -> q^2 y_i y_j
//! y_j x_i -> q x_i y_j           x_j y_i -> q y_i x_j + (q^2 - 1) x_i y_j
//! y_i x_i -> q^-1 x_i y_i
//! ```
//!
//! The default normal order lists indices ascending with `x_i` before `y_i`.
//! An [`Algebra`] may be built over any other ordering of the indices; pairs
//! whose order is reversed relative to the natural one use the inverted
//! rules. Both systems present the same algebra, so moving a polynomial
//! between orders with [`Algebra::transport`] never changes the element.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::qscalar::{LaurentPoly, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("index {index} is outside the index set 0..={max}")]
    ForeignIndex { index: usize, max: usize },
    #[error("index order must be a permutation of 0..={max}")]
    BadOrder { max: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    X,
    Y,
}

/// A generator `x_i` or `y_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub index: u8,
    pub kind: Kind,
}

impl Generator {
    pub fn x(index: u8) -> Self {
        Self { index, kind: Kind::X }
    }

    pub fn y(index: u8) -> Self {
        Self { index, kind: Kind::Y }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::X => write!(f, "x_{}", self.index),
            Kind::Y => write!(f, "y_{}", self.index),
        }
    }
}

/// A PBW basis element: for each index `i`, the exponents of `x_i` and `y_i`.
///
/// Storage is `[a_0, b_0, a_1, b_1, ...]`; the word it stands for depends on
/// the normal order of the owning [`Algebra`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(num_indices: usize) -> Self {
        Self {
            exps: vec![0; 2 * num_indices].into_boxed_slice(),
        }
    }

    /// Monomial from `(x exponent, y exponent)` per index.
    pub fn from_pairs(pairs: &[(u16, u16)]) -> Self {
        Self {
            exps: pairs.iter().flat_map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn num_indices(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn x_exp(&self, index: usize) -> u16 {
        self.exps[2 * index]
    }

    pub fn y_exp(&self, index: usize) -> u16 {
        self.exps[2 * index + 1]
    }

    pub fn exp(&self, g: Generator) -> u16 {
        self.exps[2 * g.index as usize + (g.kind == Kind::Y) as usize]
    }

    /// Degree in `x_i, y_i` together.
    pub fn index_degree(&self, index: usize) -> u32 {
        self.x_exp(index) as u32 + self.y_exp(index) as u32
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn x_count(&self) -> u32 {
        self.exps.iter().step_by(2).map(|&e| e as u32).sum()
    }

    pub fn y_count(&self) -> u32 {
        self.exps.iter().skip(1).step_by(2).map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn bumped(&self, g: Generator, up: bool) -> Self {
        let mut exps = self.exps.clone();
        let slot = &mut exps[2 * g.index as usize + (g.kind == Kind::Y) as usize];
        *slot = if up {
            slot.checked_add(1).expect("exponent overflow")
        } else {
            *slot - 1
        };
        Self { exps }
    }

    /// The word in ascending index order.
    pub fn standard_word(&self) -> Vec<Generator> {
        word_in_order(self, (0..self.num_indices() as u8).collect::<Vec<_>>().as_slice())
    }
}

fn word_in_order(m: &Monomial, order: &[u8]) -> Vec<Generator> {
    let mut word = Vec::with_capacity(m.degree() as usize);
    for &i in order {
        for _ in 0..m.x_exp(i as usize) {
            word.push(Generator::x(i));
        }
        for _ in 0..m.y_exp(i as usize) {
            word.push(Generator::y(i));
        }
    }
    word
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..self.num_indices() {
            for (e, name) in [(self.x_exp(i), "x"), (self.y_exp(i), "y")] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}_{i}")),
                    _ => parts.push(format!("{name}_{i}^{e}")),
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A finite linear combination of PBW monomials with [`Scalar`] coefficients.
/// Zero coefficients are never stored, so structural equality is equality
/// in the algebra.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar, num_indices: usize) -> Self {
        Self::term(Monomial::one(num_indices), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c * s)
    }

    fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter_terms(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates every coefficient at `v = v0`.
    pub fn specialize(&self, v0: &num_rational::BigRational) -> Result<Self, ScalarError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &Scalar::from_rational(c.evaluate(v0)?));
        }
        Ok(out)
    }

    /// `Some(c)` when `self == c * other` for a scalar `c`; `other` nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let (m, c0) = other.terms.iter().next()?;
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let ratio = &self.coeff(m) / c0;
        if ratio.is_zero() {
            return None;
        }
        other
            .terms
            .iter()
            .all(|(m, c)| self.terms.get(m).is_some_and(|s| *s == c * &ratio))
            .then_some(ratio)
    }

    /// Every monomial degree, per index.
    pub fn max_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(|m| (0..m.num_indices()).filter(move |&i| m.index_degree(i) > 0))
            .max()
    }

    /// Writes every coefficient over the lcm of the denominators.
    fn over_common_denominator(&self) -> (Vec<(&Monomial, LaurentPoly)>, LaurentPoly) {
        let mut den = LaurentPoly::one();
        for c in self.terms.values() {
            if !c.denom().is_one() && c.denom() != &den {
                let g = den.gcd(c.denom());
                den = &den * &c.denom().div_exact(&g).expect("gcd divides");
            }
        }
        let nums = self
            .terms
            .iter()
            .map(|(m, c)| {
                let num = if c.denom() == &den {
                    c.numer().clone()
                } else {
                    c.numer() * &den.div_exact(c.denom()).expect("lcm is a multiple")
                };
                (m, num)
            })
            .collect();
        (nums, den)
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPolynomial({self})")
    }
}

type Expansion = Arc<Vec<(Monomial, LaurentPoly)>>;

/// The algebra `H_I` for the index set `{0, ..., max_index}` and a chosen
/// normal order. Products are memoized; the cache is internal and shared
/// safely across threads.
pub struct Algebra {
    order: Vec<u8>,
    rank: Vec<u8>,
    gen_cache: RwLock<HashMap<(Monomial, Generator), Expansion>>,
    mono_cache: RwLock<HashMap<(Monomial, Monomial), Expansion>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("order", &self.order).finish()
    }
}

impl Default for Algebra {
    /// Indices `0..=6`, ascending order.
    fn default() -> Self {
        Self::new(6)
    }
}

impl Algebra {
    /// Index set `{0, ..., max_index}` in ascending normal order.
    pub fn new(max_index: u8) -> Self {
        Self::with_order((0..=max_index).collect()).expect("ascending order is valid")
    }

    /// Index set `{0, ..., n-1}` with normal order `order` (a permutation).
    pub fn with_order(order: Vec<u8>) -> Result<Self, AlgebraError> {
        let n = order.len();
        let mut rank = vec![u8::MAX; n];
        for (pos, &i) in order.iter().enumerate() {
            if (i as usize) >= n || rank[i as usize] != u8::MAX {
                return Err(AlgebraError::BadOrder { max: n.saturating_sub(1) });
            }
            rank[i as usize] = pos as u8;
        }
        Ok(Self {
            order,
            rank,
            gen_cache: RwLock::default(),
            mono_cache: RwLock::default(),
        })
    }

    pub fn num_indices(&self) -> usize {
        self.order.len()
    }

    pub fn max_index(&self) -> u8 {
        (self.order.len() - 1) as u8
    }

    /// The normal order of indices.
    pub fn order(&self) -> &[u8] {
        &self.order
    }

    pub fn check_index(&self, index: usize) -> Result<u8, AlgebraError> {
        if index < self.num_indices() {
            Ok(index as u8)
        } else {
            Err(AlgebraError::ForeignIndex {
                index,
                max: self.num_indices() - 1,
            })
        }
    }

    pub fn generator(&self, kind: Kind, index: usize) -> Result<Generator, AlgebraError> {
        Ok(Generator {
            index: self.check_index(index)?,
            kind,
        })
    }

    pub fn one(&self) -> NCPolynomial {
        self.constant(Scalar::one())
    }

    pub fn constant(&self, c: Scalar) -> NCPolynomial {
        NCPolynomial::constant(c, self.num_indices())
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::one(self.num_indices())
    }

    /// The generator as a polynomial. Panics on a foreign index; use
    /// [`Algebra::generator`] for a checked path.
    pub fn gen_poly(&self, g: Generator) -> NCPolynomial {
        self.check_index(g.index as usize).expect("generator index in range");
        NCPolynomial::term(self.unit_monomial().bumped(g, true), Scalar::one())
    }

    pub fn x(&self, index: u8) -> NCPolynomial {
        self.gen_poly(Generator::x(index))
    }

    pub fn y(&self, index: u8) -> NCPolynomial {
        self.gen_poly(Generator::y(index))
    }

    /// The word a monomial stands for in this algebra's normal order.
    pub fn word(&self, m: &Monomial) -> Vec<Generator> {
        word_in_order(m, &self.order)
    }

    fn key(&self, g: Generator) -> (u8, Kind) {
        (self.rank[g.index as usize], g.kind)
    }

    fn last_generator(&self, m: &Monomial) -> Option<Generator> {
        self.order.iter().rev().find_map(|&i| {
            if m.y_exp(i as usize) > 0 {
                Some(Generator::y(i))
            } else if m.x_exp(i as usize) > 0 {
                Some(Generator::x(i))
            } else {
                None
            }
        })
    }

    /// Rewrites an out-of-order pair `w g` (with `w` after `g` in the normal
    /// order) into normal two-letter words `c * u v`.
    fn straighten(&self, w: Generator, g: Generator) -> Vec<(LaurentPoly, Generator, Generator)> {
        use Kind::{X, Y};
        let q = |k: i32| LaurentPoly::v_pow(2 * k);
        if w.index == g.index {
            debug_assert!(w.kind == Y && g.kind == X);
            return vec![(q(-1), g, w)];
        }
        let (i, j) = (g.index, w.index);
        if j > i {
            // Natural rules: w = z_j, g = z_i with i < j.
            match (w.kind, g.kind) {
                (X, X) => vec![(q(2), g, w)],
                (Y, Y) => vec![(q(2), g, w)],
                (Y, X) => vec![(q(1), g, w)],
                (X, Y) => vec![
                    (q(1), g, w),
                    (&q(2) - &q(0), Generator::x(i), Generator::y(j)),
                ],
            }
        } else {
            // Inverted rules: w = z_j, g = z_i with j < i, index i ordered first.
            match (w.kind, g.kind) {
                (X, X) => vec![(q(-2), g, w)],
                (Y, Y) => vec![(q(-2), g, w)],
                (X, Y) => vec![(q(-1), g, w)],
                (Y, X) => vec![
                    (q(-1), g, w),
                    (&q(-2) - &q(0), Generator::y(i), Generator::x(j)),
                ],
            }
        }
    }

    /// Normal form of `m * g` for a normal monomial `m`.
    fn mul_gen(&self, m: &Monomial, g: Generator) -> Expansion {
        let key = (m.clone(), g);
        if let Some(hit) = self.gen_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let result = match self.last_generator(m) {
            Some(w) if self.key(w) > self.key(g) => {
                let prefix = m.bumped(w, false);
                let mut acc: HashMap<Monomial, LaurentPoly> = HashMap::new();
                for (c, u, v) in self.straighten(w, g) {
                    for (n1, c1) in self.mul_gen(&prefix, u).iter() {
                        let c01 = &c * c1;
                        for (n2, c2) in self.mul_gen(n1, v).iter() {
                            accumulate(&mut acc, n2, &c01 * c2);
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
            _ => vec![(m.bumped(g, true), LaurentPoly::one())],
        };
        let result = Arc::new(result);
        self.gen_cache.write().unwrap().insert(key, result.clone());
        result
    }

    /// Normal form of the product of two normal monomials.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Expansion {
        if b.is_one() {
            return Arc::new(vec![(a.clone(), LaurentPoly::one())]);
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.mono_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut cur: Vec<(Monomial, LaurentPoly)> = vec![(a.clone(), LaurentPoly::one())];
        for g in self.word(b) {
            let mut acc: HashMap<Monomial, LaurentPoly> = HashMap::new();
            for (m, c) in &cur {
                for (n, c2) in self.mul_gen(m, g).iter() {
                    accumulate(&mut acc, n, c * c2);
                }
            }
            cur = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let result = Arc::new(cur);
        self.mono_cache.write().unwrap().insert(key, result.clone());
        result
    }

    /// Normal form of `coefficient * word`.
    pub fn normal_form(&self, word: &[Generator], coefficient: Scalar) -> Result<NCPolynomial, AlgebraError> {
        for g in word {
            self.check_index(g.index as usize)?;
        }
        let mut cur: Vec<(Monomial, LaurentPoly)> = vec![(self.unit_monomial(), LaurentPoly::one())];
        for &g in word {
            let mut acc: HashMap<Monomial, LaurentPoly> = HashMap::new();
            for (m, c) in &cur {
                for (n, c2) in self.mul_gen(m, g).iter() {
                    accumulate(&mut acc, n, c * c2);
                }
            }
            cur = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(NCPolynomial::from_terms(
            cur.into_iter().map(|(m, c)| (m, coefficient.mul_laurent(&c))),
        ))
    }

    /// Product in the algebra. Coefficients are brought over a common
    /// denominator first so the inner loop runs on Laurent polynomials.
    pub fn multiply(&self, p: &NCPolynomial, r: &NCPolynomial) -> NCPolynomial {
        if p.is_zero() || r.is_zero() {
            return NCPolynomial::zero();
        }
        let (pn, pd) = p.over_common_denominator();
        let (rn, rd) = r.over_common_denominator();
        let mut acc: HashMap<Monomial, LaurentPoly> = HashMap::new();
        for (m1, c1) in &pn {
            for (m2, c2) in &rn {
                let c12 = c1 * c2;
                for (n, lam) in self.mul_monomials(m1, m2).iter() {
                    accumulate(&mut acc, n, &c12 * lam);
                }
            }
        }
        let den = &pd * &rd;
        NCPolynomial {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, Scalar::reduce(c, den.clone()).expect("nonzero denominator")))
                .collect(),
        }
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&NCPolynomial]) -> NCPolynomial {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f);
        }
        acc
    }

    pub fn pow(&self, p: &NCPolynomial, e: u32) -> NCPolynomial {
        (0..e).fold(self.one(), |acc, _| self.multiply(&acc, p))
    }

    /// The anti-linear anti-automorphism fixing every generator:
    /// words are reversed and coefficients conjugated by `v -> v^{-1}`.
    pub fn star(&self, p: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (m, c) in p.terms() {
            let mut word = self.word(m);
            word.reverse();
            let image = self
                .normal_form(&word, c.star_conjugate())
                .expect("indices already validated");
            out = out.add(&image);
        }
        out
    }

    /// Re-expresses a polynomial of `from` (same index set, any order) in
    /// this algebra's normal order.
    pub fn transport(&self, p: &NCPolynomial, from: &Algebra) -> NCPolynomial {
        assert_eq!(self.num_indices(), from.num_indices(), "index sets differ");
        if self.order == from.order {
            return p.clone();
        }
        let mut out = NCPolynomial::zero();
        for (m, c) in p.terms() {
            let image = self
                .normal_form(&from.word(m), c.clone())
                .expect("same index set");
            out = out.add(&image);
        }
        out
    }

    /// Checks that every monomial fits this algebra's index set.
    pub fn owns(&self, p: &NCPolynomial) -> bool {
        p.terms().all(|(m, _)| m.num_indices() == self.num_indices())
    }
}

fn accumulate(acc: &mut HashMap<Monomial, LaurentPoly>, m: &Monomial, c: LaurentPoly) {
    match acc.get_mut(m) {
        Some(old) => *old = &*old + &c,
        None => {
            acc.insert(m.clone(), c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Algebra {
        Algebra::new(3)
    }

    fn word(spec: &[(Kind, u8)]) -> Vec<Generator> {
        spec.iter().map(|&(kind, index)| Generator { index, kind }).collect()
    }

    #[test]
    fn straightening_rules() {
        use Kind::{X, Y};
        let a = alg();
        let q = |k| Scalar::q_pow(k);
        let x2x1 = a.normal_form(&word(&[(X, 2), (X, 1)]), Scalar::one()).unwrap();
        assert_eq!(x2x1, a.multiply(&a.x(1), &a.x(2)).scale(&q(2)));

        let x2y1 = a.normal_form(&word(&[(X, 2), (Y, 1)]), Scalar::one()).unwrap();
        let expected = a
            .multiply(&a.y(1), &a.x(2))
            .scale(&q(1))
            .add(&a.multiply(&a.x(1), &a.y(2)).scale(&(q(2) - Scalar::one())));
        assert_eq!(x2y1, expected);

        let y1x1 = a.multiply(&a.y(1), &a.x(1));
        assert_eq!(y1x1, a.multiply(&a.x(1), &a.y(1)).scale(&q(-1)));
    }

    #[test]
    fn same_index_relation_round_trip() {
        use Kind::{X, Y};
        let a = alg();
        // x_1 y_1 x_1 = x_1 (q^-1 x_1 y_1) = q^-1 x_1^2 y_1
        let p = a.normal_form(&word(&[(X, 1), (Y, 1), (X, 1)]), Scalar::one()).unwrap();
        let m = Monomial::from_pairs(&[(0, 0), (2, 1), (0, 0), (0, 0)]);
        assert_eq!(p, NCPolynomial::term(m, Scalar::q_pow(-1)));
    }

    #[test]
    fn unit_and_normal_monomials() {
        let a = alg();
        let xy = a.multiply(&a.x(1), &a.y(1));
        assert_eq!(xy.len(), 1);
        assert_eq!(xy.coeff(&Monomial::from_pairs(&[(0, 0), (1, 1), (0, 0), (0, 0)])), Scalar::one());
        assert_eq!(a.multiply(&a.one(), &xy), xy);
        assert_eq!(a.multiply(&xy, &a.one()), xy);
    }

    #[test]
    fn foreign_index_rejected() {
        let a = alg();
        assert!(matches!(
            a.generator(Kind::X, 4),
            Err(AlgebraError::ForeignIndex { index: 4, max: 3 })
        ));
        assert!(a.normal_form(&[Generator::y(9)], Scalar::one()).is_err());
        assert!(Algebra::with_order(vec![0, 2, 2]).is_err());
    }

    #[test]
    fn star_examples() {
        let a = alg();
        let xy = a.multiply(&a.x(1), &a.y(1));
        assert_eq!(a.star(&xy), xy.scale(&Scalar::q_pow(-1)));
        let c = a.constant(Scalar::q_half_pow(3));
        assert_eq!(a.star(&c), a.constant(Scalar::q_half_pow(-3)));
    }

    #[test]
    fn transport_preserves_element() {
        let std = alg();
        let rev = Algebra::with_order(vec![1, 2, 3, 0]).unwrap();
        let p = std.multiply(&std.y(0), &std.x(2));
        let moved = rev.transport(&p, &std);
        assert_eq!(std.transport(&moved, &rev), p);
    }

    #[test]
    fn ratio_detection() {
        let a = alg();
        let p = a.x(1).add(&a.y(2).scale(&Scalar::q_pow(3)));
        let r = p.scale(&Scalar::q_two());
        assert_eq!(r.ratio_to(&p), Some(Scalar::q_two()));
        assert_eq!(r.add(&a.x(3)).ratio_to(&p), None);
    }
}
