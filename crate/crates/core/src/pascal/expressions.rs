//! Combinants of the three opposite-side Jacobians of a hexagon.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{Hexagon, SolverError};
use crate::covariants::{combinant, combinant_bbb, combinant_terms, jacobian_with, make_f, MiddleConvention, QuadraticForm};
use crate::pbw::{Algebra, Monomial, NCPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The twelve signed expressions of the identity hexagon.
    Paper12,
    /// All 3! orderings times 2^3 argument swaps.
    Full48,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper12 => "paper12",
            Mode::Full48 => "full48",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = SolverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper12" => Ok(Mode::Paper12),
            "full48" => Ok(Mode::Full48),
            other => Err(SolverError::BadMode(other.to_string())),
        }
    }
}

/// One side pair `(f_s, f_t)` with its Jacobian in both argument orders.
#[derive(Debug, Clone)]
pub struct SidePair {
    pub first: (u8, u8),
    pub second: (u8, u8),
    pub forward: QuadraticForm,
    pub swapped: QuadraticForm,
}

impl SidePair {
    pub fn label(&self, swapped: bool) -> String {
        let f = |(a, b): (u8, u8)| format!("f{a}{b}");
        if swapped {
            format!("J({},{})", f(self.second), f(self.first))
        } else {
            format!("J({},{})", f(self.first), f(self.second))
        }
    }

    pub fn jacobian(&self, swapped: bool) -> &QuadraticForm {
        if swapped {
            &self.swapped
        } else {
            &self.forward
        }
    }
}

/// Side forms paired with their opposite sides: `(s_1, s_4)`, `(s_2, s_5)`, `(s_3, s_6)`.
pub fn side_forms(alg: &Algebra, h: &Hexagon) -> Result<[(QuadraticForm, QuadraticForm); 3], SolverError> {
    let mut out = Vec::with_capacity(3);
    for (s, t) in h.opposite_pairs() {
        out.push((
            make_f(alg, s.0 as usize, s.1 as usize)?,
            make_f(alg, t.0 as usize, t.1 as usize)?,
        ));
    }
    Ok(out.try_into().expect("three pairs"))
}

pub fn side_pairs(alg: &Algebra, h: &Hexagon, convention: MiddleConvention) -> Result<[SidePair; 3], SolverError> {
    let forms = side_forms(alg, h)?;
    let pairs = h.opposite_pairs();
    Ok(std::array::from_fn(|k| {
        let (f, g) = &forms[k];
        SidePair {
            first: pairs[k].0,
            second: pairs[k].1,
            forward: jacobian_with(alg, f, g, convention),
            swapped: jacobian_with(alg, g, f, convention),
        }
    }))
}

/// A signed combinant `sign * C(J_a, J_b, J_c)`.
#[derive(Debug, Clone)]
pub struct Expression {
    pub label: String,
    pub sign: i8,
    /// Which side pair sits in each argument slot (0-based).
    pub order: [usize; 3],
    /// Whether side pair `k`'s Jacobian has its arguments swapped.
    pub swapped: [bool; 3],
    pub poly: NCPolynomial,
}

#[derive(Debug, Clone)]
pub struct ExpressionSet {
    pub hexagon: Hexagon,
    pub mode: Mode,
    pub expressions: Vec<Expression>,
}

impl ExpressionSet {
    pub fn len(&self) -> usize {
        self.expressions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expressions.is_empty()
    }
}

/// Argument orders in the sequence used by the twelve-term combination.
pub const ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

/// Builds the combinants for a hexagon.
///
/// `Paper12` is defined only for the identity hexagon: the six orderings
/// with signs `+,+,+,-,-,-`, then the same six with the third Jacobian's
/// arguments swapped and signs `-,-,-,+,+,+`.
pub fn build_expressions(
    alg: &Algebra,
    h: &Hexagon,
    mode: Mode,
    convention: MiddleConvention,
) -> Result<ExpressionSet, SolverError> {
    if mode == Mode::Paper12 && *h != Hexagon::identity() {
        return Err(SolverError::Paper12NeedsIdentity(h.to_string()));
    }
    let pairs = side_pairs(alg, h, convention)?;
    Ok(expressions_from_pairs(alg, h, &pairs, mode))
}

pub fn expressions_from_pairs(alg: &Algebra, h: &Hexagon, pairs: &[SidePair; 3], mode: Mode) -> ExpressionSet {
    let mut specs: Vec<([usize; 3], [bool; 3], i8)> = Vec::new();
    match mode {
        Mode::Paper12 => {
            for (swap3, signs) in [(false, [1, 1, 1, -1, -1, -1]), (true, [-1, -1, -1, 1, 1, 1])] {
                for (order, sign) in ORDERS.iter().zip(signs) {
                    specs.push((*order, [false, false, swap3], sign));
                }
            }
        }
        Mode::Full48 => {
            for order in ORDERS {
                for bits in 0..8u8 {
                    let swapped = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
                    specs.push((order, swapped, 1));
                }
            }
        }
    }
    let mut cache = CombinantCache::new(alg);
    let expressions = specs
        .into_iter()
        .map(|(order, swapped, sign)| {
            let args: Vec<&QuadraticForm> = order.iter().map(|&k| pairs[k].jacobian(swapped[k])).collect();
            let keys: Vec<(usize, bool)> = order.iter().map(|&k| (k, swapped[k])).collect();
            let mut poly = cache.combinant(&keys, &args);
            if sign < 0 {
                poly = poly.neg();
            }
            let label = format!(
                "C({})",
                order
                    .iter()
                    .map(|&k| pairs[k].label(swapped[k]))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            Expression {
                label,
                sign,
                order,
                swapped,
                poly,
            }
        })
        .collect();
    ExpressionSet {
        hexagon: *h,
        mode,
        expressions,
    }
}

type FormKey = (usize, bool);

/// Shares the pairwise coefficient products across the 48 combinants of a hexagon.
struct CombinantCache<'a> {
    alg: &'a Algebra,
    pairs: HashMap<(FormKey, usize, FormKey, usize), NCPolynomial>,
}

impl<'a> CombinantCache<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Self {
            alg,
            pairs: HashMap::new(),
        }
    }

    fn product(&mut self, k1: FormKey, s1: usize, f1: &QuadraticForm, k2: FormKey, s2: usize, f2: &QuadraticForm) -> NCPolynomial {
        let alg = self.alg;
        self.pairs
            .entry((k1, s1, k2, s2))
            .or_insert_with(|| alg.multiply(f1.coefficients()[s1], f2.coefficients()[s2]))
            .clone()
    }

    fn combinant(&mut self, keys: &[FormKey], args: &[&QuadraticForm]) -> NCPolynomial {
        let terms = combinant_terms(combinant_bbb());
        let mut acc = NCPolynomial::zero();
        for (s0, s1, s2, c) in terms {
            let head = self.product(keys[0], s0, args[0], keys[1], s1, args[1]);
            let full = self.alg.multiply(&head, args[2].coefficients()[s2]);
            acc = acc.add(&full.scale(&c));
        }
        acc
    }
}

/// Combinant via the reference implementation, for cross-checking the cache.
pub fn combinant_of(alg: &Algebra, args: [&QuadraticForm; 3]) -> NCPolynomial {
    combinant(alg, args[0], args[1], args[2])
}

/// The 141 monomials `x_1^{i_1} y_1^{2-i_1} ... x_6^{i_6} y_6^{2-i_6}` with
/// `0 <= i_k <= 2` and `i_1 + ... + i_6 = 6`, in lexicographic order of the
/// exponent tuple.
#[derive(Debug, Clone)]
pub struct BasisIndex {
    tuples: Vec<[u8; 6]>,
    monomials: Vec<Monomial>,
    rows: HashMap<Monomial, usize>,
}

impl BasisIndex {
    pub fn new(num_indices: usize) -> Self {
        assert!(num_indices >= 7, "the basis needs indices 0..=6");
        let mut tuples = Vec::new();
        for code in 0..729u32 {
            let mut t = [0u8; 6];
            let mut c = code;
            for slot in t.iter_mut().rev() {
                *slot = (c % 3) as u8;
                c /= 3;
            }
            if t.iter().map(|&e| e as u32).sum::<u32>() == 6 {
                tuples.push(t);
            }
        }
        let monomials: Vec<Monomial> = tuples
            .iter()
            .map(|t| {
                let mut pairs = vec![(0u16, 0u16); num_indices];
                for (k, &e) in t.iter().enumerate() {
                    pairs[k + 1] = (e as u16, 2 - e as u16);
                }
                Monomial::from_pairs(&pairs)
            })
            .collect();
        let rows = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        Self { tuples, monomials, rows }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn row_of(&self, m: &Monomial) -> Option<usize> {
        self.rows.get(m).copied()
    }

    pub fn monomial(&self, row: usize) -> &Monomial {
        &self.monomials[row]
    }

    pub fn tuple(&self, row: usize) -> [u8; 6] {
        self.tuples[row]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_has_141_entries() {
        let b = BasisIndex::new(7);
        assert_eq!(b.len(), 141);
        assert_eq!(b.tuple(0), [0, 0, 0, 2, 2, 2]);
        for row in 0..b.len() {
            let m = b.monomial(row);
            assert_eq!(m.x_count(), 6);
            assert_eq!(m.y_count(), 6);
            assert_eq!(b.row_of(m), Some(row));
        }
    }

    #[test]
    fn paper12_requires_identity() {
        let alg = Algebra::default();
        let h = Hexagon::new([1, 2, 3, 4, 6, 5]).unwrap();
        assert!(matches!(
            build_expressions(&alg, &h, Mode::Paper12, MiddleConvention::QNumber),
            Err(SolverError::Paper12NeedsIdentity(_))
        ));
    }
}
