//! Exact rank and nullspace over Q(v).
//!
//! The primary route is fraction-free (Bareiss) elimination on the matrix
//! with row denominators cleared, so every intermediate entry is a
//! polynomial in `v` and every division is exact. If an intermediate entry
//! outgrows [`BareissConfig::max_span`], elimination restarts over the field
//! with reduced rational-function entries. Both routes are deterministic.

use serde::Serialize;

use super::certify::annihilates_all;
use super::modular::{independent_rows, reconstruct_nullspace};
use crate::qscalar::{LaurentPoly, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Scalar>>) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        Self::from_columns(keep.iter().map(|&c| self.column(c)).collect())
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// True when `M x = 0` exactly.
    pub fn annihilates(&self, x: &[Scalar]) -> bool {
        self.mul_vec(x).iter().all(Scalar::is_zero)
    }
}

impl std::fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ScalarMatrix({}x{})", self.rows, self.cols)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EliminationMethod {
    Bareiss,
    Field,
    /// Full column rank certified by a nonzero minor of a modular image.
    Modular,
    /// Basis rebuilt from prime-field images, then checked exactly.
    Interpolation,
}

#[derive(Debug, Clone, Copy)]
pub struct BareissConfig {
    /// Largest degree span an intermediate entry may reach before
    /// elimination falls back to field arithmetic.
    pub max_span: usize,
}

impl Default for BareissConfig {
    fn default() -> Self {
        Self { max_span: 4096 }
    }
}

/// Rank and nullspace basis of a matrix. Each basis vector has a 1 in its
/// own free column and 0 in the other free columns.
#[derive(Debug, Clone)]
pub struct SolutionFamily {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<Scalar>>,
    pub method: EliminationMethod,
}

impl SolutionFamily {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

pub fn solve_nullspace(m: &ScalarMatrix) -> SolutionFamily {
    solve_nullspace_with(m, &BareissConfig::default())
}

pub fn solve_nullspace_with(m: &ScalarMatrix, config: &BareissConfig) -> SolutionFamily {
    if let Some(family) = via_row_selection(m, config) {
        return family;
    }
    exact_nullspace(m, config)
}

fn exact_nullspace(m: &ScalarMatrix, config: &BareissConfig) -> SolutionFamily {
    match bareiss_nullspace(m, config.max_span) {
        Some(family) => family,
        None => field_nullspace(m),
    }
}

const SAMPLE_POINTS: [u64; 3] = [1_234_567_891_011, 982_451_653_771_129, 73_856_093_199_933];

/// Tall matrices: a modular image at a fixed point picks `r` independent
/// rows and the nullspace comes from those rows only, certified against the
/// whole matrix. A nonzero `r x r` minor at a point is nonzero over Q(v), so
/// the rank is at least `r`; a basis annihilating every row shows the
/// nullity is at least `cols - r`.
fn via_row_selection(m: &ScalarMatrix, config: &BareissConfig) -> Option<SolutionFamily> {
    if m.rows <= m.cols {
        return None;
    }
    for &point in &SAMPLE_POINTS {
        let Some(rows) = independent_rows(m, point) else { continue };
        let rank = rows.len();
        if rank == m.cols {
            return Some(SolutionFamily {
                rows: m.rows,
                cols: m.cols,
                rank,
                pivots: (0..m.cols).collect(),
                free: Vec::new(),
                basis: Vec::new(),
                method: EliminationMethod::Modular,
            });
        }
        let certified = |basis: &[Vec<Scalar>]| annihilates_all(m, basis);
        if let Some((pivots, free, basis)) = reconstruct_nullspace(m, &rows, rank, certified) {
            return Some(SolutionFamily {
                rows: m.rows,
                cols: m.cols,
                rank,
                pivots,
                free,
                basis,
                method: EliminationMethod::Interpolation,
            });
        }
        let sub = ScalarMatrix::from_rows(rows.iter().map(|&r| m.row(r).to_vec()).collect());
        let family = exact_nullspace(&sub, config);
        if family.rank == rank && certified(&family.basis) {
            return Some(SolutionFamily { rows: m.rows, ..family });
        }
    }
    None
}

/// Rank of the image modulo a 61-bit prime at a fixed point; a lower bound
/// for the rank over Q(v), equal to it outside a finite bad set.
pub fn modular_rank(m: &ScalarMatrix) -> Option<usize> {
    SAMPLE_POINTS.iter().find_map(|&p| independent_rows(m, p)).map(|r| r.len())
}

/// Scales each row by the lcm of its denominators and strips powers of `v`
/// and rational content, giving polynomial rows with the same nullspace.
pub(crate) fn clear_row_denominators(m: &ScalarMatrix) -> Vec<Vec<LaurentPoly>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let mut den = LaurentPoly::one();
            for s in row.iter().filter(|s| !s.is_zero()) {
                if s.denom() != &den && !s.denom().is_one() {
                    let g = den.gcd(s.denom());
                    den = &den * &s.denom().div_exact(&g).expect("gcd divides");
                }
            }
            let mut polys: Vec<LaurentPoly> = row
                .iter()
                .map(|s| {
                    if s.is_zero() {
                        LaurentPoly::zero()
                    } else {
                        s.numer() * &den.div_exact(s.denom()).expect("lcm is a multiple")
                    }
                })
                .collect();
            let nonzero: Vec<&LaurentPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
            if nonzero.is_empty() {
                return polys;
            }
            let low = nonzero.iter().map(|p| p.low_exp()).min().unwrap();
            let mut g = LaurentPoly::zero();
            for p in &nonzero {
                g = g.gcd(p);
                if g.is_one() {
                    break;
                }
            }
            for p in polys.iter_mut() {
                if p.is_zero() {
                    continue;
                }
                let mut q = p.shift(-low);
                if !g.is_one() {
                    q = q.div_exact(&g.shift(-g.low_exp())).expect("row gcd divides");
                }
                *p = q;
            }
            let content = row_content(&polys);
            let inv = content.recip();
            polys.iter().map(|p| p.scale(&inv)).collect()
        })
        .collect()
}

/// Rational content of a row: gcd of numerators over lcm of denominators,
/// signed by the first nonzero entry's leading coefficient.
fn row_content(polys: &[LaurentPoly]) -> num_rational::BigRational {
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    let mut sign_negative = None;
    for p in polys {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if sign_negative.is_none() {
            sign_negative = p.leading_coeff().map(|c| c.is_negative());
        }
    }
    let mut content = num_rational::BigRational::new(num, den);
    if sign_negative == Some(true) {
        content = -content;
    }
    content
}

fn bareiss_nullspace(m: &ScalarMatrix, max_span: usize) -> Option<SolutionFamily> {
    let mut a = clear_row_denominators(m);
    a.retain(|row| row.iter().any(|p| !p.is_zero()));
    let cols = m.cols;
    let mut prev = LaurentPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let choice = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].span(), a[i][c].term_count(), i));
        let Some(p) = choice else { continue };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&factor * &pivot_row[j]);
                }
                let v = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
                if v.span() > max_span {
                    return None;
                }
                row[j] = v;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
        let keep = r;
        let mut k = keep;
        while k < a.len() {
            if a[k].iter().all(LaurentPoly::is_zero) {
                a.swap_remove(k);
            } else {
                k += 1;
            }
        }
    }
    let echelon: Vec<Vec<Scalar>> = a[..r]
        .iter()
        .map(|row| row.iter().cloned().map(Scalar::from_laurent).collect())
        .collect();
    Some(back_substitute(m, &echelon, pivots, EliminationMethod::Bareiss))
}

fn back_substitute(
    m: &ScalarMatrix,
    echelon: &[Vec<Scalar>],
    pivots: Vec<usize>,
    method: EliminationMethod,
) -> SolutionFamily {
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); cols];
            x[f] = Scalar::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let row = &echelon[k];
                let s: Scalar = (pc + 1..cols)
                    .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                    .map(|j| &row[j] * &x[j])
                    .sum();
                x[pc] = -(&s / &row[pc]);
            }
            x
        })
        .collect();
    SolutionFamily {
        rows: m.rows,
        cols,
        rank: pivots.len(),
        pivots,
        free,
        basis,
        method,
    }
}

/// Gaussian elimination with reduced rational-function entries.
pub fn field_nullspace(m: &ScalarMatrix) -> SolutionFamily {
    let cols = m.cols;
    let mut a: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|r| m.row(r).to_vec())
        .filter(|row| row.iter().any(|s| !s.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let choice = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].weight(), i));
        let Some(p) = choice else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        let pivot_row: Vec<Scalar> = a[r].iter().map(|s| s * &inv).collect();
        for row in a[r + 1..].iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                continue;
            }
            for j in c + 1..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        a[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    back_substitute(m, &a[..r], pivots, EliminationMethod::Field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i32) -> Scalar {
        Scalar::q_pow(k)
    }

    #[test]
    fn identity_has_full_rank() {
        let fam = solve_nullspace(&ScalarMatrix::identity(12));
        assert_eq!(fam.rank, 12);
        assert_eq!(fam.nullity(), 0);
    }

    #[test]
    fn zero_matrix_has_full_nullity() {
        let m = ScalarMatrix::zeros(141, 12);
        let fam = solve_nullspace(&m);
        assert_eq!(fam.rank, 0);
        assert_eq!(fam.nullity(), 12);
        for x in &fam.basis {
            assert!(m.annihilates(x));
        }
    }

    #[test]
    fn parametric_rank_drop() {
        // Rows (1, q, q^2) and (q, q^2, q^3) are dependent; (1, 1, 1) is not.
        let m = ScalarMatrix::from_rows(vec![
            vec![Scalar::one(), q(1), q(2)],
            vec![q(1), q(2), q(3)],
            vec![Scalar::one(), Scalar::one(), Scalar::one()],
        ]);
        for fam in [solve_nullspace(&m), field_nullspace(&m)] {
            assert_eq!(fam.rank, 2);
            assert_eq!(fam.nullity(), 1);
            assert!(m.annihilates(&fam.basis[0]));
        }
    }

    #[test]
    fn span_bound_falls_back_to_field() {
        let two = Scalar::q_two();
        let m = ScalarMatrix::from_rows(vec![
            vec![two.clone(), q(5), Scalar::one()],
            vec![q(-3), two.inv().unwrap(), q(2)],
        ]);
        let fam = solve_nullspace_with(&m, &BareissConfig { max_span: 0 });
        assert_eq!(fam.method, EliminationMethod::Field);
        assert_eq!(fam.rank, 2);
        assert!(m.annihilates(&fam.basis[0]));
        let exact = solve_nullspace(&m);
        assert_eq!(exact.method, EliminationMethod::Bareiss);
        assert_eq!(exact.basis, fam.basis);
    }
}
