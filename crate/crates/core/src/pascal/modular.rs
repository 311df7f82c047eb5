//! Prime-field images of matrices over Q(v): rank profiles at a point, and
//! nullspace reconstruction by evaluation, rational-function interpolation
//! and rational-number lifting. Results are candidates; callers certify
//! them exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::ScalarMatrix;
use crate::qscalar::{LaurentPoly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Field {
    p: u64,
}

impl Field {
    /// Primes below `2^62` in descending order.
    pub(crate) fn sequence() -> impl Iterator<Item = Field> {
        ((1u64 << 61)..(1u64 << 62)).rev().filter(|&n| is_prime(n)).map(|p| Field { p })
    }

    pub(crate) fn first() -> Field {
        Field { p: (1 << 61) - 1 }
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut out = 1;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        out
    }

    fn inv(self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    fn int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below the prime")
    }

    fn rational(self, c: &BigRational) -> Option<u64> {
        Some(self.mul(self.int(c.numer()), self.inv(self.int(c.denom()))?))
    }

    /// Deterministic nonzero evaluation points.
    fn point(self, k: u64) -> u64 {
        let v = (k.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x5DEE_CE66_D1CE_4E5B) % self.p;
        if v == 0 {
            1
        } else {
            v
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let f = Field { p: n };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for b in BASES {
        let mut x = f.pow(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A Laurent polynomial reduced modulo a prime, for Horner evaluation.
struct DensePoly {
    low: i32,
    coeffs: Vec<u64>,
}

impl DensePoly {
    fn new(f: Field, p: &LaurentPoly) -> Option<Self> {
        let low = p.low_exp();
        let mut coeffs = vec![0; p.span() + 1];
        for (e, c) in p.terms() {
            coeffs[(e - low) as usize] = f.rational(c)?;
        }
        Some(Self { low, coeffs })
    }

    fn eval(&self, f: Field, v: u64, v_inv: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, v), c);
        }
        let shift = if self.low >= 0 {
            f.pow(v, self.low as u64)
        } else {
            f.pow(v_inv, self.low.unsigned_abs() as u64)
        };
        f.mul(acc, shift)
    }
}

/// Matrix image modulo a prime, evaluated on demand at points `v`.
struct MatrixImage {
    field: Field,
    cols: usize,
    entries: Vec<Vec<Option<(DensePoly, DensePoly)>>>,
}

impl MatrixImage {
    fn new(field: Field, m: &ScalarMatrix, rows: &[usize]) -> Option<Self> {
        let mut entries = Vec::with_capacity(rows.len());
        for &r in rows {
            let mut row = Vec::with_capacity(m.cols());
            for s in m.row(r) {
                row.push(if s.is_zero() {
                    None
                } else {
                    Some((DensePoly::new(field, s.numer())?, DensePoly::new(field, s.denom())?))
                });
            }
            entries.push(row);
        }
        Some(Self {
            field,
            cols: m.cols(),
            entries,
        })
    }

    /// `None` at a pole of some entry.
    fn at(&self, v: u64) -> Option<Vec<Vec<u64>>> {
        let f = self.field;
        let v_inv = f.inv(v)?;
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        None => Some(0),
                        Some((n, d)) => Some(f.mul(n.eval(f, v, v_inv), f.inv(d.eval(f, v, v_inv))?)),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Reduced row echelon form in place; returns the pivot columns and the
/// original indices of the rows that ended up as pivot rows.
fn rref(f: Field, a: &mut [Vec<u64>], cols: usize) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..a.len()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        order.swap(r, p);
        let inv = f.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let factor = row[c];
            if i == r || factor == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = f.sub(row[j], f.mul(factor, pivot[j]));
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (pivots, order[..r].to_vec())
}

/// Rows forming a maximal independent set in the image at `v = point`,
/// ascending; `None` at a pole.
pub(crate) fn independent_rows(m: &ScalarMatrix, point: u64) -> Option<Vec<usize>> {
    let f = Field::first();
    let all: Vec<usize> = (0..m.rows()).collect();
    let image = MatrixImage::new(f, m, &all)?;
    let mut a = image.at(point % f.p)?;
    let (_, mut rows) = rref(f, &mut a, m.cols());
    rows.sort_unstable();
    Some(rows)
}

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &Poly) -> i64 {
    a.len() as i64 - 1
}

fn poly_sub(f: Field, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (k, o) in out.iter_mut().enumerate() {
        *o = f.sub(a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
    }
    trim(out)
}

fn poly_mul(f: Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn poly_divrem(f: Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(*b.last().expect("nonzero divisor")).expect("leading coefficient");
    let mut q = vec![0; r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = f.mul(r[k + b.len() - 1], inv);
        q[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, y));
            }
        }
    }
    (trim(q), trim(r))
}

fn poly_eval(f: Field, a: &Poly, v: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, v), c))
}

/// Interpolating polynomial through `(xs[i], ys[i])`, Newton form
/// expanded to monomial coefficients.
fn interpolate(f: Field, xs: &[u64], ys: &[u64]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = f.inv(f.sub(xs[i], xs[i - j])).expect("distinct points");
            dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), den);
        }
    }
    let mut out: Poly = vec![0; n];
    for k in (0..n).rev() {
        // out = out * (v - xs[k]) + dd[k]
        let mut next = vec![0; n];
        for i in 0..n {
            if out[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = f.add(next[i + 1], out[i]);
            }
            next[i] = f.sub(next[i], f.mul(out[i], xs[k]));
        }
        next[0] = f.add(next[0], dd[k]);
        out = next;
    }
    trim(out)
}

/// Maximal-quotient rational reconstruction of `p mod modulus` as
/// `num / den` with `den` monic.
fn rational_function(f: Field, modulus: &Poly, p: &Poly) -> Option<(Poly, Poly)> {
    if p.is_empty() {
        return Some((Vec::new(), vec![1]));
    }
    let (mut r0, mut r1) = (modulus.clone(), p.clone());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    let mut best: Option<(Poly, Poly)> = None;
    let mut best_deg = 0;
    while !r1.is_empty() {
        let (q, r) = poly_divrem(f, &r0, &r1);
        if degree(&q) > best_deg {
            best_deg = degree(&q);
            best = Some((r1.clone(), t1.clone()));
        }
        let t2 = poly_sub(f, &t0, &poly_mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (num, den) = best?;
    let lead = f.inv(*den.last()?)?;
    let scale = |a: &Poly| a.iter().map(|&c| f.mul(c, lead)).collect::<Poly>();
    Some((scale(&num), scale(&den)))
}

/// Per-entry `num / den` images modulo one prime.
type EntryImages = Vec<(Poly, Poly)>;

struct Profile {
    pivots: Vec<usize>,
    free: Vec<usize>,
}

/// Collects RREF values of `-R[k][f]` at successive good points until
/// every entry reconstructs and agrees on fresh validation points.
fn reconstruct_mod_p(image: &MatrixImage, rank: usize, max_points: usize) -> Option<(Profile, EntryImages)> {
    let f = image.field;
    const CHECKS: usize = 4;
    let mut profile: Option<Vec<usize>> = None;
    let mut xs: Vec<u64> = Vec::new();
    let mut values: Vec<Vec<u64>> = Vec::new();
    let mut target = 8usize;
    let mut k = 0u64;
    while xs.len() < max_points + CHECKS {
        k += 1;
        if k > 4 * (max_points as u64 + CHECKS as u64) + 64 {
            return None;
        }
        let v = f.point(k);
        let Some(mut a) = image.at(v) else { continue };
        let (pivots, _) = rref(f, &mut a, image.cols);
        if pivots.len() != rank {
            continue;
        }
        match &profile {
            Some(p) if *p < pivots => continue,
            Some(p) if *p == pivots => {}
            _ => {
                profile = Some(pivots.clone());
                xs.clear();
                values.clear();
            }
        }
        let free: Vec<usize> = (0..image.cols).filter(|c| !pivots.contains(c)).collect();
        let row: Vec<u64> = free
            .iter()
            .flat_map(|&fc| (0..rank).map(move |r| (r, fc)))
            .map(|(r, fc)| f.sub(0, a[r][fc]))
            .collect();
        xs.push(v);
        values.push(row);
        let n = xs.len();
        if n < target.min(max_points) + CHECKS {
            continue;
        }
        let used = n - CHECKS;
        let mut modulus: Poly = vec![1];
        for &x in &xs[..used] {
            modulus = poly_mul(f, &modulus, &vec![f.sub(0, x), 1]);
        }
        let entries = values[0].len();
        let mut out = Vec::with_capacity(entries);
        let mut ok = true;
        for e in 0..entries {
            let ys: Vec<u64> = values[..used].iter().map(|row| row[e]).collect();
            let interp = interpolate(f, &xs[..used], &ys);
            let Some((num, den)) = rational_function(f, &modulus, &interp) else {
                ok = false;
                break;
            };
            let agrees = (used..n).all(|i| {
                let d = poly_eval(f, &den, xs[i]);
                d != 0 && f.mul(poly_eval(f, &num, xs[i]), f.inv(d).unwrap()) == values[i][e]
            });
            if !agrees || degree(&num) + degree(&den) + 2 > used as i64 {
                ok = false;
                break;
            }
            out.push((num, den));
        }
        if ok {
            let pivots = profile.expect("set above");
            return Some((Profile { pivots, free }, out));
        }
        if used >= max_points {
            return None;
        }
        target *= 2;
    }
    None
}

/// Wang's rational reconstruction of `a mod m`.
fn rational_number(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Pivot columns, free columns and one basis vector per free column.
pub(crate) type Nullspace = (Vec<usize>, Vec<usize>, Vec<Vec<Scalar>>);

/// Pivot columns, free columns and entry degrees seen for the first prime.
type Shape = (Vec<usize>, Vec<usize>, Vec<(usize, usize)>);

/// Candidate nullspace of the rows `rows` of `m`, whose rank is `rank`.
/// Returns pivot columns, free columns and one vector per free column.
pub(crate) fn reconstruct_nullspace(
    m: &ScalarMatrix,
    rows: &[usize],
    rank: usize,
    accept: impl Fn(&[Vec<Scalar>]) -> bool,
) -> Option<Nullspace> {
    let span = rows
        .iter()
        .flat_map(|&r| m.row(r))
        .filter(|s| !s.is_zero())
        .map(|s| s.numer().span() + s.denom().span() + 2)
        .max()
        .unwrap_or(1);
    // Cramer bound on numerator plus denominator degree, in entry spans.
    let max_points = 2 * rank * span + 2;
    let mut residues: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut shape: Option<Shape> = None;
    let mut modulus = BigInt::one();
    for f in Field::sequence().take(12) {
        let Some(image) = MatrixImage::new(f, m, rows) else { continue };
        let Some((profile, entries)) = reconstruct_mod_p(&image, rank, max_points) else { continue };
        let degrees: Vec<(usize, usize)> = entries.iter().map(|(n, d)| (n.len(), d.len())).collect();
        match &shape {
            Some((pivots, _, degs)) if *pivots != profile.pivots || *degs != degrees => continue,
            Some(_) => {}
            None => {
                shape = Some((profile.pivots.clone(), profile.free.clone(), degrees));
                residues = entries
                    .iter()
                    .map(|(n, d)| (vec![BigInt::zero(); n.len()], vec![BigInt::zero(); d.len()]))
                    .collect();
            }
        }
        let p = BigInt::from(f.p);
        let combine = |old: &BigInt, new: u64| -> BigInt {
            // x = old mod modulus, x = new mod p.
            let inv = BigInt::from(f.inv(f.int(&modulus)).expect("coprime moduli"));
            let diff = (BigInt::from(new) - old).mod_floor(&p);
            old + &modulus * ((diff * inv).mod_floor(&p))
        };
        for ((rn, rd), (n, d)) in residues.iter_mut().zip(&entries) {
            for (acc, &c) in rn.iter_mut().zip(n) {
                *acc = combine(acc, c);
            }
            for (acc, &c) in rd.iter_mut().zip(d) {
                *acc = combine(acc, c);
            }
        }
        modulus *= &p;
        let (pivots, free, _) = shape.as_ref().expect("set above");
        if let Some(basis) = lift(&residues, &modulus, pivots, free, m.cols()) {
            if accept(&basis) {
                return Some((pivots.clone(), free.clone(), basis));
            }
        }
    }
    None
}

fn lift(
    residues: &[(Vec<BigInt>, Vec<BigInt>)],
    modulus: &BigInt,
    pivots: &[usize],
    free: &[usize],
    cols: usize,
) -> Option<Vec<Vec<Scalar>>> {
    let rank = pivots.len();
    let to_rationals =
        |coeffs: &[BigInt]| -> Option<Vec<BigRational>> { coeffs.iter().map(|c| rational_number(c, modulus)).collect() };
    let mut basis = Vec::with_capacity(free.len());
    for (k, &fc) in free.iter().enumerate() {
        let mut x = vec![Scalar::zero(); cols];
        x[fc] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            let (n, d) = &residues[k * rank + r];
            let (n, d) = (to_rationals(n)?, to_rationals(d)?);
            let coprime = coprime_mod_p(Field::first(), &n, &d);
            let (n, d) = (LaurentPoly::from_dense(0, n), LaurentPoly::from_dense(0, d));
            x[pc] = if coprime { Scalar::from_coprime(n, d) } else { Scalar::reduce(n, d).ok()? };
        }
        basis.push(x);
    }
    Some(basis)
}

/// Sufficient test for coprimality over Q: if neither degree drops modulo
/// `p` and the images are coprime, the resultant is nonzero.
fn coprime_mod_p(f: Field, n: &[BigRational], d: &[BigRational]) -> bool {
    let image = |cs: &[BigRational]| -> Option<Poly> {
        let cs: Vec<&BigRational> = {
            let end = cs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
            cs[..end].iter().collect()
        };
        let p: Poly = cs.iter().map(|c| f.rational(c)).collect::<Option<_>>()?;
        (p.last().is_some_and(|&c| c != 0)).then_some(p)
    };
    let (Some(mut a), Some(mut b)) = (image(n), image(d)) else { return false };
    while !b.is_empty() {
        let (_, r) = poly_divrem(f, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    degree(&a) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let f = Field::first();
        assert!(is_prime(f.p));
        let next: Vec<u64> = Field::sequence().take(2).map(|f| f.p).collect();
        assert_eq!(next[0], (1 << 62) - 57);
        assert!(!is_prime((1 << 62) - 1));
    }

    #[test]
    fn rational_function_round_trip() {
        let f = Field::first();
        // (3v^2 + 1) / (v^3 - 2)
        let num: Poly = vec![1, 0, 3];
        let den: Poly = vec![f.sub(0, 2), 0, 0, 1];
        let xs: Vec<u64> = (1..=8).map(|k| f.point(k)).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| f.mul(poly_eval(f, &num, x), f.inv(poly_eval(f, &den, x)).unwrap()))
            .collect();
        let mut modulus: Poly = vec![1];
        for &x in &xs {
            modulus = poly_mul(f, &modulus, &vec![f.sub(0, x), 1]);
        }
        let got = rational_function(f, &modulus, &interpolate(f, &xs, &ys)).unwrap();
        assert_eq!(got, (num, den));
    }

    #[test]
    fn wang_reconstruction() {
        let m = BigInt::from(Field::first().p);
        let want = BigRational::new((-7).into(), 12.into());
        let f = Field::first();
        let a = BigInt::from(f.rational(&want).unwrap());
        assert_eq!(rational_number(&a, &m), Some(want));
    }
}
