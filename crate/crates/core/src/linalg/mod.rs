//! Exact determinants over finite fields and over the rationals, exact
//! characteristic polynomials, and the closed form for `det[P(X_i Y_j)]`.

mod bareiss;
mod charpoly;

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};

pub use bareiss::{det_bigint, det_i128};
pub use charpoly::charpoly_rational;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("length mismatch: {coeffs} coefficients, {xs} X values, {ys} Y values")]
    LengthMismatch { coeffs: usize, xs: usize, ys: usize },
    #[error("empty input")]
    Empty,
    #[error("entries from different fields")]
    ContextMismatch,
}

/// A square matrix over a finite field, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    ctx: Arc<FieldCtx>,
    n: usize,
    entries: Vec<FieldElem>,
}

impl SquareMatrix {
    pub fn new(ctx: &Arc<FieldCtx>, n: usize, entries: Vec<FieldElem>) -> Result<Self, LinalgError> {
        if entries.len() != n * n {
            return Err(LinalgError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(LinalgError::ContextMismatch);
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            n,
            entries,
        })
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, n: usize, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(ctx, n, entries).expect("entries from the matrix field")
    }

    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        Self::from_fn(ctx, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Self::from_fn(&self.ctx, n, |i, j| {
            (0..n).fold(self.ctx.zero(), |acc, k| &acc + &(self.get(i, k) * other.get(k, j)))
        })
    }

    /// `P M P^{-1}` for the permutation matrix of `perm`: entry `(i, j)`
    /// becomes entry `(perm[i], perm[j])` of `self`.
    pub fn conjugate_by_permutation(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(&self.ctx, self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// Gaussian elimination taking the first nonzero entry in the column
    /// as pivot, sign tracked by the number of row swaps. `n = 0` gives 1.
    pub fn det(&self) -> FieldElem {
        let n = self.n;
        let mut m: Vec<Vec<FieldElem>> = self.entries.chunks(n.max(1)).map(<[FieldElem]>::to_vec).collect();
        let mut det = self.ctx.one();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return self.ctx.zero();
            };
            if pivot != k {
                m.swap(k, pivot);
                det = -det;
            }
            det = &det * &m[k][k];
            let pivot_inv = m[k][k].inv().expect("nonzero pivot");
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let factor = &row[k] * &pivot_inv;
                for j in k + 1..n {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        det
    }
}

pub fn det_field(m: &SquareMatrix) -> FieldElem {
    m.det()
}

/// A square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != n * n {
            return Err(LinalgError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Self {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn from_ints(n: usize, entries: &[i64]) -> Result<Self, LinalgError> {
        Self::new(
            n,
            entries.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(Rational::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Exact determinant: each row is scaled by the lcm of its
    /// denominators, the resulting integer matrix goes through Bareiss
    /// elimination, and the product of the row scales is divided back out.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut scale = BigInt::one();
        let mut ints = Vec::with_capacity(n * n);
        for row in self.entries.chunks(n.max(1)) {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            ints.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
            scale *= lcm;
        }
        Rational::new(det_bigint(n, &ints), scale)
    }
}

pub fn det_rational(m: &RationalMatrix) -> Rational {
    m.det()
}

/// A square integer matrix, row-major, for the `+-1/0` families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_ints(self.n, &self.entries).expect("square")
    }

    /// Exact determinant through the rational engine.
    pub fn det(&self) -> BigInt {
        let d = self.to_rational().det();
        debug_assert!(d.is_integer());
        d.to_integer()
    }
}

/// Commutative-ring values the determinant identities are stated over.
pub trait RingValue: Clone + PartialEq + Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// The multiplicative identity of the ring `self` belongs to.
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    /// Determinant of a row-major `n x n` matrix with `n >= 1`.
    fn determinant(n: usize, entries: &[Self]) -> Self;
}

impl RingValue for FieldElem {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn one_like(&self) -> Self {
        self.ctx().one()
    }
    fn zero_like(&self) -> Self {
        self.ctx().zero()
    }
    fn determinant(n: usize, entries: &[Self]) -> Self {
        let ctx = Arc::clone(entries[0].ctx());
        SquareMatrix::new(&ctx, n, entries.to_vec())
            .expect("square matrix over one field")
            .det()
    }
}

impl RingValue for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn determinant(n: usize, entries: &[Self]) -> Self {
        RationalMatrix::new(n, entries.to_vec()).expect("square").det()
    }
}

/// The integers, with overflow treated as a bug.
impl RingValue for i64 {
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i64 overflow")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("i64 overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i64 overflow")
    }
    fn one_like(&self) -> Self {
        1
    }
    fn zero_like(&self) -> Self {
        0
    }
    fn determinant(n: usize, entries: &[Self]) -> Self {
        let wide: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
        i64::try_from(det_i128(n, &wide)).expect("determinant fits in i64")
    }
}

/// `prod_{i<j} (x_j - x_i)`.
pub fn vandermonde_product<T: RingValue>(xs: &[T]) -> Result<T, LinalgError> {
    let first = xs.first().ok_or(LinalgError::Empty)?;
    let mut acc = first.one_like();
    for j in 1..xs.len() {
        for i in 0..j {
            acc = acc.mul(&xs[j].sub(&xs[i]));
        }
    }
    Ok(acc)
}

fn check_lengths<T>(coeffs: &[T], xs: &[T], ys: &[T]) -> Result<usize, LinalgError> {
    let n = coeffs.len();
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    if xs.len() != n || ys.len() != n {
        return Err(LinalgError::LengthMismatch {
            coeffs: n,
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    Ok(n)
}

/// Closed form of `det[P(X_i Y_j)]` for `P = p_0 + p_1 T + ... + p_{n-1} T^{n-1}`:
/// `prod p_i * prod_{i<j} (X_j - X_i)(Y_j - Y_i)`.
pub fn cauchy_like_det<T: RingValue>(coeffs: &[T], xs: &[T], ys: &[T]) -> Result<T, LinalgError> {
    check_lengths(coeffs, xs, ys)?;
    let coeff_prod = coeffs[1..].iter().fold(coeffs[0].clone(), |acc, c| acc.mul(c));
    Ok(coeff_prod
        .mul(&vandermonde_product(xs)?)
        .mul(&vandermonde_product(ys)?))
}

/// The matrix `[P(X_i Y_j)]`, row-major, with `P` evaluated by Horner.
pub fn cauchy_like_matrix<T: RingValue>(coeffs: &[T], xs: &[T], ys: &[T]) -> Result<Vec<T>, LinalgError> {
    let n = check_lengths(coeffs, xs, ys)?;
    let zero = coeffs[0].zero_like();
    let mut out = Vec::with_capacity(n * n);
    for x in xs {
        for y in ys {
            let t = x.mul(y);
            let v = coeffs.iter().rev().fold(zero.clone(), |acc, c| acc.mul(&t).add(c));
            out.push(v);
        }
    }
    Ok(out)
}

/// `det[P(X_i Y_j)]` by elimination on the assembled matrix.
pub fn cauchy_like_direct<T: RingValue>(coeffs: &[T], xs: &[T], ys: &[T]) -> Result<T, LinalgError> {
    let entries = cauchy_like_matrix(coeffs, xs, ys)?;
    Ok(T::determinant(coeffs.len(), &entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(n: usize, m: &[Rational]) -> Rational {
        if n == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for c in 0..n {
            let minor: Vec<Rational> = (1..n)
                .flat_map(|i| (0..n).filter(move |&j| j != c).map(move |j| (i, j)))
                .map(|(i, j)| m[i * n + j].clone())
                .collect();
            let term = &m[c] * cofactor_det(n - 1, &minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn field_determinants() {
        let f = make_prime_field(5).unwrap();
        assert!(SquareMatrix::identity(&f, 3).det().is_one());
        let swap = SquareMatrix::new(&f, 2, vec![f.zero(), f.one(), f.one(), f.zero()]).unwrap();
        assert_eq!(swap.det(), f.from_int(4));
        let empty = SquareMatrix::new(&f, 0, vec![]).unwrap();
        assert!(empty.det().is_one());
        let singular = SquareMatrix::from_fn(&f, 3, |i, _| f.from_int(i as i64));
        assert!(singular.det().is_zero());
        assert_eq!(
            SquareMatrix::new(&f, 2, vec![f.one()]),
            Err(LinalgError::Shape { expected: 4, got: 1 })
        );
    }

    #[test]
    fn rational_determinants() {
        let m = RationalMatrix::from_ints(2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(m.det(), rat(-2, 1));
        let h = RationalMatrix::from_fn(3, |i, j| rat(1, (i + j + 1) as i64));
        // Hilbert matrix of order 3.
        assert_eq!(h.det(), rat(1, 2160));
        assert_eq!(RationalMatrix::zeros(0).det(), rat(1, 1));
    }

    #[test]
    fn rational_det_matches_cofactor_oracle() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 19) as i64 - 9
        };
        for n in 1..=4 {
            for _ in 0..25 {
                let entries: Vec<Rational> = (0..n * n)
                    .map(|_| {
                        let num = next();
                        let den = next().abs() + 1;
                        rat(num, den)
                    })
                    .collect();
                let m = RationalMatrix::new(n, entries.clone()).unwrap();
                assert_eq!(m.det(), cofactor_det(n, &entries));
            }
        }
    }

    #[test]
    fn charpoly_invariants() {
        let m = RationalMatrix::from_fn(4, |i, j| rat((i * 3 + j) as i64 - 5, (j + 1) as i64));
        let cp = charpoly_rational(&m);
        assert_eq!(cp[4], rat(1, 1));
        assert_eq!(cp[3], -m.trace());
        assert_eq!(cp[0], m.det());
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_product(&[1i64, 2]), Ok(1));
        let f = make_prime_field(5).unwrap();
        let xs: Vec<_> = [1, 2, 3].iter().map(|&v| f.from_int(v)).collect();
        assert_eq!(vandermonde_product(&xs), Ok(f.from_int(2)));
        let all = f.enumerate_nonzero();
        let v = vandermonde_product(&all).unwrap();
        assert_eq!(&v * &v, f.from_int(-1));
        assert_eq!(vandermonde_product::<i64>(&[]), Err(LinalgError::Empty));
    }

    #[test]
    fn cauchy_like_small() {
        assert_eq!(cauchy_like_det(&[7i64], &[3], &[5]), Ok(7));
        let (p0, p1, x1, x2, y1, y2) = (2i64, 3, 1, 4, -1, 2);
        let direct = (p0 + p1 * x1 * y1) * (p0 + p1 * x2 * y2) - (p0 + p1 * x1 * y2) * (p0 + p1 * x2 * y1);
        let closed = cauchy_like_det(&[p0, p1], &[x1, x2], &[y1, y2]).unwrap();
        assert_eq!(closed, p0 * p1 * (x2 - x1) * (y2 - y1));
        assert_eq!(closed, direct);
        assert_eq!(
            cauchy_like_det(&[1i64, 2], &[1], &[1, 2]),
            Err(LinalgError::LengthMismatch { coeffs: 2, xs: 1, ys: 2 })
        );
    }
}
