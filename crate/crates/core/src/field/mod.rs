//! Exact arithmetic in F_p and F_{p^r} for odd p.
//!
//! An extension field is represented as F_p[T]/(m(T)) with `m` the first
//! monic irreducible polynomial of degree `r` in canonical order. Elements
//! are reduced coefficient vectors of length `r`, constant term first, each
//! coefficient stored in `[0, p)`.

mod cache;
mod fp_poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{self, MAX_PRIME};

pub use cache::{make_extension_field_cached, ModulusCache};
pub use fp_poly::is_irreducible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field order {p}^{r} does not fit in 64 bits")]
    OrderOverflow { p: u64, r: u32 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("modulus is not irreducible of the requested degree")]
    BadModulus,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

/// A finite field F_q with q = p^r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    /// Monic, degree `r`, constant term first. `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    q: u64,
}

/// F_p as a field context.
pub fn make_prime_field(p: u64) -> Result<Arc<FieldCtx>, FieldError> {
    check_characteristic(p)?;
    Ok(Arc::new(FieldCtx {
        p,
        r: 1,
        modulus: vec![0, 1],
        q: p,
    }))
}

/// F_{p^r} using the first monic irreducible of degree `r` in canonical
/// order. Identical to [`make_prime_field`] when `r = 1`.
pub fn make_extension_field(p: u64, r: u32) -> Result<Arc<FieldCtx>, FieldError> {
    check_characteristic(p)?;
    if r == 0 {
        return Err(FieldError::InvalidDegree(r));
    }
    if r == 1 {
        return make_prime_field(p);
    }
    let q = p.checked_pow(r).ok_or(FieldError::OrderOverflow { p, r })?;
    Ok(Arc::new(FieldCtx {
        p,
        r,
        modulus: fp_poly::first_irreducible(p, r),
        q,
    }))
}

fn check_characteristic(p: u64) -> Result<(), FieldError> {
    if p.is_multiple_of(2) || p > MAX_PRIME || !arith::is_prime(p) {
        return Err(FieldError::NotOddPrime(p));
    }
    Ok(())
}

impl FieldCtx {
    /// Builds F_p[T]/(modulus) from an explicit modulus, validating it.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Arc<Self>, FieldError> {
        check_characteristic(p)?;
        let modulus = fp_poly::trim(modulus.to_vec());
        if modulus.len() < 2 {
            return Err(FieldError::DegreeTooSmall);
        }
        let r = (modulus.len() - 1) as u32;
        if r == 1 {
            if modulus != [0, 1] {
                return Err(FieldError::BadModulus);
            }
            return make_prime_field(p);
        }
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(&modulus, p)? {
            return Err(FieldError::BadModulus);
        }
        let q = p.checked_pow(r).ok_or(FieldError::OrderOverflow { p, r })?;
        Ok(Arc::new(Self { p, r, modulus, q }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    fn elem(self: &Arc<Self>, coeffs: Vec<u64>) -> FieldElem {
        debug_assert_eq!(coeffs.len(), self.r as usize);
        FieldElem {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        self.elem(vec![0; self.r as usize])
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElem {
        let mut coeffs = vec![0; self.r as usize];
        coeffs[0] = arith::residue(n, self.p);
        self.elem(coeffs)
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FieldElem, FieldError> {
        if coeffs.len() != self.r as usize {
            return Err(FieldError::CoefficientCount {
                expected: self.r as usize,
                got: coeffs.len(),
            });
        }
        Ok(self.elem(coeffs.iter().map(|c| c % self.p).collect()))
    }

    /// The element at position `index` in canonical order, `0 <= index < q`:
    /// base-p digits of `index` with the constant coefficient most significant.
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> FieldElem {
        assert!(index < self.q, "index {index} out of range for F_{}", self.q);
        let r = self.r as usize;
        let mut coeffs = vec![0; r];
        for k in (0..r).rev() {
            coeffs[k] = index % self.p;
            index /= self.p;
        }
        self.elem(coeffs)
    }

    /// All q elements in canonical order, zero first.
    pub fn elements(self: &Arc<Self>) -> Vec<FieldElem> {
        (0..self.q).map(|i| self.from_index(i)).collect()
    }

    /// The nonzero elements a_1, ..., a_{q-1} in canonical order. For a
    /// prime field this is 1, 2, ..., p-1.
    pub fn enumerate_nonzero(self: &Arc<Self>) -> Vec<FieldElem> {
        (1..self.q).map(|i| self.from_index(i)).collect()
    }

    /// Reduces an arbitrary-length residue vector modulo the field modulus.
    fn reduce(self: &Arc<Self>, poly: &[u64]) -> FieldElem {
        let r = self.r as usize;
        let mut coeffs = if r == 1 {
            vec![poly.first().copied().unwrap_or(0) % self.p]
        } else {
            fp_poly::rem(poly, &self.modulus, self.p)
        };
        coeffs.resize(r, 0);
        self.elem(coeffs)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The least nonnegative residue if this element lies in F_p.
    pub fn prime_subfield_value(&self) -> Option<u64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    /// Position in the canonical element order.
    pub fn index(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| acc * self.ctx.p + c)
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(self.ctx.elem(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + p - b) % p)
            .collect();
        Ok(self.ctx.elem(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.ctx.p;
        if self.ctx.r == 1 {
            return Ok(self.ctx.elem(vec![self.coeffs[0] * other.coeffs[0] % p]));
        }
        Ok(self
            .ctx
            .reduce(&fp_poly::mul(&self.coeffs, &other.coeffs, p)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let p = self.ctx.p;
        if self.ctx.r == 1 {
            let v = arith::mod_inv(self.coeffs[0], p).expect("nonzero residue mod prime");
            return Ok(self.ctx.elem(vec![v]));
        }
        let inv = fp_poly::inv_mod(&self.coeffs, &self.ctx.modulus, p)
            .expect("modulus is irreducible");
        Ok(self.ctx.reduce(&inv))
    }

    /// Inverse as `x^(q-2)`.
    pub fn inv_by_pow(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(self.ctx.q - 2))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion: zero, or `x^((q-1)/2) = 1`.
    pub fn is_square(&self) -> bool {
        self.is_zero() || self.pow((self.ctx.q - 1) / 2).is_one()
    }
}

impl fmt::Display for FieldElem {
    /// Prime-subfield elements print as their residue; others as the
    /// parenthesised coefficient list, constant first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime_subfield_value() {
            Some(v) => write!(f, "{v}"),
            None => {
                let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.ctx.p;
        let coeffs = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        self.ctx.elem(coeffs)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FieldCtx> {
        make_prime_field(5).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        assert_eq!(f5().order(), 5);
        assert_eq!(make_prime_field(11).unwrap().order(), 11);
        assert_eq!(make_prime_field(4), Err(FieldError::NotOddPrime(4)));
        assert_eq!(make_prime_field(2), Err(FieldError::NotOddPrime(2)));
        assert_eq!(make_prime_field(1), Err(FieldError::NotOddPrime(1)));
        assert_eq!(make_prime_field(9), Err(FieldError::NotOddPrime(9)));
    }

    #[test]
    fn extension_construction() {
        assert_eq!(make_extension_field(5, 1).unwrap(), f5());
        let a = make_extension_field(5, 3).unwrap();
        let b = make_extension_field(5, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.order(), 125);
        assert_eq!(a.modulus(), &[1, 0, 1, 1]);
        assert_eq!(make_extension_field(5, 0), Err(FieldError::InvalidDegree(0)));
        assert_eq!(make_extension_field(6, 2), Err(FieldError::NotOddPrime(6)));
    }

    #[test]
    fn chosen_cubic_has_no_root() {
        let ctx = make_extension_field(5, 3).unwrap();
        let m = ctx.modulus();
        for x in 0..5u64 {
            let v = m.iter().rev().fold(0, |acc, &c| (acc * x + c) % 5);
            assert_ne!(v, 0);
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = f5();
        assert_eq!(f.from_int(3) + f.from_int(4), f.from_int(2));
        assert_eq!(f.from_int(3) * f.from_int(4), f.from_int(2));
        assert_eq!(f.from_int(1) - f.from_int(3), f.from_int(3));
        assert_eq!(-f.from_int(1), f.from_int(4));
        assert_eq!(f.from_int(2).inv().unwrap(), f.from_int(3));
        assert_eq!(f.from_int(2).inv_by_pow().unwrap(), f.from_int(3));
        assert_eq!(f.zero().inv(), Err(FieldError::ZeroInverse));
        assert_eq!(f.from_int(2).pow(4), f.one());
        assert_eq!(f.from_int(2).pow(3), f.from_int(3));
        assert_eq!(f.zero().pow(0), f.one());
    }

    #[test]
    fn mixed_context_rejected() {
        let a = f5().one();
        let b = make_prime_field(7).unwrap().one();
        assert_eq!(a.checked_add(&b), Err(FieldError::ContextMismatch));
        assert_eq!(a.checked_mul(&b), Err(FieldError::ContextMismatch));
    }

    #[test]
    fn extension_identity_and_inverse() {
        let f = make_extension_field(5, 3).unwrap();
        for x in f.enumerate_nonzero() {
            assert_eq!(&x * &f.one(), x);
            let inv = x.inv().unwrap();
            assert!((&x * &inv).is_one());
            assert_eq!(inv, x.inv_by_pow().unwrap());
            assert!(x.pow(f.order() - 1).is_one());
        }
    }

    #[test]
    fn squares() {
        let f = f5();
        assert!(f.from_int(4).is_square());
        assert!(!f.from_int(-3).is_square());
        let g = make_extension_field(5, 3).unwrap();
        let squares: std::collections::HashSet<_> =
            g.elements().iter().map(|x| x * x).collect();
        assert!(!squares.contains(&g.from_int(-3)));
        assert!(!g.from_int(-3).is_square());
        for x in g.elements() {
            assert_eq!(x.is_square(), squares.contains(&x));
        }
    }

    #[test]
    fn enumeration() {
        let f = f5();
        let got: Vec<u64> = f.enumerate_nonzero().iter().map(FieldElem::index).collect();
        assert_eq!(got, vec![1, 2, 3, 4]);
        let g = make_extension_field(5, 3).unwrap();
        let all = g.enumerate_nonzero();
        assert_eq!(all.len(), 124);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 124);
        assert!(all.iter().all(|x| !x.is_zero()));
        // Constant coefficient is the most significant digit.
        assert_eq!(g.from_index(25).coeffs(), &[1, 0, 0]);
        assert_eq!(g.from_index(1).coeffs(), &[0, 0, 1]);
    }

    #[test]
    fn product_of_nonzero_elements_is_minus_one() {
        for (p, r) in [(5, 1), (7, 1), (11, 1), (5, 3), (3, 2), (7, 3)] {
            let f = make_extension_field(p, r).unwrap();
            let prod = f
                .enumerate_nonzero()
                .iter()
                .fold(f.one(), |acc, x| &acc * x);
            assert_eq!(prod, f.from_int(-1), "F_{}", f.order());
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        assert_eq!(
            FieldCtx::with_modulus(5, &[1, 0, 1, 1]).unwrap(),
            make_extension_field(5, 3).unwrap()
        );
        assert_eq!(
            FieldCtx::with_modulus(5, &[1, 0, 0, 1]),
            Err(FieldError::BadModulus)
        );
    }
}
