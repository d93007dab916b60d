//! Quadratic characters and permutation signs.

use std::fmt;
use std::ops::{Mul, Neg};

use thiserror::Error;

use crate::arith::{self, mod_pow};
use crate::field::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    EvenModulus(u64),
    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("not a bijection on 0..{0}")]
    NotBijection(usize),
}

/// A value in {-1, 0, +1}. Zero only arises as a character value at a
/// non-coprime argument, never as a permutation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg = -1,
    Zero = 0,
    Pos = 1,
}

impl Sign {
    /// `(-1)^n`.
    pub fn from_parity(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn value(self) -> i64 {
        self as i64
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.value() * rhs.value() {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => Sign::Zero,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Neg
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<Sign, CharacterError> {
    if p.is_multiple_of(2) || p > arith::MAX_PRIME || !arith::is_prime(p) {
        return Err(CharacterError::NotOddPrime(p));
    }
    let r = arith::residue(a, p);
    Ok(match mod_pow(r, (p - 1) / 2, p) {
        0 => Sign::Zero,
        1 => Sign::Pos,
        _ => Sign::Neg,
    })
}

/// Jacobi symbol `(a/m)` for odd `m >= 1`.
pub fn jacobi(a: i64, m: u64) -> Result<Sign, CharacterError> {
    if m.is_multiple_of(2) {
        return Err(CharacterError::EvenModulus(m));
    }
    let mut n = m;
    let mut a = arith::residue(a, n);
    let mut acc = Sign::Pos;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                acc = -acc;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            acc = -acc;
        }
        a %= n;
    }
    Ok(if n == 1 { acc } else { Sign::Zero })
}

/// The quadratic character modulo 3.
pub fn chi3(k: i64) -> Sign {
    match k.rem_euclid(3) {
        0 => Sign::Zero,
        1 => Sign::Pos,
        _ => Sign::Neg,
    }
}

/// `chi3(k) + chi3(1 - k)`: 1 when k = 0, 1 (mod 3) and -2 when k = 2 (mod 3).
pub fn chi3_bracket(k: i64) -> i64 {
    if k.rem_euclid(3) == 2 {
        -2
    } else {
        1
    }
}

/// Sign of the permutation `x -> a x` on Z/m, by Lerch's case formula.
pub fn lerch_sign(a: i64, m: u64) -> Result<Sign, CharacterError> {
    assert!(m >= 1, "modulus must be positive");
    if arith::gcd(arith::residue(a, m), m) != 1 {
        return Err(CharacterError::NotCoprime { a, m });
    }
    Ok(match m % 4 {
        1 | 3 => jacobi(a, m)?,
        2 => Sign::Pos,
        // a is odd here: (-1)^((a-1)/2) depends on a mod 4.
        _ => {
            if a.rem_euclid(4) == 1 {
                Sign::Pos
            } else {
                Sign::Neg
            }
        }
    })
}

/// Sign of a permutation of `0..n` given as `perm[i] = image of i`, via
/// cycle decomposition: `(-1)^(n - cycles)`.
pub fn perm_sign_bruteforce(perm: &[usize]) -> Result<Sign, CharacterError> {
    let n = perm.len();
    let mut hit = vec![false; n];
    for &img in perm {
        if img >= n || std::mem::replace(&mut hit[img], true) {
            return Err(CharacterError::NotBijection(n));
        }
    }
    let mut seen = vec![false; n];
    let mut cycles = 0u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    Ok(Sign::from_parity(n as u64 - cycles))
}

/// The permutation `x -> a x mod m` on `0..m`.
pub fn multiplication_perm(a: i64, m: u64) -> Vec<usize> {
    (0..m)
        .map(|x| ((x as i128 * a as i128).rem_euclid(m as i128)) as usize)
        .collect()
}

/// Sign of the inversion map on the nonzero elements of `ctx`, as the sign
/// of `j -> -j` on Z/(q-1).
pub fn sigma_inverse_sign(ctx: &FieldCtx) -> Sign {
    lerch_sign(-1, ctx.order() - 1).expect("-1 is a unit")
}

/// `(-1)^((q+1)/2)`.
pub fn sigma_inverse_sign_formula(q: u64) -> Sign {
    Sign::from_parity(q.div_ceil(2))
}

/// Sign of `a_j -> a_j^{-1}` computed from the actual map on the canonical
/// enumeration of the nonzero elements.
pub fn sigma_inverse_sign_bruteforce(ctx: &std::sync::Arc<FieldCtx>) -> Sign {
    let elems = ctx.enumerate_nonzero();
    let perm: Vec<usize> = elems
        .iter()
        .map(|x| x.inv().expect("nonzero").index() as usize - 1)
        .collect();
    perm_sign_bruteforce(&perm).expect("inversion is a bijection")
}
