//! Polynomials over the prime field F_p as plain residue vectors
//! (constant term first, trailing zeros trimmed). Used to build and
//! validate extension-field moduli and for extension-field inversion.

use crate::arith::{mod_inv, prime_divisors};

use super::FieldError;

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Division with remainder. `b` must be nonzero.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = mod_inv(*b.last().unwrap(), p).expect("leading coefficient is a unit");
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * lead_inv % p;
        quot[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - c * y % p) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    div_rem(a, b, p).1
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

fn make_monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = mod_inv(lead, p).expect("nonzero residue");
            a.into_iter().map(|c| c * inv % p).collect()
        }
    }
}

/// `base^exp mod modulus`.
pub(crate) fn pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, or
/// `None` when they share a factor.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut old_r, mut r) = (rem(a, m, p), trim(m.to_vec()));
    let (mut old_s, mut s): (Vec<u64>, Vec<u64>) = (vec![1], Vec::new());
    while !r.is_empty() {
        let (quot, next_r) = div_rem(&old_r, &r, p);
        let next_s = sub(&old_s, &mul(&quot, &s, p), p);
        old_r = std::mem::replace(&mut r, next_r);
        old_s = std::mem::replace(&mut s, next_s);
    }
    if old_r.len() != 1 {
        return None;
    }
    let scale = mod_inv(old_r[0], p)?;
    let inv: Vec<u64> = old_s.into_iter().map(|c| c * scale % p).collect();
    Some(rem(&inv, m, p))
}

/// `T^(p^k) mod f`, by `k` successive p-th powerings of `T`.
fn frobenius_power(f: &[u64], k: u32, p: u64) -> Vec<u64> {
    let mut x = rem(&[0, 1], f, p);
    for _ in 0..k {
        x = pow_mod(&x, p, f, p);
    }
    x
}

/// Irreducibility over F_p: `f` divides `T^(p^d) - T`, and
/// `gcd(f, T^(p^(d/l)) - T) = 1` for every prime `l | d`.
pub fn is_irreducible(poly: &[u64], p: u64) -> Result<bool, FieldError> {
    let f: Vec<u64> = trim(poly.iter().map(|c| c % p).collect());
    if f.len() < 2 {
        return Err(FieldError::DegreeTooSmall);
    }
    if *f.last().unwrap() != 1 {
        return Err(FieldError::NotMonic);
    }
    let d = (f.len() - 1) as u32;
    let t = [0u64, 1];
    if !sub(&frobenius_power(&f, d, p), &rem(&t, &f, p), p).is_empty() {
        return Ok(false);
    }
    for l in prime_divisors(d as u64) {
        let h = sub(&frobenius_power(&f, d / l as u32, p), &t, p);
        if gcd(&f, &h, p).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First monic irreducible polynomial of degree `r` over F_p, scanning the
/// lower coefficients `(c_0, ..., c_{r-1})` lexicographically with `c_0`
/// most significant.
pub(crate) fn first_irreducible(p: u64, r: u32) -> Vec<u64> {
    let r = r as usize;
    let mut lower = vec![0u64; r];
    loop {
        let mut cand = lower.clone();
        cand.push(1);
        if is_irreducible(&cand, p).expect("monic candidate") {
            return cand;
        }
        // Odometer increment, last coefficient fastest.
        let mut i = r;
        loop {
            assert!(i > 0, "no irreducible polynomial of degree {r} over F_{p}");
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}
