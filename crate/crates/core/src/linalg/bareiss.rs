//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a row-major `n x n` integer matrix by Bareiss
/// elimination. Every intermediate division is exact. The first nonzero
/// entry at or below the diagonal is taken as pivot.
pub fn det_bigint(n: usize, entries: &[BigInt]) -> BigInt {
    assert_eq!(entries.len(), n * n, "not an {n}x{n} matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = entries.chunks(n).map(<[BigInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Same elimination in `i128` for small integer matrices. Panics on
/// overflow.
pub fn det_i128(n: usize, entries: &[i128]) -> i128 {
    assert_eq!(entries.len(), n * n, "not an {n}x{n} matrix");
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = entries.chunks(n).map(<[i128]>::to_vec).collect();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| a.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .expect("integer determinant overflow");
                m[i][j] = v / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if negate {
        -m[n - 1][n - 1]
    } else {
        m[n - 1][n - 1]
    }
}
