use num_traits::{One, Zero};

use super::{Rational, RationalMatrix};

/// Monic characteristic polynomial `det(tI - M)`, coefficients constant
/// first, by the Faddeev-LeVerrier recurrence
/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn charpoly_rational(m: &RationalMatrix) -> Vec<Rational> {
    let n = m.n();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RationalMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        let trace = m.mul(&next).trace();
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
        mk = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn two_by_two() {
        let id = RationalMatrix::from_ints(2, &[1, 0, 0, 1]).unwrap();
        assert_eq!(charpoly_rational(&id), ints(&[1, -2, 1]));
        let swap = RationalMatrix::from_ints(2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(charpoly_rational(&swap), ints(&[-1, 0, 1]));
    }

    #[test]
    fn one_by_one() {
        let m = RationalMatrix::from_ints(1, &[7]).unwrap();
        assert_eq!(charpoly_rational(&m), ints(&[-7, 1]));
    }
}
