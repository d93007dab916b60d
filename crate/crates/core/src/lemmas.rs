//! Instance checks for the determinant closed form of `det[P(X_i Y_j)]`
//! and the two permutation-sign formulas.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{
    lerch_sign, multiplication_perm, perm_sign_bruteforce, sigma_inverse_sign,
    sigma_inverse_sign_bruteforce, sigma_inverse_sign_formula,
};
use crate::field::{make_prime_field, FieldCtx};
use crate::linalg::{cauchy_like_det, cauchy_like_direct, Rational, RingValue};
use crate::report::{ClaimId, VerificationReport};

pub const DEFAULT_SEED: u64 = 0x5eed_2021;
pub const DEFAULT_TRIALS: u64 = 100;
pub const LERCH_MAX_M: u64 = 60;

fn agreement(ok: u64, total: u64) -> (String, String) {
    (format!("agree={ok}/{total}"), format!("agree={total}/{total}"))
}

fn instance_agrees<T: RingValue>(coeffs: &[T], xs: &[T], ys: &[T]) -> bool {
    cauchy_like_det(coeffs, xs, ys).expect("equal lengths")
        == cauchy_like_direct(coeffs, xs, ys).expect("equal lengths")
}

/// Random instances over F_p with `1 <= n <= max_n` and uniformly random
/// coefficients, X and Y values (repeats included).
pub fn check_lemma22_field(p: u64, max_n: usize, trials: u64, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let ctx = make_prime_field(p).expect("odd prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_n);
        let mut draw = || -> Vec<_> { (0..n).map(|_| ctx.from_int(rng.gen_range(0..p as i64))).collect() };
        let (coeffs, xs, ys) = (draw(), draw(), draw());
        ok += instance_agrees(&coeffs, &xs, &ys) as u64;
    }
    let (computed, predicted) = agreement(ok, trials);
    VerificationReport::new(
        ClaimId::CauchyLikeDet,
        &[
            ("n_max", max_n as i64),
            ("p", p as i64),
            ("seed", seed as i64),
            ("trials", trials as i64),
        ],
        computed,
        predicted,
    )
    .with_elapsed(start)
}

/// Random instances over the rationals: numerators in `[-9, 9]`,
/// denominators in `[1, 9]`.
pub fn check_lemma22_rational(max_n: usize, trials: u64, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_n);
        let mut draw = || -> Vec<Rational> {
            (0..n)
                .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into()))
                .collect()
        };
        let (coeffs, xs, ys) = (draw(), draw(), draw());
        ok += instance_agrees(&coeffs, &xs, &ys) as u64;
    }
    let (computed, predicted) = agreement(ok, trials);
    VerificationReport::new(
        ClaimId::CauchyLikeDet,
        &[
            ("n_max", max_n as i64),
            ("rational", 1),
            ("seed", seed as i64),
            ("trials", trials as i64),
        ],
        computed,
        predicted,
    )
    .with_elapsed(start)
}

/// Every integer instance with `n <= max_n` and all coefficients, X and Y
/// values in `[-bound, bound]`.
pub fn check_lemma22_integer_grid(max_n: u32, bound: i64) -> VerificationReport {
    let start = Instant::now();
    let width = (2 * bound + 1) as u64;
    let mut total = 0u64;
    let mut ok = 0u64;
    for n in 1..=max_n as usize {
        let count = width.pow(3 * n as u32);
        let agree: u64 = (0..count)
            .into_par_iter()
            .map(|mut code| {
                let mut digits = [0i64; 27];
                for d in digits.iter_mut().take(3 * n) {
                    *d = (code % width) as i64 - bound;
                    code /= width;
                }
                let (coeffs, rest) = digits[..3 * n].split_at(n);
                let (xs, ys) = rest.split_at(n);
                instance_agrees(coeffs, xs, ys) as u64
            })
            .sum();
        total += count;
        ok += agree;
    }
    let (computed, predicted) = agreement(ok, total);
    VerificationReport::new(
        ClaimId::CauchyLikeDet,
        &[("bound", bound), ("grid", 1), ("n_max", max_n as i64)],
        computed,
        predicted,
    )
    .with_elapsed(start)
}

/// For every unit `a` mod `m`, the case formula against the cycle count of
/// `x -> a x`. Both sides list the signs in increasing `a`.
pub fn check_lerch(m: u64) -> VerificationReport {
    let start = Instant::now();
    let units: Vec<i64> = (0..m as i64)
        .filter(|&a| crate::arith::gcd(a as u64, m) == 1)
        .collect();
    let join = |signs: Vec<String>| signs.join(",");
    let brute = join(
        units
            .iter()
            .map(|&a| perm_sign_bruteforce(&multiplication_perm(a, m)).expect("bijection").to_string())
            .collect(),
    );
    let formula = join(
        units
            .iter()
            .map(|&a| lerch_sign(a, m).expect("unit").to_string())
            .collect(),
    );
    VerificationReport::new(ClaimId::LerchSign, &[("m", m as i64)], brute, formula).with_elapsed(start)
}

/// Sign of `a -> a^{-1}` on the nonzero elements: the actual permutation
/// and the sign of `j -> -j` on Z/(q-1), each against `(-1)^((q+1)/2)`.
pub fn check_inversion_sign(ctx: &Arc<FieldCtx>) -> VerificationReport {
    let start = Instant::now();
    let brute = sigma_inverse_sign_bruteforce(ctx);
    let lerch = sigma_inverse_sign(ctx);
    let formula = sigma_inverse_sign_formula(ctx.order());
    VerificationReport::new(
        ClaimId::InversionSign,
        &[
            ("p", ctx.characteristic() as i64),
            ("q", ctx.order() as i64),
            ("r", ctx.degree() as i64),
        ],
        format!("brute={brute},lerch={lerch}"),
        format!("brute={formula},lerch={formula}"),
    )
    .with_elapsed(start)
}
