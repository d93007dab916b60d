use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use ffdet::claims::{
    build_cp, build_tp_rational, build_tq, carlitz_readings, check_theorem, det_tp_mod_p,
    predicted_det_tq, rational_mod_p,
};
use ffdet::field::make_extension_field;
use ffdet::harness::enumerate_valid_q;
use ffdet::linalg::det_field;
use ffdet::polyring::{
    congruent_mod_vanishing, pointwise_equiv, quadratic_form_poly, vanishing_poly,
};
use ffdet::report::VerificationReport;
use ffdet::{DensePoly, FieldCtx, SquareMatrix};

fn valid_fields(bound: u64) -> Vec<Arc<FieldCtx>> {
    enumerate_valid_q(bound)
        .unwrap()
        .into_iter()
        .map(|(p, r, _)| make_extension_field(p, r).unwrap())
        .collect()
}

fn random_matrix(ctx: &Arc<FieldCtx>, n: usize, codes: &[u64]) -> SquareMatrix {
    SquareMatrix::from_fn(ctx, n, |i, j| ctx.from_index(codes[i * n + j] % ctx.order()))
}

fn poly_from_codes(ctx: &Arc<FieldCtx>, codes: &[u64]) -> DensePoly {
    let coeffs = codes.iter().map(|&c| ctx.from_index(c % ctx.order())).collect();
    DensePoly::new(ctx, coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det_is_invariant_under_reordering(perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle()) {
        let ctx = make_extension_field(17, 1).unwrap();
        let tq = build_tq(&ctx).unwrap();
        prop_assert_eq!(tq.conjugate_by_permutation(&perm).det(), tq.det());
    }

    #[test]
    fn det_is_multiplicative(
        a in proptest::collection::vec(0u64..125, 16),
        b in proptest::collection::vec(0u64..125, 16),
        extension in any::<bool>(),
    ) {
        let ctx = if extension {
            make_extension_field(5, 3).unwrap()
        } else {
            make_extension_field(7, 1).unwrap()
        };
        let (ma, mb) = (random_matrix(&ctx, 4, &a), random_matrix(&ctx, 4, &b));
        prop_assert_eq!(det_field(&ma.mul(&mb)), &det_field(&ma) * &det_field(&mb));
    }

    #[test]
    fn pointwise_agreement_iff_congruence(
        a in proptest::collection::vec(0u64..5, 0..14),
        b in proptest::collection::vec(0u64..5, 0..14),
        copy in any::<bool>(),
    ) {
        let ctx = make_extension_field(5, 1).unwrap();
        let pa = poly_from_codes(&ctx, &a);
        // Adding a multiple of T^5 - T keeps the function on F_5 fixed.
        let pb = if copy {
            let shift = poly_from_codes(&ctx, &b).mul(&vanishing_poly(&ctx)).unwrap();
            pa.add(&shift).unwrap()
        } else {
            poly_from_codes(&ctx, &b)
        };
        let pointwise = pointwise_equiv(&pa, &pb).unwrap();
        prop_assert_eq!(pointwise, congruent_mod_vanishing(&pa, &pb).unwrap());
        if copy {
            prop_assert!(pointwise);
        }
    }
}

#[test]
fn rational_det_reduces_to_field_det() {
    for p in [5, 11, 17, 23] {
        let rational = ffdet::linalg::det_rational(&build_tp_rational(p).unwrap());
        assert_eq!(rational_mod_p(&rational, p), Some(det_tp_mod_p(p).unwrap()), "p = {p}");
    }
}

#[test]
fn q17_prediction_matches_elimination() {
    let ctx = make_extension_field(17, 1).unwrap();
    let det = det_field(&build_tq(&ctx).unwrap());
    assert_eq!(det.prime_subfield_value(), Some(predicted_det_tq(17).unwrap()));
    assert_eq!(predicted_det_tq(5), Ok(3));
    assert!(check_theorem(17).matched);
}

#[test]
fn reduced_vanishing_poly_and_its_derivative() {
    for ctx in valid_fields(200) {
        let q = ctx.order();
        let (quotient, rest) = vanishing_poly(&ctx).div_rem(&DensePoly::monomial(ctx.one(), 1)).unwrap();
        assert!(rest.is_zero());
        let mut expected = vec![0; q as usize];
        expected[0] = -1;
        expected[q as usize - 1] = 1;
        assert_eq!(quotient, DensePoly::from_ints(&ctx, &expected));
        let derivative = quotient.formal_derivative();
        for a in ctx.enumerate_nonzero() {
            assert!(quotient.eval(&a).unwrap().is_zero());
            assert_eq!(derivative.eval(&a).unwrap(), -a.inv().unwrap(), "q = {q}");
        }
    }
}

#[test]
fn quadratic_form_is_coprime_to_vanishing_poly() {
    for ctx in valid_fields(200) {
        let g = quadratic_form_poly(&ctx).gcd(&vanishing_poly(&ctx)).unwrap();
        assert_eq!(g, DensePoly::constant(ctx.one()), "q = {}", ctx.order());
    }
}

#[test]
fn nonzero_product_and_minus_three() {
    for ctx in valid_fields(343) {
        let product = ctx
            .enumerate_nonzero()
            .iter()
            .fold(ctx.one(), |acc, a| &acc * a);
        assert_eq!(product, ctx.from_int(-1), "q = {}", ctx.order());
        assert!(!ctx.from_int(-3).is_square(), "q = {}", ctx.order());
    }
}

#[test]
fn carlitz_small_case_against_minor_expansion() {
    // Coefficient of t^(n-k) in det(tI - C) is (-1)^k times the sum of the
    // k x k principal minors, each expanded along its first row.
    fn minor_det(m: &[Vec<i64>], rows: &[usize]) -> i64 {
        if rows.is_empty() {
            return 1;
        }
        let (first, rest) = (rows[0], &rows[1..]);
        let mut total = 0;
        for (k, &col) in rows.iter().enumerate() {
            let cols: Vec<usize> = rows.iter().copied().filter(|&c| c != col).collect();
            let sub: Vec<Vec<i64>> = rest
                .iter()
                .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
                .collect();
            let idx: Vec<usize> = (0..sub.len()).collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            total += sign * m[first][col] * minor_det(&sub, &idx);
        }
        total
    }
    let rows = build_cp(5, 0).unwrap().rows();
    let n = rows.len();
    let mut coeffs = vec![0i64; n + 1];
    for mask in 0u32..(1 << n) {
        let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = chosen.len();
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        coeffs[n - k] += sign * minor_det(&rows, &chosen);
    }
    let expected: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
    let (literal, linear) = carlitz_readings(5, 0);
    assert_eq!(literal, expected);
    assert_eq!(linear, expected);
}

#[test]
fn reports_round_trip_through_json() {
    for report in [check_theorem(5), check_theorem(7), check_theorem(125)] {
        let line = report.to_json_line();
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, report);
    }
}
