//! Dense univariate polynomials over a finite field, reduction modulo the
//! vanishing polynomial `T^q - T`, and the reduced representatives `G(T)`
//! and `H(T)` of `(T^2 + T + 1)^(q-2)`.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::characters::chi3_bracket;
use crate::field::{FieldCtx, FieldElem};
use crate::report::{ClaimId, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials over different fields")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("q = {0} is not an odd prime power congruent to 2 mod 3")]
    Hypothesis(u64),
}

/// Coefficients indexed by exponent, trailing zeros trimmed; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FieldElem>,
}

impl DensePoly {
    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> Result<Self, PolyError> {
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    fn from_trusted(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(FieldElem::is_zero) {
            coeffs.pop();
        }
        Self {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    /// Integer coefficients mapped into the prime subfield, constant first.
    pub fn from_ints(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Self {
        Self::from_trusted(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_trusted(ctx, Vec::new())
    }

    pub fn constant(c: FieldElem) -> Self {
        let ctx = Arc::clone(c.ctx());
        Self::from_trusted(&ctx, vec![c])
    }

    /// `c * T^deg`.
    pub fn monomial(c: FieldElem, deg: usize) -> Self {
        let ctx = Arc::clone(c.ctx());
        let mut coeffs = vec![ctx.zero(); deg];
        coeffs.push(c);
        Self::from_trusted(&ctx, coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `T^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::from_trusted(&self.ctx, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Ok(Self::from_trusted(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::from_trusted(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::from_trusted(&self.ctx, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut out = vec![self.ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_trusted(&self.ctx, out))
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check(divisor)?;
        let d = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let lead_inv = divisor.coeffs[d].inv().expect("leading coefficient is nonzero");
        let mut quot = vec![self.ctx.zero(); rem.len() - d];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * b);
            }
            quot[shift] = c;
        }
        rem.truncate(d);
        Ok((
            Self::from_trusted(&self.ctx, quot),
            Self::from_trusted(&self.ctx, rem),
        ))
    }

    pub fn poly_mod(&self, modulus: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(modulus)?.1)
    }

    /// `self^e mod modulus` by square-and-multiply, reducing after every
    /// product.
    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Result<Self, PolyError> {
        let one = Self::constant(self.ctx.one());
        let mut acc = one.poly_mod(modulus)?;
        let mut base = self.poly_mod(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.poly_mod(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.poly_mod(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem, PolyError> {
        if x.ctx() != &self.ctx {
            return Err(PolyError::ContextMismatch);
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| &(&acc * x) + c))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.poly_mod(&b)?;
            a = b;
            b = r;
        }
        Ok(match a.coeffs.last() {
            None => a,
            Some(lead) => a.scale(&lead.inv().expect("nonzero")),
        })
    }

    /// Coefficientwise derivative; the multiplier `k` is taken mod p.
    pub fn formal_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &self.ctx.from_int(k as i64) * c)
            .collect();
        Self::from_trusted(&self.ctx, coeffs)
    }
}

impl fmt::Display for DensePoly {
    /// Comma-separated coefficients, constant first; `0` for the zero
    /// polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `T^q - T`, which vanishes at every point of F_q.
pub fn vanishing_poly(ctx: &Arc<FieldCtx>) -> DensePoly {
    let q = ctx.order() as usize;
    DensePoly::monomial(ctx.one(), q)
        .sub(&DensePoly::monomial(ctx.one(), 1))
        .expect("same field")
}

/// `T^2 + T + 1`.
pub fn quadratic_form_poly(ctx: &Arc<FieldCtx>) -> DensePoly {
    DensePoly::from_ints(ctx, &[1, 1, 1])
}

/// True iff `a(x) = b(x)` at every x in F_q, by evaluation at all q points.
pub fn pointwise_equiv(a: &DensePoly, b: &DensePoly) -> Result<bool, PolyError> {
    a.check(b)?;
    for x in a.ctx.elements() {
        if a.eval(&x)? != b.eval(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `a - b` is divisible by `T^q - T`.
pub fn congruent_mod_vanishing(a: &DensePoly, b: &DensePoly) -> Result<bool, PolyError> {
    Ok(a.sub(b)?.poly_mod(&vanishing_poly(&a.ctx))?.is_zero())
}

fn check_hypothesis(ctx: &FieldCtx) -> Result<(), PolyError> {
    let q = ctx.order();
    if q % 2 == 1 && q % 3 == 2 {
        Ok(())
    } else {
        Err(PolyError::Hypothesis(q))
    }
}

/// Shared middle section of `G` and `H`: `(1/3) * bracket(k)` at `T^(k-1)`
/// for `k = 2..=q-2`, then `1/3` at `T^(q-2)`.
fn g_h_body(ctx: &Arc<FieldCtx>, third: &FieldElem) -> Vec<FieldElem> {
    let q = ctx.order() as i64;
    let mut coeffs = vec![ctx.zero()];
    for k in 2..=q - 2 {
        coeffs.push(&ctx.from_int(chi3_bracket(k)) * third);
    }
    coeffs.push(third.clone());
    coeffs
}

fn one_third(ctx: &Arc<FieldCtx>) -> FieldElem {
    ctx.from_int(3).inv().expect("3 is a unit when p > 3")
}

/// `G(T) = 1 + (1/3) sum_{k=2}^{q-2} (chi3(k) + chi3(1-k)) T^(k-1)
///        + (1/3) T^(q-2) - (2/3) T^(q-1)`.
pub fn build_g(ctx: &Arc<FieldCtx>) -> Result<DensePoly, PolyError> {
    check_hypothesis(ctx)?;
    let third = one_third(ctx);
    let mut coeffs = g_h_body(ctx, &third);
    coeffs[0] = ctx.one();
    coeffs.push(-&(&ctx.from_int(2) * &third));
    Ok(DensePoly::from_trusted(ctx, coeffs))
}

/// `H(T) = 1/3 + (1/3) sum_{k=2}^{q-2} (chi3(k) + chi3(1-k)) T^(k-1)
///        + (1/3) T^(q-2)`, of degree `q - 2`.
pub fn build_h(ctx: &Arc<FieldCtx>) -> Result<DensePoly, PolyError> {
    check_hypothesis(ctx)?;
    let third = one_third(ctx);
    let mut coeffs = g_h_body(ctx, &third);
    coeffs[0] = third;
    Ok(DensePoly::from_trusted(ctx, coeffs))
}

/// `H(T) = G(T) - 2/3 + (2/3) T^(q-1)`.
pub fn h_from_g(g: &DensePoly) -> DensePoly {
    let ctx = g.ctx();
    let two_thirds = &ctx.from_int(2) * &one_third(ctx);
    let q = ctx.order() as usize;
    g.sub(&DensePoly::constant(two_thirds.clone()))
        .and_then(|h| h.add(&DensePoly::monomial(two_thirds, q - 1)))
        .expect("same field")
}

/// Checks `(T^2 + T + 1)^(q-2) ~ G(T)` along both routes: the congruence
/// modulo `T^q - T` and pointwise agreement at all q points. Also checks
/// `(T^2+T+1)^2 G == T^2+T+1 (mod T^q - T)` and that `T^2 + T + 1` has no
/// root in F_q.
pub fn verify_lemma21(ctx: &Arc<FieldCtx>) -> VerificationReport {
    let start = Instant::now();
    let q = ctx.order();
    let params = [
        ("p", ctx.characteristic() as i64),
        ("q", q as i64),
        ("r", ctx.degree() as i64),
    ];
    let g = match build_g(ctx) {
        Ok(g) => g,
        Err(e) => {
            return VerificationReport::precondition_failed(
                ClaimId::ReducedPower,
                &params,
                e,
                "q odd prime power, q = 2 mod 3",
            )
            .with_elapsed(start)
        }
    };
    let base = quadratic_form_poly(ctx);
    let vanishing = vanishing_poly(ctx);

    let congruence = {
        let lhs = base.powmod(q - 2, &vanishing).expect("nonzero modulus");
        let rhs = g.poly_mod(&vanishing).expect("nonzero modulus");
        lhs == rhs
    };
    let pointwise = ctx.elements().iter().all(|x| {
        let v = base.eval(x).expect("same field");
        v.pow(q - 2) == g.eval(x).expect("same field")
    });
    let intermediate = {
        let lhs = base
            .mul(&base)
            .and_then(|b2| b2.mul(&g))
            .and_then(|prod| prod.poly_mod(&vanishing))
            .expect("same field");
        let frob = base.powmod(q, &vanishing).expect("nonzero modulus");
        lhs == base && frob == base
    };
    let rootless = ctx
        .elements()
        .iter()
        .all(|x| !base.eval(x).expect("same field").is_zero())
        && !ctx.from_int(-3).is_square()
        && base.gcd(&vanishing).expect("same field").degree() == Some(0);

    let verdict = |ok: bool| if ok { "ok" } else { "fail" };
    let computed = format!(
        "congruence={},pointwise={},intermediate={},rootless={}",
        verdict(congruence),
        verdict(pointwise),
        verdict(intermediate),
        verdict(rootless)
    );
    VerificationReport::new(
        ClaimId::ReducedPower,
        &params,
        computed,
        "congruence=ok,pointwise=ok,intermediate=ok,rootless=ok",
    )
    .with_elapsed(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_extension_field, make_prime_field};

    fn f5() -> Arc<FieldCtx> {
        make_prime_field(5).unwrap()
    }

    #[test]
    fn ring_operations() {
        let f = f5();
        let a = DensePoly::from_ints(&f, &[1, 1]);
        let b = DensePoly::from_ints(&f, &[-1, 1]);
        assert_eq!(a.mul(&b).unwrap(), DensePoly::from_ints(&f, &[-1, 0, 1]));
        let t2 = DensePoly::from_ints(&f, &[0, 0, 1]);
        let t = DensePoly::from_ints(&f, &[0, 1]);
        assert!(t2.poly_mod(&t).unwrap().is_zero());
        let t5 = DensePoly::from_ints(&f, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(t5.poly_mod(&vanishing_poly(&f)).unwrap(), t);
        assert_eq!(
            t.poly_mod(&DensePoly::zero(&f)),
            Err(PolyError::DivisionByZero)
        );
        let g = DensePoly::from_ints(&make_prime_field(7).unwrap(), &[1]);
        assert_eq!(a.add(&g), Err(PolyError::ContextMismatch));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let f = f5();
        let p = DensePoly::from_ints(&f, &[1, 2, 0, 5]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(DensePoly::from_ints(&f, &[0, 0]).degree(), None);
        let x = DensePoly::from_ints(&f, &[0, 1, 3]);
        assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let f = f5();
        let base = quadratic_form_poly(&f);
        let v = vanishing_poly(&f);
        let mut direct = DensePoly::from_ints(&f, &[1]);
        for _ in 0..3 {
            direct = direct.mul(&base).unwrap();
        }
        let direct = direct.poly_mod(&v).unwrap();
        assert_eq!(direct, DensePoly::from_ints(&f, &[1, 1, 2, 2, 1]));
        assert_eq!(base.powmod(3, &v).unwrap(), direct);
        assert_eq!(base.powmod(0, &v).unwrap(), DensePoly::from_ints(&f, &[1]));
        assert_eq!(base.powmod(1, &v).unwrap(), base);
    }

    #[test]
    fn evaluation() {
        let f = f5();
        let base = quadratic_form_poly(&f);
        assert_eq!(base.eval(&f.from_int(1)).unwrap(), f.from_int(3));
        assert!(DensePoly::zero(&f).eval(&f.from_int(2)).unwrap().is_zero());
        for ctx in [f5(), make_extension_field(5, 3).unwrap()] {
            let v = vanishing_poly(&ctx);
            assert!(ctx.elements().iter().all(|x| v.eval(x).unwrap().is_zero()));
        }
    }

    #[test]
    fn equivalence_routes() {
        let f = f5();
        let tq = DensePoly::monomial(f.one(), 5);
        let t = DensePoly::monomial(f.one(), 1);
        assert!(pointwise_equiv(&tq, &t).unwrap());
        assert!(congruent_mod_vanishing(&tq, &t).unwrap());
        let t1 = DensePoly::from_ints(&f, &[1, 1]);
        assert!(!pointwise_equiv(&t, &t1).unwrap());
        assert!(!congruent_mod_vanishing(&t, &t1).unwrap());
    }

    #[test]
    fn g_and_h_for_q5() {
        let f = f5();
        let g = build_g(&f).unwrap();
        assert_eq!(g, DensePoly::from_ints(&f, &[1, 1, 2, 2, 1]));
        assert_eq!(g.degree(), Some(4));
        let h = build_h(&f).unwrap();
        assert_eq!(h, DensePoly::from_ints(&f, &[2, 1, 2, 2]));
        assert_eq!(h.degree(), Some(3));
        assert_eq!(h_from_g(&g), h);
        let base = quadratic_form_poly(&f).powmod(3, &vanishing_poly(&f)).unwrap();
        assert!(pointwise_equiv(&base, &g).unwrap());
    }

    #[test]
    fn h_agrees_with_g_off_zero() {
        for ctx in [make_prime_field(11).unwrap(), make_extension_field(5, 3).unwrap()] {
            let g = build_g(&ctx).unwrap();
            let h = build_h(&ctx).unwrap();
            assert_eq!(h_from_g(&g), h);
            assert_eq!(h.degree(), Some(ctx.order() as usize - 2));
            for x in ctx.enumerate_nonzero() {
                assert_eq!(g.eval(&x).unwrap(), h.eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn g_rejects_bad_q() {
        assert_eq!(
            build_g(&make_prime_field(7).unwrap()),
            Err(PolyError::Hypothesis(7))
        );
        assert_eq!(
            build_h(&make_extension_field(3, 2).unwrap()),
            Err(PolyError::Hypothesis(9))
        );
    }

    #[test]
    fn derivative() {
        let f = f5();
        // d/dT (T^4 - 1) = 4 T^3 = -T^3.
        let s = DensePoly::from_ints(&f, &[-1, 0, 0, 0, 1]);
        assert_eq!(s.formal_derivative(), DensePoly::from_ints(&f, &[0, 0, 0, -1]));
        assert!(DensePoly::from_ints(&f, &[3]).formal_derivative().is_zero());
        assert_eq!(
            DensePoly::from_ints(&f, &[0, 0, 1]).formal_derivative(),
            DensePoly::from_ints(&f, &[0, 2])
        );
        // T^5 has derivative 5 T^4 = 0 in characteristic 5.
        assert!(DensePoly::monomial(f.one(), 5).formal_derivative().is_zero());
    }

    #[test]
    fn lemma21_reports() {
        let ok = verify_lemma21(&f5());
        assert!(ok.matched, "{ok:?}");
        let ok11 = verify_lemma21(&make_prime_field(11).unwrap());
        assert!(ok11.matched, "{ok11:?}");
        let bad = verify_lemma21(&make_prime_field(7).unwrap());
        assert!(!bad.matched);
        assert!(bad.computed.starts_with("precondition failed"));
    }

    #[test]
    fn display() {
        let f = f5();
        assert_eq!(DensePoly::from_ints(&f, &[1, 0, 4]).to_string(), "1,0,4");
        assert_eq!(DensePoly::zero(&f).to_string(), "0");
    }
}
