//! Exact determinants over finite fields and the rationals.
//!
//! The crate builds the matrix families
//! `T_q = [1 / (a_i^2 - a_i a_j + a_j^2)]` over F_q, `S_p`, `A_p` and
//! `C_p(lambda)` over the integers and rationals, evaluates their
//! determinants exactly, and checks the closed forms and residue claims
//! about them instance by instance. Every check produces a
//! [`VerificationReport`]; the `ffdet` binary streams those as JSON lines.

pub mod arith;
pub mod characters;
pub mod claims;
pub mod field;
pub mod harness;
pub mod lemmas;
pub mod linalg;
pub mod polyring;
pub mod report;

pub use characters::Sign;
pub use field::{make_extension_field, make_prime_field, FieldCtx, FieldElem};
pub use linalg::{Rational, RationalMatrix, SquareMatrix};
pub use polyring::DensePoly;
pub use report::{ClaimId, VerificationReport};
