//! Generalized Umemura polynomials: exact construction by several
//! independent routes, a verifier for the bilinear identities they satisfy,
//! and high-precision residual checks against Painlevé VI.
//!
//! The crate is organised bottom-up:
//!
//! * [`ring`]: rationals, sparse polynomials over the alphabet
//!   `z, w, a, b, b1, b2, v`, the quotient by `w² = z² + 1`, the
//!   `x`-derivation and Hirota operator, determinants and evaluation.
//! * [`combinatorics`]: index sets `[n;m]`, subset weights, parameter
//!   chains, Frobenius symbols and the partial-fraction coefficients.
//! * [`families`]: every polynomial family, plus an on-disk cache.
//! * [`lab`]: the identity catalog and its reports.
//! * [`painleve`]: numeric residuals of the σ-form and of Painlevé VI.
//! * [`codec`]: canonical JSON for polynomials.

pub mod codec;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod families;
pub mod lab;
pub mod painleve;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{Monomial, Poly, Rational, ReducedPoly, Var};
