//! Exact arithmetic kernel.

mod deriv;
mod det;
mod eval;
mod monomial;
mod poly;
mod quotient;

pub use deriv::{derive_x, hirota2};
pub use det::PolyMatrix;
pub use eval::{
    eval_mod_values, is_probable_prime, modinv, mulmod, powmod, primes_below, rational_mod, Assignment, ModAssignment,
    ModField, QuotientValue, RationalField, ScalarField,
};
pub use monomial::{Monomial, Var, NVARS};
pub use poly::Poly;
pub use quotient::ReducedPoly;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

/// `num / den` as a [`Rational`].
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Integer as a [`Rational`].
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
