//! Coefficients `b_λ^{I,J}` of the partial-fraction expansion
//!
//! ```text
//! ∏_{λ∈I} (x+2+λ)/(x+2−λ) · ∏_{λ∈J} (x−λ)/(x+λ)
//!   + ∏_{λ∈I} (x−λ)/(x+λ) · ∏_{λ∈J} (x+2+λ)/(x+2−λ)
//!   = 2 + Σ_{λ∈I∪J} b_λ / ((x+2−λ)(x+λ))
//! ```
//!
//! and the one-sided pieces they split into.

use num_traits::{One, Zero};

use super::index_set::{weight_d, IndexSet};
use crate::error::{Error, Result};
use crate::ring::Rational;

fn ratio(num: i64, den: i64, lambda: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::Pole(lambda));
    }
    Ok(Rational::new(num.into(), den.into()))
}

/// `4λ(λ−1) ∏_{λ'∈I∖{λ}} (λ+λ')/(λ−λ') ∏_{λ'∈J} (λ−2−λ')/(λ−2+λ')`.
pub fn split_b(i_set: &[i64], j_set: &[i64], lambda: i64) -> Result<Rational> {
    if !i_set.contains(&lambda) || lambda == 1 {
        return Err(Error::Precondition(format!("split_b needs {lambda} in I and {lambda} != 1")));
    }
    let mut r = Rational::from_integer((4 * lambda * (lambda - 1)).into());
    for &l in i_set.iter().filter(|&&l| l != lambda) {
        r *= ratio(lambda + l, lambda - l, lambda)?;
    }
    for &l in j_set {
        r *= ratio(lambda - 2 - l, lambda - 2 + l, lambda)?;
    }
    Ok(r)
}

/// The coefficient `b_λ^{I,J}` for `λ ∈ I ∪ J`.
pub fn b_lambda(i_set: &[i64], j_set: &[i64], lambda: i64) -> Result<Rational> {
    let in_i = i_set.contains(&lambda);
    let in_j = j_set.contains(&lambda);
    if !in_i && !in_j {
        return Err(Error::Precondition(format!("{lambda} is in neither I nor J")));
    }
    if lambda == 1 {
        if !(in_i && in_j) {
            // Only a simple pole at x = −1 could appear, and its residues cancel.
            return Ok(Rational::zero());
        }
        let mut r = Rational::from_integer((-8).into());
        for &l in i_set.iter().chain(j_set).filter(|&&l| l != 1) {
            r *= ratio(1 + l, 1 - l, lambda)?;
        }
        return Ok(r);
    }
    let mut r = Rational::zero();
    if in_i {
        r += split_b(i_set, j_set, lambda)?;
    }
    if in_j {
        r += split_b(j_set, i_set, lambda)?;
    }
    Ok(r)
}

/// Left side of the expansion at a rational `x` (must avoid the poles).
pub fn lemma2_lhs(i_set: &[i64], j_set: &[i64], x: &Rational) -> Rational {
    let lin = |c: i64| x + Rational::from_integer(c.into());
    let mut t1 = Rational::one();
    let mut t2 = Rational::one();
    for &l in i_set {
        t1 *= lin(2 + l) / lin(2 - l);
        t2 *= lin(-l) / lin(l);
    }
    for &l in j_set {
        t1 *= lin(-l) / lin(l);
        t2 *= lin(2 + l) / lin(2 - l);
    }
    t1 + t2
}

/// Right side `2 + Σ b_λ/((x+2−λ)(x+λ))`.
pub fn lemma2_rhs(i_set: &[i64], j_set: &[i64], x: &Rational) -> Result<Rational> {
    let mut union: Vec<i64> = i_set.iter().chain(j_set).copied().collect();
    union.sort_unstable();
    union.dedup();
    let mut r = Rational::from_integer(2.into());
    for l in union {
        let den = (x + Rational::from_integer((2 - l).into())) * (x + Rational::from_integer(l.into()));
        r += b_lambda(i_set, j_set, l)? / den;
    }
    Ok(r)
}

/// Exponent `A` of the reflection sign: `1` for `λ ≤ n`, `−1` otherwise.
pub fn reflection_sign_exponent(set: &IndexSet, lambda: i64) -> i64 {
    if lambda <= set.n() as i64 {
        1
    } else {
        -1
    }
}

/// Both sides of the reflection identity for `Split`:
/// `Split(I,J,λ)·d(I)·d(J)` and `Split(I',J',λ)·d(I')·d(J')` with
/// `I' = [n;m]∖(I∖{λ})`, `J' = [n;m]∖(J∪{λ−2})`, without the sign factor.
/// Returns `None` outside the hypotheses (`λ∈I`, `λ≠1`, `λ−2∉J`).
pub fn lemma6_sides(set: &IndexSet, i_set: &[i64], j_set: &[i64], lambda: i64) -> Result<Option<(Rational, Rational)>> {
    if lambda == 1 || !i_set.contains(&lambda) || j_set.contains(&(lambda - 2)) {
        return Ok(None);
    }
    let els = set.elements();
    let i_prime: Vec<i64> = els
        .iter()
        .copied()
        .filter(|&x| !(i_set.contains(&x) && x != lambda))
        .collect();
    let j_prime: Vec<i64> = els
        .iter()
        .copied()
        .filter(|&x| !(j_set.contains(&x) || x == lambda - 2))
        .collect();
    let lhs = split_b(i_set, j_set, lambda)? * weight_d(els, i_set) * weight_d(els, j_set);
    let rhs = split_b(&i_prime, &j_prime, lambda)? * weight_d(els, &i_prime) * weight_d(els, &j_prime);
    Ok(Some((lhs, rhs)))
}
