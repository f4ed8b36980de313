use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::Rational;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Below this many term products a multiplication stays on one thread.
const PAR_MUL_THRESHOLD: usize = 1 << 14;

/// Sparse multivariate polynomial over ℚ in the fixed alphabet.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `c · v^e`.
    pub fn var_pow(v: Var, e: u16) -> Self {
        Self::monomial(Monomial::var(v, e), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Multiply every monomial by `m`.
    pub fn shift(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn integerized(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let l = self.denominator_lcm();
        let ts = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&l / c.denom())))
            .collect();
        (l, ts)
    }

    pub fn mul_with(&self, rhs: &Poly, exec: Exec) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        // Iterate over the longer operand in the outer (parallel) loop.
        let (outer, inner) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let (lo, lt) = outer.integerized();
        let (li, it) = inner.integerized();

        let accumulate = |mut acc: HashMap<Monomial, BigInt>, (m, c): &(Monomial, BigInt)| {
            for (m2, c2) in &it {
                let prod = c * c2;
                acc.entry(m.mul(m2))
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
            acc
        };
        let merge = |mut a: HashMap<Monomial, BigInt>, mut b: HashMap<Monomial, BigInt>| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            for (m, c) in b {
                a.entry(m).and_modify(|e| *e += &c).or_insert(c);
            }
            a
        };
        let exec = if lt.len() * it.len() < PAR_MUL_THRESHOLD { Exec::Sequential } else { exec };
        let acc = exec.fold(&lt, HashMap::new, accumulate, merge);

        let den = lo * li;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, den.clone())))
            .collect();
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, bindings: &[(Var, Poly)]) -> Poly {
        let mut bound: [Option<&Poly>; super::NVARS] = Default::default();
        for (v, p) in bindings {
            bound[v.index()] = Some(p);
        }
        let mut pow_cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::constant(c.clone());
            for (i, slot) in bound.iter().enumerate() {
                if let Some(p) = slot {
                    let e = m.0[i];
                    if e == 0 {
                        continue;
                    }
                    rest.0[i] = 0;
                    let pw = pow_cache
                        .entry((i, e))
                        .or_insert_with(|| p.pow(e as u32))
                        .clone();
                    factor = &factor * &pw;
                }
            }
            out += &factor.shift(&rest);
        }
        out
    }

    /// Formal partial derivative.
    pub fn derive(&self, v: Var) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] = e - 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (dm, dc) = match divisor.leading() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let t = lm.div(&dm).ok_or(Error::NonExactDivision)?;
            let c = lc / &dc;
            rem -= &divisor.shift(&t).scale(&c);
            quot.add_term(t, c);
        }
        Ok(quot)
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<F: Fn(&Rational) -> Rational>(&self, f: F) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Split by the power of `v`: returns `(e, coefficient)` pairs where each
    /// coefficient is free of `v`.
    pub fn collect_by(&self, v: Var) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            out.entry(e)
                .or_default()
                .add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Human-readable rendering, terms ordered by descending `w`-degree,
    /// then descending `z`-degree, then descending lex order on the rest.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(m1, _), (m2, _)| {
            m2.exp(Var::W)
                .cmp(&m1.exp(Var::W))
                .then(m2.exp(Var::Z).cmp(&m1.exp(Var::Z)))
                .then(m2.0.cmp(&m1.0))
        });
        let mut s = String::new();
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&format!("{abs}*{m}"));
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let (mut big, small) = if a.len() >= b.len() { (a.clone(), b) } else { (b.clone(), a) };
    big += small;
    big
});
binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out -= b;
    out
});
binop!(Mul, mul, |a, b| a.mul_with(b, Exec::Parallel));

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qi};

    fn z() -> Poly {
        Poly::var(Var::Z)
    }
    fn w() -> Poly {
        Poly::var(Var::W)
    }

    #[test]
    fn additive_inverse() {
        assert!((z() + (-z())).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = (z() + w()) * (z() - w());
        assert_eq!(p, z().pow(2) - w().pow(2));
    }

    #[test]
    fn binomial_cube() {
        let p = (z() + w()).pow(3);
        let expect = z().pow(3) + Poly::int(3) * z().pow(2) * w() + Poly::int(3) * z() * w().pow(2) + w().pow(3);
        assert_eq!(p, expect);
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn substitution_examples() {
        let a = Poly::var(Var::A);
        let b1 = Poly::var(Var::B1);
        let p = &a * &z();
        let s = p.substitute(&[(Var::A, Poly::int(-4) * b1.pow(2))]);
        assert_eq!(s, Poly::int(-4) * b1.pow(2) * z());

        let b = Poly::var(Var::B);
        let one = Poly::one();
        let u = (&b + &one) * w().pow(2) - (&a + &one) * z().pow(2);
        let swapped = u.substitute(&[(Var::A, b.clone()), (Var::B, a.clone())]);
        assert_eq!(swapped, (&a + &one) * w().pow(2) - (&b + &one) * z().pow(2));

        let v = Poly::var(Var::V);
        let zv = (Poly::int(2) - v.clone()).scale(&q(1, 4));
        assert_eq!(z().substitute(&[(Var::Z, zv.clone())]), zv);
    }

    #[test]
    fn derive_power() {
        let v = Poly::var(Var::V);
        assert_eq!(v.pow(2).derive(Var::V), Poly::int(2) * v);
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = Poly::var(Var::A);
        let f = (z() + w() + a.clone()).pow(3);
        let g = z() - a.scale(&q(1, 3)) + Poly::one();
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert!(matches!(
            (&prod + &Poly::one()).div_exact(&g),
            Err(Error::NonExactDivision)
        ));
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = Poly::var(Var::A);
        let f = (z() + w().scale(&q(2, 3)) + a.clone() + Poly::one()).pow(6);
        let g = (z() - w() + a.scale(&qi(5))).pow(5);
        assert_eq!(f.mul_with(&g, Exec::Parallel), f.mul_with(&g, Exec::Sequential));
    }

    #[test]
    fn text_form_orders_by_w_then_z() {
        let p = z().pow(2) + w().pow(2) + z() * w();
        assert_eq!(p.to_text(), "w^2 + z*w + z^2");
    }
}
