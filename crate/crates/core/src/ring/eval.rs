//! Evaluation of polynomials over ℚ and over word-sized prime fields, in the
//! free ring and in the quotient by `w² = z² + 1`.
//!
//! Quotient evaluation never takes a square root: a class is carried as a
//! pair `(x0, x1)` standing for `x0 + w·x1`, with `w²` replaced by the value
//! of `z² + 1`. A class is zero iff both components vanish.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::monomial::{Var, NVARS};
use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; `None` for zero.
pub fn modinv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes strictly below `bound`, descending.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = bound - 1;
    while out.len() < count && n > 2 {
        if is_probable_prime(n) {
            out.push(n);
        }
        n -= 1;
    }
    out
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Field interface shared by exact rational and modular evaluation.
pub trait ScalarField: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    /// Value of a whole polynomial, in the quotient ring when `quotient` is
    /// set (then `x1` carries the odd-in-`w` part).
    fn eval_poly(&self, p: &Poly, point: &[Option<Self::Elem>; NVARS], quotient: bool) -> Result<QuotientValue<Self::Elem>>
    where
        Self: Sized,
    {
        if quotient {
            generic_eval_quotient(self, p, point)
        } else {
            Ok(QuotientValue { x0: generic_eval_in(self, p, point)?, x1: self.zero() })
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut r = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl ScalarField for RationalField {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn eval_poly(&self, p: &Poly, point: &[Option<Rational>; NVARS], quotient: bool) -> Result<QuotientValue<Rational>> {
        integer_eval(p, point, quotient)
    }
}

/// Exact evaluation over a common denominator: every term becomes an integer
/// product `n^e · d^(D−e)`, so no gcd is taken until the final two fractions.
fn integer_eval(p: &Poly, point: &[Option<Rational>; NVARS], quotient: bool) -> Result<QuotientValue<Rational>> {
    let mut rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut den = p.denominator_lcm();
    let lcm = den.clone();
    let mut table = |n: BigInt, d: BigInt, deg: usize| -> Vec<BigInt> {
        let mut np = vec![BigInt::one()];
        let mut dp = vec![BigInt::one()];
        for i in 1..=deg {
            np.push(&np[i - 1] * &n);
            dp.push(&dp[i - 1] * &d);
        }
        den *= &dp[deg];
        (0..=deg).map(|e| &np[e] * &dp[deg - e]).collect()
    };
    for v in Var::ALL {
        let deg = p.degree(v) as usize;
        if deg == 0 || (quotient && v == Var::W) {
            continue;
        }
        let x = point[v.index()].as_ref().ok_or(Error::Unbound(v.name()))?;
        rows.push((v.index(), table(x.numer().clone(), x.denom().clone(), deg)));
    }
    let w2row = if quotient {
        let z = point[Var::Z.index()].as_ref().ok_or(Error::Unbound("z"))?;
        let (n, d) = (z.numer(), z.denom());
        Some(table(n * n + d * d, d * d, p.degree(Var::W) as usize / 2))
    } else {
        None
    };
    let (mut x0, mut x1) = (BigInt::zero(), BigInt::zero());
    for (m, c) in p.terms() {
        let mut t = c.numer() * (&lcm / c.denom());
        for (i, row) in &rows {
            t *= &row[m.0[*i] as usize];
        }
        let we = m.exp(Var::W) as usize;
        match &w2row {
            Some(row) => {
                t *= &row[we / 2];
                if we.is_multiple_of(2) {
                    x0 += t;
                } else {
                    x1 += t;
                }
            }
            None => x0 += t,
        }
    }
    Ok(QuotientValue { x0: Rational::new(x0, den.clone()), x1: Rational::new(x1, den) })
}

/// ℤ/pℤ for a prime `p < 2⁶³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModField {
    pub p: u64,
}

impl ScalarField for ModField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        modinv(*a, self.p)
    }
    fn from_rational(&self, q: &Rational) -> Result<u64> {
        let num = big_mod(q.numer(), self.p);
        let den = big_mod(q.denom(), self.p);
        let inv = modinv(den, self.p).ok_or(Error::BadPrime(self.p))?;
        Ok(mulmod(num, inv, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Variable values for exact evaluation; unset variables must not occur.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assignment {
    values: [Option<Rational>; NVARS],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, v: Var, x: Rational) -> Self {
        self.values[v.index()] = Some(x);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values[v.index()].as_ref()
    }
}

/// Variable values modulo a prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ModAssignment {
    pub prime: u64,
    values: [Option<u64>; NVARS],
}

impl ModAssignment {
    pub fn new(prime: u64) -> Self {
        ModAssignment { prime, values: [None; NVARS] }
    }

    pub fn set(mut self, v: Var, x: u64) -> Self {
        self.values[v.index()] = Some(x % self.prime);
        self
    }

    pub fn get(&self, v: Var) -> Option<u64> {
        self.values[v.index()]
    }
}

/// Element `x0 + w·x1` of the quotient evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientValue<E> {
    pub x0: E,
    pub x1: E,
}

impl<E: Clone> QuotientValue<E> {
    pub fn scalar<F: ScalarField<Elem = E>>(field: &F, x: E) -> Self {
        QuotientValue { x0: x, x1: field.zero() }
    }
}

/// Per-variable power tables, so each monomial costs only table lookups.
struct PowerTable<E> {
    rows: Vec<Vec<E>>,
}

impl<E: Clone> PowerTable<E> {
    fn build<F: ScalarField<Elem = E>>(
        field: &F,
        p: &Poly,
        point: &[Option<E>; NVARS],
        skip: Option<Var>,
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(NVARS);
        for v in Var::ALL {
            let deg = if Some(v) == skip { 0 } else { p.degree(v) };
            let mut row = vec![field.one()];
            if deg > 0 {
                let x = point[v.index()].clone().ok_or(Error::Unbound(v.name()))?;
                for i in 1..=deg as usize {
                    let next = field.mul(&row[i - 1], &x);
                    row.push(next);
                }
            }
            rows.push(row);
        }
        Ok(PowerTable { rows })
    }
}

impl Poly {
    /// Evaluate in the free ring (every occurring variable must be bound).
    pub fn eval_in<F: ScalarField>(&self, field: &F, point: &[Option<F::Elem>; NVARS]) -> Result<F::Elem> {
        Ok(field.eval_poly(self, point, false)?.x0)
    }

    /// Evaluate the class modulo `w² − z² − 1`; the value of `w` in `point`
    /// is ignored and `z` must be bound.
    pub fn eval_quotient<F: ScalarField>(
        &self,
        field: &F,
        point: &[Option<F::Elem>; NVARS],
    ) -> Result<QuotientValue<F::Elem>> {
        field.eval_poly(self, point, true)
    }
}

impl Poly {
    /// Value of a polynomial even in both `z` and `w`, given `z²` and `w²`.
    pub fn eval_squares(&self, at: &Assignment, z2: &Rational, w2: &Rational) -> Result<Rational> {
        let mut halved = Poly::zero();
        for (m, c) in self.terms() {
            let (ze, we) = (m.exp(Var::Z), m.exp(Var::W));
            if ze % 2 != 0 || we % 2 != 0 {
                return Err(Error::Precondition(format!("odd power of z or w in {m}")));
            }
            halved.add_term(m.with_exp(Var::Z, ze / 2).with_exp(Var::W, we / 2), c.clone());
        }
        halved.eval(&at.clone().set(Var::Z, z2.clone()).set(Var::W, w2.clone()))
    }

    /// Exact value at a rational assignment.
    pub fn eval(&self, at: &Assignment) -> Result<Rational> {
        self.eval_in(&RationalField, &at.values)
    }

    /// Value modulo the assignment's prime; fails with [`Error::BadPrime`]
    /// when a coefficient denominator vanishes.
    pub fn eval_mod(&self, at: &ModAssignment) -> Result<u64> {
        self.eval_in(&ModField { p: at.prime }, &at.values)
    }
}

fn generic_eval_in<F: ScalarField>(field: &F, p: &Poly, point: &[Option<F::Elem>; NVARS]) -> Result<F::Elem> {
    let table = PowerTable::build(field, p, point, None)?;
    let mut acc = field.zero();
    for (m, c) in p.terms() {
        let mut t = field.from_rational(c)?;
        for (i, row) in table.rows.iter().enumerate() {
            let e = m.0[i] as usize;
            if e > 0 {
                t = field.mul(&t, &row[e]);
            }
        }
        acc = field.add(&acc, &t);
    }
    Ok(acc)
}

fn generic_eval_quotient<F: ScalarField>(
    field: &F,
    p: &Poly,
    point: &[Option<F::Elem>; NVARS],
) -> Result<QuotientValue<F::Elem>> {
    let table = PowerTable::build(field, p, point, Some(Var::W))?;
    let zv = point[Var::Z.index()].clone().ok_or(Error::Unbound("z"))?;
    let w2 = field.add(&field.mul(&zv, &zv), &field.one());
    let wdeg = p.degree(Var::W) as usize;
    let mut w2pows = vec![field.one()];
    for i in 1..=wdeg / 2 {
        let next = field.mul(&w2pows[i - 1], &w2);
        w2pows.push(next);
    }
    let mut x0 = field.zero();
    let mut x1 = field.zero();
    for (m, c) in p.terms() {
        let mut t = field.from_rational(c)?;
        for (i, row) in table.rows.iter().enumerate() {
            let e = m.0[i] as usize;
            if e > 0 && i != Var::W.index() {
                t = field.mul(&t, &row[e]);
            }
        }
        let we = m.exp(Var::W) as usize;
        t = field.mul(&t, &w2pows[we / 2]);
        if we.is_multiple_of(2) {
            x0 = field.add(&x0, &t);
        } else {
            x1 = field.add(&x1, &t);
        }
    }
    Ok(QuotientValue { x0, x1 })
}


/// Evaluate many polynomials modulo one prime at one point.
pub fn eval_mod_values(polys: &[&Poly], at: &ModAssignment) -> Result<Vec<u64>> {
    polys.iter().map(|p| p.eval_mod(at)).collect()
}

/// Reduce a rational to a residue, as used for constants in identities.
pub fn rational_mod(q: &Rational, p: u64) -> Result<u64> {
    ModField { p }.from_rational(q)
}

impl<E: Clone> QuotientValue<E> {
    pub fn add<F: ScalarField<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        QuotientValue { x0: f.add(&self.x0, &o.x0), x1: f.add(&self.x1, &o.x1) }
    }

    pub fn sub<F: ScalarField<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        QuotientValue { x0: f.sub(&self.x0, &o.x0), x1: f.sub(&self.x1, &o.x1) }
    }

    /// Product, given the value of `w² = z² + 1`.
    pub fn mul<F: ScalarField<Elem = E>>(&self, f: &F, o: &Self, w2: &E) -> Self {
        let x0 = f.add(&f.mul(&self.x0, &o.x0), &f.mul(w2, &f.mul(&self.x1, &o.x1)));
        let x1 = f.add(&f.mul(&self.x0, &o.x1), &f.mul(&self.x1, &o.x0));
        QuotientValue { x0, x1 }
    }

    /// Inverse via the conjugate `x0 − w·x1`; `None` when the norm vanishes.
    pub fn inv<F: ScalarField<Elem = E>>(&self, f: &F, w2: &E) -> Option<Self> {
        let norm = f.sub(&f.mul(&self.x0, &self.x0), &f.mul(w2, &f.mul(&self.x1, &self.x1)));
        let ni = f.inv(&norm)?;
        Some(QuotientValue { x0: f.mul(&self.x0, &ni), x1: f.neg(&f.mul(&self.x1, &ni)) })
    }

    pub fn is_zero<F: ScalarField<Elem = E>>(&self, f: &F) -> bool {
        f.is_zero(&self.x0) && f.is_zero(&self.x1)
    }
}
