//! Identities as `Σ c·∏ factors = Σ c·∏ factors`, checked symbolically in
//! the quotient ring or by exact evaluation at random points.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ring::{primes_below, q, ModField, Poly, QuotientValue, Rational, RationalField, ReducedPoly, ScalarField, Var, NVARS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// `points` random points modulo each of `primes` primes near 2⁶², plus
    /// one exact rational point.
    Modular { primes: usize, points: usize },
    RationalPoint { points: usize },
}

impl Mode {
    pub const MODULAR: Mode = Mode::Modular { primes: 3, points: 5 };

    pub fn parse(name: &str, trials: Option<usize>) -> Result<Mode> {
        match name {
            "symbolic" => Ok(Mode::Symbolic),
            "modular" => Ok(Mode::Modular { primes: 3, points: trials.unwrap_or(5).max(5) }),
            "rational_point" | "rational" => Ok(Mode::RationalPoint { points: trials.unwrap_or(20).max(1) }),
            _ => Err(Error::Precondition(format!("unknown mode {name:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => write!(f, "symbolic"),
            Mode::Modular { primes, points } => write!(f, "modular({primes}x{points})"),
            Mode::RationalPoint { points } => write!(f, "rational_point({points})"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Factor {
    Poly(Arc<Poly>),
    Inv(Arc<Poly>),
}

impl Factor {
    fn poly(&self) -> &Arc<Poly> {
        match self {
            Factor::Poly(p) | Factor::Inv(p) => p,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Holds,
    Fails(Value),
    Inconclusive(String),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }
}

/// `lhs = rhs`, each side a sum of products. With `free` set the identity is
/// meant in the polynomial ring itself: `w` is an independent variable.
#[derive(Debug, Clone, Default)]
pub struct Identity {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    pub free: bool,
}

pub fn p(poly: Poly) -> Factor {
    Factor::Poly(Arc::new(poly))
}

pub fn inv(poly: Poly) -> Factor {
    Factor::Inv(Arc::new(poly))
}

impl Identity {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn free_ring(mut self) -> Self {
        self.free = true;
        self
    }

    pub fn lhs(mut self, coeff: Rational, factors: Vec<Factor>) -> Self {
        self.lhs.push(Term { coeff, factors });
        self
    }

    pub fn rhs(mut self, coeff: Rational, factors: Vec<Factor>) -> Self {
        self.rhs.push(Term { coeff, factors });
        self
    }

    fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.free || v != Var::W)
            .filter(|&v| {
                v == Var::Z || self.lhs.iter().chain(&self.rhs).any(|t| t.factors.iter().any(|f| f.poly().uses(v)))
            })
            .collect()
    }

    /// Numerator of `lhs − rhs` over a common denominator, reduced unless
    /// the identity is a free-ring one.
    pub fn symbolic_residual(&self) -> ReducedPoly {
        if self.free {
            return ReducedPoly { p0: self.free_residual(), p1: Poly::zero() };
        }
        let side = |terms: &[Term], sign: i64| -> Vec<(ReducedPoly, ReducedPoly)> {
            terms
                .iter()
                .map(|t| {
                    let mut num = ReducedPoly::reduce(&Poly::constant(t.coeff.clone() * q(sign, 1)));
                    let mut den: Option<ReducedPoly> = None;
                    for f in &t.factors {
                        let r = f.poly().reduce();
                        match f {
                            Factor::Poly(_) => num = num.mul(&r),
                            Factor::Inv(_) => den = Some(den.map_or(r.clone(), |d| d.mul(&r))),
                        }
                    }
                    (num, den.unwrap_or_else(|| ReducedPoly::reduce(&Poly::one())))
                })
                .collect()
        };
        let mut fracs = side(&self.lhs, 1);
        fracs.extend(side(&self.rhs, -1));
        let one = ReducedPoly::reduce(&Poly::one());
        let mut acc: Option<(ReducedPoly, ReducedPoly)> = None;
        for (n, d) in fracs {
            acc = Some(match acc {
                None => (n, d),
                Some((an, ad)) if ad == one && d == one => (an.add(&n), ad),
                Some((an, ad)) => (an.mul(&d).add(&n.mul(&ad)), ad.mul(&d)),
            });
        }
        acc.map(|(n, _)| n).unwrap_or_default()
    }

    fn free_residual(&self) -> Poly {
        let side = |terms: &[Term], sign: i64| -> Vec<(Poly, Poly)> {
            terms
                .iter()
                .map(|t| {
                    let mut num = Poly::constant(t.coeff.clone() * q(sign, 1));
                    let mut den = Poly::one();
                    for f in &t.factors {
                        match f {
                            Factor::Poly(x) => num = &num * &**x,
                            Factor::Inv(x) => den = &den * &**x,
                        }
                    }
                    (num, den)
                })
                .collect()
        };
        let mut fracs = side(&self.lhs, 1);
        fracs.extend(side(&self.rhs, -1));
        let mut acc: Option<(Poly, Poly)> = None;
        for (n, d) in fracs {
            acc = Some(match acc {
                None => (n, d),
                Some((an, ad)) if ad == Poly::one() && d == Poly::one() => (&an + &n, ad),
                Some((an, ad)) => (&(&an * &d) + &(&n * &ad), &ad * &d),
            });
        }
        acc.map(|(n, _)| n).unwrap_or_default()
    }

    fn eval_side<F: ScalarField>(
        &self,
        field: &F,
        terms: &[Term],
        point: &[Option<F::Elem>; NVARS],
        cache: &mut HashMap<*const Poly, QuotientValue<F::Elem>>,
    ) -> Result<Option<QuotientValue<F::Elem>>> {
        let zv = point[Var::Z.index()].clone().expect("z is always sampled");
        let w2 = field.add(&field.mul(&zv, &zv), &field.one());
        let mut total = QuotientValue::scalar(field, field.zero());
        for t in terms {
            let mut acc = QuotientValue::scalar(field, field.from_rational(&t.coeff)?);
            for f in &t.factors {
                let key = Arc::as_ptr(f.poly());
                let v = match cache.get(&key) {
                    Some(v) => v.clone(),
                    None => {
                        let v = if self.free {
                            QuotientValue::scalar(field, f.poly().eval_in(field, point)?)
                        } else {
                            f.poly().eval_quotient(field, point)?
                        };
                        cache.insert(key, v.clone());
                        v
                    }
                };
                let v = match f {
                    Factor::Poly(_) => v,
                    Factor::Inv(_) => match v.inv(field, &w2) {
                        Some(i) => i,
                        None => return Ok(None),
                    },
                };
                acc = acc.mul(field, &v, &w2);
            }
            total = total.add(field, &acc);
        }
        Ok(Some(total))
    }

    /// Both sides at one point; `None` if a denominator vanishes there.
    pub fn eval_at<F: ScalarField>(
        &self,
        field: &F,
        point: &[Option<F::Elem>; NVARS],
    ) -> Result<Option<(QuotientValue<F::Elem>, QuotientValue<F::Elem>)>> {
        let mut cache = HashMap::new();
        let l = self.eval_side(field, &self.lhs, point, &mut cache)?;
        let r = self.eval_side(field, &self.rhs, point, &mut cache)?;
        Ok(l.zip(r))
    }

    pub fn check(&self, mode: Mode, seed: u64) -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match mode {
            Mode::Symbolic => {
                if self.symbolic_residual().is_zero() {
                    return Ok(Outcome::Holds);
                }
                // Any nonzero class is nonzero at almost every point.
                for _ in 0..32 {
                    if let out @ Outcome::Fails(_) = self.check_rational(&mut rng, 1)? {
                        return Ok(out);
                    }
                }
                Ok(Outcome::Fails(json!({"note": "symbolic residual is nonzero"})))
            }
            Mode::Modular { primes, points } => {
                for prime in primes_below(1 << 62, primes.max(1)) {
                    let out = self.check_modular(&mut rng, prime, points)?;
                    if !out.holds() {
                        return Ok(out);
                    }
                }
                self.check_rational(&mut rng, 1)
            }
            Mode::RationalPoint { points } => self.check_rational(&mut rng, points),
        }
    }

    fn check_rational(&self, rng: &mut ChaCha8Rng, points: usize) -> Result<Outcome> {
        let field = RationalField;
        let vars = self.vars();
        let mut done = 0;
        let mut attempts = 0;
        while done < points {
            attempts += 1;
            if attempts > 10 * points + 10 {
                return Ok(Outcome::Inconclusive(format!("{done} of {points} points avoided every singularity")));
            }
            let mut point: [Option<Rational>; NVARS] = Default::default();
            for &v in &vars {
                point[v.index()] = Some(random_rational(rng));
            }
            let Some((l, r)) = self.eval_at(&field, &point)? else { continue };
            done += 1;
            if l != r {
                return Ok(Outcome::Fails(witness(&vars, &point, None, (&l.x0, &l.x1), (&r.x0, &r.x1))));
            }
        }
        Ok(Outcome::Holds)
    }

    fn check_modular(&self, rng: &mut ChaCha8Rng, prime: u64, points: usize) -> Result<Outcome> {
        let field = ModField { p: prime };
        let vars = self.vars();
        let mut done = 0;
        let mut attempts = 0;
        while done < points {
            attempts += 1;
            if attempts > 10 * points + 10 {
                return Ok(Outcome::Inconclusive(format!("{done} of {points} points modulo {prime} were regular")));
            }
            let mut point: [Option<u64>; NVARS] = [None; NVARS];
            for &v in &vars {
                point[v.index()] = Some(rng.gen_range(1..prime));
            }
            let Some((l, r)) = self.eval_at(&field, &point)? else { continue };
            done += 1;
            if l != r {
                return Ok(Outcome::Fails(witness(&vars, &point, Some(prime), (&l.x0, &l.x1), (&r.x0, &r.x1))));
            }
        }
        Ok(Outcome::Holds)
    }
}

/// Small-height nonzero rational, `num ∈ [−40, 40]`, `den ∈ [1, 17]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-40..=40);
        if n != 0 {
            return q(n, rng.gen_range(1..=17));
        }
    }
}

fn witness<E: ToString>(vars: &[Var], point: &[Option<E>; NVARS], prime: Option<u64>, l: (&E, &E), r: (&E, &E)) -> Value {
    let mut at = Map::new();
    for &v in vars {
        if let Some(x) = &point[v.index()] {
            at.insert(v.name().into(), Value::String(x.to_string()));
        }
    }
    json!({
        "point": at,
        "prime": prime,
        "lhs": [l.0.to_string(), l.1.to_string()],
        "rhs": [r.0.to_string(), r.1.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qi;

    fn z() -> Poly {
        Poly::var(Var::Z)
    }
    fn w() -> Poly {
        Poly::var(Var::W)
    }

    #[test]
    fn pythagoras_holds_in_every_mode() {
        let id = Identity::new().lhs(qi(1), vec![p(w()), p(w())]).rhs(qi(1), vec![p(z().pow(2) + Poly::one())]);
        for mode in [Mode::Symbolic, Mode::MODULAR, Mode::RationalPoint { points: 5 }] {
            assert_eq!(id.check(mode, 1).unwrap(), Outcome::Holds, "{mode}");
        }
    }

    #[test]
    fn wrong_identity_has_witness() {
        let id = Identity::new().lhs(qi(1), vec![p(w().pow(2))]).rhs(qi(1), vec![p(z().pow(2))]);
        for mode in [Mode::Symbolic, Mode::MODULAR] {
            match id.check(mode, 3).unwrap() {
                Outcome::Fails(w) => assert!(w.get("lhs").is_some()),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn free_ring_identities_keep_w_independent() {
        let id = Identity::new().lhs(qi(1), vec![p(w()), p(w())]).rhs(qi(1), vec![p(z().pow(2) + Poly::one())]);
        let id = id.free_ring();
        assert!(matches!(id.check(Mode::Symbolic, 0).unwrap(), Outcome::Fails(_)));
        assert!(matches!(id.check(Mode::MODULAR, 0).unwrap(), Outcome::Fails(_)));
        let id = Identity::new().lhs(qi(1), vec![p(w() + z()), p(w() - z())]).rhs(qi(1), vec![p(w().pow(2) - z().pow(2))]);
        assert_eq!(id.free_ring().check(Mode::RationalPoint { points: 3 }, 0).unwrap(), Outcome::Holds);
    }

    #[test]
    fn inverses() {
        // (w + z)⁻¹ = w − z in the quotient.
        let id = Identity::new().lhs(qi(1), vec![inv(w() + z())]).rhs(qi(1), vec![p(w() - z())]);
        assert_eq!(id.check(Mode::Symbolic, 0).unwrap(), Outcome::Holds);
        assert_eq!(id.check(Mode::RationalPoint { points: 4 }, 0).unwrap(), Outcome::Holds);
        assert_eq!(id.check(Mode::MODULAR, 0).unwrap(), Outcome::Holds);
    }
}
