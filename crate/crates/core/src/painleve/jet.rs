//! Truncated Taylor series in `t`: `f(t₀+ε) = Σ c_k ε^k`, `k < ORDER`.

use astro_float::BigFloat;

use super::real::Prec;
use crate::error::{Error, Result};

/// Coefficients carried. Four derivatives are needed downstream; one more
/// is kept as guard against the order lost by [`Jet::deriv`].
pub const ORDER: usize = 6;

#[derive(Debug, Clone)]
pub struct Jet {
    pub c: Vec<BigFloat>,
}

impl Jet {
    pub fn constant(p: &Prec, x: BigFloat) -> Jet {
        let mut c = vec![p.int(0); ORDER];
        c[0] = x;
        Jet { c }
    }

    pub fn variable(p: &Prec, t0: BigFloat) -> Jet {
        let mut j = Jet::constant(p, t0);
        j.c[1] = p.int(1);
        j
    }

    pub fn value(&self) -> &BigFloat {
        &self.c[0]
    }

    /// The `k`-th derivative at `t₀`.
    pub fn derivative(&self, p: &Prec, k: usize) -> BigFloat {
        let fact: i64 = (1..=k as i64).product();
        p.mul(&self.c[k], &p.int(fact))
    }

    pub fn add(&self, p: &Prec, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| p.add(a, b)).collect() }
    }

    pub fn sub(&self, p: &Prec, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| p.sub(a, b)).collect() }
    }

    pub fn scale(&self, p: &Prec, x: &BigFloat) -> Jet {
        Jet { c: self.c.iter().map(|a| p.mul(a, x)).collect() }
    }

    pub fn add_const(&self, p: &Prec, x: &BigFloat) -> Jet {
        let mut j = self.clone();
        j.c[0] = p.add(&j.c[0], x);
        j
    }

    pub fn mul(&self, p: &Prec, o: &Jet) -> Jet {
        let c = (0..ORDER)
            .map(|k| (0..=k).fold(p.int(0), |acc, i| p.add(&acc, &p.mul(&self.c[i], &o.c[k - i]))))
            .collect();
        Jet { c }
    }

    pub fn recip(&self, p: &Prec) -> Result<Jet> {
        if self.c[0].is_zero() {
            return Err(Error::Singular("reciprocal of a jet with zero value".into()));
        }
        let mut g: Vec<BigFloat> = Vec::with_capacity(ORDER);
        g.push(p.div(&p.int(1), &self.c[0]));
        for k in 1..ORDER {
            let s = (1..=k).fold(p.int(0), |acc, j| p.add(&acc, &p.mul(&self.c[j], &g[k - j])));
            g.push(p.div(&s, &self.c[0]).neg());
        }
        Ok(Jet { c: g })
    }

    pub fn div(&self, p: &Prec, o: &Jet) -> Result<Jet> {
        Ok(self.mul(p, &o.recip(p)?))
    }

    /// Principal square root; the value must be positive.
    pub fn sqrt(&self, p: &Prec) -> Result<Jet> {
        if self.c[0].is_zero() || super::real::is_negative(&self.c[0]) {
            return Err(Error::Domain("square root of a nonpositive jet".into()));
        }
        let mut g: Vec<BigFloat> = Vec::with_capacity(ORDER);
        g.push(p.sqrt(&self.c[0]));
        let two_g0 = p.mul(&p.int(2), &g[0]);
        for k in 1..ORDER {
            let s = (1..k).fold(p.int(0), |acc, j| p.add(&acc, &p.mul(&g[j], &g[k - j])));
            g.push(p.div(&p.sub(&self.c[k], &s), &two_g0));
        }
        Ok(Jet { c: g })
    }

    pub fn powi(&self, p: &Prec, e: u32) -> Jet {
        (0..e).fold(Jet::constant(p, p.int(1)), |acc, _| acc.mul(p, self))
    }

    /// `d/dt`; the top coefficient becomes unknown and is set to zero.
    pub fn deriv(&self, p: &Prec) -> Jet {
        let mut c: Vec<BigFloat> = (1..ORDER).map(|k| p.mul(&self.c[k], &p.int(k as i64))).collect();
        c.push(p.int(0));
        Jet { c }
    }
}
