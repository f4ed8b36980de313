//! Parameter map, the `t ↦ (z, w)` bridge, `h`-functions, `q_m`, and the
//! residuals of the σ-form and of Painlevé VI.

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use super::jet::Jet;
use super::real::{log10_abs, Prec};
use crate::error::{Error, Result};
use crate::families::{gen_umemura, umemura_u};
use crate::ring::{q, qi, Poly, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BValues {
    pub b: [Rational; 4],
}

impl BValues {
    pub fn new(b1: Rational, b2: Rational, b3: Rational, b4: Rational) -> Self {
        BValues { b: [b1, b2, b3, b4] }
    }
}

/// `(α, β, γ, δ)`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PVIParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

pub fn pvi_params(b: &BValues) -> PVIParams {
    let [b1, b2, b3, b4] = &b.b;
    let half = q(1, 2);
    PVIParams {
        alpha: &half * (b3 - b4) * (b3 - b4),
        beta: -&half * (b1 + b2) * (b1 + b2),
        gamma: &half * (b1 - b2) * (b1 - b2),
        delta: -&half * (b3 - b4) * (b3 + b4 - qi(2)),
    }
}

/// `t`, `v = (2t−1)/√(t(t−1))`, `z = √((v−2)/4)`, `w = √((v+2)/4)` as jets.
#[derive(Debug, Clone)]
pub struct Bridge {
    pub t: Jet,
    pub v: Jet,
    pub z: Jet,
    pub w: Jet,
}

pub fn t_bridge(p: &Prec, t: &Rational) -> Result<Bridge> {
    if *t <= qi(1) {
        return Err(Error::Domain(format!("t = {t} must exceed 1")));
    }
    let tj = Jet::variable(p, p.rational(t));
    let s = tj.mul(p, &tj.add_const(p, &p.int(-1)));
    let v = tj.scale(p, &p.int(2)).add_const(p, &p.int(-1)).div(p, &s.sqrt(p)?)?;
    let quarter = p.rational(&q(1, 4));
    let z2 = v.add_const(p, &p.int(-2)).scale(p, &quarter);
    let w2 = v.add_const(p, &p.int(2)).scale(p, &quarter);
    let z = z2.sqrt(p).map_err(|_| Error::Singular(format!("z = 0 at t = {t}")))?;
    Ok(Bridge { t: tj, v, z, w: w2.sqrt(p)? })
}

/// Value and first three `t`-derivatives.
#[derive(Debug, Clone)]
pub struct DerivStack {
    pub value: BigFloat,
    pub d1: BigFloat,
    pub d2: BigFloat,
    pub d3: BigFloat,
}

impl DerivStack {
    pub fn of(p: &Prec, j: &Jet) -> Self {
        DerivStack { value: j.value().clone(), d1: j.derivative(p, 1), d2: j.derivative(p, 2), d3: j.derivative(p, 3) }
    }
}

/// Substitute `a = −4b1²`, `b = −4b2²` and the given `b1, b2` exactly.
pub fn specialize(poly: &Poly, b1: &Rational, b2: &Rational) -> Poly {
    let a = Poly::constant(qi(-4) * b1 * b1);
    let b = Poly::constant(qi(-4) * b2 * b2);
    poly.substitute(&[(Var::A, a), (Var::B, b), (Var::B1, Poly::constant(b1.clone())), (Var::B2, Poly::constant(b2.clone()))])
}

/// A polynomial in `z, w` (after [`specialize`]) along the bridge.
pub fn poly_jet(p: &Prec, poly: &Poly, br: &Bridge) -> Result<Jet> {
    if let Some(v) = [Var::A, Var::B, Var::B1, Var::B2, Var::V].into_iter().find(|&v| poly.uses(v)) {
        return Err(Error::Precondition(format!("variable {} is not specialized", v.name())));
    }
    let zpow: Vec<Jet> = (0..=poly.degree(Var::Z)).map(|e| br.z.powi(p, e as u32)).collect();
    let wpow: Vec<Jet> = (0..=poly.degree(Var::W)).map(|e| br.w.powi(p, e as u32)).collect();
    let mut acc = Jet::constant(p, p.int(0));
    for (m, c) in poly.terms() {
        let term = zpow[m.exp(Var::Z) as usize].mul(p, &wpow[m.exp(Var::W) as usize]);
        acc = acc.add(p, &term.scale(p, &p.rational(c)));
    }
    Ok(acc)
}

pub fn u_stack(p: &Prec, poly: &Poly, t: &Rational) -> Result<DerivStack> {
    Ok(DerivStack::of(p, &poly_jet(p, poly, &t_bridge(p, t)?)?))
}

/// `h0` with `√(t−1)` in both terms, or the `√(t+1)` variant in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H0Form {
    #[default]
    Consistent,
    PlusOne,
}

pub fn h0_jet(p: &Prec, br: &Bridge, b1: &Rational, b2: &Rational, form: H0Form) -> Result<Jet> {
    let st = br.t.sqrt(p)?;
    let sm = br.t.add_const(p, &p.int(-1)).sqrt(p)?;
    let second = match form {
        H0Form::Consistent => sm.clone(),
        H0Form::PlusOne => br.t.add_const(p, &p.int(1)).sqrt(p)?,
    };
    let d = st.sub(p, &sm);
    let s = st.add(p, &second);
    let r = d.mul(p, &d).scale(p, &p.rational(&(b1 * b1))).add(p, &s.mul(p, &s).scale(p, &p.rational(&(b2 * b2))));
    Ok(r.scale(p, &p.rational(&q(1, 4))))
}

/// `t(t−1)·d/dt log U`.
pub fn log_derivative(p: &Prec, br: &Bridge, u: &Jet) -> Result<Jet> {
    let s = br.t.mul(p, &br.t.add_const(p, &p.int(-1)));
    s.mul(p, &u.deriv(p)).div(p, u).map_err(|_| Error::Singular("zero of tau".into()))
}

/// `h_{n,m}(b1, b2) = t(t−1)(log U_{n,m})' − h0`.
pub fn h_nm(p: &Prec, n: u32, m: u32, b1: &Rational, b2: &Rational, t: &Rational, form: H0Form) -> Result<Jet> {
    let br = t_bridge(p, t)?;
    let u = poly_jet(p, &specialize(&gen_umemura(n, m, 0), b1, b2), &br)?;
    Ok(log_derivative(p, &br, &u)?.sub(p, &h0_jet(p, &br, b1, b2, form)?))
}

/// Whether the σ-form's second bracket is squared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EviForm {
    #[default]
    Squared,
    Unsquared,
}

/// `h'[t(t−1)h'']² + [h'{2h−(2t−1)h'} + b1b2b3b4]^{2|1} − ∏(h'+b_k²)`.
pub fn evi_residual(p: &Prec, t: &Rational, h: &Jet, b: &BValues, form: EviForm) -> BigFloat {
    let tt = p.rational(t);
    let h0 = h.value().clone();
    let h1 = h.derivative(p, 1);
    let h2 = h.derivative(p, 2);
    let s = p.mul(&tt, &p.sub(&tt, &p.int(1)));
    let first = p.mul(&h1, &{
        let x = p.mul(&s, &h2);
        p.mul(&x, &x)
    });
    let inner = p.sub(&p.mul(&p.int(2), &h0), &p.mul(&p.sub(&p.mul(&p.int(2), &tt), &p.int(1)), &h1));
    let prod_b = b.b.iter().fold(qi(1), |acc, x| acc * x);
    let bracket = p.add(&p.mul(&h1, &inner), &p.rational(&prod_b));
    let second = match form {
        EviForm::Squared => p.mul(&bracket, &bracket),
        EviForm::Unsquared => bracket,
    };
    let rhs = b.b.iter().fold(p.int(1), |acc, bk| p.mul(&acc, &p.add(&h1, &p.rational(&(bk * bk)))));
    p.sub(&p.add(&first, &second), &rhs)
}

/// Which family `U_m` denotes in `q_m` and `h̄_{1,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QIndexing {
    /// `U_m = U_{0,m}`.
    Generalized,
    /// Umemura's `U_m = U_{0,m−1}`.
    Umemura,
}

impl QIndexing {
    pub fn member(self, m: u32) -> Poly {
        match self {
            QIndexing::Generalized => gen_umemura(0, m, 0),
            QIndexing::Umemura => umemura_u(m),
        }
    }
}

/// Reach of the `4U_m²` prefactor in `q_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QParse {
    /// Multiplies the whole brace.
    #[default]
    WholeBrace,
    /// Multiplies only the two log-derivative terms.
    LogTermsOnly,
}

/// `¼(b1² z/w + b2² w/z)`.
fn zw_term(p: &Prec, br: &Bridge, b1: &Rational, b2: &Rational) -> Result<Jet> {
    let zw = br.z.div(p, &br.w)?.scale(p, &p.rational(&(b1 * b1)));
    let wz = br.w.div(p, &br.z)?.scale(p, &p.rational(&(b2 * b2)));
    Ok(zw.add(p, &wz).scale(p, &p.rational(&q(1, 4))))
}

pub struct QmParts {
    pub q: Jet,
    pub log_up: Jet,
    pub zw: Jet,
}

pub fn q_m_parts(
    p: &Prec,
    m: u32,
    b1: &Rational,
    b2: &Rational,
    t: &Rational,
    indexing: QIndexing,
    parse: QParse,
) -> Result<QmParts> {
    if m < 1 {
        return Err(Error::Precondition("q_m needs m >= 1".into()));
    }
    let br = t_bridge(p, t)?;
    let u = |k: u32| poly_jet(p, &specialize(&indexing.member(k), b1, b2), &br);
    let (um, u0, up) = (u(m - 1)?, u(m)?, u(m + 1)?);
    let (lm, lp) = (log_derivative(p, &br, &u0)?, log_derivative(p, &br, &up)?);
    let mh = p.rational(&(qi(m as i64) + q(1, 2)));
    let mh3 = p.rational(&(qi(m as i64) + q(3, 2)));
    let logs = lp.scale(p, &mh).sub(p, &lm.scale(p, &mh3));
    let zw = zw_term(p, &br, b1, b2)?;
    let rest = zw.add_const(p, &p.rational(&(-q(1, 2) * b1 * b2)));
    let u0sq4 = u0.mul(p, &u0).scale(p, &p.int(4));
    let odd = p.int(((2 * m + 1) as i64).pow(2));
    let den = up.mul(p, &um).sub(p, &u0.mul(p, &u0).scale(p, &odd));
    if den.value().is_zero() {
        return Err(Error::Singular(format!("q_m denominator vanishes at t = {t}")));
    }
    let num = match parse {
        QParse::WholeBrace => u0sq4.mul(p, &logs.add(p, &rest)),
        QParse::LogTermsOnly => u0sq4.mul(p, &logs).add(p, &rest),
    };
    let q = num.div(p, &den)?.add(p, &br.t);
    Ok(QmParts { q, log_up: lp, zw })
}

/// Sign in front of the `β t/q²` term of Painlevé VI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSign {
    #[default]
    Plus,
    Minus,
}

/// `q'' − RHS` of Painlevé VI.
pub fn pvi_residual(p: &Prec, qj: &Jet, params: &PVIParams, t: &Rational, sign: BetaSign) -> BigFloat {
    let tt = p.rational(t);
    let q0 = qj.value().clone();
    let q1 = qj.derivative(p, 1);
    let q2 = qj.derivative(p, 2);
    let one = p.int(1);
    let inv = |x: &BigFloat| p.div(&one, x);
    let qm1 = p.sub(&q0, &one);
    let qmt = p.sub(&q0, &tt);
    let tm1 = p.sub(&tt, &one);
    let a = p.add(&p.add(&inv(&q0), &inv(&qm1)), &inv(&qmt));
    let term1 = p.mul(&p.mul(&p.rational(&q(1, 2)), &a), &p.mul(&q1, &q1));
    let bcoef = p.add(&p.add(&inv(&tt), &inv(&tm1)), &inv(&qmt));
    let term2 = p.mul(&bcoef, &q1);
    let pre = p.div(&p.mul(&p.mul(&q0, &qm1), &qmt), &p.mul(&p.mul(&tt, &tt), &p.mul(&tm1, &tm1)));
    let sq = |x: &BigFloat| p.mul(x, x);
    let beta = match sign {
        BetaSign::Plus => p.rational(&params.beta),
        BetaSign::Minus => p.rational(&-params.beta.clone()),
    };
    let inner = [
        p.rational(&params.alpha),
        p.div(&p.mul(&beta, &tt), &sq(&q0)),
        p.div(&p.mul(&p.rational(&params.gamma), &tm1), &sq(&qm1)),
        p.div(&p.mul(&p.rational(&params.delta), &p.mul(&tt, &tm1)), &sq(&qmt)),
    ]
    .iter()
    .fold(p.int(0), |acc, x| p.add(&acc, x));
    let rhs = p.add(&p.sub(&term1, &term2), &p.mul(&pre, &inner));
    p.sub(&q2, &rhs)
}

/// `h̄_{1,m} = t(t−1)(log U_{m+1})' − ¼(b1² z/w + b2² w/z) + (m+½)q_m − ½(m+½)`.
pub fn hbar_1m(p: &Prec, m: u32, b1: &Rational, b2: &Rational, t: &Rational, indexing: QIndexing) -> Result<Jet> {
    let parts = q_m_parts(p, m, b1, b2, t, indexing, QParse::WholeBrace)?;
    let mh = qi(m as i64) + q(1, 2);
    Ok(parts
        .log_up
        .sub(p, &parts.zw)
        .add(p, &parts.q.scale(p, &p.rational(&mh)))
        .add_const(p, &p.rational(&(-q(1, 2) * &mh))))
}

/// Decimal exponent of a residual, for quick comparisons.
pub fn magnitude(x: &BigFloat) -> f64 {
    log10_abs(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_map() {
        let b = BValues::new(q(1, 3), q(1, 5), q(-1, 2), qi(0));
        let pv = pvi_params(&b);
        assert_eq!(pv.alpha, q(1, 8));
        assert_eq!(pv.delta, q(-5, 8));
        assert_eq!(pv.beta, -q(1, 2) * q(8, 15) * q(8, 15));
        let zero = pvi_params(&BValues::new(qi(0), qi(0), qi(0), qi(0)));
        assert_eq!(zero, PVIParams { alpha: qi(0), beta: qi(0), gamma: qi(0), delta: qi(0) });
        let same = pvi_params(&BValues::new(qi(3), qi(3), qi(3), qi(3)));
        assert_eq!((same.alpha, same.gamma), (qi(0), qi(0)));
    }

    #[test]
    fn bridge_values() {
        let p = Prec::digits(50);
        let br = t_bridge(&p, &q(4, 3)).unwrap();
        let close = |a: &BigFloat, b: Rational| magnitude(&p.sub(a, &p.rational(&b))) < -45.0;
        assert!(close(br.v.value(), q(5, 2)));
        assert!(close(&p.mul(br.z.value(), br.z.value()), q(1, 8)));
        assert!(close(&p.mul(br.w.value(), br.w.value()), q(9, 8)));
        let br2 = t_bridge(&p, &qi(2)).unwrap();
        let v2 = p.mul(br2.v.value(), br2.v.value());
        assert!(close(&v2, q(9, 2)));
        assert!(t_bridge(&p, &qi(1)).is_err());
    }

    #[test]
    fn stacks() {
        let p = Prec::digits(50);
        let t = q(4, 3);
        let w2 = Poly::var_pow(Var::W, 2);
        let s = u_stack(&p, &w2, &t).unwrap();
        let br = t_bridge(&p, &t).unwrap();
        let dv = br.v.derivative(&p, 1);
        assert!(magnitude(&p.sub(&s.value, &p.rational(&q(9, 8)))) < -45.0);
        assert!(magnitude(&p.sub(&s.d1, &p.div(&dv, &p.int(4)))) < -45.0);
        let c = u_stack(&p, &Poly::int(5), &t).unwrap();
        assert!(c.d1.is_zero() && c.d2.is_zero() && c.d3.is_zero());
    }
}
