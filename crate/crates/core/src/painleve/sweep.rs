//! Grid sweeps of the numeric checks, precision doubling and the
//! finite-difference cross-check of the jet derivatives.

use std::fmt;

use astro_float::{BigFloat, Consts};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::functions::{
    evi_residual, h_nm, hbar_1m, log_derivative, poly_jet, pvi_params, pvi_residual, q_m_parts, specialize, t_bridge,
    BValues, BetaSign, EviForm, H0Form, QIndexing, QParse,
};
use super::jet::Jet;
use super::real::{log10_abs, to_decimal, Prec, RM};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::families::gen_umemura;
use crate::ring::{q, qi, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `h_{0,m}` against `E_VI(b1, b2, m+½, 0)`.
    EviH0m,
    /// `h_{1,m}(0, m+1) = −(2t−1)(m+1)²/2` and its exactly vanishing residual.
    H1m,
    /// `h_{n,m}(0, b2)` against `E_VI(0, b2, n/2, (n+2m+1)/2)`.
    EviHnm,
    /// `h_{n,m}(0, b2)` against the reduced `h_{0,·}` pointwise.
    Reduction,
    /// `q_m` against Painlevé VI.
    PviQm,
    /// `h̄_{1,m}` against `E_VI(b1, b2, m+½, 1)`.
    EviHbar,
}

impl CheckId {
    pub const ALL: [CheckId; 6] =
        [CheckId::EviH0m, CheckId::H1m, CheckId::EviHnm, CheckId::Reduction, CheckId::PviQm, CheckId::EviHbar];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::EviH0m => "evi_h0m",
            CheckId::H1m => "h1m",
            CheckId::EviHnm => "evi_hnm",
            CheckId::Reduction => "reduction",
            CheckId::PviQm => "pvi_qm",
            CheckId::EviHbar => "evi_hbar",
        }
    }

    pub fn parse(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown numeric check {s:?}")))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(b3, b4)` for the Painlevé VI check of `q_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PviTuple {
    /// `(m+½, 0)`.
    #[default]
    ThirdParam,
    /// `(0, m+½)`.
    FourthParam,
    /// `(−(m+½), 0)`.
    NegatedThird,
}

impl PviTuple {
    pub fn b34(self, m: u32) -> (Rational, Rational) {
        let h = qi(m as i64) + q(1, 2);
        match self {
            PviTuple::ThirdParam => (h, qi(0)),
            PviTuple::FourthParam => (qi(0), h),
            PviTuple::NegatedThird => (-h, qi(0)),
        }
    }
}

/// Parameters of one sweep, with every reading choice explicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub n: u32,
    pub m: u32,
    #[serde(with = "rational_str")]
    pub b1: Rational,
    #[serde(with = "rational_str")]
    pub b2: Rational,
    /// Added to `b3` (negative control).
    #[serde(with = "rational_str")]
    pub b3_shift: Rational,
    pub evi_form: EviForm,
    pub h0_form: H0Form,
    /// `None` resolves the reading on the first grid point.
    pub indexing: Option<QIndexing>,
    pub q_parse: QParse,
    pub beta_sign: BetaSign,
    pub tuple: PviTuple,
}

impl CheckParams {
    pub fn new(n: u32, m: u32) -> Self {
        CheckParams {
            n,
            m,
            b1: q(1, 3),
            b2: q(1, 5),
            b3_shift: qi(0),
            evi_form: EviForm::Squared,
            h0_form: H0Form::Consistent,
            indexing: None,
            q_parse: QParse::WholeBrace,
            beta_sign: BetaSign::Plus,
            tuple: PviTuple::ThirdParam,
        }
    }

    pub fn with_b(mut self, b1: Rational, b2: Rational) -> Self {
        self.b1 = b1;
        self.b2 = b2;
        self
    }
}

mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::ring::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericConfig {
    pub digits: u32,
    pub grid: Vec<Rational>,
    /// `|residual| < 10^tolerance_exp` passes.
    pub tolerance_exp: i32,
}

impl NumericConfig {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_grid(digits, default_grid())
    }

    pub fn with_grid(digits: u32, grid: Vec<Rational>) -> Result<Self> {
        if digits < 30 {
            return Err(Error::Precondition(format!("digits = {digits} is below 30")));
        }
        if let Some(t) = grid.iter().find(|t| **t <= qi(1)) {
            return Err(Error::Domain(format!("grid point {t} is not above 1")));
        }
        Ok(NumericConfig { digits, grid, tolerance_exp: -(digits as i32 - 15) })
    }

    pub fn tolerance(mut self, exp: i32) -> Self {
        self.tolerance_exp = exp;
        self
    }
}

pub fn default_grid() -> Vec<Rational> {
    vec![q(6, 5), q(4, 3), q(3, 2), qi(2), qi(3)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub check: String,
    pub params: Value,
    pub digits: u32,
    pub grid: Vec<String>,
    pub max_residual: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl NumericReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// `log10` of the maximal residual; `-inf` when every residual vanished.
    pub fn magnitude(&self) -> f64 {
        if self.max_residual == "0" {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.max_residual.split_once('e').unwrap_or((&self.max_residual, "0"));
        m.parse::<f64>().unwrap_or(f64::NAN).abs().log10() + e.parse::<f64>().unwrap_or(f64::NAN)
    }
}

fn half(k: u32) -> Rational {
    q(k as i64, 2)
}

/// Residual of one check at one grid point.
pub fn residual_at(check: CheckId, cp: &CheckParams, indexing: QIndexing, p: &Prec, t: &Rational) -> Result<BigFloat> {
    let (n, m) = (cp.n, cp.m);
    let shift = |b3: Rational| b3 + &cp.b3_shift;
    match check {
        CheckId::EviH0m => {
            let h = h_nm(p, 0, m, &cp.b1, &cp.b2, t, cp.h0_form)?;
            let b = BValues::new(cp.b1.clone(), cp.b2.clone(), shift(half(2 * m + 1)), qi(0));
            Ok(evi_residual(p, t, &h, &b, cp.evi_form))
        }
        CheckId::H1m => {
            let b2 = qi(m as i64 + 1);
            let h = h_nm(p, 1, m, &qi(0), &b2, t, cp.h0_form)?;
            let closed = -(qi(2) * t - qi(1)) * &b2 * &b2 / qi(2);
            Ok(p.sub(h.value(), &p.rational(&closed)))
        }
        CheckId::EviHnm => {
            let h = h_nm(p, n, m, &qi(0), &cp.b2, t, cp.h0_form)?;
            let b = BValues::new(qi(0), cp.b2.clone(), shift(half(n)), half(n + 2 * m + 1));
            Ok(evi_residual(p, t, &h, &b, cp.evi_form))
        }
        CheckId::Reduction => {
            let lhs = h_nm(p, n, m, &qi(0), &cp.b2, t, cp.h0_form)?;
            let rhs = if n % 2 == 0 {
                h_nm(p, 0, m + n / 2, &half(n), &cp.b2, t, cp.h0_form)?
            } else {
                h_nm(p, 0, (n - 1) / 2, &half(2 * m + n + 1), &cp.b2, t, cp.h0_form)?
            };
            Ok(p.sub(lhs.value(), rhs.value()))
        }
        CheckId::PviQm => {
            let parts = q_m_parts(p, m, &cp.b1, &cp.b2, t, indexing, cp.q_parse)?;
            let (b3, b4) = cp.tuple.b34(m);
            let params = pvi_params(&BValues::new(cp.b1.clone(), cp.b2.clone(), shift(b3), b4));
            Ok(pvi_residual(p, &parts.q, &params, t, cp.beta_sign))
        }
        CheckId::EviHbar => {
            let h = hbar_1m(p, m, &cp.b1, &cp.b2, t, indexing)?;
            let b = BValues::new(cp.b1.clone(), cp.b2.clone(), shift(half(2 * m + 1)), qi(1));
            Ok(evi_residual(p, t, &h, &b, cp.evi_form))
        }
    }
}

fn uses_indexing(check: CheckId) -> bool {
    matches!(check, CheckId::PviQm | CheckId::EviHbar)
}

/// Try both readings of `U_m` at `t` and keep the one with the smaller
/// residual; returns it with both magnitudes.
pub fn resolve_indexing(check: CheckId, cp: &CheckParams, p: &Prec, t: &Rational) -> Result<(QIndexing, f64, f64)> {
    let mag = |idx| residual_at(check, cp, idx, p, t).map(|r| log10_abs(&r)).unwrap_or(f64::INFINITY);
    let (g, u) = (mag(QIndexing::Generalized), mag(QIndexing::Umemura));
    Ok((if g <= u { QIndexing::Generalized } else { QIndexing::Umemura }, g, u))
}

pub fn sweep(check: CheckId, cp: &CheckParams, cfg: &NumericConfig) -> Result<NumericReport> {
    let p = Prec::digits(cfg.digits);
    let mut note = None;
    let indexing = match (cp.indexing, cfg.grid.first()) {
        (Some(i), _) => i,
        (None, Some(t0)) if uses_indexing(check) => {
            let (i, g, u) = resolve_indexing(check, cp, &p, t0)?;
            note = Some(format!(
                "U_m read as {}; first-point log10 residuals: U_{{0,m}} {g:.1}, Umemura {u:.1}",
                match i {
                    QIndexing::Generalized => "U_{0,m}",
                    QIndexing::Umemura => "Umemura U_m",
                }
            ));
            i
        }
        (None, _) => QIndexing::Generalized,
    };
    let residuals = Exec::Parallel.map(&cfg.grid, |t| residual_at(check, cp, indexing, &p, t));
    let mut max: Option<BigFloat> = None;
    for r in residuals {
        let r = r?.abs();
        max = Some(match max {
            Some(m) if m.cmp(&r).is_some_and(|c| c >= 0) => m,
            _ => r,
        });
    }
    let (max_residual, status) = match &max {
        None => ("0".to_string(), "pass"),
        Some(m) => {
            let pass = log10_abs(m) < cfg.tolerance_exp as f64;
            (to_decimal(m, 6), if pass { "pass" } else { "fail" })
        }
    };
    Ok(NumericReport {
        check: check.to_string(),
        params: serde_json::to_value(cp)?,
        digits: cfg.digits,
        grid: cfg.grid.iter().map(|t| t.to_string()).collect(),
        max_residual,
        status: status.into(),
        note,
    })
}

/// Smallest drop in `log10 |residual|` over the grid when precision goes
/// from `digits` to `2·digits`. Points whose residual is exactly zero at
/// both precisions count as an unbounded drop.
pub fn precision_gain(check: CheckId, cp: &CheckParams, grid: &[Rational], digits: u32) -> Result<f64> {
    let (lo, hi) = (Prec::digits(digits), Prec::digits(2 * digits));
    let indexing = cp.indexing.unwrap_or(QIndexing::Generalized);
    let gains = Exec::Parallel.map(grid, |t| -> Result<f64> {
        let a = log10_abs(&residual_at(check, cp, indexing, &lo, t)?);
        let b = log10_abs(&residual_at(check, cp, indexing, &hi, t)?);
        Ok(if a == f64::NEG_INFINITY { f64::INFINITY } else { a - b })
    });
    gains.into_iter().try_fold(f64::INFINITY, |acc, g| Ok(acc.min(g?)))
}

/// Exact-arithmetic residual of the σ-form for `h = −(2t−1)(m+1)²/2` at
/// `b = (0, m+1, b3, b4)`: `h' = −(m+1)²`, `h'' = 0`, `2h − (2t−1)h' = 0`.
pub fn h1m_exact_residual(m: u32, t: &Rational, b3: &Rational, b4: &Rational) -> Rational {
    let c = qi((m as i64 + 1).pow(2));
    let h = -(qi(2) * t - qi(1)) * &c / qi(2);
    let h1 = -c.clone();
    let h2 = qi(0);
    let s = t * (t - qi(1));
    let b = [qi(0), qi(m as i64 + 1), b3.clone(), b4.clone()];
    let first = &h1 * (&s * &h2) * (&s * &h2);
    let bracket = &h1 * (qi(2) * &h - (qi(2) * t - qi(1)) * &h1) + b.iter().fold(qi(1), |a, x| a * x);
    let rhs = b.iter().fold(qi(1), |a, x| a * (&h1 + x * x));
    first + &bracket * &bracket - rhs
}

/// Relative disagreement (`log10`) between jet derivatives of `f` and
/// Richardson-extrapolated central differences of its values, for `k = 1..3`.
pub fn fd_cross_check<F>(f: F, digits: u32, t: &Rational) -> Result<[f64; 3]>
where
    F: Fn(&Prec, &Rational) -> Result<Jet>,
{
    let p = Prec::digits(digits);
    let jet = f(&p, t)?;
    let val = |x: &Rational| -> Result<BigFloat> { Ok(f(&p, x)?.value().clone()) };
    let mut out = [0.0; 3];
    for k in 1..=3usize {
        // Step chosen so truncation and rounding errors balance.
        let e = (digits as f64 / (k as f64 + 4.0)).floor() as u32;
        let h = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(e));
        let d = |h: &Rational| -> Result<BigFloat> {
            let at = |j: i64| val(&(t + h * qi(j)));
            let hf = p.rational(h);
            Ok(match k {
                1 => p.div(&p.sub(&at(1)?, &at(-1)?), &p.mul(&p.int(2), &hf)),
                2 => p.div(&p.add(&p.sub(&at(1)?, &p.mul(&p.int(2), &at(0)?)), &at(-1)?), &p.mul(&hf, &hf)),
                _ => {
                    let num = p.sub(
                        &p.add(&p.sub(&at(2)?, &p.mul(&p.int(2), &at(1)?)), &p.mul(&p.int(2), &at(-1)?)),
                        &at(-2)?,
                    );
                    p.div(&num, &p.mul(&p.int(2), &p.mul(&hf, &p.mul(&hf, &hf))))
                }
            })
        };
        let (dh, dh2) = (d(&h)?, d(&(&h / qi(2)))?);
        let rich = p.div(&p.sub(&p.mul(&p.int(4), &dh2), &dh), &p.int(3));
        let exact = jet.derivative(&p, k);
        let scale = if exact.is_zero() { p.int(1) } else { exact.abs() };
        out[k - 1] = log10_abs(&p.div(&p.sub(&rich, &exact), &scale));
    }
    Ok(out)
}

/// `t ↦ p(z(t), w(t))` after specializing the parameters.
pub fn poly_path(poly: &Poly, b1: &Rational, b2: &Rational) -> impl Fn(&Prec, &Rational) -> Result<Jet> {
    let sp = specialize(poly, b1, b2);
    move |p: &Prec, t: &Rational| poly_jet(p, &sp, &t_bridge(p, t)?)
}

/// `t ↦ log U_{0,m}(t)`, value from a real logarithm and derivatives from
/// the jet of `U'/U`.
pub fn log_u_path(m: u32, b1: &Rational, b2: &Rational) -> impl Fn(&Prec, &Rational) -> Result<Jet> {
    let sp = specialize(&gen_umemura(0, m, 0), b1, b2);
    move |p: &Prec, t: &Rational| {
        let br = t_bridge(p, t)?;
        let u = poly_jet(p, &sp, &br)?;
        let s = br.t.mul(p, &br.t.add_const(p, &p.int(-1)));
        let lp = log_derivative(p, &br, &u)?.div(p, &s)?;
        let mut cc = Consts::new().map_err(|e| Error::Domain(format!("{e:?}")))?;
        let ln = u.value().abs().ln(p.bits, RM, &mut cc);
        // Integrate the derivative series term by term.
        let mut c = vec![ln];
        for k in 0..super::jet::ORDER - 1 {
            c.push(p.div(&lp.c[k], &p.int(k as i64 + 1)));
        }
        Ok(Jet { c })
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Var;

    #[test]
    fn checks_at_low_order() {
        let cfg = NumericConfig::new(50).unwrap();
        for (check, n, m) in [(CheckId::EviH0m, 0, 1), (CheckId::H1m, 1, 1), (CheckId::EviHnm, 2, 1), (CheckId::Reduction, 2, 1)] {
            let r = sweep(check, &CheckParams::new(n, m), &cfg).unwrap();
            assert!(r.passed(), "{check} {r:?}");
        }
        let mut cp = CheckParams::new(0, 1);
        cp.b3_shift = q(1, 10);
        assert!(!sweep(CheckId::EviH0m, &cp, &cfg).unwrap().passed());
    }

    #[test]
    fn q_m_readings() {
        let cfg = NumericConfig::new(50).unwrap();
        let mut cp = CheckParams::new(0, 1);
        cp.tuple = PviTuple::NegatedThird;
        let r = sweep(CheckId::PviQm, &cp, &cfg).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.note.unwrap().contains("U_{0,m}"));
        for tuple in [PviTuple::ThirdParam, PviTuple::FourthParam] {
            cp.tuple = tuple;
            assert!(!sweep(CheckId::PviQm, &cp, &cfg).unwrap().passed());
        }
        assert!(sweep(CheckId::EviHbar, &CheckParams::new(0, 1), &cfg).unwrap().passed());
    }

    #[test]
    fn exact_zero_structure() {
        for m in 0..4 {
            assert_eq!(h1m_exact_residual(m, &q(3, 2), &q(2, 7), &q(-5, 3)), qi(0));
        }
    }

    #[test]
    fn finite_differences_agree() {
        let z4 = Poly::var_pow(Var::Z, 4);
        let errs = fd_cross_check(poly_path(&z4, &qi(0), &qi(0)), 50, &q(3, 2)).unwrap();
        assert!(errs.iter().all(|&e| e < -20.0), "{errs:?}");
        let errs = fd_cross_check(log_u_path(2, &q(1, 3), &q(1, 5)), 50, &q(4, 3)).unwrap();
        assert!(errs.iter().all(|&e| e < -25.0), "{errs:?}");
    }

    #[test]
    fn empty_grid_and_domain() {
        let cfg = NumericConfig::with_grid(50, vec![]).unwrap();
        let r = sweep(CheckId::EviH0m, &CheckParams::new(0, 1), &cfg).unwrap();
        assert!(r.passed() && r.grid.is_empty());
        assert!(NumericConfig::with_grid(50, vec![qi(1)]).is_err());
        assert!(NumericConfig::new(20).is_err());
    }

    #[test]
    fn doubling_precision() {
        let g = precision_gain(CheckId::EviH0m, &CheckParams::new(0, 2), &[q(3, 2)], 50).unwrap();
        assert!(g >= 10.0, "{g}");
    }
}
