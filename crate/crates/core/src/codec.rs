//! Canonical JSON for polynomials: decimal-string coefficients, dense
//! exponent vectors over the fixed alphabet, terms in ascending grlex order.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, Rational, Var, NVARS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub num: String,
    pub den: String,
    pub exps: Vec<u16>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &Poly) -> Self {
        let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
        terms.sort_by(|a, b| a.0.grlex_cmp(b.0));
        PolyJson {
            vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            terms: terms
                .into_iter()
                .map(|(m, c)| TermJson { num: c.numer().to_string(), den: c.denom().to_string(), exps: m.0.to_vec() })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly> {
        let expected: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
        if self.vars != expected {
            return Err(decode_err("vars", format!("expected {expected:?}")));
        }
        let mut out = Poly::zero();
        let mut prev: Option<Monomial> = None;
        for (i, t) in self.terms.iter().enumerate() {
            let path = |f: &str| format!("terms[{i}].{f}");
            let num: BigInt = t.num.parse().map_err(|_| decode_err(&path("num"), "not a decimal integer"))?;
            let den: BigInt = t.den.parse().map_err(|_| decode_err(&path("den"), "not a decimal integer"))?;
            if !den.is_positive() {
                return Err(decode_err(&path("den"), "denominator must be positive"));
            }
            if num.is_zero() {
                return Err(decode_err(&path("num"), "zero coefficient"));
            }
            let c = Rational::new(num.clone(), den.clone());
            if c.numer() != &num || c.denom() != &den {
                return Err(decode_err(&path("num"), "coefficient not in lowest terms"));
            }
            let exps: [u16; NVARS] = t
                .exps
                .as_slice()
                .try_into()
                .map_err(|_| decode_err(&path("exps"), format!("expected {NVARS} exponents")))?;
            let m = Monomial(exps);
            if let Some(p) = prev {
                if p.grlex_cmp(&m) != std::cmp::Ordering::Less {
                    return Err(decode_err(&path("exps"), "terms not in ascending grlex order"));
                }
            }
            prev = Some(m);
            out.add_term(m, c);
        }
        Ok(out)
    }
}

fn decode_err(path: &str, msg: impl Into<String>) -> Error {
    Error::Decode { path: path.to_string(), msg: msg.into() }
}

/// Compact single-line canonical JSON.
pub fn encode(p: &Poly) -> String {
    serde_json::to_string(&PolyJson::from_poly(p)).expect("serializable")
}

pub fn decode(text: &str) -> Result<Poly> {
    let j: PolyJson = serde_json::from_str(text).map_err(|e| Error::Decode {
        path: format!("line {} column {}", e.line(), e.column()),
        msg: e.to_string(),
    })?;
    j.to_poly()
}

/// Human-readable form, descending in `w` then `z`.
pub fn pretty(p: &Poly) -> String {
    p.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_one() {
        assert_eq!(
            encode(&Poly::one()),
            r#"{"vars":["z","w","a","b","b1","b2","v"],"terms":[{"num":"1","den":"1","exps":[0,0,0,0,0,0,0]}]}"#
        );
        assert_eq!(encode(&Poly::zero()), r#"{"vars":["z","w","a","b","b1","b2","v"],"terms":[]}"#);
    }

    #[test]
    fn round_trip() {
        let p = (Poly::var(Var::Z) + Poly::var(Var::B2)).pow(4).scale(&Rational::new(3.into(), 7.into()))
            - Poly::int(1 << 40).pow(3);
        assert_eq!(decode(&encode(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_den = r#"{"vars":["z","w","a","b","b1","b2","v"],"terms":[{"num":"1","den":"0","exps":[0,0,0,0,0,0,0]}]}"#;
        assert!(matches!(decode(bad_den), Err(Error::Decode { .. })));
        assert!(decode("{").is_err());
        let unsorted = r#"{"vars":["z","w","a","b","b1","b2","v"],"terms":[{"num":"1","den":"1","exps":[1,0,0,0,0,0,0]},{"num":"1","den":"1","exps":[0,0,0,0,0,0,0]}]}"#;
        assert!(decode(unsorted).is_err());
    }
}
