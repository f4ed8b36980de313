use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::closed::{closed_form, ClosedForm};
use super::generalized::{gen_umemura, gen_umemura_det};
use super::ladder::{ladder_t, ladder_x, LadderIndexing, RationalFunction};
use super::noou::noou_u;
use super::param::param_u;
use super::toda::toda_t;
use crate::error::{Error, Result};
use crate::ring::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    GenSum,
    GenDet,
    TodaT,
    NoouU,
    ParamU,
    LadderX,
    LadderT,
    #[serde(rename = "FACTORED_44")]
    Factored44,
    #[serde(rename = "SPECIAL_45_46")]
    Special4546,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::GenSum,
        Family::GenDet,
        Family::TodaT,
        Family::NoouU,
        Family::ParamU,
        Family::LadderX,
        Family::LadderT,
        Family::Factored44,
        Family::Special4546,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::GenSum => "GEN_SUM",
            Family::GenDet => "GEN_DET",
            Family::TodaT => "TODA_T",
            Family::NoouU => "NOOU_U",
            Family::ParamU => "PARAM_U",
            Family::LadderX => "LADDER_X",
            Family::LadderT => "LADDER_T",
            Family::Factored44 => "FACTORED_44",
            Family::Special4546 => "SPECIAL_45_46",
        }
    }

    fn arity(self) -> usize {
        match self {
            Family::TodaT | Family::NoouU => 1,
            Family::Factored44 | Family::Special4546 => 2,
            _ => 3,
        }
    }

    /// How values of this family are produced.
    pub fn route(self) -> BuildRoute {
        match self {
            Family::GenSum => BuildRoute::SubsetSum,
            Family::GenDet => BuildRoute::Determinant,
            Family::TodaT => BuildRoute::Recurrence,
            Family::NoouU => BuildRoute::SubsetSum,
            Family::ParamU | Family::LadderT => BuildRoute::Substitution,
            Family::LadderX => BuildRoute::ExplicitProduct,
            Family::Factored44 | Family::Special4546 => BuildRoute::ClosedForm,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildRoute {
    SubsetSum,
    Determinant,
    Recurrence,
    Substitution,
    ExplicitProduct,
    ClosedForm,
}

/// Identifies one constructed polynomial or rational function.
///
/// Index meaning per family: `(n, m, k)` for `GEN_*` and `PARAM_U` (whose base
/// is `GEN_SUM(n, m, k)`), `(n)` for `TODA_T`/`NOOU_U`, `(k, l, m)` for the
/// ladder, `(n, m)` for the closed forms. `shifts` is only used by `PARAM_U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyKey {
    pub family: Family,
    pub indices: Vec<i64>,
    pub shifts: (i64, i64),
}

impl FamilyKey {
    pub fn new(family: Family, indices: &[i64]) -> Result<Self> {
        Self::with_shifts(family, indices, (0, 0))
    }

    pub fn with_shifts(family: Family, indices: &[i64], shifts: (i64, i64)) -> Result<Self> {
        if indices.len() != family.arity() {
            return Err(Error::Precondition(format!(
                "{family} takes {} indices, got {}",
                family.arity(),
                indices.len()
            )));
        }
        let ladder = matches!(family, Family::LadderX | Family::LadderT);
        if !ladder && indices.iter().any(|&i| i < 0) {
            return Err(Error::Precondition(format!("{family} indices must be nonnegative")));
        }
        if ladder && (indices[0] < 0 || indices[1] < 0) {
            return Err(Error::Precondition("ladder needs k, l >= 0".into()));
        }
        if family == Family::LadderT && indices[2] < 0 {
            return Err(Error::Precondition("ladder T needs m >= 0".into()));
        }
        if family != Family::ParamU && shifts != (0, 0) {
            return Err(Error::Precondition(format!("{family} takes no shifts")));
        }
        Ok(FamilyKey { family, indices: indices.to_vec(), shifts })
    }

    pub fn gen(n: u32, m: u32, k: u32) -> Self {
        FamilyKey { family: Family::GenSum, indices: vec![n.into(), m.into(), k.into()], shifts: (0, 0) }
    }

    /// `GEN_SUM(0,2,0)` or `PARAM_U(0,1,0)[-1,0]`.
    pub fn canonical(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let mut s = format!("{}({})", self.family, idx.join(","));
        if self.family == Family::ParamU {
            s.push_str(&format!("[{},{}]", self.shifts.0, self.shifts.1));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Decode { path: "key".into(), msg: format!("malformed family key {text:?}") };
        let (name, rest) = text.split_once('(').ok_or_else(bad)?;
        let (args, tail) = rest.split_once(')').ok_or_else(bad)?;
        let family = Family::ALL.into_iter().find(|f| f.name() == name).ok_or_else(bad)?;
        let parse_list = |s: &str| -> Result<Vec<i64>> {
            if s.is_empty() {
                return Ok(vec![]);
            }
            s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect()
        };
        let indices = parse_list(args)?;
        let shifts = match tail {
            "" => (0, 0),
            t => {
                let inner = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
                match parse_list(inner)?.as_slice() {
                    [a, b] => (*a, *b),
                    _ => return Err(bad()),
                }
            }
        };
        Self::with_shifts(family, &indices, shifts)
    }

    /// Short content address of the canonical text.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn route(&self) -> BuildRoute {
        self.family.route()
    }

    pub fn build(&self) -> Result<FamilyValue> {
        let i = &self.indices;
        let u = |x: i64| x as u32;
        Ok(match self.family {
            Family::GenSum => FamilyValue::Poly(gen_umemura(u(i[0]), u(i[1]), u(i[2]))),
            Family::GenDet => FamilyValue::Poly(gen_umemura_det(u(i[0]), u(i[1]), u(i[2]))),
            Family::TodaT => FamilyValue::Poly(toda_t(u(i[0]))?),
            Family::NoouU => FamilyValue::Poly(noou_u(u(i[0]))),
            Family::ParamU => {
                let base = gen_umemura(u(i[0]), u(i[1]), u(i[2]));
                FamilyValue::Poly(param_u(&base, self.shifts.0, self.shifts.1))
            }
            Family::LadderX => FamilyValue::Rational(ladder_x(i[0], i[1], i[2])),
            Family::LadderT => {
                let base = gen_umemura(0, u(i[2]), 0);
                FamilyValue::Rational(ladder_t(&base, i[0], i[1], i[2], LadderIndexing::Standard))
            }
            Family::Factored44 => FamilyValue::Poly(closed_form(ClosedForm::Eq44, u(i[0]), u(i[1]))?),
            Family::Special4546 => {
                let id = if i[0] % 2 == 0 { ClosedForm::Eq45 } else { ClosedForm::Eq46 };
                FamilyValue::Poly(closed_form(id, u(i[0]), u(i[1]))?)
            }
        })
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyValue {
    Poly(Poly),
    Rational(RationalFunction),
}

impl FamilyValue {
    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            FamilyValue::Poly(p) => Some(p),
            FamilyValue::Rational(_) => None,
        }
    }

    pub fn into_rational(self) -> RationalFunction {
        match self {
            FamilyValue::Poly(p) => RationalFunction::from_poly(p),
            FamilyValue::Rational(r) => r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trips() {
        let keys = [
            FamilyKey::gen(0, 2, 0),
            FamilyKey::with_shifts(Family::ParamU, &[0, 1, 0], (-1, 0)).unwrap(),
            FamilyKey::new(Family::TodaT, &[4]).unwrap(),
            FamilyKey::new(Family::LadderX, &[2, 0, -1]).unwrap(),
        ];
        for k in keys {
            assert_eq!(FamilyKey::parse(&k.canonical()).unwrap(), k);
        }
        assert_eq!(FamilyKey::gen(0, 2, 0).canonical(), "GEN_SUM(0,2,0)");
        assert!(FamilyKey::parse("GEN_SUM(1,2)").is_err());
        assert!(FamilyKey::parse("TODA_T(1)[1,0]").is_err());
    }

    #[test]
    fn hashes_differ() {
        assert_ne!(FamilyKey::gen(0, 2, 0).hash_hex(), FamilyKey::gen(2, 0, 0).hash_hex());
        assert_eq!(FamilyKey::gen(0, 2, 0).hash_hex().len(), 16);
    }

    #[test]
    fn builds() {
        let v = FamilyKey::new(Family::NoouU, &[1]).unwrap().build().unwrap();
        assert_eq!(v.as_poly(), Some(&Poly::one()));
        let x = FamilyKey::new(Family::LadderX, &[1, 1, 2]).unwrap().build().unwrap();
        assert!(x.into_rational().equals(&RationalFunction::from_poly(Poly::one())));
    }
}
