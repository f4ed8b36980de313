use std::collections::HashMap;

use super::monomial::Var;
use super::poly::Poly;

/// Canonical representative `p0 + w·p1` of a class in the quotient by
/// `w² − z² − 1`; neither component contains `w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReducedPoly {
    pub p0: Poly,
    pub p1: Poly,
}

impl ReducedPoly {
    /// Rewrite every `w²` as `z² + 1`.
    pub fn reduce(p: &Poly) -> ReducedPoly {
        let mut pows: HashMap<u16, Poly> = HashMap::new();
        let shifted = Poly::var_pow(Var::Z, 2) + Poly::one();
        let mut p0 = Poly::zero();
        let mut p1 = Poly::zero();
        for (e, coeff) in p.collect_by(Var::W) {
            let k = e / 2;
            let factor = pows.entry(k).or_insert_with(|| shifted.pow(k as u32));
            let part = &coeff * &*factor;
            if e % 2 == 0 {
                p0 += &part;
            } else {
                p1 += &part;
            }
        }
        ReducedPoly { p0, p1 }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    pub fn to_poly(&self) -> Poly {
        &self.p0 + &(&self.p1 * &Poly::var(Var::W))
    }

    pub fn mul(&self, other: &ReducedPoly) -> ReducedPoly {
        let w2 = Poly::var_pow(Var::Z, 2) + Poly::one();
        let p0 = &(&self.p0 * &other.p0) + &(&(&self.p1 * &other.p1) * &w2);
        let p1 = &(&self.p0 * &other.p1) + &(&self.p1 * &other.p0);
        ReducedPoly { p0, p1 }
    }

    pub fn add(&self, other: &ReducedPoly) -> ReducedPoly {
        ReducedPoly {
            p0: &self.p0 + &other.p0,
            p1: &self.p1 + &other.p1,
        }
    }
}

impl Poly {
    pub fn reduce(&self) -> ReducedPoly {
        ReducedPoly::reduce(self)
    }
}
