use super::param::param_u;
use crate::error::{Error, Result};
use crate::ring::{qi, Poly, QuotientValue, ScalarField, Var, NVARS};

/// `num / den` with `den ≠ 0`; not reduced.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, o: &RationalFunction) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Value of the class modulo `w² = z² + 1` at a point; `None` when the
    /// denominator vanishes there.
    pub fn eval_quotient<F: ScalarField>(
        &self,
        field: &F,
        point: &[Option<F::Elem>; NVARS],
    ) -> Result<Option<QuotientValue<F::Elem>>> {
        let zv = point[Var::Z.index()].clone().ok_or(Error::Unbound("z"))?;
        let w2 = field.add(&field.mul(&zv, &zv), &field.one());
        let n = self.num.eval_quotient(field, point)?;
        let d = self.den.eval_quotient(field, point)?;
        Ok(d.inv(field, &w2).map(|di| n.mul(field, &di, &w2)))
    }
}

/// How `T_{(k,l,m)}` is gauged.
///
/// `Standard` divides by `X`, the only choice satisfying the three-term
/// equation. `PrintedGauge` multiplies by `X`; `ShiftedY` divides by an `X`
/// whose `Ȳ` factors are off by one in `m`. Both are negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LadderIndexing {
    #[default]
    Standard,
    ShiftedY,
    PrintedGauge,
}

/// `Ȳ_{(l,m)} = (4(b2+l)² − (2m+1)²) w²`.
pub fn y_bar(l: i64, m: i64) -> Poly {
    let b2 = Poly::var(Var::B2) + Poly::int(l);
    (&b2.pow(2).scale(&qi(4)) - &Poly::int((2 * m + 1).pow(2))) * Poly::var_pow(Var::W, 2)
}

/// `Z̄_{(k,m)} = (−4(b1+k)² + (2m+1)²) z²`.
pub fn z_bar(k: i64, m: i64) -> Poly {
    let b1 = Poly::var(Var::B1) + Poly::int(k);
    (&Poly::int((2 * m + 1).pow(2)) - &b1.pow(2).scale(&qi(4))) * Poly::var_pow(Var::Z, 2)
}

fn y_prod(l: i64, m: i64, n: i64, indexing: LadderIndexing) -> Poly {
    let off = match indexing {
        LadderIndexing::ShiftedY => 1,
        _ => 0,
    };
    (1..=n).map(|j| y_bar(l, m - n - 1 + 2 * j + off)).product()
}

fn z_prod(k: i64, m: i64, n: i64) -> Poly {
    (1..=n).map(|j| z_bar(k, m - n - 1 + 2 * j)).product()
}

/// The gauge factor `X(k,l,m)` by its explicit product formula.
pub fn ladder_x(k: i64, l: i64, m: i64) -> RationalFunction {
    ladder_x_with(k, l, m, LadderIndexing::Standard)
}

pub fn ladder_x_with(k: i64, l: i64, m: i64, indexing: LadderIndexing) -> RationalFunction {
    let ys: Poly = (1..k).map(|j| y_prod(l, m, j, indexing)).product();
    let zs: Poly = (1..l).map(|j| z_prod(k, m, j)).product();
    RationalFunction { num: Poly::one(), den: &ys * &zs }
}

/// `T_{(k,l,m)} = base(b1+k, b2+l) / X(k,l,m)` where `base` is the `m`-th
/// family member in `(z, w; a, b)`.
pub fn ladder_t(base: &Poly, k: i64, l: i64, m: i64, indexing: LadderIndexing) -> RationalFunction {
    let x = ladder_x_with(k, l, m, indexing);
    let u = param_u(base, k, l);
    match indexing {
        LadderIndexing::PrintedGauge => RationalFunction { num: u, den: x.den },
        _ => RationalFunction::from_poly(&u * &x.den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_conditions() {
        for m in 0..4 {
            for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert!(ladder_x(k, l, m).equals(&RationalFunction::from_poly(Poly::one())));
            }
        }
    }

    #[test]
    fn single_y_factor() {
        let x = ladder_x(2, 0, 3);
        assert_eq!(x.num, Poly::one());
        assert_eq!(x.den, y_bar(0, 3));
    }

    #[test]
    fn x_recurrence_at_k_one() {
        for l in 0..3 {
            for m in 1..4 {
                let lhs = ladder_x(1, l, m - 1).mul(&ladder_x(1, l, m + 1));
                let rhs = ladder_x(0, l, m)
                    .mul(&ladder_x(2, l, m))
                    .mul(&RationalFunction::from_poly(y_bar(l, m)));
                assert!(lhs.equals(&rhs), "l={l} m={m}");
            }
        }
    }
}
