use crate::ring::{q, Poly, Var};

/// Substitute `a = −4·b1_expr²`, `b = −4·b2_expr²`.
pub fn param_at(p: &Poly, b1: &Poly, b2: &Poly) -> Poly {
    let minus4 = Poly::int(-4);
    p.substitute(&[(Var::A, &minus4 * &b1.pow(2)), (Var::B, &minus4 * &b2.pow(2))])
}

/// `p(z, w; −4(b1+Δ1)², −4(b2+Δ2)²)`.
pub fn param_u(p: &Poly, shift_b1: i64, shift_b2: i64) -> Poly {
    let b1 = Poly::var(Var::B1) + Poly::int(shift_b1);
    let b2 = Poly::var(Var::B2) + Poly::int(shift_b2);
    param_at(p, &b1, &b2)
}

/// Umemura's variables to the hyperbolic ones: `z ↦ −z²`, `w ↦ w²`.
pub fn bridge_to_x(p: &Poly) -> Poly {
    let z = Poly::var(Var::Z);
    let w = Poly::var(Var::W);
    p.substitute(&[(Var::Z, -z.pow(2)), (Var::W, w.pow(2))])
}

/// Umemura's variables to the Toda ones: `z = (2−v)/4`, `w = (2+v)/4`,
/// `c = −4b1²`, `d = −4b2²`.
pub fn to_toda_vars(p: &Poly) -> Poly {
    let v = Poly::var(Var::V);
    let zv = (&Poly::int(2) - &v).scale(&q(1, 4));
    let wv = (&Poly::int(2) + &v).scale(&q(1, 4));
    let p = param_at(p, &Poly::var(Var::B1), &Poly::var(Var::B2));
    p.substitute(&[(Var::Z, zv), (Var::W, wv)])
}
