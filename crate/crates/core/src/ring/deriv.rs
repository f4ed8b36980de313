use super::monomial::Var;
use super::poly::Poly;
use super::q;

/// The derivation `d/dx` under `z = sinh(x/2)`, `w = cosh(x/2)`:
/// `z ↦ w/2`, `w ↦ z/2`, every other variable is constant.
pub fn derive_x(p: &Poly) -> Poly {
    let half = q(1, 2);
    let dz = p.derive(Var::Z).shift(&super::Monomial::var(Var::W, 1));
    let dw = p.derive(Var::W).shift(&super::Monomial::var(Var::Z, 1));
    (&dz + &dw).scale(&half)
}

/// Second Hirota derivative `D_x² f∘g = f''g − 2f'g' + fg''`.
pub fn hirota2(f: &Poly, g: &Poly) -> Poly {
    let f1 = derive_x(f);
    let g1 = derive_x(g);
    let f2 = derive_x(&f1);
    if std::ptr::eq(f, g) || f == g {
        // f''f − f'f' twice
        return (&(&f2 * f) - &(&f1 * &f1)).scale(&super::qi(2));
    }
    let g2 = derive_x(&g1);
    &(&(&f2 * g) - &(&f1 * &g1).scale(&super::qi(2))) + &(f * &g2)
}
