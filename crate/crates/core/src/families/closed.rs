use std::fmt;

use super::generalized::gen_umemura;
use super::param::param_at;
use crate::combinatorics::{chain_product, IndexSet};
use crate::error::{Error, Result};
use crate::ring::{q, Monomial, Poly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `a_{[n;m]} (z+w)^{C(n+m+1,2)} (z−w)^{C(m+1,2)}`, the `a = b` factorization.
    Eq44,
    /// The `b1 = 0` specialization for even `n`.
    Eq45,
    /// The `b1 = 0` specialization for odd `n`.
    Eq46,
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedForm::Eq44 => "EQ44",
            ClosedForm::Eq45 => "EQ45",
            ClosedForm::Eq46 => "EQ46",
        })
    }
}

fn binom2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// Closed-form right-hand side. `Eq44` is in `(z, w, a)`; `Eq45`/`Eq46` are
/// in `(z, w, b2)` and equal the family member with `a = 0`, `b = −4b2²`.
pub fn closed_form(id: ClosedForm, n: u32, m: u32) -> Result<Poly> {
    let set = IndexSet::new(n, m);
    match id {
        ClosedForm::Eq44 => {
            let (z, w) = (Poly::var(Var::Z), Poly::var(Var::W));
            let chains = chain_product(Var::A, set.elements());
            Ok(chains * (&z + &w).pow(binom2(n + m + 1)) * (&z - &w).pow(binom2(m + 1)))
        }
        ClosedForm::Eq45 | ClosedForm::Eq46 => {
            let odd: Vec<i64> = set.elements().iter().copied().filter(|i| i % 2 == 1).collect();
            let b2 = Poly::var(Var::B2);
            let prefactor = param_at(&chain_product(Var::B, &odd), &Poly::zero(), &b2);
            let (wexp, inner, b1) = match (id, n % 2) {
                (ClosedForm::Eq45, 0) => {
                    let h = n / 2;
                    (h * h, gen_umemura(0, m + h, 0), Poly::constant(q(n as i64, 2)))
                }
                (ClosedForm::Eq46, 1) => {
                    let h = (n + 2 * m).div_ceil(2);
                    (h * h, gen_umemura(0, (n - 1) / 2, 0), Poly::constant(q((2 * m + n + 1) as i64, 2)))
                }
                _ => return Err(Error::Parity(format!("{id} does not apply to n = {n}"))),
            };
            let inner = param_at(&inner, &b1, &b2);
            Ok((prefactor * inner).shift(&Monomial::var(Var::W, wexp as u16)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq44_examples() {
        let (z, w, a) = (Poly::var(Var::Z), Poly::var(Var::W), Poly::var(Var::A));
        assert_eq!(closed_form(ClosedForm::Eq44, 1, 0).unwrap(), &a * &(&z + &w));
        let expect = (&a + &Poly::one()).pow(2) * (&a + &Poly::int(9)) * (&z + &w).pow(3) * (&z - &w).pow(3);
        assert_eq!(closed_form(ClosedForm::Eq44, 0, 2).unwrap(), expect);
    }

    #[test]
    fn eq45_example() {
        let (z, w, b2) = (Poly::var(Var::Z), Poly::var(Var::W), Poly::var(Var::B2));
        let b = Poly::int(-4) * b2.pow(2);
        let expect = &b * &w * ((&b + &Poly::one()) * w.pow(2) + Poly::int(3) * z.pow(2));
        assert_eq!(closed_form(ClosedForm::Eq45, 2, 0).unwrap(), expect);
    }

    #[test]
    fn parity_is_enforced() {
        assert!(matches!(closed_form(ClosedForm::Eq45, 1, 0), Err(Error::Parity(_))));
        assert!(matches!(closed_form(ClosedForm::Eq46, 2, 0), Err(Error::Parity(_))));
    }
}
