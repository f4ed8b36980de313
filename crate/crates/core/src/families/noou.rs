use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{odd_chain, weight_d};
use crate::ring::{Monomial, Poly, Rational, Var};

/// `U_n` by the closed subset-sum formula over `[n−1]`, in Umemura's
/// variables. The parameters `c` and `d` are carried by `a` and `b`.
pub fn noou_u(n: u32) -> Poly {
    let elems: Vec<i64> = (1..n as i64).collect();
    let c_chain: Vec<Poly> = elems.iter().map(|&i| odd_chain(Var::A, i)).collect();
    let d_chain: Vec<Poly> = elems.iter().map(|&i| odd_chain(Var::B, i)).collect();
    let mut out = Poly::zero();
    for mask in 0u64..(1 << elems.len()) {
        let members: Vec<i64> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let weight = weight_d(&elems, &members);
        let mut term = Poly::constant(weight);
        let (mut zexp, mut wexp) = (0u16, 0u16);
        for (idx, &e) in elems.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                term = &term * &c_chain[idx];
                zexp += e as u16;
            } else {
                term = &term * &d_chain[idx];
                wexp += e as u16;
            }
        }
        out += &term.shift(&Monomial::var(Var::Z, zexp).with_exp(Var::W, wexp));
    }
    out
}

/// The scale `2^{n(n−1)}` relating `U_n` to `T_n`.
pub fn umemura_scale(n: u32) -> Rational {
    let e = (n as u64) * (n as u64).saturating_sub(1);
    Rational::from_integer(BigInt::one() << e)
}

/// Umemura's `U_m` in the hyperbolic variables: `U_m(−z², w²; a, b)`.
pub fn umemura_u(m: u32) -> Poly {
    super::param::bridge_to_x(&noou_u(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(noou_u(0), Poly::one());
        assert_eq!(noou_u(1), Poly::one());
        let (z, w, c, d) = (Poly::var(Var::Z), Poly::var(Var::W), Poly::var(Var::A), Poly::var(Var::B));
        let one = Poly::one();
        assert_eq!(noou_u(2), (&c + &one) * z.clone() + (&d + &one) * w.clone());
        let n9 = Poly::int(9);
        let three = Poly::int(3);
        let expect = (&d + &one).pow(2) * (&d + &n9) * w.pow(3)
            + &three * (&c + &one) * (&d + &one) * (&d + &n9) * z.clone() * w.pow(2)
            + &three * (&c + &one) * (&c + &n9) * (&d + &one) * z.pow(2) * w.clone()
            + (&c + &one).pow(2) * (&c + &n9) * z.pow(3);
        assert_eq!(noou_u(3), expect);
    }

    #[test]
    fn scale() {
        assert_eq!(umemura_scale(3), Rational::from_integer(64.into()));
        assert_eq!(umemura_scale(0), Rational::one());
    }
}
