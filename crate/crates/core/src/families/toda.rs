use crate::error::Result;
use crate::ring::{q, Poly, Var};

/// `T_0, …, T_n` by the Toda-type recurrence in `v`, with exact division by
/// `T_{k−1}` at every step.
pub fn toda_sequence(n: u32) -> Result<Vec<Poly>> {
    let v = Poly::var(Var::V);
    let b1sq = Poly::var(Var::B1).pow(2);
    let b2sq = Poly::var(Var::B2).pow(2);
    let vsq_minus_4 = v.pow(2) - Poly::int(4);
    let curvature = vsq_minus_4.pow(2).scale(&q(1, 4));
    let drift = (&vsq_minus_4 * &v).scale(&q(1, 4));
    let base = (&(&b1sq + &b2sq).scale(&q(-2, 1)) + &(&(&b1sq - &b2sq) * &v)).scale(&q(1, 4));

    let mut seq = vec![Poly::one(), Poly::one()];
    for k in 1..n as i64 {
        let t = &seq[k as usize];
        let t1 = t.derive(Var::V);
        let t2 = t1.derive(Var::V);
        let shift = q(2 * k - 1, 2);
        let coeff = &base + &Poly::constant(&shift * &shift);
        let numer = &(&coeff * &t.pow(2)) + &(&curvature * &(&(t * &t2) - &t1.pow(2)));
        let numer = &numer + &(&drift * &(t * &t1));
        let next = numer.div_exact(&seq[k as usize - 1])?;
        seq.push(next);
    }
    seq.truncate(n as usize + 1);
    Ok(seq)
}

/// `T_n(v; b1, b2)`.
pub fn toda_t(n: u32) -> Result<Poly> {
    Ok(toda_sequence(n)?.pop().expect("sequence is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_terms() {
        let seq = toda_sequence(2).unwrap();
        assert_eq!(seq[0], Poly::one());
        assert_eq!(seq[1], Poly::one());
        let b1sq = Poly::var(Var::B1).pow(2);
        let b2sq = Poly::var(Var::B2).pow(2);
        let v = Poly::var(Var::V);
        let expect = &(&Poly::constant(q(1, 4)) - &(&b1sq + &b2sq).scale(&q(1, 2)))
            + &(&(&b1sq - &b2sq) * &v).scale(&q(1, 4));
        assert_eq!(seq[2], expect);
        assert_eq!(toda_t(0).unwrap(), Poly::one());
    }

    #[test]
    fn degree_bound() {
        let seq = toda_sequence(6).unwrap();
        for (n, t) in seq.iter().enumerate() {
            assert!(t.degree(Var::V) as usize <= n * n.saturating_sub(1) / 2, "T_{n}");
        }
    }
}
