use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed};

use crate::combinatorics::{chain, subset_weight, IndexSet, Subset};
use crate::exec::Exec;
use crate::ring::{Monomial, Poly, PolyMatrix, Rational, Var};

/// Orientation of the `k`-prefactor `∏_{i∈I∖[k], j∈[k]}`.
///
/// `Printed` uses `(i+j)/(i−j)`; `Reversed` uses `(i+j)/(j−i)`, which differs
/// by `(−1)^{k·|I∖[k]|}`. The two agree for even `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Printed,
    Reversed,
}

struct Chains {
    a: Vec<Poly>,
    b: Vec<Poly>,
}

impl Chains {
    fn new(set: &IndexSet) -> Self {
        Chains {
            a: set.elements().iter().map(|&i| chain(Var::A, i)).collect(),
            b: set.elements().iter().map(|&i| chain(Var::B, i)).collect(),
        }
    }
}

type Memo = Mutex<HashMap<(u32, u32, u32), Arc<Poly>>>;

/// `U_{n,m}^{(k)}(z, w; a, b)` as a subset sum. Results are memoized for the
/// life of the process.
pub fn gen_umemura(n: u32, m: u32, k: u32) -> Poly {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(p) = memo.lock().expect("memo lock").get(&(n, m, k)) {
        return Poly::clone(p);
    }
    let p = Arc::new(gen_umemura_with(n, m, k, Orientation::Printed, Exec::Parallel));
    memo.lock().expect("memo lock").insert((n, m, k), p.clone());
    Poly::clone(&p)
}

pub fn gen_umemura_with(n: u32, m: u32, k: u32, orientation: Orientation, exec: Exec) -> Poly {
    let set = IndexSet::new(n, m);
    let k_members: Vec<i64> = (1..=k as i64).collect();
    let k_mask = match set.subset_of(&k_members) {
        Ok(mask) => mask,
        // [k] ⊄ [n;m]: the sum is empty.
        Err(_) => return Poly::zero(),
    };
    let chains = Chains::new(&set);
    let subsets: Vec<Subset> = set.subsets().filter(|s| s.is_superset_of(k_mask)).collect();

    let term = |&s: &Subset| -> Poly {
        let w = subset_weight(&set, s).expect("subset weights are integral");
        let free = s.minus(k_mask);
        let comp = set.complement(s);
        let mut coeff = Rational::from_integer(w.d);
        if w.c % 2 != 0 {
            coeff = -coeff;
        }
        for &i in &set.members(free) {
            for &j in &k_members {
                let num = i + j;
                let den = match orientation {
                    Orientation::Printed => i - j,
                    Orientation::Reversed => j - i,
                };
                coeff *= Rational::new(num.into(), den.into());
            }
        }
        let mut p = Poly::constant(coeff);
        for idx in 0..set.len() {
            if free.contains_index(idx) {
                p = &p * &chains.a[idx];
            } else if comp.contains_index(idx) {
                p = &p * &chains.b[idx];
            }
        }
        let zexp = set.sum(free) as u16;
        let wexp = set.sum(comp) as u16;
        p.shift(&Monomial::var(Var::Z, zexp).with_exp(Var::W, wexp))
    };
    exec.fold(
        &subsets,
        Poly::zero,
        |mut acc, s| {
            acc += &term(s);
            acc
        },
        |mut a, b| {
            a += &b;
            a
        },
    )
}

/// The determinant of the labelled matrix over `[n;m]∖[k]` with entries
/// `a_i wⁱ ∏_{s∈[k]} (i+s)/(i−s) δ_{ij} + (2i/(i+j)) (−1)^{c(i)} ∏_{s≠i} |(i+s)/(i−s)| b_i zⁱ`.
pub fn gen_umemura_det(n: u32, m: u32, k: u32) -> Poly {
    gen_umemura_det_with(n, m, k, DetSign::Printed)
}

/// Sign convention for the off-diagonal entries: `Printed` uses
/// `c(i) = i` for `i ≤ n`, `SubsetWeight` uses the per-element share of `c(I)`,
/// which is `0` for `i ≤ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DetSign {
    #[default]
    Printed,
    SubsetWeight,
}

pub fn gen_umemura_det_with(n: u32, m: u32, k: u32, sign: DetSign) -> Poly {
    let set = IndexSet::new(n, m);
    let labels: Vec<i64> = set.elements().iter().copied().filter(|&i| i > k as i64).collect();
    if (1..=k as i64).any(|j| !set.contains(j)) {
        return Poly::zero();
    }
    let c_of = |i: i64| match (i <= n as i64, sign) {
        (true, DetSign::Printed) => i,
        (true, DetSign::SubsetWeight) => 0,
        (false, _) => (i - n as i64) / 2,
    };
    let matrix = PolyMatrix::from_fn(&labels, |i, j| {
        let mut entry = Poly::zero();
        if i == j {
            let mut pre = Rational::one();
            for s in 1..=k as i64 {
                pre *= Rational::new((i + s).into(), (i - s).into());
            }
            entry += &chain(Var::A, i).scale(&pre).shift(&Monomial::var(Var::W, i as u16));
        }
        let mut off = Rational::new((2 * i).into(), (i + j).into());
        if c_of(i) % 2 != 0 {
            off = -off;
        }
        for &s in set.elements().iter().filter(|&&s| s != i) {
            off *= Rational::new((i + s).into(), (i - s).into()).abs();
        }
        entry += &chain(Var::B, i).scale(&off).shift(&Monomial::var(Var::Z, i as u16));
        entry
    });
    matrix.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Poly {
        Poly::var(Var::Z)
    }
    fn w() -> Poly {
        Poly::var(Var::W)
    }
    fn a() -> Poly {
        Poly::var(Var::A)
    }
    fn b() -> Poly {
        Poly::var(Var::B)
    }
    fn c(n: i64) -> Poly {
        Poly::int(n)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(gen_umemura(0, 0, 0), Poly::one());
        for m in 0..4 {
            assert!(gen_umemura(0, m, 1).is_zero());
        }
    }

    #[test]
    fn k_one_examples() {
        let expect = (b() + c(1)) * w().pow(2) * c(3) + (a() + c(1)) * z().pow(2) * c(3);
        assert_eq!(gen_umemura(2, 0, 1), expect);
        let reversed = gen_umemura_with(2, 0, 1, Orientation::Reversed, Exec::Sequential);
        let expect = (b() + c(1)) * w().pow(2) * c(3) - (a() + c(1)) * z().pow(2) * c(3);
        assert_eq!(reversed, expect);
    }

    #[test]
    fn det_one_by_one() {
        let expect = (a() + c(1)) * w().pow(2) - (b() + c(1)) * z().pow(2);
        assert_eq!(gen_umemura_det(0, 1, 0), expect);
        // [2;0] ∖ [2] is empty.
        assert_eq!(gen_umemura_det(2, 0, 2), Poly::one());
    }

    #[test]
    fn exec_modes_agree() {
        let p = gen_umemura_with(2, 2, 0, Orientation::Printed, Exec::Parallel);
        let q = gen_umemura_with(2, 2, 0, Orientation::Printed, Exec::Sequential);
        assert_eq!(p, q);
    }
}
