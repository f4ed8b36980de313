use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Side of the Durfee square.
    pub fn rank(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    pub fn to_frobenius(&self) -> FrobeniusSymbol {
        let r = self.rank();
        let conj = self.conjugate();
        let arms = (0..r).map(|i| self.parts[i] - i as u32 - 1).collect();
        let legs = (0..r).map(|i| conj.parts[i] - i as u32 - 1).collect();
        FrobeniusSymbol { arms, legs }
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// `(a_1,…,a_r | b_1,…,b_r)`: arm and leg lengths along the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusSymbol {
    pub arms: Vec<u32>,
    pub legs: Vec<u32>,
}

impl FrobeniusSymbol {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        let decreasing = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if arms.len() != legs.len() || !decreasing(&arms) || !decreasing(&legs) {
            return Err(Error::InvalidFrobenius(format!("({arms:?} | {legs:?})")));
        }
        Ok(FrobeniusSymbol { arms, legs })
    }

    pub fn to_partition(&self) -> Partition {
        let r = self.arms.len();
        // Row i (0-based) for i < r has length arm_i + i + 1; rows below the
        // Durfee square come from the legs as column lengths.
        let mut parts: Vec<u32> = (0..r).map(|i| self.arms[i] + i as u32 + 1).collect();
        let cols: Vec<u32> = (0..r).map(|j| self.legs[j] + j as u32 + 1).collect();
        let depth = cols.first().copied().unwrap_or(0);
        for row in r as u32 + 1..=depth {
            parts.push(cols.iter().filter(|&&c| c >= row).count() as u32);
        }
        Partition::new(parts)
    }
}

/// Weyl dimension of the `GL(n)` irreducible with highest weight `λ`.
pub fn gl_dim(p: &Partition, n: usize) -> Result<BigInt> {
    if p.parts.len() > n {
        return Err(Error::PartitionTooLong { len: p.parts.len(), n });
    }
    let lam: Vec<i64> = (0..n).map(|i| p.parts.get(i).copied().unwrap_or(0) as i64).collect();
    let mut r = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = (j - i) as i64;
            r *= Rational::new((lam[i] - lam[j] + d).into(), d.into());
        }
    }
    debug_assert!(r.is_integer());
    Ok(r.to_integer())
}
