use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ring::Rational;

/// The set `[n;m] = {1,…,n} ∪ {n+2, n+4, …, n+2m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: u32,
    m: u32,
    elements: Vec<i64>,
}

/// A subset of an [`IndexSet`], as a bitmask over its sorted elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl IndexSet {
    pub fn new(n: u32, m: u32) -> Self {
        assert!(n + m <= 63, "index sets are limited to 63 elements");
        let mut elements: Vec<i64> = (1..=n as i64).collect();
        elements.extend((1..=m as i64).map(|j| n as i64 + 2 * j));
        IndexSet { n, m, elements }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn full(&self) -> Subset {
        Subset(if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 })
    }

    /// All subsets in increasing bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..=self.full().0).map(Subset)
    }

    pub fn members(&self, s: Subset) -> Vec<i64> {
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, _)| s.0 >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }

    pub fn subset_of(&self, xs: &[i64]) -> Result<Subset> {
        let mut mask = 0u64;
        for &x in xs {
            let i = self
                .elements
                .binary_search(&x)
                .map_err(|_| Error::InvalidSubset(format!("{x} is not in [{};{}]", self.n, self.m)))?;
            mask |= 1 << i;
        }
        Ok(Subset(mask))
    }

    /// Element sum `|S|`.
    pub fn sum(&self, s: Subset) -> i64 {
        self.members(s).iter().sum()
    }

    /// `c(I) = Σ_{i∈I, i>n} (i−n)/2`.
    pub fn c_of(&self, s: Subset) -> i64 {
        self.members(s)
            .iter()
            .filter(|&&i| i > self.n as i64)
            .map(|&i| (i - self.n as i64) / 2)
            .sum()
    }
}

impl Subset {
    pub fn contains_index(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_superset_of(self, other: Subset) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }
}

/// `(d_{n,m}(I), c(I))` for a subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetWeight {
    pub d: BigInt,
    pub c: i64,
    pub subset: Subset,
}

/// `∏_{i∈I, j∉I} |(i+j)/(i−j)|` as an exact rational.
pub fn weight_d(elements: &[i64], subset: &[i64]) -> Rational {
    let mut r = Rational::one();
    for &i in subset {
        for &j in elements {
            if subset.contains(&j) {
                continue;
            }
            r *= Rational::new((i + j).into(), (i - j).into()).abs();
        }
    }
    r
}

/// Compute the subset weight; the product is asserted to be an integer.
pub fn subset_weight(set: &IndexSet, subset: Subset) -> Result<SubsetWeight> {
    if subset.0 & !set.full().0 != 0 {
        return Err(Error::InvalidSubset(format!("mask {:#b} exceeds the index set", subset.0)));
    }
    let members = set.members(subset);
    let d = weight_d(set.elements(), &members);
    if !d.is_integer() {
        return Err(Error::NonIntegralWeight(format!(
            "d_{{{},{}}}({members:?}) = {d}",
            set.n(),
            set.m()
        )));
    }
    Ok(SubsetWeight { d: d.to_integer(), c: set.c_of(subset), subset })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        assert_eq!(IndexSet::new(0, 1).elements(), &[2]);
        assert_eq!(IndexSet::new(1, 1).elements(), &[1, 3]);
        assert_eq!(IndexSet::new(3, 2).elements(), &[1, 2, 3, 5, 7]);
        assert!(IndexSet::new(0, 0).is_empty());
    }

    #[test]
    fn weights() {
        let s = IndexSet::new(0, 2);
        let w = subset_weight(&s, s.subset_of(&[2]).unwrap()).unwrap();
        assert_eq!((w.d, w.c), (BigInt::from(3), 1));

        let s = IndexSet::new(2, 1);
        let w = subset_weight(&s, s.subset_of(&[1]).unwrap()).unwrap();
        assert_eq!((w.d, w.c), (BigInt::from(5), 0));

        let s = IndexSet::new(3, 4);
        let w = subset_weight(&s, Subset(0)).unwrap();
        assert_eq!((w.d, w.c), (BigInt::from(1), 0));
    }

    #[test]
    fn rejects_foreign_elements() {
        let s = IndexSet::new(1, 1);
        assert!(s.subset_of(&[2]).is_err());
        assert!(subset_weight(&s, Subset(0b100)).is_err());
    }

    #[test]
    fn integrality_small() {
        for n in 0..5 {
            for m in 0..5 {
                let s = IndexSet::new(n, m);
                for sub in s.subsets() {
                    subset_weight(&s, sub).unwrap();
                }
            }
        }
    }
}
