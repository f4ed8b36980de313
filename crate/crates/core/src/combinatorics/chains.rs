use crate::ring::{Poly, Var};

/// `x̄_k = x + (k−1)²` for a parameter symbol `x`.
pub fn bar(symbol: Var, k: i64) -> Poly {
    Poly::var(symbol) + Poly::int((k - 1) * (k - 1))
}

/// `x_{2j} = x̄_2 x̄_4 ⋯ x̄_{2j}` and `x_{2j+1} = x̄_1 x̄_3 ⋯ x̄_{2j+1}`.
pub fn chain(symbol: Var, k: i64) -> Poly {
    assert!(k >= 1, "chain index must be positive");
    let start = if k % 2 == 0 { 2 } else { 1 };
    (start..=k).step_by(2).map(|j| bar(symbol, j)).product()
}

/// `x_I = ∏_{i∈I} x_i`.
pub fn chain_product(symbol: Var, subset: &[i64]) -> Poly {
    subset.iter().map(|&i| chain(symbol, i)).product()
}

/// The odd-square shift `x + (2k−1)²` used by the closed form for `U_n`.
pub fn odd_bar(symbol: Var, k: i64) -> Poly {
    Poly::var(symbol) + Poly::int((2 * k - 1) * (2 * k - 1))
}

/// `∏_{j=1}^{k} (x + (2j−1)²)`; equals `chain(symbol, 2k)`.
pub fn odd_chain(symbol: Var, k: i64) -> Poly {
    (1..=k).map(|j| odd_bar(symbol, j)).product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamChain {
    pub symbol: Var,
    pub k: i64,
    pub bar_value: Poly,
    pub chain_value: Poly,
}

impl ParamChain {
    pub fn new(symbol: Var, k: i64) -> Self {
        ParamChain { symbol, k, bar_value: bar(symbol, k), chain_value: chain(symbol, k) }
    }
}
