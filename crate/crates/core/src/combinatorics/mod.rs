//! Index sets, subset weights, parameter chains, Frobenius symbols and the
//! partial-fraction coefficients behind the bilinear recurrences.

mod chains;
mod frobenius;
mod index_set;
mod partial_fraction;

pub use chains::{bar, chain, chain_product, odd_bar, odd_chain, ParamChain};
pub use frobenius::{gl_dim, FrobeniusSymbol, Partition};
pub use index_set::{subset_weight, weight_d, IndexSet, Subset, SubsetWeight};
pub use partial_fraction::{
    b_lambda, lemma2_lhs, lemma2_rhs, lemma6_sides, reflection_sign_exponent, split_b,
};
