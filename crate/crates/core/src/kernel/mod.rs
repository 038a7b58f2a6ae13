//! Exact rational linear algebra and the combinatorics shared by every
//! other module.

mod combinat;
mod matrix;
mod scalar;

pub use combinat::{
    binomial, combinations, compositions, permutation_sign, shuffles, sort_to_block, IndexBlock,
    Shuffle, WedgeBasis,
};
pub use matrix::{kernel_basis, rank, solve_linear, Matrix};
pub use scalar::*;
