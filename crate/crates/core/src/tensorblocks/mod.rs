//! Tensor products, the action of the center, and block decomposition.

mod blocks;
mod center;
#[cfg(test)]
mod tests;

pub use crate::module::{tensor, tensor_pure, tensor_weight_dim};
pub use blocks::{block_component, block_decompose, central_character, central_eigenvalues, BlockDecomposition, BlockLabel};
pub use center::{casimir, central_degrees, central_element_action, normal_order, UElt};
