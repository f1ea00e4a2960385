//! Dense tensors and the monoidal passage from pregroup types to tensor spaces.

mod dense;
mod functor;

pub use dense::{Tensor, TensorError};
pub use functor::{
    compose, compose_scheduled, epsilon_contract, eta, semantic_shape, ComposeError, SpaceAssignment,
    TypedTensor,
};
