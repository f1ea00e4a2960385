use crate::frobenius::delta_map;
use crate::tensor::{Tensor, TensorError};

/// Which argument wire of a verb matrix is copied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyWire {
    Subject,
    Object,
}

/// Lifts a verb matrix in `N ⊗ N` to an order-3 tensor in `N ⊗ S ⊗ N` by
/// copying one argument wire with `Δ` into the sentence position.
///
/// Copy-Object gives `T[i, k, j] = M[i, j]·[k = j]`, so contracting with a
/// subject and object yields `(s × M) ⊙ o`; Copy-Subject gives
/// `T[i, k, j] = M[i, j]·[k = i]` and `s ⊙ (M × o)`.
pub fn copy_expand(verb: &Tensor, wire: CopyWire) -> Result<Tensor, TensorError> {
    verb.expect_order(2)?;
    let (rows, cols) = (verb.shape()[0], verb.shape()[1]);
    if rows != cols {
        return Err(TensorError::NotSquare(verb.shape().to_vec()));
    }
    let copy = delta_map(rows);
    match wire {
        // (1 ⊗ Δ)(M): [i, j]·[j, k, j'] → [i, k, j']
        CopyWire::Object => verb.contract(1, &copy, 0),
        // (Δ ⊗ 1)(M): [i, i', k]·[i, j] → [i', k, j]
        CopyWire::Subject => copy.contract(0, verb, 0),
    }
}
