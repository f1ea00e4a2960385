//! Free pregroup types and contraction-only reduction.

mod reduce;
mod types;

pub use reduce::{grammatical, reduce, reduce_factors, DiagramError, ReductionDiagram, ReductionError};
pub use types::{parse_type, AtomicType, PregroupType, SimpleType, TypeSyntaxError};
