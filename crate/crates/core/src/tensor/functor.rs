use std::borrow::Cow;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::dense::{Tensor, TensorError};
use crate::pregroup::{AtomicType, PregroupType, ReductionDiagram, ReductionError, SimpleType};

/// Dimension of the vector space assigned to each atomic type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<String, usize>", into = "BTreeMap<String, usize>")]
pub struct SpaceAssignment {
    dims: BTreeMap<AtomicType, usize>,
}

impl From<BTreeMap<String, usize>> for SpaceAssignment {
    fn from(raw: BTreeMap<String, usize>) -> Self {
        SpaceAssignment {
            dims: raw.into_iter().map(|(k, v)| (AtomicType::new(k), v)).collect(),
        }
    }
}

impl From<SpaceAssignment> for BTreeMap<String, usize> {
    fn from(s: SpaceAssignment) -> Self {
        s.dims.into_iter().map(|(k, v)| (k.name().to_owned(), v)).collect()
    }
}

impl SpaceAssignment {
    pub fn new() -> Self {
        SpaceAssignment::default()
    }

    /// One shared space `W` of dimension `dim` for `n`, `s`, `θ` and `ρ`.
    pub fn shared(dim: usize) -> Self {
        let mut s = SpaceAssignment::new();
        for base in Self::intonation_bases() {
            s.insert(base, dim);
        }
        s
    }

    pub fn intonation_bases() -> [AtomicType; 4] {
        [
            AtomicType::noun(),
            AtomicType::sentence(),
            AtomicType::theme(),
            AtomicType::rheme(),
        ]
    }

    pub fn with(mut self, base: &str, dim: usize) -> Self {
        self.insert(AtomicType::new(base), dim);
        self
    }

    pub fn insert(&mut self, base: AtomicType, dim: usize) {
        self.dims.insert(base, dim);
    }

    pub fn dim(&self, base: &AtomicType) -> Option<usize> {
        self.dims.get(base).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AtomicType, usize)> {
        self.dims.iter().map(|(k, &v)| (k, v))
    }

    /// The common dimension when `n`, `s`, `θ` and `ρ` all map to one space.
    pub fn shared_dim(&self) -> Option<usize> {
        let mut dims = Self::intonation_bases().into_iter().map(|b| self.dim(&b));
        let first = dims.next()??;
        dims.all(|d| d == Some(first)).then_some(first)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComposeError {
    #[error("no vector space assigned to base type {0}")]
    UnknownBase(String),
    #[error("tensor shape {found:?} does not match F({ty}) = {expected:?}")]
    Shape {
        ty: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("tensor order {order} does not match the {factors} factors of {ty}")]
    Order {
        ty: String,
        order: usize,
        factors: usize,
    },
    #[error("factors {left} and {right} cannot be contracted")]
    NotCancellable { left: String, right: String },
    #[error("diagram does not fit the word types: {0}")]
    Diagram(#[from] ReductionError),
    #[error("link schedule is not a permutation of the diagram's links")]
    Schedule,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Shape of `F(ty)`: one axis per factor, sized by its base, ignoring adjoints.
/// The unit type maps to the scalar shape `[]`.
pub fn semantic_shape(ty: &PregroupType, spaces: &SpaceAssignment) -> Result<Vec<usize>, ComposeError> {
    ty.factors
        .iter()
        .map(|f| {
            spaces
                .dim(&f.base)
                .ok_or_else(|| ComposeError::UnknownBase(f.base.name().to_owned()))
        })
        .collect()
}

/// A tensor paired with the pregroup type it inhabits.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedTensor {
    ty: PregroupType,
    tensor: Tensor,
}

impl TypedTensor {
    /// Pairs a type and a tensor; the tensor order must equal the factor count.
    pub fn new(ty: PregroupType, tensor: Tensor) -> Result<Self, ComposeError> {
        if ty.len() != tensor.order() {
            return Err(ComposeError::Order {
                ty: ty.to_string(),
                order: tensor.order(),
                factors: ty.len(),
            });
        }
        Ok(TypedTensor { ty, tensor })
    }

    /// Pairs a type and a tensor, checking the full shape against `F(ty)`.
    pub fn checked(ty: PregroupType, tensor: Tensor, spaces: &SpaceAssignment) -> Result<Self, ComposeError> {
        let expected = semantic_shape(&ty, spaces)?;
        if expected != tensor.shape() {
            return Err(ComposeError::Shape {
                ty: ty.to_string(),
                expected,
                found: tensor.shape().to_vec(),
            });
        }
        Ok(TypedTensor { ty, tensor })
    }

    pub fn ty(&self) -> &PregroupType {
        &self.ty
    }

    pub fn tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> Tensor {
        self.tensor
    }
}

/// The cap `η(1) = Σᵢ eᵢ ⊗ eᵢ`, i.e. the identity matrix.
pub fn eta(dim: usize) -> Tensor {
    assert!(dim >= 1, "eta needs a positive dimension");
    Tensor::identity(dim)
}

/// ε-contraction of factor `left_axis` of `left` against factor
/// `right_axis` of `right`, where `left` is the word on the left.
///
/// The pair must cancel (`pʳ` right of `p`, or `p` right of `pˡ`).
/// The result type drops both factors; remaining axes of `left` come first.
pub fn epsilon_contract(
    left: &TypedTensor,
    left_axis: usize,
    right: &TypedTensor,
    right_axis: usize,
) -> Result<TypedTensor, ComposeError> {
    let (Some(l), Some(r)) = (left.ty.factors.get(left_axis), right.ty.factors.get(right_axis)) else {
        let (axis, order) = if left_axis >= left.ty.len() {
            (left_axis, left.ty.len())
        } else {
            (right_axis, right.ty.len())
        };
        return Err(TensorError::AxisOutOfRange { axis, order }.into());
    };
    if !l.cancels_with(r) {
        return Err(ComposeError::NotCancellable {
            left: l.to_string(),
            right: r.to_string(),
        });
    }
    let tensor = left.tensor.contract(left_axis, &right.tensor, right_axis)?;
    let factors = left
        .ty
        .factors
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != left_axis)
        .chain(right.ty.factors.iter().enumerate().filter(|&(k, _)| k != right_axis))
        .map(|(_, f)| f.clone())
        .collect();
    Ok(TypedTensor {
        ty: PregroupType::new(factors),
        tensor,
    })
}

/// Applies the linear map `F(diagram)` to `w₁ ⊗ … ⊗ wₙ`, contracting links in
/// order of their left endpoint.
pub fn compose(words: &[TypedTensor], diagram: &ReductionDiagram) -> Result<TypedTensor, ComposeError> {
    let schedule: Vec<usize> = (0..diagram.links().len()).collect();
    compose_scheduled(words, diagram, &schedule)
}

/// Like [`compose`], contracting `diagram.links()[schedule[0]]` first, then
/// `schedule[1]`, and so on.
pub fn compose_scheduled(
    words: &[TypedTensor],
    diagram: &ReductionDiagram,
    schedule: &[usize],
) -> Result<TypedTensor, ComposeError> {
    let factors: Vec<SimpleType> = words.iter().flat_map(|w| w.ty.factors.iter().cloned()).collect();
    diagram.check_against(&factors)?;
    let links = diagram.links();
    let mut sorted = schedule.to_vec();
    sorted.sort_unstable();
    if sorted != (0..links.len()).collect::<Vec<_>>() {
        return Err(ComposeError::Schedule);
    }

    // each block is a partially contracted tensor whose axes are labelled by
    // their position in the flattened factor sequence
    let mut blocks: Vec<Option<Block>> = Vec::with_capacity(words.len());
    let mut owner = Vec::with_capacity(factors.len());
    let mut next = 0;
    for (b, w) in words.iter().enumerate() {
        let axes: Vec<usize> = (next..next + w.ty.len()).collect();
        next += w.ty.len();
        owner.extend(std::iter::repeat(b).take(axes.len()));
        blocks.push(Some(Block {
            tensor: Cow::Borrowed(&w.tensor),
            axes,
        }));
    }

    for &l in schedule {
        let (i, j) = links[l];
        let (bi, bj) = (owner[i], owner[j]);
        if bi == bj {
            let block = blocks[bi].as_mut().expect("live block");
            let (ai, aj) = (block.position(i), block.position(j));
            block.tensor = Cow::Owned(block.tensor.trace(ai, aj)?);
            block.axes.retain(|&x| x != i && x != j);
        } else {
            let left = blocks[bi].take().expect("live block");
            let right = blocks[bj].take().expect("live block");
            let tensor = left
                .tensor
                .contract(left.position(i), &right.tensor, right.position(j))?;
            let axes: Vec<usize> = left
                .axes
                .iter()
                .chain(&right.axes)
                .copied()
                .filter(|&x| x != i && x != j)
                .collect();
            for &x in &axes {
                owner[x] = bi;
            }
            blocks[bi] = Some(Block {
                tensor: Cow::Owned(tensor),
                axes,
            });
        }
    }

    let mut tensor = Tensor::scalar(1.0);
    let mut axes = Vec::new();
    for block in blocks.into_iter().flatten() {
        axes.extend_from_slice(&block.axes);
        tensor = if tensor.order() == 0 {
            block.tensor.scale(tensor.data()[0])
        } else {
            tensor.outer(&block.tensor)
        };
    }
    let mut perm: Vec<usize> = (0..axes.len()).collect();
    perm.sort_by_key(|&k| axes[k]);
    let tensor = tensor.permute(&perm)?;

    Ok(TypedTensor {
        ty: diagram.codomain(&factors),
        tensor,
    })
}

struct Block<'a> {
    tensor: Cow<'a, Tensor>,
    axes: Vec<usize>,
}

impl Block<'_> {
    fn position(&self, factor: usize) -> usize {
        self.axes
            .iter()
            .position(|&x| x == factor)
            .expect("factor belongs to block")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pregroup::{parse_type, reduce};

    fn ty(s: &str) -> PregroupType {
        parse_type(s).unwrap()
    }

    #[test]
    fn shapes_follow_bases() {
        let spaces = SpaceAssignment::new().with("n", 4).with("s", 2);
        assert_eq!(semantic_shape(&ty("n.r s n.l"), &spaces).unwrap(), vec![4, 2, 4]);
        assert_eq!(semantic_shape(&PregroupType::unit(), &spaces).unwrap(), Vec::<usize>::new());
        assert!(matches!(
            semantic_shape(&ty("theta"), &spaces),
            Err(ComposeError::UnknownBase(_))
        ));
        let w = SpaceAssignment::shared(5);
        assert_eq!(semantic_shape(&ty("theta.r s rho.l"), &w).unwrap(), vec![5, 5, 5]);
        assert_eq!(w.shared_dim(), Some(5));
        assert_eq!(spaces.shared_dim(), None);
    }

    #[test]
    fn intransitive_is_vector_times_matrix() {
        let mary = TypedTensor::new(ty("n"), Tensor::vector(vec![1.0, 2.0])).unwrap();
        let snores = TypedTensor::new(
            ty("n.r s"),
            Tensor::matrix(&[vec![1.0, 0.0, 2.0], vec![0.5, 1.0, 0.0]]).unwrap(),
        )
        .unwrap();
        let r = epsilon_contract(&mary, 0, &snores, 0).unwrap();
        assert_eq!(r.ty(), &ty("s"));
        assert_eq!(r.tensor().data(), &[2.0, 2.0, 2.0]);

        let d = reduce(&[mary.ty().clone(), snores.ty().clone()], &ty("s")).unwrap();
        assert_eq!(compose(&[mary, snores], &d[0]).unwrap(), r);
    }

    #[test]
    fn rejects_non_cancelling_pair() {
        let a = TypedTensor::new(ty("n"), Tensor::vector(vec![1.0])).unwrap();
        let b = TypedTensor::new(ty("n.l"), Tensor::vector(vec![1.0])).unwrap();
        assert!(matches!(
            epsilon_contract(&a, 0, &b, 0),
            Err(ComposeError::NotCancellable { .. })
        ));
        assert!(epsilon_contract(&b, 0, &a, 0).is_ok());
    }

    #[test]
    fn eta_is_identity() {
        assert_eq!(eta(1).data(), &[1.0]);
        assert_eq!(eta(3), Tensor::identity(3));
    }

    #[test]
    fn single_word_passes_through() {
        let w = TypedTensor::new(ty("n.r s"), Tensor::identity(2)).unwrap();
        let out = compose(&[w.clone()], &ReductionDiagram::identity(2)).unwrap();
        assert_eq!(out, w);
    }

    #[test]
    fn checked_reports_shape() {
        let spaces = SpaceAssignment::shared(3);
        assert!(matches!(
            TypedTensor::checked(ty("n.r s n.l"), Tensor::vector(vec![1.0; 3]), &spaces),
            Err(ComposeError::Shape { .. })
        ));
        assert!(matches!(
            TypedTensor::new(ty("n n"), Tensor::vector(vec![1.0; 3])),
            Err(ComposeError::Order { .. })
        ));
    }

    #[test]
    fn diagram_mismatch() {
        let w = TypedTensor::new(ty("n"), Tensor::vector(vec![1.0])).unwrap();
        let d = ReductionDiagram::identity(2);
        assert!(matches!(compose(&[w], &d), Err(ComposeError::Diagram(_))));
    }
}
