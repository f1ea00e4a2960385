use std::borrow::Cow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("data length {found} does not match shape {shape:?} (expected {expected})")]
    DataLength {
        shape: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("shape {0:?} has a zero dimension")]
    ZeroDimension(Vec<usize>),
    #[error("axis {axis} out of range for a tensor of order {order}")]
    AxisOutOfRange { axis: usize, order: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("expected a tensor of order {expected}, found order {found}")]
    Order { expected: usize, found: usize },
    #[error("invalid axis permutation {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("rows have unequal lengths")]
    Ragged,
    #[error("expected a square matrix, found shape {0:?}")]
    NotSquare(Vec<usize>),
}

/// Dense real tensor stored row-major. Shape `[]` is a scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTensor")]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

#[derive(Deserialize)]
struct RawTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl TryFrom<RawTensor> for Tensor {
    type Error = TensorError;

    fn try_from(raw: RawTensor) -> Result<Self, Self::Error> {
        Tensor::new(raw.shape, raw.data)
    }
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self, TensorError> {
        if shape.contains(&0) {
            return Err(TensorError::ZeroDimension(shape));
        }
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(TensorError::DataLength {
                shape,
                expected,
                found: data.len(),
            });
        }
        Ok(Tensor { shape, data })
    }

    pub fn scalar(value: f64) -> Self {
        Tensor {
            shape: Vec::new(),
            data: vec![value],
        }
    }

    pub fn vector(data: Vec<f64>) -> Self {
        assert!(!data.is_empty(), "vector must have at least one entry");
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    pub fn matrix(rows: &[Vec<f64>]) -> Result<Self, TensorError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(TensorError::Ragged);
        }
        Tensor::new(vec![rows.len(), cols], rows.concat())
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        Tensor::new(shape, vec![0.0; n]).expect("zero-sized shape")
    }

    pub fn filled(shape: Vec<usize>, value: f64) -> Self {
        let n = shape.iter().product();
        Tensor::new(shape, vec![value; n]).expect("zero-sized shape")
    }

    /// Builds a tensor by evaluating `f` at every multi-index, in row-major order.
    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let n: usize = shape.iter().product();
        let mut data = Vec::with_capacity(n);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..n {
            data.push(f(&idx));
            increment(&mut idx, &shape);
        }
        Tensor::new(shape, data).expect("zero-sized shape")
    }

    pub fn identity(dim: usize) -> Self {
        Tensor::from_fn(vec![dim, dim], |i| if i[0] == i[1] { 1.0 } else { 0.0 })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.order(), "index rank");
        index
            .iter()
            .zip(self.strides())
            .zip(&self.shape)
            .map(|((&i, s), &d)| {
                assert!(i < d, "index {i} out of bounds for axis of size {d}");
                i * s
            })
            .sum()
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let at = self.offset(index);
        self.data[at] = value;
    }

    pub fn as_scalar(&self) -> Option<f64> {
        (self.order() == 0).then(|| self.data[0])
    }

    pub fn expect_order(&self, expected: usize) -> Result<(), TensorError> {
        if self.order() == expected {
            Ok(())
        } else {
            Err(TensorError::Order {
                expected,
                found: self.order(),
            })
        }
    }

    pub fn reshape(&self, shape: Vec<usize>) -> Result<Tensor, TensorError> {
        Tensor::new(shape, self.data.clone())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scale(&self, alpha: f64) -> Tensor {
        self.map(|x| alpha * x)
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(f64, f64) -> f64) -> Result<Tensor, TensorError> {
        if self.shape != other.shape {
            return Err(TensorError::ShapeMismatch {
                left: self.shape.clone(),
                right: other.shape.clone(),
            });
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Element-wise (Hadamard) product `⊙`.
    pub fn hadamard(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Tensor (outer) product; axes of `self` come first.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut data = Vec::with_capacity(self.len() * other.len());
        for &a in &self.data {
            data.extend(other.data.iter().map(|&b| a * b));
        }
        Tensor { shape, data }
    }

    /// Reorders axes so that new axis `k` is old axis `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor, TensorError> {
        let order = self.order();
        let mut seen = vec![false; order];
        if perm.len() != order
            || perm
                .iter()
                .any(|&p| p >= order || std::mem::replace(&mut seen[p], true))
        {
            return Err(TensorError::BadPermutation(perm.to_vec()));
        }
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            return Ok(self.clone());
        }
        let old_strides = self.strides();
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let src_strides: Vec<usize> = perm.iter().map(|&p| old_strides[p]).collect();
        // walk the outer axes with an index, the last axis with a stride
        let (outer, last) = shape.split_at(order - 1);
        let (n, step) = (last[0], src_strides[order - 1]);
        let mut data = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; order - 1];
        for _ in 0..self.len() / n {
            let base: usize = idx.iter().zip(&src_strides).map(|(i, s)| i * s).sum();
            data.extend((0..n).map(|i| self.data[base + i * step]));
            increment(&mut idx, outer);
        }
        Ok(Tensor { shape, data })
    }

    fn check_axis(&self, axis: usize) -> Result<(), TensorError> {
        if axis < self.order() {
            Ok(())
        } else {
            Err(TensorError::AxisOutOfRange {
                axis,
                order: self.order(),
            })
        }
    }

    /// Sums over `self[axis] = other[other_axis]`. The result carries the
    /// remaining axes of `self` followed by the remaining axes of `other`.
    pub fn contract(&self, axis: usize, other: &Tensor, other_axis: usize) -> Result<Tensor, TensorError> {
        self.check_axis(axis)?;
        other.check_axis(other_axis)?;
        let k = self.shape[axis];
        if k != other.shape[other_axis] {
            return Err(TensorError::DimensionMismatch {
                left: k,
                right: other.shape[other_axis],
            });
        }
        let left = if axis + 1 == self.order() {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.permute(&move_axis(self.order(), axis, self.order() - 1))?)
        };
        let right = if other_axis == 0 {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.permute(&move_axis(other.order(), other_axis, 0))?)
        };
        let m = left.len() / k;
        let n = right.len() / k;

        let mut shape: Vec<usize> = left.shape[..left.order() - 1].to_vec();
        shape.extend_from_slice(&right.shape[1..]);
        let mut data = vec![0.0; m * n];
        if n == 1 {
            for (o, row) in data.iter_mut().zip(left.data.chunks_exact(k)) {
                *o = row.iter().zip(&right.data).map(|(a, b)| a * b).sum();
            }
            return Ok(Tensor { shape, data });
        }
        for i in 0..m {
            let row = &left.data[i * k..(i + 1) * k];
            let out = &mut data[i * n..(i + 1) * n];
            for (p, &a) in row.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let col = &right.data[p * n..(p + 1) * n];
                for (o, &b) in out.iter_mut().zip(col) {
                    *o += a * b;
                }
            }
        }

        Ok(Tensor { shape, data })
    }

    /// Contracts two axes of the same tensor against each other.
    pub fn trace(&self, a: usize, b: usize) -> Result<Tensor, TensorError> {
        self.check_axis(a)?;
        self.check_axis(b)?;
        if a == b {
            return Err(TensorError::BadPermutation(vec![a, b]));
        }
        let k = self.shape[a];
        if k != self.shape[b] {
            return Err(TensorError::DimensionMismatch {
                left: k,
                right: self.shape[b],
            });
        }
        let mut perm: Vec<usize> = (0..self.order()).filter(|&x| x != a && x != b).collect();
        perm.push(a);
        perm.push(b);
        let moved = self.permute(&perm)?;
        let rest = moved.len() / (k * k);
        let data = (0..rest)
            .map(|r| (0..k).map(|p| moved.data[r * k * k + p * k + p]).sum())
            .collect();
        Ok(Tensor {
            shape: moved.shape[..moved.order() - 2].to_vec(),
            data,
        })
    }

    pub fn dot(&self, other: &Tensor) -> Result<f64, TensorError> {
        self.expect_order(1)?;
        other.expect_order(1)?;
        Ok(self.contract(0, other, 0)?.data[0])
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `‖a − b‖∞ / max(‖a‖∞, ‖b‖∞)`, or `0` when both are zero.
    /// Infinite when the shapes differ.
    pub fn relative_distance(&self, other: &Tensor) -> f64 {
        let Ok(diff) = self.sub(other) else {
            return f64::INFINITY;
        };
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            0.0
        } else {
            diff.max_abs() / scale
        }
    }

    pub fn approx_eq(&self, other: &Tensor, rel_tol: f64) -> bool {
        self.relative_distance(other) <= rel_tol
    }
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

fn increment(idx: &mut [usize], shape: &[usize]) {
    for k in (0..shape.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// Permutation moving axis `from` to position `to`, keeping the others in order.
fn move_axis(order: usize, from: usize, to: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..order).filter(|&x| x != from).collect();
    perm.insert(to, from);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape() {
        assert!(matches!(
            Tensor::new(vec![2, 2], vec![1.0; 3]),
            Err(TensorError::DataLength { .. })
        ));
        assert!(matches!(
            Tensor::new(vec![2, 0], vec![]),
            Err(TensorError::ZeroDimension(_))
        ));
        assert_eq!(Tensor::new(vec![], vec![2.5]).unwrap().as_scalar(), Some(2.5));
    }

    #[test]
    fn row_major_indexing() {
        let t = Tensor::new(vec![2, 3], (0..6).map(f64::from).collect()).unwrap();
        assert_eq!(t.get(&[1, 0]), 3.0);
        assert_eq!(t.get(&[0, 2]), 2.0);
        assert_eq!(t.strides(), vec![3, 1]);
    }

    #[test]
    fn vector_matrix_contraction() {
        let v = Tensor::vector(vec![1.0, 2.0]);
        let m = Tensor::matrix(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let r = v.contract(0, &m, 0).unwrap();
        assert_eq!(r.shape(), &[3]);
        assert_eq!(r.data(), &[9.0, 12.0, 15.0]);
        let r = m.contract(1, &Tensor::vector(vec![1.0, 0.0, 1.0]), 0).unwrap();
        assert_eq!(r.data(), &[4.0, 10.0]);
    }

    #[test]
    fn contraction_dimension_mismatch() {
        let v = Tensor::vector(vec![1.0, 2.0]);
        let w = Tensor::vector(vec![1.0, 2.0, 3.0]);
        assert!(matches!(
            v.contract(0, &w, 0),
            Err(TensorError::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(
            v.contract(1, &v, 0),
            Err(TensorError::AxisOutOfRange { .. })
        ));
    }

    #[test]
    fn permute_transposes() {
        let m = Tensor::matrix(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        let t = m.permute(&[1, 0]).unwrap();
        assert_eq!(t.shape(), &[3, 2]);
        assert_eq!(t.data(), &[1.0, 4.0, 2.0, 5.0, 3.0, 6.0]);
        assert!(m.permute(&[0, 0]).is_err());
    }

    #[test]
    fn trace_of_matrix() {
        let m = Tensor::matrix(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.trace(0, 1).unwrap().as_scalar(), Some(5.0));
    }

    #[test]
    fn outer_and_hadamard() {
        let u = Tensor::vector(vec![1.0, 2.0]);
        let v = Tensor::vector(vec![3.0, 4.0]);
        assert_eq!(u.outer(&v).data(), &[3.0, 4.0, 6.0, 8.0]);
        assert_eq!(u.hadamard(&v).unwrap().data(), &[3.0, 8.0]);
        assert!(u.hadamard(&Tensor::vector(vec![1.0])).is_err());
    }

    #[test]
    fn json_shape_is_checked() {
        let t: Tensor = serde_json::from_str(r#"{"shape":[2],"data":[1.0,2.0]}"#).unwrap();
        assert_eq!(t, Tensor::vector(vec![1.0, 2.0]));
        assert!(serde_json::from_str::<Tensor>(r#"{"shape":[3],"data":[1.0]}"#).is_err());
    }
}
