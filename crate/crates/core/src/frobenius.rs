//! The commutative special Frobenius algebra carried by a space with a fixed
//! basis: copying `Δ`, merging `μ`, counit `ι` and unit `ζ`, their spider
//! normal forms, and the tensor assigned to intonational boundaries.
//!
//! Structure maps are stored as tensors with input axes first, so
//! `delta_map(d)` has shape `[d, d, d]` indexed `[input, out₁, out₂]` and
//! `mu_map(d)` is indexed `[in₁, in₂, output]`.

use crate::pregroup::{parse_type, PregroupType};
use crate::tensor::{eta, Tensor, TensorError, TypedTensor};

/// `Δ(v)`: the diagonal matrix with `v` on its diagonal.
pub fn delta(v: &Tensor) -> Result<Tensor, TensorError> {
    v.expect_order(1)?;
    let d = v.len();
    Ok(Tensor::from_fn(vec![d, d], |i| if i[0] == i[1] { v.data()[i[0]] } else { 0.0 }))
}

/// `μ(w)`: the diagonal of a square matrix.
pub fn mu(w: &Tensor) -> Result<Tensor, TensorError> {
    w.expect_order(2)?;
    let (rows, cols) = (w.shape()[0], w.shape()[1]);
    if rows != cols {
        return Err(TensorError::NotSquare(w.shape().to_vec()));
    }
    Ok(Tensor::vector((0..rows).map(|i| w.get(&[i, i])).collect()))
}

/// Counit `ι`: sums the coordinates.
pub fn iota(v: &Tensor) -> Result<f64, TensorError> {
    v.expect_order(1)?;
    Ok(v.data().iter().sum())
}

/// Unit `ζ`: the all-ones vector, so that `μ(ζ ⊗ v) = v`.
pub fn zeta(dim: usize) -> Tensor {
    Tensor::filled(vec![dim], 1.0)
}

/// `μ(u ⊗ v)`, which is `u ⊙ v`.
pub fn merge(u: &Tensor, v: &Tensor) -> Result<Tensor, TensorError> {
    u.expect_order(1)?;
    v.expect_order(1)?;
    mu(&u.outer(v))
}

pub fn delta_map(dim: usize) -> Tensor {
    spider(1, 2, dim)
}

pub fn mu_map(dim: usize) -> Tensor {
    spider(2, 1, dim)
}

/// Normal form of a connected Frobenius network with the given numbers of
/// input and output wires: the generalised Kronecker delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spider {
    pub inputs: usize,
    pub outputs: usize,
    pub dim: usize,
}

impl Spider {
    pub fn new(inputs: usize, outputs: usize, dim: usize) -> Self {
        assert!(inputs + outputs >= 1, "a spider needs at least one leg");
        assert!(dim >= 1, "spider dimension must be positive");
        Spider { inputs, outputs, dim }
    }

    pub fn legs(&self) -> usize {
        self.inputs + self.outputs
    }

    pub fn to_tensor(&self) -> Tensor {
        Tensor::from_fn(vec![self.dim; self.legs()], |idx| {
            if idx.windows(2).all(|w| w[0] == w[1]) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Plugs `wires` outputs of `self` into inputs of `next`. Connected spiders
    /// fuse, so the result is again a spider. Returns `None` when the wiring
    /// is impossible or leaves no open legs.
    pub fn fuse(&self, next: &Spider, wires: usize) -> Option<Spider> {
        if self.dim != next.dim || wires == 0 || wires > self.outputs || wires > next.inputs {
            return None;
        }
        let inputs = self.inputs + next.inputs - wires;
        let outputs = self.outputs - wires + next.outputs;
        (inputs + outputs >= 1).then(|| Spider::new(inputs, outputs, self.dim))
    }
}

/// Dense tensor of `Spider::new(inputs, outputs, dim)`.
pub fn spider(inputs: usize, outputs: usize, dim: usize) -> Tensor {
    Spider::new(inputs, outputs, dim).to_tensor()
}

/// The three composites of the Frobenius condition, each indexed
/// `[in₁, in₂, out₁, out₂]`:
/// `(μ ⊗ 1)∘(1 ⊗ Δ)`, `Δ∘μ` and `(1 ⊗ μ)∘(Δ ⊗ 1)`.
pub fn frobenius_composites(delta_map: &Tensor, mu_map: &Tensor) -> Result<[Tensor; 3], TensorError> {
    // (μ ⊗ 1)∘(1 ⊗ Δ): Δ on in₂ → [x, out₂]; μ(in₁, x) → out₁
    let left = mu_map
        .contract(1, delta_map, 1)? // [in₁, out₁, in₂, out₂]
        .permute(&[0, 2, 1, 3])?;
    // Δ∘μ
    let middle = mu_map.contract(2, delta_map, 0)?; // [in₁, in₂, out₁, out₂]
    // (1 ⊗ μ)∘(Δ ⊗ 1): Δ on in₁ → [out₁, y]; μ(y, in₂) → out₂
    let right = delta_map
        .contract(2, mu_map, 0)? // [in₁, out₁, in₂, out₂]
        .permute(&[0, 2, 1, 3])?;
    Ok([left, middle, right])
}

/// Whether the given comultiplication and multiplication satisfy the
/// Frobenius condition entrywise.
pub fn frobenius_condition_holds(delta_map: &Tensor, mu_map: &Tensor) -> Result<bool, TensorError> {
    let [l, m, r] = frobenius_composites(delta_map, mu_map)?;
    Ok(l == m && m == r)
}

/// Builds the three composites for the canonical algebra of dimension `dim`
/// and compares them exactly.
pub fn frobenius_condition_check(dim: usize) -> bool {
    frobenius_condition_holds(&delta_map(dim), &mu_map(dim)).expect("canonical maps are well formed")
}

/// Which pregroup type an intonational boundary takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// `theme ⊳ rheme`, typed `θʳ·s·ρˡ`.
    ThemeRheme,
    /// `rheme ⊲ theme`, typed `ρʳ·s·θˡ`.
    RhemeTheme,
    /// Left boundary of a theme split by a rheme, typed `θʳ·ρ·ρˡ`; it
    /// yields a new rheme for the boundary on its right.
    ThemeIntoRheme,
}

impl BoundaryKind {
    pub fn pregroup_type(self) -> PregroupType {
        let text = match self {
            BoundaryKind::ThemeRheme => "theta.r s rho.l",
            BoundaryKind::RhemeTheme => "rho.r s theta.l",
            BoundaryKind::ThemeIntoRheme => "theta.r rho rho.l",
        };
        parse_type(text).expect("boundary types are well formed")
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BoundaryKind::ThemeRheme | BoundaryKind::ThemeIntoRheme => "⊳",
            BoundaryKind::RhemeTheme => "⊲",
        }
    }
}

/// The boundary morphism `(1 ⊗ μ ⊗ 1)∘(η ⊗ η)`, built by composing the
/// η and μ tensors. Entry `[i, k, j]` is 1 iff `i = k = j`.
pub fn boundary_tensor(kind: BoundaryKind, dim: usize) -> TypedTensor {
    // η ⊗ η = [a, b] ⊗ [c, e]; μ joins the inner wires b and c
    let merged = eta(dim)
        .contract(1, &mu_map(dim), 0) // [a, c, out]
        .and_then(|t| t.contract(1, &eta(dim), 0)) // [a, out, e]
        .expect("boundary construction is shape-correct");
    TypedTensor::new(kind.pregroup_type(), merged).expect("order 3 for a 3-factor type")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_builds_diagonal() {
        let d = delta(&Tensor::vector(vec![1.0, 2.0])).unwrap();
        assert_eq!(d, Tensor::matrix(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap());
        assert_eq!(delta(&Tensor::vector(vec![0.0; 3])).unwrap(), Tensor::zeros(vec![3, 3]));
    }

    #[test]
    fn mu_reads_diagonal() {
        let m = Tensor::matrix(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(mu(&m).unwrap().data(), &[1.0, 4.0]);
        assert_eq!(mu(&Tensor::identity(3)).unwrap().data(), &[1.0, 1.0, 1.0]);
        let rect = Tensor::zeros(vec![2, 3]);
        assert!(matches!(mu(&rect), Err(TensorError::NotSquare(_))));
    }

    #[test]
    fn unit_and_counit() {
        assert_eq!(iota(&Tensor::vector(vec![1.0, 2.0, 3.0])).unwrap(), 6.0);
        assert_eq!(zeta(3).data(), &[1.0, 1.0, 1.0]);
        let v = Tensor::vector(vec![0.5, -2.0, 7.0]);
        assert_eq!(merge(&zeta(3), &v).unwrap(), v);
    }

    #[test]
    fn small_spiders() {
        assert_eq!(spider(1, 1, 4), Tensor::identity(4));
        let v = Tensor::vector(vec![3.0, -1.0]);
        let copied = v.contract(0, &spider(1, 2, 2), 0).unwrap();
        assert_eq!(copied, delta(&v).unwrap());
    }

    #[test]
    fn fuse_counts_legs() {
        let a = Spider::new(2, 1, 3);
        let b = Spider::new(1, 2, 3);
        assert_eq!(a.fuse(&b, 1), Some(Spider::new(2, 2, 3)));
        assert_eq!(b.fuse(&a, 2), Some(Spider::new(1, 1, 3)));
        assert_eq!(a.fuse(&b, 2), None);
        assert_eq!(Spider::new(0, 1, 3).fuse(&Spider::new(1, 0, 3), 1), None);
    }

    #[test]
    fn frobenius_condition_and_negative_control() {
        for d in 1..=4 {
            assert!(frobenius_condition_check(d));
        }
        let mut bent = delta_map(2);
        bent.set(&[0, 0, 1], 1e-3);
        assert!(!frobenius_condition_holds(&bent, &mu_map(2)).unwrap());
    }

    #[test]
    fn boundary_is_three_leg_spider() {
        let t = boundary_tensor(BoundaryKind::ThemeRheme, 2);
        assert_eq!(t.tensor(), &spider(1, 2, 2));
        assert_eq!(t.ty().pretty(), "θʳ·s·ρˡ");
        assert_eq!(
            boundary_tensor(BoundaryKind::RhemeTheme, 3).tensor(),
            boundary_tensor(BoundaryKind::ThemeRheme, 3).tensor()
        );
    }
}
