//! Property checks run by `infostruct selfcheck`: the Frobenius condition,
//! spider fusion, the snake equations and the boundary morphism, each on
//! small deterministic inputs.

use serde::Serialize;

use crate::frobenius::{
    boundary_tensor, delta_map, frobenius_condition_check, frobenius_condition_holds, mu_map, BoundaryKind, Spider,
};
use crate::pregroup::{parse_type, reduce};
use crate::tensor::{compose, epsilon_contract, eta, Tensor, TensorError, TypedTensor};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A fixed, irregular test vector; no two entries coincide.
fn probe(dim: usize, seed: usize) -> Tensor {
    Tensor::from_fn(vec![dim], |i| {
        let x = (i[0] * 7 + seed * 13 + 1) as f64;
        (x * 0.618_033_988_75).fract() * 2.0 - 1.0
    })
}

/// Contracts the last `wires` legs of `a` with the first `wires` legs of `b`.
pub fn plug(a: &Tensor, b: &Tensor, wires: usize) -> Result<Tensor, TensorError> {
    let la = a.order();
    let mut out = a.contract(la - wires, b, 0)?;
    for k in 1..wires {
        out = out.trace(la - wires, la - k)?;
    }
    Ok(out)
}

pub fn frobenius(max_dim: usize) -> Check {
    let failed: Vec<usize> = (1..=max_dim).filter(|&d| !frobenius_condition_check(d)).collect();
    Check::new(
        "frobenius condition",
        failed.is_empty(),
        format!("dims 1..={max_dim}, failing: {failed:?}"),
    )
}

/// A comultiplication with one off-diagonal entry must break the condition.
pub fn negative_control() -> Check {
    let mut delta = delta_map(2);
    delta.set(&[0, 0, 1], 1e-3);
    let holds = frobenius_condition_holds(&delta, &mu_map(2)).expect("well-formed shapes");
    Check::new("perturbed comultiplication rejected", !holds, "dim 2, Δ[0,0,1] = 1e-3")
}

pub fn spider_fusion(max_dim: usize, max_legs: usize) -> Check {
    let mut cases = 0;
    let mut failed = Vec::new();
    for dim in 1..=max_dim {
        for a_legs in 1..=max_legs {
            for b_legs in 1..=max_legs {
                for a_in in 0..a_legs {
                    for b_in in 1..=b_legs {
                        let a = Spider::new(a_in, a_legs - a_in, dim);
                        let b = Spider::new(b_in, b_legs - b_in, dim);
                        for wires in 1..=a.outputs.min(b.inputs) {
                            let Some(fused) = a.fuse(&b, wires) else { continue };
                            cases += 1;
                            let plugged = plug(&a.to_tensor(), &b.to_tensor(), wires).expect("legs line up");
                            if plugged != fused.to_tensor() {
                                failed.push(format!("{a:?}∘{b:?} over {wires}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Check::new(
        "spider fusion",
        failed.is_empty(),
        format!("{cases} wirings, dims 1..={max_dim}, up to {max_legs} legs; failing: {failed:?}"),
    )
}

/// `(ε ⊗ 1)∘(1 ⊗ η)` and `(1 ⊗ ε)∘(η ⊗ 1)` act as the identity.
pub fn yanking(max_dim: usize) -> Check {
    let mut failed = Vec::new();
    for dim in 1..=max_dim {
        let v = probe(dim, dim);
        let word = TypedTensor::new(parse_type("n").expect("static"), v.clone()).expect("order 1");
        let cap_r = TypedTensor::new(parse_type("n.r n").expect("static"), eta(dim)).expect("order 2");
        let cap_l = TypedTensor::new(parse_type("n n.l").expect("static"), eta(dim)).expect("order 2");
        let right = epsilon_contract(&word, 0, &cap_r, 0).expect("n cancels nʳ");
        let left = epsilon_contract(&cap_l, 1, &word, 0).expect("nˡ cancels n");
        if right.tensor() != &v || left.tensor() != &v {
            failed.push(dim);
        }
    }
    Check::new(
        "snake equations",
        failed.is_empty(),
        format!("dims 1..={max_dim}, failing: {failed:?}"),
    )
}

/// The boundary tensor composed with a theme and a rheme gives `theme ⊙ rheme`
/// in either orientation.
pub fn boundary(max_dim: usize, tolerance: f64) -> Check {
    let mut failed = Vec::new();
    for dim in 1..=max_dim {
        let t = probe(dim, 2 * dim);
        let r = probe(dim, 2 * dim + 1);
        let expected = t.hadamard(&r).expect("same shape");
        let theme = TypedTensor::new(parse_type("theta").expect("static"), t).expect("order 1");
        let rheme = TypedTensor::new(parse_type("rho").expect("static"), r).expect("order 1");
        for (kind, words) in [
            (BoundaryKind::ThemeRheme, [theme.clone(), boundary_tensor(BoundaryKind::ThemeRheme, dim), rheme.clone()]),
            (BoundaryKind::RhemeTheme, [rheme.clone(), boundary_tensor(BoundaryKind::RhemeTheme, dim), theme.clone()]),
        ] {
            let types: Vec<_> = words.iter().map(|w| w.ty().clone()).collect();
            let ok = reduce(&types, &parse_type("s").expect("static"))
                .ok()
                .and_then(|d| compose(&words, &d[0]).ok())
                .is_some_and(|m| m.tensor().approx_eq(&expected, tolerance));
            if !ok {
                failed.push(format!("{} at dim {dim}", kind.symbol()));
            }
        }
    }
    Check::new(
        "boundary morphism",
        failed.is_empty(),
        format!("dims 1..={max_dim}, both orientations, failing: {failed:?}"),
    )
}

pub fn run_all(tolerance: f64) -> Vec<Check> {
    vec![
        frobenius(8),
        negative_control(),
        spider_fusion(5, 4),
        yanking(8),
        boundary(8, tolerance),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for check in run_all(1e-12) {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn plug_matches_matrix_product() {
        let a = Tensor::matrix(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = Tensor::matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(plug(&a, &b, 1).unwrap(), a.contract(1, &b, 0).unwrap());
        assert_eq!(plug(&a, &b, 2).unwrap().as_scalar(), Some(5.0));
    }
}
