use std::fmt;

use crate::frobenius::{boundary_tensor, mu_map, BoundaryKind};
use crate::pregroup::{reduce, AtomicType, PregroupType};
use crate::tensor::{compose, ComposeError, Tensor, TensorError, TypedTensor};

use super::annotate::Role;

/// The information-structure shape of a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `theme ⊳ rheme`
    ThemeRheme,
    /// `rheme ⊲ theme`
    RhemeTheme,
    /// `rheme ⊲ theme ⊳ rheme` with a matrix-valued theme.
    MultipleRhemes,
    /// `theme ⊲ rheme ⊳ theme` with a matrix-valued rheme.
    RelationalRheme,
    /// `theme ⊳ rheme ⊲ theme` with vector-valued parts.
    SplitTheme,
}

impl Pattern {
    /// Classifies a span sequence by roles and span arities.
    pub fn detect(parts: &[(Role, usize)]) -> Option<Pattern> {
        use Role::{Rheme as R, Theme as T};
        match parts {
            [(T, 1), (R, 1)] => Some(Pattern::ThemeRheme),
            [(R, 1), (T, 1)] => Some(Pattern::RhemeTheme),
            [(R, 1), (T, 2), (R, 1)] => Some(Pattern::MultipleRhemes),
            [(T, 1), (R, 2), (T, 1)] => Some(Pattern::RelationalRheme),
            [(T, 1), (R, 1), (T, 1)] => Some(Pattern::SplitTheme),
            _ => None,
        }
    }

    /// Order of the resulting meaning tensor.
    pub fn meaning_order(self) -> usize {
        match self {
            Pattern::MultipleRhemes | Pattern::RelationalRheme => 2,
            _ => 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Pattern::ThemeRheme => "theme-rheme",
            Pattern::RhemeTheme => "rheme-theme",
            Pattern::MultipleRhemes => "multiple-rhemes",
            Pattern::RelationalRheme => "relational-rheme",
            Pattern::SplitTheme => "split-theme",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn expect_parts(pattern: Pattern, parts: &[&Tensor]) -> Result<(), TensorError> {
    let orders: &[usize] = match pattern {
        Pattern::ThemeRheme | Pattern::RhemeTheme => &[1, 1],
        Pattern::MultipleRhemes => &[1, 2, 1],
        Pattern::RelationalRheme => &[1, 2, 1],
        Pattern::SplitTheme => &[1, 1, 1],
    };
    if parts.len() != orders.len() {
        return Err(TensorError::Order {
            expected: orders.len(),
            found: parts.len(),
        });
    }
    parts
        .iter()
        .zip(orders)
        .try_for_each(|(p, &o)| p.expect_order(o))
}

/// Merges span meanings in their normal form: element-wise products,
/// with the outer product of the flanking vectors when the middle span is
/// a matrix.
pub fn merge_direct(pattern: Pattern, parts: &[&Tensor]) -> Result<Tensor, TensorError> {
    expect_parts(pattern, parts)?;
    match pattern {
        Pattern::ThemeRheme | Pattern::RhemeTheme => parts[0].hadamard(parts[1]),
        Pattern::MultipleRhemes | Pattern::RelationalRheme => parts[0].outer(parts[2]).hadamard(parts[1]),
        Pattern::SplitTheme => parts[0].hadamard(parts[1])?.hadamard(parts[2]),
    }
}

/// Merges span meanings through the boundary morphisms themselves: the
/// spans and boundary tensors are typed, reduced to `s` and composed, or
/// for matrix-valued middle spans wired through `μ ⊗ μ`.
pub fn merge_categorical(pattern: Pattern, parts: &[&Tensor]) -> Result<Tensor, ComposeError> {
    expect_parts(pattern, parts)?;
    let dim = parts[0].len();
    let theme = PregroupType::atom(AtomicType::theme());
    let rheme = PregroupType::atom(AtomicType::rheme());
    let typed = |ty: &PregroupType, t: &Tensor| TypedTensor::new(ty.clone(), t.clone());

    let words = match pattern {
        Pattern::ThemeRheme => vec![
            typed(&theme, parts[0])?,
            boundary_tensor(BoundaryKind::ThemeRheme, dim),
            typed(&rheme, parts[1])?,
        ],
        Pattern::RhemeTheme => vec![
            typed(&rheme, parts[0])?,
            boundary_tensor(BoundaryKind::RhemeTheme, dim),
            typed(&theme, parts[1])?,
        ],
        Pattern::SplitTheme => vec![
            typed(&theme, parts[0])?,
            boundary_tensor(BoundaryKind::ThemeIntoRheme, dim),
            typed(&rheme, parts[1])?,
            boundary_tensor(BoundaryKind::RhemeTheme, dim),
            typed(&theme, parts[2])?,
        ],
        Pattern::MultipleRhemes | Pattern::RelationalRheme => {
            return Ok(merge_through_middle(parts[0], parts[1], parts[2])?);
        }
    };
    let types: Vec<PregroupType> = words.iter().map(|w| w.ty().clone()).collect();
    let target = PregroupType::atom(AtomicType::sentence());
    let diagrams = reduce(&types, &target)?;
    Ok(compose(&words, &diagrams[0])?.into_tensor())
}

/// `(μ ⊗ μ)(left ⊗ middle ⊗ right)`: the left vector merges with the row
/// wire of `middle`, the right vector with its column wire.
fn merge_through_middle(left: &Tensor, middle: &Tensor, right: &Tensor) -> Result<Tensor, TensorError> {
    let mu_left = mu_map(left.len());
    let mu_right = mu_map(right.len());
    // μ(left, row) → [in₂, out₁], then in₂ meets the row wire → [out₁, col]
    let rows = left.contract(0, &mu_left, 0)?.contract(0, middle, 0)?;
    // μ(col, right) → [out₁, col]·[col, in₂, out₂] → [out₁, in₂, out₂]
    let both = rows.contract(1, &mu_right, 0)?;
    // right meets in₂ → [out₁, out₂]
    both.contract(1, right, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Tensor {
        Tensor::vector(x.to_vec())
    }

    #[test]
    fn detects_patterns() {
        use Role::*;
        assert_eq!(Pattern::detect(&[(Theme, 1), (Rheme, 1)]), Some(Pattern::ThemeRheme));
        assert_eq!(Pattern::detect(&[(Rheme, 1), (Theme, 2), (Rheme, 1)]), Some(Pattern::MultipleRhemes));
        assert_eq!(Pattern::detect(&[(Theme, 2), (Rheme, 1)]), None);
        assert_eq!(Pattern::detect(&[(Rheme, 1)]), None);
    }

    #[test]
    fn two_spans_agree() {
        let t = v(&[1.0, 2.0, 3.0]);
        let r = v(&[4.0, 0.0, 1.0]);
        let direct = merge_direct(Pattern::ThemeRheme, &[&t, &r]).unwrap();
        assert_eq!(direct.data(), &[4.0, 0.0, 3.0]);
        let cat = merge_categorical(Pattern::ThemeRheme, &[&t, &r]).unwrap();
        assert_eq!(cat, direct);
        let cat = merge_categorical(Pattern::RhemeTheme, &[&r, &t]).unwrap();
        assert_eq!(cat, direct);
    }

    #[test]
    fn basis_rhemes_pick_one_entry() {
        let john = v(&[1.0, 0.0]);
        let mary = v(&[0.0, 1.0]);
        let likes = Tensor::matrix(&[vec![2.0, 3.0], vec![5.0, 7.0]]).unwrap();
        let expected = Tensor::matrix(&[vec![0.0, 3.0], vec![0.0, 0.0]]).unwrap();
        let parts = [&john, &likes, &mary];
        assert_eq!(merge_direct(Pattern::MultipleRhemes, &parts).unwrap(), expected);
        assert_eq!(merge_categorical(Pattern::MultipleRhemes, &parts).unwrap(), expected);
    }

    #[test]
    fn split_theme_agrees() {
        let a = v(&[1.0, -2.0]);
        let b = v(&[0.5, 3.0]);
        let c = v(&[4.0, 1.0]);
        let parts = [&a, &b, &c];
        let direct = merge_direct(Pattern::SplitTheme, &parts).unwrap();
        assert_eq!(direct.data(), &[2.0, -6.0]);
        assert_eq!(merge_categorical(Pattern::SplitTheme, &parts).unwrap(), direct);
    }

    #[test]
    fn wrong_orders_rejected() {
        let a = v(&[1.0, 2.0]);
        assert!(merge_direct(Pattern::MultipleRhemes, &[&a, &a, &a]).is_err());
        assert!(merge_direct(Pattern::ThemeRheme, &[&a]).is_err());
    }
}
