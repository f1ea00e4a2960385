//! Meanings of intonation-annotated sentences.
//!
//! Each theme or rheme span is typed and composed on its own with the
//! usual tensor contractions; the spans are then merged through the
//! Frobenius multiplication carried by the boundaries between them.

mod annotate;
mod copy;
mod merge;
mod spans;

use thiserror::Error;

pub use annotate::{AnnotatedSentence, AnnotationError, Role, Span};
pub use copy::{copy_expand, CopyWire};
pub use merge::{merge_categorical, merge_direct, Pattern};
pub use spans::{type_spans, SpanDerivation};

use crate::lexicon::{advance, Lexicon, LexiconError};
use crate::pregroup::ReductionError;
use crate::tensor::{ComposeError, Tensor, TensorError};

#[derive(Debug, Error)]
pub enum IntonationError {
    #[error(transparent)]
    Annotation(#[from] AnnotationError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("infelicitous structure: span {span} ({role} `{tokens}`): {reason}")]
    Infelicitous {
        span: usize,
        role: Role,
        tokens: String,
        reason: String,
    },
    #[error("infelicitous structure: spans typed as [{found}] form no supported pattern")]
    NoPattern { found: String },
    #[error("expected a {expected} sentence, found {found}")]
    WrongPattern { expected: Pattern, found: String },
    #[error("intonation needs n, s, theta and rho to share one space")]
    NotShared,
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

impl From<ReductionError> for IntonationError {
    fn from(e: ReductionError) -> Self {
        IntonationError::Compose(e.into())
    }
}

/// The meaning of an annotated sentence under one derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceMeaning {
    pub pattern: Pattern,
    /// Order 1 for single-rheme sentences, order 2 when a matrix-valued
    /// span sits between two boundaries.
    pub tensor: Tensor,
    pub spans: Vec<SpanDerivation>,
}

impl SentenceMeaning {
    pub fn span_tensors(&self) -> Vec<&Tensor> {
        self.spans.iter().map(|s| s.value.tensor()).collect()
    }
}

/// Every meaning the sentence admits, one per combination of span
/// derivations that forms a supported pattern, in derivation order.
pub fn meanings(sentence: &AnnotatedSentence, lexicon: &Lexicon) -> Result<Vec<SentenceMeaning>, IntonationError> {
    if lexicon.spaces().shared_dim().is_none() {
        return Err(IntonationError::NotShared);
    }
    let per_span = type_spans(sentence, lexicon)?;

    let mut out = Vec::new();
    let mut seen_shapes = Vec::new();
    let counts: Vec<usize> = per_span.iter().map(Vec::len).collect();
    let mut choice = vec![0usize; per_span.len()];
    loop {
        let spans: Vec<&SpanDerivation> = per_span.iter().zip(&choice).map(|(d, &c)| &d[c]).collect();
        let parts: Vec<(Role, usize)> = spans.iter().map(|s| (s.role, s.arity())).collect();
        match Pattern::detect(&parts) {
            Some(pattern) => {
                let tensors: Vec<&Tensor> = spans.iter().map(|s| s.value.tensor()).collect();
                out.push(SentenceMeaning {
                    pattern,
                    tensor: merge_direct(pattern, &tensors)?,
                    spans: spans.into_iter().cloned().collect(),
                });
            }
            None => seen_shapes.push(describe(&parts)),
        }
        if !advance(&mut choice, &counts) {
            break;
        }
    }
    if out.is_empty() {
        return Err(IntonationError::NoPattern {
            found: seen_shapes.join(" | "),
        });
    }
    Ok(out)
}

/// The first meaning in derivation order.
pub fn meaning(sentence: &AnnotatedSentence, lexicon: &Lexicon) -> Result<SentenceMeaning, IntonationError> {
    Ok(meanings(sentence, lexicon)?.swap_remove(0))
}

fn meaning_with(
    pattern: Pattern,
    sentence: &AnnotatedSentence,
    lexicon: &Lexicon,
) -> Result<SentenceMeaning, IntonationError> {
    let all = meanings(sentence, lexicon)?;
    let found = all.iter().map(|m| m.pattern.tag()).collect::<Vec<_>>().join(", ");
    all.into_iter()
        .find(|m| m.pattern == pattern)
        .ok_or(IntonationError::WrongPattern { expected: pattern, found })
}

/// `rheme ⊲ theme ⊳ rheme` with a matrix theme: `(r₁ ⊗ r₂) ⊙ theme`.
pub fn meaning_multiple_rhemes(
    sentence: &AnnotatedSentence,
    lexicon: &Lexicon,
) -> Result<SentenceMeaning, IntonationError> {
    meaning_with(Pattern::MultipleRhemes, sentence, lexicon)
}

/// `theme ⊳ rheme ⊲ theme`: `t₁ ⊙ r ⊙ t₂`.
pub fn meaning_split_theme(
    sentence: &AnnotatedSentence,
    lexicon: &Lexicon,
) -> Result<SentenceMeaning, IntonationError> {
    meaning_with(Pattern::SplitTheme, sentence, lexicon)
}

fn describe(parts: &[(Role, usize)]) -> String {
    parts
        .iter()
        .map(|&(role, arity)| role.target(arity).pretty())
        .collect::<Vec<_>>()
        .join(", ")
}
