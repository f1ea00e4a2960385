use crate::lexicon::{advance, Lexicon};
use crate::pregroup::{reduce_factors, PregroupType, ReductionDiagram};
use crate::tensor::{compose, TypedTensor};

use super::annotate::{AnnotatedSentence, Role, Span};
use super::IntonationError;

/// One way of typing a span so that it reduces to its role type.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanDerivation {
    pub role: Role,
    pub tokens: Vec<String>,
    /// Index of the chosen sense for each token.
    pub senses: Vec<usize>,
    pub types: Vec<PregroupType>,
    pub diagram: ReductionDiagram,
    /// The composed span meaning, typed `θ`, `θ·θ`, `ρ` or `ρ·ρ`.
    pub value: TypedTensor,
}

impl SpanDerivation {
    /// 1 for a vector-valued span, 2 for a matrix-valued one.
    pub fn arity(&self) -> usize {
        self.value.ty().len()
    }
}

/// Spans reduce to their role atom, or to the role atom squared for the
/// relational themes and rhemes of multi-boundary sentences.
const ARITIES: [usize; 2] = [1, 2];

/// Types every span of `sentence`: enumerates all sense assignments of its
/// words, keeps those that reduce to the span's role type, and composes
/// each surviving reduction. Spans are typed independently, so a boundary
/// may sit where the canonical sentence parse has no constituent break.
pub fn type_spans(
    sentence: &AnnotatedSentence,
    lexicon: &Lexicon,
) -> Result<Vec<Vec<SpanDerivation>>, IntonationError> {
    sentence
        .spans()
        .iter()
        .enumerate()
        .map(|(k, span)| {
            let found = type_span(span, lexicon)?;
            if found.is_empty() {
                Err(IntonationError::Infelicitous {
                    span: k + 1,
                    role: span.role,
                    tokens: span.tokens.join(" "),
                    reason: format!(
                        "no sense assignment reduces to {}",
                        span.role.target(1).pretty()
                    ),
                })
            } else {
                Ok(found)
            }
        })
        .collect()
}

fn type_span(span: &Span, lexicon: &Lexicon) -> Result<Vec<SpanDerivation>, IntonationError> {
    let entries = span
        .tokens
        .iter()
        .map(|t| lexicon.entry(t))
        .collect::<Result<Vec<_>, _>>()?;
    let counts: Vec<usize> = entries.iter().map(|e| e.senses.len()).collect();
    if counts.contains(&0) {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; entries.len()];
    loop {
        let types: Vec<PregroupType> = entries
            .iter()
            .zip(&choice)
            .map(|(e, &c)| e.senses[c].ty.clone())
            .collect();
        let flat = PregroupType::flatten(&types);
        for arity in ARITIES {
            let target = span.role.target(arity);
            for diagram in reduce_factors(&flat.factors, &target.factors) {
                let words: Vec<TypedTensor> = entries
                    .iter()
                    .zip(&choice)
                    .map(|(e, &c)| e.senses[c].typed())
                    .collect();
                let value = compose(&words, &diagram)?;
                out.push(SpanDerivation {
                    role: span.role,
                    tokens: span.tokens.clone(),
                    senses: choice.clone(),
                    types: types.clone(),
                    diagram,
                    value,
                });
            }
        }
        if !advance(&mut choice, &counts) {
            break;
        }
    }
    Ok(out)
}
