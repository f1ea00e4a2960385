use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pregroup::{AtomicType, PregroupType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Theme,
    Rheme,
}

impl Role {
    /// `θ` for themes, `ρ` for rhemes.
    pub fn atom(self) -> AtomicType {
        match self {
            Role::Theme => AtomicType::theme(),
            Role::Rheme => AtomicType::rheme(),
        }
    }

    /// The role atom repeated `arity` times, e.g. `θ·θ`.
    pub fn target(self, arity: usize) -> PregroupType {
        PregroupType::flatten(std::iter::repeat(&PregroupType::atom(self.atom())).take(arity))
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::Theme => "theme",
            Role::Rheme => "rheme",
        }
    }

    fn tag(self) -> char {
        match self {
            Role::Theme => 'T',
            Role::Rheme => 'R',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub role: Role,
    pub tokens: Vec<String>,
}

/// A sentence split into theme and rheme spans; a boundary sits between
/// every pair of adjacent spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedSentence {
    spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnotationError {
    #[error("empty sentence")]
    Empty,
    #[error("byte {offset}: expected `T` or `R` after `{{`")]
    BadRole { offset: usize },
    #[error("byte {offset}: span has no words")]
    EmptySpan { offset: usize },
    #[error("byte {offset}: span is never closed")]
    Unclosed { offset: usize },
    #[error("byte {offset}: unmatched `}}`")]
    Unmatched { offset: usize },
    #[error("byte {offset}: spans cannot nest")]
    Nested { offset: usize },
    #[error("spans {0} and {1} are adjacent with the same role; no boundary separates them")]
    SameRole(usize, usize),
}

impl AnnotatedSentence {
    pub fn new(spans: Vec<Span>) -> Result<Self, AnnotationError> {
        if spans.is_empty() {
            return Err(AnnotationError::Empty);
        }
        if let Some(k) = spans.windows(2).position(|w| w[0].role == w[1].role) {
            return Err(AnnotationError::SameRole(k, k + 1));
        }
        Ok(AnnotatedSentence { spans })
    }

    /// Parses `{T …}` / `{R …}` span brackets. Words outside brackets form
    /// theme spans, so `Mary likes {R musicals}` has theme `Mary likes`.
    pub fn parse(text: &str) -> Result<Self, AnnotationError> {
        let mut spans = Vec::new();
        let mut bare: Vec<String> = Vec::new();
        let mut chars = text.char_indices().peekable();

        let flush = |bare: &mut Vec<String>, spans: &mut Vec<Span>| {
            if !bare.is_empty() {
                spans.push(Span {
                    role: Role::Theme,
                    tokens: std::mem::take(bare),
                });
            }
        };

        while let Some((offset, c)) = chars.next() {
            match c {
                '{' => {
                    flush(&mut bare, &mut spans);
                    let role = match chars.next() {
                        Some((_, 'T')) => Role::Theme,
                        Some((_, 'R')) => Role::Rheme,
                        _ => return Err(AnnotationError::BadRole { offset }),
                    };
                    if chars.peek().is_some_and(|&(_, c)| !c.is_whitespace() && c != '}') {
                        return Err(AnnotationError::BadRole { offset });
                    }
                    let mut tokens = Vec::new();
                    let mut word = String::new();
                    let mut closed = false;
                    for (at, c) in chars.by_ref() {
                        match c {
                            '}' => {
                                closed = true;
                                break;
                            }
                            '{' => return Err(AnnotationError::Nested { offset: at }),
                            c if c.is_whitespace() => {
                                if !word.is_empty() {
                                    tokens.push(std::mem::take(&mut word));
                                }
                            }
                            c => word.push(c),
                        }
                    }
                    if !closed {
                        return Err(AnnotationError::Unclosed { offset });
                    }
                    if !word.is_empty() {
                        tokens.push(word);
                    }
                    if tokens.is_empty() {
                        return Err(AnnotationError::EmptySpan { offset });
                    }
                    spans.push(Span { role, tokens });
                }
                '}' => return Err(AnnotationError::Unmatched { offset }),
                c if c.is_whitespace() => {}
                c => {
                    let mut word = c.to_string();
                    while let Some(&(_, c)) = chars.peek() {
                        if c.is_whitespace() || c == '{' || c == '}' {
                            break;
                        }
                        word.push(c);
                        chars.next();
                    }
                    bare.push(word);
                }
            }
        }
        flush(&mut bare, &mut spans);
        AnnotatedSentence::new(spans)
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn roles(&self) -> Vec<Role> {
        self.spans.iter().map(|s| s.role).collect()
    }
}

impl FromStr for AnnotatedSentence {
    type Err = AnnotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AnnotatedSentence::parse(s)
    }
}

impl fmt::Display for AnnotatedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, span) in self.spans.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{} {}}}", span.role.tag(), span.tokens.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(span: &Span) -> String {
        span.tokens.join(" ")
    }

    #[test]
    fn explicit_spans() {
        let s = AnnotatedSentence::parse("{T Mary likes} {R musicals}").unwrap();
        assert_eq!(s.roles(), vec![Role::Theme, Role::Rheme]);
        assert_eq!(tokens(&s.spans()[0]), "Mary likes");
        assert_eq!(s.to_string(), "{T Mary likes} {R musicals}");
    }

    #[test]
    fn bare_words_are_theme() {
        let s = AnnotatedSentence::parse("Mary likes {R musicals}").unwrap();
        assert_eq!(s.to_string(), "{T Mary likes} {R musicals}");
        let s = AnnotatedSentence::parse("{R John} likes {R Mary}").unwrap();
        assert_eq!(s.roles(), vec![Role::Rheme, Role::Theme, Role::Rheme]);
        let s = AnnotatedSentence::parse("Mary wrote {R a book} about art").unwrap();
        assert_eq!(s.to_string(), "{T Mary wrote} {R a book} {T about art}");
    }

    #[test]
    fn errors() {
        use AnnotationError::*;
        assert_eq!(AnnotatedSentence::parse("  "), Err(Empty));
        assert_eq!(AnnotatedSentence::parse("{X a}"), Err(BadRole { offset: 0 }));
        assert_eq!(AnnotatedSentence::parse("{Ra}"), Err(BadRole { offset: 0 }));
        assert_eq!(AnnotatedSentence::parse("a {R }"), Err(EmptySpan { offset: 2 }));
        assert_eq!(AnnotatedSentence::parse("{R a"), Err(Unclosed { offset: 0 }));
        assert_eq!(AnnotatedSentence::parse("a }"), Err(Unmatched { offset: 2 }));
        assert_eq!(AnnotatedSentence::parse("{R a {T b}}"), Err(Nested { offset: 5 }));
        assert_eq!(AnnotatedSentence::parse("{T a} b {R c}"), Err(SameRole(0, 1)));
    }

    #[test]
    fn role_targets() {
        assert_eq!(Role::Theme.target(2).pretty(), "θ·θ");
        assert_eq!(Role::Rheme.target(1).pretty(), "ρ");
    }
}
