use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A basic grammatical type such as `n`, `s`, `theta` or `rho`.
///
/// Names are case-sensitive. The Greek spellings `θ` and `ρ` are accepted
/// on input and normalised to `theta` and `rho`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicType(String);

impl AtomicType {
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        match name.as_str() {
            "θ" => AtomicType("theta".to_owned()),
            "ρ" => AtomicType("rho".to_owned()),
            _ => AtomicType(name),
        }
    }

    pub fn noun() -> Self {
        Self::new("n")
    }

    pub fn sentence() -> Self {
        Self::new("s")
    }

    pub fn theme() -> Self {
        Self::new("theta")
    }

    pub fn rheme() -> Self {
        Self::new("rho")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn symbol(&self) -> &str {
        match self.0.as_str() {
            "theta" => "θ",
            "rho" => "ρ",
            other => other,
        }
    }
}

impl fmt::Display for AtomicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atomic type together with its adjoint order.
///
/// The order counts iterated adjoints: `-1` is the left adjoint `pˡ`,
/// `+1` the right adjoint `pʳ`, `0` the plain type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub base: AtomicType,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn new(base: AtomicType, adjoint: i32) -> Self {
        SimpleType { base, adjoint }
    }

    pub fn plain(base: AtomicType) -> Self {
        SimpleType { base, adjoint: 0 }
    }

    pub fn left(&self) -> Self {
        SimpleType::new(self.base.clone(), self.adjoint - 1)
    }

    pub fn right(&self) -> Self {
        SimpleType::new(self.base.clone(), self.adjoint + 1)
    }

    pub fn is_plain(&self) -> bool {
        self.adjoint == 0
    }

    /// Whether `self · other ≤ 1` is a contraction, i.e. `other` sits one
    /// adjoint step to the right of `self` on the same base.
    pub fn cancels_with(&self, other: &SimpleType) -> bool {
        self.base == other.base && other.adjoint == self.adjoint + 1
    }

    /// Superscript rendering, e.g. `nʳ` or `θˡˡ`.
    pub fn pretty(&self) -> String {
        let mark = if self.adjoint > 0 { "ʳ" } else { "ˡ" };
        let mut out = self.base.symbol().to_owned();
        for _ in 0..self.adjoint.unsigned_abs() {
            out.push_str(mark);
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.name())?;
        let suffix = if self.adjoint > 0 { ".r" } else { ".l" };
        for _ in 0..self.adjoint.unsigned_abs() {
            f.write_str(suffix)?;
        }
        Ok(())
    }
}

/// An element of the free pregroup: a juxtaposition of simple types.
/// The empty sequence is the monoid unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PregroupType {
    pub factors: Vec<SimpleType>,
}

impl PregroupType {
    pub fn unit() -> Self {
        PregroupType::default()
    }

    pub fn new(factors: Vec<SimpleType>) -> Self {
        PregroupType { factors }
    }

    pub fn atom(base: AtomicType) -> Self {
        PregroupType::new(vec![SimpleType::plain(base)])
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_plain(&self) -> bool {
        self.factors.iter().all(SimpleType::is_plain)
    }

    /// Monoid product.
    pub fn concat(&self, other: &PregroupType) -> PregroupType {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        PregroupType { factors }
    }

    /// Left adjoint of a product: `(p·q)ˡ = qˡ·pˡ`.
    pub fn left(&self) -> PregroupType {
        PregroupType::new(self.factors.iter().rev().map(SimpleType::left).collect())
    }

    /// Right adjoint of a product: `(p·q)ʳ = qʳ·pʳ`.
    pub fn right(&self) -> PregroupType {
        PregroupType::new(self.factors.iter().rev().map(SimpleType::right).collect())
    }

    pub fn pretty(&self) -> String {
        if self.is_unit() {
            return "1".to_owned();
        }
        self.factors
            .iter()
            .map(SimpleType::pretty)
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Flattens a sequence of word types into a single factor sequence.
    pub fn flatten<'a>(types: impl IntoIterator<Item = &'a PregroupType>) -> PregroupType {
        PregroupType::new(
            types
                .into_iter()
                .flat_map(|t| t.factors.iter().cloned())
                .collect(),
        )
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for factor in &self.factors {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeSyntaxError {
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unknown adjoint suffix {found:?} at byte {offset} (expected `l` or `r`)")]
    BadSuffix { offset: usize, found: String },
    #[error("missing base type at byte {offset}")]
    MissingBase { offset: usize },
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Parses whitespace-separated factors such as `n.r s n.l`.
///
/// Each factor is a base name followed by any number of `.l` / `.r`
/// suffixes, applied left to right, so `n.l.r` is plain `n`.
pub fn parse_type(text: &str) -> Result<PregroupType, TypeSyntaxError> {
    let mut factors = Vec::new();
    let mut chars = text.char_indices().peekable();

    while let Some(&(offset, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '.' {
            return Err(TypeSyntaxError::MissingBase { offset });
        }
        if !is_name_char(c) {
            return Err(TypeSyntaxError::UnexpectedChar { offset, found: c });
        }

        let mut name = String::new();
        while let Some(&(_, c)) = chars.peek() {
            if !is_name_char(c) {
                break;
            }
            name.push(c);
            chars.next();
        }

        let mut adjoint = 0i32;
        while let Some(&(_, '.')) = chars.peek() {
            chars.next();
            let (suffix_at, _) = chars.peek().copied().unwrap_or((text.len(), ' '));
            let mut suffix = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !is_name_char(c) {
                    break;
                }
                suffix.push(c);
                chars.next();
            }
            match suffix.as_str() {
                "l" => adjoint -= 1,
                "r" => adjoint += 1,
                _ => {
                    return Err(TypeSyntaxError::BadSuffix {
                        offset: suffix_at,
                        found: suffix,
                    })
                }
            }
        }

        if let Some(&(offset, c)) = chars.peek() {
            if !c.is_whitespace() {
                return Err(TypeSyntaxError::UnexpectedChar { offset, found: c });
            }
        }

        factors.push(SimpleType::new(AtomicType::new(name), adjoint));
    }

    Ok(PregroupType { factors })
}

impl FromStr for PregroupType {
    type Err = TypeSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_type(s)
    }
}
