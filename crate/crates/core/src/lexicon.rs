//! Word → (type, tensor) dictionary.
//!
//! The file format is JSON:
//!
//! ```json
//! {
//!   "dims": {"n": 3, "s": 3, "theta": 3, "rho": 3},
//!   "entries": [
//!     {"word": "Mary", "type": "n", "shape": [3], "data": [0.1, 0.2, 0.3]},
//!     {"word": "John", "type": "n", "data_ref": "vectors.tsv"},
//!     {"word": "likes", "verb_matrix": {"shape": [3, 3], "data": [...]}}
//!   ]
//! }
//! ```
//!
//! `data_ref` names a TSV sidecar (relative to the lexicon file) with lines
//! `word<TAB>v1 v2 … vd`; the entry takes the vector listed for its word.
//! `verb_matrix` stores a transitive verb as a relation matrix in `N ⊗ N`,
//! from which the intonation senses are derived.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::pregroup::{parse_type, reduce_factors, AtomicType, PregroupType, ReductionDiagram, TypeSyntaxError};
use crate::tensor::{ComposeError, SpaceAssignment, Tensor, TensorError, TypedTensor};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}:{line}: {message}")]
    Sidecar {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("dims must assign a space to {0}")]
    MissingDim(String),
    #[error("word {word:?}, sense {sense} ({ty}): expected shape {expected:?}, found {found:?}")]
    Shape {
        word: String,
        sense: usize,
        ty: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("word {word:?}, sense {sense}: {source}")]
    Sense {
        word: String,
        sense: usize,
        #[source]
        source: ComposeError,
    },
    #[error("word {word:?}: bad type {text:?}: {source}")]
    TypeSyntax {
        word: String,
        text: String,
        #[source]
        source: TypeSyntaxError,
    },
    #[error("word {word:?} is listed twice with type {ty}")]
    Duplicate { word: String, ty: String },
    #[error("word {word:?} is listed with two verb matrices")]
    DuplicateMatrix { word: String },
    #[error("word {word:?}: entry needs `type` with `data` or `data_ref`, or a `verb_matrix`")]
    Incomplete { word: String },
    #[error("word {word:?} not found in {path}")]
    MissingVector { word: String, path: PathBuf },
    #[error("unknown word {0:?}")]
    UnknownWord(String),
    #[error("word {0:?} has neither a noun sense nor a verb matrix to derive intonation senses from")]
    MissingBaseSense(String),
    #[error("cosine of two zero vectors is undefined")]
    ZeroVector,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// One reading of a word: its pregroup type and the tensor in `F(type)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sense {
    pub ty: PregroupType,
    pub tensor: Tensor,
}

impl Sense {
    pub fn typed(&self) -> TypedTensor {
        TypedTensor::new(self.ty.clone(), self.tensor.clone()).expect("senses are validated on insert")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry {
    pub word: String,
    pub senses: Vec<Sense>,
    /// Relation matrix of a transitive verb, rows indexed by subject.
    pub verb_matrix: Option<Tensor>,
}

impl LexiconEntry {
    pub fn new(word: impl Into<String>) -> Self {
        LexiconEntry {
            word: word.into(),
            senses: Vec::new(),
            verb_matrix: None,
        }
    }

    pub fn sense(&self, ty: &PregroupType) -> Option<&Sense> {
        self.senses.iter().find(|s| &s.ty == ty)
    }

    fn push_if_absent(&mut self, ty: PregroupType, tensor: Tensor) {
        if self.sense(&ty).is_none() {
            self.senses.push(Sense { ty, tensor });
        }
    }
}

/// Which side of the verb the theme boundary falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntonationMode {
    /// `subject verb ⊳ object`: the verb takes `nʳ·θ`.
    ThemeLeft,
    /// `subject ⊲ verb object`: the verb takes `θ·nˡ`.
    ThemeRight,
}

/// Adds the senses an intonation grammar needs: nouns gain a `ρ` sense with
/// their noun vector; verbs with a relation matrix gain `nʳ·θ` (theme-left)
/// or `θ·nˡ` (theme-right) with that matrix as tensor. Existing senses are
/// kept, so the operation is idempotent.
pub fn derive_intonation_senses(
    entry: &LexiconEntry,
    mode: IntonationMode,
) -> Result<LexiconEntry, LexiconError> {
    let noun = PregroupType::atom(AtomicType::noun());
    let noun_vector = entry.sense(&noun).map(|s| s.tensor.clone());
    if noun_vector.is_none() && entry.verb_matrix.is_none() {
        return Err(LexiconError::MissingBaseSense(entry.word.clone()));
    }
    let mut out = entry.clone();
    if let Some(v) = noun_vector {
        out.push_if_absent(PregroupType::atom(AtomicType::rheme()), v);
    }
    if let Some(m) = &entry.verb_matrix {
        let text = match mode {
            IntonationMode::ThemeLeft => "n.r theta",
            IntonationMode::ThemeRight => "theta n.l",
        };
        out.push_if_absent(parse_type(text).expect("static type"), m.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    spaces: SpaceAssignment,
    entries: BTreeMap<String, LexiconEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    dims: SpaceAssignment,
    entries: Vec<EntryFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    word: String,
    #[serde(rename = "type")]
    ty: Option<String>,
    shape: Option<Vec<usize>>,
    data: Option<Vec<f64>>,
    data_ref: Option<String>,
    verb_matrix: Option<Tensor>,
}

impl Lexicon {
    /// An empty lexicon over `spaces`, which must cover `n`, `s`, `θ` and `ρ`.
    pub fn new(spaces: SpaceAssignment) -> Result<Self, LexiconError> {
        for base in SpaceAssignment::intonation_bases() {
            if spaces.dim(&base).is_none() {
                return Err(LexiconError::MissingDim(base.name().to_owned()));
            }
        }
        Ok(Lexicon {
            spaces,
            entries: BTreeMap::new(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_owned(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Lexicon::from_json_str(&text, base)
    }

    /// Parses lexicon JSON; `data_ref` paths resolve against `base_dir`.
    pub fn from_json_str(text: &str, base_dir: &Path) -> Result<Self, LexiconError> {
        let file: LexiconFile = serde_json::from_str(text).map_err(|e| LexiconError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut lexicon = Lexicon::new(file.dims)?;
        let mut sidecars: BTreeMap<PathBuf, BTreeMap<String, Vec<f64>>> = BTreeMap::new();

        for entry in file.entries {
            let word = entry.word;
            if let Some(m) = entry.verb_matrix {
                lexicon.set_verb_matrix(&word, m)?;
            }
            let Some(text) = entry.ty else {
                if entry.data.is_some() || entry.data_ref.is_some() || entry.shape.is_some() {
                    return Err(LexiconError::Incomplete { word });
                }
                if lexicon.entries.get(&word).is_some_and(|e| e.verb_matrix.is_some()) {
                    continue;
                }
                return Err(LexiconError::Incomplete { word });
            };
            let ty = parse_type(&text).map_err(|source| LexiconError::TypeSyntax {
                word: word.clone(),
                text: text.clone(),
                source,
            })?;
            let data = match (entry.data, entry.data_ref) {
                (Some(data), None) => data,
                (None, Some(reference)) => {
                    let path = base_dir.join(&reference);
                    if !sidecars.contains_key(&path) {
                        let table = read_sidecar(&path)?;
                        sidecars.insert(path.clone(), table);
                    }
                    sidecars[&path]
                        .get(&word)
                        .cloned()
                        .ok_or_else(|| LexiconError::MissingVector {
                            word: word.clone(),
                            path: path.clone(),
                        })?
                }
                _ => return Err(LexiconError::Incomplete { word }),
            };
            let shape = entry.shape.unwrap_or_else(|| vec![data.len()]);
            let sense = lexicon.entries.get(&word).map_or(0, |e| e.senses.len());
            let tensor = Tensor::new(shape, data).map_err(|e| match e {
                TensorError::DataLength { shape, found, .. } => LexiconError::Shape {
                    word: word.clone(),
                    sense,
                    ty: ty.to_string(),
                    expected: shape,
                    found: vec![found],
                },
                other => other.into(),
            })?;
            lexicon.add_sense(&word, ty, tensor)?;
        }
        Ok(lexicon)
    }

    /// Adds a sense after checking its shape against `F(ty)`.
    pub fn add_sense(&mut self, word: &str, ty: PregroupType, tensor: Tensor) -> Result<(), LexiconError> {
        let entry = self
            .entries
            .entry(word.to_owned())
            .or_insert_with(|| LexiconEntry::new(word));
        let sense = entry.senses.len();
        if entry.sense(&ty).is_some() {
            return Err(LexiconError::Duplicate {
                word: word.to_owned(),
                ty: ty.to_string(),
            });
        }
        match TypedTensor::checked(ty.clone(), tensor.clone(), &self.spaces) {
            Ok(_) => {}
            Err(ComposeError::Shape { expected, found, .. }) => {
                return Err(LexiconError::Shape {
                    word: word.to_owned(),
                    sense,
                    ty: ty.to_string(),
                    expected,
                    found,
                })
            }
            Err(source) => {
                return Err(LexiconError::Sense {
                    word: word.to_owned(),
                    sense,
                    source,
                })
            }
        }
        entry.senses.push(Sense { ty, tensor });
        Ok(())
    }

    /// Records the relation matrix of a transitive verb; it must live in `N ⊗ N`.
    pub fn set_verb_matrix(&mut self, word: &str, matrix: Tensor) -> Result<(), LexiconError> {
        let n = self.spaces.dim(&AtomicType::noun()).expect("checked in new");
        if matrix.shape() != [n, n] {
            return Err(LexiconError::Shape {
                word: word.to_owned(),
                sense: 0,
                ty: "verb matrix".to_owned(),
                expected: vec![n, n],
                found: matrix.shape().to_vec(),
            });
        }
        let entry = self
            .entries
            .entry(word.to_owned())
            .or_insert_with(|| LexiconEntry::new(word));
        if entry.verb_matrix.is_some() {
            return Err(LexiconError::DuplicateMatrix { word: word.to_owned() });
        }
        entry.verb_matrix = Some(matrix);
        Ok(())
    }

    pub fn spaces(&self) -> &SpaceAssignment {
        &self.spaces
    }

    pub fn entry(&self, word: &str) -> Result<&LexiconEntry, LexiconError> {
        self.entries
            .get(word)
            .ok_or_else(|| LexiconError::UnknownWord(word.to_owned()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A copy with intonation senses derived, in both modes, for every entry
    /// that has a noun sense or a verb matrix.
    pub fn with_intonation(&self) -> Lexicon {
        let mut out = self.clone();
        for entry in out.entries.values_mut() {
            for mode in [IntonationMode::ThemeLeft, IntonationMode::ThemeRight] {
                if let Ok(derived) = derive_intonation_senses(entry, mode) {
                    *entry = derived;
                }
            }
        }
        out
    }

    /// Every sense assignment to `words` together with each of its
    /// reductions to `target`, assignments in odometer order.
    pub fn parses(&self, words: &[&str], target: &PregroupType) -> Result<Vec<Parse>, LexiconError> {
        let entries = words.iter().map(|w| self.entry(w)).collect::<Result<Vec<_>, _>>()?;
        let counts: Vec<usize> = entries.iter().map(|e| e.senses.len()).collect();
        let mut out = Vec::new();
        if counts.is_empty() || counts.contains(&0) {
            return Ok(out);
        }
        let mut choice = vec![0; entries.len()];
        loop {
            let types: Vec<PregroupType> = entries.iter().zip(&choice).map(|(e, &c)| e.senses[c].ty.clone()).collect();
            let flat = PregroupType::flatten(&types);
            for diagram in reduce_factors(&flat.factors, &target.factors) {
                out.push(Parse {
                    senses: choice.clone(),
                    types: types.clone(),
                    diagram,
                });
            }
            if !advance(&mut choice, &counts) {
                return Ok(out);
            }
        }
    }
}

/// One typing of a word sequence and a reduction of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Parse {
    /// Index of the chosen sense for each word.
    pub senses: Vec<usize>,
    pub types: Vec<PregroupType>,
    pub diagram: ReductionDiagram,
}

/// Steps a mixed-radix counter; `false` once it wraps around.
pub(crate) fn advance(choice: &mut [usize], counts: &[usize]) -> bool {
    for k in (0..choice.len()).rev() {
        choice[k] += 1;
        if choice[k] < counts[k] {
            return true;
        }
        choice[k] = 0;
    }
    false
}

fn read_sidecar(path: &Path) -> Result<BTreeMap<String, Vec<f64>>, LexiconError> {
    let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut table = BTreeMap::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fail = |message: String| LexiconError::Sidecar {
            path: path.to_owned(),
            line: k + 1,
            message,
        };
        let (word, values) = line
            .split_once('\t')
            .ok_or_else(|| fail("expected `word<TAB>values`".to_owned()))?;
        let vector = values
            .split_whitespace()
            .map(|v| v.parse::<f64>().map_err(|e| fail(format!("{v:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if vector.is_empty() {
            return Err(fail("empty vector".to_owned()));
        }
        table.insert(word.to_owned(), vector);
    }
    Ok(table)
}

/// Cosine of two vectors. A zero vector against a nonzero one gives `0`;
/// two zero vectors are an error.
pub fn cosine(u: &Tensor, v: &Tensor) -> Result<f64, LexiconError> {
    u.expect_order(1)?;
    v.expect_order(1)?;
    cosine_flat(u, v)
}

/// Cosine of two same-shape tensors read as flat vectors.
pub fn cosine_flat(u: &Tensor, v: &Tensor) -> Result<f64, LexiconError> {
    if u.shape() != v.shape() {
        return Err(TensorError::ShapeMismatch {
            left: u.shape().to_vec(),
            right: v.shape().to_vec(),
        }
        .into());
    }
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 && nv == 0.0 {
        return Err(LexiconError::ZeroVector);
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    let dot: f64 = u.data().iter().zip(v.data()).map(|(a, b)| a * b).sum();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> PregroupType {
        parse_type(s).unwrap()
    }

    #[test]
    fn loads_two_nouns() {
        let text = r#"{"dims": {"n": 3, "s": 3, "theta": 3, "rho": 3},
            "entries": [
              {"word": "Mary", "type": "n", "shape": [3], "data": [1, 0, 0]},
              {"word": "John", "type": "n", "data": [0, 1, 0]}
            ]}"#;
        let lex = Lexicon::from_json_str(text, Path::new(".")).unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.entry("John").unwrap().senses[0].tensor.data(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn verb_with_vector_is_a_shape_error() {
        let text = r#"{"dims": {"n": 3, "s": 3, "theta": 3, "rho": 3},
            "entries": [{"word": "likes", "type": "n.r s n.l", "shape": [3], "data": [1, 2, 3]}]}"#;
        match Lexicon::from_json_str(text, Path::new(".")) {
            Err(LexiconError::Shape { word, expected, found, .. }) => {
                assert_eq!(word, "likes");
                assert_eq!(expected, vec![3, 3, 3]);
                assert_eq!(found, vec![3]);
            }
            other => panic!("expected shape error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line() {
        let text = "{\"dims\": {\"n\": 2},\n \"entries\": [,]}";
        match Lexicon::from_json_str(text, Path::new(".")) {
            Err(LexiconError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicates_and_missing_dims() {
        let text = r#"{"dims": {"n": 1, "s": 1, "theta": 1, "rho": 1},
            "entries": [{"word": "a", "type": "n", "data": [1]}, {"word": "a", "type": "n", "data": [2]}]}"#;
        assert!(matches!(
            Lexicon::from_json_str(text, Path::new(".")),
            Err(LexiconError::Duplicate { .. })
        ));
        let text = r#"{"dims": {"n": 1, "s": 1}, "entries": []}"#;
        assert!(matches!(
            Lexicon::from_json_str(text, Path::new(".")),
            Err(LexiconError::MissingDim(_))
        ));
    }

    #[test]
    fn noun_gains_rheme_sense() {
        let mut mary = LexiconEntry::new("Mary");
        let v = Tensor::vector(vec![0.2, 0.7]);
        mary.senses.push(Sense { ty: ty("n"), tensor: v.clone() });
        let d = derive_intonation_senses(&mary, IntonationMode::ThemeLeft).unwrap();
        assert_eq!(d.sense(&ty("rho")).unwrap().tensor, v);
        assert_eq!(derive_intonation_senses(&d, IntonationMode::ThemeLeft).unwrap(), d);
    }

    #[test]
    fn zero_verb_gives_zero_senses() {
        let mut likes = LexiconEntry::new("likes");
        likes.verb_matrix = Some(Tensor::zeros(vec![2, 2]));
        let d = derive_intonation_senses(&likes, IntonationMode::ThemeLeft).unwrap();
        let d = derive_intonation_senses(&d, IntonationMode::ThemeRight).unwrap();
        assert_eq!(d.sense(&ty("n.r theta")).unwrap().tensor, Tensor::zeros(vec![2, 2]));
        assert_eq!(d.sense(&ty("theta n.l")).unwrap().tensor, Tensor::zeros(vec![2, 2]));
    }

    #[test]
    fn missing_base_sense() {
        assert!(matches!(
            derive_intonation_senses(&LexiconEntry::new("about"), IntonationMode::ThemeLeft),
            Err(LexiconError::MissingBaseSense(_))
        ));
    }

    #[test]
    fn cosine_basics() {
        let c = cosine(&Tensor::vector(vec![1.0, 0.0]), &Tensor::vector(vec![0.0, 1.0])).unwrap();
        assert_eq!(c, 0.0);
        let c = cosine(&Tensor::vector(vec![2.0, 0.0]), &Tensor::vector(vec![1.0, 0.0])).unwrap();
        assert_eq!(c, 1.0);
        let z = Tensor::vector(vec![0.0, 0.0]);
        assert!(matches!(cosine(&z, &z), Err(LexiconError::ZeroVector)));
        assert_eq!(cosine(&z, &Tensor::vector(vec![1.0, 1.0])).unwrap(), 0.0);
        assert!(cosine(&Tensor::vector(vec![1.0]), &z).is_err());
    }
}
