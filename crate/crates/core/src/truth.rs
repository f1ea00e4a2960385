//! Extensional model: individuals are basis vectors, binary relations are
//! 0/1 adjacency matrices, and a theme such as "John likes" denotes the set
//! of alternatives `{x | John likes x}` as a 0/1 vector.
//!
//! The sentence space here is one-dimensional, so a relation matrix in
//! `N ⊗ N` stands for the verb tensor in `N ⊗ S ⊗ N` with the `S` axis
//! elided. [`lift_relation`] restores that axis.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frobenius::merge;
use crate::lexicon::{Lexicon, LexiconError};
use crate::pregroup::parse_type;
use crate::tensor::{epsilon_contract, SpaceAssignment, Tensor, TensorError, TypedTensor};

#[derive(Debug, Error)]
pub enum TruthError {
    #[error("unknown individual {0:?}")]
    UnknownIndividual(String),
    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("individual {0:?} is listed twice")]
    DuplicateIndividual(String),
    #[error("universe has no individuals")]
    EmptyUniverse,
    #[error("relation matrix entries must be 0 or 1")]
    NotBinary,
    #[error("cannot read {path}: {message}")]
    File { path: String, message: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// An ordered set of named individuals; individual `i` is basis vector `eᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    individuals: Vec<String>,
}

impl Universe {
    pub fn new(individuals: Vec<String>) -> Result<Self, TruthError> {
        if individuals.is_empty() {
            return Err(TruthError::EmptyUniverse);
        }
        for (k, name) in individuals.iter().enumerate() {
            if individuals[..k].contains(name) {
                return Err(TruthError::DuplicateIndividual(name.clone()));
            }
        }
        Ok(Universe { individuals })
    }

    pub fn dim(&self) -> usize {
        self.individuals.len()
    }

    pub fn individuals(&self) -> &[String] {
        &self.individuals
    }

    pub fn index(&self, name: &str) -> Result<usize, TruthError> {
        self.individuals
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| TruthError::UnknownIndividual(name.to_owned()))
    }

    pub fn basis(&self, name: &str) -> Result<Tensor, TruthError> {
        let i = self.index(name)?;
        Ok(Tensor::from_fn(vec![self.dim()], |k| if k[0] == i { 1.0 } else { 0.0 }))
    }

    /// Names of the individuals with a nonzero coordinate in `v`.
    pub fn support(&self, v: &Tensor) -> Vec<String> {
        v.data()
            .iter()
            .zip(&self.individuals)
            .filter(|(x, _)| **x != 0.0)
            .map(|(_, n)| n.clone())
            .collect()
    }
}

/// A binary relation as its adjacency matrix: `W[i, j] = 1` iff `(i, j)` holds.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: String,
    matrix: Tensor,
}

impl Relation {
    pub fn new(name: impl Into<String>, matrix: Tensor) -> Result<Self, TruthError> {
        matrix.expect_order(2)?;
        if matrix.shape()[0] != matrix.shape()[1] {
            return Err(TensorError::NotSquare(matrix.shape().to_vec()).into());
        }
        if matrix.data().iter().any(|&x| x != 0.0 && x != 1.0) {
            return Err(TruthError::NotBinary);
        }
        Ok(Relation {
            name: name.into(),
            matrix,
        })
    }

    pub fn from_pairs(
        name: impl Into<String>,
        universe: &Universe,
        pairs: &[(String, String)],
    ) -> Result<Self, TruthError> {
        let d = universe.dim();
        let mut matrix = Tensor::zeros(vec![d, d]);
        for (a, b) in pairs {
            matrix.set(&[universe.index(a)?, universe.index(b)?], 1.0);
        }
        Relation::new(name, matrix)
    }

    pub fn matrix(&self) -> &Tensor {
        &self.matrix
    }

    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.matrix.get(&[i, j]) == 1.0
    }
}

/// The verb tensor in `N ⊗ S ⊗ N` with a one-dimensional `S`, typed `nʳ·s·nˡ`.
pub fn lift_relation(relation: &Relation) -> TypedTensor {
    let d = relation.matrix.shape()[0];
    let tensor = relation
        .matrix
        .reshape(vec![d, 1, d])
        .expect("same number of entries");
    TypedTensor::new(parse_type("n.r s n.l").expect("static type"), tensor).expect("order 3")
}

/// `Σⱼ W[s, j] eⱼ`: the alternatives set of the theme "subject relation".
pub fn theme_vector(universe: &Universe, subject: &str, relation: &Relation) -> Result<Tensor, TruthError> {
    let s = universe.index(subject)?;
    let d = universe.dim();
    Ok(Tensor::from_fn(vec![d], |j| relation.matrix.get(&[s, j[0]])))
}

/// The same theme vector computed categorically: `(εʳ_N ⊗ 1_S ⊗ 1_N)`
/// applied to `e_subject ⊗ W`, with the one-dimensional `S` axis dropped.
pub fn theme_vector_categorical(
    universe: &Universe,
    subject: &str,
    relation: &Relation,
) -> Result<Tensor, TruthError> {
    let d = universe.dim();
    let spaces = SpaceAssignment::new().with("n", d).with("s", 1);
    let e_s = TypedTensor::checked(parse_type("n").expect("static"), universe.basis(subject)?, &spaces)
        .expect("basis vector lives in N");
    let verb = lift_relation(relation);
    let theme = epsilon_contract(&e_s, 0, &verb, 0).expect("n · nʳ cancels");
    Ok(theme.into_tensor().reshape(vec![d])?)
}

/// The membership reading of the boundary: `theme[rheme]`.
pub fn membership(universe: &Universe, theme: &Tensor, rheme: &str) -> Result<u8, TruthError> {
    let r = universe.index(rheme)?;
    theme.expect_order(1)?;
    Ok(u8::from(theme.data()[r] != 0.0))
}

/// The intersection reading: `theme ⊙ e_rheme`, which is `e_rheme` when the
/// rheme is among the alternatives and the zero vector otherwise.
pub fn intersect(universe: &Universe, theme: &Tensor, rheme: &str) -> Result<Tensor, TruthError> {
    Ok(merge(theme, &universe.basis(rheme)?)?)
}

/// A universe with its named relations, as read from a universe file:
/// `{"individuals": [...], "relations": {"likes": [["John", "Mary"], ...]}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    pub universe: Universe,
    relations: BTreeMap<String, Relation>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldFile {
    individuals: Vec<String>,
    relations: BTreeMap<String, Vec<(String, String)>>,
}

impl World {
    pub fn new(universe: Universe) -> Self {
        World {
            universe,
            relations: BTreeMap::new(),
        }
    }

    pub fn add_relation(&mut self, relation: Relation) {
        self.relations.insert(relation.name.clone(), relation);
    }

    pub fn relation(&self, name: &str) -> Result<&Relation, TruthError> {
        self.relations
            .get(name)
            .ok_or_else(|| TruthError::UnknownRelation(name.to_owned()))
    }

    pub fn relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.values()
    }

    pub fn from_json_str(text: &str) -> Result<Self, TruthError> {
        let file: WorldFile = serde_json::from_str(text).map_err(|e| TruthError::File {
            path: "<input>".to_owned(),
            message: e.to_string(),
        })?;
        let mut world = World::new(Universe::new(file.individuals)?);
        for (name, pairs) in file.relations {
            let relation = Relation::from_pairs(name, &world.universe, &pairs)?;
            world.add_relation(relation);
        }
        Ok(world)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TruthError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| TruthError::File {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        World::from_json_str(&text).map_err(|e| match e {
            TruthError::File { message, .. } => TruthError::File {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    /// Encodes the world as a distributional lexicon over `W = ℝ^|universe|`:
    /// individuals become basis-vector nouns and each relation a verb matrix.
    pub fn to_lexicon(&self) -> Result<Lexicon, TruthError> {
        let mut lexicon = Lexicon::new(SpaceAssignment::shared(self.universe.dim()))?;
        for name in self.universe.individuals() {
            lexicon.add_sense(name, parse_type("n").expect("static"), self.universe.basis(name)?)?;
        }
        for relation in self.relations.values() {
            lexicon.set_verb_matrix(&relation.name, relation.matrix.clone())?;
        }
        Ok(lexicon.with_intonation())
    }

    /// Answers "subject relation ⊳ rheme" under the intersection reading.
    pub fn answer(&self, subject: &str, relation: &str, rheme: &str) -> Result<Answer, TruthError> {
        let relation = self.relation(relation)?;
        let theme = theme_vector(&self.universe, subject, relation)?;
        let vector = intersect(&self.universe, &theme, rheme)?;
        Ok(Answer {
            alternatives: self.universe.support(&theme),
            member: membership(&self.universe, &theme, rheme)?,
            answer: self.universe.support(&vector),
            theme,
            vector,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Answer {
    pub theme: Tensor,
    /// Individuals in the theme's alternatives set.
    pub alternatives: Vec<String>,
    pub member: u8,
    pub vector: Tensor,
    /// `{rheme}` or empty.
    pub answer: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> World {
        World::from_json_str(
            r#"{"individuals": ["Mary", "Sue", "John"],
                "relations": {"likes": [["John", "Mary"], ["John", "Sue"]]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn theme_is_matrix_row() {
        let w = fixture();
        let likes = w.relation("likes").unwrap();
        let t = theme_vector(&w.universe, "John", likes).unwrap();
        assert_eq!(t.data(), &[1.0, 1.0, 0.0]);
        assert_eq!(theme_vector_categorical(&w.universe, "John", likes).unwrap(), t);
        assert_eq!(theme_vector(&w.universe, "Mary", likes).unwrap(), Tensor::zeros(vec![3]));
    }

    #[test]
    fn membership_and_intersection() {
        let w = fixture();
        let t = Tensor::vector(vec![1.0, 1.0, 0.0]);
        assert_eq!(membership(&w.universe, &t, "Mary").unwrap(), 1);
        assert_eq!(membership(&w.universe, &t, "John").unwrap(), 0);
        assert_eq!(intersect(&w.universe, &t, "Mary").unwrap(), w.universe.basis("Mary").unwrap());
        assert_eq!(intersect(&w.universe, &t, "John").unwrap(), Tensor::zeros(vec![3]));
        let all = Tensor::filled(vec![3], 1.0);
        for name in ["Mary", "Sue", "John"] {
            assert_eq!(membership(&w.universe, &all, name).unwrap(), 1);
        }
    }

    #[test]
    fn answers_by_name() {
        let w = fixture();
        let a = w.answer("John", "likes", "Mary").unwrap();
        assert_eq!(a.answer, vec!["Mary".to_owned()]);
        assert_eq!(a.member, 1);
        let a = w.answer("John", "likes", "John").unwrap();
        assert!(a.answer.is_empty());
        assert!(matches!(w.answer("Bob", "likes", "Mary"), Err(TruthError::UnknownIndividual(_))));
        assert!(matches!(w.answer("John", "hates", "Mary"), Err(TruthError::UnknownRelation(_))));
    }

    #[test]
    fn rejects_bad_worlds() {
        assert!(matches!(
            World::from_json_str(r#"{"individuals": ["a", "a"], "relations": {}}"#),
            Err(TruthError::DuplicateIndividual(_))
        ));
        assert!(matches!(
            World::from_json_str(r#"{"individuals": ["a"], "relations": {"r": [["a", "b"]]}}"#),
            Err(TruthError::UnknownIndividual(_))
        ));
        assert!(matches!(
            Relation::new("r", Tensor::filled(vec![2, 2], 0.5)),
            Err(TruthError::NotBinary)
        ));
    }
}
