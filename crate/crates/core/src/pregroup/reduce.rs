use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::types::{PregroupType, SimpleType};

/// A planar cup-linking witnessing `t₁·…·tₙ ≤ target`.
///
/// Indices are 0-based positions in the flattened factor sequence. The
/// JSON form uses 1-based indices: `{"links": [[i, j], …], "survivors": [k, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "DiagramJson", try_from = "DiagramJson")]
pub struct ReductionDiagram {
    links: Vec<(usize, usize)>,
    survivors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("link ({0}, {1}) is not ordered left to right")]
    Unordered(usize, usize),
    #[error("links ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("survivor {survivor} lies under link ({left}, {right})")]
    Enclosed {
        survivor: usize,
        left: usize,
        right: usize,
    },
    #[error("index {0} is used more than once")]
    Reused(usize),
    #[error("index {0} is neither linked nor a survivor")]
    Uncovered(usize),
    #[error("indices in JSON form are 1-based; found 0")]
    ZeroIndex,
}

impl ReductionDiagram {
    /// Builds a diagram from 0-based links and survivors, checking that
    /// every index in `0..len` is covered exactly once and nothing crosses.
    pub fn new(
        mut links: Vec<(usize, usize)>,
        mut survivors: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        links.sort_unstable();
        survivors.sort_unstable();
        let len = links.len() * 2 + survivors.len();
        let mut seen = vec![false; len];
        if let Some(&(i, j)) = links.iter().find(|(i, j)| i >= j) {
            return Err(DiagramError::Unordered(i, j));
        }
        let all = links.iter().flat_map(|&(i, j)| [i, j]).chain(survivors.iter().copied());
        for i in all {
            match seen.get_mut(i) {
                Some(slot) if *slot => return Err(DiagramError::Reused(i)),
                Some(slot) => *slot = true,
                None => {
                    let gap = seen.iter().position(|s| !s).unwrap_or(len);
                    return Err(DiagramError::Uncovered(gap));
                }
            }
        }
        for (a, &(i, j)) in links.iter().enumerate() {
            for &(k, l) in &links[a + 1..] {
                if (i < k && k < j && j < l) || (k < i && i < l && l < j) {
                    return Err(DiagramError::Crossing(i, j, k, l));
                }
            }
            if let Some(&s) = survivors.iter().find(|&&s| i < s && s < j) {
                return Err(DiagramError::Enclosed {
                    survivor: s,
                    left: i,
                    right: j,
                });
            }
        }
        Ok(ReductionDiagram { links, survivors })
    }

    /// The identity diagram on `len` factors: no links, everything survives.
    pub fn identity(len: usize) -> Self {
        ReductionDiagram {
            links: Vec::new(),
            survivors: (0..len).collect(),
        }
    }

    /// Links sorted by left endpoint.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    /// Number of factors in the diagram's domain.
    pub fn len(&self) -> usize {
        self.links.len() * 2 + self.survivors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks the diagram against a concrete factor sequence: every link must
    /// be a legal contraction.
    pub fn check_against(&self, factors: &[SimpleType]) -> Result<(), ReductionError> {
        if factors.len() != self.len() {
            return Err(ReductionError::DomainMismatch {
                expected: self.len(),
                found: factors.len(),
            });
        }
        for &(i, j) in &self.links {
            if !factors[i].cancels_with(&factors[j]) {
                return Err(ReductionError::NotCancellable {
                    left: factors[i].clone(),
                    right: factors[j].clone(),
                });
            }
        }
        Ok(())
    }

    /// The type left after replaying the links on `factors`.
    pub fn codomain(&self, factors: &[SimpleType]) -> PregroupType {
        PregroupType::new(self.survivors.iter().map(|&k| factors[k].clone()).collect())
    }

    /// 1-based JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialises")
    }

    /// Graphviz rendering of the cups over the factor sequence.
    pub fn to_dot(&self, factors: &[SimpleType]) -> String {
        let mut out = String::from("graph reduction {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for (k, f) in factors.iter().enumerate() {
            out.push_str(&format!("  f{} [label=\"{}\"];\n", k + 1, f.pretty()));
        }
        for w in 1..factors.len() {
            out.push_str(&format!("  f{} -- f{} [style=invis];\n", w, w + 1));
        }
        for &(i, j) in &self.links {
            out.push_str(&format!("  f{} -- f{} [constraint=false];\n", i + 1, j + 1));
        }
        if !self.survivors.is_empty() {
            out.push_str("  out [shape=box,label=\"output\"];\n");
            for &k in &self.survivors {
                out.push_str(&format!("  f{} -- out;\n", k + 1));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    links: Vec<[usize; 2]>,
    survivors: Vec<usize>,
}

impl From<ReductionDiagram> for DiagramJson {
    fn from(d: ReductionDiagram) -> Self {
        DiagramJson {
            links: d.links.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            survivors: d.survivors.iter().map(|k| k + 1).collect(),
        }
    }
}

impl TryFrom<DiagramJson> for ReductionDiagram {
    type Error = DiagramError;

    fn try_from(j: DiagramJson) -> Result<Self, Self::Error> {
        let dec = |i: usize| i.checked_sub(1).ok_or(DiagramError::ZeroIndex);
        let links = j
            .links
            .iter()
            .map(|&[a, b]| Ok((dec(a)?, dec(b)?)))
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let survivors = j
            .survivors
            .iter()
            .map(|&k| dec(k))
            .collect::<Result<Vec<_>, _>>()?;
        ReductionDiagram::new(links, survivors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no reduction to {target}")]
    NoReduction { target: String },
    #[error("target type {0} has adjoint factors; only plain targets are supported")]
    NonPlainTarget(String),
    #[error("empty type sequence")]
    EmptyInput,
    #[error("diagram covers {expected} factors but the sequence has {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("{left} and {right} do not cancel")]
    NotCancellable { left: SimpleType, right: SimpleType },
}

/// Finds every contraction-only reduction of `types` to `target`.
///
/// The search is a left-to-right stack scan: each factor either closes the
/// link opened by the factor on top of the stack, opens a new link, or
/// (when no link is open) survives as the next target factor. Branching
/// over those choices enumerates every planar matching. Results are
/// ordered lexicographically by their link lists.
pub fn reduce(
    types: &[PregroupType],
    target: &PregroupType,
) -> Result<Vec<ReductionDiagram>, ReductionError> {
    if types.is_empty() {
        return Err(ReductionError::EmptyInput);
    }
    if !target.is_plain() {
        return Err(ReductionError::NonPlainTarget(target.to_string()));
    }
    let flat = PregroupType::flatten(types);
    let found = reduce_factors(&flat.factors, &target.factors);
    if found.is_empty() {
        Err(ReductionError::NoReduction {
            target: target.to_string(),
        })
    } else {
        Ok(found)
    }
}

/// `true` iff `reduce` would succeed.
pub fn grammatical(types: &[PregroupType], target: &PregroupType) -> bool {
    reduce(types, target).is_ok()
}

/// Same search as [`reduce`] on an already flattened sequence; returns an
/// empty vector instead of an error.
pub fn reduce_factors(factors: &[SimpleType], target: &[SimpleType]) -> Vec<ReductionDiagram> {
    let mut search = Search {
        factors,
        target,
        stack: Vec::new(),
        links: Vec::new(),
        survivors: Vec::new(),
        found: Vec::new(),
    };
    if (factors.len() + target.len()) % 2 == 0 && factors.len() >= target.len() {
        search.step(0);
    }
    let mut found = search.found;
    found.sort();
    found.dedup();
    found
}

struct Search<'a> {
    factors: &'a [SimpleType],
    target: &'a [SimpleType],
    stack: Vec<usize>,
    links: Vec<(usize, usize)>,
    survivors: Vec<usize>,
    found: Vec<ReductionDiagram>,
}

impl Search<'_> {
    fn step(&mut self, pos: usize) {
        let remaining = self.factors.len() - pos;
        let survivors_left = self.target.len() - self.survivors.len();
        // every open link needs a closing factor, every missing survivor a slot
        if self.stack.len() + survivors_left > remaining {
            return;
        }
        if pos == self.factors.len() {
            let mut links = self.links.clone();
            links.sort_unstable();
            self.found.push(ReductionDiagram {
                links,
                survivors: self.survivors.clone(),
            });
            return;
        }
        let here = &self.factors[pos];

        if let Some(&open) = self.stack.last() {
            if self.factors[open].cancels_with(here) {
                self.stack.pop();
                self.links.push((open, pos));
                self.step(pos + 1);
                self.links.pop();
                self.stack.push(open);
            }
        }

        self.stack.push(pos);
        self.step(pos + 1);
        self.stack.pop();

        if self.stack.is_empty() && self.target.get(self.survivors.len()) == Some(here) {
            self.survivors.push(pos);
            self.step(pos + 1);
            self.survivors.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pregroup::parse_type;

    fn ty(s: &str) -> PregroupType {
        parse_type(s).unwrap()
    }

    #[test]
    fn transitive_sentence() {
        let d = reduce(&[ty("n"), ty("n.r s n.l"), ty("n")], &ty("s")).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].links(), &[(0, 1), (3, 4)]);
        assert_eq!(d[0].survivors(), &[2]);
        assert_eq!(d[0].to_json(), r#"{"links":[[1,2],[4,5]],"survivors":[3]}"#);
    }

    #[test]
    fn identity_reduction() {
        let d = reduce(&[ty("s")], &ty("s")).unwrap();
        assert_eq!(d, vec![ReductionDiagram::identity(1)]);
    }

    #[test]
    fn theme_boundary_rheme() {
        let d = reduce(
            &[ty("n"), ty("n.r theta"), ty("theta.r s rho.l"), ty("rho")],
            &ty("s"),
        )
        .unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].links(), &[(0, 1), (2, 3), (5, 6)]);
        assert_eq!(d[0].survivors(), &[4]);
    }

    #[test]
    fn two_distinct_reductions() {
        let d = reduce(&[ty("n n.r n.r.r n.r n.r.r n.r.r.r")], &PregroupType::unit()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].links(), &[(0, 1), (2, 5), (3, 4)]);
        assert_eq!(d[1].links(), &[(0, 3), (1, 2), (4, 5)]);
    }

    #[test]
    fn failures() {
        assert!(!grammatical(&[ty("n"), ty("n")], &ty("s")));
        assert_eq!(reduce(&[], &ty("s")), Err(ReductionError::EmptyInput));
        assert!(matches!(
            reduce(&[ty("s")], &ty("s.l")),
            Err(ReductionError::NonPlainTarget(_))
        ));
    }

    #[test]
    fn survivors_cannot_sit_under_a_cup() {
        // n s n.r would need s under the (n, n.r) cup
        assert!(!grammatical(&[ty("n s n.r")], &ty("s")));
    }

    #[test]
    fn diagram_validation() {
        assert!(matches!(
            ReductionDiagram::new(vec![(0, 2), (1, 3)], vec![]),
            Err(DiagramError::Crossing(..))
        ));
        assert!(matches!(
            ReductionDiagram::new(vec![(0, 2)], vec![1]),
            Err(DiagramError::Enclosed { .. })
        ));
        assert!(ReductionDiagram::new(vec![(0, 3), (1, 2)], vec![4]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let d = ReductionDiagram::new(vec![(0, 1), (3, 6), (4, 5)], vec![2]).unwrap();
        let back: ReductionDiagram = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<ReductionDiagram>(r#"{"links":[[0,1]],"survivors":[]}"#).is_err());
    }
}
