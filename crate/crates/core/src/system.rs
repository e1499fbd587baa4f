//! Coxeter systems, their presentation and non-commuting diagrams, and
//! separator queries on the presentation diagram.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::SpecialSubset;

/// Hard limit imposed by the bitmask representation of [`SpecialSubset`].
pub const MAX_GENERATORS: usize = 64;

/// A Coxeter system `(W, S)`: an ordered list of distinct generator names
/// and the symmetric order function `m`.
///
/// Pairs never mentioned have `m = ∞`. The generator order given at
/// construction is the canonical order used everywhere else.
#[derive(Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // row-major, 0 encodes infinity, diagonal is 1
    m: Vec<u32>,
    diagram: Vec<u64>,
    noncommuting: Vec<u64>,
}

/// On-disk form: `{"generators": [...], "m": [["a","b",3], ...]}` with `0`
/// standing for infinity.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    generators: Vec<String>,
    #[serde(default)]
    m: Vec<(String, String, u64)>,
}

impl CoxeterSystem {
    /// Builds a system from generator names and `(s, t, m)` triples, where
    /// `m = 0` means infinity.
    pub fn from_pairs<S: AsRef<str>>(generators: &[S], pairs: &[(&str, &str, u32)]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
        let pairs: Vec<(String, String, u64)> = pairs
            .iter()
            .map(|&(s, t, m)| (s.to_string(), t.to_string(), u64::from(m)))
            .collect();
        Self::build(generators, &pairs)
    }

    fn build(names: Vec<String>, pairs: &[(String, String, u64)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_GENERATORS {
            return Err(Error::InvalidSystem(format!(
                "{n} generators exceeds the supported maximum of {MAX_GENERATORS}"
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) || name.contains(',') {
                return Err(Error::InvalidSystem(format!(
                    "generator name {name:?} must be nonempty without whitespace or commas"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidSystem(format!("duplicate generator {name:?}")));
            }
        }

        let mut m = vec![0u32; n * n];
        let mut seen = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for (s, t, value) in pairs {
            let i = *index.get(s).ok_or_else(|| Error::UnknownGenerator(s.clone()))?;
            let j = *index.get(t).ok_or_else(|| Error::UnknownGenerator(t.clone()))?;
            if i == j {
                if *value == 1 {
                    continue;
                }
                return Err(Error::InvalidSystem(format!("m({s},{s}) must be 1, got {value}")));
            }
            if *value == 1 {
                return Err(Error::InvalidSystem(format!(
                    "m({s},{t}) = 1 for distinct generators"
                )));
            }
            let value = u32::try_from(*value)
                .map_err(|_| Error::InvalidSystem(format!("m({s},{t}) = {value} is out of range")))?;
            if seen[i * n + j] && m[i * n + j] != value {
                return Err(Error::InvalidSystem(format!(
                    "asymmetric or conflicting entries for the pair ({s},{t})"
                )));
            }
            seen[i * n + j] = true;
            seen[j * n + i] = true;
            m[i * n + j] = value;
            m[j * n + i] = value;
        }

        let mut diagram = vec![0u64; n];
        let mut noncommuting = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = m[i * n + j];
                if v != 0 {
                    diagram[i] |= 1 << j;
                }
                if v != 2 {
                    noncommuting[i] |= 1 << j;
                }
            }
        }
        Ok(CoxeterSystem { names, index, m, diagram, noncommuting })
    }

    /// Parses the JSON system description.
    pub fn parse(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        Self::build(file.generators, &file.m)
    }

    /// Serializes to the JSON form accepted by [`CoxeterSystem::parse`].
    /// Only finite orders are listed.
    pub fn to_json(&self) -> String {
        let n = self.rank();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(v) = self.order(i, j) {
                    pairs.push((self.names[i].clone(), self.names[j].clone(), u64::from(v)));
                }
            }
        }
        let file = SystemFile { generators: self.names.clone(), m: pairs };
        serde_json::to_string_pretty(&file).expect("system serialization cannot fail")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The whole generating set `S`.
    pub fn all(&self) -> SpecialSubset {
        SpecialSubset::full(self.rank())
    }

    /// `m(s, t)`, with `None` for infinity.
    pub fn order(&self, s: usize, t: usize) -> Option<u32> {
        match self.m[s * self.rank() + t] {
            0 => None,
            v => Some(v),
        }
    }

    pub fn commute(&self, s: usize, t: usize) -> bool {
        self.m[s * self.rank() + t] == 2
    }

    /// Neighbours of `s` in the presentation diagram (finite `m`).
    pub fn diagram_neighbors(&self, s: usize) -> SpecialSubset {
        SpecialSubset::from_bits(self.diagram[s])
    }

    /// Neighbours of `s` in the non-commuting diagram (`m ≠ 2`).
    pub fn noncommuting_neighbors(&self, s: usize) -> SpecialSubset {
        SpecialSubset::from_bits(self.noncommuting[s])
    }

    /// Edges `(s, t, m)` of the presentation diagram, `s < t`.
    pub fn presentation_edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.rank();
        let mut out = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                if let Some(v) = self.order(s, t) {
                    out.push((s, t, v));
                }
            }
        }
        out
    }

    /// Edges `(s, t, m)` of the non-commuting diagram, `s < t`, with `None`
    /// for infinite labels.
    pub fn noncommuting_edges(&self) -> Vec<(usize, usize, Option<u32>)> {
        let n = self.rank();
        let mut out = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                if !self.commute(s, t) {
                    out.push((s, t, self.order(s, t)));
                }
            }
        }
        out
    }

    pub fn check_subset(&self, a: SpecialSubset) -> Result<()> {
        if a.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::NotASubset)
        }
    }

    /// Looks up names, accepting commas and/or whitespace as separators.
    pub fn parse_subset(&self, text: &str) -> Result<SpecialSubset> {
        let mut set = SpecialSubset::EMPTY;
        for name in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let i = self.generator(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            set = set.with(i);
        }
        Ok(set)
    }

    pub fn subset_of<S: AsRef<str>>(&self, names: &[S]) -> Result<SpecialSubset> {
        names.iter().try_fold(SpecialSubset::EMPTY, |acc, name| {
            let name = name.as_ref();
            let i = self.generator(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            Ok(acc.with(i))
        })
    }

    pub fn subset_names(&self, a: SpecialSubset) -> Vec<String> {
        a.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Comma-joined generator names, e.g. `a2,a5`.
    pub fn format_subset(&self, a: SpecialSubset) -> String {
        self.subset_names(a).join(",")
    }

    /// Connected components of the presentation diagram induced on `vertices`,
    /// ordered by smallest generator index.
    pub fn components(&self, vertices: SpecialSubset) -> Vec<SpecialSubset> {
        components_of(vertices, |s| self.diagram_neighbors(s))
    }

    /// Connected components of the non-commuting diagram induced on `vertices`.
    pub fn noncommuting_components(&self, vertices: SpecialSubset) -> Vec<SpecialSubset> {
        components_of(vertices, |s| self.noncommuting_neighbors(s))
    }

    /// The subsystem on `a`, generators re-indexed in their original order.
    pub fn restrict(&self, a: SpecialSubset) -> Result<CoxeterSystem> {
        self.check_subset(a)?;
        let kept: Vec<usize> = a.iter().collect();
        let names: Vec<String> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let mut pairs = Vec::new();
        for (x, &i) in kept.iter().enumerate() {
            for &j in &kept[x + 1..] {
                if let Some(v) = self.order(i, j) {
                    pairs.push((self.names[i].clone(), self.names[j].clone(), u64::from(v)));
                }
            }
        }
        Self::build(names, &pairs)
    }

    /// Components of `Γ − C` when there are at least two of them.
    ///
    /// A disconnected diagram is separated by the empty set.
    pub fn separates(&self, c: SpecialSubset) -> Option<Vec<SpecialSubset>> {
        let comps = self.components(self.all().difference(c));
        (comps.len() >= 2).then_some(comps)
    }

    /// Whether two points of `D − C` lie in different components of `Γ − C`.
    pub fn separates_within(&self, c: SpecialSubset, d: SpecialSubset) -> bool {
        let rest = d.difference(c);
        if rest.is_empty() {
            return false;
        }
        self.components(self.all().difference(c))
            .iter()
            .filter(|comp| !comp.is_disjoint(rest))
            .count()
            >= 2
    }
}

fn components_of(vertices: SpecialSubset, neighbors: impl Fn(usize) -> SpecialSubset) -> Vec<SpecialSubset> {
    let mut remaining = vertices;
    let mut out = Vec::new();
    while let Some(start) = remaining.first() {
        let mut comp = SpecialSubset::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = SpecialSubset::EMPTY;
            for s in frontier.iter() {
                next = next.union(neighbors(s));
            }
            next = next.intersection(vertices).difference(comp);
            comp = comp.union(next);
            frontier = next;
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("generators", &self.names)
            .field("presentation_edges", &self.presentation_edges())
            .finish()
    }
}
