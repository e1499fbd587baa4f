//! Word problem machinery: geodesic reduction by braid moves and the deletion
//! condition, letter supports, and minimal double coset representatives.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::num::NonZeroUsize;
use std::sync::Mutex;

use lru::LruCache;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::finite;
use crate::subset::SpecialSubset;
use crate::system::CoxeterSystem;

/// A word over the generators, stored as generator indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = usize>>(letters: I) -> Self {
        Word(letters.into_iter().map(|i| i as u8).collect())
    }

    pub fn generator(s: usize) -> Self {
        Word(vec![s as u8])
    }

    /// Parses whitespace-separated generator names.
    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|name| {
                sys.generator(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&b| usize::from(b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters used, ignoring multiplicity.
    pub fn support(&self) -> SpecialSubset {
        self.letters().collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, s: usize) -> Word {
        let mut v = self.0.clone();
        v.push(s as u8);
        Word(v)
    }

    pub fn prepended(&self, s: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s as u8);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Every generator is an involution, so the inverse is the reversal.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `self · x · self⁻¹`.
    pub fn conjugate(&self, x: &Word) -> Word {
        self.concat(x).concat(&self.inverse())
    }

    /// Space-separated names; the identity prints as `ε`.
    pub fn display<'a>(&'a self, sys: &'a CoxeterSystem) -> impl fmt::Display + 'a {
        DisplayWord { word: self, sys }
    }

    pub fn names(&self, sys: &CoxeterSystem) -> Vec<String> {
        self.letters().map(|i| sys.name(i).to_string()).collect()
    }

    fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

struct DisplayWord<'a> {
    word: &'a Word,
    sys: &'a CoxeterSystem,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("ε");
        }
        for (k, s) in self.word.letters().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.sys.name(s))?;
        }
        Ok(())
    }
}

/// The braid class of geodesics for one element, represented by its
/// lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeodesicClass {
    pub canonical: Word,
    pub length: usize,
}

impl GeodesicClass {
    fn new(canonical: Word) -> Self {
        let length = canonical.len();
        GeodesicClass { canonical, length }
    }
}

enum Closure {
    /// No member contains `ss`; carries the least member.
    Geodesic(Vec<u8>),
    /// A member contained `ss`; carries that member with the pair deleted.
    Shortened(Vec<u8>),
}

/// Word problem solver for one Coxeter system.
///
/// Reductions are memoized in a bounded LRU cache behind a mutex, so one
/// engine can be shared between threads; results never depend on the cache
/// state.
pub struct WordEngine<'s> {
    sys: &'s CoxeterSystem,
    caps: Caps,
    memo: Mutex<LruCache<Word, Word>>,
}

impl<'s> WordEngine<'s> {
    pub fn new(sys: &'s CoxeterSystem) -> Self {
        Self::with_caps(sys, Caps::default())
    }

    pub fn with_caps(sys: &'s CoxeterSystem, caps: Caps) -> Self {
        let size = NonZeroUsize::new(caps.memo.max(1)).expect("nonzero");
        WordEngine { sys, caps, memo: Mutex::new(LruCache::new(size)) }
    }

    pub fn system(&self) -> &'s CoxeterSystem {
        self.sys
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// Reduces `w` to a geodesic by alternating braid-closure exploration
    /// and `ss` deletion, returning the least geodesic of the element.
    ///
    /// Letters are absorbed left to right: the prefix is kept geodesic, so
    /// after appending one letter either the closure exposes an `ss` pair
    /// (delete it) or the word is already geodesic. The final canonical form
    /// is the least member of the geodesic's braid closure.
    pub fn reduce(&self, w: &Word) -> Result<GeodesicClass> {
        if w.len() > self.caps.word_length {
            return Err(Error::resource(format!(
                "word of length {} exceeds the length cap {}",
                w.len(),
                self.caps.word_length
            )));
        }
        if let Some(hit) = self.memo.lock().expect("memo poisoned").get(w) {
            return Ok(GeodesicClass::new(hit.clone()));
        }

        let mut current: Vec<u8> = Vec::with_capacity(w.len());
        let mut canonical = true;
        for &s in w.as_bytes() {
            if current.last() == Some(&s) {
                current.pop();
                canonical = false;
                continue;
            }
            current.push(s);
            match self.explore(&current)? {
                Closure::Geodesic(least) => {
                    current = least;
                    canonical = true;
                }
                Closure::Shortened(shorter) => {
                    current = shorter;
                    canonical = false;
                }
            }
        }
        if !canonical {
            current = match self.explore(&current)? {
                Closure::Geodesic(least) => least,
                Closure::Shortened(_) => unreachable!("prefix reduction always yields a geodesic"),
            };
        }

        let result = Word(current);
        self.memo.lock().expect("memo poisoned").put(w.clone(), result.clone());
        Ok(GeodesicClass::new(result))
    }

    /// Breadth-first closure under braid moves, stopping at the first member
    /// with two equal adjacent letters.
    fn explore(&self, start: &[u8]) -> Result<Closure> {
        if let Some(i) = adjacent_pair(start) {
            return Ok(Closure::Shortened(delete_pair(start, i)));
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut least = start.to_vec();
        seen.insert(start.to_vec());
        queue.push_back(start.to_vec());
        while let Some(word) = queue.pop_front() {
            for next in self.braid_neighbors(&word) {
                if seen.contains(&next) {
                    continue;
                }
                if let Some(i) = adjacent_pair(&next) {
                    return Ok(Closure::Shortened(delete_pair(&next, i)));
                }
                if next < least {
                    least = next.clone();
                }
                seen.insert(next.clone());
                if seen.len() > self.caps.closure {
                    return Err(Error::resource(format!(
                        "braid closure exceeds {} words",
                        self.caps.closure
                    )));
                }
                queue.push_back(next);
            }
        }
        Ok(Closure::Geodesic(least))
    }

    fn braid_neighbors(&self, word: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for i in 0..word.len().saturating_sub(1) {
            let (s, t) = (word[i], word[i + 1]);
            if s == t {
                continue;
            }
            let Some(m) = self.sys.order(s as usize, t as usize) else {
                continue;
            };
            let m = m as usize;
            if i + m > word.len() {
                continue;
            }
            let alternates = (0..m).all(|k| word[i + k] == if k % 2 == 0 { s } else { t });
            if alternates {
                let mut next = word.to_vec();
                for k in 0..m {
                    next[i + k] = if k % 2 == 0 { t } else { s };
                }
                out.push(next);
            }
        }
        out
    }

    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.reduce(w)?.length)
    }

    pub fn is_geodesic(&self, w: &Word) -> Result<bool> {
        Ok(self.reduce(w)?.length == w.len())
    }

    pub fn canonical(&self, w: &Word) -> Result<Word> {
        Ok(self.reduce(w)?.canonical)
    }

    /// Whether `u` and `v` represent the same element.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.reduce(u)?.canonical == self.reduce(v)?.canonical)
    }

    /// The letters of any geodesic for `w`.
    pub fn lett(&self, w: &Word) -> Result<SpecialSubset> {
        Ok(self.reduce(w)?.canonical.support())
    }

    /// Whether `w` lies in the special subgroup `⟨a⟩`.
    pub fn in_special(&self, w: &Word, a: SpecialSubset) -> Result<bool> {
        Ok(self.lett(w)?.is_subset(a))
    }

    /// The unique shortest element of `⟨I⟩ w ⟨J⟩`, by greedy descent.
    ///
    /// Each round multiplies by the least eligible generator, trying left
    /// factors from `I` before right factors from `J`.
    pub fn min_double_coset_rep(&self, left: SpecialSubset, w: &Word, right: SpecialSubset) -> Result<GeodesicClass> {
        self.sys.check_subset(left)?;
        self.sys.check_subset(right)?;
        let mut d = self.reduce(w)?;
        'descend: loop {
            for i in left.iter() {
                let candidate = self.reduce(&d.canonical.prepended(i))?;
                if candidate.length < d.length {
                    d = candidate;
                    continue 'descend;
                }
            }
            for j in right.iter() {
                let candidate = self.reduce(&d.canonical.pushed(j))?;
                if candidate.length < d.length {
                    d = candidate;
                    continue 'descend;
                }
            }
            return Ok(d);
        }
    }

    /// Returns `(d, K)` where `d` is the minimal representative of
    /// `⟨I⟩ w ⟨J⟩` and `K = I ∩ dJd⁻¹`, so that `⟨I⟩ ∩ d⟨J⟩d⁻¹ = ⟨K⟩`.
    pub fn special_intersection(&self, left: SpecialSubset, w: &Word, right: SpecialSubset) -> Result<(Word, SpecialSubset)> {
        let d = self.min_double_coset_rep(left, w, right)?.canonical;
        let mut images = SpecialSubset::EMPTY;
        for t in right.iter() {
            let image = self.reduce(&d.conjugate(&Word::generator(t)))?.canonical;
            if image.len() == 1 {
                images = images.union(image.support());
            }
        }
        Ok((d, left.intersection(images)))
    }

    /// All elements of the finite special subgroup `⟨a⟩` as canonical
    /// geodesics, sorted by length then lexicographically.
    pub fn enumerate_group(&self, a: SpecialSubset) -> Result<Vec<Word>> {
        self.sys.check_subset(a)?;
        let verdict = finite::is_finite_type(self.sys, a);
        let order = verdict
            .order()
            .ok_or_else(|| Error::InfiniteType(self.sys.format_subset(a)))?;
        if order > self.caps.order as u128 {
            return Err(Error::resource(format!(
                "⟨{}⟩ has order {order}, above the order cap {}",
                self.sys.format_subset(a),
                self.caps.order
            )));
        }
        let mut elements = vec![Word::new()];
        let mut seen: HashSet<Word> = elements.iter().cloned().collect();
        let mut k = 0;
        while k < elements.len() {
            let e = elements[k].clone();
            for s in a.iter() {
                let next = self.reduce(&e.pushed(s))?.canonical;
                if seen.insert(next.clone()) {
                    elements.push(next);
                }
            }
            k += 1;
        }
        elements.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Ok(elements)
    }

    /// Canonical elements of geodesic length at most `radius`, grouped by
    /// length. The flag is true when no element of length `radius + 1`
    /// exists, i.e. the ball is the whole (finite) group.
    pub fn ball(&self, radius: usize) -> Result<(Vec<Vec<Word>>, bool)> {
        let mut levels = vec![vec![Word::new()]];
        loop {
            let last = levels.last().expect("nonempty");
            let mut next_level: Vec<Word> = Vec::new();
            let mut seen = HashSet::new();
            for e in last {
                for s in 0..self.sys.rank() {
                    let next = self.reduce(&e.pushed(s))?;
                    if next.length == e.len() + 1 && seen.insert(next.canonical.clone()) {
                        next_level.push(next.canonical);
                    }
                }
            }
            next_level.sort();
            if next_level.is_empty() {
                return Ok((levels, true));
            }
            if levels.len() > radius {
                return Ok((levels, false));
            }
            levels.push(next_level);
        }
    }
}

fn adjacent_pair(word: &[u8]) -> Option<usize> {
    word.windows(2).position(|p| p[0] == p[1])
}

fn delete_pair(word: &[u8], i: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() - 2);
    out.extend_from_slice(&word[..i]);
    out.extend_from_slice(&word[i + 2..]);
    out
}
