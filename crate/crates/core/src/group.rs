//! Explicit finite special subgroups: element lists, multiplication tables and
//! subgroup enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::subset::SpecialSubset;
use crate::word::{Word, WordEngine};

/// A finite special subgroup `⟨A⟩` with its right-multiplication table.
///
/// Element `0` is the identity; elements are canonical geodesics in `W`.
#[derive(Debug)]
pub struct FiniteGroup {
    generators: SpecialSubset,
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    // right[e][s] for every system generator s in `generators`, else unused
    right: Vec<Vec<u32>>,
}

/// A subgroup as a set of element indices plus a generating list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: FixedBitSet,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.count_ones(..)
    }
}

impl FiniteGroup {
    pub fn build(engine: &WordEngine<'_>, a: SpecialSubset) -> Result<Self> {
        let elements = engine.enumerate_group(a)?;
        let index: HashMap<Word, usize> =
            elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let rank = engine.system().rank();
        let mut right = Vec::with_capacity(elements.len());
        for e in &elements {
            let mut row = vec![u32::MAX; rank];
            for s in a.iter() {
                let next = engine.canonical(&e.pushed(s))?;
                row[s] = index[&next] as u32;
            }
            right.push(row);
        }
        Ok(FiniteGroup { generators: a, elements, index, right })
    }

    pub fn generators(&self) -> SpecialSubset {
        self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `a · b`, walking the letters of `b` through the table.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .letters()
            .fold(a, |acc, s| self.right[acc][s] as usize)
    }

    /// The subgroup generated by the given elements.
    pub fn generated_by(&self, gens: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.order());
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Every subgroup, grown from the trivial one by adjoining one element at
    /// a time and deduplicating by element set. Sorted by order, then by
    /// element indices.
    pub fn subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        let trivial = Subgroup { elements: self.generated_by(&[]), generators: Vec::new() };
        let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.elements.ones().collect()]);
        let mut out = vec![trivial];
        let mut k = 0;
        while k < out.len() {
            let base = out[k].clone();
            for g in 0..self.order() {
                if base.elements.contains(g) {
                    continue;
                }
                let mut gens = base.generators.clone();
                gens.push(g);
                let elements = self.generated_by(&gens);
                if seen.insert(elements.ones().collect()) {
                    out.push(Subgroup { elements, generators: gens });
                    if out.len() > cap {
                        return Err(Error::resource(format!("more than {cap} subgroups")));
                    }
                }
            }
            k += 1;
        }
        out.sort_by(|x, y| {
            x.order()
                .cmp(&y.order())
                .then_with(|| x.elements.ones().cmp(y.elements.ones()))
        });
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn subgroup_counts() {
        // S3 has 6 subgroups, S4 has 30, D4 has 10
        let a2 = crate::system::CoxeterSystem::from_pairs(&["s", "t"], &[("s", "t", 3)]).unwrap();
        let eng = WordEngine::new(&a2);
        let g = FiniteGroup::build(&eng, a2.all()).unwrap();
        assert_eq!(g.subgroups(1000).unwrap().len(), 6);

        let a3 = corpus::a3();
        let eng = WordEngine::new(&a3);
        let g = FiniteGroup::build(&eng, a3.all()).unwrap();
        assert_eq!(g.order(), 24);
        let subs = g.subgroups(1000).unwrap();
        assert_eq!(subs.len(), 30);
        assert!(subs.iter().all(|h| 24 % h.order() == 0));
        assert!(g.subgroups(5).unwrap_err().is_resource_bound());

        let b2 = corpus::b2();
        let eng = WordEngine::new(&b2);
        let g = FiniteGroup::build(&eng, b2.all()).unwrap();
        assert_eq!(g.subgroups(1000).unwrap().len(), 10);
    }

    #[test]
    fn multiplication_matches_word_engine() {
        let a3 = corpus::a3();
        let eng = WordEngine::new(&a3);
        let g = FiniteGroup::build(&eng, a3.all()).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let expected = eng.canonical(&g.element(a).concat(g.element(b))).unwrap();
                assert_eq!(g.element(g.mul(a, b)), &expected);
            }
        }
    }
}
