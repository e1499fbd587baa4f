//! Separating special subgroups, their minimality, the finite family
//! `K(W,S)`, and visual amalgam splittings.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::finite::{self, split_ea};
use crate::group::{FiniteGroup, Subgroup};
use crate::subset::SpecialSubset;
use crate::system::CoxeterSystem;
use crate::word::{Word, WordEngine};

/// A separating subset `C` of the presentation diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorRecord {
    pub separator: SpecialSubset,
    /// Components of `Γ − C` by smallest generator index.
    pub components: Vec<SpecialSubset>,
    /// `E(C)`, the infinite-type part of `C`.
    pub essential: SpecialSubset,
    /// Whether `⟨C⟩` is a minimal splitting subgroup. Only meaningful in the
    /// output of [`classify_minimal`].
    pub minimal: bool,
}

fn check_generator_cap(sys: &CoxeterSystem, caps: &Caps) -> Result<()> {
    if sys.rank() > caps.generators {
        return Err(Error::resource(format!(
            "{} generators exceeds the enumeration cap {}",
            sys.rank(),
            caps.generators
        )));
    }
    Ok(())
}

/// Every separating `C ⊆ S`, by size then lexicographically, with
/// `minimal` left unset.
pub fn enumerate_separators(sys: &CoxeterSystem, caps: &Caps) -> Result<Vec<SeparatorRecord>> {
    check_generator_cap(sys, caps)?;
    Ok(sys
        .all()
        .subsets_canonical()
        .into_iter()
        .filter_map(|c| {
            sys.separates(c).map(|components| SeparatorRecord {
                separator: c,
                components,
                essential: finite::essential(sys, c),
                minimal: false,
            })
        })
        .collect())
}

/// Separators with minimality flags: `⟨C⟩` is minimal iff no separator `D`
/// has `E(D)` a proper subset of `E(C)`.
pub fn classify_minimal(sys: &CoxeterSystem, caps: &Caps) -> Result<Vec<SeparatorRecord>> {
    let mut records = enumerate_separators(sys, caps)?;
    let essentials: HashSet<SpecialSubset> = records.iter().map(|r| r.essential).collect();
    for r in &mut records {
        r.minimal = !essentials.iter().any(|e| e.is_proper_subset(r.essential));
    }
    Ok(records)
}

/// Lookup table over the classified separators of one system.
#[derive(Clone, Debug)]
pub struct SeparatorTable {
    records: Vec<SeparatorRecord>,
    by_set: HashMap<SpecialSubset, usize>,
}

impl SeparatorTable {
    pub fn new(sys: &CoxeterSystem, caps: &Caps) -> Result<Self> {
        let records = classify_minimal(sys, caps)?;
        let by_set = records.iter().enumerate().map(|(i, r)| (r.separator, i)).collect();
        Ok(SeparatorTable { records, by_set })
    }

    pub fn records(&self) -> &[SeparatorRecord] {
        &self.records
    }

    pub fn get(&self, c: SpecialSubset) -> Option<&SeparatorRecord> {
        self.by_set.get(&c).map(|&i| &self.records[i])
    }

    pub fn is_minimal(&self, c: SpecialSubset) -> bool {
        self.get(c).is_some_and(|r| r.minimal)
    }

    pub fn minimal(&self) -> impl Iterator<Item = &SeparatorRecord> {
        self.records.iter().filter(|r| r.minimal)
    }
}

/// A non-separating visual subgroup found to be conjugate onto a minimal
/// separator by a short element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateRecord {
    pub subset: SpecialSubset,
    pub conjugator: Word,
    /// `conjugator · subset · conjugator⁻¹`, a minimal separator.
    pub target: SpecialSubset,
}

/// Bounded search for non-separating `C` with `w C w⁻¹ = D` letterwise for a
/// minimal separator `D` and `|w| ≤ radius`. Such `⟨C⟩` are minimal
/// splitting subgroups; absence from the result proves nothing.
pub fn conjugacy_search(engine: &WordEngine<'_>, table: &SeparatorTable, radius: usize) -> Result<Vec<ConjugateRecord>> {
    let sys = engine.system();
    check_generator_cap(sys, engine.caps())?;
    let targets: HashSet<SpecialSubset> = table.minimal().map(|r| r.separator).collect();
    let (levels, _) = engine.ball(radius)?;
    let mut out = Vec::new();
    for c in sys.all().subsets_canonical() {
        if c.is_empty() || sys.separates(c).is_some() {
            continue;
        }
        'words: for w in levels.iter().flatten() {
            let mut image = SpecialSubset::EMPTY;
            for s in c.iter() {
                let conj = engine.canonical(&w.conjugate(&Word::generator(s)))?;
                if conj.len() != 1 {
                    continue 'words;
                }
                image = image.union(conj.support());
            }
            if targets.contains(&image) && image.len() == c.len() {
                out.push(ConjugateRecord { subset: c, conjugator: w.clone(), target: image });
                break;
            }
        }
    }
    Ok(out)
}

/// A member `⟨E⟩ × F` of `K(W,S)`: `E = E(E)` of infinite type and `F` a
/// finite group inside `⟨lk2(E)⟩`, listed by canonical elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KGroup {
    pub essential: SpecialSubset,
    /// Sorted canonical words of the elements of `F`.
    pub finite_factor: Vec<Word>,
    /// Canonical words generating `F`.
    pub factor_generators: Vec<Word>,
}

impl KGroup {
    /// Letters used by elements of the finite factor.
    pub fn factor_support(&self) -> SpecialSubset {
        self.finite_factor
            .iter()
            .fold(SpecialSubset::EMPTY, |acc, w| acc.union(w.support()))
    }

    fn sort_key(&self) -> (SpecialSubset, usize, &[Word]) {
        (self.essential, self.finite_factor.len(), &self.finite_factor)
    }
}

#[derive(Clone, Debug)]
pub struct KEnumeration {
    /// Number of `(A, D, M)` triples visited before deduplication.
    pub raw_count: usize,
    pub groups: Vec<KGroup>,
}

/// Enumerates `K(W,S)` from triples `(A, D, M)`: `A ⊆ S`, `D ⊆ lk2(A)` of
/// finite type, `M ≤ ⟨D⟩`. Each triple yields `⟨E(A)⟩ × (⟨T(A)⟩ × M)`.
/// With `dedupe`, records with the same `E` and finite-factor element set
/// are merged.
pub fn enumerate_k(engine: &WordEngine<'_>, dedupe: bool) -> Result<KEnumeration> {
    let sys = engine.system();
    let caps = *engine.caps();
    check_generator_cap(sys, &caps)?;

    let mut groups: HashMap<SpecialSubset, Rc<FiniteGroup>> = HashMap::new();
    let mut subgroup_cache: HashMap<SpecialSubset, Rc<Vec<Subgroup>>> = HashMap::new();
    let mut group = |x: SpecialSubset| -> Result<Rc<FiniteGroup>> {
        if let Some(g) = groups.get(&x) {
            return Ok(g.clone());
        }
        let g = Rc::new(FiniteGroup::build(engine, x)?);
        groups.insert(x, g.clone());
        Ok(g)
    };

    let mut raw_count = 0usize;
    let mut unique: BTreeMap<(SpecialSubset, Vec<Word>), KGroup> = BTreeMap::new();
    let mut all = Vec::new();

    for a in sys.all().subsets_canonical() {
        let split = split_ea(sys, a);
        let link = finite::lk2(sys, a);
        let t_group = group(split.t)?;
        for d in link.subsets_canonical() {
            if !finite::is_finite(sys, d) {
                continue;
            }
            let d_group = group(d)?;
            let subgroups = match subgroup_cache.get(&d) {
                Some(s) => s.clone(),
                None => {
                    let s = Rc::new(d_group.subgroups(caps.subgroups)?);
                    subgroup_cache.insert(d, s.clone());
                    s
                }
            };
            let whole = group(split.t.union(d))?;
            let t_in_whole: Vec<usize> = t_group
                .elements()
                .iter()
                .map(|w| whole.index_of(w).expect("⟨T⟩ ⊆ ⟨T ∪ D⟩"))
                .collect();
            for m in subgroups.iter() {
                raw_count += 1;
                let mut factor: Vec<Word> = Vec::with_capacity(t_in_whole.len() * m.order());
                for x in m.elements.ones() {
                    let x = whole.index_of(d_group.element(x)).expect("⟨D⟩ ⊆ ⟨T ∪ D⟩");
                    for &t in &t_in_whole {
                        factor.push(whole.element(whole.mul(t, x)).clone());
                    }
                }
                factor.sort();
                factor.dedup();
                let mut factor_generators: Vec<Word> = split.t.iter().map(Word::generator).collect();
                factor_generators.extend(m.generators.iter().map(|&g| d_group.element(g).clone()));
                let record = KGroup { essential: split.e, finite_factor: factor, factor_generators };
                if dedupe {
                    unique
                        .entry((record.essential, record.finite_factor.clone()))
                        .or_insert(record);
                } else {
                    all.push(record);
                }
            }
        }
    }

    let mut groups: Vec<KGroup> = if dedupe { unique.into_values().collect() } else { all };
    groups.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(KEnumeration { raw_count, groups })
}

/// Side of a visual amalgam a component is assigned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// `W = ⟨A⟩ *_⟨C⟩ ⟨B⟩` where `A` (resp. `B`) is `C` plus the components of
/// `Γ − C` assigned to it.
pub fn visual_split(sys: &CoxeterSystem, c: SpecialSubset, sides: &[Side]) -> Result<(SpecialSubset, SpecialSubset)> {
    sys.check_subset(c)?;
    let components = sys
        .separates(c)
        .ok_or_else(|| Error::InvalidSplit(format!("{{{}}} does not separate Γ", sys.format_subset(c))))?;
    if sides.len() != components.len() {
        return Err(Error::InvalidSplit(format!(
            "expected {} side assignments, got {}",
            components.len(),
            sides.len()
        )));
    }
    let (mut a, mut b) = (c, c);
    for (comp, side) in components.iter().zip(sides) {
        match side {
            Side::A => a = a.union(*comp),
            Side::B => b = b.union(*comp),
        }
    }
    if a == c || b == c {
        return Err(Error::InvalidSplit("both sides must receive a component".into()));
    }
    Ok((a, b))
}
