//! The accessibility potential `c(Λ) = Σ 3^{n(G)}` over vertex groups, the
//! sequence-length bound `3^|K(W,S)|`, and certification of split/reduce
//! sequences.

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite;
use crate::gog::{self, Decomposer, GogShape, SplitMove, VisualGog};
use crate::splittings::{enumerate_k, KEnumeration, KGroup};
use crate::subset::SpecialSubset;
use crate::system::CoxeterSystem;
use crate::word::{Word, WordEngine};

pub const DEFAULT_SEARCH: usize = 6;

/// `n(G)` together with whether every member of `K(W,S)` was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NValue {
    pub n: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMeasure {
    pub label: SpecialSubset,
    pub n: NValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub vertices: Vec<VertexMeasure>,
    pub c: BigUint,
    pub bound: BigUint,
    pub k_count: usize,
}

impl MeasureReport {
    pub fn exact(&self) -> bool {
        self.vertices.iter().all(|v| v.n.exact)
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        json!({
            "vertices": self.vertices.iter().map(|v| json!({
                "label": sys.subset_names(v.label),
                "n": v.n.n,
                "exact": v.n.exact,
            })).collect::<Vec<_>>(),
            "c": self.c.to_string(),
            "bound": self.bound.to_string(),
            "kCount": self.k_count,
            "exact": self.exact(),
        })
    }
}

/// How one step of a certified sequence relates to the previous potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    /// `c` strictly decreased and every `n` involved is exact.
    Certified,
    /// `c` strictly decreased, computed from lower bounds on `n`.
    Consistent,
    /// `c` did not decrease but some `n` is only a lower bound.
    Inconclusive,
    /// `c` did not decrease and every `n` involved is exact.
    Violation,
}

#[derive(Clone, Debug)]
pub struct CertifiedStep {
    pub mv: SplitMove,
    pub report: MeasureReport,
    pub status: StepStatus,
}

#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub initial: MeasureReport,
    pub steps: Vec<CertifiedStep>,
    pub final_gog: VisualGog,
    pub bound: BigUint,
}

impl CertifyReport {
    pub fn within_bound(&self) -> bool {
        BigUint::from(self.steps.len()) <= self.bound
    }

    /// Worst step status; an empty trace is certified.
    pub fn status(&self) -> StepStatus {
        let rank = |s: StepStatus| match s {
            StepStatus::Certified => 0,
            StepStatus::Consistent => 1,
            StepStatus::Inconclusive => 2,
            StepStatus::Violation => 3,
        };
        self.steps
            .iter()
            .map(|s| s.status)
            .max_by_key(|&s| rank(s))
            .unwrap_or(StepStatus::Certified)
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> Value {
        json!({
            "initial": self.initial.to_json(sys),
            "steps": self.steps.iter().map(|s| json!({
                "move": gog::moves_to_json(sys, std::slice::from_ref(&s.mv))[0],
                "c": s.report.c.to_string(),
                "exact": s.report.exact(),
                "status": s.status,
            })).collect::<Vec<_>>(),
            "length": self.steps.len(),
            "bound": self.bound.to_string(),
            "withinBound": self.within_bound(),
            "status": self.status(),
            "final": gog::to_json_value(sys, &self.final_gog),
        })
    }
}

/// Conjugacy classes of generators in the abelianization: components of the
/// graph joining `s, t` when `m(s,t)` is odd.
fn odd_classes(sys: &CoxeterSystem) -> Vec<usize> {
    let n = sys.rank();
    let mut class: Vec<usize> = (0..n).collect();
    fn find(class: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while class[r] != r {
            r = class[r];
        }
        class[x] = r;
        r
    }
    for s in 0..n {
        for t in s + 1..n {
            if sys.order(s, t).is_some_and(|m| m % 2 == 1) {
                let (a, b) = (find(&mut class, s), find(&mut class, t));
                class[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|s| find(&mut class, s)).collect()
}

/// Computes `n(G)`: the number of members of `K(W,S)` contained in some
/// conjugate of `⟨G⟩`.
///
/// A member `⟨E⟩ × F` counts when it lies in `⟨G⟩` outright or when some
/// `w` of length at most the search bound has `w x w⁻¹ ∈ ⟨G⟩` for every
/// letter of `E` and generator of `F`. A member is ruled out when `E ⊄ G`,
/// when a generator of `F` has abelianized image outside the classes of `G`,
/// or when `|F|` divides the order of no finite special subgroup of `⟨G⟩`.
/// The count is exact when every member is decided either way, or when the
/// search ball is all of `W`.
pub struct Measure<'e, 's> {
    engine: &'e WordEngine<'s>,
    k: KEnumeration,
    search: usize,
    classes: Vec<usize>,
    ball: OnceLock<(Vec<Word>, bool)>,
    memo: Mutex<HashMap<SpecialSubset, NValue>>,
}

impl<'e, 's> Measure<'e, 's> {
    pub fn new(engine: &'e WordEngine<'s>, search: usize) -> Result<Self> {
        let k = enumerate_k(engine, true)?;
        Ok(Measure {
            engine,
            k,
            search,
            classes: odd_classes(engine.system()),
            ball: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &'s CoxeterSystem {
        self.engine.system()
    }

    pub fn search(&self) -> usize {
        self.search
    }

    pub fn k_groups(&self) -> &[KGroup] {
        &self.k.groups
    }

    pub fn k_count(&self) -> usize {
        self.k.groups.len()
    }

    /// `C(W,S) = 3^|K(W,S)|`.
    pub fn bound(&self) -> BigUint {
        BigUint::from(3u32).pow(self.k_count() as u32)
    }

    fn ball(&self) -> Result<&(Vec<Word>, bool)> {
        if let Some(b) = self.ball.get() {
            return Ok(b);
        }
        let (levels, closed) = self.engine.ball(self.search)?;
        let words = levels.into_iter().flatten().collect();
        Ok(self.ball.get_or_init(|| (words, closed)))
    }

    fn class_mask(&self, letters: SpecialSubset) -> u64 {
        letters.iter().fold(0, |acc, s| acc | 1 << self.classes[s])
    }

    /// Abelianized image of `w`, as a bitmask over class representatives.
    fn parity(&self, w: &Word) -> u64 {
        w.letters().fold(0, |acc, s| acc ^ 1 << self.classes[s])
    }

    pub fn n_of(&self, g: SpecialSubset) -> Result<NValue> {
        let sys = self.system();
        sys.check_subset(g)?;
        if let Some(v) = self.memo.lock().expect("memo lock").get(&g) {
            return Ok(*v);
        }

        let g_classes = self.class_mask(g);
        let finite_orders: Vec<usize> = g
            .subsets()
            .filter_map(|d| finite::is_finite_type(sys, d).order())
            .map(|o| o as usize)
            .collect();

        let mut count = 0;
        let mut pending: Vec<&KGroup> = Vec::new();
        for k in &self.k.groups {
            if k.essential.is_subset(g) && k.factor_support().is_subset(g) {
                count += 1;
                continue;
            }
            let excluded = !k.essential.is_subset(g)
                || k.factor_generators.iter().any(|x| self.parity(x) & !g_classes != 0)
                || !finite_orders.iter().any(|o| o % k.finite_factor.len() == 0);
            if !excluded {
                pending.push(k);
            }
        }

        let mut exact = pending.is_empty();
        if !pending.is_empty() {
            let (ball, closed) = self.ball()?;
            let mut found = vec![false; pending.len()];
            let mut cache: HashMap<Word, bool> = HashMap::new();
            for w in ball {
                if found.iter().all(|&f| f) {
                    break;
                }
                if !self.coset_minimal(w, g)? {
                    continue;
                }
                for (i, k) in pending.iter().enumerate() {
                    if found[i] {
                        continue;
                    }
                    let mut ok = true;
                    let letters = k.essential.iter().map(Word::generator);
                    for x in letters.chain(k.factor_generators.iter().cloned()) {
                        let hit = match cache.get(&x) {
                            Some(&h) => h,
                            None => {
                                let h = self.engine.in_special(&w.conjugate(&x), g)?;
                                cache.insert(x, h);
                                h
                            }
                        };
                        if !hit {
                            ok = false;
                            break;
                        }
                    }
                    found[i] = ok;
                }
                cache.clear();
            }
            count += found.iter().filter(|&&f| f).count();
            exact = *closed || found.iter().all(|&f| f);
        }

        let value = NValue { n: count, exact };
        self.memo.lock().expect("memo lock").insert(g, value);
        Ok(value)
    }

    /// No generator of `g` shortens `w` on the left.
    fn coset_minimal(&self, w: &Word, g: SpecialSubset) -> Result<bool> {
        for s in g.iter() {
            if self.engine.length(&w.prepended(s))? < w.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn c_of(&self, gog: &VisualGog) -> Result<MeasureReport> {
        let sys = self.system();
        gog::validate(sys, gog).map_err(|v| Error::Precondition(v.describe(sys, gog)))?;
        let mut vertices = Vec::with_capacity(gog.vertices().len());
        let mut c = BigUint::from(0u32);
        for &label in gog.vertices() {
            let n = self.n_of(label)?;
            c += BigUint::from(3u32).pow(n.n as u32);
            vertices.push(VertexMeasure { label, n });
        }
        Ok(MeasureReport { vertices, c, bound: self.bound(), k_count: self.k_count() })
    }

    /// Replays `trace` from the trivial decomposition, splitting and
    /// reducing at each step, and compares consecutive potentials.
    pub fn certify(&self, decomposer: &Decomposer<'_>, trace: &[SplitMove]) -> Result<CertifyReport> {
        let mut g = gog::trivial_gog(self.system());
        let initial = self.c_of(&g)?;
        let mut prev = initial.clone();
        let mut steps = Vec::with_capacity(trace.len());
        for (i, mv) in trace.iter().enumerate() {
            g = decomposer
                .step(&g, mv)
                .map_err(|e| Error::InvalidSplit(format!("step {}: {e}", i + 1)))?;
            let report = self.c_of(&g)?;
            let exact = prev.exact() && report.exact();
            let status = match (report.c < prev.c, exact) {
                (true, true) => StepStatus::Certified,
                (true, false) => StepStatus::Consistent,
                (false, false) => StepStatus::Inconclusive,
                (false, true) => StepStatus::Violation,
            };
            steps.push(CertifiedStep { mv: *mv, report: report.clone(), status });
            prev = report;
        }
        Ok(CertifyReport { initial, steps, final_gog: g, bound: self.bound() })
    }
}

/// Summary of every maximal sequence of minimal splits, each followed by
/// reduction, starting from the trivial decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceExploration {
    /// Distinct decompositions reached, up to labelled shape.
    pub states: usize,
    pub longest: usize,
    pub maximal_traces: BigUint,
}

/// Depth-first exploration of all split/reduce traces, memoized on the
/// labelled shape of each decomposition. Fails if more than `state_cap`
/// decompositions are reached or if a state recurs along a trace.
pub fn explore_traces(decomposer: &Decomposer<'_>, state_cap: usize) -> Result<TraceExploration> {
    struct Walk<'d, 'x> {
        dec: &'d Decomposer<'x>,
        memo: HashMap<GogShape, (usize, BigUint)>,
        on_path: HashSet<GogShape>,
        cap: usize,
    }

    impl Walk<'_, '_> {
        fn visit(&mut self, g: &VisualGog) -> Result<(usize, BigUint)> {
            let key = g.shape();
            if let Some(v) = self.memo.get(&key) {
                return Ok(v.clone());
            }
            if !self.on_path.insert(key.clone()) {
                return Err(Error::Precondition("split/reduce sequence revisits a decomposition".into()));
            }
            if self.memo.len() >= self.cap {
                return Err(Error::resource(format!("more than {} decompositions explored", self.cap)));
            }
            let mut longest = 0;
            let mut count = BigUint::from(0u32);
            let mut any = false;
            for x in 0..g.vertices().len() {
                for mv in self.dec.compatible_splits(g, x, true)? {
                    any = true;
                    let next = self.dec.step(g, &mv)?;
                    let (len, n) = self.visit(&next)?;
                    longest = longest.max(len + 1);
                    count += n;
                }
            }
            if !any {
                count = BigUint::from(1u32);
            }
            self.on_path.remove(&key);
            self.memo.insert(key, (longest, count.clone()));
            Ok((longest, count))
        }
    }

    let mut walk = Walk { dec: decomposer, memo: HashMap::new(), on_path: HashSet::new(), cap: state_cap };
    let (longest, maximal_traces) = walk.visit(&gog::trivial_gog(decomposer.system()))?;
    Ok(TraceExploration { states: walk.memo.len(), longest, maximal_traces })
}
