//! Independent oracles for integration tests: the geometric representation
//! of a Coxeter group as real matrices, and Cayley-graph searches over it.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use coxsplit::finite::{self, split_ea};
use coxsplit::gog::{self, Decomposer, GogEdge, VisualGog};
use coxsplit::{corpus, Caps, CoxeterSystem, SpecialSubset, Word, WordEngine};
use proptest::prelude::*;

/// Row-major `n × n` matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    n: usize,
    a: Vec<f64>,
}

pub type Key = Vec<i64>;

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 1.0;
        }
        Mat { n, a }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += x * other.a[k * n + j];
                }
            }
        }
        Mat { n, a }
    }

    /// Entries rounded to 1e-6, for hashing.
    pub fn key(&self) -> Key {
        self.a.iter().map(|x| (x * 1e6).round() as i64).collect()
    }
}

/// The Tits representation: `σ_s(v) = v − 2 B(e_s, v) e_s` with
/// `B(e_s, e_t) = −cos(π / m)` and `−1` for `m = ∞`. It is faithful.
pub struct Geometric {
    pub rank: usize,
    pub gens: Vec<Mat>,
}

impl Geometric {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        let b = |s: usize, t: usize| -> f64 {
            if s == t {
                return 1.0;
            }
            match sys.order(s, t) {
                Some(m) => -(PI / m as f64).cos(),
                None => -1.0,
            }
        };
        let gens = (0..n)
            .map(|s| {
                let mut m = Mat::identity(n);
                // column j is σ_s(e_j) = e_j − 2 B(e_s, e_j) e_s
                for j in 0..n {
                    m.a[s * n + j] -= 2.0 * b(s, j);
                }
                m
            })
            .collect();
        Geometric { rank: n, gens }
    }

    pub fn eval(&self, w: &Word) -> Mat {
        w.letters().fold(Mat::identity(self.rank), |acc, s| acc.mul(&self.gens[s]))
    }

    pub fn key(&self, w: &Word) -> Key {
        self.eval(w).key()
    }
}

/// Breadth-first search of the Cayley graph of `⟨a⟩` up to `radius`.
/// Records, for each element, its distance and the first geodesic found.
pub struct Cayley {
    pub dist: HashMap<Key, usize>,
    pub geodesic: HashMap<Key, Word>,
    /// Whether the search exhausted the group before the radius.
    pub closed: bool,
}

impl Cayley {
    pub fn new(geo: &Geometric, a: SpecialSubset, radius: usize) -> Self {
        let mut dist = HashMap::new();
        let mut geodesic = HashMap::new();
        let id = Mat::identity(geo.rank);
        dist.insert(id.key(), 0);
        geodesic.insert(id.key(), Word::new());
        let mut frontier = vec![(id, Word::new())];
        let mut d = 0;
        let mut closed = false;
        while !frontier.is_empty() {
            if d == radius {
                closed = frontier.iter().all(|(m, _)| {
                    a.iter().all(|s| dist.contains_key(&m.mul(&geo.gens[s]).key()))
                });
                break;
            }
            d += 1;
            let mut next = Vec::new();
            for (m, w) in &frontier {
                for s in a.iter() {
                    let m2 = m.mul(&geo.gens[s]);
                    let k = m2.key();
                    if !dist.contains_key(&k) {
                        dist.insert(k.clone(), d);
                        let w2 = w.pushed(s);
                        geodesic.insert(k, w2.clone());
                        next.push((m2, w2));
                    }
                }
            }
            if next.is_empty() {
                closed = true;
            }
            frontier = next;
        }
        Cayley { dist, geodesic, closed }
    }

    pub fn order(&self) -> usize {
        self.dist.len()
    }

    /// Geodesic words, one per element.
    pub fn elements(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.geodesic.values().cloned().collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        out
    }
}

/// Every word of length exactly `len` over the letters of `a`.
pub fn words_of_length(a: SpecialSubset, len: usize) -> Vec<Word> {
    let letters: Vec<usize> = a.iter().collect();
    let mut out = vec![Word::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| letters.iter().map(move |&s| w.pushed(s)))
            .collect();
    }
    out
}

/// Every word of length at most `len`.
pub fn words_up_to(a: SpecialSubset, len: usize) -> Vec<Word> {
    (0..=len).flat_map(|l| words_of_length(a, l)).collect()
}

/// Connected components of the graph on `vertices` with an edge whenever
/// `adjacent` holds, computed by plain search.
pub fn components(vertices: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; vertices.len()];
    let mut out = Vec::new();
    for i in 0..vertices.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        let mut comp = vec![vertices[i]];
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for j in 0..vertices.len() {
                if !seen[j] && adjacent(vertices[x], vertices[j]) {
                    seen[j] = true;
                    comp.push(vertices[j]);
                    stack.push(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Whether `⟨a⟩` is finite, by exhausting its Cayley graph. Groups with
/// more than `limit` elements are reported infinite, so `limit` must exceed
/// the largest finite order possible at the rank in question.
pub fn is_finite_by_search(geo: &Geometric, a: SpecialSubset, limit: usize) -> bool {
    let mut seen: HashMap<Key, ()> = HashMap::new();
    let id = Mat::identity(geo.rank);
    seen.insert(id.key(), ());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for s in a.iter() {
                let m2 = m.mul(&geo.gens[s]);
                if seen.insert(m2.key(), ()).is_none() {
                    next.push(m2);
                }
            }
        }
        if seen.len() > limit {
            return false;
        }
        frontier = next;
    }
    true
}

/// Random systems on up to `max_rank` generators; `0` stands for `m = ∞`.
pub fn system(max_rank: usize) -> impl Strategy<Value = CoxeterSystem> {
    (1..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(prop::sample::select(vec![2u32, 2, 2, 3, 3, 4, 5, 6, 0]), n * (n - 1) / 2).prop_map(
            move |labels| {
                let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
                let mut pairs = Vec::new();
                let mut k = 0;
                for s in 0..n {
                    for t in s + 1..n {
                        if labels[k] != 0 {
                            pairs.push((s, t, labels[k]));
                        }
                        k += 1;
                    }
                }
                let triples: Vec<(&str, &str, u32)> =
                    pairs.iter().map(|&(s, t, m)| (names[s].as_str(), names[t].as_str(), m)).collect();
                CoxeterSystem::from_pairs(&names, &triples).unwrap()
            },
        )
    })
}

pub fn system_and_subset(max_rank: usize) -> impl Strategy<Value = (CoxeterSystem, SpecialSubset)> {
    system(max_rank).prop_flat_map(|sys| {
        let full = sys.all().bits();
        (Just(sys), any::<u64>().prop_map(move |b| SpecialSubset::from_bits(b & full)))
    })
}

/// A valid decomposition of a corpus system, grown from the trivial one by
/// a seeded mix of splits, blow-ups (a new vertex hanging off an old one by
/// a subset of its label) and reductions.
pub fn corpus_gog() -> impl Strategy<Value = (CoxeterSystem, VisualGog)> {
    (0usize..7, prop::collection::vec(any::<u32>(), 0..7)).prop_map(|(idx, seed)| {
        let sys = corpus::all().swap_remove(idx).1;
        let dec = Decomposer::new(&sys, Caps::default()).unwrap();
        let mut g = gog::trivial_gog(&sys);
        for c in seed {
            let x = (c as usize / 3) % g.vertices().len();
            match c % 3 {
                0 => {
                    let moves = dec.compatible_splits(&g, x, false).unwrap();
                    if !moves.is_empty() {
                        let mv = moves[(c as usize / 7) % moves.len()];
                        if let Ok(next) = dec.apply_split(&g, &mv) {
                            g = next;
                        }
                    }
                }
                1 => g = blow_up(&g, x, c >> 8),
                _ => g = gog::reduce(&g),
            }
        }
        (sys, g)
    })
}

pub fn blow_up(g: &VisualGog, x: usize, bits: u32) -> VisualGog {
    let label = g.vertices()[x].intersection(SpecialSubset::from_bits(bits as u64));
    let mut vertices = g.vertices().to_vec();
    vertices.push(label);
    let mut edges = g.edges().to_vec();
    edges.push(GogEdge { u: x, v: vertices.len() - 1, label });
    VisualGog::new(vertices, edges).unwrap()
}

/// Compares length, canonical form, equality and letter sets from the word
/// engine against the Cayley graph for every word up to `max_len`. Returns
/// the group order found by search and the number of mismatches.
pub fn word_mismatches(sys: &CoxeterSystem, max_len: usize) -> (usize, usize) {
    let geo = Geometric::new(sys);
    let cayley = Cayley::new(&geo, sys.all(), 64);
    let eng = WordEngine::new(sys);
    let mut letter_sets: HashMap<Key, HashSet<SpecialSubset>> = HashMap::new();
    for w in words_up_to(sys.all(), max_len + 1) {
        let key = geo.key(&w);
        if cayley.dist[&key] == w.len() {
            letter_sets.entry(key).or_default().insert(w.support());
        }
    }
    let elements = cayley.elements();
    let index: HashMap<Key, usize> = elements.iter().enumerate().map(|(i, w)| (geo.key(w), i)).collect();
    let mut canonical_of: HashMap<Key, Word> = HashMap::new();
    let mut mismatches = 0;
    for w in words_up_to(sys.all(), max_len) {
        let key = geo.key(&w);
        let class = eng.reduce(&w).unwrap();
        let mut ok = class.length == cayley.dist[&key] && geo.key(&class.canonical) == key;
        ok &= canonical_of.entry(key.clone()).or_insert_with(|| class.canonical.clone()) == &class.canonical;
        let sets = &letter_sets[&key];
        ok &= sets.len() == 1 && sets.contains(&eng.lett(&w).unwrap());
        let i = index[&key];
        ok &= eng.equal(&w, &elements[i]).unwrap();
        if elements.len() > 1 {
            ok &= !eng.equal(&w, &elements[(i + 1) % elements.len()]).unwrap();
        }
        mismatches += usize::from(!ok);
    }
    let distinct: HashSet<&Word> = canonical_of.values().collect();
    mismatches += canonical_of.len() - distinct.len();
    (cayley.order(), mismatches)
}

/// Brute-force check over every `I, J ⊆ S` and every element `w`: the
/// double coset `⟨I⟩ w ⟨J⟩` has a unique shortest element equal to the
/// engine's representative `d`, and `⟨I⟩ ∩ d⟨J⟩d⁻¹ = ⟨I ∩ dJd⁻¹⟩`. Returns
/// the number of triples checked and the number of mismatches.
pub fn double_coset_mismatches(sys: &CoxeterSystem) -> (usize, usize) {
    let geo = Geometric::new(sys);
    let eng = WordEngine::new(sys);
    let whole = Cayley::new(&geo, sys.all(), 64);
    let elements = whole.elements();
    let subsets: Vec<SpecialSubset> = sys.all().subsets_canonical();
    let special = |a: SpecialSubset| Cayley::new(&geo, a, 64).elements();
    let keys = |words: &mut dyn Iterator<Item = Word>| -> HashSet<Key> { words.map(|w| geo.key(&w)).collect() };
    let parabolic: Vec<Vec<Word>> = subsets.iter().map(|&a| special(a)).collect();
    let (mut checked, mut mismatches) = (0, 0);
    for (ii, &i) in subsets.iter().enumerate() {
        for (jj, &j) in subsets.iter().enumerate() {
            for w in &elements {
                checked += 1;
                let coset: HashSet<Key> = parabolic[ii]
                    .iter()
                    .flat_map(|x| parabolic[jj].iter().map(move |y| x.concat(w).concat(y)))
                    .map(|v| geo.key(&v))
                    .collect();
                let min_len = coset.iter().map(|k| whole.dist[k]).min().unwrap();
                let shortest: Vec<&Key> = coset.iter().filter(|k| whole.dist[*k] == min_len).collect();
                let rep = eng.min_double_coset_rep(i, w, j).unwrap();
                let (d, k) = eng.special_intersection(i, w, j).unwrap();
                let di = d.inverse();
                let conj_j = keys(&mut parabolic[jj].iter().map(|y| d.concat(y).concat(&di)));
                let lhs: HashSet<Key> = keys(&mut parabolic[ii].iter().cloned()).intersection(&conj_j).cloned().collect();
                let rhs = keys(&mut special(k).into_iter());
                let expected_k: SpecialSubset = i
                    .iter()
                    .filter(|&s| {
                        let image = geo.key(&di.concat(&Word::generator(s)).concat(&d));
                        j.iter().any(|t| geo.key(&Word::generator(t)) == image)
                    })
                    .collect();
                let ok = shortest.len() == 1
                    && rep.length == min_len
                    && &geo.key(&rep.canonical) == shortest[0]
                    && geo.key(&d) == geo.key(&rep.canonical)
                    && lhs == rhs
                    && k == expected_k;
                mismatches += usize::from(!ok);
            }
        }
    }
    (checked, mismatches)
}

pub const PROPERTY_CASES: u32 = 1000;

pub fn split_ea_idempotent_and_maximal(sys: &CoxeterSystem, a: SpecialSubset) -> Result<(), TestCaseError> {
    let split = split_ea(sys, a);
    prop_assert_eq!(split.e.union(split.t), a);
    prop_assert!(split.e.is_disjoint(split.t));
    prop_assert_eq!(split_ea(sys, split.e), finite::SplitEA { e: split.e, t: SpecialSubset::EMPTY });
    prop_assert_eq!(split_ea(sys, split.t), finite::SplitEA { e: SpecialSubset::EMPTY, t: split.t });
    prop_assert!(finite::is_finite(sys, split.t));
    for e in split.e.iter() {
        for t in split.t.iter() {
            prop_assert!(sys.commute(e, t));
        }
    }
    // maximality: no infinite-part component could move to the finite factor
    for comp in sys.noncommuting_components(split.e) {
        prop_assert!(!finite::is_finite(sys, comp));
    }
    Ok(())
}

pub fn lk2_properties(sys: &CoxeterSystem, a: SpecialSubset, extra: u64) -> Result<(), TestCaseError> {
    let link = finite::lk2(sys, a);
    prop_assert!(link.is_disjoint(a));
    for s in sys.all().difference(a).iter() {
        let commutes = a.iter().all(|t| sys.commute(s, t));
        prop_assert_eq!(link.contains(s), commutes);
    }
    let b = a.union(SpecialSubset::from_bits(extra & sys.all().bits()));
    prop_assert!(finite::lk2(sys, b).is_subset(link));
    prop_assert_eq!(finite::lk2(sys, SpecialSubset::EMPTY), sys.all());
    Ok(())
}

pub fn reduce_idempotent_and_confluent(sys: &CoxeterSystem, g: &VisualGog, order: &[u16]) -> Result<(), TestCaseError> {
    let reduced = gog::reduce(g);
    prop_assert_eq!(gog::reduce(&reduced), reduced.clone());
    prop_assert!(reduced.is_reduced());
    prop_assert_eq!(gog::validate(sys, &reduced), Ok(()));
    // collapse in a seeded order instead of least index first
    let mut h = g.clone();
    let mut picks = order.iter().copied().chain(std::iter::repeat(0));
    loop {
        let collapsible: Vec<usize> = (0..h.edges().len()).filter(|&i| h.collapse_edge(i).is_some()).collect();
        if collapsible.is_empty() {
            break;
        }
        let i = collapsible[picks.next().unwrap() as usize % collapsible.len()];
        h = h.collapse_edge(i).unwrap();
    }
    prop_assert_eq!(h.shape(), reduced.shape());
    Ok(())
}

pub fn validity_closed_under_moves(sys: &CoxeterSystem, g: &VisualGog) -> Result<(), TestCaseError> {
    prop_assert_eq!(gog::validate(sys, g), Ok(()));
    let dec = Decomposer::new(sys, Caps::default()).unwrap();
    for i in 0..g.edges().len() {
        if let Some(h) = g.collapse_edge(i) {
            prop_assert_eq!(gog::validate(sys, &h), Ok(()));
        }
        let h = g.contract_edge(i).unwrap();
        prop_assert_eq!(gog::validate(sys, &h), Ok(()));
    }
    let unique = |label: SpecialSubset| g.vertices().iter().filter(|&&v| v == label).count() == 1;
    for x in 0..g.vertices().len() {
        for restrict in [false, true] {
            for mv in dec.compatible_splits(g, x, restrict).unwrap() {
                prop_assert!(mv.left.intersection(mv.right) == mv.edge);
                if !unique(mv.vertex) {
                    continue;
                }
                let h = dec.apply_split(g, &mv).unwrap();
                prop_assert_eq!(gog::validate(sys, &h), Ok(()));
                prop_assert_eq!(gog::validate(sys, &gog::reduce(&h)), Ok(()));
            }
        }
    }
    Ok(())
}
