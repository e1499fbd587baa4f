mod common;

use common::{components, is_finite_by_search, Geometric};
use coxsplit::splittings::{classify_minimal, enumerate_separators, SeparatorTable};
use coxsplit::{corpus, finite, Caps, CoxeterSystem, SpecialSubset};
use proptest::prelude::*;

/// Separators recomputed from scratch: `C` separates when `Γ − C` has at
/// least two components.
fn brute_separators(sys: &CoxeterSystem) -> Vec<(SpecialSubset, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for c in sys.all().subsets() {
        let rest: Vec<usize> = sys.all().difference(c).iter().collect();
        let comps = components(&rest, |s, t| sys.order(s, t).is_some());
        if comps.len() >= 2 {
            out.push((c, comps));
        }
    }
    out
}

/// Infinite part of `c` from non-commuting components whose finiteness is
/// settled by Cayley search.
fn brute_essential(sys: &CoxeterSystem, geo: &Geometric, c: SpecialSubset) -> SpecialSubset {
    let vertices: Vec<usize> = c.iter().collect();
    components(&vertices, |s, t| !sys.commute(s, t))
        .into_iter()
        .map(SpecialSubset::from_indices)
        .filter(|&comp| !is_finite_by_search(geo, comp, 500))
        .fold(SpecialSubset::EMPTY, SpecialSubset::union)
}

fn check(sys: &CoxeterSystem) {
    let geo = Geometric::new(sys);
    let brute = brute_separators(sys);
    let records = classify_minimal(sys, &Caps::default()).unwrap();
    assert_eq!(records.len(), brute.len());
    for (c, comps) in &brute {
        let rec = records.iter().find(|r| r.separator == *c).expect("separator found");
        let mut found: Vec<Vec<usize>> = rec.components.iter().map(|x| x.iter().collect()).collect();
        found.sort();
        let mut expected = comps.clone();
        expected.sort();
        assert_eq!(found, expected);
        assert_eq!(rec.essential, brute_essential(sys, &geo, *c));
    }
    for rec in &records {
        let smaller = brute
            .iter()
            .any(|(d, _)| brute_essential(sys, &geo, *d).is_proper_subset(rec.essential));
        assert_eq!(rec.minimal, !smaller, "{}", sys.format_subset(rec.separator));
    }
}

#[test]
fn corpus_separators_match_brute_force() {
    for (_, sys) in corpus::all() {
        check(&sys);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_separators_match_brute_force(sys in common::system(3)) {
        check(&sys);
    }
}

fn names(sys: &CoxeterSystem, list: &str) -> SpecialSubset {
    sys.parse_subset(list).unwrap()
}

#[test]
fn sys_a_minimality_and_one_endedness() {
    let sys = corpus::sys_a();
    let table = SeparatorTable::new(&sys, &Caps::default()).unwrap();
    assert!(table.is_minimal(names(&sys, "x,c,y")));
    assert!(table.get(names(&sys, "x,b,y")).is_some());
    assert!(!table.is_minimal(names(&sys, "x,b,y")));
    assert!(table.records().iter().all(|r| !finite::is_finite(&sys, r.separator)));
}

#[test]
fn one_ended_corpus_systems() {
    for sys in [corpus::sys_a(), corpus::sys_c(), corpus::sys_d()] {
        let records = enumerate_separators(&sys, &Caps::default()).unwrap();
        assert!(!records.is_empty());
        assert!(records.iter().all(|r| !finite::is_finite(&sys, r.separator)));
    }
    // SYS-B splits over the finite ⟨a2,a5⟩
    let b = corpus::sys_b();
    let records = enumerate_separators(&b, &Caps::default()).unwrap();
    assert!(records.iter().any(|r| finite::is_finite(&b, r.separator)));
}

#[test]
fn sys_c_minimal_separators() {
    let sys = corpus::sys_c();
    let table = SeparatorTable::new(&sys, &Caps::default()).unwrap();
    let e = names(&sys, "s6,s7");
    let base = names(&sys, "s1,s2,s3,s4,s5");
    // ⟨s1,…,s5⟩ separates s6 from s7; every other minimal separator has E = {s6,s7}
    assert!(table.is_minimal(base));
    let minimal: Vec<_> = table.minimal().filter(|r| r.separator != base).collect();
    assert_eq!(minimal.len(), 5);
    assert!(minimal.iter().all(|r| r.essential == e));
    for c in ["s2,s6,s7", "s3,s6,s7", "s4,s6,s7"] {
        assert!(table.is_minimal(names(&sys, c)));
    }
}

#[test]
fn sys_b_single_minimal_separator() {
    let sys = corpus::sys_b();
    let table = SeparatorTable::new(&sys, &Caps::default()).unwrap();
    let minimal: Vec<SpecialSubset> = table.minimal().map(|r| r.separator).collect();
    assert_eq!(minimal, vec![names(&sys, "a2,a5")]);
}
