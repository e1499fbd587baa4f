//! Finite-type recognition of special subgroups, the decomposition
//! `⟨A⟩ = ⟨E(A)⟩ × ⟨T(A)⟩`, and 2-links.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::subset::SpecialSubset;
use crate::system::CoxeterSystem;

/// Type of one irreducible component, from the catalog of finite Coxeter
/// groups. Rank-2 components with `m = 3` or `m = 4` are reported as `A_2`
/// and `B_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    Infinite,
}

impl FiniteType {
    pub fn is_finite(self) -> bool {
        self != FiniteType::Infinite
    }

    /// Group order from the catalog formula.
    pub fn order(self) -> Option<u128> {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        Some(match self {
            FiniteType::A(n) => factorial(n + 1),
            FiniteType::B(n) => (1u128 << n) * factorial(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * factorial(n),
            FiniteType::E6 => 51_840,
            FiniteType::E7 => 2_903_040,
            FiniteType::E8 => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14_400,
            FiniteType::I2(m) => 2 * u128::from(m),
            FiniteType::Infinite => return None,
        })
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A_{n}"),
            FiniteType::B(n) => write!(f, "B_{n}"),
            FiniteType::D(n) => write!(f, "D_{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
            FiniteType::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeVerdict {
    pub finite: bool,
    /// Components of the non-commuting diagram on the subset, by smallest
    /// generator index.
    pub components: Vec<(SpecialSubset, FiniteType)>,
}

impl FiniteTypeVerdict {
    /// Product of the component orders, or `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.components
            .iter()
            .try_fold(1u128, |acc, (_, ty)| ty.order().and_then(|o| acc.checked_mul(o)))
    }
}

/// Splits `a` into non-commuting components and matches each against the
/// finite-type catalog.
pub fn is_finite_type(sys: &CoxeterSystem, a: SpecialSubset) -> FiniteTypeVerdict {
    let components: Vec<_> = sys
        .noncommuting_components(a)
        .into_iter()
        .map(|c| (c, classify_component(sys, c)))
        .collect();
    let finite = components.iter().all(|(_, ty)| ty.is_finite());
    FiniteTypeVerdict { finite, components }
}

pub fn is_finite(sys: &CoxeterSystem, a: SpecialSubset) -> bool {
    sys.noncommuting_components(a)
        .into_iter()
        .all(|c| classify_component(sys, c).is_finite())
}

/// Classifies a connected component of the non-commuting diagram.
fn classify_component(sys: &CoxeterSystem, comp: SpecialSubset) -> FiniteType {
    let nodes: Vec<usize> = comp.iter().collect();
    let n = nodes.len();
    let mut edges = Vec::new();
    for (x, &s) in nodes.iter().enumerate() {
        for &t in &nodes[x + 1..] {
            if sys.commute(s, t) {
                continue;
            }
            match sys.order(s, t) {
                None => return FiniteType::Infinite,
                Some(m) => edges.push((s, t, m)),
            }
        }
    }
    match n {
        0 => return FiniteType::A(0),
        1 => return FiniteType::A(1),
        2 => {
            return match edges[0].2 {
                3 => FiniteType::A(2),
                4 => FiniteType::B(2),
                m => FiniteType::I2(m),
            }
        }
        _ => {}
    }
    // rank >= 3: must be a tree with every label in {3, 4, 5}
    if edges.len() != n - 1 {
        return FiniteType::Infinite;
    }
    if edges.iter().any(|&(_, _, m)| m > 5) {
        return FiniteType::Infinite;
    }
    let degree = |v: usize| edges.iter().filter(|&&(s, t, _)| s == v || t == v).count();
    let heavy: Vec<(usize, usize, u32)> = edges.iter().copied().filter(|e| e.2 > 3).collect();
    let max_degree = nodes.iter().map(|&v| degree(v)).max().unwrap_or(0);

    if heavy.is_empty() {
        if max_degree <= 2 {
            return FiniteType::A(n);
        }
        let branches: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
        if branches.len() != 1 || degree(branches[0]) != 3 {
            return FiniteType::Infinite;
        }
        let center = branches[0];
        let mut arms: Vec<usize> = edges
            .iter()
            .filter_map(|&(s, t, _)| {
                if s == center {
                    Some(t)
                } else if t == center {
                    Some(s)
                } else {
                    None
                }
            })
            .map(|start| arm_length(&edges, center, start))
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, k] => FiniteType::D(k + 3),
            [1, 2, 2] => FiniteType::E6,
            [1, 2, 3] => FiniteType::E7,
            [1, 2, 4] => FiniteType::E8,
            _ => FiniteType::Infinite,
        };
    }

    // one heavy label on a path
    if heavy.len() != 1 || max_degree > 2 {
        return FiniteType::Infinite;
    }
    let (s, t, m) = heavy[0];
    let at_end = degree(s) == 1 || degree(t) == 1;
    match (m, at_end, n) {
        (4, true, _) => FiniteType::B(n),
        (4, false, 4) => FiniteType::F4,
        (5, true, 3) => FiniteType::H3,
        (5, true, 4) => FiniteType::H4,
        _ => FiniteType::Infinite,
    }
}

/// Number of vertices on the arm of a tree starting at `start`, walking away
/// from `from`.
fn arm_length(edges: &[(usize, usize, u32)], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = edges.iter().find_map(|&(s, t, _)| {
            if s == cur && t != prev {
                Some(t)
            } else if t == cur && s != prev {
                Some(s)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

/// `A = E ⊔ T` with `⟨T⟩` the largest finite direct factor commuting with
/// the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitEA {
    pub e: SpecialSubset,
    pub t: SpecialSubset,
}

/// `T` is the union of the finite-type non-commuting components of `a`,
/// `E` the union of the infinite ones.
pub fn split_ea(sys: &CoxeterSystem, a: SpecialSubset) -> SplitEA {
    let mut e = SpecialSubset::EMPTY;
    let mut t = SpecialSubset::EMPTY;
    for comp in sys.noncommuting_components(a) {
        if classify_component(sys, comp).is_finite() {
            t = t.union(comp);
        } else {
            e = e.union(comp);
        }
    }
    SplitEA { e, t }
}

/// Shorthand for `split_ea(sys, a).e`.
pub fn essential(sys: &CoxeterSystem, a: SpecialSubset) -> SpecialSubset {
    split_ea(sys, a).e
}

/// Generators outside `a` commuting with all of `a`; `lk2(∅) = S`.
pub fn lk2(sys: &CoxeterSystem, a: SpecialSubset) -> SpecialSubset {
    let mut out = SpecialSubset::EMPTY;
    for s in sys.all().difference(a).iter() {
        if a.iter().all(|t| sys.commute(s, t)) {
            out = out.with(s);
        }
    }
    out
}
