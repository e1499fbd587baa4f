//! Bundled example systems.
//!
//! | file         | system                                                        |
//! |--------------|---------------------------------------------------------------|
//! | `sysA.json`  | 6 generators; `{x,c,y}` minimal, `{x,b,y}` separating but not |
//! | `sysB.json`  | right-angled 5-cycle with the chord `a2–a5`                   |
//! | `sysC.json`  | path of five commuting-neighbour generators times `D∞`        |
//! | `sysD.json`  | `D∞ × (Z2 * Z2 * Z2 * Z2)`                                     |
//! | `dinf.json`  | infinite dihedral group                                       |
//! | `a3.json`    | symmetric group of order 24                                   |
//! | `b2.json`    | dihedral group of order 8                                     |

use crate::system::CoxeterSystem;

fn build(generators: &[&str], pairs: &[(&str, &str, u32)]) -> CoxeterSystem {
    CoxeterSystem::from_pairs(generators, pairs).expect("bundled fixture is well formed")
}

pub fn sys_a() -> CoxeterSystem {
    build(
        &["a", "b", "c", "d", "x", "y"],
        &[
            ("a", "x", 2),
            ("a", "y", 2),
            ("c", "x", 2),
            ("c", "y", 2),
            ("d", "x", 2),
            ("d", "y", 2),
            ("a", "b", 2),
            ("b", "c", 2),
            ("c", "d", 3),
            ("x", "b", 3),
            ("y", "b", 3),
        ],
    )
}

pub fn sys_b() -> CoxeterSystem {
    build(
        &["a1", "a2", "a3", "a4", "a5"],
        &[
            ("a1", "a2", 2),
            ("a2", "a3", 2),
            ("a3", "a4", 2),
            ("a4", "a5", 2),
            ("a5", "a1", 2),
            ("a2", "a5", 2),
        ],
    )
}

pub fn sys_c() -> CoxeterSystem {
    let mut pairs = vec![("s1", "s2", 2), ("s2", "s3", 2), ("s3", "s4", 2), ("s4", "s5", 2)];
    for s in ["s1", "s2", "s3", "s4", "s5"] {
        pairs.push((s, "s6", 2));
        pairs.push((s, "s7", 2));
    }
    build(&["s1", "s2", "s3", "s4", "s5", "s6", "s7"], &pairs)
}

pub fn sys_d() -> CoxeterSystem {
    let mut pairs = Vec::new();
    for s in ["s1", "s2"] {
        for t in ["s3", "s4", "s5", "s6"] {
            pairs.push((s, t, 2));
        }
    }
    build(&["s1", "s2", "s3", "s4", "s5", "s6"], &pairs)
}

pub fn dinf() -> CoxeterSystem {
    build(&["a", "b"], &[])
}

pub fn a3() -> CoxeterSystem {
    build(&["s", "t", "u"], &[("s", "t", 3), ("t", "u", 3), ("s", "u", 2)])
}

pub fn b2() -> CoxeterSystem {
    build(&["s", "t"], &[("s", "t", 4)])
}

/// Every bundled fixture with its file name.
pub fn all() -> Vec<(&'static str, CoxeterSystem)> {
    vec![
        ("sysA.json", sys_a()),
        ("sysB.json", sys_b()),
        ("sysC.json", sys_c()),
        ("sysD.json", sys_d()),
        ("dinf.json", dinf()),
        ("a3.json", a3()),
        ("b2.json", b2()),
    ]
}
