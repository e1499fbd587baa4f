mod common;

use common::{words_up_to, Cayley, Geometric};
use coxsplit::{corpus, CoxeterSystem, Word, WordEngine};
use proptest::prelude::*;

fn a2() -> CoxeterSystem {
    CoxeterSystem::from_pairs(&["s", "t"], &[("s", "t", 3)]).unwrap()
}

fn finite_systems() -> Vec<(CoxeterSystem, usize)> {
    vec![(a2(), 6), (corpus::b2(), 8), (corpus::a3(), 24)]
}

#[test]
fn group_orders_by_cayley_search() {
    for (sys, order) in finite_systems() {
        let cayley = Cayley::new(&Geometric::new(&sys), sys.all(), 64);
        assert!(cayley.closed);
        assert_eq!(cayley.order(), order);
        let eng = WordEngine::new(&sys);
        assert_eq!(eng.enumerate_group(sys.all()).unwrap().len(), order);
    }
}

#[test]
fn reduce_equal_lett_agree_with_cayley_graph() {
    for (sys, order) in finite_systems() {
        assert_eq!(common::word_mismatches(&sys, 8), (order, 0));
    }
}

#[test]
fn equal_agrees_on_pairs() {
    let sys = corpus::b2();
    let geo = Geometric::new(&sys);
    let eng = WordEngine::new(&sys);
    let words = words_up_to(sys.all(), 5);
    for u in &words {
        for v in words.iter().step_by(3) {
            assert_eq!(eng.equal(u, v).unwrap(), geo.key(u) == geo.key(v), "{u:?} vs {v:?}");
        }
    }
}

fn word_in(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..rank, 0..=max).prop_map(Word::from_letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn infinite_systems_agree_with_cayley_ball(idx in 0usize..4, w in word_in(6, 7)) {
        let systems = [corpus::sys_a(), corpus::sys_d(), corpus::sys_b(), corpus::dinf()];
        let sys = &systems[idx];
        let w = Word::from_letters(w.letters().map(|s| s % sys.rank()));
        let geo = Geometric::new(sys);
        let eng = WordEngine::new(sys);
        let class = eng.reduce(&w).unwrap();
        prop_assert_eq!(geo.key(&class.canonical), geo.key(&w));
        // a shorter word for the same element would appear in the ball
        let ball = Cayley::new(&geo, sys.all(), class.length);
        prop_assert_eq!(ball.dist.get(&geo.key(&w)).copied(), Some(class.length));
        prop_assert!(eng.is_geodesic(&class.canonical).unwrap());
        prop_assert_eq!(eng.reduce(&class.canonical).unwrap(), class);
    }
}

#[test]
fn shared_engine_across_threads() {
    let sys = corpus::sys_c();
    let eng = WordEngine::new(&sys);
    let words: Vec<Word> = (0..200u64)
        .map(|i| Word::from_letters((0..10).map(|j| ((i * 7 + j * 13 + i * j) % 7) as usize)))
        .collect();
    let expected: Vec<_> = words.iter().map(|w| WordEngine::new(&sys).reduce(w).unwrap()).collect();
    std::thread::scope(|scope| {
        for chunk in 0..4 {
            let (eng, words, expected) = (&eng, &words, &expected);
            scope.spawn(move || {
                for (w, e) in words.iter().zip(expected).skip(chunk).step_by(2) {
                    assert_eq!(&eng.reduce(w).unwrap(), e);
                }
            });
        }
    });
}

#[test]
fn ball_sizes_match_cayley_search() {
    for sys in [corpus::sys_a(), corpus::sys_d(), corpus::dinf(), corpus::a3()] {
        let geo = Geometric::new(&sys);
        let eng = WordEngine::new(&sys);
        let (levels, closed) = eng.ball(4).unwrap();
        let cayley = Cayley::new(&geo, sys.all(), 4);
        assert_eq!(levels.iter().map(Vec::len).sum::<usize>(), cayley.order());
        assert_eq!(closed, cayley.closed);
        for (d, level) in levels.iter().enumerate() {
            for w in level {
                assert_eq!(cayley.dist[&geo.key(w)], d);
            }
        }
    }
}
