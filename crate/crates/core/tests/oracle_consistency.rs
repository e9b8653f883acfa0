mod common;

use std::collections::BTreeMap;

use flopcalc::oracle::{bounded_members, closed_alphabet, named_alphabet, report_for};
use flopcalc::*;

fn alphabet(name: &str) -> Vec<GeneratorLetter> {
    named_alphabet(name).unwrap()
}

/// Shortest, then lexicographically least, index word for every matrix
/// reachable in at most `depth` letters, by enumerating every word.
fn brute_force(letters: &[IntMat2], depth: usize) -> BTreeMap<IntMat2, Vec<usize>> {
    let mut best: BTreeMap<IntMat2, Vec<usize>> = BTreeMap::new();
    let mut layer: Vec<(Vec<usize>, IntMat2)> = vec![(Vec::new(), IntMat2::identity())];
    for _ in 0..=depth {
        for (w, x) in &layer {
            let better = match best.get(x) {
                None => true,
                Some(old) => (old.len(), old) > (w.len(), w),
            };
            if better {
                best.insert(x.clone(), w.clone());
            }
        }
        layer = layer
            .iter()
            .flat_map(|(w, x)| {
                letters.iter().enumerate().map(move |(i, step)| {
                    let mut w = w.clone();
                    w.push(i);
                    (w, x.mul(step))
                })
            })
            .collect();
    }
    best
}

fn check_witnesses_against_brute_force(name: &str, depth: usize) {
    let letters = alphabet(name);
    let closed = closed_alphabet(&letters);
    let matrices: Vec<IntMat2> = closed.iter().map(|(_, x)| x.clone()).collect();
    let reach = bfs_enumerate(&letters, depth);
    let truth = brute_force(&matrices, depth);

    assert_eq!(reach.len(), truth.len(), "{name}");
    for (x, indices) in &truth {
        let witness = reach.witness(x).unwrap_or_else(|| panic!("{name}: {x} not reached"));
        let expected: Vec<GeneratorLetter> = indices.iter().map(|&i| closed[i].0.clone()).collect();
        assert_eq!(witness.letters(), expected.as_slice(), "{name}: witness for {x}");
    }
}

#[test]
fn shortest_witnesses_h4() {
    check_witnesses_against_brute_force("h4", 5);
}

#[test]
fn shortest_witnesses_h1() {
    check_witnesses_against_brute_force("h1", 4);
}

#[test]
fn shortest_witnesses_h2() {
    check_witnesses_against_brute_force("h2", 3);
}

#[test]
fn shortest_witnesses_k6() {
    check_witnesses_against_brute_force("k6", 4);
}

#[test]
fn witnesses_re_evaluate() {
    for name in ["h4", "h1", "h2", "k6"] {
        let reach = bfs_enumerate(&alphabet(name), 5);
        for (x, w) in reach.iter() {
            assert_eq!(&eval_word(w), x, "{name}");
            assert!(w.len() <= 5);
        }
        assert_eq!(reach.layer_sizes().iter().sum::<usize>(), reach.len());
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = bfs_enumerate(&alphabet("h2"), 4);
    let b = bfs_enumerate(&alphabet("h2"), 4);
    assert!(a.iter().eq(b.iter()));
    assert_eq!(a.layer_sizes(), b.layer_sizes());
}

#[test]
fn h4_reach_factors_at_depth_8() {
    let reach = bfs_enumerate(&alphabet("h4"), 8);
    for x in reach.matrices() {
        assert!(membership(x, SubgroupTag::H4));
        assert_eq!(&eval_word(&factor_h4(x).unwrap()), x);
        assert_eq!(&eval_word(&factor_h2_transport(x).unwrap()), x);
    }
}

#[test]
fn h1_reach_factors() {
    let reach = bfs_enumerate(&alphabet("h1"), 6);
    for x in reach.matrices() {
        assert!(membership(x, SubgroupTag::H1));
        assert_eq!(&eval_word(&factor_h1(x).unwrap()), x);
    }
}

#[test]
fn h2_reach_factors() {
    let reach = bfs_enumerate(&alphabet("h2"), 5);
    for x in reach.matrices() {
        assert!(membership(x, SubgroupTag::H2));
        assert_eq!(&eval_word(&factor_h2_transport(x).unwrap()), x);
        assert_eq!(&eval_word(&factor_h1(x).unwrap()), x);
        let (k, h) = decompose_h2(x).unwrap();
        assert_eq!(&k.mul(&eval_word(&factor_h4(&h).unwrap())), x);
    }
}

#[test]
fn generation_reports() {
    let r = verify_generation(&alphabet("h4"), SubgroupTag::H4, 3, 6);
    assert!(r.is_sound());
    assert_eq!(r.bounded_members, bounded_members(SubgroupTag::H4, 3).len());

    let r = verify_generation(&alphabet("k6"), SubgroupTag::K6, 1, 3);
    assert!(r.is_sound() && r.is_complete());
    assert_eq!(r.reached, 6);

    let r = verify_generation(&alphabet("h1"), SubgroupTag::H1, 2, 6);
    assert!(r.is_sound());

    // U alone misses L.
    let only_u = [GeneratorLetter::from(Letter::U)];
    let r = verify_generation(&only_u, SubgroupTag::H4, 2, 4);
    assert!(r.is_sound());
    assert!(r.gaps.contains(&Letter::L.matrix()));

    // A letter outside the subgroup is caught.
    let r = verify_generation(&[GeneratorLetter::from(Letter::Tau2)], SubgroupTag::H2, 1, 2);
    assert_eq!(r.violations, vec![Letter::Tau2.matrix()]);
}

#[test]
fn reports_from_shared_reach_set() {
    let reach = bfs_enumerate(&alphabet("h2"), 4);
    let as_h2 = report_for(&reach, SubgroupTag::H2, 2);
    let as_h4 = report_for(&reach, SubgroupTag::H4, 2);
    assert!(as_h2.is_sound());
    assert!(!as_h4.is_sound());
    assert_eq!(as_h2.reached, as_h4.reached);
}
