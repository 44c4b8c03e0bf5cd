use proptest::prelude::*;
use std::collections::BTreeSet;

use symconn::composition::{
    enumerate_compmax, enumerate_compositions, minimal_adjacent_transpositions, multiplicity_composition,
    Composition, Pattern,
};

fn composition() -> impl Strategy<Value = Composition> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::btree_set(1..n.max(2), 0..n)
            .prop_map(move |b| Composition::from_breaks(n, &b.into_iter().filter(|&k| k < n).collect()))
    })
}

fn pair() -> impl Strategy<Value = (Composition, Composition)> {
    (2usize..=9).prop_flat_map(|n| {
        let breaks = || proptest::collection::btree_set(1..n, 0..n);
        (breaks(), breaks()).prop_map(move |(a, b)| {
            (Composition::from_breaks(n, &a), Composition::from_breaks(n, &b))
        })
    })
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #[test]
    fn join_is_an_upper_bound((a, b) in pair()) {
        let j = a.join(&b).unwrap();
        prop_assert!(a.precedes(&j).unwrap());
        prop_assert!(b.precedes(&j).unwrap());
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(a.join(&a).unwrap(), a.clone());
    }

    #[test]
    fn join_is_least((a, b) in pair(), extra in proptest::collection::btree_set(1usize..9, 0..4)) {
        // any common upper bound sits above the join
        let n = a.n();
        let common: BTreeSet<usize> = a.breaks().intersection(&b.breaks()).copied().collect();
        let fewer: BTreeSet<usize> = common.iter().copied().filter(|k| !extra.contains(k)).collect();
        let upper = Composition::from_breaks(n, &fewer);
        prop_assert!(a.join(&b).unwrap().precedes(&upper).unwrap());
    }

    #[test]
    fn precedes_is_antisymmetric((a, b) in pair()) {
        if a.precedes(&b).unwrap() && b.precedes(&a).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn embed_collapse_round_trip(c in composition(), seed in proptest::collection::vec(-50i64..50, 9)) {
        let z: Vec<i64> = seed[..c.len()].to_vec();
        let x = c.embed(&z).unwrap();
        prop_assert_eq!(x.len(), c.n());
        prop_assert!(c.is_constant_on_blocks(&x));
        prop_assert_eq!(c.collapse(&x), z);
        prop_assert!(c.precedes(&multiplicity_composition(&x).unwrap()).unwrap());
    }

    #[test]
    fn res_merges_one_wall(c in composition(), i in 1usize..9) {
        prop_assume!(i < c.n());
        let r = c.res(i).unwrap();
        prop_assert!(c.precedes(&r).unwrap());
        prop_assert_eq!(r.block_of(i - 1), r.block_of(i));
        prop_assert!(c.len() - r.len() <= 1);
        prop_assert_eq!(r.res(i).unwrap(), r.clone());
        prop_assert_eq!(&r, &c.join(&Composition::wall(c.n(), i).unwrap()).unwrap());
    }

    #[test]
    fn bubble_word_sorts(x in proptest::collection::vec(-5i32..5, 0..9)) {
        let (word, sorted) = minimal_adjacent_transpositions(&x);
        let mut expect = x.clone();
        expect.sort();
        prop_assert_eq!(&sorted, &expect);
        let mut y = x.clone();
        word.apply(&mut y);
        prop_assert_eq!(y, expect);
        let inversions = (0..x.len()).flat_map(|i| (i + 1..x.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| x[i] > x[j]).count();
        prop_assert_eq!(word.len(), inversions);
    }
}

#[test]
fn composition_counts() {
    for n in 1..=10 {
        for len in 1..=n {
            assert_eq!(enumerate_compositions(n, len).unwrap().len(), binom(n - 1, len - 1));
        }
    }
}

#[test]
fn pattern_counts() {
    for n in 2..=10 {
        for d in 2..=5usize.min(n) {
            let (hi, lo) = (d.div_ceil(2), d / 2);
            assert_eq!(enumerate_compmax(n, d, Pattern::Definition).unwrap().len(), binom(n - hi - 1, lo - 1));
            assert_eq!(enumerate_compmax(n, d, Pattern::Mirrored).unwrap().len(), binom(n - hi - 1, lo - 1));
            assert_eq!(enumerate_compmax(n, d, Pattern::Minimizer).unwrap().len(), binom(n - lo - 1, hi - 1));
        }
    }
}

#[test]
fn pattern_faces_are_pinned() {
    for n in 2..=8 {
        for d in 1..=n {
            for c in enumerate_compmax(n, d, Pattern::Minimizer).unwrap() {
                assert_eq!(c.len(), d);
                for k in (1..d).rev().step_by(2) {
                    assert_eq!(c.parts()[k - 1], 1, "{c} position {k}");
                }
            }
        }
    }
}
