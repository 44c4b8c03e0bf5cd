mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

use symconn::algebraic::{real_roots, sign_at_root, thom_encoding, RealAlgebraic};
use symconn::poly::UniPoly;
use symconn::rational::{q, qr, Q};

fn with_roots(roots: &[Q]) -> UniPoly {
    roots.iter().fold(UniPoly::one(), |p, r| &p * &UniPoly::linear_root(r))
}

/// Positive square root of `a` as a real algebraic number, times `k`.
fn sqrt_times(a: i64, k: i64) -> RealAlgebraic {
    let rs = real_roots(&UniPoly::from_ints(&[-a, 0, 1])).unwrap();
    let (loc, _) = rs.roots.last().unwrap().clone();
    RealAlgebraic::new(rs.qbar, loc, UniPoly::from_ints(&[0, k]), UniPoly::one())
}

proptest! {
    #[test]
    fn isolates_known_roots(raw in proptest::collection::vec((-20i64..=20, 1i64..=5), 1..6)) {
        let roots: Vec<Q> = raw.iter().map(|&(a, b)| qr(a, b)).collect();
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let rs = real_roots(&with_roots(&roots)).unwrap();
        prop_assert_eq!(rs.roots.len(), distinct.len());
        for ((loc, _), r) in rs.roots.iter().zip(&distinct) {
            let iv = loc.interval();
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
        }
    }

    #[test]
    fn codes_distinct_and_signs_exact(raw in proptest::collection::vec((-20i64..=20, 1i64..=5), 1..6), c in -5i64..5) {
        let roots: Vec<Q> = raw.iter().map(|&(a, b)| qr(a, b)).collect();
        let p = with_roots(&roots);
        let codes = thom_encoding(&p).unwrap();
        for (i, a) in codes.iter().enumerate() {
            for b in &codes[i + 1..] {
                prop_assert_ne!(a, b);
            }
        }
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        // f = x - c changes sign exactly where the root passes c
        let f = UniPoly::linear_root(&q(c));
        for (code, r) in codes.iter().zip(&distinct) {
            let expect = (r - q(c)).cmp(&q(0)) as i8;
            prop_assert_eq!(sign_at_root(&p, code, &f).unwrap(), expect);
        }
    }

    #[test]
    fn sqrt_against_rationals(a in 1i64..200, num in 0i64..60, den in 1i64..8) {
        let r = qr(num, den);
        let expect = q(a).cmp(&(&r * &r));
        prop_assert_eq!(sqrt_times(a, 1).compare(&mut RealAlgebraic::rational(r)), expect);
    }

    #[test]
    fn sqrt_against_sqrt(a in 1i64..100, b in 1i64..30, k in 1i64..4) {
        // sqrt(a) against k sqrt(b) = sqrt(k^2 b)
        let expect = a.cmp(&(k * k * b));
        let mut u = sqrt_times(a, 1);
        let mut v = sqrt_times(b, k);
        prop_assert_eq!(u.compare(&mut v), expect);
        prop_assert_eq!(v.compare(&mut u), expect.reverse());
        prop_assert_eq!(u.compare(&mut u.clone()), Ordering::Equal);
    }
}

#[test]
fn root_counts_match_sturm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = common::random_poly(&mut rng, 7);
        assert_eq!(real_roots(&p).unwrap().roots.len(), common::sturm_count(&p), "{p:?}");
    }
}
