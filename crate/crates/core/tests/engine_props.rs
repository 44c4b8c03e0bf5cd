mod common;

use proptest::prelude::*;
use std::sync::OnceLock;

use symconn::composition::Composition;
use symconn::engine::{auto_canonicalize, Engine, EngineConfig};
use symconn::oracle::{ConnectivityOracle, GridOracle, OracleConfig, Region};
use symconn::problem::{read_problem, ProblemFile};
use symconn::rational::{q, qr, Q};
use symconn::sympoly::{BoundingBox, Constraint, PowerSumPoly, Relation, SymmetricSystem};

fn corpus() -> &'static Vec<ProblemFile> {
    static FILES: OnceLock<Vec<ProblemFile>> = OnceLock::new();
    FILES.get_or_init(|| {
        let mut paths: Vec<_> = std::fs::read_dir(common::corpus())
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        paths.sort();
        paths.iter().map(|p| read_problem(p).unwrap()).filter(|p| !p.points.is_empty()).collect()
    })
}

fn full_degree_system(c: &[i64; 4], c2: &[i64; 3]) -> SymmetricSystem {
    // a quadric and a half-plane pair in the plane, written in p_1, p_2
    let g = PowerSumPoly::new(
        2,
        [
            (vec![0, 0], q(c[0])),
            (vec![1, 0], q(c[1])),
            (vec![0, 1], q(-c[2].abs() - 1)),
            (vec![2, 0], qr(c[3], 2)),
        ],
    )
    .unwrap();
    let h = PowerSumPoly::new(2, [(vec![0, 0], q(c2[0])), (vec![1, 0], q(c2[1])), (vec![0, 1], qr(c2[2], 4))]).unwrap();
    let constraints = vec![Constraint { g, rel: Relation::Ge }, Constraint { g: h, rel: Relation::Ge }];
    SymmetricSystem::new(2, 2, constraints, BoundingBox::new(q(-2), q(2)).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn full_degree_matches_direct_oracle(
        c in (0i64..=6, -3i64..=3, 0i64..=2, -2i64..=2),
        c2 in (-2i64..=2, -2i64..=2, -2i64..=2),
        pts in proptest::collection::vec((-7i64..=7, -7i64..=7), 2..8),
    ) {
        let sys = full_degree_system(&[c.0, c.1, c.2, c.3], &[c2.0, c2.1, c2.2]);
        let feasible: Vec<Vec<Q>> = pts
            .into_iter()
            .map(|(u, v)| {
                let mut x = vec![qr(u, 4), qr(v, 4)];
                x.sort();
                x
            })
            .filter(|x| sys.contains(x).unwrap())
            .collect();
        prop_assume!(feasible.len() >= 2);
        let engine = Engine::new(sys.clone(), EngineConfig::default()).unwrap();
        let direct = GridOracle::new(OracleConfig::default())
            .analyze(&Region::face(&sys, &Composition::ones(2)))
            .unwrap();
        for y in &feasible[1..] {
            let e = engine.connectivity_symmetric_canonical(&feasible[0], y).unwrap().connected;
            prop_assert_eq!(e, direct.connected(&feasible[0], y).unwrap(), "{:?} {:?}", feasible[0], y);
        }
    }

    #[test]
    fn orbit_contains_its_points(k in 0usize..64, perm_seed in proptest::collection::vec(0usize..8, 8)) {
        let files = corpus();
        let p = &files[k % files.len()];
        let names: Vec<&String> = p.points.keys().collect();
        let x = &p.points[names[k % names.len()]];
        let mut y = x.clone();
        for (i, s) in perm_seed.iter().enumerate().take(y.len()) {
            let j = s % y.len();
            y.swap(i, j);
        }
        let e = Engine::new(p.system.clone(), EngineConfig::default()).unwrap();
        prop_assert!(e.check_orbit(x, &y).unwrap().connected);
        let (xs, same) = auto_canonicalize(x, x).unwrap();
        prop_assert!(e.connectivity_symmetric(&xs, &same).unwrap().connected);
    }
}
