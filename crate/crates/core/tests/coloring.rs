use rand::Rng;
use viforge::generate::{random_vi, rng};
use viforge::oracles::verify::{verify_ecp, verify_eqcoloring, verify_precoloring};
use viforge::oracles::{oracle_ecp, oracle_eqcoloring, oracle_precoloring, OracleBudget};
use viforge::solvers::coloring::{equitable_coloring_vi, equitable_connected_partition_vi, precoloring_extension_vi};

#[test]
fn precoloring_matches_oracle() {
    let budget = OracleBudget::default();
    let mut r = rng(41);
    for i in 0..200 {
        let n = r.gen_range(1..=8);
        let g = random_vi(r.gen_range(1..=4), n, 0.5, &mut r).unwrap();
        let colors = r.gen_range(1..=5u32);
        let pc: Vec<Option<u32>> = (0..n)
            .map(|_| r.gen_bool(0.3).then(|| r.gen_range(1..=colors)))
            .collect();
        let got = precoloring_extension_vi(&g, &pc, colors).unwrap();
        let expected = oracle_precoloring(&g, &pc, colors, &budget).unwrap();
        assert_eq!(got.is_some(), expected.is_some(), "instance {i}");
        if let Some(c) = got {
            verify_precoloring(&g, &pc, colors, &c).unwrap();
        }
    }
}

#[test]
fn greedy_bound_always_extends() {
    let mut r = rng(42);
    for _ in 0..30 {
        let g = random_vi(3, 8, 0.6, &mut r).unwrap();
        let delta = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0) as u32;
        assert!(precoloring_extension_vi(&g, &vec![None; g.n()], delta + 1).unwrap().is_some());
    }
}

#[test]
fn equitable_matches_oracle() {
    let budget = OracleBudget::default();
    let mut r = rng(43);
    for i in 0..200 {
        let n = r.gen_range(1..=8);
        let g = random_vi(r.gen_range(1..=4), n, 0.5, &mut r).unwrap();
        let colors = r.gen_range(1..=n as u32 + 1);
        let got = equitable_coloring_vi(&g, colors).unwrap();
        let expected = oracle_eqcoloring(&g, colors, &budget).unwrap();
        assert_eq!(got.is_some(), expected.is_some(), "instance {i} r={colors} {:?}", g.edges());
        if let Some(c) = got {
            verify_eqcoloring(&g, colors, &c).unwrap();
        }
    }
}

#[test]
fn connected_partition_matches_oracle() {
    let budget = OracleBudget::default();
    let mut r = rng(44);
    for i in 0..200 {
        let n = r.gen_range(1..=8);
        let g = random_vi(r.gen_range(1..=4), n, 0.5, &mut r).unwrap();
        let parts = r.gen_range(1..=n);
        let got = equitable_connected_partition_vi(&g, parts).unwrap();
        let expected = oracle_ecp(&g, parts, &budget).unwrap();
        assert_eq!(got.is_some(), expected.is_some(), "instance {i} r={parts} {:?}", g.edges());
        if let Some(p) = got {
            verify_ecp(&g, parts, &p).unwrap();
        }
    }
}

#[test]
fn larger_connected_partitions() {
    // components hanging off a small separator force the separator-driven
    // branches with parts larger than any component
    let budget = OracleBudget::generous();
    let mut r = rng(45);
    for i in 0..40 {
        let n = r.gen_range(9..=13);
        let g = random_vi(4, n, 0.6, &mut r).unwrap();
        for parts in 1..=4 {
            let got = equitable_connected_partition_vi(&g, parts).unwrap();
            let expected = oracle_ecp(&g, parts, &budget).unwrap();
            assert_eq!(got.is_some(), expected.is_some(), "instance {i} r={parts} {:?}", g.edges());
            if let Some(p) = got {
                verify_ecp(&g, parts, &p).unwrap();
            }
        }
    }
}
