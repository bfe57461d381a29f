use rand::Rng;
use viforge::generate::{random_vi, rng};
use viforge::oracles::verify::{verify_mcis, verify_mcs};
use viforge::oracles::{oracle_mcis, oracle_mcs, OracleBudget};
use viforge::solvers::common_subgraph::{mcis_vi, mcs_vi};

#[test]
fn agrees_with_exhaustive_search() {
    let budget = OracleBudget::default();
    let mut r = rng(11);
    for i in 0..80 {
        let n1 = r.gen_range(1..=7);
        let n2 = r.gen_range(1..=7);
        let k = r.gen_range(1..=4);
        let g1 = random_vi(k, n1, 0.4, &mut r).unwrap();
        let g2 = random_vi(k, n2, 0.4, &mut r).unwrap();
        let (value, mapping) = mcs_vi(&g1, &g2);
        let (expected, _) = oracle_mcs(&g1, &g2, &budget).unwrap();
        assert_eq!(value, expected, "mcs instance {i}");
        verify_mcs(&g1, &g2, &mapping, value).unwrap();
        let (value, mapping) = mcis_vi(&g1, &g2);
        let (expected, _) = oracle_mcis(&g1, &g2, &budget).unwrap();
        assert_eq!(value, expected, "mcis instance {i}");
        verify_mcis(&g1, &g2, &mapping, value).unwrap();
    }
}

#[test]
fn symmetric_in_argument_order() {
    let mut r = rng(5);
    for _ in 0..20 {
        let g1 = random_vi(3, 6, 0.5, &mut r).unwrap();
        let g2 = random_vi(3, 6, 0.5, &mut r).unwrap();
        assert_eq!(mcs_vi(&g1, &g2).0, mcs_vi(&g2, &g1).0);
        assert_eq!(mcis_vi(&g1, &g2).0, mcis_vi(&g2, &g1).0);
    }
}
