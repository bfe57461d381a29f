use viforge::generate::{random_vi, rng};
use viforge::oracles::{oracle_imbalance, OracleBudget};
use viforge::solvers::imbalance::{imbalance_of, imbalance_vi};
use viforge::Graph;

#[test]
fn matches_oracle_on_random_graphs() {
    let budget = OracleBudget::default();
    let mut r = rng(2024);
    for i in 0..120 {
        let n = 1 + i % 8;
        let k = 1 + i % 4;
        let g = random_vi(k, n, 0.45, &mut r).unwrap();
        let (value, order) = imbalance_vi(&g);
        let (expected, _) = oracle_imbalance(&g, &budget).unwrap();
        assert_eq!(value, expected, "graph {:?}", g.edges());
        assert_eq!(imbalance_of(&g, &order).unwrap(), value);
    }
}

#[test]
fn reversal_and_relabeling_invariance() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
    let (value, order) = imbalance_vi(&g);
    let reversed: Vec<usize> = order.iter().rev().copied().collect();
    assert_eq!(imbalance_of(&g, &reversed).unwrap(), value);
    let relabeled = g.relabel(&[5, 3, 1, 0, 2, 4]).unwrap();
    assert_eq!(imbalance_vi(&relabeled).0, value);
}
