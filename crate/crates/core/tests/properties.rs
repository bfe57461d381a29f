use proptest::prelude::*;
use viforge::format::{parse, serialize, Instance};
use viforge::ilp::{feasible, optimize, Direction, IlpInstance, Relation};
use viforge::poly::binary_mmoo_vc2;
use viforge::solvers::imbalance::imbalance_vi;
use viforge::types::{classify, TypeMode};
use viforge::{vertex_cover_min, vertex_integrity, vi_k_set, Graph};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn permuted(g: &Graph, seed: u64) -> Graph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        perm.swap(i, (x % (i as u64 + 1)) as usize);
    }
    g.relabel(&perm).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_round_trip(g in graph_strategy(8), seed in any::<u64>(), weighted in any::<bool>(), colored in any::<bool>()) {
        let mut g = g;
        if weighted {
            let w = (0..g.m()).map(|i| 1 + (seed >> (i % 32)) % 5).collect();
            g = g.with_weights(w).unwrap();
        }
        if colored {
            let c = (0..g.n()).map(|v| ((seed >> v) % 3) as u32).collect();
            g = g.with_colors(c).unwrap();
        }
        let mut inst = Instance::from_graph(g);
        if seed % 2 == 0 {
            inst.precolor = (0..inst.graph.n()).map(|v| (v % 3 == 0).then_some(v as u32 % 2)).collect();
            inst.bound = Some(seed % 7);
        }
        let text = serialize(&inst);
        prop_assert_eq!(parse(&text).unwrap(), inst);
    }

    #[test]
    fn integrity_sets_exist_exactly_above_the_value(g in graph_strategy(8)) {
        let (k, set) = vertex_integrity(&g);
        prop_assert!(set.check(&g));
        prop_assert!(k <= vertex_cover_min(&g).len() + 1);
        for j in 1..=g.n() {
            let found = vi_k_set(&g, j).unwrap();
            prop_assert_eq!(found.is_some(), j >= k);
            if let Some(s) = found {
                prop_assert!(s.check(&g));
            }
        }
    }

    #[test]
    fn parameters_and_types_ignore_labels(g in graph_strategy(8), seed in any::<u64>()) {
        let h = permuted(&g, seed);
        prop_assert_eq!(vertex_integrity(&g).0, vertex_integrity(&h).0);
        prop_assert_eq!(vertex_cover_min(&g).len(), vertex_cover_min(&h).len());
        // type multiset relative to an empty separator is label-free
        let tg: Vec<usize> = classify(&g, &[], TypeMode::Plain).unwrap().into_values().collect();
        let th: Vec<usize> = classify(&h, &[], TypeMode::Plain).unwrap().into_values().collect();
        prop_assert_eq!(tg, th);
    }

    #[test]
    fn imbalance_ignores_labels(g in graph_strategy(6), seed in any::<u64>()) {
        let h = permuted(&g, seed);
        prop_assert_eq!(imbalance_vi(&g).0, imbalance_vi(&h).0);
    }

    #[test]
    fn orientation_feasibility_is_monotone(n in 2usize..8, mask in any::<u32>(), heavy in 2u64..9) {
        // every edge touches vertex 0 or 1, so the cover has size at most 2
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..2 {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    edges.push((u, v, if k % 3 == 0 { heavy } else { 1 }));
                }
                k += 1;
            }
        }
        let g = Graph::from_weighted_edges(n, &edges).unwrap();
        let answers: Vec<bool> = (0..=2 * heavy).map(|r| binary_mmoo_vc2(&g, r).unwrap().is_some()).collect();
        prop_assert!(answers.windows(2).all(|w| !w[0] || w[1]));
    }

    #[test]
    fn optimum_is_feasible_and_attained(coeffs in prop::collection::vec(-3i64..=3, 6), rhs in 0i64..12, obj in prop::collection::vec(-2i64..=2, 3)) {
        let mut ilp = IlpInstance::new();
        for _ in 0..3 {
            ilp.add_var(0, 4);
        }
        ilp.add_dense(&coeffs[..3], Relation::Le, rhs).unwrap();
        ilp.add_dense(&coeffs[3..], Relation::Ge, -rhs).unwrap();
        ilp.set_objective(obj.iter().enumerate().map(|(i, &c)| (i, c)).collect(), Direction::Max).unwrap();
        let feas = feasible(&ilp).unwrap();
        let best = optimize(&ilp).unwrap();
        prop_assert_eq!(feas.is_some(), best.is_some());
        if let Some((x, value)) = best {
            prop_assert!(ilp.is_satisfied(&x));
            prop_assert_eq!(ilp.objective_value(&x), value);
        }
        if let Some(x) = feas {
            prop_assert!(ilp.is_satisfied(&x));
        }
    }
}
