use rand::Rng;
use viforge::generate::{random_items, rng};
use viforge::integrity::is_vertex_cover;
use viforge::oracles::verify::{verify_3dm, verify_mmoo, verify_motif};
use viforge::oracles::{oracle_3dm, oracle_bin_packing, oracle_mmoo, oracle_motif, oracle_partition, OracleBudget};
use viforge::poly::graph_motif_vi3;
use viforge::reductions::{
    reduce_3dm_to_colorful_motif, reduce_bp_to_bandwidth, reduce_bp_to_unary_mmoo, reduce_partition_to_binary_mmoo,
};
use viforge::{vertex_integrity, Error, ViSet, VertexSubset};

#[test]
fn bin_packing_to_unary_orientation() {
    let budget = OracleBudget::generous();
    let mut r = rng(81);
    let (mut yes, mut no) = (0, 0);
    let mut tested = 0;
    while tested < 120 {
        let t = r.gen_range(3..=4);
        let n = r.gen_range(t..=8);
        let items = random_items(n, 4, &mut r);
        let Ok(red) = reduce_bp_to_unary_mmoo(&items, t) else {
            continue;
        };
        tested += 1;
        assert_eq!(red.cover.len(), t + 1);
        assert!(is_vertex_cover(&red.graph, &red.cover));
        let source = oracle_bin_packing(&items, t, &budget).unwrap();
        let target = oracle_mmoo(&red.graph, red.r, &budget).unwrap();
        assert_eq!(source.is_some(), target.is_some(), "{items:?} t={t}");
        if let Some(o) = target {
            verify_mmoo(&red.graph, red.r, &o).unwrap();
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 10 && no > 10, "yes={yes} no={no}");
}

#[test]
fn bin_packing_examples() {
    let red = reduce_bp_to_unary_mmoo(&[1; 6], 3).unwrap();
    assert_eq!((red.bin_size, red.r), (2, 4));
    assert!(oracle_mmoo(&red.graph, red.r, &OracleBudget::generous()).unwrap().is_some());
    assert!(matches!(reduce_bp_to_unary_mmoo(&[1, 1, 1], 3), Err(Error::InvalidInput(_))));
    assert!(matches!(reduce_bp_to_unary_mmoo(&[1, 1, 2, 2], 3), Err(Error::InvalidInput(_))));
    assert!(reduce_bp_to_unary_mmoo(&[1; 4], 2).is_err());
}

#[test]
fn partition_to_binary_orientation() {
    let budget = OracleBudget::generous();
    let mut r = rng(82);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..120 {
        let n = if r.gen_bool(0.5) { 10 } else { 12 };
        let mut items = random_items(n, r.gen_range(3..=400), &mut r);
        if items.iter().sum::<u64>() % 2 == 1 {
            items[0] += 1;
        }
        let red = reduce_partition_to_binary_mmoo(&items).unwrap();
        assert_eq!(red.cover.len(), 3);
        assert!(is_vertex_cover(&red.graph, &red.cover));
        let half: u64 = items.iter().sum::<u64>() / 2;
        assert_eq!(red.r, (n as u64 / 2 + 1) * half);
        assert!(red.items.iter().all(|&a| 2 * a < red.r));
        let source = oracle_partition(&items, true, &budget).unwrap();
        let target = oracle_mmoo(&red.graph, red.r, &budget).unwrap();
        assert_eq!(source.is_some(), target.is_some(), "{items:?}");
        if target.is_some() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 10 && no > 10, "yes={yes} no={no}");
}

#[test]
fn partition_examples() {
    let budget = OracleBudget::generous();
    let red = reduce_partition_to_binary_mmoo(&[1; 10]).unwrap();
    assert_eq!((red.bin_size, red.items[0], red.r), (30, 6, 30));
    assert!(oracle_mmoo(&red.graph, red.r, &budget).unwrap().is_some());

    let items = [1, 1, 1, 1, 1, 1, 1, 1, 1, 9];
    assert!(oracle_partition(&items, true, &budget).unwrap().is_none());
    let red = reduce_partition_to_binary_mmoo(&items).unwrap();
    assert!(oracle_mmoo(&red.graph, red.r, &budget).unwrap().is_none());
    assert!(reduce_partition_to_binary_mmoo(&[1; 4]).is_err());
    assert!(reduce_partition_to_binary_mmoo(&[1; 11]).is_err());
}

fn all_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push((x, y, z));
            }
        }
    }
    out
}

#[test]
fn matching_to_colorful_motif() {
    let budget = OracleBudget {
        max_vertices: 25,
        ..OracleBudget::generous()
    };
    let mut refused = 0;
    for n in 1..=2 {
        let universe = all_triples(n);
        for mask in 0u32..(1 << universe.len()) {
            let triples: Vec<_> = (0..universe.len()).filter(|&i| mask >> i & 1 == 1).map(|i| universe[i]).collect();
            let red = reduce_3dm_to_colorful_motif(n, &triples).unwrap();
            let g = &red.graph;
            assert_eq!(g.m() + 1, g.n());
            let witness = ViSet { separator: VertexSubset::new(vec![red.root]), k: red.integrity_bound };
            assert!(witness.check(g));

            let source = oracle_3dm(n, &triples, &budget).unwrap();
            let target = oracle_motif(g, &red.motif, &budget).unwrap();
            assert_eq!(source.is_some(), target.is_some(), "n={n} {triples:?}");
            if let Some(chosen) = &source {
                verify_3dm(n, &triples, chosen).unwrap();
            }
            if let Some(set) = &target {
                verify_motif(g, &red.motif, set).unwrap();
            }
            match graph_motif_vi3(g, &red.motif) {
                Err(Error::Precondition(_)) => {
                    assert_eq!(vertex_integrity(g).0, 4);
                    refused += 1;
                }
                Ok(fast) => assert_eq!(fast.is_some(), target.is_some()),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    assert!(refused > 100);
}

#[test]
fn matching_examples() {
    let red = reduce_3dm_to_colorful_motif(1, &[(0, 0, 0)]).unwrap();
    assert_eq!((red.graph.n(), red.motif.values().sum::<usize>()), (4, 4));
    let red = reduce_3dm_to_colorful_motif(1, &[]).unwrap();
    assert_eq!(red.graph.n(), 1);
    assert_eq!(oracle_motif(&red.graph, &red.motif, &OracleBudget::default()).unwrap(), None);
    assert!(reduce_3dm_to_colorful_motif(1, &[(0, 1, 0)]).is_err());
}

#[test]
fn bandwidth_tree_identities() {
    let mut checked = 0;
    for t in 2..=3usize {
        for n in 1..=3usize {
            for code in 0..(1 << n) {
                let items: Vec<u64> = (0..n).map(|i| 1 + (code >> i & 1) as u64).collect();
                let total: u64 = items.iter().sum();
                if !total.is_multiple_of(t as u64) {
                    assert!(reduce_bp_to_bandwidth(&items, t).is_err());
                    continue;
                }
                let b = (total / t as u64) as usize;
                let red = reduce_bp_to_bandwidth(&items, t).unwrap();
                let tree = &red.tree;
                let w = red.width;
                assert_eq!(w, 6 * t * n * b + 2 * n + 1);
                assert_eq!(tree.n(), (3 * t + 2) * w + 1);
                assert_eq!(tree.m() + 1, tree.n());
                assert_eq!(tree.components().len(), 1);
                let z0 = red.spine[0];
                assert_eq!(tree.degree(z0), 2 * w);
                assert_eq!(tree.degree(red.spine[3 * t]), 2 * w);
                for j in 0..=t {
                    let z = red.spine[3 * j];
                    let leaves = tree.neighbors(z).iter().filter(|&&l| tree.degree(l) == 1).count();
                    let expected = if j == 0 || j == t { 12 * t * n * b + 4 * n + 1 } else { 12 * t * n * b };
                    assert_eq!(leaves, expected);
                }
                for (i, &c) in red.centers.iter().enumerate() {
                    let leaves = tree.neighbors(c).iter().filter(|&&l| tree.degree(l) == 1).count();
                    assert_eq!(leaves, 6 * t * n * items[i] as usize - 1);
                    assert_eq!(tree.degree(c), leaves + 1);
                }
                assert_eq!(tree.degree(red.spine[1]), 2 + n);
                assert_eq!(red.path_inner, 6 * t - 4);
                assert!(red.treedepth_bound as f64 <= (t as f64).log2() + 6.0);
                checked += 1;
            }
        }
    }
    assert!(checked >= 8);
}
