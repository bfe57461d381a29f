//! Seeded random instances with structural guarantees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::{Graph, GraphBuilder};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffled_labels(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn build(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> Graph {
    let mut b = GraphBuilder::new(n);
    for &(u, v) in edges {
        b.add_edge(perm[u], perm[v]).expect("generated edges are simple");
    }
    b.build().expect("generated graph is valid")
}

/// Graph with `vi <= k` by construction: a separator of size `s < k` (or
/// anything when `n <= k`) plus components of at most `k - s` vertices.
/// `density` controls optional edges.
pub fn random_vi(k: usize, n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if k == 0 && n > 0 {
        return invalid("a non-empty graph has vertex integrity at least 1");
    }
    if !(0.0..=1.0).contains(&density) {
        return invalid("density must lie in [0, 1]");
    }
    if n == 0 {
        return Ok(Graph::empty(0));
    }
    let s = if n <= k { rng.gen_range(0..=n.min(k)) } else { rng.gen_range(0..k) };
    let room = k - s;
    let mut edges = Vec::new();
    for u in 0..s {
        for v in u + 1..s {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let mut next = s;
    while next < n {
        let size = rng.gen_range(1..=room.max(1)).min(n - next);
        let comp: Vec<usize> = (next..next + size).collect();
        // random spanning tree keeps the component connected
        for i in 1..size {
            let j = rng.gen_range(0..i);
            edges.push((comp[j], comp[i]));
        }
        for i in 0..size {
            for j in i + 1..size {
                let e = (comp[i], comp[j]);
                if !edges.contains(&e) && rng.gen_bool(density) {
                    edges.push(e);
                }
            }
            for sv in 0..s {
                if rng.gen_bool(density) {
                    edges.push((sv, comp[i]));
                }
            }
        }
        next += size;
    }
    let perm = shuffled_labels(n, rng);
    Ok(build(n, &edges, &perm))
}

/// Graph with a vertex cover of size at most `k` by construction.
pub fn random_vc(k: usize, n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&density) {
        return invalid("density must lie in [0, 1]");
    }
    let c = k.min(n);
    let mut edges = Vec::new();
    for u in 0..c {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let perm = shuffled_labels(n, rng);
    Ok(build(n, &edges, &perm))
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Items for bin packing: `count` values in `1..=max_item`.
pub fn random_items(count: usize, max_item: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..count).map(|_| rng.gen_range(1..=max_item.max(1))).collect()
}

/// Random subset of `X × Y × Z` for a 3-dimensional matching instance.
pub fn random_triples(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if rng.gen_bool(density) {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}
