//! Hardness reductions as instance generators. Each constructor is a pure
//! function of its input and returns the target instance together with the
//! structural witnesses the hardness argument relies on, so tests can check
//! them independently.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::{Graph, GraphBuilder};

/// Orientation instance built from a packing problem.
#[derive(Debug, Clone, Serialize)]
pub struct MmooReduction {
    /// Weighted graph on `u = 0`, bins `s_1..s_t = 1..=t`, items after that.
    pub graph: Graph,
    /// Target maximum out-weight.
    pub r: u64,
    /// Vertex cover `{s_1, .., s_t, u}`.
    pub cover: Vec<usize>,
    /// Bin size `B` of the (possibly shifted) items.
    pub bin_size: u64,
    /// Item sizes actually used for the edge weights.
    pub items: Vec<u64>,
}

fn packing_target(items: &[u64], t: usize) -> Result<u64> {
    if t == 0 || items.is_empty() {
        return invalid("need at least one item and one bin");
    }
    if items.contains(&0) {
        return invalid("items must be positive");
    }
    let total: u64 = items.iter().sum();
    if !total.is_multiple_of(t as u64) {
        return invalid(format!("item total {total} is not divisible by {t} bins"));
    }
    Ok(total / t as u64)
}

/// Complete bipartite graph between `{u, s_1, .., s_t}` and the items plus
/// the edge `{u, s_1}`; item-to-bin edges weigh `a_i`, item-to-`u` edges
/// weigh `W - a_i`, `{u, s_1}` weighs `W`, with `W = (t - 1)B = r`.
fn mmoo_gadget(items: &[u64], t: usize, b: u64) -> MmooReduction {
    let w = (t as u64 - 1) * b;
    let n = items.len();
    let mut g = GraphBuilder::new(1 + t + n);
    for (i, &a) in items.iter().enumerate() {
        let v = 1 + t + i;
        g.add_weighted_edge(0, v, w - a).expect("valid edge");
        for s in 1..=t {
            g.add_weighted_edge(s, v, a).expect("valid edge");
        }
    }
    g.add_weighted_edge(0, 1, w).expect("valid edge");
    let mut cover: Vec<usize> = (1..=t).collect();
    cover.push(0);
    MmooReduction {
        graph: g.build().expect("gadget is a simple graph"),
        r: w,
        cover,
        bin_size: b,
        items: items.to_vec(),
    }
}

/// Unary bin packing with `t >= 3` bins to orientation with cover `t + 1`.
/// Requires `Σ a_i` divisible by `t` and every `a_i < B`.
pub fn reduce_bp_to_unary_mmoo(items: &[u64], t: usize) -> Result<MmooReduction> {
    if t < 3 {
        return invalid("the packing reduction needs at least three bins");
    }
    let b = packing_target(items, t)?;
    if let Some(&a) = items.iter().find(|&&a| a >= b) {
        return invalid(format!("item {a} is not smaller than the bin size {b}"));
    }
    Ok(mmoo_gadget(items, t, b))
}

/// Balanced partition of an even number (at least ten) of items to binary
/// orientation with cover 3. Items are shifted by `B = Σ a_i / 2`, which
/// makes every subset with half the shifted total contain exactly half
/// the items, and then fed to the two-bin gadget.
pub fn reduce_partition_to_binary_mmoo(items: &[u64]) -> Result<MmooReduction> {
    let n = items.len();
    if n < 10 || n % 2 == 1 {
        return invalid(format!("need an even number of at least 10 items, got {n}"));
    }
    let b = packing_target(items, 2)?;
    let shifted: Vec<u64> = items.iter().map(|&a| a + b).collect();
    let b_shifted = (n as u64 / 2 + 1) * b;
    Ok(mmoo_gadget(&shifted, 2, b_shifted))
}

/// Tree and width target built from a bin packing instance.
#[derive(Debug, Clone, Serialize)]
pub struct BandwidthReduction {
    pub tree: Graph,
    /// Target width `w = 6tnB + 2n + 1`.
    pub width: usize,
    /// Spine `z_0, x_1, y_1, z_1, .., x_t, y_t, z_t`.
    pub spine: Vec<usize>,
    /// Number of leaves attached to each `z_j`.
    pub z_leaves: Vec<usize>,
    /// Star centers `v_1..v_n`.
    pub centers: Vec<usize>,
    /// Number of leaves of each star.
    pub star_leaves: Vec<usize>,
    /// Inner vertices on each path from `x_1` to a star center.
    pub path_inner: usize,
    /// Upper bound on the treedepth of `tree`: `2 + ⌈log2(6t - 2)⌉`.
    pub treedepth_bound: usize,
}

/// Unary bin packing with `t >= 2` bins to bandwidth on trees.
///
/// A spine of length `3t` carries `12tnB` leaves on every inner `z_j` and
/// `12tnB + 4n + 1` on both ends; item `i` becomes a star with
/// `6tn·a_i - 1` leaves joined to `x_1` by a path of `6t - 4` inner
/// vertices.
pub fn reduce_bp_to_bandwidth(items: &[u64], t: usize) -> Result<BandwidthReduction> {
    if t < 2 {
        return invalid("the bandwidth reduction needs at least two bins");
    }
    let b = packing_target(items, t)? as usize;
    let n = items.len();
    let base = 12 * t * n * b;
    let width = 6 * t * n * b + 2 * n + 1;

    let mut edges = Vec::new();
    let mut next = 0;
    let mut fresh = |count: usize| {
        let start = next;
        next += count;
        start..next
    };
    let spine: Vec<usize> = fresh(3 * t + 1).collect();
    edges.extend(spine.windows(2).map(|w| (w[0], w[1])));
    let z_leaves: Vec<usize> = (0..=t).map(|j| if j == 0 || j == t { base + 4 * n + 1 } else { base }).collect();
    for (j, &count) in z_leaves.iter().enumerate() {
        let z = spine[3 * j];
        edges.extend(fresh(count).map(|l| (z, l)));
    }
    let x1 = spine[1];
    let path_inner = 6 * t - 4;
    let mut centers = Vec::new();
    let mut star_leaves = Vec::new();
    for &a in items {
        let center = fresh(1).start;
        let leaves = 6 * t * n * a as usize - 1;
        edges.extend(fresh(leaves).map(|l| (center, l)));
        let path: Vec<usize> = fresh(path_inner).collect();
        let mut prev = x1;
        for &p in &path {
            edges.push((prev, p));
            prev = p;
        }
        edges.push((prev, center));
        centers.push(center);
        star_leaves.push(leaves);
    }
    let tree = Graph::from_edges(next, &edges)?;
    let treedepth_bound = 2 + (usize::BITS - (6 * t - 3).leading_zeros()) as usize;
    Ok(BandwidthReduction {
        tree,
        width,
        spine,
        z_leaves,
        centers,
        star_leaves,
        path_inner,
        treedepth_bound,
    })
}

/// Colorful motif instance built from a 3-dimensional matching instance.
#[derive(Debug, Clone, Serialize)]
pub struct MotifReduction {
    /// Tree rooted at vertex 0 with one 3-vertex path per triple.
    pub graph: Graph,
    /// Every color exactly once.
    pub motif: BTreeMap<u32, usize>,
    pub root: usize,
    /// `{root}` is a vi(4)-set of `graph`.
    pub integrity_bound: usize,
}

/// Perfect 3-dimensional matching to Colorful Graph Motif on trees of
/// vertex integrity 4. The root has color 0; `x_i`, `y_j`, `z_k` get colors
/// `1 + i`, `1 + n + j`, `1 + 2n + k`. Triple `(i, j, k)` becomes the path
/// `root - x_i - y_j - z_k` on fresh vertices.
pub fn reduce_3dm_to_colorful_motif(n: usize, triples: &[(usize, usize, usize)]) -> Result<MotifReduction> {
    if let Some(t) = triples.iter().find(|&&(x, y, z)| x >= n || y >= n || z >= n) {
        return invalid(format!("triple {t:?} out of range for n={n}"));
    }
    let mut edges = Vec::new();
    let mut colors = vec![0u32];
    for &(x, y, z) in triples {
        let base = colors.len();
        colors.extend([1 + x, 1 + n + y, 1 + 2 * n + z].map(|c| c as u32));
        edges.extend([(0, base), (base, base + 1), (base + 1, base + 2)]);
    }
    let graph = Graph::from_edges(colors.len(), &edges)?.with_colors(colors)?;
    let motif = (0..=3 * n as u32).map(|c| (c, 1)).collect();
    Ok(MotifReduction {
        graph,
        motif,
        root: 0,
        integrity_bound: 4,
    })
}
