//! `gen`, `reduce` and `params`.

use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use viforge::format::Instance;
use viforge::generate::{random_items, random_triples, random_vc, random_vi, rng};
use viforge::reductions::{
    reduce_3dm_to_colorful_motif, reduce_bp_to_bandwidth, reduce_bp_to_unary_mmoo, reduce_partition_to_binary_mmoo,
};
use viforge::types::{classify, TypeMode};
use viforge::{vertex_cover_min, vertex_integrity, Graph};

use crate::Failure;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    /// Graph with vertex integrity at most `k`.
    RandomVi,
    /// Graph with a vertex cover of size at most `k`.
    RandomVc,
    /// Bin packing source with `n` items and `bins` bins.
    BinPacking,
    /// Balanced partition source with `n` items (n even).
    Partition,
    /// 3-dimensional matching source over `n` coordinates.
    #[value(name = "3dm")]
    Matching,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Parameter bound for random-vi and random-vc.
    #[arg(long)]
    pub k: Option<usize>,
    /// Vertices, items or coordinates.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge or triple probability.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Attach edge weights in 1..=W.
    #[arg(long)]
    pub max_weight: Option<u64>,
    /// Attach vertex capacities in 1..=C, clamped to max(degree, 1).
    #[arg(long)]
    pub max_capacity: Option<u32>,
    /// Attach vertex colors in 0..C.
    #[arg(long)]
    pub colors: Option<u32>,
    /// Bin count for bin packing sources.
    #[arg(long, default_value_t = 3)]
    pub bins: usize,
    /// Largest item size.
    #[arg(long, default_value_t = 4)]
    pub max_item: u64,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn generate(a: &GenArgs) -> Result<Instance, Failure> {
    use rand::Rng;
    let mut r = rng(a.seed);
    let graph_kind = matches!(a.kind, GenKind::RandomVi | GenKind::RandomVc);
    if !graph_kind && (a.max_weight.is_some() || a.max_capacity.is_some() || a.colors.is_some()) {
        return Err(usage("graph attributes only apply to random-vi and random-vc"));
    }
    let mut inst = Instance::from_graph(Graph::empty(0));
    match a.kind {
        GenKind::RandomVi | GenKind::RandomVc => {
            let k = a.k.ok_or_else(|| usage("--k is required"))?;
            let mut g = if matches!(a.kind, GenKind::RandomVi) {
                random_vi(k, a.n, a.density, &mut r)?
            } else {
                random_vc(k, a.n, a.density, &mut r)?
            };
            if let Some(w) = a.max_weight {
                let weights = (0..g.m()).map(|_| r.gen_range(1..=w.max(1))).collect();
                g = g.with_weights(weights)?;
            }
            if let Some(c) = a.max_capacity {
                let caps = (0..g.n())
                    .map(|v| r.gen_range(1..=c.max(1)).min(g.degree(v).max(1) as u32))
                    .collect();
                g = g.with_capacities(caps)?;
            }
            if let Some(c) = a.colors {
                let colors = (0..g.n()).map(|_| r.gen_range(0..c.max(1))).collect();
                g = g.with_colors(colors)?;
            }
            inst.graph = g;
        }
        GenKind::BinPacking => {
            if a.bins == 0 || a.n == 0 {
                return Err(usage("need at least one item and one bin"));
            }
            let mut items = random_items(a.n, a.max_item, &mut r);
            let t = a.bins as u64;
            *items.last_mut().expect("n > 0") += (t - items.iter().sum::<u64>() % t) % t;
            inst.items = items;
            inst.bins = Some(a.bins);
        }
        GenKind::Partition => {
            if a.n == 0 || a.n % 2 == 1 {
                return Err(usage("partition sources need an even, positive item count"));
            }
            let mut items = random_items(a.n, a.max_item, &mut r);
            items[0] += items.iter().sum::<u64>() % 2;
            inst.items = items;
        }
        GenKind::Matching => {
            if !(0.0..=1.0).contains(&a.density) {
                return Err(usage("density must lie in [0, 1]"));
            }
            inst.triples = random_triples(a.n, a.density, &mut r);
            inst.dim = Some(a.n);
        }
    }
    Ok(inst)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Reduction {
    /// Bin packing to unary orientation.
    BpMmoo,
    /// Balanced partition to binary orientation.
    PartitionMmoo,
    /// Bin packing to tree bandwidth.
    BpBandwidth,
    /// 3-dimensional matching to graph motif.
    #[value(name = "3dm-motif")]
    MatchingMotif,
}

/// Target instance plus JSON metadata describing its structure.
pub fn reduce(kind: Reduction, source: &Instance) -> Result<(Instance, Value), Failure> {
    let bins = || source.bins.ok_or_else(|| usage("source lacks a `bins` line"));
    Ok(match kind {
        Reduction::BpMmoo | Reduction::PartitionMmoo => {
            let red = if matches!(kind, Reduction::BpMmoo) {
                reduce_bp_to_unary_mmoo(&source.items, bins()?)?
            } else {
                reduce_partition_to_binary_mmoo(&source.items)?
            };
            let mut inst = Instance::from_graph(red.graph);
            inst.bound = Some(red.r);
            let meta = json!({ "r": red.r, "cover": red.cover, "bin_size": red.bin_size, "items": red.items });
            (inst, meta)
        }
        Reduction::BpBandwidth => {
            let red = reduce_bp_to_bandwidth(&source.items, bins()?)?;
            let meta = json!({
                "width": red.width,
                "spine": red.spine,
                "z_leaves": red.z_leaves,
                "centers": red.centers,
                "star_leaves": red.star_leaves,
                "path_inner": red.path_inner,
                "treedepth_bound": red.treedepth_bound,
            });
            let mut inst = Instance::from_graph(red.tree);
            inst.bound = Some(red.width as u64);
            (inst, meta)
        }
        Reduction::MatchingMotif => {
            let dim = source.dim.ok_or_else(|| usage("source lacks a `dim` line"))?;
            let red = reduce_3dm_to_colorful_motif(dim, &source.triples)?;
            let meta = json!({ "root": red.root, "integrity_bound": red.integrity_bound });
            let mut inst = Instance::from_graph(red.graph);
            inst.motif = red.motif;
            (inst, meta)
        }
    })
}

/// Structural report: exact vertex integrity and vertex cover, and the
/// component types relative to the integrity separator.
pub fn params(g: &Graph) -> Result<Value, Failure> {
    let (vi, set) = vertex_integrity(g);
    let cover = vertex_cover_min(g);
    let mode = if g.colors().is_some() {
        TypeMode::Color
    } else if g.capacities().is_some() {
        TypeMode::Capacity
    } else {
        TypeMode::Plain
    };
    let types: Vec<Value> = classify(g, &set.separator, mode)?
        .into_iter()
        .map(|(t, count)| json!({ "type": t.hex(), "size": t.size, "count": count }))
        .collect();
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "vi": vi,
        "separator": set.separator,
        "vc": cover.len(),
        "cover": cover,
        "components_by_type": types,
    }))
}
