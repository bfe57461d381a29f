use std::collections::BTreeMap;

use super::{connected_by, NodeMeter, OracleBudget};
use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};

/// First connected vertex set (by size, then bitmask order) whose color
/// multiset equals `motif`.
pub fn oracle_motif(g: &Graph, motif: &BTreeMap<u32, usize>, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    budget.vertices(g.n())?;
    let colors = g
        .colors()
        .ok_or_else(|| Error::InvalidInput("graph has no vertex colors".into()))?;
    let motif: BTreeMap<u32, usize> = motif.iter().filter(|(_, &c)| c > 0).map(|(&x, &c)| (x, c)).collect();
    let size: usize = motif.values().sum();
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    let n = g.n();
    if size > n {
        return Ok(None);
    }
    // masks with exactly `size` bits, in increasing order
    let mut mask: u64 = (1 << size) - 1;
    while mask < 1 << n {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &v in &verts {
            *counts.entry(colors[v]).or_default() += 1;
        }
        if counts == motif && connected_by(&verts, |a, b| g.has_edge(a, b)) {
            return Ok(Some(verts));
        }
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
    Ok(None)
}

/// Orientation with every out-weight at most `r`, as one flag per edge of
/// `g.edges()` (`true` orients `(u, v)` from `u` to `v`). Backtracking over
/// edges by decreasing weight with forward checking.
pub fn oracle_mmoo(g: &Graph, r: u64, budget: &OracleBudget) -> Result<Option<Vec<bool>>> {
    budget.edges(g.m())?;
    let edges = g.edges();
    let weight = |i: usize| g.weights().map_or(1, |w| w[i]);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weight(i)), i));
    let mut search = MmooSearch {
        edges,
        weights: (0..edges.len()).map(weight).collect(),
        order,
        r,
        out: vec![0; g.n()],
        dir: vec![false; edges.len()],
        remaining: vec![0; g.n()],
        remaining_total: 0,
        meter: NodeMeter::new(budget),
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        search.remaining[u] += search.weights[i];
        search.remaining[v] += search.weights[i];
        search.remaining_total += search.weights[i];
    }
    if search.run(0)? {
        Ok(Some(search.dir))
    } else {
        Ok(None)
    }
}

struct MmooSearch<'a> {
    edges: &'a [Edge],
    weights: Vec<u64>,
    order: Vec<usize>,
    r: u64,
    out: Vec<u64>,
    dir: Vec<bool>,
    /// Weight of still-unoriented edges at each vertex.
    remaining: Vec<u64>,
    remaining_total: u64,
    meter: NodeMeter,
}

impl MmooSearch<'_> {
    /// Every unoriented edge must fit into the slack of one endpoint, and a
    /// vertex cannot absorb more than its own unoriented weight.
    fn absorbable(&self) -> bool {
        let cap: u64 = (0..self.out.len())
            .map(|v| (self.r - self.out[v]).min(self.remaining[v]))
            .sum();
        cap >= self.remaining_total
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        self.meter.tick()?;
        let Some(&e) = self.order.get(depth) else {
            return Ok(true);
        };
        let (u, v) = self.edges[e];
        let w = self.weights[e];
        self.remaining[u] -= w;
        self.remaining[v] -= w;
        self.remaining_total -= w;
        for (tail, flag) in [(u, true), (v, false)] {
            if self.out[tail] + w > self.r {
                continue;
            }
            self.out[tail] += w;
            self.dir[e] = flag;
            if self.absorbable() && self.run(depth + 1)? {
                return Ok(true);
            }
            self.out[tail] -= w;
        }
        self.remaining_total += w;
        self.remaining[u] += w;
        self.remaining[v] += w;
        Ok(false)
    }
}

fn check_terminal_sets(g: &Graph, sets: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for set in sets {
        if set.len() < 2 {
            return invalid("terminal sets need at least two vertices");
        }
        for &v in set {
            if v >= g.n() {
                return invalid(format!("terminal {v} out of range"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return invalid(format!("terminal {v} appears twice"));
            }
        }
    }
    Ok(())
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn steiner_enumerate(g: &Graph, sets: &[Vec<usize>], weight: &dyn Fn(usize) -> u64) -> Option<(u64, Vec<Edge>)> {
    let m = g.m();
    let mut best: Option<(u64, u64)> = None;
    for mask in 0u64..(1 << m) {
        let total: u64 = (0..m).filter(|&i| mask >> i & 1 == 1).map(weight).sum();
        if best.is_some_and(|(b, _)| total >= b) {
            continue;
        }
        let mut parent: Vec<usize> = (0..g.n()).collect();
        for i in 0..m {
            if mask >> i & 1 == 1 {
                let (u, v) = g.edges()[i];
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let ok = sets.iter().all(|set| {
            let root = find(&mut parent, set[0]);
            set.iter().all(|&t| find(&mut parent, t) == root)
        });
        if ok {
            best = Some((total, mask));
        }
    }
    best.map(|(w, mask)| {
        let edges = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
        (w, edges)
    })
}

/// Minimum-weight edge set connecting every terminal set internally, by
/// edge-subset enumeration. `None` when some set cannot be connected.
pub fn oracle_steiner_forest(
    g: &Graph,
    sets: &[Vec<usize>],
    budget: &OracleBudget,
) -> Result<Option<(u64, Vec<Edge>)>> {
    budget.edges(g.m())?;
    check_terminal_sets(g, sets)?;
    let weight = |i: usize| g.weights().map_or(1, |w| w[i]);
    Ok(steiner_enumerate(g, sets, &weight))
}

/// Unweighted variant: minimum number of edges.
pub fn oracle_usf(g: &Graph, sets: &[Vec<usize>], budget: &OracleBudget) -> Result<Option<(u64, Vec<Edge>)>> {
    budget.edges(g.m())?;
    check_terminal_sets(g, sets)?;
    Ok(steiner_enumerate(g, sets, &|_| 1))
}

/// Packing of `items` into `t` bins of size `Σ items / t`, as a bin index
/// per item; `None` if the sum is not divisible or no packing exists.
pub fn oracle_bin_packing(items: &[u64], t: usize, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    if t == 0 {
        return invalid("bin count must be positive");
    }
    let total: u64 = items.iter().sum();
    if !total.is_multiple_of(t as u64) {
        return Ok(None);
    }
    let cap = total / t as u64;
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(items[i]), i));
    let mut load = vec![0u64; t];
    let mut bin = vec![0usize; items.len()];
    let mut meter = NodeMeter::new(budget);
    if pack(items, &order, 0, cap, &mut load, &mut bin, &mut meter)? {
        Ok(Some(bin))
    } else {
        Ok(None)
    }
}

fn pack(
    items: &[u64],
    order: &[usize],
    depth: usize,
    cap: u64,
    load: &mut [u64],
    bin: &mut [usize],
    meter: &mut NodeMeter,
) -> Result<bool> {
    meter.tick()?;
    let Some(&i) = order.get(depth) else {
        return Ok(true);
    };
    for b in 0..load.len() {
        // bins with equal load are interchangeable
        if load[b] + items[i] > cap || load[..b].contains(&load[b]) {
            continue;
        }
        load[b] += items[i];
        bin[i] = b;
        if pack(items, order, depth + 1, cap, load, bin, meter)? {
            return Ok(true);
        }
        load[b] -= items[i];
    }
    Ok(false)
}

/// Subset of item indices summing to half the total; with `balanced` the
/// subset must also contain exactly half of the items.
pub fn oracle_partition(items: &[u64], balanced: bool, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let n = items.len();
    if n >= 40 || (1u64 << n) > budget.max_search_nodes {
        return Err(Error::BudgetExceeded(format!("{n} items exceed the subset budget")));
    }
    let total: u64 = items.iter().sum();
    if total % 2 == 1 || (balanced && n % 2 == 1) {
        return Ok(None);
    }
    for mask in 0u64..(1 << n) {
        if balanced && mask.count_ones() as usize != n / 2 {
            continue;
        }
        let sum: u64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).sum();
        if sum * 2 == total {
            return Ok(Some((0..n).filter(|&i| mask >> i & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// Perfect 3-dimensional matching: indices of `n` pairwise disjoint triples.
pub fn oracle_3dm(
    n: usize,
    triples: &[(usize, usize, usize)],
    budget: &OracleBudget,
) -> Result<Option<Vec<usize>>> {
    if triples.iter().any(|&(x, y, z)| x >= n || y >= n || z >= n) {
        return invalid("triple coordinate out of range");
    }
    let mut used_y = vec![false; n];
    let mut used_z = vec![false; n];
    let mut chosen = Vec::new();
    let mut meter = NodeMeter::new(budget);
    if match3(0, n, triples, &mut used_y, &mut used_z, &mut chosen, &mut meter)? {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn match3(
    x: usize,
    n: usize,
    triples: &[(usize, usize, usize)],
    used_y: &mut [bool],
    used_z: &mut [bool],
    chosen: &mut Vec<usize>,
    meter: &mut NodeMeter,
) -> Result<bool> {
    meter.tick()?;
    if x == n {
        return Ok(true);
    }
    for (i, &(a, y, z)) in triples.iter().enumerate() {
        if a != x || used_y[y] || used_z[z] {
            continue;
        }
        used_y[y] = true;
        used_z[z] = true;
        chosen.push(i);
        if match3(x + 1, n, triples, used_y, used_z, chosen, meter)? {
            return Ok(true);
        }
        chosen.pop();
        used_y[y] = false;
        used_z[z] = false;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motif_examples() {
        let b = OracleBudget::default();
        let g = Graph::path(3).with_colors(vec![1, 2, 1]).unwrap();
        let m = BTreeMap::from([(1, 1), (2, 1)]);
        assert_eq!(oracle_motif(&g, &m, &b).unwrap(), Some(vec![0, 1]));
        let m = BTreeMap::from([(1, 2)]);
        assert_eq!(oracle_motif(&g, &m, &b).unwrap(), None);
    }

    #[test]
    fn orientation_examples() {
        let b = OracleBudget::default();
        let k2 = Graph::from_weighted_edges(2, &[(0, 1, 5)]).unwrap();
        assert_eq!(oracle_mmoo(&k2, 4, &b).unwrap(), None);
        assert!(oracle_mmoo(&Graph::cycle(4), 1, &b).unwrap().is_some());
        assert!(oracle_mmoo(&Graph::path(3), 1, &b).unwrap().is_some());
        assert_eq!(oracle_mmoo(&Graph::complete(4), 1, &b).unwrap(), None);
    }

    #[test]
    fn steiner_examples() {
        let b = OracleBudget::default();
        let k3 = Graph::from_weighted_edges(3, &[(0, 1, 3), (0, 2, 1), (1, 2, 1)]).unwrap();
        assert_eq!(oracle_steiner_forest(&k3, &[vec![0, 1]], &b).unwrap().unwrap().0, 2);
        let p4 = Graph::path(4);
        assert_eq!(oracle_usf(&p4, &[vec![0, 1], vec![2, 3]], &b).unwrap().unwrap().0, 2);
        let split = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(oracle_usf(&split, &[vec![0, 2]], &b).unwrap(), None);
    }

    #[test]
    fn number_problems() {
        let b = OracleBudget::default();
        assert!(oracle_bin_packing(&[1; 6], 3, &b).unwrap().is_some());
        assert_eq!(oracle_bin_packing(&[1, 1, 2, 2], 4, &b).unwrap(), None);
        assert!(oracle_partition(&[1; 10], true, &b).unwrap().is_some());
        assert_eq!(oracle_partition(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 9], true, &b).unwrap(), None);
        assert_eq!(oracle_3dm(1, &[(0, 0, 0)], &b).unwrap(), Some(vec![0]));
        assert_eq!(oracle_3dm(1, &[], &b).unwrap(), None);
    }
}
