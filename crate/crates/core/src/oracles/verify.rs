//! Certificate checkers. Each returns `Ok(())` when the certificate meets
//! the problem's definition and `Err(diagnostic)` otherwise.

use std::collections::BTreeMap;

use super::connected_by;
use crate::graph::{Edge, Graph};

pub type Verdict = std::result::Result<(), String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn permutation_positions(n: usize, order: &[usize]) -> std::result::Result<Vec<usize>, String> {
    if order.len() != n {
        return fail(format!("ordering has {} entries, expected {n}", order.len()));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return fail(format!("ordering entry {v} is out of range or repeated"));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// `separator` leaves only components with `|S| + |C| <= k`.
pub fn verify_vi_set(g: &Graph, separator: &[usize], k: usize) -> Verdict {
    let mut removed = vec![false; g.n()];
    for &v in separator {
        if v >= g.n() || removed[v] {
            return fail(format!("separator vertex {v} out of range or repeated"));
        }
        removed[v] = true;
    }
    let mut seen = removed.clone();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if separator.len() + size > k {
            return fail(format!("component of size {size} exceeds bound {k}"));
        }
    }
    Ok(())
}

/// Total imbalance of `order` equals `value`.
pub fn verify_imbalance(g: &Graph, order: &[usize], value: u64) -> Verdict {
    let pos = permutation_positions(g.n(), order)?;
    let total: u64 = (0..g.n())
        .map(|v| {
            let left = g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count() as i64;
            let right = g.degree(v) as i64 - left;
            (left - right).unsigned_abs()
        })
        .sum();
    if total != value {
        return fail(format!("ordering has imbalance {total}, claimed {value}"));
    }
    Ok(())
}

/// Maximum stretch of `order` equals `value`.
pub fn verify_bandwidth(g: &Graph, order: &[usize], value: usize) -> Verdict {
    let pos = permutation_positions(g.n(), order)?;
    let width = g.edges().iter().map(|&(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0);
    if width != value {
        return fail(format!("ordering has bandwidth {width}, claimed {value}"));
    }
    Ok(())
}

fn check_injection(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)]) -> std::result::Result<Vec<Option<usize>>, String> {
    let mut image = vec![None; g1.n()];
    let mut used = vec![false; g2.n()];
    for &(u, v) in mapping {
        if u >= g1.n() || v >= g2.n() {
            return fail(format!("pair ({u},{v}) out of range"));
        }
        if image[u].is_some() || used[v] {
            return fail(format!("pair ({u},{v}) breaks injectivity"));
        }
        image[u] = Some(v);
        used[v] = true;
    }
    Ok(image)
}

/// The mapping is a partial injection preserving exactly `value` edges of
/// `g1`.
pub fn verify_mcs(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)], value: usize) -> Verdict {
    let image = check_injection(g1, g2, mapping)?;
    let kept = g1
        .edges()
        .iter()
        .filter(|&&(u, v)| match (image[u], image[v]) {
            (Some(a), Some(b)) => g2.has_edge(a, b),
            _ => false,
        })
        .count();
    if kept != value {
        return fail(format!("mapping preserves {kept} edges, claimed {value}"));
    }
    Ok(())
}

/// The mapping is an induced-subgraph isomorphism on `value` vertices.
pub fn verify_mcis(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)], value: usize) -> Verdict {
    check_injection(g1, g2, mapping)?;
    for &(a, x) in mapping {
        for &(b, y) in mapping {
            if a < b && g1.has_edge(a, b) != g2.has_edge(x, y) {
                return fail(format!("adjacency of {a},{b} is not preserved"));
            }
        }
    }
    if mapping.len() != value {
        return fail(format!("mapping has {} vertices, claimed {value}", mapping.len()));
    }
    Ok(())
}

/// Every edge is assigned to an endpoint in the cover and no vertex takes
/// more edges than its capacity. `assignment` is aligned with `g.edges()`.
pub fn verify_cvc(g: &Graph, cover: &[usize], assignment: &[usize]) -> Verdict {
    let caps = g.capacities().ok_or("graph has no capacities")?;
    let mut inside = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() || inside[v] {
            return fail(format!("cover vertex {v} out of range or repeated"));
        }
        inside[v] = true;
    }
    if assignment.len() != g.m() {
        return fail("assignment length differs from edge count");
    }
    let mut load = vec![0u32; g.n()];
    for (&(u, v), &x) in g.edges().iter().zip(assignment) {
        if x != u && x != v {
            return fail(format!("edge {{{u},{v}}} assigned to non-endpoint {x}"));
        }
        if !inside[x] {
            return fail(format!("edge {{{u},{v}}} assigned outside the cover"));
        }
        load[x] += 1;
    }
    if let Some(v) = (0..g.n()).find(|&v| load[v] > caps[v]) {
        return fail(format!("vertex {v} covers {} edges, capacity {}", load[v], caps[v]));
    }
    Ok(())
}

/// Every vertex outside `dset` has a dominator in `dset ∩ N(v)` and no
/// dominator exceeds its capacity. `dominator[v]` is ignored for members.
pub fn verify_cds(g: &Graph, dset: &[usize], dominator: &[usize]) -> Verdict {
    let caps = g.capacities().ok_or("graph has no capacities")?;
    let mut inside = vec![false; g.n()];
    for &v in dset {
        if v >= g.n() || inside[v] {
            return fail(format!("vertex {v} out of range or repeated"));
        }
        inside[v] = true;
    }
    if dominator.len() != g.n() {
        return fail("dominator list length differs from vertex count");
    }
    let mut load = vec![0u32; g.n()];
    for v in (0..g.n()).filter(|&v| !inside[v]) {
        let d = dominator[v];
        if d >= g.n() || !inside[d] || !g.has_edge(v, d) {
            return fail(format!("vertex {v} is not dominated by a neighbor in the set"));
        }
        load[d] += 1;
    }
    if let Some(v) = (0..g.n()).find(|&v| load[v] > caps[v]) {
        return fail(format!("vertex {v} dominates {} vertices, capacity {}", load[v], caps[v]));
    }
    Ok(())
}

fn check_proper(g: &Graph, coloring: &[u32], r: u32) -> Verdict {
    if coloring.len() != g.n() {
        return fail("coloring length differs from vertex count");
    }
    if let Some(v) = (0..g.n()).find(|&v| coloring[v] == 0 || coloring[v] > r) {
        return fail(format!("vertex {v} has color {} outside 1..={r}", coloring[v]));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| coloring[u] == coloring[v]) {
        return fail(format!("edge {{{u},{v}}} is monochromatic"));
    }
    Ok(())
}

/// Proper `r`-coloring agreeing with every precolored vertex.
pub fn verify_precoloring(g: &Graph, precolor: &[Option<u32>], r: u32, coloring: &[u32]) -> Verdict {
    check_proper(g, coloring, r)?;
    for (v, p) in precolor.iter().enumerate() {
        if let Some(c) = p {
            if coloring.get(v) != Some(c) {
                return fail(format!("vertex {v} must keep color {c}"));
            }
        }
    }
    Ok(())
}

/// Proper `r`-coloring with class sizes in `{⌊n/r⌋, ⌈n/r⌉}`.
pub fn verify_eqcoloring(g: &Graph, r: u32, coloring: &[u32]) -> Verdict {
    check_proper(g, coloring, r)?;
    let n = g.n();
    let (lo, hi) = (n / r as usize, n.div_ceil(r as usize));
    for c in 1..=r {
        let k = coloring.iter().filter(|&&x| x == c).count();
        if k < lo || k > hi {
            return fail(format!("color {c} has {k} vertices, allowed {lo}..={hi}"));
        }
    }
    Ok(())
}

/// `r` disjoint connected parts covering `V` with sizes in
/// `{⌊n/r⌋, ⌈n/r⌉}`.
pub fn verify_ecp(g: &Graph, r: usize, parts: &[Vec<usize>]) -> Verdict {
    let n = g.n();
    if parts.len() != r {
        return fail(format!("{} parts, expected {r}", parts.len()));
    }
    let (lo, hi) = (n / r.max(1), n.div_ceil(r.max(1)));
    let mut seen = vec![false; n];
    for part in parts {
        if part.len() < lo || part.len() > hi {
            return fail(format!("part of size {} outside {lo}..={hi}", part.len()));
        }
        for &v in part {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return fail(format!("vertex {v} out of range or in two parts"));
            }
        }
        if !connected_by(part, |a, b| g.has_edge(a, b)) {
            return fail(format!("part {part:?} is disconnected"));
        }
    }
    if seen.iter().any(|&s| !s) {
        return fail("parts do not cover every vertex");
    }
    Ok(())
}

/// Connected vertex set whose color multiset equals `motif`.
pub fn verify_motif(g: &Graph, motif: &BTreeMap<u32, usize>, set: &[usize]) -> Verdict {
    let colors = g.colors().ok_or("graph has no colors")?;
    let mut seen = vec![false; g.n()];
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in set {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return fail(format!("vertex {v} out of range or repeated"));
        }
        *counts.entry(colors[v]).or_default() += 1;
    }
    let wanted: BTreeMap<u32, usize> = motif.iter().filter(|(_, &c)| c > 0).map(|(&k, &c)| (k, c)).collect();
    if counts != wanted {
        return fail("color multiset differs from the motif");
    }
    if !connected_by(set, |a, b| g.has_edge(a, b)) {
        return fail("vertex set is disconnected");
    }
    Ok(())
}

/// Orientation (one flag per edge, `true` = from the smaller endpoint)
/// with every out-weight at most `r`.
pub fn verify_mmoo(g: &Graph, r: u64, orientation: &[bool]) -> Verdict {
    if orientation.len() != g.m() {
        return fail("orientation length differs from edge count");
    }
    let mut out = vec![0u64; g.n()];
    for (i, (&(u, v), &fwd)) in g.edges().iter().zip(orientation).enumerate() {
        let w = g.weights().map_or(1, |ws| ws[i]);
        out[if fwd { u } else { v }] += w;
    }
    if let Some(v) = (0..g.n()).find(|&v| out[v] > r) {
        return fail(format!("vertex {v} has out-weight {} > {r}", out[v]));
    }
    Ok(())
}

/// Edge set of `g` with total weight `weight` in which every terminal set
/// lies inside one connected component.
pub fn verify_steiner_forest(g: &Graph, sets: &[Vec<usize>], edges: &[Edge], weight: u64) -> Verdict {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut total = 0;
    let mut used = std::collections::HashSet::new();
    for &(a, b) in edges {
        let Some(w) = g.weight(a, b) else {
            return fail(format!("{{{a},{b}}} is not an edge"));
        };
        if !used.insert((a.min(b), a.max(b))) {
            return fail(format!("edge {{{a},{b}}} listed twice"));
        }
        total += w;
        let (x, y) = (root(&mut parent, a), root(&mut parent, b));
        parent[x] = y;
    }
    for set in sets {
        let Some(&first) = set.first() else { continue };
        if first >= g.n() || set.iter().any(|&t| t >= g.n()) {
            return fail("terminal out of range");
        }
        let r = root(&mut parent, first);
        if set.iter().any(|&t| root(&mut parent, t) != r) {
            return fail(format!("terminal set {set:?} is split"));
        }
    }
    if total != weight {
        return fail(format!("edge set weighs {total}, claimed {weight}"));
    }
    Ok(())
}

/// Bin assignment with every bin load equal to `Σ items / t`.
pub fn verify_bin_packing(items: &[u64], t: usize, bins: &[usize]) -> Verdict {
    if bins.len() != items.len() || bins.iter().any(|&b| b >= t) {
        return fail("bin assignment malformed");
    }
    let total: u64 = items.iter().sum();
    if t == 0 || !total.is_multiple_of(t as u64) {
        return fail("items cannot fill the bins evenly");
    }
    let mut load = vec![0u64; t];
    for (i, &b) in bins.iter().enumerate() {
        load[b] += items[i];
    }
    if load.iter().any(|&l| l != total / t as u64) {
        return fail("bin loads differ");
    }
    Ok(())
}

/// `chosen` indexes `n` triples covering every coordinate exactly once.
pub fn verify_3dm(n: usize, triples: &[(usize, usize, usize)], chosen: &[usize]) -> Verdict {
    if chosen.len() != n {
        return fail(format!("{} triples chosen, expected {n}", chosen.len()));
    }
    let mut seen = [vec![false; n], vec![false; n], vec![false; n]];
    for &i in chosen {
        let Some(&(x, y, z)) = triples.get(i) else {
            return fail(format!("triple index {i} out of range"));
        };
        for (axis, c) in [x, y, z].into_iter().enumerate() {
            if c >= n || std::mem::replace(&mut seen[axis][c], true) {
                return fail(format!("coordinate {c} reused or out of range"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imbalance_certificate() {
        assert!(verify_imbalance(&Graph::path(3), &[0, 1, 2], 2).is_ok());
        assert!(verify_imbalance(&Graph::path(3), &[0, 1, 2], 3).is_err());
        assert!(verify_imbalance(&Graph::path(3), &[0, 0, 2], 2).is_err());
        assert!(verify_imbalance(&Graph::complete(2), &[1, 0], 2).is_ok());
        assert!(verify_imbalance(&Graph::cycle(4), &[0, 1, 2, 3], 4).is_ok());
    }

    #[test]
    fn partition_certificate() {
        let p4 = Graph::path(4);
        assert!(verify_ecp(&p4, 2, &[vec![0, 2], vec![1, 3]]).is_err());
        assert!(verify_ecp(&p4, 2, &[vec![0, 1], vec![2, 3]]).is_ok());
    }

    #[test]
    fn capacitated_cover_certificate() {
        let k3 = Graph::complete(3).with_capacities(vec![1, 1, 1]).unwrap();
        // edges (0,1),(0,2),(1,2); cover {0,1} needs vertex 0 or 1 to take two
        assert!(verify_cvc(&k3, &[0, 1], &[0, 0, 1]).is_err());
        assert!(verify_cvc(&k3, &[0, 1, 2], &[0, 2, 1]).is_ok());
    }

    #[test]
    fn orientation_certificate() {
        let c4 = Graph::cycle(4);
        // edges (0,1),(0,3),(1,2),(2,3): 0->1, 3->0, 1->2, 2->3
        assert!(verify_mmoo(&c4, 1, &[true, false, true, true]).is_ok());
        assert!(verify_mmoo(&c4, 1, &[true, true, true, true]).is_err());
    }
}
