//! Graph Motif on graphs of vertex integrity at most 3.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;
use crate::integrity::vertex_integrity;

type Motif = BTreeMap<u32, usize>;

/// Finds a connected vertex set whose color multiset equals `motif`.
///
/// Fails with a precondition error when `vi(g) > 3`. With a vi(3)-set `R`
/// the instance falls into one of three shapes: `|R| >= 2` makes `R` a
/// vertex cover of size at most 3, `R` empty leaves components of at most
/// three vertices, and `R = {r}` is solved through a degree-constrained
/// subgraph of a bipartite multigraph on colors.
pub fn graph_motif_vi3(g: &Graph, motif: &Motif) -> Result<Option<Vec<usize>>> {
    let colors = g
        .colors()
        .ok_or_else(|| Error::InvalidInput("graph has no vertex colors".into()))?;
    let (k, vi) = vertex_integrity(g);
    if k > 3 {
        return Err(Error::Precondition(format!("vertex integrity {k} exceeds 3")));
    }
    let motif: Motif = motif.iter().filter(|(_, &c)| c > 0).map(|(&x, &c)| (x, c)).collect();
    let size: usize = motif.values().sum();
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    if size > g.n() {
        return Ok(None);
    }
    let r = vi.separator.into_vec();
    Ok(match r.len() {
        0 => within_components(g, colors, &vec![false; g.n()], &motif),
        1 => single_root(g, colors, r[0], &motif),
        _ => small_cover(g, colors, &r, &motif),
    })
}

fn counts_of(colors: &[u32], set: &[usize]) -> Motif {
    let mut counts = Motif::new();
    for &v in set {
        *counts.entry(colors[v]).or_default() += 1;
    }
    counts
}

/// Subsets of small components of `g - removed`, checked one by one.
fn within_components(g: &Graph, colors: &[u32], removed: &[bool], motif: &Motif) -> Option<Vec<usize>> {
    for comp in g.components_avoiding(removed) {
        for mask in 1u32..(1 << comp.len()) {
            let set: Vec<usize> = (0..comp.len()).filter(|&i| mask >> i & 1 == 1).map(|i| comp[i]).collect();
            if counts_of(colors, &set) == *motif && g.is_connected_subset(&set) {
                return Some(set);
            }
        }
    }
    None
}

/// `r` is a vertex cover. A solution with two or more vertices meets `r`
/// in some nonempty `Q`, every other member has a neighbor in `Q`, and at
/// most `|Q| - 1` of those are needed to connect `Q`.
fn small_cover(g: &Graph, colors: &[u32], r: &[usize], motif: &Motif) -> Option<Vec<usize>> {
    if let Some((&x, 1)) = motif.iter().next().filter(|_| motif.len() == 1).map(|(x, &c)| (x, c)) {
        return (0..g.n()).find(|&v| colors[v] == x).map(|v| vec![v]);
    }
    let in_r = {
        let mut m = vec![false; g.n()];
        r.iter().for_each(|&v| m[v] = true);
        m
    };
    for mask in 1u32..(1 << r.len()) {
        let q: Vec<usize> = (0..r.len()).filter(|&i| mask >> i & 1 == 1).map(|i| r[i]).collect();
        let Some(rest) = subtract(motif, &counts_of(colors, &q)) else {
            continue;
        };
        let attached: Vec<usize> = (0..g.n())
            .filter(|&v| !in_r[v] && q.iter().any(|&x| g.has_edge(v, x)))
            .collect();
        let mut connectors: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &a) in attached.iter().enumerate() {
            connectors.push(vec![a]);
            if q.len() == 3 {
                connectors.extend(attached[i + 1..].iter().map(|&b| vec![a, b]));
            }
        }
        for conn in connectors.into_iter().filter(|c| c.len() < q.len()) {
            let mut set = q.clone();
            set.extend(&conn);
            if !g.is_connected_subset(&set) {
                continue;
            }
            let Some(mut need) = subtract(&rest, &counts_of(colors, &conn)) else {
                continue;
            };
            for &v in &attached {
                if let Some(c) = need.get_mut(&colors[v]).filter(|c| **c > 0) {
                    if !conn.contains(&v) {
                        *c -= 1;
                        set.push(v);
                    }
                }
            }
            if need.values().all(|&c| c == 0) {
                set.sort_unstable();
                return Some(set);
            }
        }
    }
    None
}

fn subtract(a: &Motif, b: &Motif) -> Option<Motif> {
    let mut out = a.clone();
    for (x, &c) in b {
        let slot = out.get_mut(x)?;
        *slot = slot.checked_sub(c)?;
    }
    Some(out)
}

fn single_root(g: &Graph, colors: &[u32], r: usize, motif: &Motif) -> Option<Vec<usize>> {
    let mut removed = vec![false; g.n()];
    removed[r] = true;
    if let Some(set) = within_components(g, colors, &removed, motif) {
        return Some(set);
    }
    let rest = subtract(motif, &counts_of(colors, &[r]))?;
    let near: Vec<bool> = (0..g.n()).map(|v| g.has_edge(r, v)).collect();
    // color universe indices
    let palette: Vec<u32> = {
        let mut p: Vec<u32> = colors.to_vec();
        p.extend(rest.keys());
        p.sort_unstable();
        p.dedup();
        p
    };
    let idx = |x: u32| palette.binary_search(&x).expect("color in palette");
    let want = |x: u32| rest.get(&x).copied().unwrap_or(0);
    let mut q = vec![0usize; palette.len()];
    for v in (0..g.n()).filter(|&v| near[v]) {
        q[idx(colors[v])] += 1;
    }
    let mut h_edges = Vec::new();
    let mut pairs = Vec::new();
    for comp in g.components_avoiding(&removed) {
        if let [a, b] = comp[..] {
            let (u, v) = match (near[a], near[b]) {
                (true, false) => (a, b),
                (false, true) => (b, a),
                _ => continue,
            };
            h_edges.push((idx(colors[u]), idx(colors[v])));
            pairs.push((u, v));
        }
    }
    let at_most: Vec<usize> = palette.iter().map(|&x| want(x)).collect();
    let exactly: Vec<usize> = palette
        .iter()
        .enumerate()
        .map(|(i, &x)| want(x).saturating_sub(q[i]))
        .collect();
    let chosen = degree_constrained_subgraph(palette.len(), palette.len(), &h_edges, &at_most, &exactly)?;
    let mut set = vec![r];
    let mut taken = vec![0usize; palette.len()];
    let mut used = vec![false; g.n()];
    for e in chosen {
        let (u, v) = pairs[e];
        set.extend([u, v]);
        used[u] = true;
        used[v] = true;
        taken[idx(colors[u])] += 1;
    }
    for (i, &x) in palette.iter().enumerate() {
        let mut missing = if want(x) <= q[i] { want(x) - taken[i] } else { q[i] - taken[i] };
        for v in 0..g.n() {
            if missing == 0 {
                break;
            }
            if near[v] && !used[v] && colors[v] == x {
                set.push(v);
                missing -= 1;
            }
        }
    }
    set.sort_unstable();
    Some(set)
}

/// Picks a sub-multiset of the bipartite multigraph `edges` (pairs of left
/// and right indices) such that every left vertex `i` has degree at most
/// `at_most[i]` and every right vertex `j` has degree exactly `exactly[j]`.
/// Returns the indices of the chosen edges in increasing order.
///
/// Solved as a max-flow: source to left with capacity `at_most`, one unit
/// arc per edge, right to sink with capacity `exactly`, which must saturate.
pub fn degree_constrained_subgraph(
    left: usize,
    right: usize,
    edges: &[(usize, usize)],
    at_most: &[usize],
    exactly: &[usize],
) -> Option<Vec<usize>> {
    let (source, sink) = (left + right, left + right + 1);
    let mut net = FlowNetwork::new(left + right + 2);
    for (i, &cap) in at_most.iter().enumerate().take(left) {
        net.add_arc(source, i, cap as i64);
    }
    let handles: Vec<usize> = edges.iter().map(|&(a, b)| net.add_arc(a, left + b, 1)).collect();
    for (j, &cap) in exactly.iter().enumerate().take(right) {
        net.add_arc(left + j, sink, cap as i64);
    }
    let demand: usize = exactly.iter().take(right).sum();
    if net.max_flow(source, sink) != demand as i64 {
        return None;
    }
    Some((0..edges.len()).filter(|&e| net.flow(handles[e]) > 0).collect())
}
