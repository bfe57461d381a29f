//! Minimum maximum outdegree orientation with binary weights on graphs
//! with a vertex cover of size at most 2.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::integrity::vertex_cover_min;

/// Orients every edge so that each vertex has out-weight at most `r`.
/// The result has one flag per edge of `g.edges()`, `true` meaning the
/// edge `(u, v)` leaves `u`.
///
/// Fails with a precondition error when `g` has no vertex cover of size 2.
pub fn binary_mmoo_vc2(g: &Graph, r: u64) -> Result<Option<Vec<bool>>> {
    let cover = vertex_cover_min(g);
    if cover.len() > 2 {
        return Err(Error::Precondition(format!("vertex cover number {} exceeds 2", cover.len())));
    }
    let weight = |i: usize| g.weights().map_or(1, |w| w[i]);
    if (0..g.m()).any(|i| weight(i) > r) {
        return Ok(None);
    }
    let edges = g.edges();
    let mut dir: Vec<Option<bool>> = vec![None; g.m()];
    let orient_from = |dir: &mut [Option<bool>], e: usize, from: usize| dir[e] = Some(edges[e].0 == from);

    // Peel vertices of degree at most one, pointing their edge outward.
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if degree[v] != 1 {
            continue;
        }
        let Some(&u) = g.neighbors(v).iter().find(|&&u| dir[edge_of(g, u, v)].is_none()) else {
            continue;
        };
        orient_from(&mut dir, edge_of(g, u, v), v);
        degree[v] = 0;
        degree[u] -= 1;
        if degree[u] == 1 {
            stack.push(u);
        }
    }
    let alive: Vec<usize> = (0..g.n()).filter(|&v| degree[v] > 0).collect();
    if alive.is_empty() {
        return Ok(Some(finish(&dir)));
    }
    // Every survivor has degree >= 2, so no single vertex covers what is
    // left and the cover of the remainder is a pair {p, q}.
    let (rest, _) = g.induced(&alive).expect("vertices in range");
    let local = vertex_cover_min(&rest);
    let (p, q) = (alive[local[0]], alive[local[1]]);

    let mut others = Vec::new();
    for &v in alive.iter().filter(|&&v| v != p && v != q) {
        let (ep, eq) = (edge_of(g, v, p), edge_of(g, v, q));
        if weight(ep) + weight(eq) <= r {
            orient_from(&mut dir, ep, v);
            orient_from(&mut dir, eq, v);
        } else {
            others.push((v, ep, eq));
        }
    }
    let heavy = |e: usize| 2 * weight(e) > r;
    let guesses = |x_edge: fn(&(usize, usize, usize)) -> usize| {
        let mut out = vec![None];
        out.extend(others.iter().map(x_edge).filter(|&e| heavy(e)).map(Some));
        out
    };
    let from_p = guesses(|o| o.1);
    let from_q = guesses(|o| o.2);
    let pq = g.edge_index(p.min(q), p.max(q));

    for &gp in &from_p {
        for &gq in &from_q {
            let mut trial = dir.clone();
            if !assign_others(&others, gp, gq, &heavy, |e, from| orient_from(&mut trial, e, from), p, q) {
                continue;
            }
            let options = if pq.is_some() { vec![Some(p), Some(q)] } else { vec![None] };
            for from in options {
                let mut full = trial.clone();
                if let (Some(e), Some(from)) = (pq, from) {
                    orient_from(&mut full, e, from);
                }
                let orientation = finish(&full);
                if max_out(g, &orientation) <= r {
                    return Ok(Some(orientation));
                }
            }
        }
    }
    Ok(None)
}

/// Orients the two edges of every remaining vertex `v`. Guessed heavy
/// edges point into `v`, any other heavy edge leaves `v`, and since the two
/// weights together exceed `r` at most one edge may leave `v`.
fn assign_others(
    others: &[(usize, usize, usize)],
    gp: Option<usize>,
    gq: Option<usize>,
    heavy: &impl Fn(usize) -> bool,
    mut orient: impl FnMut(usize, usize),
    p: usize,
    q: usize,
) -> bool {
    for &(v, ep, eq) in others {
        let leaves = |e: usize, guessed: Option<usize>| heavy(e) && guessed != Some(e);
        match (leaves(ep, gp), leaves(eq, gq)) {
            (true, true) => return false,
            (true, false) => {
                orient(ep, v);
                orient(eq, q);
            }
            (false, true) => {
                orient(ep, p);
                orient(eq, v);
            }
            (false, false) => {
                let in_p = gp == Some(ep);
                let in_q = gq == Some(eq);
                orient(ep, if in_p { p } else if in_q { v } else { p });
                orient(eq, if in_q { q } else if in_p { v } else { q });
            }
        }
    }
    true
}

fn edge_of(g: &Graph, u: usize, v: usize) -> usize {
    g.edge_index(u.min(v), u.max(v)).expect("adjacent vertices")
}

fn finish(dir: &[Option<bool>]) -> Vec<bool> {
    dir.iter().map(|d| d.unwrap_or(true)).collect()
}

fn max_out(g: &Graph, orientation: &[bool]) -> u64 {
    let mut out = vec![0u64; g.n()];
    for (i, (&(u, v), &fwd)) in g.edges().iter().zip(orientation).enumerate() {
        out[if fwd { u } else { v }] += g.weights().map_or(1, |w| w[i]);
    }
    out.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let k2 = Graph::from_weighted_edges(2, &[(0, 1, 5)]).unwrap();
        assert_eq!(binary_mmoo_vc2(&k2, 4).unwrap(), None);
        let c4 = Graph::cycle(4);
        let o = binary_mmoo_vc2(&c4, 1).unwrap().unwrap();
        assert_eq!(max_out(&c4, &o), 1);
        assert!(binary_mmoo_vc2(&Graph::path(3), 1).unwrap().is_some());
        assert!(matches!(binary_mmoo_vc2(&Graph::complete(4), 3), Err(Error::Precondition(_))));
    }
}
