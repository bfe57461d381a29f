use super::OracleBudget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Assigns each client to one of its allowed servers, each server `s`
/// taking at most `cap[s]` clients. Kuhn-style augmenting paths.
fn assign(clients: &[Vec<usize>], cap: &[usize]) -> Option<Vec<usize>> {
    let mut holder: Vec<Vec<usize>> = vec![Vec::new(); cap.len()];
    let mut owner = vec![usize::MAX; clients.len()];
    for c in 0..clients.len() {
        let mut seen = vec![false; cap.len()];
        if !augment(c, clients, cap, &mut holder, &mut owner, &mut seen) {
            return None;
        }
    }
    Some(owner)
}

fn augment(
    c: usize,
    clients: &[Vec<usize>],
    cap: &[usize],
    holder: &mut [Vec<usize>],
    owner: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for &s in &clients[c] {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        if holder[s].len() < cap[s] {
            holder[s].push(c);
            owner[c] = s;
            return true;
        }
        for i in 0..holder[s].len() {
            let other = holder[s][i];
            if augment(other, clients, cap, holder, owner, seen) {
                holder[s][i] = c;
                owner[c] = s;
                return true;
            }
        }
    }
    false
}

fn capacities(g: &Graph) -> Result<Vec<usize>> {
    g.capacities()
        .map(|c| c.iter().map(|&x| x as usize).collect())
        .ok_or_else(|| Error::InvalidInput("graph has no vertex capacities".into()))
}

/// Minimum capacitated vertex cover: `(size, cover, endpoint per edge)`
/// with the endpoint list aligned to `g.edges()`, or `None` when even the
/// whole vertex set cannot absorb all edges.
pub fn oracle_cvc(g: &Graph, budget: &OracleBudget) -> Result<Option<(usize, Vec<usize>, Vec<usize>)>> {
    budget.vertices(g.n())?;
    let cap = capacities(g)?;
    let n = g.n();
    let mut subsets: Vec<u64> = (0..1u64 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let inside = |v: usize| s >> v & 1 == 1;
        let clients: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .map(|&(u, v)| [u, v].into_iter().filter(|&x| inside(x)).collect())
            .collect();
        if clients.iter().any(|c| c.is_empty()) {
            continue;
        }
        if let Some(owner) = assign(&clients, &cap) {
            let cover: Vec<usize> = (0..n).filter(|&v| inside(v)).collect();
            return Ok(Some((cover.len(), cover, owner)));
        }
    }
    Ok(None)
}

/// Minimum capacitated dominating set: `(size, set, dominator per vertex)`
/// where dominators of members are the members themselves.
pub fn oracle_cds(g: &Graph, budget: &OracleBudget) -> Result<Option<(usize, Vec<usize>, Vec<usize>)>> {
    budget.vertices(g.n())?;
    let cap = capacities(g)?;
    let n = g.n();
    let mut subsets: Vec<u64> = (0..1u64 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let inside = |v: usize| s >> v & 1 == 1;
        let outside: Vec<usize> = (0..n).filter(|&v| !inside(v)).collect();
        let clients: Vec<Vec<usize>> = outside
            .iter()
            .map(|&v| g.neighbors(v).iter().copied().filter(|&w| inside(w)).collect())
            .collect();
        if clients.iter().any(|c| c.is_empty()) {
            continue;
        }
        if let Some(owner) = assign(&clients, &cap) {
            let mut dominator: Vec<usize> = (0..n).collect();
            for (i, &v) in outside.iter().enumerate() {
                dominator[v] = owner[i];
            }
            let set: Vec<usize> = (0..n).filter(|&v| inside(v)).collect();
            return Ok(Some((set.len(), set, dominator)));
        }
    }
    Ok(None)
}
