use std::collections::HashMap;

use super::{falling_factorial, next_permutation, NodeMeter, OracleBudget};
use crate::error::Result;
use crate::graph::Graph;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut masks = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

/// Vertex sets of the components of the subgraph induced by `alive`.
fn component_masks(adj: &[u64], alive: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = alive;
    while rest != 0 {
        let start = rest.trailing_zeros();
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// Minimum over all separators `S` of `|S|` plus the largest component of
/// `G - S`.
pub fn oracle_vertex_integrity(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    budget.vertices(g.n())?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(g);
    let all = (1u64 << n) - 1;
    let mut best = n;
    for s in 0..=all {
        let largest = component_masks(&adj, all & !s)
            .iter()
            .map(|c| c.count_ones() as usize)
            .max()
            .unwrap_or(0);
        best = best.min(s.count_ones() as usize + largest);
    }
    Ok(best)
}

/// Treedepth from its recursive definition, memoized over vertex subsets.
pub fn oracle_treedepth(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    budget.vertices(g.n())?;
    let adj = adjacency_masks(g);
    let mut memo = HashMap::new();
    let all = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
    Ok(treedepth_of(&adj, all, &mut memo))
}

fn treedepth_of(adj: &[u64], set: u64, memo: &mut HashMap<u64, usize>) -> usize {
    if set == 0 {
        return 0;
    }
    if let Some(&d) = memo.get(&set) {
        return d;
    }
    let comps = component_masks(adj, set);
    let d = if comps.len() > 1 {
        comps.iter().map(|&c| treedepth_of(adj, c, memo)).max().unwrap_or(0)
    } else {
        let mut best = usize::MAX;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(1 + treedepth_of(adj, set & !(1 << v), memo));
        }
        best
    };
    memo.insert(set, d);
    d
}

/// Smallest vertex cover size by subset enumeration.
pub fn oracle_vertex_cover(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    budget.vertices(g.n())?;
    let n = g.n();
    let mut best = n;
    for s in 0u64..(1 << n) {
        if g.edges().iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1) {
            best = best.min(s.count_ones() as usize);
        }
    }
    Ok(best)
}

fn all_orderings(g: &Graph, budget: &OracleBudget) -> Result<()> {
    budget.vertices(g.n())?;
    budget.orderings(falling_factorial(g.n(), g.n()))
}

/// Minimum total imbalance over all orderings, with the first optimal
/// ordering in lexicographic order.
pub fn oracle_imbalance(g: &Graph, budget: &OracleBudget) -> Result<(u64, Vec<usize>)> {
    all_orderings(g, budget)?;
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let mut total = 0u64;
        for v in 0..n {
            let before = g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count() as i64;
            let after = g.degree(v) as i64 - before;
            total += (before - after).unsigned_abs();
        }
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least one ordering"))
}

/// Minimum over orderings of the maximum edge stretch.
pub fn oracle_bandwidth(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    all_orderings(g, budget)?;
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let width = g
            .edges()
            .iter()
            .map(|&(u, v)| pos[u].abs_diff(pos[v]))
            .max()
            .unwrap_or(0);
        if best.as_ref().is_none_or(|(b, _)| width < *b) {
            best = Some((width, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.expect("at least one ordering"))
}

/// Maximum common subgraph edge count and a mapping `V(g1) -> V(g2)` as
/// `(u, η(u))` pairs. Total injections of the smaller vertex set into the
/// larger one suffice, since extending a partial injection never loses a
/// preserved edge.
pub fn oracle_mcs(g1: &Graph, g2: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<(usize, usize)>)> {
    budget.vertices(g1.n().max(g2.n()))?;
    let swap = g1.n() > g2.n();
    let (small, large) = if swap { (g2, g1) } else { (g1, g2) };
    budget.orderings(falling_factorial(large.n(), small.n()))?;
    let mut best = (0usize, Vec::new());
    let mut image = vec![usize::MAX; small.n()];
    let mut used = vec![false; large.n()];
    inject_all(small, large, 0, &mut image, &mut used, &mut best);
    let (value, image) = best;
    let mut mapping: Vec<(usize, usize)> = image.iter().enumerate().map(|(u, &v)| (u, v)).collect();
    if swap {
        mapping = mapping.into_iter().map(|(a, b)| (b, a)).collect();
        mapping.sort_unstable();
    }
    Ok((value, mapping))
}

fn inject_all(
    small: &Graph,
    large: &Graph,
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
    best: &mut (usize, Vec<usize>),
) {
    if depth == small.n() {
        let kept = small
            .edges()
            .iter()
            .filter(|&&(u, v)| large.has_edge(image[u], image[v]))
            .count();
        if best.1.is_empty() && small.n() > 0 || kept > best.0 {
            *best = (kept, image.to_vec());
        }
        return;
    }
    for v in 0..large.n() {
        if !used[v] {
            used[v] = true;
            image[depth] = v;
            inject_all(small, large, depth + 1, image, used, best);
            used[v] = false;
        }
    }
}

/// Maximum common induced subgraph order and a partial mapping
/// `V(g1) -> V(g2)`, by exhaustive search over partial injections with a
/// remaining-vertices bound.
pub fn oracle_mcis(g1: &Graph, g2: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<(usize, usize)>)> {
    budget.vertices(g1.n().max(g2.n()))?;
    let mut search = McisSearch {
        g1,
        g2,
        image: Vec::new(),
        used: vec![false; g2.n()],
        best: Vec::new(),
        meter: NodeMeter::new(budget),
    };
    search.run(0)?;
    let mapping: Vec<(usize, usize)> = search.best.clone();
    Ok((mapping.len(), mapping))
}

struct McisSearch<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    image: Vec<(usize, usize)>,
    used: Vec<bool>,
    best: Vec<(usize, usize)>,
    meter: NodeMeter,
}

impl McisSearch<'_> {
    fn run(&mut self, u: usize) -> Result<()> {
        self.meter.tick()?;
        if self.image.len() > self.best.len() {
            self.best = self.image.clone();
        }
        if u == self.g1.n() {
            return Ok(());
        }
        let cap = (self.g1.n() - u).min(self.g2.n() - self.image.len());
        if self.image.len() + cap <= self.best.len() {
            return Ok(());
        }
        for v in 0..self.g2.n() {
            if self.used[v] {
                continue;
            }
            let consistent = self
                .image
                .iter()
                .all(|&(a, b)| self.g1.has_edge(u, a) == self.g2.has_edge(v, b));
            if consistent {
                self.used[v] = true;
                self.image.push((u, v));
                self.run(u + 1)?;
                self.image.pop();
                self.used[v] = false;
            }
        }
        self.run(u + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn integrity_and_treedepth() {
        assert_eq!(oracle_vertex_integrity(&Graph::complete(4), &b()).unwrap(), 4);
        assert_eq!(oracle_vertex_integrity(&Graph::path(7), &b()).unwrap(), 4);
        assert_eq!(oracle_treedepth(&Graph::path(7), &b()).unwrap(), 3);
        assert_eq!(oracle_treedepth(&Graph::complete(4), &b()).unwrap(), 4);
        assert_eq!(oracle_vertex_cover(&Graph::cycle(5), &b()).unwrap(), 3);
    }

    #[test]
    fn ordering_problems() {
        assert_eq!(oracle_imbalance(&Graph::path(3), &b()).unwrap().0, 2);
        assert_eq!(oracle_imbalance(&Graph::star(3), &b()).unwrap().0, 4);
        assert_eq!(oracle_bandwidth(&Graph::path(6), &b()).unwrap().0, 1);
        assert_eq!(oracle_bandwidth(&Graph::complete(4), &b()).unwrap().0, 3);
        assert!(oracle_imbalance(&Graph::path(9), &b()).is_err());
    }

    #[test]
    fn common_subgraphs() {
        assert_eq!(oracle_mcs(&Graph::path(4), &Graph::cycle(4), &b()).unwrap().0, 3);
        assert_eq!(oracle_mcs(&Graph::star(3), &Graph::path(4), &b()).unwrap().0, 2);
        assert_eq!(oracle_mcs(&Graph::cycle(4), &Graph::path(4), &b()).unwrap().0, 3);
        assert_eq!(oracle_mcis(&Graph::complete(3), &Graph::path(3), &b()).unwrap().0, 2);
        assert_eq!(oracle_mcis(&Graph::complete(3), &Graph::empty(3), &b()).unwrap().0, 1);
        assert_eq!(oracle_mcis(&Graph::cycle(5), &Graph::cycle(5), &b()).unwrap().0, 5);
    }
}
