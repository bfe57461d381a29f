//! Vertex integrity: exact value, vi(k)-set extraction, and minimum vertex
//! cover by bounded branching.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, VertexSubset};

/// A separator `S` together with a bound `k` such that
/// `|S| + |C| <= k` for every component `C` of `G - S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViSet {
    pub separator: VertexSubset,
    pub k: usize,
}

impl ViSet {
    /// Re-checks the defining inequality against `g`.
    pub fn check(&self, g: &Graph) -> bool {
        if self.separator.iter().any(|&v| v >= g.n()) || self.separator.len() > self.k {
            return false;
        }
        let removed = self.separator.mask(g.n());
        g.components_avoiding(&removed)
            .iter()
            .all(|c| self.separator.len() + c.len() <= self.k)
    }

    /// Size of the largest component left after removing the separator.
    pub fn largest_component(&self, g: &Graph) -> usize {
        let removed = self.separator.mask(g.n());
        g.components_avoiding(&removed)
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }
}

/// Finds a vi(k)-set of `g`, or `None` when `vi(g) > k`.
///
/// Any valid extension of a partial separator must hit every connected set
/// of `k - |S| + 1` vertices inside an oversized component, so branching on
/// the vertices of one such set is exhaustive.
pub fn vi_k_set(g: &Graph, k: usize) -> Result<Option<ViSet>> {
    if k == 0 {
        return invalid("vi_k_set requires k >= 1");
    }
    let mut search = ViSearch {
        g,
        k,
        removed: vec![false; g.n()],
        chosen: Vec::new(),
        visited: HashSet::new(),
    };
    Ok(search.run().map(|sep| ViSet {
        separator: VertexSubset::new(sep),
        k,
    }))
}

struct ViSearch<'a> {
    g: &'a Graph,
    k: usize,
    removed: Vec<bool>,
    chosen: Vec<usize>,
    visited: HashSet<Vec<usize>>,
}

impl ViSearch<'_> {
    fn run(&mut self) -> Option<Vec<usize>> {
        let s = self.chosen.len();
        let Some(start) = self.offending_component_start() else {
            return Some(self.chosen.clone());
        };
        if s >= self.k {
            return None;
        }
        let hitting = self.bfs_prefix(start, self.k - s + 1);
        for v in hitting {
            self.chosen.push(v);
            let mut key = self.chosen.clone();
            key.sort_unstable();
            if self.visited.insert(key) {
                self.removed[v] = true;
                let found = self.run();
                self.removed[v] = false;
                if found.is_some() {
                    self.chosen.pop();
                    return found;
                }
            }
            self.chosen.pop();
        }
        None
    }

    /// Smallest vertex of the first component (by smallest vertex) that
    /// violates the bound.
    fn offending_component_start(&self) -> Option<usize> {
        let budget = self.k.saturating_sub(self.chosen.len());
        self.g
            .components_avoiding(&self.removed)
            .into_iter()
            .find(|c| c.len() > budget)
            .map(|c| c[0])
    }

    fn bfs_prefix(&self, start: usize, len: usize) -> Vec<usize> {
        let mut seen = self.removed.clone();
        let mut out = Vec::with_capacity(len);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            out.push(u);
            if out.len() == len {
                break;
            }
            for &w in self.g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }
}

/// Exact vertex integrity together with a witnessing vi(k)-set.
pub fn vertex_integrity(g: &Graph) -> (usize, ViSet) {
    if g.n() == 0 {
        return (
            0,
            ViSet {
                separator: VertexSubset::empty(),
                k: 0,
            },
        );
    }
    for k in 1..=g.n() {
        if let Some(set) = vi_k_set(g, k).expect("k >= 1") {
            return (k, set);
        }
    }
    unreachable!("S = V is always a vi(n)-set")
}

/// A minimum vertex cover, found by iterative deepening over the classic
/// two-way edge branching.
pub fn vertex_cover_min(g: &Graph) -> VertexSubset {
    let mut in_cover = vec![false; g.n()];
    let mut chosen = Vec::new();
    for budget in 0..=g.n() {
        if cover_branch(g, budget, &mut in_cover, &mut chosen) {
            return VertexSubset::new(chosen);
        }
    }
    unreachable!("V is always a vertex cover")
}

fn cover_branch(g: &Graph, budget: usize, in_cover: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let uncovered = g
        .edges()
        .iter()
        .find(|&&(u, v)| !in_cover[u] && !in_cover[v]);
    let Some(&(u, v)) = uncovered else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for x in [u, v] {
        in_cover[x] = true;
        chosen.push(x);
        if cover_branch(g, budget - 1, in_cover, chosen) {
            return true;
        }
        chosen.pop();
        in_cover[x] = false;
    }
    false
}

/// Checks that `cover` touches every edge of `g`.
pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut mask = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return false;
        }
        mask[v] = true;
    }
    g.edges().iter().all(|&(u, v)| mask[u] || mask[v])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs_need_all_vertices() {
        let k5 = Graph::complete(5);
        assert_eq!(vi_k_set(&k5, 4).unwrap(), None);
        let set = vi_k_set(&k5, 5).unwrap().unwrap();
        assert!(set.check(&k5));
        assert_eq!(vertex_integrity(&k5).0, 5);
    }

    #[test]
    fn stars_and_paths() {
        let star = Graph::star(6);
        let set = vi_k_set(&star, 2).unwrap().unwrap();
        assert_eq!(set.separator, VertexSubset::new(vec![0]));
        assert_eq!(vertex_integrity(&Graph::star(1)).0, 2);
        let p7 = Graph::path(7);
        assert_eq!(vi_k_set(&p7, 3).unwrap(), None);
        assert!(vi_k_set(&p7, 4).unwrap().unwrap().check(&p7));
        assert_eq!(vertex_integrity(&p7).0, 4);
        assert!(vi_k_set(&p7, 0).is_err());
    }

    #[test]
    fn empty_graph_has_integrity_zero() {
        assert_eq!(vertex_integrity(&Graph::empty(0)).0, 0);
        assert_eq!(vertex_integrity(&Graph::empty(3)).0, 1);
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(vertex_cover_min(&Graph::complete(2)).len(), 1);
        assert_eq!(vertex_cover_min(&Graph::cycle(5)).len(), 3);
        assert_eq!(vertex_cover_min(&Graph::star(4)), VertexSubset::new(vec![0]));
        assert!(vertex_cover_min(&Graph::empty(3)).is_empty());
    }
}
