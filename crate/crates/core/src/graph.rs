//! Simple undirected graphs on dense vertex indices, plus the handful of
//! structural primitives every solver builds on: connected components,
//! induced subgraphs and isomorphism with pointwise-fixed anchors.

use std::collections::{HashSet, VecDeque};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair into `(min, max)`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A sorted list of distinct vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    /// Builds a subset from arbitrary indices, sorting and removing duplicates.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSubset(vertices)
    }

    pub fn empty() -> Self {
        VertexSubset(Vec::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Characteristic vector over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

impl Deref for VertexSubset {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for VertexSubset {
    fn from(v: Vec<usize>) -> Self {
        VertexSubset::new(v)
    }
}

impl FromIterator<usize> for VertexSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSubset::new(iter.into_iter().collect())
    }
}

/// Simple undirected graph with optional vertex colors, vertex capacities
/// and edge weights. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    weights: Option<Vec<u64>>,
    colors: Option<Vec<u32>>,
    capacities: Option<Vec<u32>>,
}

/// Incremental construction with full validation at every step.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(Edge, Option<u64>)>,
    seen: HashSet<Edge>,
    colors: Option<Vec<u32>>,
    capacities: Option<Vec<u32>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Default::default()
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.push_edge(u, v, None)
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: u64) -> Result<&mut Self> {
        if w == 0 {
            return invalid(format!("edge {{{u},{v}}} has non-positive weight"));
        }
        self.push_edge(u, v, Some(w))
    }

    fn push_edge(&mut self, u: usize, v: usize, w: Option<u64>) -> Result<&mut Self> {
        if u >= self.n || v >= self.n {
            return invalid(format!("edge {{{u},{v}}} out of range for n={}", self.n));
        }
        if u == v {
            return invalid(format!("self-loop at vertex {u}"));
        }
        let e = edge(u, v);
        if !self.seen.insert(e) {
            return invalid(format!("duplicate edge {{{u},{v}}}"));
        }
        self.edges.push((e, w));
        Ok(self)
    }

    pub fn set_color(&mut self, v: usize, color: u32) -> Result<&mut Self> {
        if v >= self.n {
            return invalid(format!("color for vertex {v} out of range"));
        }
        self.colors.get_or_insert_with(|| vec![0; self.n])[v] = color;
        Ok(self)
    }

    pub fn set_capacity(&mut self, v: usize, cap: u32) -> Result<&mut Self> {
        if v >= self.n {
            return invalid(format!("capacity for vertex {v} out of range"));
        }
        if cap == 0 {
            return invalid(format!("capacity of vertex {v} must be positive"));
        }
        self.capacities.get_or_insert_with(|| vec![1; self.n])[v] = cap;
        Ok(self)
    }

    pub fn build(&self) -> Result<Graph> {
        let weighted = self.edges.iter().filter(|(_, w)| w.is_some()).count();
        if weighted != 0 && weighted != self.edges.len() {
            return invalid("either all edges carry a weight or none does");
        }
        let mut pairs: Vec<(Edge, u64)> = self
            .edges
            .iter()
            .map(|&(e, w)| (e, w.unwrap_or(1)))
            .collect();
        pairs.sort_unstable();
        let mut adj = vec![Vec::new(); self.n];
        for &((u, v), _) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: pairs.iter().map(|&(e, _)| e).collect(),
            weights: (weighted > 0).then(|| pairs.iter().map(|&(_, w)| w).collect()),
            colors: self.colors.clone(),
            capacities: self.capacities.clone(),
        })
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            weights: None,
            colors: None,
            capacities: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        b.build()
    }

    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v, w) in edges {
            b.add_weighted_edge(u, v, w)?;
        }
        b.build()
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("clique edges are valid")
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u,v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    /// Weight of edge `{u,v}`; unweighted graphs report 1.
    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let i = self.edge_index(u, v)?;
        Some(self.weights.as_ref().map_or(1, |w| w[i]))
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn capacities(&self) -> Option<&[u32]> {
        self.capacities.as_deref()
    }

    pub fn color(&self, v: usize) -> Option<u32> {
        self.colors.as_ref().map(|c| c[v])
    }

    pub fn capacity(&self, v: usize) -> Option<u32> {
        self.capacities.as_ref().map(|c| c[v])
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n() {
            return invalid("color vector length differs from vertex count");
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn with_capacities(mut self, caps: Vec<u32>) -> Result<Self> {
        if caps.len() != self.n() {
            return invalid("capacity vector length differs from vertex count");
        }
        if let Some(v) = caps.iter().position(|&c| c == 0) {
            return invalid(format!("capacity of vertex {v} must be positive"));
        }
        self.capacities = Some(caps);
        Ok(self)
    }

    /// Attaches weights aligned with [`Graph::edges`]. An edgeless graph
    /// stays unweighted.
    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.m() {
            return invalid("weight vector length differs from edge count");
        }
        if weights.contains(&0) {
            return invalid("edge weights must be positive");
        }
        self.weights = (!weights.is_empty()).then_some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    /// Graph obtained by relabeling vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return invalid("relabeling is not a permutation");
        }
        let mut b = GraphBuilder::new(n);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            match &self.weights {
                Some(w) => b.add_weighted_edge(perm[u], perm[v], w[i])?,
                None => b.add_edge(perm[u], perm[v])?,
            };
        }
        let mut g = b.build()?;
        if let Some(c) = &self.colors {
            let mut nc = vec![0; n];
            for v in 0..n {
                nc[perm[v]] = c[v];
            }
            g.colors = Some(nc);
        }
        if let Some(c) = &self.capacities {
            let mut nc = vec![0; n];
            for v in 0..n {
                nc[perm[v]] = c[v];
            }
            g.capacities = Some(nc);
        }
        Ok(g)
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<VertexSubset> {
        self.components_avoiding(&vec![false; self.n()])
    }

    /// Components of `G - removed`, where `removed` is a characteristic vector.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<VertexSubset> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSubset::new(comp));
        }
        out
    }

    /// Whether `vertices` induces a connected subgraph (the empty set counts
    /// as connected).
    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return true;
        };
        let mut inside = vec![false; self.n()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == vertices.len()
    }

    /// Induced subgraph on `s` together with the old-to-new index map.
    /// Attributes are restricted to `s`.
    pub fn induced(&self, s: &[usize]) -> Result<(Graph, Vec<Option<usize>>)> {
        let n = self.n();
        let mut map = vec![None; n];
        let mut order = Vec::with_capacity(s.len());
        for &v in s {
            if v >= n {
                return invalid(format!("vertex {v} out of range for n={n}"));
            }
            if map[v].is_none() {
                map[v] = Some(order.len());
                order.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                edges.push((a, b));
                weights.push(self.weights.as_ref().map_or(1, |w| w[i]));
            }
        }
        let mut g = Graph::from_edges(order.len(), &edges)?;
        if self.weights.is_some() {
            // from_edges sorts edges, so realign weights by lookup
            let mut aligned = vec![0; g.m()];
            for (k, &(a, b)) in edges.iter().enumerate() {
                aligned[g.edge_index(a, b).expect("edge just inserted")] = weights[k];
            }
            g.weights = Some(aligned);
        }
        g.colors = self.colors.as_ref().map(|c| order.iter().map(|&v| c[v]).collect());
        g.capacities = self
            .capacities
            .as_ref()
            .map(|c| order.iter().map(|&v| c[v]).collect());
        Ok((g, map))
    }
}

fn attributes_match(g1: &Graph, u: usize, g2: &Graph, v: usize) -> bool {
    g1.color(u) == g2.color(v) && g1.capacity(u) == g2.capacity(v)
}

/// Searches for an isomorphism `g1 -> g2` sending `anchors1[i]` to
/// `anchors2[i]`. Vertex colors and capacities, when present, must be
/// preserved. Returns the full vertex map indexed by `g1` vertices.
///
/// Plain backtracking over the non-anchor vertices with degree pruning;
/// intended for the small graphs produced by type computations.
pub fn anchored_isomorphic(
    g1: &Graph,
    g2: &Graph,
    anchors1: &[usize],
    anchors2: &[usize],
) -> Result<Option<Vec<usize>>> {
    if anchors1.len() != anchors2.len() {
        return invalid("anchor lists have different lengths");
    }
    if anchors1.iter().any(|&a| a >= g1.n()) || anchors2.iter().any(|&a| a >= g2.n()) {
        return invalid("anchor out of range");
    }
    let n = g1.n();
    if n != g2.n() || g1.m() != g2.m() {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (&a, &b) in anchors1.iter().zip(anchors2) {
        if map[a] != usize::MAX || used[b] {
            return invalid("anchor lists contain repeated vertices");
        }
        map[a] = b;
        used[b] = true;
    }
    for &a in anchors1 {
        if g1.degree(a) != g2.degree(map[a]) || !attributes_match(g1, a, g2, map[a]) {
            return Ok(None);
        }
        for &c in anchors1 {
            if g1.has_edge(a, c) != g2.has_edge(map[a], map[c]) {
                return Ok(None);
            }
        }
    }
    let free: Vec<usize> = (0..n).filter(|&v| map[v] == usize::MAX).collect();
    if extend_isomorphism(g1, g2, &free, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn extend_isomorphism(
    g1: &Graph,
    g2: &Graph,
    free: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = free.get(depth) else {
        return true;
    };
    for v in 0..g2.n() {
        if used[v] || g1.degree(u) != g2.degree(v) || !attributes_match(g1, u, g2, v) {
            continue;
        }
        // adjacency towards already-mapped vertices must agree both ways
        let consistent = (0..g1.n())
            .filter(|&w| map[w] != usize::MAX)
            .all(|w| g1.has_edge(u, w) == g2.has_edge(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend_isomorphism(g1, g2, free, depth + 1, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[v] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_small_graphs() {
        assert!(Graph::empty(0).components().is_empty());
        let p3 = Graph::path(3);
        assert_eq!(p3.components(), vec![VertexSubset::new(vec![0, 1, 2])]);
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two_k2.components(),
            vec![VertexSubset::new(vec![0, 1]), VertexSubset::new(vec![2, 3])]
        );
    }

    #[test]
    fn induced_subgraphs() {
        let (k2, map) = Graph::complete(3).induced(&[0, 1]).unwrap();
        assert_eq!(k2, Graph::complete(2));
        assert_eq!(map, vec![Some(0), Some(1), None]);
        let (g, _) = Graph::path(4).induced(&[0, 2]).unwrap();
        assert_eq!(g, Graph::empty(2));
        let p5 = Graph::path(5);
        let (same, _) = p5.induced(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(same, p5);
        assert!(p5.induced(&[7]).is_err());
    }

    #[test]
    fn builder_rejects_bad_edges() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert!(GraphBuilder::new(2).set_capacity(0, 0).is_err());
    }

    #[test]
    fn weighted_induced_keeps_weights() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, 5), (1, 2, 7), (0, 2, 9)]).unwrap();
        let (h, _) = g.induced(&[2, 1]).unwrap();
        assert_eq!(h.weight(0, 1), Some(7));
    }

    #[test]
    fn anchored_isomorphism_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(anchored_isomorphic(&k2, &k2, &[0], &[0]).unwrap(), Some(vec![0, 1]));
        let p3 = Graph::path(3);
        assert_eq!(
            anchored_isomorphic(&p3, &p3, &[0], &[2]).unwrap(),
            Some(vec![2, 1, 0])
        );
        let k3 = Graph::complete(3);
        assert_eq!(anchored_isomorphic(&k3, &p3, &[0], &[0]).unwrap(), None);
        assert!(anchored_isomorphic(&k3, &p3, &[0], &[]).is_err());
    }

    #[test]
    fn anchored_isomorphism_respects_colors() {
        let a = Graph::path(3).with_colors(vec![1, 2, 3]).unwrap();
        let b = Graph::path(3).with_colors(vec![3, 2, 1]).unwrap();
        assert_eq!(anchored_isomorphic(&a, &b, &[], &[]).unwrap(), Some(vec![2, 1, 0]));
        assert_eq!(anchored_isomorphic(&a, &b, &[0], &[0]).unwrap(), None);
    }
}
