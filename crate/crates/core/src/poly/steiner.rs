//! Steiner Forest by vertex cover: an exact n^O(vc) search for weighted
//! instances and a kernel for unit weights.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::{edge, Edge, Graph};
use crate::integrity::{is_vertex_cover, vertex_cover_min};
use crate::solvers::first_min;

fn check_sets(g: &Graph, sets: &[Vec<usize>]) -> Result<()> {
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
                return invalid(format!("terminal {v} appears in two sets"));
            }
        }
    }
    Ok(())
}

fn weight_of(g: &Graph, i: usize) -> u64 {
    g.weights().map_or(1, |w| w[i])
}

fn combinations(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|c| c.len() < max)
            .map(|c| {
                let mut c = c.clone();
                c.push(x);
                c
            })
            .collect();
        out.extend(grown);
    }
    out
}

/// Minimum-weight edge set in which every terminal set lies inside one
/// connected component, or `None` when some set cannot be connected.
///
/// With a minimum vertex cover `S`, the vertices outside `S` that an optimal
/// forest uses with degree two or more form a set `D` of at most `|S| - 1`
/// vertices. The search guesses `D` and the forest on `S ∪ D`; every other
/// terminal then hangs off that forest by a single cheapest edge.
pub fn steiner_forest_xp_vc(g: &Graph, sets: &[Vec<usize>]) -> Result<Option<(u64, Vec<Edge>)>> {
    check_sets(g, sets)?;
    let cover = vertex_cover_min(g);
    Ok(steiner_with_cover(g, sets, &cover))
}

fn steiner_with_cover(g: &Graph, sets: &[Vec<usize>], cover: &[usize]) -> Option<(u64, Vec<Edge>)> {
    if sets.is_empty() {
        return Some((0, Vec::new()));
    }
    let in_cover = {
        let mut m = vec![false; g.n()];
        cover.iter().for_each(|&v| m[v] = true);
        m
    };
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !in_cover[v]).collect();
    let guesses = combinations(&outside, cover.len().saturating_sub(1));
    let results: Vec<Option<(u64, Vec<Edge>)>> = guesses
        .par_iter()
        .map(|d| {
            let mut core: Vec<usize> = cover.iter().chain(d).copied().collect();
            core.sort_unstable();
            best_for_core(g, sets, &core)
        })
        .collect();
    first_min(results)
}

struct CoreSearch<'a> {
    g: &'a Graph,
    sets: &'a [Vec<usize>],
    core: &'a [usize],
    pos: Vec<Option<usize>>,
    edges: Vec<usize>,
    chosen: Vec<usize>,
    parent: Vec<usize>,
    best: Option<(u64, Vec<Edge>)>,
}

fn best_for_core(g: &Graph, sets: &[Vec<usize>], core: &[usize]) -> Option<(u64, Vec<Edge>)> {
    let mut pos = vec![None; g.n()];
    for (i, &v) in core.iter().enumerate() {
        pos[v] = Some(i);
    }
    let edges: Vec<usize> = (0..g.m())
        .filter(|&i| {
            let (u, v) = g.edges()[i];
            pos[u].is_some() && pos[v].is_some()
        })
        .collect();
    let mut search = CoreSearch {
        g,
        sets,
        core,
        pos,
        edges,
        chosen: Vec::new(),
        parent: (0..core.len()).collect(),
        best: None,
    };
    search.run(0, 0);
    search.best
}

fn root(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

impl CoreSearch<'_> {
    /// Enumerates forests on the core, one edge decision at a time.
    fn run(&mut self, next: usize, weight: u64) {
        if self.best.as_ref().is_some_and(|(b, _)| weight >= *b) {
            return;
        }
        if next == self.edges.len() {
            if let Some(found) = self.complete(weight) {
                if self.best.as_ref().is_none_or(|(b, _)| found.0 < *b) {
                    self.best = Some(found);
                }
            }
            return;
        }
        let e = self.edges[next];
        let (u, v) = self.g.edges()[e];
        let (a, b) = (self.pos[u].unwrap(), self.pos[v].unwrap());
        let (ra, rb) = (root(&self.parent, a), root(&self.parent, b));
        if ra != rb {
            self.parent[ra] = rb;
            self.chosen.push(e);
            self.run(next + 1, weight + weight_of(self.g, e));
            self.chosen.pop();
            self.parent[ra] = ra;
        }
        self.run(next + 1, weight);
    }

    /// Places every terminal set in a component of the core forest and
    /// attaches its outside terminals by their cheapest edges.
    fn complete(&self, forest_weight: u64) -> Option<(u64, Vec<Edge>)> {
        let g = self.g;
        let comp = |v: usize| self.pos[v].map(|i| root(&self.parent, i));
        let mut roots: Vec<usize> = (0..self.core.len()).map(|i| root(&self.parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut total = forest_weight;
        let mut edges: Vec<Edge> = self.chosen.iter().map(|&e| g.edges()[e]).collect();
        for set in self.sets {
            let placed: Vec<usize> = set.iter().filter_map(|&t| comp(t)).collect();
            if placed.windows(2).any(|w| w[0] != w[1]) {
                return None;
            }
            let loose: Vec<usize> = set.iter().copied().filter(|&t| comp(t).is_none()).collect();
            let hosts: Vec<usize> = match placed.first() {
                Some(&c) => vec![c],
                None => roots.clone(),
            };
            let attach = |host: usize| -> Option<(u64, Vec<Edge>)> {
                let mut cost = 0;
                let mut picked = Vec::new();
                for &t in &loose {
                    let (w, x) = g
                        .neighbors(t)
                        .iter()
                        .filter(|&&x| comp(x) == Some(host))
                        .map(|&x| (g.weight(t, x).expect("adjacent"), x))
                        .min()?;
                    cost += w;
                    picked.push(edge(t, x));
                }
                Some((cost, picked))
            };
            let (cost, picked) = first_min(hosts.into_iter().map(attach))?;
            total += cost;
            edges.extend(picked);
        }
        edges.sort_unstable();
        Some((total, edges))
    }
}

/// One reduction applied by [`usf_kernelize`], in original vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelStep {
    /// `vertex` left its terminal set; `twin` stayed in it with the same
    /// neighborhood.
    DropTerminal { vertex: usize, twin: usize },
    /// Terminal set `absorbed` was merged into set `kept` (indices into the
    /// working list at the time of the merge).
    MergeSets { kept: usize, absorbed: usize },
    /// A non-terminal vertex with a twin was deleted.
    RemoveVertex { vertex: usize },
}

/// Reduced unweighted Steiner Forest instance.
#[derive(Debug, Clone)]
pub struct UsfKernel {
    pub graph: Graph,
    pub sets: Vec<Vec<usize>>,
    /// Vertex cover of `graph`.
    pub cover: Vec<usize>,
    /// Optimum of the original instance minus optimum of the kernel.
    pub budget_delta: u64,
    /// Original index of every kernel vertex.
    pub vertex_map: Vec<usize>,
    pub trace: Vec<KernelStep>,
}

impl UsfKernel {
    /// Turns a solution of the kernel into one of the original instance.
    pub fn lift(&self, original: &Graph, solution: &[Edge]) -> Vec<Edge> {
        let mut edges: Vec<Edge> = solution
            .iter()
            .map(|&(a, b)| edge(self.vertex_map[a], self.vertex_map[b]))
            .collect();
        for step in self.trace.iter().rev() {
            let &KernelStep::DropTerminal { vertex, twin } = step else {
                continue;
            };
            let mut parent: Vec<usize> = (0..original.n()).collect();
            for &(a, b) in &edges {
                let (ra, rb) = (root(&parent, a), root(&parent, b));
                parent[ra] = rb;
            }
            if root(&parent, vertex) == root(&parent, twin) {
                continue;
            }
            let anchor = edges
                .iter()
                .filter_map(|&(a, b)| match (a == twin, b == twin) {
                    (true, _) => Some(b),
                    (_, true) => Some(a),
                    _ => None,
                })
                .min();
            if let Some(x) = anchor {
                edges.push(edge(vertex, x));
            }
        }
        edges.sort_unstable();
        edges
    }
}

fn check_unit(g: &Graph) -> Result<()> {
    if g.weights().is_some_and(|w| w.iter().any(|&x| x != 1)) {
        return invalid("unweighted Steiner Forest needs unit edge weights");
    }
    Ok(())
}

/// Applies the three twin reductions round-robin until none fires:
/// dropping a terminal that has enough same-neighborhood twins in its set,
/// merging terminal sets with identical neighborhood profiles, and deleting
/// non-terminal twins outside the cover.
///
/// The drop rule only fires when the twin group has at least `max(s, 2)`
/// members and the set keeps at least two terminals, which is what the
/// leaf-exchange argument needs. `cover` defaults to a minimum vertex cover.
pub fn usf_kernelize(g: &Graph, sets: &[Vec<usize>], cover: Option<&[usize]>) -> Result<UsfKernel> {
    check_unit(g)?;
    check_sets(g, sets)?;
    let cover: Vec<usize> = match cover {
        Some(c) if is_vertex_cover(g, c) => {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c
        }
        Some(_) => return invalid("supplied set is not a vertex cover"),
        None => vertex_cover_min(g).into_vec(),
    };
    let s = cover.len();
    let mut in_cover = vec![false; g.n()];
    cover.iter().for_each(|&v| in_cover[v] = true);
    let mut alive = vec![true; g.n()];
    let mut sets: Vec<Vec<usize>> = sets
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.sort_unstable();
            t
        })
        .collect();
    let mut trace = Vec::new();
    let mut delta = 0;
    let nbhd = |v: usize| g.neighbors(v).to_vec();

    loop {
        let mut changed = false;
        // drop terminals with many twins
        for t in sets.iter_mut() {
            loop {
                if t.len() < 3 {
                    break;
                }
                let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
                for &v in t.iter().filter(|&&v| !in_cover[v]) {
                    groups.entry(nbhd(v)).or_default().push(v);
                }
                let Some(group) = groups.values().find(|grp| grp.len() >= s.max(2)) else {
                    break;
                };
                let (twin, vertex) = (group[0], *group.last().expect("nonempty"));
                t.retain(|&x| x != vertex);
                trace.push(KernelStep::DropTerminal { vertex, twin });
                delta += 1;
                changed = true;
            }
        }
        // merge sets sharing a neighborhood profile
        loop {
            let mut by_profile: HashMap<BTreeMap<Vec<usize>, usize>, Vec<usize>> = HashMap::new();
            for (i, t) in sets.iter().enumerate() {
                if t.iter().any(|&v| in_cover[v]) {
                    continue;
                }
                let mut profile = BTreeMap::new();
                for &v in t {
                    *profile.entry(nbhd(v)).or_insert(0) += 1;
                }
                by_profile.entry(profile).or_default().push(i);
            }
            let Some(group) = by_profile
                .into_values()
                .filter(|grp| grp.len() >= (s + 1).max(2))
                .min_by_key(|grp| grp[0])
            else {
                break;
            };
            let (kept, absorbed) = (group[0], group[1]);
            let moved = sets.remove(absorbed);
            sets[kept].extend(moved);
            sets[kept].sort_unstable();
            trace.push(KernelStep::MergeSets { kept, absorbed });
            changed = true;
        }
        // delete non-terminal twins outside the cover
        let mut terminal = vec![false; g.n()];
        sets.iter().flatten().for_each(|&v| terminal[v] = true);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for v in 0..g.n() {
            if !alive[v] || in_cover[v] || terminal[v] || seen.insert(nbhd(v)) {
                continue;
            }
            alive[v] = false;
            trace.push(KernelStep::RemoveVertex { vertex: v });
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let (graph, map) = g.induced(&kept)?;
    let local = |v: usize| map[v].expect("kernel keeps terminals and cover");
    Ok(UsfKernel {
        graph,
        sets: sets.iter().map(|t| t.iter().map(|&v| local(v)).collect()).collect(),
        cover: cover.iter().map(|&v| local(v)).collect(),
        budget_delta: delta,
        vertex_map: kept,
        trace,
    })
}

/// Optimal unweighted Steiner forest: kernelize, solve the kernel exactly
/// with the vertex-cover search, and lift the result back.
pub fn usf_solve(g: &Graph, sets: &[Vec<usize>]) -> Result<Option<(u64, Vec<Edge>)>> {
    let kernel = usf_kernelize(g, sets, None)?;
    let Some((_, edges)) = steiner_with_cover(&kernel.graph, &kernel.sets, &kernel.cover) else {
        return Ok(None);
    };
    let lifted = kernel.lift(g, &edges);
    Ok(Some((lifted.len() as u64, lifted)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_examples() {
        let k3 = Graph::from_weighted_edges(3, &[(0, 1, 3), (0, 2, 1), (1, 2, 1)]).unwrap();
        let (w, edges) = steiner_forest_xp_vc(&k3, &[vec![0, 1]]).unwrap().unwrap();
        assert_eq!((w, edges), (2, vec![(0, 2), (1, 2)]));
        let p4 = Graph::path(4);
        assert_eq!(steiner_forest_xp_vc(&p4, &[vec![0, 1], vec![2, 3]]).unwrap().unwrap().0, 2);
        let split = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(steiner_forest_xp_vc(&split, &[vec![0, 2]]).unwrap(), None);
    }

    #[test]
    fn kernel_rules() {
        // star with four non-terminal leaves and one terminal pair
        let star = Graph::star(6);
        let k = usf_kernelize(&star, &[vec![5, 6]], None).unwrap();
        assert_eq!(k.graph.n(), 4);
        assert_eq!(k.budget_delta, 0);
        let (w, _) = usf_solve(&star, &[vec![5, 6]]).unwrap().unwrap();
        assert_eq!(w, 2);

        let star = Graph::star(3);
        let k = usf_kernelize(&star, &[vec![1, 2, 3]], None).unwrap();
        assert_eq!(k.budget_delta, 1);
        let (w, edges) = usf_solve(&star, &[vec![1, 2, 3]]).unwrap().unwrap();
        assert_eq!((w, edges), (3, vec![(0, 1), (0, 2), (0, 3)]));

        let p4 = Graph::path(4);
        let k = usf_kernelize(&p4, &[vec![0, 3]], None).unwrap();
        assert!(k.trace.is_empty());
    }
}
