//! Maximum common subgraph and maximum common induced subgraph,
//! parameterized by the vertex integrity of both inputs.
//!
//! A guess fixes which separator vertices of each graph take part in the
//! common subgraph, where they map on the other side (possibly onto
//! non-separator vertices) and therefore two ordered anchor lists `R1`,
//! `R2` matched position by position. Every other mapped vertex lies in a
//! small component of `G_i - R_i`. Components are summarized by the
//! multisets of anchored pieces they can contribute, and an ILP balances
//! pieces across the two sides.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::{arrangements, permutations};
use crate::graph::Graph;
use crate::ilp::{optimize, Direction, IlpInstance, Relation};
use crate::integrity::vertex_integrity;
use crate::types::{canonical_type_unchecked, decompositions_unchecked, labeled_code, TypeMode};

/// Maximum number of edges of a common subgraph, with a vertex mapping
/// `(v in g1, w in g2)` realizing it.
pub fn mcs_vi(g1: &Graph, g2: &Graph) -> (usize, Vec<(usize, usize)>) {
    solve(g1, g2, false)
}

/// Maximum number of vertices of a common induced subgraph, with a vertex
/// mapping realizing it.
pub fn mcis_vi(g1: &Graph, g2: &Graph) -> (usize, Vec<(usize, usize)>) {
    solve(g1, g2, true)
}

struct Base<'a> {
    g: &'a Graph,
    s: Vec<usize>,
    in_s: Vec<bool>,
    free: Vec<usize>,
    comp_of: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

impl<'a> Base<'a> {
    fn new(g: &'a Graph) -> Self {
        let s = if g.n() == 0 {
            Vec::new()
        } else {
            vertex_integrity(g).1.separator.to_vec()
        };
        let mut in_s = vec![false; g.n()];
        for &v in &s {
            in_s[v] = true;
        }
        let comps: Vec<Vec<usize>> = g.components_avoiding(&in_s).into_iter().map(|c| c.to_vec()).collect();
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let free = (0..g.n()).filter(|&v| !in_s[v]).collect();
        Base {
            g,
            s,
            in_s,
            free,
            comp_of,
            comps,
        }
    }

    /// Injective images for `count` ordered vertices into `V - S`, one per
    /// class of images equivalent under automorphisms fixing `anchors`.
    fn images(&self, anchors: &[usize], count: usize) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for arr in arrangements(self.free.len(), count) {
            let seq: Vec<usize> = arr.iter().map(|&i| self.free[i]).collect();
            let mut touched: Vec<usize> = seq.iter().map(|&v| self.comp_of[v]).collect();
            touched.sort_unstable();
            touched.dedup();
            let mut key: Vec<Vec<u8>> = touched
                .iter()
                .map(|&c| {
                    labeled_code(self.g, anchors, &self.comps[c], |v| {
                        seq.iter().position(|&x| x == v).map_or(0, |j| j as u32 + 1)
                    })
                })
                .collect();
            key.sort();
            if seen.insert(key) {
                out.push(seq);
            }
        }
        out
    }
}

/// `(kept-as-matched, kept-with-free-image)` splits of the separator.
fn splits(s: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let total = 3usize.pow(s.len() as u32);
    for mut code in 0..total {
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for &v in s {
            match code % 3 {
                1 => x.push(v),
                2 => y.push(v),
                _ => {}
            }
            code /= 3;
        }
        out.push((x, y));
    }
    out
}

struct Guess {
    r1: Vec<usize>,
    r2: Vec<usize>,
}

fn guesses(b1: &Base, b2: &Base, induced: bool) -> Vec<Guess> {
    let mut out = Vec::new();
    let sp1 = splits(&b1.s);
    let sp2 = splits(&b2.s);
    let mut image_cache: HashMap<(bool, Vec<usize>, usize), Arc<Vec<Vec<usize>>>> = HashMap::new();
    let mut images = |side: bool, anchors: Vec<usize>, count: usize| {
        image_cache
            .entry((side, anchors.clone(), count))
            .or_insert_with(|| {
                let base = if side { b2 } else { b1 };
                Arc::new(base.images(&anchors, count))
            })
            .clone()
    };
    for (x1, y1) in &sp1 {
        let mut a1: Vec<usize> = x1.iter().chain(y1).copied().collect();
        a1.sort_unstable();
        for (x2, y2) in &sp2 {
            if x1.len() != x2.len() {
                continue;
            }
            let mut a2: Vec<usize> = x2.iter().chain(y2).copied().collect();
            a2.sort_unstable();
            let phis = images(true, a2, y1.len());
            let psis = images(false, a1.clone(), y2.len());
            for perm in permutations(x1.len()) {
                for phi in phis.iter() {
                    for psi in psis.iter() {
                        let r1: Vec<usize> = x1.iter().chain(y1).chain(psi).copied().collect();
                        let r2: Vec<usize> = perm.iter().map(|&i| x2[i]).chain(phi.iter().copied()).chain(y2.iter().copied()).collect();
                        if induced && !anchors_agree(b1.g, b2.g, &r1, &r2) {
                            continue;
                        }
                        out.push(Guess { r1, r2 });
                    }
                }
            }
        }
    }
    out
}

fn anchors_agree(g1: &Graph, g2: &Graph, r1: &[usize], r2: &[usize]) -> bool {
    (0..r1.len()).all(|i| (i + 1..r1.len()).all(|j| g1.has_edge(r1[i], r1[j]) == g2.has_edge(r2[i], r2[j])))
}

fn matched_edges(g1: &Graph, g2: &Graph, r1: &[usize], r2: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..r1.len() {
        for j in i + 1..r1.len() {
            if g1.has_edge(r1[i], r1[j]) && g2.has_edge(r2[i], r2[j]) {
                count += 1;
            }
        }
    }
    count
}

/// A piece of a component decomposition, vertices given as positions in
/// the component's canonical order (listed in the piece's canonical order).
struct PosPiece {
    positions: Vec<usize>,
    code: Vec<u8>,
    weight: usize,
}

struct PosDecomp {
    pieces: Vec<PosPiece>,
    weight: usize,
}

type DecompCache = Mutex<HashMap<Vec<u8>, Arc<Vec<PosDecomp>>>>;

struct Class {
    members: Vec<Vec<usize>>,
    decomps: Arc<Vec<PosDecomp>>,
    allowed: Vec<usize>,
}

fn classes_for(base: &Base, r: &[usize], induced: bool, cache: &DecompCache) -> Vec<Class> {
    let g = base.g;
    let mut removed = base.in_s.clone();
    for &v in r {
        removed[v] = true;
    }
    let mut grouped: BTreeMap<Vec<u8>, Vec<Vec<usize>>> = BTreeMap::new();
    for comp in g.components_avoiding(&removed) {
        let (ty, order) = canonical_type_unchecked(g, r, &comp, TypeMode::Plain);
        grouped.entry(ty.code).or_default().push(order);
    }
    grouped
        .into_iter()
        .map(|(code, members)| {
            let cached = cache.lock().expect("cache lock").get(&code).cloned();
            let decomps = cached.unwrap_or_else(|| {
                let d = Arc::new(positional_decomps(g, r, &members[0], induced));
                cache.lock().expect("cache lock").insert(code, d.clone());
                d
            });
            let allowed = (0..decomps.len()).collect();
            Class {
                members,
                decomps,
                allowed,
            }
        })
        .collect()
}

fn positional_decomps(g: &Graph, r: &[usize], rep: &[usize], induced: bool) -> Vec<PosDecomp> {
    let pos = |v: usize| rep.iter().position(|&x| x == v).expect("piece vertex in component");
    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut out = Vec::new();
    for d in decompositions_unchecked(g, r, rep, induced) {
        let pieces: Vec<PosPiece> = d
            .pieces
            .iter()
            // edgeless pieces add nothing to a common subgraph's edge count
            .filter(|p| induced || p.gtype.edges > 0)
            .map(|p| PosPiece {
                positions: p.vertices.iter().map(|&v| pos(v)).collect(),
                code: p.gtype.code.clone(),
                weight: if induced { p.gtype.size } else { p.gtype.edges },
            })
            .collect();
        let mut key: Vec<Vec<u8>> = pieces.iter().map(|p| p.code.clone()).collect();
        key.sort();
        if seen.insert(key) {
            let weight = pieces.iter().map(|p| p.weight).sum();
            out.push(PosDecomp { pieces, weight });
        }
    }
    out
}

/// Removes decompositions using a piece code that the other side can
/// never provide, until nothing changes.
fn presolve(sides: &mut [Vec<Class>; 2]) {
    loop {
        let available: Vec<HashSet<Vec<u8>>> = sides
            .iter()
            .map(|classes| {
                classes
                    .iter()
                    .flat_map(|c| c.allowed.iter().flat_map(|&d| c.decomps[d].pieces.iter().map(|p| p.code.clone())))
                    .collect()
            })
            .collect();
        let mut changed = false;
        for side in 0..2 {
            let other = &available[1 - side];
            for class in sides[side].iter_mut() {
                let before = class.allowed.len();
                let decomps = class.decomps.clone();
                class
                    .allowed
                    .retain(|&d| decomps[d].pieces.iter().all(|p| other.contains(&p.code)));
                changed |= class.allowed.len() != before;
            }
        }
        if !changed {
            return;
        }
    }
}

fn max_weight(classes: &[Class]) -> usize {
    classes
        .iter()
        .map(|c| c.members.len() * c.allowed.iter().map(|&d| c.decomps[d].weight).max().unwrap_or(0))
        .sum()
}

/// Optimum for one guess (anchor value plus best piece matching) and a
/// mapping realizing it, unless it cannot reach `floor`.
fn evaluate(
    bases: [&Base; 2],
    guess: &Guess,
    induced: bool,
    cache: &DecompCache,
    floor: usize,
) -> Option<(usize, Vec<(usize, usize)>)> {
    let anchor_value = if induced {
        guess.r1.len()
    } else {
        matched_edges(bases[0].g, bases[1].g, &guess.r1, &guess.r2)
    };
    let mut sides = [
        classes_for(bases[0], &guess.r1, induced, cache),
        classes_for(bases[1], &guess.r2, induced, cache),
    ];
    presolve(&mut sides);
    let bound = anchor_value + max_weight(&sides[0]).min(max_weight(&sides[1]));
    if bound < floor {
        return None;
    }

    let mut ilp = IlpInstance::new();
    let mut objective = Vec::new();
    let mut code_rows: BTreeMap<Vec<u8>, BTreeMap<usize, i64>> = BTreeMap::new();
    // per side, per class: (decomposition, variable)
    let mut vars: [Vec<Vec<(usize, usize)>>; 2] = [Vec::new(), Vec::new()];
    for side in 0..2 {
        let sign = if side == 0 { 1 } else { -1 };
        for class in &sides[side] {
            let count = class.members.len() as i64;
            let mut chosen = Vec::new();
            for &d in &class.allowed {
                let decomp = &class.decomps[d];
                if decomp.pieces.is_empty() {
                    continue;
                }
                let x = ilp.add_var(0, count);
                for p in &decomp.pieces {
                    *code_rows.entry(p.code.clone()).or_default().entry(x).or_default() += sign;
                }
                if side == 0 {
                    objective.push((x, decomp.weight as i64));
                }
                chosen.push((d, x));
            }
            if !chosen.is_empty() {
                let row = chosen.iter().map(|&(_, x)| (x, 1)).collect();
                ilp.add_constraint(row, Relation::Le, count).expect("variables exist");
            }
            vars[side].push(chosen);
        }
    }
    for row in code_rows.into_values() {
        ilp.add_constraint(row.into_iter().collect(), Relation::Eq, 0).expect("variables exist");
    }
    if floor > anchor_value && !objective.is_empty() {
        ilp.add_constraint(objective.clone(), Relation::Ge, (floor - anchor_value) as i64)
            .expect("variables exist");
    }
    let (x, gained) = if objective.is_empty() {
        (Vec::new(), 0)
    } else {
        optimize_max(&mut ilp, objective)?
    };
    let value = anchor_value + gained as usize;
    if value < floor {
        return None;
    }

    // pair pieces of equal code across the sides
    let mut pieces: [BTreeMap<Vec<u8>, Vec<Vec<usize>>>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for side in 0..2 {
        for (class, chosen) in sides[side].iter().zip(&vars[side]) {
            let mut members = class.members.iter();
            for &(d, var) in chosen {
                for _ in 0..x[var] {
                    let member = members.next().expect("usage bounded by class size");
                    for p in &class.decomps[d].pieces {
                        let verts = p.positions.iter().map(|&i| member[i]).collect();
                        pieces[side].entry(p.code.clone()).or_default().push(verts);
                    }
                }
            }
        }
    }
    let mut mapping: Vec<(usize, usize)> = guess.r1.iter().copied().zip(guess.r2.iter().copied()).collect();
    for (code, left) in &pieces[0] {
        let right = &pieces[1][code];
        debug_assert_eq!(left.len(), right.len());
        for (a, b) in left.iter().zip(right) {
            mapping.extend(a.iter().copied().zip(b.iter().copied()));
        }
    }
    Some((value, mapping))
}

fn optimize_max(ilp: &mut IlpInstance, objective: Vec<(usize, i64)>) -> Option<(Vec<i64>, i64)> {
    ilp.set_objective(objective, Direction::Max).expect("variables exist");
    optimize(ilp).expect("all bounds are finite")
}

fn solve(g1: &Graph, g2: &Graph, induced: bool) -> (usize, Vec<(usize, usize)>) {
    if g1.n() == 0 || g2.n() == 0 {
        return (0, Vec::new());
    }
    let b1 = Base::new(g1);
    let b2 = Base::new(g2);
    let all = guesses(&b1, &b2, induced);
    let cache: DecompCache = Mutex::new(HashMap::new());
    let best = AtomicUsize::new(0);
    let results: Vec<Option<(usize, Vec<(usize, usize)>)>> = all
        .par_iter()
        .map(|guess| {
            let found = evaluate([&b1, &b2], guess, induced, &cache, best.load(Ordering::Relaxed));
            if let Some((v, _)) = &found {
                best.fetch_max(*v, Ordering::Relaxed);
            }
            found
        })
        .collect();
    // earliest guess of maximum value, independent of scheduling
    let mut chosen: Option<(usize, Vec<(usize, usize)>)> = None;
    for (v, m) in results.into_iter().flatten() {
        if chosen.as_ref().is_none_or(|(b, _)| v > *b) {
            chosen = Some((v, m));
        }
    }
    let (value, mut mapping) = chosen.expect("the empty guess is always feasible");
    mapping.sort_unstable();
    let exact = if induced {
        mapping.len()
    } else {
        preserved_edges(g1, g2, &mapping)
    };
    debug_assert_eq!(exact, value);
    (exact, mapping)
}

fn preserved_edges(g1: &Graph, g2: &Graph, mapping: &[(usize, usize)]) -> usize {
    let mut image = vec![usize::MAX; g1.n()];
    for &(a, b) in mapping {
        image[a] = b;
    }
    g1.edges()
        .iter()
        .filter(|&&(u, v)| image[u] != usize::MAX && image[v] != usize::MAX && g2.has_edge(image[u], image[v]))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(mcs_vi(&Graph::path(4), &Graph::cycle(4)).0, 3);
        assert_eq!(mcs_vi(&Graph::star(3), &Graph::path(4)).0, 2);
        assert_eq!(mcis_vi(&Graph::star(3), &Graph::path(4)).0, 3);
        assert_eq!(mcis_vi(&Graph::complete(3), &Graph::empty(3)).0, 1);
        assert_eq!(mcs_vi(&Graph::empty(2), &Graph::complete(3)).0, 0);
    }
}
