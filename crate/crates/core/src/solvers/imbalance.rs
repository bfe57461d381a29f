//! Imbalance parameterized by vertex integrity.
//!
//! For a fixed relative order of the separator `S`, a component's
//! contribution depends only on how its vertices interleave with `S`. Each
//! component type therefore contributes a small menu of placements; an ILP
//! picks how many components of each type use each placement, with one
//! auxiliary variable per separator vertex bounding its imbalance.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{first_min, permutations};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::ilp::{optimize, Direction, IlpInstance, Relation};
use crate::integrity::vertex_integrity;
use crate::types::{classify_components, TypeClass, TypeMode};

/// Total imbalance of `ordering`, which must list every vertex once.
pub fn imbalance_of(g: &Graph, ordering: &[usize]) -> Result<u64> {
    let n = g.n();
    if ordering.len() != n {
        return invalid("ordering is not a permutation of the vertices");
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return invalid("ordering is not a permutation of the vertices");
        }
        pos[v] = i;
    }
    Ok((0..n)
        .map(|v| {
            let left = g.neighbors(v).iter().filter(|&&w| pos[w] < pos[v]).count() as i64;
            (2 * left - g.degree(v) as i64).unsigned_abs()
        })
        .sum())
}

/// Placement of a component relative to the ordered separator: component
/// positions (canonical order indices) listed left to right, each with the
/// gap it falls into. Gap `i` lies just before the `i`-th separator vertex.
#[derive(Debug, Clone)]
struct Placement {
    sequence: Vec<(usize, usize)>,
}

/// Best placement per separator profile for one component type.
struct Menu {
    /// `(left - right)` contributions to each separator vertex, the
    /// component's own imbalance, and a placement achieving it.
    options: Vec<(Vec<i64>, u64, Placement)>,
}

fn build_menu(g: &Graph, s_order: &[usize], rep: &[usize]) -> Menu {
    let s = s_order.len();
    let m = rep.len();
    let mut best: BTreeMap<Vec<i64>, (u64, Placement)> = BTreeMap::new();
    let mut gaps = vec![0usize; m];
    for perm in permutations(m) {
        // nondecreasing gap sequences of length m over 0..=s
        gaps.iter_mut().for_each(|x| *x = 0);
        loop {
            let mut rank = vec![0usize; m];
            for (i, &p) in perm.iter().enumerate() {
                rank[p] = i;
            }
            let gap_of = |p: usize| gaps[rank[p]];
            let mut own = 0u64;
            for p in 0..m {
                let v = rep[p];
                let mut left = 0i64;
                let mut right = 0i64;
                for (i, &sv) in s_order.iter().enumerate() {
                    if g.has_edge(v, sv) {
                        if i < gap_of(p) {
                            left += 1;
                        } else {
                            right += 1;
                        }
                    }
                }
                for q in 0..m {
                    if q != p && g.has_edge(v, rep[q]) {
                        if rank[q] < rank[p] {
                            left += 1;
                        } else {
                            right += 1;
                        }
                    }
                }
                own += (left - right).unsigned_abs();
            }
            let profile: Vec<i64> = (0..s)
                .map(|i| {
                    let sv = s_order[i];
                    (0..m)
                        .filter(|&p| g.has_edge(sv, rep[p]))
                        .map(|p| if gap_of(p) <= i { 1 } else { -1 })
                        .sum()
                })
                .collect();
            let better = best.get(&profile).is_none_or(|(b, _)| own < *b);
            if better {
                let sequence = perm.iter().enumerate().map(|(i, &p)| (p, gaps[i])).collect();
                best.insert(profile, (own, Placement { sequence }));
            }
            // next nondecreasing sequence
            let Some(i) = (0..m).rev().find(|&i| gaps[i] < s) else {
                break;
            };
            let next = gaps[i] + 1;
            for x in &mut gaps[i..] {
                *x = next;
            }
        }
    }
    Menu {
        options: best.into_iter().map(|(k, (im, p))| (k, im, p)).collect(),
    }
}

struct GuessResult {
    s_order: Vec<usize>,
    /// Per type, per menu option: how many components use it.
    counts: Vec<Vec<i64>>,
    menus: Vec<Menu>,
}

fn solve_guess(g: &Graph, s_order: &[usize], classes: &[TypeClass]) -> Option<(i64, GuessResult)> {
    let s = s_order.len();
    let menus: Vec<Menu> = classes.iter().map(|c| build_menu(g, s_order, &c.members[0])).collect();
    let mut ilp = IlpInstance::new();
    let mut objective = Vec::new();
    let mut xvars: Vec<Vec<usize>> = Vec::new();
    for (t, menu) in menus.iter().enumerate() {
        let count = classes[t].members.len() as i64;
        let vars: Vec<usize> = menu
            .options
            .iter()
            .map(|(_, im, _)| {
                let x = ilp.add_var(0, count);
                objective.push((x, *im as i64));
                x
            })
            .collect();
        ilp.add_constraint(vars.iter().map(|&x| (x, 1)).collect(), Relation::Eq, count)
            .expect("variables exist");
        xvars.push(vars);
    }
    for i in 0..s {
        let v = s_order[i];
        let base: i64 = s_order
            .iter()
            .enumerate()
            .filter(|&(_, &w)| g.has_edge(v, w))
            .map(|(j, _)| if j < i { 1 } else { -1 })
            .sum();
        let y = ilp.add_var(0, g.degree(v) as i64);
        ilp.set_name(y, format!("y{v}"));
        objective.push((y, 1));
        let mut terms: Vec<(usize, i64)> = vec![(y, 1)];
        for (t, menu) in menus.iter().enumerate() {
            for (o, (profile, _, _)) in menu.options.iter().enumerate() {
                terms.push((xvars[t][o], -profile[i]));
            }
        }
        // y >= base + Σ d x   and   y >= -(base + Σ d x)
        ilp.add_constraint(terms.clone(), Relation::Ge, base).expect("variables exist");
        let mirrored: Vec<(usize, i64)> = terms
            .iter()
            .map(|&(var, c)| if var == y { (var, c) } else { (var, -c) })
            .collect();
        ilp.add_constraint(mirrored, Relation::Ge, -base).expect("variables exist");
    }
    ilp.set_objective(objective, Direction::Min).expect("variables exist");
    let (x, value) = optimize(&ilp).expect("all bounds are finite")?;
    let counts = xvars
        .iter()
        .map(|vars| vars.iter().map(|&v| x[v]).collect())
        .collect();
    Some((
        value,
        GuessResult {
            s_order: s_order.to_vec(),
            counts,
            menus,
        },
    ))
}

fn reconstruct(result: &GuessResult, classes: &[TypeClass]) -> Vec<usize> {
    let s = result.s_order.len();
    let mut gaps: Vec<Vec<usize>> = vec![Vec::new(); s + 1];
    for (t, class) in classes.iter().enumerate() {
        let mut members = class.members.iter();
        for (o, &count) in result.counts[t].iter().enumerate() {
            let placement = &result.menus[t].options[o].2;
            for _ in 0..count {
                let comp = members.next().expect("counts sum to the class size");
                let mut per_gap: Vec<Vec<usize>> = vec![Vec::new(); s + 1];
                for &(p, gap) in &placement.sequence {
                    per_gap[gap].push(comp[p]);
                }
                for (gap, verts) in per_gap.into_iter().enumerate() {
                    gaps[gap].extend(verts);
                }
            }
        }
    }
    let mut order = Vec::new();
    for i in 0..=s {
        order.append(&mut gaps[i]);
        if i < s {
            order.push(result.s_order[i]);
        }
    }
    order
}

/// Minimum total imbalance and an ordering achieving it.
pub fn imbalance_vi(g: &Graph) -> (u64, Vec<usize>) {
    if g.n() == 0 {
        return (0, Vec::new());
    }
    let (_, viset) = vertex_integrity(g);
    let separator: Vec<usize> = viset.separator.to_vec();
    let classes = classify_components(g, &separator, TypeMode::Plain).expect("separator is valid");
    let guesses: Vec<Vec<usize>> = permutations(separator.len())
        .into_iter()
        .map(|p| p.into_iter().map(|i| separator[i]).collect())
        .collect();
    let results: Vec<Option<(i64, GuessResult)>> = guesses
        .par_iter()
        .map(|s_order| solve_guess(g, s_order, &classes))
        .collect();
    let (value, best) = first_min(results).expect("some separator order is feasible");
    let order = reconstruct(&best, &classes);
    let exact = imbalance_of(g, &order).expect("reconstruction is a permutation");
    debug_assert_eq!(exact as i64, value);
    (exact, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(imbalance_vi(&Graph::empty(0)).0, 0);
        assert_eq!(imbalance_vi(&Graph::path(3)).0, 2);
        assert_eq!(imbalance_vi(&Graph::star(3)).0, 4);
        assert_eq!(imbalance_vi(&Graph::empty(4)).0, 0);
    }

    #[test]
    fn evaluator() {
        assert_eq!(imbalance_of(&Graph::complete(2), &[1, 0]).unwrap(), 2);
        assert_eq!(imbalance_of(&Graph::cycle(4), &[0, 1, 2, 3]).unwrap(), 4);
        assert!(imbalance_of(&Graph::path(3), &[0, 1]).is_err());
    }

    #[test]
    fn certificate_matches_value() {
        for g in [Graph::cycle(5), Graph::complete(4), Graph::star(5), Graph::path(6)] {
            let (value, order) = imbalance_vi(&g);
            assert_eq!(imbalance_of(&g, &order).unwrap(), value);
        }
    }
}
