//! Capacitated Vertex Cover and Capacitated Dominating Set parameterized by
//! vertex integrity.
//!
//! Both solvers guess the part of the solution inside the separator `S` and
//! how the separator's own demands are served. Each component type then
//! offers a menu of local solutions, summarized by their size and the load
//! they push onto separator vertices; only load vectors that are minimal
//! for their local choice are kept. An ILP picks menu entries per type
//! under the residual separator capacities.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use super::first_min;
use crate::error::{invalid, Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Edge, Graph, VertexSubset};
use crate::ilp::{optimize, Direction, IlpInstance, Relation};
use crate::integrity::vertex_integrity;
use crate::types::{classify_components, TypeClass, TypeMode};

/// Capacitated cover with the covering endpoint of every edge, aligned
/// with `g.edges()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub cover: VertexSubset,
    pub assignment: Vec<usize>,
}

/// Capacitated dominating set with the dominator of every vertex; members
/// dominate themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub dset: VertexSubset,
    pub dominator: Vec<usize>,
}

fn capacities(g: &Graph) -> Result<Vec<i64>> {
    g.capacities()
        .map(|c| c.iter().map(|&x| x as i64).collect())
        .ok_or_else(|| Error::InvalidInput("graph has no vertex capacities".into()))
}

fn separator(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        Vec::new()
    } else {
        vertex_integrity(g).1.separator.to_vec()
    }
}

/// Every vector `v` with `lo <= v <= hi`, in lexicographic order.
fn boxed(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..cur.len()).rev().find(|&i| cur[i] < hi[i]) else {
            return out;
        };
        cur[i] += 1;
        cur[i + 1..].copy_from_slice(&lo[i + 1..]);
    }
}

/// Minimal vectors of an upward-closed feasible region inside the box.
fn minimal_feasible<T>(lo: &[i64], hi: &[i64], mut test: impl FnMut(&[i64]) -> Option<T>) -> Vec<(Vec<i64>, T)> {
    let mut feasible: HashMap<Vec<i64>, T> = HashMap::new();
    let mut order = Vec::new();
    for v in boxed(lo, hi) {
        if let Some(t) = test(&v) {
            order.push(v.clone());
            feasible.insert(v, t);
        }
    }
    let minimal: Vec<Vec<i64>> = order
        .into_iter()
        .filter(|v| {
            (0..v.len()).all(|i| {
                let mut w = v.clone();
                w[i] -= 1;
                w[i] < lo[i] || !feasible.contains_key(&w)
            })
        })
        .collect();
    minimal
        .into_iter()
        .map(|v| {
            let t = feasible.remove(&v).expect("minimal vectors are feasible");
            (v, t)
        })
        .collect()
}

/// One local solution of a component: its size, its load on each guessed
/// separator vertex, the separator vertices it serves (domination only)
/// and a positional witness.
#[derive(Debug, Clone)]
struct LocalChoice {
    size: i64,
    load: Vec<i64>,
    serves: u64,
    /// `(a, b, server)` on the representative component: the edge `{a, b}`
    /// for covers, the vertex `a == b` for domination.
    picks: Vec<(usize, usize, usize)>,
    chosen: Vec<usize>,
}

fn dominates(a: &LocalChoice, b: &LocalChoice) -> bool {
    a.size <= b.size && a.serves & b.serves == b.serves && a.load.iter().zip(&b.load).all(|(x, y)| x <= y)
}

/// Drops options dominated by an earlier or strictly better option.
fn prune(options: Vec<LocalChoice>) -> Vec<LocalChoice> {
    let mut kept: Vec<LocalChoice> = Vec::new();
    for o in options {
        if kept.iter().any(|k| dominates(k, &o)) {
            continue;
        }
        kept.retain(|k| !dominates(&o, k));
        kept.push(o);
    }
    kept
}

/// Maps the representative's vertices onto a member by canonical position;
/// separator vertices map to themselves.
fn transfer(rep: &[usize], member: &[usize]) -> impl Fn(usize) -> usize {
    let map: HashMap<usize, usize> = rep.iter().copied().zip(member.iter().copied()).collect();
    move |v| map.get(&v).copied().unwrap_or(v)
}

struct Solved {
    value: i64,
    counts: Vec<Vec<i64>>,
}

/// Solves `min base + Σ size·x` with `Σ_o x_{t,o} = |class t|`, load rows
/// `Σ load_i·x <= room_i` and coverage rows `Σ_{o serves b} x >= 1`.
fn solve_menus(menus: &[Vec<LocalChoice>], sizes: &[i64], room: &[i64], cover_bits: u64, base: i64) -> Option<Solved> {
    let mut ilp = IlpInstance::new();
    let mut objective = Vec::new();
    let mut vars: Vec<Vec<usize>> = Vec::new();
    let mut load_rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); room.len()];
    let mut cover_rows: BTreeMap<u32, Vec<(usize, i64)>> = (0..64)
        .filter(|&b| cover_bits >> b & 1 == 1)
        .map(|b| (b, Vec::new()))
        .collect();
    for (menu, &count) in menus.iter().zip(sizes) {
        if menu.is_empty() {
            return None;
        }
        let vs: Vec<usize> = menu
            .iter()
            .map(|o| {
                let x = ilp.add_var(0, count);
                if o.size > 0 {
                    objective.push((x, o.size));
                }
                for (i, &l) in o.load.iter().enumerate() {
                    if l > 0 {
                        load_rows[i].push((x, l));
                    }
                }
                for (&b, row) in cover_rows.iter_mut() {
                    if o.serves >> b & 1 == 1 {
                        row.push((x, 1));
                    }
                }
                x
            })
            .collect();
        ilp.add_constraint(vs.iter().map(|&x| (x, 1)).collect(), Relation::Eq, count)
            .expect("variables exist");
        vars.push(vs);
    }
    for (row, &r) in load_rows.into_iter().zip(room) {
        if r < 0 {
            return None;
        }
        if !row.is_empty() {
            ilp.add_constraint(row, Relation::Le, r).expect("variables exist");
        }
    }
    for row in cover_rows.into_values() {
        if row.is_empty() {
            return None;
        }
        ilp.add_constraint(row, Relation::Ge, 1).expect("variables exist");
    }
    let (x, value) = if ilp.num_vars() == 0 {
        (Vec::new(), 0)
    } else {
        ilp.set_objective(objective, Direction::Min).expect("variables exist");
        optimize(&ilp).expect("all bounds are finite")?
    };
    let counts = vars.iter().map(|vs| vs.iter().map(|&v| x[v]).collect()).collect();
    Some(Solved {
        value: base + value,
        counts,
    })
}

// ---------------------------------------------------------------------------
// vertex cover

fn cover_menu(g: &Graph, caps: &[i64], x_list: &[usize], rep: &[usize]) -> Vec<LocalChoice> {
    let in_x = |v: usize| x_list.iter().position(|&x| x == v);
    let in_c: HashSet<usize> = rep.iter().copied().collect();
    let incident: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| in_c.contains(&u) || in_c.contains(&v))
        .collect();
    let mut options = Vec::new();
    let m = rep.len();
    for wmask in 0u32..1 << m {
        let in_w = |v: usize| rep.iter().position(|&c| c == v).is_some_and(|p| wmask >> p & 1 == 1);
        let covered = incident
            .iter()
            .all(|&(u, v)| in_w(u) || in_w(v) || in_x(u).is_some() || in_x(v).is_some());
        if !covered {
            continue;
        }
        let mut lo = vec![0i64; x_list.len()];
        let mut hi = vec![0i64; x_list.len()];
        for &(u, v) in &incident {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(i) = in_x(a) {
                    hi[i] += 1;
                    if !in_w(b) {
                        lo[i] += 1;
                    }
                }
            }
        }
        let found = minimal_feasible(&lo, &hi, |load| {
            let mut net = FlowNetwork::new(2);
            let (src, sink) = (0, 1);
            let mut server: HashMap<usize, usize> = HashMap::new();
            for (p, &c) in rep.iter().enumerate() {
                if wmask >> p & 1 == 1 {
                    let node = net.add_node();
                    net.add_arc(node, sink, caps[c]);
                    server.insert(c, node);
                }
            }
            for (i, &x) in x_list.iter().enumerate() {
                let node = net.add_node();
                net.add_arc(node, sink, load[i]);
                server.insert(x, node);
            }
            let mut arcs = Vec::new();
            for &(u, v) in &incident {
                let e = net.add_node();
                net.add_arc(src, e, 1);
                for end in [u, v] {
                    if let Some(&node) = server.get(&end) {
                        arcs.push((u, v, end, net.add_arc(e, node, 1)));
                    }
                }
            }
            if net.max_flow(src, sink) != incident.len() as i64 {
                return None;
            }
            Some(
                arcs.into_iter()
                    .filter(|&(_, _, _, h)| net.flow(h) == 1)
                    .map(|(u, v, end, _)| (u, v, end))
                    .collect::<Vec<_>>(),
            )
        });
        for (load, picks) in found {
            options.push(LocalChoice {
                size: wmask.count_ones() as i64,
                load,
                serves: 0,
                picks,
                chosen: (0..m).filter(|&p| wmask >> p & 1 == 1).map(|p| rep[p]).collect(),
            });
        }
    }
    options.sort_by_key(|o| o.size);
    prune(options)
}

/// Minimum capacitated vertex cover, or `None` if no cover exists.
/// Requires capacities with `c(v) <= deg(v)` for every non-isolated `v`.
pub fn cvc_vi(g: &Graph) -> Result<Option<(usize, CoverWitness)>> {
    let caps = capacities(g)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 0 && caps[v] > g.degree(v) as i64) {
        return invalid(format!("capacity of vertex {v} exceeds its degree"));
    }
    let s = separator(g);
    let classes = classify_components(g, &s, TypeMode::Capacity)?;
    let sizes: Vec<i64> = classes.iter().map(|c| c.members.len() as i64).collect();
    let s_edges: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| s.contains(&u) && s.contains(&v))
        .collect();

    // (X_S, assignment of separator edges) with distinct residual loads
    let mut guesses: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for xmask in 0u32..1 << s.len() {
        let x_list: Vec<usize> = (0..s.len()).filter(|&i| xmask >> i & 1 == 1).map(|i| s[i]).collect();
        let choices: Vec<Vec<usize>> = s_edges
            .iter()
            .map(|&(u, v)| [u, v].into_iter().filter(|w| x_list.contains(w)).collect())
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut seen = HashSet::new();
        for pick in product(&choices) {
            let mut loads: Vec<usize> = pick.clone();
            loads.sort_unstable();
            if seen.insert(loads) {
                guesses.push((x_list.clone(), pick));
            }
        }
    }

    let menu_cache: HashMap<Vec<usize>, Vec<Vec<LocalChoice>>> = guesses
        .iter()
        .map(|(x, _)| x.clone())
        .collect::<HashSet<_>>()
        .into_par_iter()
        .map(|x_list| {
            let menus = classes.iter().map(|c| cover_menu(g, &caps, &x_list, &c.members[0])).collect();
            (x_list, menus)
        })
        .collect();

    let results: Vec<Option<(i64, usize)>> = guesses
        .par_iter()
        .enumerate()
        .map(|(i, (x_list, pick))| {
            let room: Vec<i64> = x_list
                .iter()
                .map(|&x| caps[x] - pick.iter().filter(|&&p| p == x).count() as i64)
                .collect();
            let menus = &menu_cache[x_list];
            solve_menus(menus, &sizes, &room, 0, x_list.len() as i64).map(|s| (s.value, i))
        })
        .collect();
    let Some((_, best)) = first_min(results) else {
        return Ok(None);
    };
    let (x_list, pick) = &guesses[best];
    let room: Vec<i64> = x_list
        .iter()
        .map(|&x| caps[x] - pick.iter().filter(|&&p| p == x).count() as i64)
        .collect();
    let menus = &menu_cache[x_list];
    let solved = solve_menus(menus, &sizes, &room, 0, x_list.len() as i64).expect("feasible guess");

    let mut cover: Vec<usize> = x_list.clone();
    let mut assignment = vec![usize::MAX; g.m()];
    for (&(u, v), &p) in s_edges.iter().zip(pick) {
        assignment[g.edge_index(u, v).expect("separator edge")] = p;
    }
    instantiate(&classes, menus, &solved, |o, map| {
        cover.extend(o.chosen.iter().map(|&c| map(c)));
        for &(u, v, end) in &o.picks {
            let idx = g.edge_index(map(u), map(v)).expect("edges transfer along isomorphisms");
            assignment[idx] = map(end);
        }
    });
    let witness = CoverWitness {
        cover: VertexSubset::new(cover),
        assignment,
    };
    debug_assert!(witness.assignment.iter().all(|&a| a != usize::MAX));
    Ok(Some((solved.value as usize, witness)))
}

/// Decision version: is there a capacitated vertex cover of size `<= k`?
pub fn cvc_at_most(g: &Graph, k: usize) -> Result<bool> {
    Ok(cvc_vi(g)?.is_some_and(|(size, _)| size <= k))
}

/// Applies `apply` to every chosen option instance with the mapping from
/// the representative to the concrete component.
fn instantiate(classes: &[TypeClass], menus: &[Vec<LocalChoice>], solved: &Solved, mut apply: impl FnMut(&LocalChoice, &dyn Fn(usize) -> usize)) {
    for (t, class) in classes.iter().enumerate() {
        let mut members = class.members.iter();
        for (o, &count) in solved.counts[t].iter().enumerate() {
            for _ in 0..count {
                let member = members.next().expect("counts sum to the class size");
                let map = transfer(&class.members[0], member);
                apply(&menus[t][o], &map);
            }
        }
    }
}

/// Cartesian product of choice lists.
fn product(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                c.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

// ---------------------------------------------------------------------------
// dominating set

/// Menu for domination. `d_list` are separator vertices in the set,
/// `b_list` separator vertices that must be dominated from a component.
fn domination_menu(g: &Graph, caps: &[i64], d_list: &[usize], b_list: &[usize], rep: &[usize]) -> Vec<LocalChoice> {
    let m = rep.len();
    let mut options = Vec::new();
    for dmask in 0u32..1 << m {
        let in_d = |v: usize| rep.iter().position(|&c| c == v).is_some_and(|p| dmask >> p & 1 == 1);
        let clients: Vec<usize> = (0..m).filter(|&p| dmask >> p & 1 == 0).map(|p| rep[p]).collect();
        let ok = clients
            .iter()
            .all(|&c| g.neighbors(c).iter().any(|&w| in_d(w) || d_list.contains(&w)));
        if !ok {
            continue;
        }
        let reach: Vec<usize> = (0..b_list.len())
            .filter(|&i| g.neighbors(b_list[i]).iter().any(|&w| in_d(w)))
            .collect();
        for bsub in 0u64..1 << reach.len() {
            let served: Vec<usize> = (0..reach.len()).filter(|&j| bsub >> j & 1 == 1).map(|j| reach[j]).collect();
            let serves = served.iter().fold(0u64, |acc, &i| acc | 1 << i);
            let lo = vec![0i64; d_list.len()];
            let hi: Vec<i64> = d_list
                .iter()
                .map(|&x| clients.iter().filter(|&&c| g.has_edge(c, x)).count() as i64)
                .collect();
            let found = minimal_feasible(&lo, &hi, |load| {
                let mut net = FlowNetwork::new(2);
                let (src, sink) = (0, 1);
                let mut server: HashMap<usize, usize> = HashMap::new();
                for (p, &c) in rep.iter().enumerate() {
                    if dmask >> p & 1 == 1 {
                        let node = net.add_node();
                        net.add_arc(node, sink, caps[c]);
                        server.insert(c, node);
                    }
                }
                let mut sep_server: HashMap<usize, usize> = HashMap::new();
                for (i, &x) in d_list.iter().enumerate() {
                    let node = net.add_node();
                    net.add_arc(node, sink, load[i]);
                    sep_server.insert(x, node);
                }
                let mut arcs = Vec::new();
                let demand = clients.len() + served.len();
                for &c in &clients {
                    let node = net.add_node();
                    net.add_arc(src, node, 1);
                    for &w in g.neighbors(c) {
                        if let Some(&sv) = server.get(&w).or_else(|| sep_server.get(&w)) {
                            arcs.push((c, w, net.add_arc(node, sv, 1)));
                        }
                    }
                }
                for &i in &served {
                    let b = b_list[i];
                    let node = net.add_node();
                    net.add_arc(src, node, 1);
                    for &w in g.neighbors(b) {
                        if let Some(&sv) = server.get(&w) {
                            arcs.push((b, w, net.add_arc(node, sv, 1)));
                        }
                    }
                }
                if net.max_flow(src, sink) != demand as i64 {
                    return None;
                }
                Some(
                    arcs.into_iter()
                        .filter(|&(_, _, h)| net.flow(h) == 1)
                        .map(|(c, w, _)| (c, c, w))
                        .collect::<Vec<_>>(),
                )
            });
            for (load, picks) in found {
                options.push(LocalChoice {
                    size: dmask.count_ones() as i64,
                    load,
                    serves,
                    picks,
                    chosen: (0..m).filter(|&p| dmask >> p & 1 == 1).map(|p| rep[p]).collect(),
                });
            }
        }
    }
    options.sort_by_key(|o| o.size);
    prune(options)
}

/// Separator roles: in the set, dominated from inside the separator, or
/// dominated from a component.
#[derive(Clone)]
struct DomGuess {
    d_list: Vec<usize>,
    b_list: Vec<usize>,
    /// `(vertex, dominator)` for separator vertices served inside `S`.
    inner: Vec<(usize, usize)>,
}

/// Minimum capacitated dominating set, or `None` if none exists.
pub fn cds_vi(g: &Graph) -> Result<Option<(usize, DominationWitness)>> {
    let caps = capacities(g)?;
    let s = separator(g);
    let classes = classify_components(g, &s, TypeMode::Capacity)?;
    let sizes: Vec<i64> = classes.iter().map(|c| c.members.len() as i64).collect();

    let mut guesses: Vec<DomGuess> = Vec::new();
    for mut code in 0..3usize.pow(s.len() as u32) {
        let (mut d_list, mut a_list, mut b_list) = (Vec::new(), Vec::new(), Vec::new());
        for &v in &s {
            match code % 3 {
                0 => d_list.push(v),
                1 => a_list.push(v),
                _ => b_list.push(v),
            }
            code /= 3;
        }
        let choices: Vec<Vec<usize>> = a_list
            .iter()
            .map(|&a| d_list.iter().copied().filter(|&d| g.has_edge(a, d)).collect())
            .collect();
        if choices.iter().any(|c| c.is_empty()) || b_list.len() > 63 {
            continue;
        }
        let mut seen = HashSet::new();
        for pick in product(&choices) {
            let mut loads = pick.clone();
            loads.sort_unstable();
            if seen.insert(loads) {
                guesses.push(DomGuess {
                    d_list: d_list.clone(),
                    b_list: b_list.clone(),
                    inner: a_list.iter().copied().zip(pick).collect(),
                });
            }
        }
    }

    let keys: HashSet<(Vec<usize>, Vec<usize>)> = guesses.iter().map(|q| (q.d_list.clone(), q.b_list.clone())).collect();
    let menu_cache: HashMap<(Vec<usize>, Vec<usize>), Vec<Vec<LocalChoice>>> = keys
        .into_par_iter()
        .map(|(d, b)| {
            let menus = classes
                .iter()
                .map(|c| domination_menu(g, &caps, &d, &b, &c.members[0]))
                .collect();
            ((d, b), menus)
        })
        .collect();

    let room_of = |q: &DomGuess| -> Vec<i64> {
        q.d_list
            .iter()
            .map(|&x| caps[x] - q.inner.iter().filter(|&&(_, d)| d == x).count() as i64)
            .collect()
    };
    let solve_guess = |q: &DomGuess| {
        let menus = &menu_cache[&(q.d_list.clone(), q.b_list.clone())];
        let bits = if q.b_list.is_empty() { 0 } else { u64::MAX >> (64 - q.b_list.len()) };
        solve_menus(menus, &sizes, &room_of(q), bits, q.d_list.len() as i64)
    };
    let results: Vec<Option<(i64, usize)>> = guesses
        .par_iter()
        .enumerate()
        .map(|(i, q)| solve_guess(q).map(|s| (s.value, i)))
        .collect();
    let Some((_, best)) = first_min(results) else {
        return Ok(None);
    };
    let q = &guesses[best];
    let solved = solve_guess(q).expect("feasible guess");
    let menus = &menu_cache[&(q.d_list.clone(), q.b_list.clone())];

    let mut dset = q.d_list.clone();
    let mut dominator: Vec<usize> = (0..g.n()).collect();
    let mut settled = vec![false; g.n()];
    for &(a, d) in &q.inner {
        dominator[a] = d;
        settled[a] = true;
    }
    instantiate(&classes, menus, &solved, |o, map| {
        dset.extend(o.chosen.iter().map(|&c| map(c)));
        for &(c, _, w) in &o.picks {
            let (c, w) = (map(c), map(w));
            // a separator vertex may be served by several components; the
            // first one wins and the others simply carry spare capacity
            if !settled[c] {
                dominator[c] = w;
                settled[c] = true;
            }
        }
    });
    let witness = DominationWitness {
        dset: VertexSubset::new(dset),
        dominator,
    };
    Ok(Some((solved.value as usize, witness)))
}

/// Decision version: is there a capacitated dominating set of size `<= k`?
pub fn cds_at_most(g: &Graph, k: usize) -> Result<bool> {
    Ok(cds_vi(g)?.is_some_and(|(size, _)| size <= k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_examples() {
        let p3 = Graph::path(3).with_capacities(vec![1, 2, 1]).unwrap();
        let (size, w) = cvc_vi(&p3).unwrap().unwrap();
        assert_eq!((size, w.cover.to_vec()), (1, vec![1]));
        let p3 = Graph::path(3).with_capacities(vec![1, 1, 1]).unwrap();
        assert_eq!(cvc_vi(&p3).unwrap().unwrap().0, 2);
        let k3 = Graph::complete(3).with_capacities(vec![1, 1, 1]).unwrap();
        assert_eq!(cvc_vi(&k3).unwrap().unwrap().0, 3);
        let too_big = Graph::path(2).with_capacities(vec![2, 1]).unwrap();
        assert!(cvc_vi(&too_big).is_err());
        assert!(cvc_vi(&Graph::path(3)).is_err());
    }

    #[test]
    fn domination_examples() {
        let star = Graph::star(3).with_capacities(vec![3, 1, 1, 1]).unwrap();
        assert_eq!(cds_vi(&star).unwrap().unwrap().0, 1);
        let star = Graph::star(3).with_capacities(vec![2, 1, 1, 1]).unwrap();
        assert_eq!(cds_vi(&star).unwrap().unwrap().0, 2);
        let k2 = Graph::complete(2).with_capacities(vec![1, 1]).unwrap();
        assert_eq!(cds_vi(&k2).unwrap().unwrap().0, 1);
        assert!(cds_at_most(&k2, 1).unwrap());
        assert!(!cds_at_most(&k2, 0).unwrap());
    }

    #[test]
    fn box_minimal_vectors() {
        let found = minimal_feasible(&[0, 0], &[2, 2], |v| (v[0] + v[1] >= 2).then_some(()));
        let vs: Vec<Vec<i64>> = found.into_iter().map(|(v, _)| v).collect();
        assert_eq!(vs, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
