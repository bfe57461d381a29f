//! Precoloring Extension, Equitable Coloring and Equitable Connected
//! Partition parameterized by vertex integrity.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::ilp::{feasible, IlpInstance, Relation};
use crate::integrity::vertex_integrity;
use crate::types::{canonical_type_unchecked, classify_components, TypeClass, TypeMode};

fn separator(g: &Graph) -> (usize, Vec<usize>) {
    let (k, set) = vertex_integrity(g);
    (k, set.separator.to_vec())
}

/// Set partitions of `items` into blocks that are independent in `g`,
/// with at most `max_blocks` blocks.
fn independent_partitions(g: &Graph, items: &[usize], max_blocks: usize, independent: bool) -> Vec<Vec<Vec<usize>>> {
    fn go(
        g: &Graph,
        items: &[usize],
        i: usize,
        blocks: &mut Vec<Vec<usize>>,
        max_blocks: usize,
        independent: bool,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        let v = items[i];
        for b in 0..blocks.len() {
            if independent && blocks[b].iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            blocks[b].push(v);
            go(g, items, i + 1, blocks, max_blocks, independent, out);
            blocks[b].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![v]);
            go(g, items, i + 1, blocks, max_blocks, independent, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    go(g, items, 0, &mut Vec::new(), max_blocks, independent, &mut out);
    out
}

/// Ways to split blocks into a "large" group of at most `large` blocks and
/// a "small" group of at most `small` blocks.
fn size_assignments(blocks: usize, large: usize, small: usize) -> Vec<Vec<bool>> {
    (0u32..1 << blocks)
        .map(|mask| (0..blocks).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|big| {
            let b = big.iter().filter(|&&x| x).count();
            b <= large && blocks - b <= small
        })
        .collect()
}

// ---------------------------------------------------------------------------
// precoloring extension

/// Proper `r`-coloring (colors `1..=r`) extending `precolor`, if any.
pub fn precoloring_extension_vi(g: &Graph, precolor: &[Option<u32>], r: u32) -> Result<Option<Vec<u32>>> {
    let n = g.n();
    if precolor.len() != n {
        return invalid("precoloring length differs from vertex count");
    }
    if let Some(v) = (0..n).find(|&v| precolor[v].is_some_and(|c| c == 0 || c > r)) {
        return invalid(format!("precolor of vertex {v} is outside 1..={r}"));
    }
    if g.edges().iter().any(|&(u, v)| precolor[u].is_some() && precolor[u] == precolor[v]) {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (k, s) = separator(g);
    let mut in_s = vec![false; n];
    for &v in &s {
        in_s[v] = true;
    }
    let lists: Vec<Vec<u32>> = (0..n)
        .map(|v| {
            let top = if in_s[v] { r } else { r.min(k as u32) };
            (1..=top)
                .filter(|&c| g.neighbors(v).iter().all(|&u| precolor[u] != Some(c)))
                .collect()
        })
        .collect();

    let mut color: Vec<u32> = precolor.iter().map(|p| p.unwrap_or(0)).collect();
    let mut active: Vec<bool> = precolor.iter().map(|p| p.is_none()).collect();
    // separator vertices with long lists can always be colored last
    let mut deleted = Vec::new();
    for &v in &s {
        if active[v] && lists[v].len() >= 2 * k {
            active[v] = false;
            deleted.push(v);
        }
    }
    let s_rest: Vec<usize> = s.iter().copied().filter(|&v| active[v]).collect();
    let blocked: Vec<bool> = (0..n).map(|v| !active[v] || in_s[v]).collect();
    let comps: Vec<Vec<usize>> = g.components_avoiding(&blocked).into_iter().map(|c| c.to_vec()).collect();

    if !color_separator(g, &lists, &s_rest, 0, &comps, &mut color) {
        return Ok(None);
    }
    for &v in deleted.iter().rev() {
        let c = lists[v]
            .iter()
            .copied()
            .find(|&c| g.neighbors(v).iter().all(|&u| color[u] != c))
            .expect("a long list always keeps a free color");
        color[v] = c;
    }
    Ok(Some(color))
}

fn color_separator(g: &Graph, lists: &[Vec<u32>], s: &[usize], i: usize, comps: &[Vec<usize>], color: &mut [u32]) -> bool {
    if i == s.len() {
        let snapshot = color.to_vec();
        for comp in comps {
            if !list_color(g, lists, comp, 0, color) {
                color.copy_from_slice(&snapshot);
                return false;
            }
        }
        return true;
    }
    let v = s[i];
    for &c in &lists[v] {
        if g.neighbors(v).iter().any(|&u| color[u] == c) {
            continue;
        }
        color[v] = c;
        if color_separator(g, lists, s, i + 1, comps, color) {
            return true;
        }
    }
    color[v] = 0;
    false
}

fn list_color(g: &Graph, lists: &[Vec<u32>], verts: &[usize], i: usize, color: &mut [u32]) -> bool {
    if i == verts.len() {
        return true;
    }
    let v = verts[i];
    for &c in &lists[v] {
        if g.neighbors(v).iter().any(|&u| color[u] == c) {
            continue;
        }
        color[v] = c;
        if list_color(g, lists, verts, i + 1, color) {
            return true;
        }
    }
    color[v] = 0;
    false
}

// ---------------------------------------------------------------------------
// equitable coloring

/// Colorings of a representative component by colors `0..=palette`
/// (`0` only when `allow_blank`), proper inside the component and against
/// the colored separator; one witness per color-count vector.
fn count_menu(
    g: &Graph,
    rep: &[usize],
    palette: u32,
    allow_blank: bool,
    s_color: &HashMap<usize, u32>,
) -> Vec<(Vec<i64>, Vec<u32>)> {
    let mut seen: BTreeMap<Vec<i64>, Vec<u32>> = BTreeMap::new();
    let mut mu = vec![0u32; rep.len()];
    fn go(
        g: &Graph,
        rep: &[usize],
        i: usize,
        palette: u32,
        allow_blank: bool,
        s_color: &HashMap<usize, u32>,
        mu: &mut [u32],
        seen: &mut BTreeMap<Vec<i64>, Vec<u32>>,
    ) {
        if i == rep.len() {
            let mut counts = vec![0i64; palette as usize];
            for &c in mu.iter() {
                if c > 0 {
                    counts[c as usize - 1] += 1;
                }
            }
            seen.entry(counts).or_insert_with(|| mu.to_vec());
            return;
        }
        let v = rep[i];
        let start = if allow_blank { 0 } else { 1 };
        for c in start..=palette {
            if c > 0 {
                let clash = g.neighbors(v).iter().any(|&u| {
                    s_color.get(&u) == Some(&c) || rep[..i].iter().position(|&w| w == u).is_some_and(|j| mu[j] == c)
                });
                if clash {
                    continue;
                }
            }
            mu[i] = c;
            go(g, rep, i + 1, palette, allow_blank, s_color, mu, seen);
        }
        mu[i] = 0;
    }
    go(g, rep, 0, palette, allow_blank, s_color, &mut mu, &mut seen);
    seen.into_iter().collect()
}

/// Colors the components so every color `i` receives exactly `need[i]`
/// vertices. Returns per-vertex colors for component vertices (others 0).
fn fill_counts(
    g: &Graph,
    classes: &[TypeClass],
    palette: u32,
    allow_blank: bool,
    s_color: &HashMap<usize, u32>,
    need: &[i64],
) -> Option<Vec<u32>> {
    if need.iter().any(|&x| x < 0) {
        return None;
    }
    let menus: Vec<Vec<(Vec<i64>, Vec<u32>)>> = classes
        .iter()
        .map(|c| count_menu(g, &c.members[0], palette, allow_blank, s_color))
        .collect();
    let mut ilp = IlpInstance::new();
    let mut vars = Vec::new();
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); palette as usize];
    for (class, menu) in classes.iter().zip(&menus) {
        let d = class.members.len() as i64;
        let vs: Vec<usize> = menu
            .iter()
            .map(|(counts, _)| {
                let x = ilp.add_var(0, d);
                for (i, &c) in counts.iter().enumerate() {
                    if c > 0 {
                        rows[i].push((x, c));
                    }
                }
                x
            })
            .collect();
        if vs.is_empty() {
            return None;
        }
        ilp.add_constraint(vs.iter().map(|&x| (x, 1)).collect(), Relation::Eq, d)
            .expect("variables exist");
        vars.push(vs);
    }
    for (row, &target) in rows.into_iter().zip(need) {
        if row.is_empty() {
            if target != 0 {
                return None;
            }
            continue;
        }
        ilp.add_constraint(row, Relation::Eq, target).expect("variables exist");
    }
    let x = feasible(&ilp).expect("all bounds are finite")?;
    let mut color = vec![0u32; g.n()];
    for ((class, menu), vs) in classes.iter().zip(&menus).zip(&vars) {
        let mut members = class.members.iter();
        for ((_, mu), &var) in menu.iter().zip(vs) {
            for _ in 0..x[var] {
                let member = members.next().expect("counts sum to the class size");
                for (p, &v) in member.iter().enumerate() {
                    color[v] = mu[p];
                }
            }
        }
    }
    Some(color)
}

/// Proper `r`-coloring whose classes all have `⌊n/r⌋` or `⌈n/r⌉`
/// vertices, if any.
pub fn equitable_coloring_vi(g: &Graph, r: u32) -> Result<Option<Vec<u32>>> {
    if r == 0 {
        return invalid("r must be positive");
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (k, s) = separator(g);
    let classes = classify_components(g, &s, TypeMode::Plain)?;
    let ru = r as usize;
    let (lo, hi, b) = ((n / ru) as i64, n.div_ceil(ru) as i64, n % ru);

    if ru <= 2 * k {
        // every color is explicit; colors 1..=b take the larger size
        let mut guesses = Vec::new();
        for blocks in independent_partitions(g, &s, ru, true) {
            for big in size_assignments(blocks.len(), b, ru - b) {
                guesses.push((blocks.clone(), big));
            }
        }
        let found = guesses.par_iter().find_map_first(|(blocks, big)| {
            let s_color = label_blocks(blocks, big, b as u32);
            let need: Vec<i64> = (1..=r)
                .map(|c| {
                    let target = if (c as usize) <= b { hi } else { lo };
                    target - s_color.values().filter(|&&x| x == c).count() as i64
                })
                .collect();
            let mut color = fill_counts(g, &classes, r, false, &s_color, &need)?;
            for (&v, &c) in &s_color {
                color[v] = c;
            }
            Some(color)
        });
        return Ok(found);
    }

    // r > 2k: k explicit classes cover S, the rest is filled round robin
    let spare = ru - k;
    let a_lo = b.saturating_sub(spare);
    let a_hi = b.min(k);
    let mut guesses = Vec::new();
    for a in a_lo..=a_hi {
        for blocks in independent_partitions(g, &s, k, true) {
            for big in size_assignments(blocks.len(), a, k - a) {
                guesses.push((a, blocks.clone(), big));
            }
        }
    }
    let found = guesses.par_iter().find_map_first(|(a, blocks, big)| {
        let s_color = label_blocks(blocks, big, *a as u32);
        let need: Vec<i64> = (1..=k as u32)
            .map(|c| {
                let target = if (c as usize) <= *a { hi } else { lo };
                target - s_color.values().filter(|&&x| x == c).count() as i64
            })
            .collect();
        let mut color = fill_counts(g, &classes, k as u32, true, &s_color, &need)?;
        for (&v, &c) in &s_color {
            color[v] = c;
        }
        Some(color)
    });
    let Some(mut color) = found else {
        return Ok(None);
    };
    // components of G - S are smaller than the number of filler colors,
    // so consecutive vertices of one component never share a color
    let mut i = 0usize;
    for class in &classes {
        for member in &class.members {
            for &v in member {
                if color[v] == 0 {
                    color[v] = (k + i % spare + 1) as u32;
                    i += 1;
                }
            }
        }
    }
    Ok(Some(color))
}

/// Assigns colors to blocks: large blocks take colors `1..`, small blocks
/// take colors from `first_small` onward.
fn label_blocks(blocks: &[Vec<usize>], big: &[bool], first_small: u32) -> HashMap<usize, u32> {
    let mut next_big = 1;
    let mut next_small = first_small + 1;
    let mut out = HashMap::new();
    for (block, &is_big) in blocks.iter().zip(big) {
        let c = if is_big {
            next_big += 1;
            next_big - 1
        } else {
            next_small += 1;
            next_small - 1
        };
        for &v in block {
            out.insert(v, c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// equitable connected partition

/// Connected vertex sets of exactly `size` vertices that contain `seed`
/// and otherwise use only `allowed` vertices; sets are grown one adjacent
/// vertex at a time, so `seed` itself need not be connected.
fn grow_sets(g: &Graph, seed: &[usize], allowed: &[bool], size: usize) -> Vec<Vec<usize>> {
    if seed.len() > size {
        return Vec::new();
    }
    let mut level: HashSet<Vec<usize>> = HashSet::new();
    let mut start = seed.to_vec();
    start.sort_unstable();
    level.insert(start);
    for _ in seed.len()..size {
        let mut next = HashSet::new();
        for set in &level {
            for &v in set {
                for &w in g.neighbors(v) {
                    if allowed[w] && set.binary_search(&w).is_err() {
                        let mut bigger = set.clone();
                        let at = bigger.binary_search(&w).unwrap_err();
                        bigger.insert(at, w);
                        next.insert(bigger);
                    }
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Vec<usize>> = level.into_iter().filter(|s| g.is_connected_subset(s)).collect();
    out.sort();
    out
}

/// Partition of `verts` into `big` connected parts of size `hi` and
/// `small` connected parts of size `lo`.
fn connected_partition(g: &Graph, verts: &[usize], lo: usize, hi: usize, big: usize, small: usize) -> Option<Vec<Vec<usize>>> {
    let mut free = vec![false; g.n()];
    for &v in verts {
        free[v] = true;
    }
    let mut parts = Vec::new();
    if partition_search(g, &mut free, lo, hi, big, small, &mut parts) {
        Some(parts)
    } else {
        None
    }
}

fn partition_search(
    g: &Graph,
    free: &mut [bool],
    lo: usize,
    hi: usize,
    big: usize,
    small: usize,
    parts: &mut Vec<Vec<usize>>,
) -> bool {
    let Some(v) = free.iter().position(|&f| f) else {
        return big == 0 && small == 0;
    };
    let mut sizes = Vec::new();
    if big > 0 {
        sizes.push((hi, big - 1, small));
    }
    if small > 0 && (lo != hi || big == 0) {
        sizes.push((lo, big, small - 1));
    }
    for (size, b, s) in sizes {
        for set in grow_sets(g, &[v], free, size) {
            for &u in &set {
                free[u] = false;
            }
            parts.push(set.clone());
            if partition_search(g, free, lo, hi, b, s, parts) {
                return true;
            }
            parts.pop();
            for &u in &set {
                free[u] = true;
            }
        }
    }
    false
}

/// Partition of `V` into `r` connected parts of sizes `⌊n/r⌋` or
/// `⌈n/r⌉`, if any. Requires `1 <= r <= n`.
pub fn equitable_connected_partition_vi(g: &Graph, r: usize) -> Result<Option<Vec<Vec<usize>>>> {
    let n = g.n();
    if r == 0 || r > n {
        return invalid("r must satisfy 1 <= r <= n");
    }
    let (k, s) = separator(g);
    let (lo, hi, b) = (n / r, n.div_ceil(r), n % r);
    let all: Vec<usize> = (0..n).collect();
    if r <= k && lo <= k {
        // n < k(k+1): search directly
        return Ok(connected_partition(g, &all, lo, hi, b, r - b));
    }
    if r <= k {
        return Ok(ecp_every_part_meets_separator(g, &s, r, lo, hi, b));
    }
    Ok(ecp_few_parts_meet_separator(g, &s, r, lo, hi, b))
}

/// A locally valid split of one component among the parts: every piece of
/// a part inside the component touches that part's separator block.
struct Split {
    counts: Vec<i64>,
    /// Separator vertex groups joined through one piece.
    joins: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

fn component_splits(g: &Graph, rep: &[usize], part_of: &HashMap<usize, usize>, r: usize) -> Vec<Split> {
    let m = rep.len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut labels = vec![0usize; m];
    loop {
        let mut ok = true;
        let mut joins = Vec::new();
        'parts: for p in 0..r {
            let verts: Vec<usize> = (0..m).filter(|&i| labels[i] == p).map(|i| rep[i]).collect();
            let mut remaining: HashSet<usize> = verts.iter().copied().collect();
            while let Some(&start) = verts.iter().find(|v| remaining.contains(v)) {
                // one piece of part p
                let mut stack = vec![start];
                remaining.remove(&start);
                let mut touch = Vec::new();
                while let Some(v) = stack.pop() {
                    for &w in g.neighbors(v) {
                        if remaining.remove(&w) {
                            stack.push(w);
                        } else if part_of.get(&w) == Some(&p) {
                            touch.push(w);
                        }
                    }
                }
                touch.sort_unstable();
                touch.dedup();
                if touch.is_empty() {
                    ok = false;
                    break 'parts;
                }
                if touch.len() > 1 {
                    joins.push(touch);
                }
            }
        }
        if ok {
            let mut counts = vec![0i64; r];
            for &l in &labels {
                counts[l] += 1;
            }
            joins.sort();
            joins.dedup();
            if seen.insert((counts.clone(), joins.clone())) {
                out.push(Split {
                    counts,
                    joins,
                    labels: labels.clone(),
                });
            }
        }
        let Some(i) = (0..m).rev().find(|&i| labels[i] + 1 < r) else {
            break;
        };
        labels[i] += 1;
        labels[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// Parts larger than any component: each part contains a block of `S`.
/// Guesses the blocks, then a small "connecting core" of component splits
/// that makes every block connected; all other components may use any
/// locally valid split.
fn ecp_every_part_meets_separator(
    g: &Graph,
    s: &[usize],
    r: usize,
    lo: usize,
    hi: usize,
    b: usize,
) -> Option<Vec<Vec<usize>>> {
    let classes = classify_components(g, s, TypeMode::Plain).expect("separator is valid");
    let s_index: HashMap<usize, usize> = s.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut guesses = Vec::new();
    for blocks in independent_partitions(g, s, r, false) {
        if blocks.len() != r {
            continue;
        }
        for big in size_assignments(r, b, r - b) {
            guesses.push((blocks.clone(), big));
        }
    }
    guesses.par_iter().find_map_first(|(blocks, big)| {
        let part_of: HashMap<usize, usize> = blocks
            .iter()
            .enumerate()
            .flat_map(|(p, blk)| blk.iter().map(move |&v| (v, p)))
            .collect();
        let targets: Vec<i64> = (0..r)
            .map(|p| (if big[p] { hi } else { lo }) as i64 - blocks[p].len() as i64)
            .collect();
        if targets.iter().any(|&t| t < 0) {
            return None;
        }
        let splits: Vec<Vec<Split>> = classes
            .iter()
            .map(|c| component_splits(g, &c.members[0], &part_of, r))
            .collect();
        if splits.iter().any(|s| s.is_empty()) {
            return None;
        }
        // candidates that merge something: (class, split)
        let candidates: Vec<(usize, usize)> = splits
            .iter()
            .enumerate()
            .flat_map(|(t, ss)| {
                ss.iter()
                    .enumerate()
                    .filter(|(_, sp)| !sp.joins.is_empty())
                    .map(move |(i, _)| (t, i))
            })
            .collect();
        let mut base = Dsu((0..s.len()).collect());
        for &(u, v) in g.edges() {
            if let (Some(&a), Some(&b)) = (part_of.get(&u), part_of.get(&v)) {
                if a == b {
                    base.union(s_index[&u], s_index[&v]);
                }
            }
        }
        let groups = (0..s.len()).filter(|&i| base.find(i) == i).count();
        let mut core = Vec::new();
        let labels = core_search(&classes, &splits, &candidates, 0, &mut core, base, groups - r, &s_index, &targets, r)?;
        let mut parts: Vec<Vec<usize>> = blocks.clone();
        for (v, p) in labels {
            parts[p].push(v);
        }
        for p in &mut parts {
            p.sort_unstable();
        }
        Some(parts)
    })
}

#[allow(clippy::too_many_arguments)]
fn core_search(
    classes: &[TypeClass],
    splits: &[Vec<Split>],
    candidates: &[(usize, usize)],
    from: usize,
    core: &mut Vec<(usize, usize)>,
    dsu: Dsu,
    merges_left: usize,
    s_index: &HashMap<usize, usize>,
    targets: &[i64],
    r: usize,
) -> Option<Vec<(usize, usize)>> {
    if merges_left == 0 {
        return split_ilp(classes, splits, core, targets, r);
    }
    for (ci, &(t, i)) in candidates.iter().enumerate().skip(from) {
        if core.iter().filter(|&&(tt, _)| tt == t).count() >= classes[t].members.len() {
            continue;
        }
        let mut next = Dsu(dsu.0.clone());
        let mut merged = 0;
        for join in &splits[t][i].joins {
            for w in join.windows(2) {
                if next.union(s_index[&w[0]], s_index[&w[1]]) {
                    merged += 1;
                }
            }
        }
        if merged == 0 {
            continue;
        }
        core.push((t, i));
        let found = core_search(
            classes,
            splits,
            candidates,
            ci + 1,
            core,
            next,
            merges_left.saturating_sub(merged),
            s_index,
            targets,
            r,
        );
        core.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// ILP over split counts; the core splits must each be used at least once.
/// Returns `(vertex, part)` for all component vertices.
fn split_ilp(
    classes: &[TypeClass],
    splits: &[Vec<Split>],
    core: &[(usize, usize)],
    targets: &[i64],
    r: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut ilp = IlpInstance::new();
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); r];
    let mut vars = Vec::new();
    for (t, (class, ss)) in classes.iter().zip(splits).enumerate() {
        let d = class.members.len() as i64;
        let vs: Vec<usize> = ss
            .iter()
            .enumerate()
            .map(|(i, sp)| {
                let least = core.iter().filter(|&&c| c == (t, i)).count() as i64;
                let x = ilp.add_var(least, d);
                for (p, &c) in sp.counts.iter().enumerate() {
                    if c > 0 {
                        rows[p].push((x, c));
                    }
                }
                x
            })
            .collect();
        ilp.add_constraint(vs.iter().map(|&x| (x, 1)).collect(), Relation::Eq, d)
            .expect("variables exist");
        vars.push(vs);
    }
    for (row, &target) in rows.into_iter().zip(targets) {
        if row.is_empty() {
            if target != 0 {
                return None;
            }
            continue;
        }
        ilp.add_constraint(row, Relation::Eq, target).expect("variables exist");
    }
    let x = feasible(&ilp).expect("all bounds are finite")?;
    let mut out = Vec::new();
    for ((class, ss), vs) in classes.iter().zip(splits).zip(&vars) {
        let mut members = class.members.iter();
        for (sp, &var) in ss.iter().zip(vs) {
            for _ in 0..x[var] {
                let member = members.next().expect("counts sum to the class size");
                out.extend(member.iter().copied().zip(sp.labels.iter().copied()));
            }
        }
    }
    Some(out)
}

/// More parts than separator vertices: guess the parts meeting `S` one by
/// one, then split the remaining components independently and combine
/// their part counts with a dynamic program.
fn ecp_few_parts_meet_separator(
    g: &Graph,
    s: &[usize],
    r: usize,
    lo: usize,
    hi: usize,
    b: usize,
) -> Option<Vec<Vec<usize>>> {
    let mut plans = Vec::new();
    let kp_range = if s.is_empty() { 0..=0 } else { 1..=s.len().min(r) };
    for kp in kp_range {
        for a in 0..=kp.min(b) {
            if b - a > r - kp {
                continue;
            }
            for blocks in independent_partitions(g, s, kp, false) {
                if blocks.len() != kp {
                    continue;
                }
                for big in size_assignments(kp, a, kp - a) {
                    plans.push((blocks.clone(), big));
                }
            }
        }
    }
    let profile_cache: Mutex<HashMap<Vec<u8>, ProfileMenu>> = Mutex::new(HashMap::new());
    plans.par_iter().find_map_first(|(blocks, big)| {
        let mut used = vec![false; g.n()];
        for &v in s {
            used[v] = true;
        }
        let mut chosen = Vec::new();
        extend_parts(g, s, blocks, big, lo, hi, 0, &mut used, &mut chosen, r - blocks.len(), &profile_cache)
    })
}

type ProfileMenu = Arc<BTreeMap<(usize, usize), Vec<Vec<usize>>>>;

#[allow(clippy::too_many_arguments)]
fn extend_parts(
    g: &Graph,
    s: &[usize],
    blocks: &[Vec<usize>],
    big: &[bool],
    lo: usize,
    hi: usize,
    i: usize,
    used: &mut Vec<bool>,
    chosen: &mut Vec<Vec<usize>>,
    rest: usize,
    cache: &Mutex<HashMap<Vec<u8>, ProfileMenu>>,
) -> Option<Vec<Vec<usize>>> {
    if i == blocks.len() {
        let mut parts = split_remainder(g, used, lo, hi, rest, cache)?;
        parts.splice(0..0, chosen.iter().cloned());
        return Some(parts);
    }
    let size = if big[i] { hi } else { lo };
    // candidate extension vertices: a bounded number of components per type
    let need = size.saturating_sub(blocks[i].len());
    let comps = g.components_avoiding(used);
    let mut per_type: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut allowed = vec![false; g.n()];
    for comp in comps {
        let adjacent = comp.iter().any(|&v| g.neighbors(v).iter().any(|w| blocks[i].contains(w)));
        if !adjacent {
            continue;
        }
        let (ty, _) = canonical_type_unchecked(g, s, &comp, TypeMode::Plain);
        let taken = per_type.entry(ty.code).or_default();
        if *taken < need {
            *taken += 1;
            for &v in comp.iter() {
                allowed[v] = true;
            }
        }
    }
    for set in grow_sets(g, &blocks[i], &allowed, size) {
        for &v in &set {
            used[v] = true;
        }
        chosen.push(set.clone());
        let found = extend_parts(g, s, blocks, big, lo, hi, i + 1, used, chosen, rest, cache);
        chosen.pop();
        for &v in &set {
            if !blocks[i].contains(&v) {
                used[v] = false;
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Splits every remaining component into connected parts of sizes `lo` and
/// `hi` so that the total number of parts is `rest`.
fn split_remainder(
    g: &Graph,
    used: &[bool],
    lo: usize,
    hi: usize,
    rest: usize,
    cache: &Mutex<HashMap<Vec<u8>, ProfileMenu>>,
) -> Option<Vec<Vec<usize>>> {
    let comps = g.components_avoiding(used);
    let mut menus: Vec<(Vec<usize>, ProfileMenu)> = Vec::new();
    for comp in &comps {
        let (ty, order) = canonical_type_unchecked(g, &[], comp, TypeMode::Plain);
        let cached = cache.lock().expect("cache lock").get(&ty.code).cloned();
        let menu = cached.unwrap_or_else(|| {
            let built = Arc::new(profiles(g, &order, lo, hi));
            cache.lock().expect("cache lock").insert(ty.code, built.clone());
            built
        });
        menus.push((order, menu));
    }
    // reach[c][j]: `j` parts are achievable with the first `c` components,
    // remembering the previous total and the option taken
    let mut reach: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; rest + 1]];
    reach[0][0] = Some((0, 0));
    for (c, (_, menu)) in menus.iter().enumerate() {
        let mut next = vec![None; rest + 1];
        for j in 0..=rest {
            if reach[c][j].is_none() {
                continue;
            }
            for (o, &(p, q)) in menu.keys().enumerate() {
                if j + p + q <= rest && next[j + p + q].is_none() {
                    next[j + p + q] = Some((j, o));
                }
            }
        }
        reach.push(next);
    }
    reach[menus.len()][rest]?;
    let mut parts = Vec::new();
    let mut j = rest;
    for c in (0..menus.len()).rev() {
        let (prev, o) = reach[c + 1][j].expect("backtracking a reachable state");
        let (order, menu) = &menus[c];
        let witness = menu.values().nth(o).expect("option exists");
        for part in witness {
            parts.push(part.iter().map(|&p| order[p]).collect());
        }
        j = prev;
    }
    Some(parts)
}

/// For one component given in canonical order: achievable `(large, small)`
/// part counts, each with a partition written in canonical positions.
fn profiles(g: &Graph, order: &[usize], lo: usize, hi: usize) -> BTreeMap<(usize, usize), Vec<Vec<usize>>> {
    let m = order.len();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out = BTreeMap::new();
    for p in 0..=m / hi {
        let rem = m - p * hi;
        if lo == hi && p > 0 {
            break;
        }
        if !rem.is_multiple_of(lo) {
            continue;
        }
        let q = rem / lo;
        if let Some(parts) = connected_partition(g, order, lo, hi, p, q) {
            let positional = parts.into_iter().map(|part| part.iter().map(|v| pos[v]).collect()).collect();
            out.insert((p, q), positional);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precoloring_examples() {
        let c4 = Graph::cycle(4);
        let pc = vec![Some(1), None, Some(1), None];
        assert!(precoloring_extension_vi(&c4, &pc, 2).unwrap().is_some());
        let k2 = Graph::complete(2);
        assert_eq!(precoloring_extension_vi(&k2, &[Some(1), Some(1)], 2).unwrap(), None);
        let k3 = Graph::complete(3);
        assert!(precoloring_extension_vi(&k3, &[Some(2), None, None], 3).unwrap().is_some());
        assert!(precoloring_extension_vi(&k2, &[Some(3), None], 2).is_err());
    }

    #[test]
    fn equitable_examples() {
        assert!(equitable_coloring_vi(&Graph::complete(3), 3).unwrap().is_some());
        assert_eq!(equitable_coloring_vi(&Graph::star(3), 2).unwrap(), None);
        assert!(equitable_coloring_vi(&Graph::cycle(4), 2).unwrap().is_some());
        assert!(equitable_coloring_vi(&Graph::path(2), 0).is_err());
    }

    #[test]
    fn connected_partition_examples() {
        assert_eq!(
            equitable_connected_partition_vi(&Graph::path(4), 2).unwrap(),
            Some(vec![vec![0, 1], vec![2, 3]])
        );
        assert_eq!(equitable_connected_partition_vi(&Graph::star(3), 2).unwrap(), None);
        assert_eq!(equitable_connected_partition_vi(&Graph::star(3), 4).unwrap().unwrap().len(), 4);
        assert!(equitable_connected_partition_vi(&Graph::path(2), 3).is_err());
    }
}
