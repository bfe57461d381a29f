use super::{connected_by, NodeMeter, OracleBudget};
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// First proper `r`-coloring (colors `1..=r`, vertices colored in index
/// order, smallest color first) that extends `precolor`.
pub fn oracle_precoloring(
    g: &Graph,
    precolor: &[Option<u32>],
    r: u32,
    budget: &OracleBudget,
) -> Result<Option<Vec<u32>>> {
    budget.vertices(g.n())?;
    if precolor.len() != g.n() {
        return invalid("precoloring length differs from vertex count");
    }
    if precolor.iter().flatten().any(|&c| c == 0 || c > r) {
        return invalid("precolor outside 1..=r");
    }
    let mut color = vec![0u32; g.n()];
    let mut meter = NodeMeter::new(budget);
    let found = color_search(g, 0, r, &mut color, &mut meter, &|v, c, _| {
        v == usize::MAX || precolor[v].is_none_or(|p| p == c)
    })?;
    Ok(found.then_some(color))
}

fn color_search(
    g: &Graph,
    v: usize,
    r: u32,
    color: &mut [u32],
    meter: &mut NodeMeter,
    allowed: &dyn Fn(usize, u32, &[u32]) -> bool,
) -> Result<bool> {
    meter.tick()?;
    if v == g.n() {
        return Ok(allowed(usize::MAX, 0, color));
    }
    for c in 1..=r {
        if g.neighbors(v).iter().any(|&w| w < v && color[w] == c) || !allowed(v, c, color) {
            continue;
        }
        color[v] = c;
        if color_search(g, v + 1, r, color, meter, allowed)? {
            return Ok(true);
        }
    }
    color[v] = 0;
    Ok(false)
}

/// First equitable proper `r`-coloring: every class has `⌊n/r⌋` or
/// `⌈n/r⌉` vertices.
pub fn oracle_eqcoloring(g: &Graph, r: u32, budget: &OracleBudget) -> Result<Option<Vec<u32>>> {
    budget.vertices(g.n())?;
    if r == 0 {
        return invalid("r must be positive");
    }
    let n = g.n();
    let lo = n / r as usize;
    let hi = n.div_ceil(r as usize);
    let mut color = vec![0u32; n];
    let mut meter = NodeMeter::new(budget);
    let found = color_search(g, 0, r, &mut color, &mut meter, &|v, c, color| {
        let count = |c: u32| color.iter().take(n.min(v)).filter(|&&x| x == c).count();
        if v == usize::MAX {
            (1..=r).all(|c| {
                let k = color.iter().filter(|&&x| x == c).count();
                k >= lo && k <= hi
            })
        } else {
            count(c) < hi
        }
    })?;
    Ok(found.then_some(color))
}

/// First partition into `r` connected parts of sizes `⌊n/r⌋` or `⌈n/r⌉`,
/// enumerated as restricted-growth strings.
pub fn oracle_ecp(g: &Graph, r: usize, budget: &OracleBudget) -> Result<Option<Vec<Vec<usize>>>> {
    budget.vertices(g.n())?;
    let n = g.n();
    if r == 0 || r > n {
        return invalid("r must satisfy 1 <= r <= n");
    }
    let hi = n.div_ceil(r);
    let lo = n / r;
    let mut part = vec![0usize; n];
    let mut sizes = vec![0usize; r];
    let mut meter = NodeMeter::new(budget);
    if ecp_search(g, 0, 0, r, lo, hi, &mut part, &mut sizes, &mut meter)? {
        let mut parts = vec![Vec::new(); r];
        for v in 0..n {
            parts[part[v]].push(v);
        }
        return Ok(Some(parts));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn ecp_search(
    g: &Graph,
    v: usize,
    used: usize,
    r: usize,
    lo: usize,
    hi: usize,
    part: &mut [usize],
    sizes: &mut [usize],
    meter: &mut NodeMeter,
) -> Result<bool> {
    meter.tick()?;
    let n = g.n();
    if v == n {
        if used != r || sizes.iter().any(|&s| s < lo || s > hi) {
            return Ok(false);
        }
        let ok = (0..r).all(|p| {
            let verts: Vec<usize> = (0..n).filter(|&u| part[u] == p).collect();
            connected_by(&verts, |a, b| g.has_edge(a, b))
        });
        return Ok(ok);
    }
    // not enough vertices left to open the remaining parts
    if r - used > n - v {
        return Ok(false);
    }
    for p in 0..(used + 1).min(r) {
        if sizes[p] == hi {
            continue;
        }
        part[v] = p;
        sizes[p] += 1;
        let next_used = used.max(p + 1);
        if ecp_search(g, v + 1, next_used, r, lo, hi, part, sizes, meter)? {
            return Ok(true);
        }
        sizes[p] -= 1;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precoloring_examples() {
        let b = OracleBudget::default();
        let c4 = Graph::cycle(4);
        let pc = vec![Some(1), None, Some(1), None];
        assert!(oracle_precoloring(&c4, &pc, 2, &b).unwrap().is_some());
        let k2 = Graph::complete(2);
        assert_eq!(oracle_precoloring(&k2, &[Some(1), Some(1)], 2, &b).unwrap(), None);
        assert!(oracle_precoloring(&k2, &[Some(3), None], 2, &b).is_err());
    }

    #[test]
    fn equitable_examples() {
        let b = OracleBudget::default();
        assert!(oracle_eqcoloring(&Graph::complete(3), 3, &b).unwrap().is_some());
        assert_eq!(oracle_eqcoloring(&Graph::star(3), 2, &b).unwrap(), None);
        assert!(oracle_eqcoloring(&Graph::cycle(4), 2, &b).unwrap().is_some());
    }

    #[test]
    fn connected_partition_examples() {
        let b = OracleBudget::default();
        assert_eq!(
            oracle_ecp(&Graph::path(4), 2, &b).unwrap(),
            Some(vec![vec![0, 1], vec![2, 3]])
        );
        assert_eq!(oracle_ecp(&Graph::star(3), 2, &b).unwrap(), None);
        assert!(oracle_ecp(&Graph::star(3), 4, &b).unwrap().is_some());
    }
}
