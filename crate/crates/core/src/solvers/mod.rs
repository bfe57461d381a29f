//! Fixed-parameter solvers driven by a vi(k)-set, component types and the
//! ILP engine.

pub mod capacitated;
pub mod coloring;
pub mod common_subgraph;
pub mod imbalance;

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// All injective sequences of length `k` drawn from `0..n`, in
/// lexicographic order.
pub(crate) fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, &mut Vec::new(), &mut vec![false; n], &mut out);
    }
    out
}

/// Keeps the first minimum of `(key, payload)` pairs produced in guess
/// order, so parallel evaluation yields the same answer as a sequential
/// scan.
pub(crate) fn first_min<K: Ord, T>(items: impl IntoIterator<Item = Option<(K, T)>>) -> Option<(K, T)> {
    let mut best: Option<(K, T)> = None;
    for (k, t) in items.into_iter().flatten() {
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, t));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(arrangements(4, 2).len(), 12);
        assert_eq!(arrangements(2, 3).len(), 0);
        let picked = first_min(vec![Some((3, 'a')), None, Some((1, 'b')), Some((1, 'c'))]);
        assert_eq!(picked, Some((1, 'b')));
    }
}
