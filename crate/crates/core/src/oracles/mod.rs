//! Brute-force reference solvers and certificate verifiers.
//!
//! Nothing here calls into the solver modules, the type system or the ILP
//! engine; only raw adjacency queries on [`Graph`](crate::graph::Graph) are
//! shared. Every oracle checks its [`OracleBudget`] up front and refuses
//! oversized instances with [`Error::BudgetExceeded`].

mod capacitated;
mod coloring;
mod combinatorial;
mod structural;
pub mod verify;

pub use capacitated::{oracle_cds, oracle_cvc};
pub use coloring::{oracle_ecp, oracle_eqcoloring, oracle_precoloring};
pub use combinatorial::{
    oracle_3dm, oracle_bin_packing, oracle_mmoo, oracle_motif, oracle_partition, oracle_steiner_forest,
    oracle_usf,
};
pub use structural::{
    oracle_bandwidth, oracle_imbalance, oracle_mcis, oracle_mcs, oracle_treedepth, oracle_vertex_cover,
    oracle_vertex_integrity,
};

use crate::error::{Error, Result};

/// Size limits beyond which oracles refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_orderings: u64,
    /// Cap on explored nodes for the pruned searches (orientations,
    /// packings, partial injections).
    pub max_search_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 8,
            max_edges: 10,
            max_orderings: 40320,
            max_search_nodes: 50_000_000,
        }
    }
}

impl OracleBudget {
    /// A budget large enough for the reduction outputs used in tests.
    pub fn generous() -> Self {
        OracleBudget {
            max_vertices: 20,
            max_edges: 64,
            max_orderings: 40320,
            max_search_nodes: 200_000_000,
        }
    }

    /// Defaults overridden by `VIFORGE_ORACLE_MAX_VERTICES`,
    /// `VIFORGE_ORACLE_MAX_EDGES`, `VIFORGE_ORACLE_MAX_ORDERINGS` and
    /// `VIFORGE_ORACLE_MAX_NODES` when set.
    pub fn from_env() -> Result<Self> {
        let mut b = OracleBudget::default();
        let read = |key: &str| -> Result<Option<u64>> {
            match std::env::var(key) {
                Ok(s) => s
                    .trim()
                    .parse::<u64>()
                    .ok()
                    .filter(|&x| x > 0)
                    .map(Some)
                    .ok_or_else(|| Error::InvalidInput(format!("{key} must be a positive integer"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(x) = read("VIFORGE_ORACLE_MAX_VERTICES")? {
            b.max_vertices = x as usize;
        }
        if let Some(x) = read("VIFORGE_ORACLE_MAX_EDGES")? {
            b.max_edges = x as usize;
        }
        if let Some(x) = read("VIFORGE_ORACLE_MAX_ORDERINGS")? {
            b.max_orderings = x;
        }
        if let Some(x) = read("VIFORGE_ORACLE_MAX_NODES")? {
            b.max_search_nodes = x;
        }
        Ok(b)
    }

    pub(crate) fn vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed the limit of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    pub(crate) fn edges(&self, m: usize) -> Result<()> {
        if m > self.max_edges {
            return Err(Error::BudgetExceeded(format!(
                "{m} edges exceed the limit of {}",
                self.max_edges
            )));
        }
        Ok(())
    }

    pub(crate) fn orderings(&self, count: u64) -> Result<()> {
        if count > self.max_orderings {
            return Err(Error::BudgetExceeded(format!(
                "{count} orderings exceed the limit of {}",
                self.max_orderings
            )));
        }
        Ok(())
    }
}

/// Counts search nodes against the budget.
pub(crate) struct NodeMeter {
    left: u64,
}

impl NodeMeter {
    pub fn new(budget: &OracleBudget) -> Self {
        NodeMeter {
            left: budget.max_search_nodes,
        }
    }

    pub fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded("search node limit reached".into()));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Number of injections of a `k`-set into an `n`-set, saturating.
pub(crate) fn falling_factorial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64))
}

/// Advances `perm` to the next permutation in lexicographic order.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Connectivity of `verts` using only edges accepted by `has`.
pub(crate) fn connected_by(verts: &[usize], has: impl Fn(usize, usize) -> bool) -> bool {
    if verts.is_empty() {
        return true;
    }
    let mut reached = vec![false; verts.len()];
    reached[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..verts.len() {
            if !reached[j] && has(verts[i], verts[j]) {
                reached[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == verts.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_enumerated_in_order() {
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(p, vec![2, 1, 0]);
    }

    #[test]
    fn budget_refusals_are_explicit() {
        let b = OracleBudget::default();
        assert!(matches!(b.vertices(9), Err(Error::BudgetExceeded(_))));
        assert!(b.vertices(8).is_ok());
    }
}
