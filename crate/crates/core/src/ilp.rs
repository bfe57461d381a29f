//! Exact integer linear programming over small, bounded domains.
//!
//! Depth-first branch and bound in model variable order. Each node runs
//! bound propagation (interval arithmetic over every row) to a fixpoint.
//! The objective is carried as one more row whose right-hand side tracks
//! the incumbent, so the same propagation prunes nodes whose interval hull
//! cannot beat the best value found so far.

use std::fmt::Write as _;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub terms: Vec<(usize, i64)>,
    pub rel: Relation,
    pub rhs: i64,
}

/// Integer program with per-variable bounds, linear rows and an optional
/// linear objective.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IlpInstance {
    lo: Vec<Option<i64>>,
    hi: Vec<Option<i64>>,
    names: Vec<String>,
    constraints: Vec<Constraint>,
    objective: Option<(Vec<(usize, i64)>, Direction)>,
}

impl IlpInstance {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with inclusive bounds and returns its index.
    pub fn add_var(&mut self, lo: i64, hi: i64) -> usize {
        self.add_var_opt(Some(lo), Some(hi))
    }

    /// Adds a variable whose bounds may be missing; missing bounds must be
    /// implied by the constraints or solving fails.
    pub fn add_var_opt(&mut self, lo: Option<i64>, hi: Option<i64>) -> usize {
        self.lo.push(lo);
        self.hi.push(hi);
        self.names.push(format!("x{}", self.lo.len() - 1));
        self.lo.len() - 1
    }

    pub fn set_name(&mut self, var: usize, name: impl Into<String>) {
        self.names[var] = name.into();
    }

    pub fn num_vars(&self) -> usize {
        self.lo.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self, var: usize) -> (Option<i64>, Option<i64>) {
        (self.lo[var], self.hi[var])
    }

    /// Adds a row; terms on the same variable are merged.
    pub fn add_constraint(&mut self, terms: Vec<(usize, i64)>, rel: Relation, rhs: i64) -> Result<()> {
        let terms = self.normalize(terms)?;
        self.constraints.push(Constraint { terms, rel, rhs });
        Ok(())
    }

    /// Adds a row from a dense coefficient vector of length `p`.
    pub fn add_dense(&mut self, coeffs: &[i64], rel: Relation, rhs: i64) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return invalid("coefficient vector length differs from variable count");
        }
        self.add_constraint(coeffs.iter().copied().enumerate().collect(), rel, rhs)
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, i64)>, dir: Direction) -> Result<()> {
        let terms = self.normalize(terms)?;
        self.objective = Some((terms, dir));
        Ok(())
    }

    pub fn objective(&self) -> Option<&(Vec<(usize, i64)>, Direction)> {
        self.objective.as_ref()
    }

    fn normalize(&self, mut terms: Vec<(usize, i64)>) -> Result<Vec<(usize, i64)>> {
        if let Some(&(v, _)) = terms.iter().find(|&&(v, _)| v >= self.num_vars()) {
            return invalid(format!("variable {v} does not exist"));
        }
        terms.sort_unstable_by_key(|&(v, _)| v);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => out.push((v, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Ok(out)
    }

    /// Value of the objective at `x` (0 without an objective).
    pub fn objective_value(&self, x: &[i64]) -> i64 {
        self.objective
            .as_ref()
            .map_or(0, |(t, _)| t.iter().map(|&(v, c)| c * x[v]).sum())
    }

    /// Plain-text dump, one row per line.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let fmt_terms = |terms: &[(usize, i64)]| -> String {
            if terms.is_empty() {
                return "0".to_string();
            }
            terms
                .iter()
                .enumerate()
                .map(|(i, &(v, c))| {
                    let sign = if c < 0 { "- " } else if i > 0 { "+ " } else { "" };
                    format!("{sign}{} {}", c.abs(), self.names[v])
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        match &self.objective {
            Some((t, Direction::Min)) => writeln!(out, "minimize {}", fmt_terms(t)).unwrap(),
            Some((t, Direction::Max)) => writeln!(out, "maximize {}", fmt_terms(t)).unwrap(),
            None => writeln!(out, "feasibility").unwrap(),
        }
        writeln!(out, "subject to").unwrap();
        for c in &self.constraints {
            let rel = match c.rel {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(out, "  {} {rel} {}", fmt_terms(&c.terms), c.rhs).unwrap();
        }
        writeln!(out, "bounds").unwrap();
        for v in 0..self.num_vars() {
            let show = |b: Option<i64>| b.map_or("inf".to_string(), |x| x.to_string());
            writeln!(out, "  {} <= {} <= {}", show(self.lo[v]), self.names[v], show(self.hi[v])).unwrap();
        }
        out
    }

    /// Checks every bound and row at `x`.
    pub fn is_satisfied(&self, x: &[i64]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        for v in 0..x.len() {
            if self.lo[v].is_some_and(|l| x[v] < l) || self.hi[v].is_some_and(|h| x[v] > h) {
                return false;
            }
        }
        self.constraints.iter().all(|c| {
            let lhs: i128 = c.terms.iter().map(|&(v, a)| a as i128 * x[v] as i128).sum();
            let rhs = c.rhs as i128;
            match c.rel {
                Relation::Le => lhs <= rhs,
                Relation::Ge => lhs >= rhs,
                Relation::Eq => lhs == rhs,
            }
        })
    }
}

/// First feasible point in the search order, or `None` if infeasible.
pub fn feasible(inst: &IlpInstance) -> Result<Option<Vec<i64>>> {
    let mut solver = Solver::new(inst, false)?;
    Ok(solver.solve().map(|(x, _)| x))
}

/// Optimal point and value. Requires an objective.
pub fn optimize(inst: &IlpInstance) -> Result<Option<(Vec<i64>, i64)>> {
    if inst.objective.is_none() {
        return invalid("optimize requires an objective");
    }
    let mut solver = Solver::new(inst, true)?;
    Ok(solver.solve())
}

const INF: i128 = i128::MAX / 8;

/// Row in `Σ a_j x_j <= rhs` form.
struct Row {
    terms: Vec<(usize, i128)>,
    rhs: i128,
}

struct Solver {
    rows: Vec<Row>,
    rows_of: Vec<Vec<usize>>,
    lo: Vec<i128>,
    hi: Vec<i128>,
    trail: Vec<(usize, i128, i128)>,
    objective: Option<(Vec<(usize, i128)>, Direction)>,
    /// Index of the objective cutoff row, if optimizing.
    cutoff: Option<usize>,
    /// Preferred value order per variable: true means descending.
    descending: Vec<bool>,
    best: Option<(Vec<i64>, i64)>,
    optimizing: bool,
    infeasible_bounds: bool,
    queued: Vec<bool>,
}

impl Solver {
    fn new(inst: &IlpInstance, optimizing: bool) -> Result<Self> {
        let p = inst.num_vars();
        let mut rows = Vec::new();
        for c in &inst.constraints {
            let pos: Vec<(usize, i128)> = c.terms.iter().map(|&(v, a)| (v, a as i128)).collect();
            let neg: Vec<(usize, i128)> = pos.iter().map(|&(v, a)| (v, -a)).collect();
            let rhs = c.rhs as i128;
            match c.rel {
                Relation::Le => rows.push(Row { terms: pos, rhs }),
                Relation::Ge => rows.push(Row { terms: neg, rhs: -rhs }),
                Relation::Eq => {
                    rows.push(Row { terms: pos, rhs });
                    rows.push(Row { terms: neg, rhs: -rhs });
                }
            }
        }
        let objective = if optimizing {
            inst.objective
                .as_ref()
                .map(|(t, d)| (t.iter().map(|&(v, a)| (v, a as i128)).collect::<Vec<_>>(), *d))
        } else {
            None
        };
        let mut descending = vec![false; p];
        let mut cutoff = None;
        if let Some((terms, dir)) = &objective {
            for &(v, a) in terms {
                descending[v] = match dir {
                    Direction::Max => a > 0,
                    Direction::Min => a < 0,
                };
            }
            // minimize c.x  <=>  c.x <= bound ; maximize  <=>  -c.x <= bound
            let row_terms = match dir {
                Direction::Min => terms.clone(),
                Direction::Max => terms.iter().map(|&(v, a)| (v, -a)).collect(),
            };
            cutoff = Some(rows.len());
            rows.push(Row {
                terms: row_terms,
                rhs: INF,
            });
        }
        let mut rows_of = vec![Vec::new(); p];
        for (i, r) in rows.iter().enumerate() {
            for &(v, _) in &r.terms {
                rows_of[v].push(i);
            }
        }
        let lo: Vec<i128> = inst.lo.iter().map(|b| b.map_or(-INF, |x| x as i128)).collect();
        let hi: Vec<i128> = inst.hi.iter().map(|b| b.map_or(INF, |x| x as i128)).collect();
        let infeasible_bounds = lo.iter().zip(&hi).any(|(l, h)| l > h);
        let n_rows = rows.len();
        let mut solver = Solver {
            rows,
            rows_of,
            lo,
            hi,
            trail: Vec::new(),
            objective,
            cutoff,
            descending,
            best: None,
            optimizing,
            infeasible_bounds,
            queued: vec![false; n_rows],
        };
        if !solver.infeasible_bounds {
            let all: Vec<usize> = (0..n_rows).collect();
            if !solver.propagate(all) {
                solver.infeasible_bounds = true;
            }
        }
        if !solver.infeasible_bounds {
            if let Some(v) = (0..p).find(|&v| solver.lo[v] <= -INF || solver.hi[v] >= INF) {
                return invalid(format!("variable {v} has no finite bound"));
            }
        }
        Ok(solver)
    }

    fn solve(&mut self) -> Option<(Vec<i64>, i64)> {
        if self.infeasible_bounds {
            return None;
        }
        self.search();
        self.best.take()
    }

    fn set_bounds(&mut self, v: usize, lo: i128, hi: i128) {
        self.trail.push((v, self.lo[v], self.hi[v]));
        self.lo[v] = lo;
        self.hi[v] = hi;
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, lo, hi) = self.trail.pop().expect("trail non-empty");
            self.lo[v] = lo;
            self.hi[v] = hi;
        }
    }

    /// Tightens bounds to a fixpoint; false on a proven contradiction.
    fn propagate(&mut self, start: Vec<usize>) -> bool {
        let mut queue = std::collections::VecDeque::new();
        for r in start {
            if !self.queued[r] {
                self.queued[r] = true;
                queue.push_back(r);
            }
        }
        let mut ok = true;
        while let Some(r) = queue.pop_front() {
            self.queued[r] = false;
            if !ok {
                continue;
            }
            let row = &self.rows[r];
            let mut min_act: i128 = 0;
            let mut inf_terms = 0usize;
            for &(v, a) in &row.terms {
                let m = if a > 0 { self.lo[v] } else { self.hi[v] };
                if m.abs() >= INF {
                    inf_terms += 1;
                } else {
                    min_act += a * m;
                }
            }
            if inf_terms == 0 && min_act > row.rhs {
                ok = false;
                continue;
            }
            if inf_terms > 1 || row.rhs >= INF {
                continue;
            }
            let mut changes = Vec::new();
            for &(v, a) in &row.terms {
                let own = if a > 0 { self.lo[v] } else { self.hi[v] };
                let own_inf = own.abs() >= INF;
                // slack available to this term once the others sit at their minimum
                let rest = if own_inf {
                    min_act
                } else if inf_terms == 0 {
                    min_act - a * own
                } else {
                    continue;
                };
                let room = row.rhs - rest;
                if a > 0 {
                    let ub = room.div_euclid(a);
                    if ub < self.hi[v] {
                        changes.push((v, self.lo[v], ub));
                    }
                } else {
                    let lb = ceil_div(room, a);
                    if lb > self.lo[v] {
                        changes.push((v, lb, self.hi[v]));
                    }
                }
            }
            for (v, lo, hi) in changes {
                let (lo, hi) = (lo.max(self.lo[v]), hi.min(self.hi[v]));
                if lo == self.lo[v] && hi == self.hi[v] {
                    continue;
                }
                if lo > hi {
                    ok = false;
                    break;
                }
                self.set_bounds(v, lo, hi);
                for &rr in &self.rows_of[v] {
                    if !self.queued[rr] {
                        self.queued[rr] = true;
                        queue.push_back(rr);
                    }
                }
            }
        }
        ok
    }

    fn search(&mut self) {
        let Some(v) = (0..self.lo.len()).find(|&v| self.lo[v] < self.hi[v]) else {
            let x: Vec<i64> = self.lo.iter().map(|&b| b as i64).collect();
            let val = self
                .objective
                .as_ref()
                .map_or(0, |(t, _)| t.iter().map(|&(v, a)| a * x[v] as i128).sum::<i128>()) as i64;
            self.best = Some((x, val));
            if let Some(c) = self.cutoff {
                // demand strict improvement from now on
                self.rows[c].rhs = match self.objective.as_ref().map(|o| o.1) {
                    Some(Direction::Max) => -(val as i128) - 1,
                    _ => val as i128 - 1,
                };
            }
            return;
        };
        let (lo, hi) = (self.lo[v], self.hi[v]);
        let values: Box<dyn Iterator<Item = i128>> = if self.descending[v] {
            Box::new((lo..=hi).rev())
        } else {
            Box::new(lo..=hi)
        };
        for val in values {
            let mark = self.trail.len();
            self.set_bounds(v, val, val);
            let mut start = self.rows_of[v].clone();
            if let Some(c) = self.cutoff {
                start.push(c);
            }
            if self.propagate(start) {
                self.search();
            }
            self.undo_to(mark);
            if self.best.is_some() && !self.optimizing {
                return;
            }
            // the cutoff may have tightened: recheck remaining range cheaply
            if let Some(c) = self.cutoff {
                if self.best.is_some() && !self.row_can_hold(c) {
                    return;
                }
            }
        }
    }

    fn row_can_hold(&self, r: usize) -> bool {
        let row = &self.rows[r];
        let min_act: i128 = row
            .terms
            .iter()
            .map(|&(v, a)| a * if a > 0 { self.lo[v] } else { self.hi[v] })
            .sum();
        min_act <= row.rhs
    }
}

/// Smallest integer `x` with `a * x <= room` for `a < 0`.
fn ceil_div(room: i128, a: i128) -> i128 {
    debug_assert!(a < 0);
    -room.div_euclid(-a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut ilp = IlpInstance::new();
        let x = ilp.add_var(0, 5);
        ilp.add_constraint(vec![(x, 1)], Relation::Ge, 1).unwrap();
        ilp.add_constraint(vec![(x, 1)], Relation::Le, 0).unwrap();
        assert_eq!(feasible(&ilp).unwrap(), None);
    }

    #[test]
    fn forced_point() {
        let mut ilp = IlpInstance::new();
        ilp.add_var(2, 2);
        ilp.add_var(2, 2);
        assert_eq!(feasible(&ilp).unwrap(), Some(vec![2, 2]));
    }

    #[test]
    fn equality_first_point() {
        let mut ilp = IlpInstance::new();
        let x = ilp.add_var(0, 4);
        let y = ilp.add_var(0, 4);
        ilp.add_constraint(vec![(x, 1), (y, 2)], Relation::Eq, 4).unwrap();
        assert_eq!(feasible(&ilp).unwrap(), Some(vec![0, 2]));
    }

    #[test]
    fn small_optimizations() {
        let mut ilp = IlpInstance::new();
        let x = ilp.add_var(0, 3);
        let y = ilp.add_var(0, 3);
        ilp.add_constraint(vec![(x, 1), (y, 2)], Relation::Ge, 3).unwrap();
        ilp.set_objective(vec![(x, 1), (y, 1)], Direction::Min).unwrap();
        assert_eq!(optimize(&ilp).unwrap().unwrap().1, 2);

        let mut ilp = IlpInstance::new();
        let x = ilp.add_var(0, 10);
        ilp.add_constraint(vec![(x, 1)], Relation::Le, 7).unwrap();
        ilp.set_objective(vec![(x, 1)], Direction::Max).unwrap();
        assert_eq!(optimize(&ilp).unwrap(), Some((vec![7], 7)));

        let mut ilp = IlpInstance::new();
        ilp.add_var(1, 3);
        ilp.set_objective(vec![], Direction::Min).unwrap();
        assert_eq!(optimize(&ilp).unwrap().unwrap().1, 0);
    }

    #[test]
    fn missing_bounds_are_derived_or_rejected() {
        let mut ilp = IlpInstance::new();
        let x = ilp.add_var_opt(Some(0), None);
        assert!(feasible(&ilp).is_err());
        ilp.add_constraint(vec![(x, 1)], Relation::Le, 3).unwrap();
        assert_eq!(feasible(&ilp).unwrap(), Some(vec![0]));
    }

    #[test]
    fn ceil_division() {
        for room in -20i128..20 {
            for a in -5i128..0 {
                let x = ceil_div(room, a);
                assert!(a * x <= room && a * (x - 1) > room, "room={room} a={a}");
            }
        }
    }

    #[test]
    fn dump_lists_rows() {
        let mut ilp = IlpInstance::new();
        let x = ilp.add_var(0, 1);
        ilp.add_constraint(vec![(x, -2)], Relation::Ge, -1).unwrap();
        ilp.set_objective(vec![(x, 1)], Direction::Max).unwrap();
        let text = ilp.to_lp_string();
        assert!(text.contains("maximize 1 x0"));
        assert!(text.contains("- 2 x0 >= -1"));
    }
}
