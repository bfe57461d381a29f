//! Per-problem dispatch for `solve`, `oracle` and `verify`.

use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use viforge::format::Instance;
use viforge::oracles::verify::*;
use viforge::oracles::*;
use viforge::poly::{binary_mmoo_vc2, graph_motif_vi3, steiner_forest_xp_vc, usf_solve};
use viforge::solvers::capacitated::{cds_vi, cvc_vi};
use viforge::solvers::coloring::{equitable_coloring_vi, equitable_connected_partition_vi, precoloring_extension_vi};
use viforge::solvers::common_subgraph::{mcis_vi, mcs_vi};
use viforge::solvers::imbalance::imbalance_vi;
use viforge::{vertex_integrity, Edge, Graph};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// Minimum imbalance ordering.
    Imbalance,
    /// Maximum common subgraph of two graphs (edges).
    Mcs,
    /// Maximum common induced subgraph of two graphs (vertices).
    Mcis,
    /// Minimum capacitated vertex cover.
    Cvc,
    /// Minimum capacitated dominating set.
    Cds,
    /// Precoloring extension with `r` colors.
    Prece,
    /// Equitable coloring with `r` colors.
    Eqcol,
    /// Equitable connected partition into `r` parts.
    Ecp,
    /// Graph motif on a vertex-colored graph.
    Motif,
    /// Minimum maximum outdegree orientation with bound `r`.
    Mmoo,
    /// Weighted Steiner forest.
    Sf,
    /// Unweighted Steiner forest.
    Usf,
    /// Vertex integrity.
    Vi,
    /// Bandwidth (oracle only).
    Bandwidth,
    /// Bin packing into `bins` equal bins (oracle only).
    BinPacking,
    /// Partition into two halves of equal size and sum (oracle only).
    Partition,
    /// Perfect 3-dimensional matching (oracle only).
    #[value(name = "3dm")]
    Matching,
}

impl Problem {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// Decision problems report yes/no; the rest report an optimum.
    pub fn is_decision(self) -> bool {
        matches!(
            self,
            Problem::Prece
                | Problem::Eqcol
                | Problem::Ecp
                | Problem::Motif
                | Problem::Mmoo
                | Problem::BinPacking
                | Problem::Partition
                | Problem::Matching
        )
    }
}

/// Parsed instance files for one run.
pub struct Input {
    pub first: Instance,
    pub second: Option<Instance>,
    /// Bound from `--r`, overriding the file's `r` line.
    pub r: Option<u64>,
}

impl Input {
    fn g(&self) -> &Graph {
        &self.first.graph
    }

    fn pair(&self) -> Result<(&Graph, &Graph), Failure> {
        match &self.second {
            Some(h) => Ok((&self.first.graph, &h.graph)),
            None => Err(Failure::Usage("this problem needs a second instance file".into())),
        }
    }

    fn bound(&self) -> Result<u64, Failure> {
        self.r
            .or(self.first.bound)
            .ok_or_else(|| Failure::Usage("missing bound: pass --r or add an `r` line".into()))
    }

    fn colors(&self) -> Result<u32, Failure> {
        u32::try_from(self.bound()?).map_err(|_| Failure::Usage("color bound too large".into()))
    }

    fn precolor(&self) -> Vec<Option<u32>> {
        if self.first.precolor.is_empty() {
            vec![None; self.g().n()]
        } else {
            self.first.precolor.clone()
        }
    }

    fn bins(&self) -> Result<usize, Failure> {
        self.first.bins.ok_or_else(|| Failure::Usage("missing `bins` line".into()))
    }

    fn dim(&self) -> Result<usize, Failure> {
        self.first.dim.ok_or_else(|| Failure::Usage("missing `dim` line".into()))
    }
}

/// Result of a run. `certificate` is `None` for no-instances.
pub struct Outcome {
    pub value: Option<Value>,
    pub certificate: Option<Value>,
}

impl Outcome {
    fn optimum(value: impl Into<Value>, certificate: Value) -> Self {
        Outcome { value: Some(value.into()), certificate: Some(certificate) }
    }

    fn decision(certificate: Option<Value>) -> Self {
        Outcome { value: None, certificate }
    }

    fn optional<T>(found: Option<T>, f: impl FnOnce(T) -> (Value, Value)) -> Self {
        match found.map(f) {
            Some((v, c)) => Outcome::optimum(v, c),
            None => Outcome { value: None, certificate: None },
        }
    }
}

fn edges_json(edges: &[Edge]) -> Value {
    json!(edges)
}

pub fn solve(problem: Problem, input: &Input) -> Result<Outcome, Failure> {
    let g = input.g();
    Ok(match problem {
        Problem::Imbalance => {
            let (v, order) = imbalance_vi(g);
            Outcome::optimum(v, json!({ "ordering": order }))
        }
        Problem::Mcs | Problem::Mcis => {
            let (g1, g2) = input.pair()?;
            let (v, map) = if problem == Problem::Mcs { mcs_vi(g1, g2) } else { mcis_vi(g1, g2) };
            Outcome::optimum(v, json!({ "mapping": map }))
        }
        Problem::Cvc => Outcome::optional(cvc_vi(g)?, |(k, w)| {
            (json!(k), json!({ "cover": w.cover, "assignment": w.assignment }))
        }),
        Problem::Cds => Outcome::optional(cds_vi(g)?, |(k, w)| {
            (json!(k), json!({ "dset": w.dset, "dominator": w.dominator }))
        }),
        Problem::Prece => {
            let found = precoloring_extension_vi(g, &input.precolor(), input.colors()?)?;
            Outcome::decision(found.map(|c| json!({ "coloring": c })))
        }
        Problem::Eqcol => {
            let found = equitable_coloring_vi(g, input.colors()?)?;
            Outcome::decision(found.map(|c| json!({ "coloring": c })))
        }
        Problem::Ecp => {
            let found = equitable_connected_partition_vi(g, input.bound()? as usize)?;
            Outcome::decision(found.map(|p| json!({ "parts": p })))
        }
        Problem::Motif => {
            let found = graph_motif_vi3(g, &input.first.motif)?;
            Outcome::decision(found.map(|s| json!({ "vertices": s })))
        }
        Problem::Mmoo => {
            let found = binary_mmoo_vc2(g, input.bound()?)?;
            Outcome::decision(found.map(|o| json!({ "orientation": o })))
        }
        Problem::Sf => Outcome::optional(steiner_forest_xp_vc(g, &input.first.terminals)?, |(w, e)| {
            (json!(w), json!({ "edges": edges_json(&e) }))
        }),
        Problem::Usf => Outcome::optional(usf_solve(g, &input.first.terminals)?, |(w, e)| {
            (json!(w), json!({ "edges": edges_json(&e) }))
        }),
        Problem::Vi => {
            let (k, set) = vertex_integrity(g);
            Outcome::optimum(k, json!({ "separator": set.separator }))
        }
        Problem::Bandwidth | Problem::BinPacking | Problem::Partition | Problem::Matching => {
            return Err(Failure::Usage(format!("no solver for {}; use `oracle`", problem.name())));
        }
    })
}

pub fn oracle(problem: Problem, input: &Input) -> Result<Outcome, Failure> {
    let b = OracleBudget::from_env()?;
    let g = input.g();
    Ok(match problem {
        Problem::Imbalance => {
            let (v, order) = oracle_imbalance(g, &b)?;
            Outcome::optimum(v, json!({ "ordering": order }))
        }
        Problem::Mcs | Problem::Mcis => {
            let (g1, g2) = input.pair()?;
            let (v, map) = if problem == Problem::Mcs { oracle_mcs(g1, g2, &b)? } else { oracle_mcis(g1, g2, &b)? };
            Outcome::optimum(v, json!({ "mapping": map }))
        }
        Problem::Cvc => Outcome::optional(oracle_cvc(g, &b)?, |(k, cover, assignment)| {
            (json!(k), json!({ "cover": cover, "assignment": assignment }))
        }),
        Problem::Cds => Outcome::optional(oracle_cds(g, &b)?, |(k, dset, dominator)| {
            (json!(k), json!({ "dset": dset, "dominator": dominator }))
        }),
        Problem::Prece => {
            let found = oracle_precoloring(g, &input.precolor(), input.colors()?, &b)?;
            Outcome::decision(found.map(|c| json!({ "coloring": c })))
        }
        Problem::Eqcol => {
            let found = oracle_eqcoloring(g, input.colors()?, &b)?;
            Outcome::decision(found.map(|c| json!({ "coloring": c })))
        }
        Problem::Ecp => {
            let found = oracle_ecp(g, input.bound()? as usize, &b)?;
            Outcome::decision(found.map(|p| json!({ "parts": p })))
        }
        Problem::Motif => {
            let found = oracle_motif(g, &input.first.motif, &b)?;
            Outcome::decision(found.map(|s| json!({ "vertices": s })))
        }
        Problem::Mmoo => {
            let found = oracle_mmoo(g, input.bound()?, &b)?;
            Outcome::decision(found.map(|o| json!({ "orientation": o })))
        }
        Problem::Sf => Outcome::optional(oracle_steiner_forest(g, &input.first.terminals, &b)?, |(w, e)| {
            (json!(w), json!({ "edges": edges_json(&e) }))
        }),
        Problem::Usf => Outcome::optional(oracle_usf(g, &input.first.terminals, &b)?, |(w, e)| {
            (json!(w), json!({ "edges": edges_json(&e) }))
        }),
        Problem::Vi => Outcome::optimum(oracle_vertex_integrity(g, &b)?, json!({})),
        Problem::Bandwidth => {
            let (v, order) = oracle_bandwidth(g, &b)?;
            Outcome::optimum(v, json!({ "ordering": order }))
        }
        Problem::BinPacking => {
            let found = oracle_bin_packing(&input.first.items, input.bins()?, &b)?;
            Outcome::decision(found.map(|bins| json!({ "bins": bins })))
        }
        Problem::Partition => {
            let found = oracle_partition(&input.first.items, true, &b)?;
            Outcome::decision(found.map(|s| json!({ "subset": s })))
        }
        Problem::Matching => {
            let found = oracle_3dm(input.dim()?, &input.first.triples, &b)?;
            Outcome::decision(found.map(|t| json!({ "triples": t })))
        }
    })
}

fn field<T: DeserializeOwned>(cert: &Value, name: &str) -> Result<T, Failure> {
    let raw = cert
        .get(name)
        .ok_or_else(|| Failure::Usage(format!("certificate lacks `{name}`")))?;
    serde_json::from_value(raw.clone()).map_err(|e| Failure::Usage(format!("certificate field `{name}`: {e}")))
}

fn claimed(value: Option<u64>) -> Result<u64, Failure> {
    value.ok_or_else(|| Failure::Usage("record lacks a numeric `value`".into()))
}

fn matches_size(len: usize, value: Option<u64>) -> Verdict {
    match value {
        Some(v) if v as usize != len => Err(format!("certificate has size {len}, record claims {v}")),
        _ => Ok(()),
    }
}

/// Checks a certificate, given either as a full result record or as the
/// bare certificate object.
pub fn verify(problem: Problem, input: &Input, record: &Value) -> Result<Verdict, Failure> {
    let (cert, value) = match record.get("certificate") {
        Some(c) => (c, record.get("value").and_then(Value::as_u64)),
        None => (record, None),
    };
    if cert.is_null() {
        return Ok(Err("record holds no certificate".into()));
    }
    let g = input.g();
    Ok(match problem {
        Problem::Imbalance => verify_imbalance(g, &field::<Vec<usize>>(cert, "ordering")?, claimed(value)?),
        Problem::Mcs | Problem::Mcis => {
            let (g1, g2) = input.pair()?;
            let map: Vec<(usize, usize)> = field(cert, "mapping")?;
            let v = claimed(value)? as usize;
            if problem == Problem::Mcs {
                verify_mcs(g1, g2, &map, v)
            } else {
                verify_mcis(g1, g2, &map, v)
            }
        }
        Problem::Cvc => {
            let cover: Vec<usize> = field(cert, "cover")?;
            verify_cvc(g, &cover, &field::<Vec<usize>>(cert, "assignment")?).and(matches_size(cover.len(), value))
        }
        Problem::Cds => {
            let dset: Vec<usize> = field(cert, "dset")?;
            verify_cds(g, &dset, &field::<Vec<usize>>(cert, "dominator")?).and(matches_size(dset.len(), value))
        }
        Problem::Prece => verify_precoloring(g, &input.precolor(), input.colors()?, &field::<Vec<u32>>(cert, "coloring")?),
        Problem::Eqcol => verify_eqcoloring(g, input.colors()?, &field::<Vec<u32>>(cert, "coloring")?),
        Problem::Ecp => verify_ecp(g, input.bound()? as usize, &field::<Vec<Vec<usize>>>(cert, "parts")?),
        Problem::Motif => verify_motif(g, &input.first.motif, &field::<Vec<usize>>(cert, "vertices")?),
        Problem::Mmoo => verify_mmoo(g, input.bound()?, &field::<Vec<bool>>(cert, "orientation")?),
        Problem::Sf => verify_steiner_forest(g, &input.first.terminals, &field::<Vec<Edge>>(cert, "edges")?, claimed(value)?),
        Problem::Usf => {
            let unit = g.clone().without_weights();
            verify_steiner_forest(&unit, &input.first.terminals, &field::<Vec<Edge>>(cert, "edges")?, claimed(value)?)
        }
        Problem::Vi => verify_vi_set(g, &field::<Vec<usize>>(cert, "separator")?, claimed(value)? as usize),
        Problem::Bandwidth => verify_bandwidth(g, &field::<Vec<usize>>(cert, "ordering")?, claimed(value)? as usize),
        Problem::BinPacking => verify_bin_packing(&input.first.items, input.bins()?, &field::<Vec<usize>>(cert, "bins")?),
        Problem::Partition => check_partition(&input.first.items, &field::<Vec<usize>>(cert, "subset")?),
        Problem::Matching => verify_3dm(input.dim()?, &input.first.triples, &field::<Vec<usize>>(cert, "triples")?),
    })
}

fn check_partition(items: &[u64], subset: &[usize]) -> Verdict {
    let mut seen = vec![false; items.len()];
    for &i in subset {
        if i >= items.len() || std::mem::replace(&mut seen[i], true) {
            return Err(format!("bad or repeated item index {i}"));
        }
    }
    let total: u64 = items.iter().sum();
    let side: u64 = subset.iter().map(|&i| items[i]).sum();
    if 2 * subset.len() != items.len() {
        return Err(format!("{} of {} items chosen", subset.len(), items.len()));
    }
    if 2 * side != total {
        return Err(format!("side sums to {side}, total is {total}"));
    }
    Ok(())
}
