//! Plain-text instance format.
//!
//! ```text
//! # comment
//! p <n> <m>          header, first non-comment line
//! e <u> <v> [w]      edge, optionally weighted (all or none)
//! c <v> <cap>        vertex capacity (default 1)
//! col <v> <color>    vertex color (default 0)
//! pc <v> <color>     precolored vertex
//! t <set> <v>        terminal of set <set>
//! m <color> <count>  motif multiplicity
//! r <value>          target bound (orientation out-weight, colors, parts)
//! item <a>           bin packing / partition item
//! bins <t>           bin count
//! dim <n>            3-dimensional matching coordinate range
//! triple <x> <y> <z> 3-dimensional matching triple
//! ```
//!
//! Vertices are 0-based. Terminal sets are listed in increasing set id.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Everything an instance file can carry. Problems read the parts they need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    /// One entry per vertex when any `pc` line is present, else empty.
    pub precolor: Vec<Option<u32>>,
    pub terminals: Vec<Vec<usize>>,
    pub motif: BTreeMap<u32, usize>,
    pub bound: Option<u64>,
    pub items: Vec<u64>,
    pub bins: Option<usize>,
    pub dim: Option<usize>,
    pub triples: Vec<(usize, usize, usize)>,
}

impl Instance {
    pub fn from_graph(graph: Graph) -> Self {
        Instance {
            graph,
            precolor: Vec::new(),
            terminals: Vec::new(),
            motif: BTreeMap::new(),
            bound: None,
            items: Vec::new(),
            bins: None,
            dim: None,
            triples: Vec::new(),
        }
    }
}

fn at(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("line {line}: {msg}"))
}

fn fields<T: std::str::FromStr>(line: usize, tag: &str, rest: &[&str], min: usize, max: usize) -> Result<Vec<T>> {
    if rest.len() < min || rest.len() > max {
        return Err(at(line, format!("`{tag}` expects {min}..={max} numbers, got {}", rest.len())));
    }
    rest.iter()
        .map(|s| s.parse().map_err(|_| at(line, format!("`{s}` is not a valid number"))))
        .collect()
}

/// Parses an instance, reporting the offending line on any error.
pub fn parse(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder = GraphBuilder::new(0);
    let mut edges = 0;
    let mut precolor: Vec<Option<u32>> = Vec::new();
    let mut sets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut inst = Instance::from_graph(Graph::empty(0));

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (tag, rest) = (tokens[0], &tokens[1..]);
        if tag == "p" {
            if header.is_some() {
                return Err(at(line, "second header"));
            }
            let v: Vec<usize> = fields(line, tag, rest, 2, 2)?;
            header = Some((v[0], v[1]));
            builder = GraphBuilder::new(v[0]);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(at(line, "expected header `p <n> <m>` first"));
        };
        let vertex = |v: u64| -> Result<usize> {
            if (v as usize) < n {
                Ok(v as usize)
            } else {
                Err(at(line, format!("vertex {v} out of range for n={n}")))
            }
        };
        match tag {
            "e" => {
                let v: Vec<u64> = fields(line, tag, rest, 2, 3)?;
                let (a, b) = (vertex(v[0])?, vertex(v[1])?);
                let added = match v.get(2) {
                    Some(&w) => builder.add_weighted_edge(a, b, w).map(|_| ()),
                    None => builder.add_edge(a, b).map(|_| ()),
                };
                added.map_err(|e| at(line, strip(e)))?;
                edges += 1;
            }
            "c" => {
                let v: Vec<u64> = fields(line, tag, rest, 2, 2)?;
                let cap = u32::try_from(v[1]).map_err(|_| at(line, "capacity too large"))?;
                builder.set_capacity(vertex(v[0])?, cap).map_err(|e| at(line, strip(e)))?;
            }
            "col" => {
                let v: Vec<u32> = fields(line, tag, rest, 2, 2)?;
                builder.set_color(vertex(v[0] as u64)?, v[1]).map_err(|e| at(line, strip(e)))?;
            }
            "pc" => {
                let v: Vec<u32> = fields(line, tag, rest, 2, 2)?;
                let x = vertex(v[0] as u64)?;
                precolor.resize(n, None);
                if precolor[x].replace(v[1]).is_some() {
                    return Err(at(line, format!("vertex {x} precolored twice")));
                }
            }
            "t" => {
                let v: Vec<u64> = fields(line, tag, rest, 2, 2)?;
                sets.entry(v[0]).or_default().push(vertex(v[1])?);
            }
            "m" => {
                let v: Vec<u64> = fields(line, tag, rest, 2, 2)?;
                let color = u32::try_from(v[0]).map_err(|_| at(line, "color too large"))?;
                *inst.motif.entry(color).or_default() += v[1] as usize;
            }
            "r" => {
                let v: Vec<u64> = fields(line, tag, rest, 1, 1)?;
                if inst.bound.replace(v[0]).is_some() {
                    return Err(at(line, "bound given twice"));
                }
            }
            "item" => {
                let v: Vec<u64> = fields(line, tag, rest, 1, 1)?;
                inst.items.push(v[0]);
            }
            "bins" => {
                let v: Vec<usize> = fields(line, tag, rest, 1, 1)?;
                inst.bins = Some(v[0]);
            }
            "dim" => {
                let v: Vec<usize> = fields(line, tag, rest, 1, 1)?;
                inst.dim = Some(v[0]);
            }
            "triple" => {
                let v: Vec<usize> = fields(line, tag, rest, 3, 3)?;
                inst.triples.push((v[0], v[1], v[2]));
            }
            other => return Err(at(line, format!("unknown line tag `{other}`"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::InvalidInput("missing header `p <n> <m>`".into()));
    };
    if edges != m {
        return Err(Error::InvalidInput(format!("header announces {m} edges, found {edges}")));
    }
    if let Some(d) = inst.dim {
        if let Some(t) = inst.triples.iter().find(|&&(x, y, z)| x.max(y).max(z) >= d) {
            return Err(Error::InvalidInput(format!("triple {t:?} out of range for dim {d}")));
        }
    }
    inst.graph = builder.build()?;
    debug_assert_eq!(inst.graph.n(), n);
    inst.precolor = precolor;
    inst.terminals = sets.into_values().collect();
    Ok(inst)
}

fn strip(e: Error) -> String {
    match e {
        Error::InvalidInput(s) | Error::Precondition(s) | Error::BudgetExceeded(s) => s,
    }
}

/// Writes an instance in the format accepted by [`parse`].
pub fn serialize(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match g.weights() {
            Some(w) => writeln!(out, "e {u} {v} {}", w[i]).unwrap(),
            None => writeln!(out, "e {u} {v}").unwrap(),
        }
    }
    if let Some(caps) = g.capacities() {
        caps.iter().enumerate().for_each(|(v, c)| writeln!(out, "c {v} {c}").unwrap());
    }
    if let Some(colors) = g.colors() {
        colors.iter().enumerate().for_each(|(v, c)| writeln!(out, "col {v} {c}").unwrap());
    }
    for (v, c) in inst.precolor.iter().enumerate() {
        if let Some(c) = c {
            writeln!(out, "pc {v} {c}").unwrap();
        }
    }
    for (i, set) in inst.terminals.iter().enumerate() {
        set.iter().for_each(|v| writeln!(out, "t {i} {v}").unwrap());
    }
    for (c, k) in &inst.motif {
        writeln!(out, "m {c} {k}").unwrap();
    }
    if let Some(r) = inst.bound {
        writeln!(out, "r {r}").unwrap();
    }
    inst.items.iter().for_each(|a| writeln!(out, "item {a}").unwrap());
    if let Some(t) = inst.bins {
        writeln!(out, "bins {t}").unwrap();
    }
    if let Some(d) = inst.dim {
        writeln!(out, "dim {d}").unwrap();
    }
    for (x, y, z) in &inst.triples {
        writeln!(out, "triple {x} {y} {z}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_files() {
        let k2 = parse("p 2 1\ne 0 1\n").unwrap();
        assert_eq!(k2.graph, Graph::complete(2));
        let err = parse("p 2 1\ne 0 0\n").unwrap_err();
        assert!(err.to_string().contains("line 2") && err.to_string().contains("self-loop"));
        let p3 = parse("# path\np 3 2\ne 0 1\ne 1 2\npc 0 1\n").unwrap();
        assert_eq!(p3.precolor, vec![Some(1), None, None]);
        assert!(parse("p 2 1\ne 0 1\nzz 1\n").unwrap_err().to_string().contains("line 3"));
        assert!(parse("p 2 1\ne 0 1\ne 1 0\n").unwrap_err().to_string().contains("duplicate"));
        assert!(parse("p 2 2\ne 0 1\n").is_err());
        assert!(parse("p 2 1\ne 0 5\n").unwrap_err().to_string().contains("line 2"));
    }

    #[test]
    fn round_trip() {
        let text = "p 4 3\ne 0 1 2\ne 1 2 3\ne 2 3 1\nc 0 1\nc 1 2\nc 2 1\nc 3 1\ncol 0 0\ncol 1 1\ncol 2 0\ncol 3 2\n\
                    pc 1 0\nt 0 0\nt 0 3\nm 0 2\nr 5\nitem 3\nbins 2\ndim 1\ntriple 0 0 0\n";
        let inst = parse(text).unwrap();
        assert_eq!(serialize(&inst), text);
        assert_eq!(parse(&serialize(&inst)).unwrap(), inst);
    }
}
