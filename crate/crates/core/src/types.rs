//! Canonical forms for components relative to an ordered anchor set.
//!
//! A component `C` of `G - S` is encoded by the adjacency structure of
//! `G[S ∪ C]` with the anchors kept in the caller's order and the vertices
//! of `C` permuted to minimize the encoding. Two components receive equal
//! codes exactly when an isomorphism fixing every anchor exists.
//!
//! The component vertices are first sorted by an isomorphism-invariant key
//! (anchor adjacency, label, internal degree). For the anchor rows of the
//! matrix this sort is already the lexicographic minimum, so only
//! permutations inside equal-key blocks are searched, with prefix pruning
//! and a twin shortcut.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Edge, Graph, VertexSubset};

/// Which vertex attributes participate in type equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeMode {
    Plain,
    Capacity,
    Color,
}

const MARK_PLAIN: u8 = b'P';
const MARK_LABELED: u8 = b'L';
const MARK_GTYPE: u8 = b'G';

/// Canonical code of a component relative to an ordered anchor list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentType {
    pub code: Vec<u8>,
    /// `|S| + |C|`.
    pub size: usize,
}

impl ComponentType {
    pub fn hex(&self) -> String {
        to_hex(&self.code)
    }
}

/// Canonical code of a connected piece plus a chosen set of its edges to
/// the anchors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GType {
    pub code: Vec<u8>,
    /// Number of vertices in the piece.
    pub size: usize,
    /// Edges of the encoded subgraph: kept internal edges plus kept
    /// boundary edges.
    pub edges: usize,
}

impl GType {
    pub fn hex(&self) -> String {
        to_hex(&self.code)
    }
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Small labeled graph with `s` anchors (local ids `0..s`) followed by `m`
/// free vertices. Rows are bitmasks, so at most 128 local vertices.
pub(crate) struct Local {
    pub s: usize,
    pub m: usize,
    pub adj: Vec<u128>,
    pub labels: Option<Vec<u32>>,
}

pub(crate) const LOCAL_LIMIT: usize = 128;

impl Local {
    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// Canonical code and, for each position, the local id placed there.
    pub fn canonicalize(&self, marker: u8) -> (Vec<u8>, Vec<usize>) {
        let (s, m) = (self.s, self.m);
        let free_mask = low_bits(s + m) & !low_bits(s);
        let key = |v: usize| -> (Vec<bool>, u32, u32) {
            let sig = (0..s).map(|a| self.has(v, a)).collect();
            let label = self.labels.as_ref().map_or(0, |l| l[v]);
            let deg = (self.adj[v] & free_mask).count_ones();
            (sig, label, deg)
        };
        let mut free: Vec<usize> = (s..s + m).collect();
        free.sort_by_cached_key(|&v| key(v));
        let keys: Vec<_> = free.iter().map(|&v| key(v)).collect();
        let mut block_start = vec![0; m];
        for p in 1..m {
            block_start[p] = if keys[p] == keys[p - 1] { block_start[p - 1] } else { p };
        }

        let mut search = MinSearch {
            local: self,
            free: &free,
            block_start: &block_start,
            block_key_of: &keys,
            used: vec![false; m],
            perm: Vec::with_capacity(m),
            cur: Vec::new(),
            best: None,
            best_perm: Vec::new(),
        };
        search.dfs(true);
        let order: Vec<usize> = search.best_perm.clone();
        let tri = search.best.unwrap_or_default();

        let mut code = vec![marker];
        push_u32(&mut code, s as u32);
        push_u32(&mut code, m as u32);
        let mut bits = Vec::new();
        for a in 0..s {
            for b in a + 1..s {
                bits.push(self.has(a, b));
            }
        }
        for (sig, _, _) in &keys {
            bits.extend(sig);
        }
        bits.extend(tri);
        pack_bits(&mut code, &bits);
        if let Some(labels) = &self.labels {
            for a in 0..s {
                push_u32(&mut code, labels[a]);
            }
            for &v in &order {
                push_u32(&mut code, labels[v]);
            }
        }
        (code, order)
    }
}

fn low_bits(x: usize) -> u128 {
    if x >= 128 {
        !0
    } else {
        (1u128 << x) - 1
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_be_bytes());
}

fn pack_bits(out: &mut Vec<u8>, bits: &[bool]) {
    push_u32(out, bits.len() as u32);
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        out.push(byte);
    }
}

struct MinSearch<'a> {
    local: &'a Local,
    free: &'a [usize],
    block_start: &'a [usize],
    block_key_of: &'a [(Vec<bool>, u32, u32)],
    used: Vec<bool>,
    perm: Vec<usize>,
    cur: Vec<bool>,
    best: Option<Vec<bool>>,
    best_perm: Vec<usize>,
}

impl MinSearch<'_> {
    /// Extends the current prefix; `equal` says whether the prefix so far
    /// coincides with the best string (otherwise it is strictly smaller).
    /// Returns whether the best string was replaced.
    fn dfs(&mut self, mut equal: bool) -> bool {
        let p = self.perm.len();
        if p == self.free.len() {
            if self.best.is_none() || !equal {
                self.best = Some(self.cur.clone());
                self.best_perm = self.perm.clone();
                return true;
            }
            return false;
        }
        let start = self.block_start[p];
        let key = &self.block_key_of[p];
        let mut updated = false;
        let mut tried: Vec<usize> = Vec::new();
        for i in start..self.free.len() {
            if self.used[i] || self.block_key_of[i] != *key {
                continue;
            }
            let v = self.free[i];
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let row_start = self.cur.len();
            for &q in &self.perm {
                self.cur.push(self.local.has(v, q));
            }
            let ord = match (&self.best, equal) {
                (Some(best), true) => self.cur[row_start..].cmp(&best[row_start..self.cur.len()]),
                _ => std::cmp::Ordering::Less,
            };
            if ord != std::cmp::Ordering::Greater {
                self.used[i] = true;
                self.perm.push(v);
                let child_equal = equal && ord == std::cmp::Ordering::Equal;
                if self.dfs(child_equal) {
                    updated = true;
                    equal = true;
                }
                self.perm.pop();
                self.used[i] = false;
            }
            self.cur.truncate(row_start);
        }
        updated
    }

    /// Swapping two unplaced vertices with identical neighborhoods (apart
    /// from each other) is an automorphism fixing everything placed so far.
    fn twins(&self, a: usize, b: usize) -> bool {
        let ma = self.local.adj[a] & !(1u128 << b);
        let mb = self.local.adj[b] & !(1u128 << a);
        ma == mb
            && self
                .local
                .labels
                .as_ref()
                .is_none_or(|l| l[a] == l[b])
    }
}

fn check_anchors(g: &Graph, anchors: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; g.n()];
    for &a in anchors {
        if a >= g.n() {
            return invalid(format!("anchor {a} out of range"));
        }
        if std::mem::replace(&mut mask[a], true) {
            return invalid(format!("anchor {a} repeated"));
        }
    }
    Ok(mask)
}

fn check_component(g: &Graph, anchors: &[usize], c: &[usize]) -> Result<()> {
    let anchor_mask = check_anchors(g, anchors)?;
    if c.is_empty() {
        return invalid("component is empty");
    }
    let mut inside = vec![false; g.n()];
    for &v in c {
        if v >= g.n() || anchor_mask[v] {
            return invalid(format!("vertex {v} is out of range or an anchor"));
        }
        inside[v] = true;
    }
    for &v in c {
        if g.neighbors(v).iter().any(|&w| !inside[w] && !anchor_mask[w]) {
            return invalid("vertex set is not a full component of G - S");
        }
    }
    if !g.is_connected_subset(c) {
        return invalid("vertex set is not connected");
    }
    Ok(())
}

fn labels_for(g: &Graph, mode: TypeMode) -> Option<&[u32]> {
    match mode {
        TypeMode::Plain => None,
        TypeMode::Capacity => g.capacities(),
        TypeMode::Color => g.colors(),
    }
}

/// Builds the local structure of `G[anchors ∪ c]`, encoding labels and the
/// attribute mode so codes from different modes never collide.
fn local_of(g: &Graph, anchors: &[usize], c: &[usize], mode: TypeMode) -> Result<Local> {
    let verts: Vec<usize> = anchors.iter().chain(c).copied().collect();
    if verts.len() > LOCAL_LIMIT {
        return invalid(format!("local structure too large ({} vertices)", verts.len()));
    }
    let mut adj = vec![0u128; verts.len()];
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            if g.has_edge(u, v) {
                adj[i] |= 1 << j;
            }
        }
    }
    let labels = labels_for(g, mode).map(|l| {
        verts
            .iter()
            .map(|&v| l[v])
            .collect::<Vec<_>>()
    });
    // A mode that asks for labels on a graph without them still tags the
    // code, so plain and labeled codes stay distinct.
    let labels = match (mode, labels) {
        (TypeMode::Plain, _) => None,
        (_, Some(l)) => Some(l),
        (_, None) => Some(vec![0; verts.len()]),
    };
    Ok(Local {
        s: anchors.len(),
        m: c.len(),
        adj,
        labels,
    })
}

/// Canonical code of `G[anchors ∪ c]` where each vertex of `c` carries the
/// label `label(v)`; used to compare marked vertex subsets up to
/// anchor-fixing isomorphism.
pub(crate) fn labeled_code(g: &Graph, anchors: &[usize], c: &[usize], label: impl Fn(usize) -> u32) -> Vec<u8> {
    let mut local = local_of(g, anchors, c, TypeMode::Plain).expect("caller bounds local size");
    let mut labels = vec![0; anchors.len()];
    labels.extend(c.iter().map(|&v| label(v)));
    local.labels = Some(labels);
    local.canonicalize(b'Y').0
}

/// Canonical type of component `c` together with the canonical order of
/// its vertices. Positionally aligned orders of two equal-type components
/// form an anchor-fixing isomorphism.
pub fn canonical_type(
    g: &Graph,
    s_ordered: &[usize],
    c: &[usize],
    mode: TypeMode,
) -> Result<(ComponentType, Vec<usize>)> {
    check_component(g, s_ordered, c)?;
    Ok(canonical_type_unchecked(g, s_ordered, c, mode))
}

pub(crate) fn canonical_type_unchecked(
    g: &Graph,
    s_ordered: &[usize],
    c: &[usize],
    mode: TypeMode,
) -> (ComponentType, Vec<usize>) {
    let local = local_of(g, s_ordered, c, mode).expect("caller bounds local size");
    let marker = if local.labels.is_some() {
        MARK_LABELED
    } else {
        MARK_PLAIN
    };
    let (mut code, order) = local.canonicalize(marker);
    if mode != TypeMode::Plain {
        code.push(mode as u8);
    }
    let order = order.into_iter().map(|i| c[i - s_ordered.len()]).collect();
    (
        ComponentType {
            code,
            size: s_ordered.len() + c.len(),
        },
        order,
    )
}

/// Canonical type of a component `c` of `g - s_ordered`.
pub fn type_of(g: &Graph, s_ordered: &[usize], c: &[usize], mode: TypeMode) -> Result<ComponentType> {
    canonical_type(g, s_ordered, c, mode).map(|(t, _)| t)
}

/// One equivalence class of components of `G - S`.
#[derive(Debug, Clone)]
pub struct TypeClass {
    pub ty: ComponentType,
    /// Member components, each given by its vertices in canonical order.
    pub members: Vec<Vec<usize>>,
}

/// Groups the components of `g - s_ordered` by type, ordered by code.
pub fn classify_components(g: &Graph, s_ordered: &[usize], mode: TypeMode) -> Result<Vec<TypeClass>> {
    let removed = check_anchors(g, s_ordered)?;
    let mut classes: BTreeMap<ComponentType, Vec<Vec<usize>>> = BTreeMap::new();
    for comp in g.components_avoiding(&removed) {
        if s_ordered.len() + comp.len() > LOCAL_LIMIT {
            return invalid("component too large to canonicalize");
        }
        let (ty, order) = canonical_type_unchecked(g, s_ordered, &comp, mode);
        classes.entry(ty).or_default().push(order);
    }
    Ok(classes
        .into_iter()
        .map(|(ty, members)| TypeClass { ty, members })
        .collect())
}

/// Number of components of `g - s_ordered` per type.
pub fn classify(g: &Graph, s_ordered: &[usize], mode: TypeMode) -> Result<BTreeMap<ComponentType, usize>> {
    Ok(classify_components(g, s_ordered, mode)?
        .into_iter()
        .map(|c| (c.ty, c.members.len()))
        .collect())
}

/// Canonical g-type of a piece with an explicit internal edge list.
///
/// Anchor-anchor adjacency is deliberately absent from the encoding: only
/// the piece's own edges and its kept edges to the anchors matter.
pub(crate) fn gtype_unchecked(
    anchors: &[usize],
    piece: &[usize],
    internal: &[Edge],
    boundary: &[Edge],
) -> (GType, Vec<usize>) {
    let s = anchors.len();
    let mut pos: HashMap<usize, usize> = HashMap::new();
    for (i, &v) in anchors.iter().chain(piece).enumerate() {
        pos.insert(v, i);
    }
    let mut adj = vec![0u128; s + piece.len()];
    for &(u, v) in internal.iter().chain(boundary) {
        let (a, b) = (pos[&u], pos[&v]);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let local = Local {
        s,
        m: piece.len(),
        adj,
        labels: None,
    };
    let (code, order) = local.canonicalize(MARK_GTYPE);
    let order = order.into_iter().map(|i| piece[i - s]).collect();
    (
        GType {
            code,
            size: piece.len(),
            edges: internal.len() + boundary.len(),
        },
        order,
    )
}

/// Canonical g-type of the pair `(a, b)`: the subgraph formed by all edges
/// of `h` inside `a` plus the boundary edges `b`, anchored at `r_ordered`.
pub fn g_type_of(h: &Graph, r_ordered: &[usize], a: &[usize], b: &[Edge]) -> Result<GType> {
    let anchor_mask = check_anchors(h, r_ordered)?;
    if a.is_empty() {
        return invalid("piece is empty");
    }
    let mut inside = vec![false; h.n()];
    for &v in a {
        if v >= h.n() || anchor_mask[v] {
            return invalid(format!("piece vertex {v} is out of range or an anchor"));
        }
        inside[v] = true;
    }
    if !h.is_connected_subset(a) {
        return invalid("piece is not connected");
    }
    for &(u, v) in b {
        let ok = u < h.n()
            && v < h.n()
            && h.has_edge(u, v)
            && ((inside[u] && anchor_mask[v]) || (inside[v] && anchor_mask[u]));
        if !ok {
            return invalid(format!("edge {{{u},{v}}} does not join the piece to the anchors"));
        }
    }
    if s_plus(r_ordered, a) > LOCAL_LIMIT {
        return invalid("piece too large to canonicalize");
    }
    let internal: Vec<Edge> = h
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| inside[u] && inside[v])
        .collect();
    Ok(gtype_unchecked(r_ordered, a, &internal, b).0)
}

fn s_plus(r: &[usize], a: &[usize]) -> usize {
    r.len() + a.len()
}

/// One connected piece of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    /// Piece vertices in canonical order of its g-type.
    pub vertices: Vec<usize>,
    pub internal: Vec<Edge>,
    pub boundary: Vec<Edge>,
    pub gtype: GType,
}

/// A multiset of g-types (sorted) with one realizing choice of pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub types: Vec<GType>,
    pub pieces: Vec<Piece>,
}

/// All distinct g-type multisets obtainable from component `c` of
/// `h - r_ordered` by keeping a vertex subset, a subset of the edges inside
/// it, and a subset of its edges to the anchors. Kept vertices without kept
/// edges count as singleton pieces. The result starts with the empty
/// multiset and is otherwise in discovery order.
pub fn enumerate_decompositions(h: &Graph, r_ordered: &[usize], c: &[usize]) -> Result<Vec<Decomposition>> {
    if c.is_empty() {
        check_anchors(h, r_ordered)?;
        return Ok(vec![Decomposition {
            types: Vec::new(),
            pieces: Vec::new(),
        }]);
    }
    check_component(h, r_ordered, c)?;
    if c.len() > 16 {
        return invalid("component too large for decomposition enumeration");
    }
    Ok(decompositions_unchecked(h, r_ordered, c, false))
}

/// Variant where kept pieces are induced: every edge inside the kept vertex
/// set and every edge from a kept vertex to the anchors is kept.
pub fn enumerate_induced_decompositions(
    h: &Graph,
    r_ordered: &[usize],
    c: &[usize],
) -> Result<Vec<Decomposition>> {
    if c.is_empty() {
        check_anchors(h, r_ordered)?;
        return Ok(vec![Decomposition {
            types: Vec::new(),
            pieces: Vec::new(),
        }]);
    }
    check_component(h, r_ordered, c)?;
    if c.len() > 16 {
        return invalid("component too large for decomposition enumeration");
    }
    Ok(decompositions_unchecked(h, r_ordered, c, true))
}

pub(crate) fn decompositions_unchecked(
    h: &Graph,
    r_ordered: &[usize],
    c: &[usize],
    induced: bool,
) -> Vec<Decomposition> {
    let is_anchor = {
        let mut m = vec![false; h.n()];
        for &a in r_ordered {
            m[a] = true;
        }
        m
    };
    let mut found: Vec<Decomposition> = Vec::new();
    let mut index: HashMap<Vec<GType>, usize> = HashMap::new();
    let mut record = |pieces: Vec<Piece>, found: &mut Vec<Decomposition>| {
        let mut types: Vec<GType> = pieces.iter().map(|p| p.gtype.clone()).collect();
        types.sort();
        if !index.contains_key(&types) {
            index.insert(types.clone(), found.len());
            found.push(Decomposition { types, pieces });
        }
    };
    record(Vec::new(), &mut found);

    let m = c.len();
    for kmask in 1u32..(1 << m) {
        let kept: Vec<usize> = (0..m).filter(|&i| kmask >> i & 1 == 1).map(|i| c[i]).collect();
        let inner: Vec<Edge> = h
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| kept.contains(&u) && kept.contains(&v))
            .collect();
        let edge_masks: Vec<u64> = if induced {
            vec![if inner.is_empty() { 0 } else { (1u64 << inner.len()) - 1 }]
        } else {
            (0..1u64 << inner.len()).collect()
        };
        for fmask in edge_masks {
            let chosen: Vec<Edge> = (0..inner.len())
                .filter(|&i| fmask >> i & 1 == 1)
                .map(|i| inner[i])
                .collect();
            let pieces = split_pieces(&kept, &chosen);
            // per-piece boundary options, deduplicated by g-type
            let mut options: Vec<Vec<Piece>> = Vec::with_capacity(pieces.len());
            for (verts, internal) in pieces {
                let boundary: Vec<Edge> = verts
                    .iter()
                    .flat_map(|&v| {
                        h.neighbors(v)
                            .iter()
                            .filter(|&&w| is_anchor[w])
                            .map(move |&w| crate::graph::edge(v, w))
                    })
                    .collect();
                let bmasks: Vec<u64> = if induced {
                    vec![if boundary.is_empty() { 0 } else { (1u64 << boundary.len()) - 1 }]
                } else {
                    (0..1u64 << boundary.len()).collect()
                };
                let mut seen: HashMap<GType, ()> = HashMap::new();
                let mut opts = Vec::new();
                for bmask in bmasks {
                    let b: Vec<Edge> = (0..boundary.len())
                        .filter(|&i| bmask >> i & 1 == 1)
                        .map(|i| boundary[i])
                        .collect();
                    let (gtype, order) = gtype_unchecked(r_ordered, &verts, &internal, &b);
                    if seen.insert(gtype.clone(), ()).is_none() {
                        opts.push(Piece {
                            vertices: order,
                            internal: internal.clone(),
                            boundary: b,
                            gtype,
                        });
                    }
                }
                options.push(opts);
            }
            let mut choice = vec![0usize; options.len()];
            loop {
                let pieces: Vec<Piece> = choice
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| options[i][j].clone())
                    .collect();
                record(pieces, &mut found);
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < options[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    found
}

/// Connected pieces of the graph `(kept, chosen)`, each with its edges.
fn split_pieces(kept: &[usize], chosen: &[Edge]) -> Vec<(Vec<usize>, Vec<Edge>)> {
    let idx = |v: usize| kept.iter().position(|&x| x == v).expect("edge inside kept set");
    let mut parent: Vec<usize> = (0..kept.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in chosen {
        let (a, b) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<Edge>)> = BTreeMap::new();
    for i in 0..kept.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().0.push(kept[i]);
    }
    for &e in chosen {
        let r = find(&mut parent, idx(e.0));
        groups.get_mut(&r).expect("root exists").1.push(e);
    }
    groups.into_values().collect()
}

/// Sorted vertex subset helper for callers holding canonical orders.
pub fn as_subset(order: &[usize]) -> VertexSubset {
    VertexSubset::new(order.to_vec())
}
