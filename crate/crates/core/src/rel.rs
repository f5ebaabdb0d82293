//! Regular edge labelings (RELs) of extended graphs.
//!
//! `T1` edges point upward (the head lies above the tail) and `T2` edges point
//! rightward. Around every base vertex the clockwise rotation splits into four
//! non-empty blocks: incoming `T1`, incoming `T2`, outgoing `T1`, outgoing `T2`.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Edge, Vertex};
use crate::extension::{Cardinal, ExtendedGraph, ExtendedReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    T1,
    T2,
}

impl Label {
    pub fn other(self) -> Label {
        match self {
            Label::T1 => Label::T2,
            Label::T2 => Label::T1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation {
    pub label: Label,
    pub tail: Vertex,
    pub head: Vertex,
}

impl Orientation {
    // position of this edge's block in the clockwise order at `v`
    fn block_at(self, v: Vertex) -> i8 {
        match (self.label, self.head == v) {
            (Label::T1, true) => 0,
            (Label::T2, true) => 1,
            (Label::T1, false) => 2,
            (Label::T2, false) => 3,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RelError {
    #[error("host is not a valid extended graph: {0:?}")]
    NotExtended(Box<ExtendedReport>),
    #[error("no regular edge labeling exists")]
    NoRelExists,
    #[error("edge {0} is not flippable")]
    NotFlippable(Edge),
    #[error("more than {cap} labelings")]
    TooManyRels { cap: usize },
    #[error("labeling violates the block condition at vertex {0}")]
    Violation(Vertex),
    #[error("edge {0} is missing, unknown, or mislabeled")]
    BadEdge(Edge),
}

impl RelError {
    pub fn code(&self) -> &'static str {
        match self {
            RelError::NotExtended(_) => "NotExtended",
            RelError::NoRelExists => "NoRelExists",
            RelError::NotFlippable(_) => "NotFlippable",
            RelError::TooManyRels { .. } => "TooManyRels",
            RelError::Violation(_) => "InvalidRel",
            RelError::BadEdge(_) => "InvalidRel",
        }
    }
}

/// The orientation forced on an edge at a cardinal vertex, or `None` for base
/// edges and for the cardinal cycle.
pub fn cardinal_orientation(host: &ExtendedGraph, e: Edge) -> Option<Orientation> {
    let (v, c) = match (host.cardinal_of(e.lo()), host.cardinal_of(e.hi())) {
        (None, Some(c)) => (e.lo(), c),
        _ => return None,
    };
    let id = c.id(host.n());
    Some(match c {
        Cardinal::N => Orientation { label: Label::T1, tail: v, head: id },
        Cardinal::E => Orientation { label: Label::T2, tail: v, head: id },
        Cardinal::S => Orientation { label: Label::T1, tail: id, head: v },
        Cardinal::W => Orientation { label: Label::T2, tail: id, head: v },
    })
}

/// Whether a partially labeled rotation (`-1` = unlabeled) can still be
/// completed to four non-empty contiguous blocks in cyclic order.
fn feasible(blocks: &[i8]) -> bool {
    let d = blocks.len();
    let assigned: Vec<usize> = (0..d).filter(|&i| blocks[i] >= 0).collect();
    let m = assigned.len();
    if m == 0 {
        return d >= 4;
    }
    let mut turn = 0;
    let mut deltas = Vec::with_capacity(m);
    for j in 0..m {
        let (p, q) = (assigned[j], assigned[(j + 1) % m]);
        let delta = (blocks[q] - blocks[p]).rem_euclid(4) as usize;
        let gap = if m == 1 { d - 1 } else { (q + d - p) % d - 1 };
        turn += delta;
        deltas.push((delta, gap));
    }
    match turn {
        0 => deltas.iter().any(|&(_, gap)| gap >= 3),
        4 => deltas.iter().all(|&(delta, gap)| gap + 1 >= delta),
        _ => false,
    }
}

struct Search<'a> {
    host: &'a ExtendedGraph,
    blocks: Vec<Vec<i8>>,
    free: Vec<Edge>,
    chosen: Vec<Orientation>,
}

impl<'a> Search<'a> {
    fn new(host: &'a ExtendedGraph) -> Self {
        let blocks = (0..=host.vertex_count())
            .map(|v| vec![-1; if v == 0 { 0 } else { host.degree(v as Vertex) }])
            .collect();
        let mut s = Search { host, blocks, free: Vec::new(), chosen: Vec::new() };
        for e in host.interior_edges() {
            match cardinal_orientation(host, e) {
                Some(o) => s.set(e, Some(o)),
                None => s.free.push(e),
            }
        }
        s
    }

    fn set(&mut self, e: Edge, o: Option<Orientation>) {
        let emb = self.host.embedding();
        for x in [e.lo(), e.hi()] {
            let slot = emb.slot(x, e.other(x)).expect("edge");
            self.blocks[x as usize][slot] = o.map_or(-1, |o| o.block_at(x));
        }
    }

    fn ok_at(&self, v: Vertex) -> bool {
        self.host.is_cardinal(v) || feasible(&self.blocks[v as usize])
    }

    fn run<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Edge], &[Orientation]) -> ControlFlow<()>,
    {
        if k == self.free.len() {
            return visit(&self.free, &self.chosen);
        }
        let e = self.free[k];
        let (lo, hi) = (e.lo(), e.hi());
        for (label, tail, head) in [
            (Label::T1, lo, hi),
            (Label::T1, hi, lo),
            (Label::T2, lo, hi),
            (Label::T2, hi, lo),
        ] {
            let o = Orientation { label, tail, head };
            self.set(e, Some(o));
            if self.ok_at(lo) && self.ok_at(hi) {
                self.chosen.push(o);
                let flow = self.run(k + 1, visit);
                self.chosen.pop();
                if flow.is_break() {
                    self.set(e, None);
                    return flow;
                }
            }
        }
        self.set(e, None);
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every REL of `host` in deterministic order until it breaks.
///
/// Base edges are decided in ascending `(lo, hi)` order, each trying
/// `T1` before `T2` and `lo -> hi` before `hi -> lo`.
pub fn visit_rels<F>(host: &Arc<ExtendedGraph>, mut visit: F) -> Result<(), RelError>
where
    F: FnMut(RegularEdgeLabeling) -> ControlFlow<()>,
{
    let report = host.validate_extended();
    if !report.is_ok() {
        return Err(RelError::NotExtended(Box::new(report)));
    }
    let mut search = Search::new(host);
    if !host.base().vertices().all(|v| search.ok_at(v)) {
        return Ok(());
    }
    let fixed: Vec<(Edge, Orientation)> = host
        .interior_edges()
        .into_iter()
        .filter_map(|e| cardinal_orientation(host, e).map(|o| (e, o)))
        .collect();
    let _ = search.run(0, &mut |free: &[Edge], chosen: &[Orientation]| {
        let mut orient: BTreeMap<Edge, Orientation> = fixed.iter().copied().collect();
        orient.extend(free.iter().copied().zip(chosen.iter().copied()));
        visit(RegularEdgeLabeling { host: Arc::clone(host), orient })
    });
    Ok(())
}

/// Up to `limit` RELs of `host` (all of them for `None`), in deterministic order.
pub fn find_rels(host: &ExtendedGraph, limit: Option<usize>) -> Result<Vec<RegularEdgeLabeling>, RelError> {
    let host = Arc::new(host.clone());
    let mut out = Vec::new();
    if limit == Some(0) {
        return Ok(out);
    }
    visit_rels(&host, |r| {
        out.push(r);
        if Some(out.len()) == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if out.is_empty() {
        return Err(RelError::NoRelExists);
    }
    Ok(out)
}

/// A flippable edge with the alternating 4-cycle `[u, x, v, y]` it diagonalizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FlippableEdge {
    pub edge: Edge,
    pub four_cycle: [Vertex; 4],
}

#[derive(Clone, Debug)]
pub struct RegularEdgeLabeling {
    host: Arc<ExtendedGraph>,
    orient: BTreeMap<Edge, Orientation>,
}

impl PartialEq for RegularEdgeLabeling {
    fn eq(&self, other: &Self) -> bool {
        self.orient == other.orient && (Arc::ptr_eq(&self.host, &other.host) || self.host == other.host)
    }
}

impl Eq for RegularEdgeLabeling {}

/// REL JSON: labels and directions keyed by `"lo-hi"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelJson {
    pub labels: BTreeMap<String, Label>,
    pub directions: BTreeMap<String, [Vertex; 2]>,
}

impl RegularEdgeLabeling {
    /// Checks every condition of the definition and wraps the labeling.
    pub fn new(host: Arc<ExtendedGraph>, orient: BTreeMap<Edge, Orientation>) -> Result<Self, RelError> {
        let r = RegularEdgeLabeling { host, orient };
        r.validate()?;
        Ok(r)
    }

    pub fn host(&self) -> &ExtendedGraph {
        &self.host
    }

    pub fn host_arc(&self) -> &Arc<ExtendedGraph> {
        &self.host
    }

    pub fn orientation(&self, e: Edge) -> Option<Orientation> {
        self.orient.get(&e).copied()
    }

    pub fn label(&self, e: Edge) -> Option<Label> {
        self.orientation(e).map(|o| o.label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Orientation)> + '_ {
        self.orient.iter().map(|(&e, &o)| (e, o))
    }

    /// Sequence of orientations in edge order; identifies the labeling on a fixed host.
    pub fn key(&self) -> Vec<Orientation> {
        self.orient.values().copied().collect()
    }

    pub fn validate(&self) -> Result<(), RelError> {
        let host = &*self.host;
        let interior = host.interior_edges();
        if interior.len() != self.orient.len() {
            let missing = interior.iter().find(|e| !self.orient.contains_key(e));
            let extra = self.orient.keys().find(|&&e| !host.has_edge(e.lo(), e.hi()) || !host.is_interior_edge(e));
            return Err(RelError::BadEdge(*missing.or(extra).expect("size mismatch has a culprit")));
        }
        for &e in &interior {
            let o = self.orient.get(&e).ok_or(RelError::BadEdge(e))?;
            if Edge::new(o.tail, o.head) != e {
                return Err(RelError::BadEdge(e));
            }
            if let Some(forced) = cardinal_orientation(host, e) {
                if forced != *o {
                    return Err(RelError::BadEdge(e));
                }
            }
        }
        for v in host.base().vertices() {
            if !self.satisfies_block_condition(v) {
                return Err(RelError::Violation(v));
            }
        }
        Ok(())
    }

    fn blocks_at(&self, v: Vertex) -> Vec<i8> {
        self.host
            .embedding()
            .rotation(v)
            .iter()
            .map(|&u| self.orient[&Edge::new(u, v)].block_at(v))
            .collect()
    }

    fn satisfies_block_condition(&self, v: Vertex) -> bool {
        feasible(&self.blocks_at(v))
    }

    fn alternating_cycle(&self, e: Edge) -> Option<[Vertex; 4]> {
        let host = &*self.host;
        let (u, v) = (e.lo(), e.hi());
        if host.is_cardinal(u) || host.is_cardinal(v) || host.degree(u) == 4 || host.degree(v) == 4 {
            return None;
        }
        let emb = host.embedding();
        let x = emb.cw_next(u, v);
        let y = emb.cw_prev(u, v);
        let cycle = [u, x, v, y];
        let labels: Vec<Label> = (0..4)
            .map(|i| self.label(Edge::new(cycle[i], cycle[(i + 1) % 4])))
            .collect::<Option<_>>()?;
        (0..4).all(|i| labels[i] != labels[(i + 1) % 4]).then_some(cycle)
    }

    /// Base edges that are diagonals of an alternately labeled 4-cycle and avoid degree-4 vertices.
    pub fn flippable_edges(&self) -> Vec<FlippableEdge> {
        self.orient
            .keys()
            .filter_map(|&edge| self.alternating_cycle(edge).map(|four_cycle| FlippableEdge { edge, four_cycle }))
            .collect()
    }

    /// Swaps the label of a flippable edge and re-derives its direction.
    pub fn flip(&self, e: Edge) -> Result<Self, RelError> {
        if self.alternating_cycle(e).is_none() {
            return Err(RelError::NotFlippable(e));
        }
        let label = self.orient[&e].label.other();
        for (tail, head) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
            let mut next = self.clone();
            next.orient.insert(e, Orientation { label, tail, head });
            if next.satisfies_block_condition(e.lo()) && next.satisfies_block_condition(e.hi()) {
                return Ok(next);
            }
        }
        Err(RelError::NotFlippable(e))
    }

    pub fn to_json(&self) -> RelJson {
        RelJson {
            labels: self.iter().map(|(e, o)| (e.to_string(), o.label)).collect(),
            directions: self.iter().map(|(e, o)| (e.to_string(), [o.tail, o.head])).collect(),
        }
    }

    pub fn from_json(host: Arc<ExtendedGraph>, json: &RelJson) -> Result<Self, RelError> {
        let mut orient = BTreeMap::new();
        for (key, &label) in &json.labels {
            let e = Edge::parse_key(key).ok_or(RelError::BadEdge(Edge::new(0, 1)))?;
            let [tail, head] = *json.directions.get(key).ok_or(RelError::BadEdge(e))?;
            orient.insert(e, Orientation { label, tail, head });
        }
        if json.directions.len() != json.labels.len() {
            return Err(RelError::BadEdge(Edge::new(0, 1)));
        }
        Self::new(host, orient)
    }
}

/// All RELs of a host joined by single flips.
#[derive(Clone, Debug)]
pub struct RelLattice {
    pub rels: Vec<RegularEdgeLabeling>,
    /// `(i, j, e)`: flipping `e` in `rels[i]` yields `rels[j]`.
    pub flips: Vec<(usize, usize, Edge)>,
}

impl RelLattice {
    pub fn node_count(&self) -> usize {
        self.rels.len()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::<usize>::new(self.rels.len());
        for &(i, j, _) in &self.flips {
            uf.union(i, j);
        }
        (1..self.rels.len()).all(|i| uf.equiv(0, i))
    }

    /// Every flip has its reverse flip in the lattice.
    pub fn is_symmetric(&self) -> bool {
        self.flips.iter().all(|&(i, j, e)| self.flips.contains(&(j, i, e)))
    }
}

/// Flip graph over every REL of `host`; fails with `TooManyRels` above `cap`.
pub fn rel_lattice(host: &ExtendedGraph, cap: usize) -> Result<RelLattice, RelError> {
    let rels = find_rels(host, Some(cap + 1))?;
    if rels.len() > cap {
        return Err(RelError::TooManyRels { cap });
    }
    let index: HashMap<Vec<Orientation>, usize> = rels.iter().enumerate().map(|(i, r)| (r.key(), i)).collect();
    let mut flips = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        for f in r.flippable_edges() {
            let next = r.flip(f.edge)?;
            let j = *index.get(&next.key()).ok_or(RelError::NotFlippable(f.edge))?;
            flips.push((i, j, f.edge));
        }
    }
    Ok(RelLattice { rels, flips })
}
