//! Extended outerplanar graphs: the base graph plus four cardinal vertices
//! `N, E, S, W` placed clockwise around it.
//!
//! Every extension is described by a [`BoundaryPartition`]: four clockwise
//! boundary paths, one per cardinal, where consecutive paths share exactly one
//! corner vertex. Each cardinal is joined to every vertex of its path, and the
//! cardinals form the outer 4-cycle.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Edge, Embedding, SeparatingTriangle, Vertex};
use crate::graph::{GraphError, GraphJson, PlaneGraph, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cardinal {
    N,
    E,
    S,
    W,
}

impl Cardinal {
    /// Clockwise order.
    pub const ALL: [Cardinal; 4] = [Cardinal::N, Cardinal::E, Cardinal::S, Cardinal::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn next(self) -> Cardinal {
        Self::ALL[(self.index() + 1) % 4]
    }

    pub fn prev(self) -> Cardinal {
        Self::ALL[(self.index() + 3) % 4]
    }

    /// Reserved vertex id: `N = n+1, E = n+2, S = n+3, W = n+4`.
    pub fn id(self, n: u32) -> Vertex {
        n + 1 + self.index() as u32
    }

    pub fn from_id(n: u32, v: Vertex) -> Option<Cardinal> {
        (v > n && v <= n + 4).then(|| Self::ALL[(v - n - 1) as usize])
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not a proper outerplanar triangulation of order > 3: {0:?}")]
    NotProper(ValidationReport),
    #[error("expected exactly two degree-2 vertices, found {census:?}")]
    NotTwoDegree2 { census: Vec<Vertex> },
    #[error("pivot {vertex} has degree {degree}; it needs degree > 2")]
    PivotDegreeTooLow { vertex: Vertex, degree: usize },
    #[error("vertex {0} does not have degree 2")]
    NotDegree2(Vertex),
    #[error("{1} is not a neighbor of {0}")]
    NotNeighbor(Vertex, Vertex),
    #[error("vertex {0} is not a base vertex")]
    InvalidVertex(Vertex),
    #[error("malformed boundary partition: {0}")]
    MalformedPartition(String),
    #[error("augmentation is not an extended graph: {0:?}")]
    InvalidExtension(Box<ExtendedReport>),
}

impl ExtensionError {
    pub fn code(&self) -> &'static str {
        match self {
            ExtensionError::Graph(g) => g.code(),
            ExtensionError::NotProper(_) => "NotProper",
            ExtensionError::NotTwoDegree2 { .. } => "NotTwoDegree2",
            ExtensionError::PivotDegreeTooLow { .. } => "PivotDegreeTooLow",
            ExtensionError::NotDegree2(_) => "NotDegree2",
            ExtensionError::NotNeighbor(..) => "NotNeighbor",
            ExtensionError::InvalidVertex(_) => "InvalidVertex",
            ExtensionError::MalformedPartition(_) => "MalformedPartition",
            ExtensionError::InvalidExtension(_) => "InvalidExtension",
        }
    }
}

/// Four clockwise boundary paths, indexed by [`Cardinal`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundaryPartition {
    paths: [Vec<Vertex>; 4],
}

impl BoundaryPartition {
    pub fn new(north: Vec<Vertex>, east: Vec<Vertex>, south: Vec<Vertex>, west: Vec<Vertex>) -> Self {
        BoundaryPartition { paths: [north, east, south, west] }
    }

    /// Paths between consecutive corners `[NE, ES, SW, WN]`, or `None` when
    /// the corners do not wind exactly once around the outer cycle.
    pub fn from_corners(g: &PlaneGraph, corners: [Vertex; 4]) -> Option<Self> {
        let [ne, es, sw, wn] = corners;
        let paths = [g.cw_arc(wn, ne), g.cw_arc(ne, es), g.cw_arc(es, sw), g.cw_arc(sw, wn)];
        let edges: usize = paths.iter().map(|p| p.len() - 1).sum();
        (edges == g.n() as usize).then_some(BoundaryPartition { paths })
    }

    pub fn path(&self, c: Cardinal) -> &[Vertex] {
        &self.paths[c.index()]
    }

    /// Shared corners `[NE, ES, SW, WN]`.
    pub fn corners(&self) -> [Vertex; 4] {
        let last = |c: Cardinal| *self.path(c).last().expect("non-empty path");
        [last(Cardinal::N), last(Cardinal::E), last(Cardinal::S), last(Cardinal::W)]
    }
}

/// Validation flags of an augmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedReport {
    pub interior_all_triangles: bool,
    pub exterior_quadrilateral: bool,
    pub no_separating_triangle: bool,
    pub every_base_vertex_touches_cardinal: bool,
    pub euler_consistent: bool,
    pub separating_triangles: Vec<SeparatingTriangle>,
}

impl ExtendedReport {
    pub fn is_ok(&self) -> bool {
        self.interior_all_triangles
            && self.exterior_quadrilateral
            && self.no_separating_triangle
            && self.every_base_vertex_touches_cardinal
            && self.euler_consistent
    }
}

#[derive(Clone, Copy, Debug)]
struct Run {
    cards: [Cardinal; 3],
    len: u8,
}

impl Run {
    const EMPTY: Run = Run { cards: [Cardinal::N; 3], len: 0 };

    fn cards(&self) -> &[Cardinal] {
        &self.cards[..self.len as usize]
    }
}

#[derive(Clone, Debug)]
pub struct ExtendedGraph {
    base: PlaneGraph,
    partition: BoundaryPartition,
    // cardinals per base vertex in clockwise run order
    attachments: Vec<Run>,
    embedding: Embedding,
}

impl PartialEq for ExtendedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.partition == other.partition
    }
}

impl Eq for ExtendedGraph {}

impl ExtendedGraph {
    /// Builds the augmentation described by `partition`. Only the shape of the
    /// partition is checked here; use [`ExtendedGraph::validate_extended`] for
    /// the extended-graph conditions.
    pub fn from_partition(base: PlaneGraph, partition: BoundaryPartition) -> Result<Self, ExtensionError> {
        let n = base.n();
        let nu = n as usize;
        let malformed = |s: String| Err(ExtensionError::MalformedPartition(s));
        // bit c.index() set when v lies on path c
        let mut members = vec![0u8; nu + 1];
        let mut edge_total = 0;
        for c in Cardinal::ALL {
            let path = partition.path(c);
            if path.is_empty() {
                return malformed(format!("path {c} is empty"));
            }
            let bit = 1u8 << c.index();
            for (k, &v) in path.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(ExtensionError::InvalidVertex(v));
                }
                if k > 0 && base.successor(path[k - 1]) != v {
                    return malformed(format!("path {c} is not a clockwise boundary walk"));
                }
                if members[v as usize] & bit != 0 {
                    return malformed(format!("path {c} repeats vertex {v}"));
                }
                members[v as usize] |= bit;
            }
            edge_total += path.len() - 1;
            let next = partition.path(c.next());
            if path.last() != next.first() {
                return malformed(format!("paths {c} and {} do not share a corner", c.next()));
            }
        }
        if edge_total != nu {
            return malformed(format!("paths cover {edge_total} boundary edges, expected {nu}"));
        }

        let mut attachments = vec![Run::EMPTY; nu + 1];
        for v in 1..=nu {
            let set = members[v];
            let has = |c: Cardinal| set & (1 << c.index()) != 0;
            let len = set.count_ones() as usize;
            if len == 0 {
                return malformed(format!("vertex {v} is on no path"));
            }
            if len == 4 {
                return malformed(format!("vertex {v} is on all four paths"));
            }
            let start = Cardinal::ALL
                .into_iter()
                .find(|&c| has(c) && !has(c.prev()))
                .expect("proper subset has a run start");
            let mut run = Run::EMPTY;
            for k in 0..len {
                let c = Cardinal::ALL[(start.index() + k) % 4];
                if !has(c) {
                    return malformed(format!("cardinals of vertex {v} are not contiguous"));
                }
                run.cards[k] = c;
            }
            run.len = len as u8;
            attachments[v] = run;
        }

        let emb = base.embedding();
        let mut offsets = Vec::with_capacity(nu + 6);
        let mut rot = Vec::with_capacity(2 * emb.edge_count() + 4 * nu + 16);
        offsets.extend([0, 0]);
        for v in 1..=n {
            rot.extend_from_slice(emb.rotation(v));
            rot.extend(attachments[v as usize].cards().iter().map(|c| c.id(n)));
            offsets.push(rot.len());
        }
        for c in Cardinal::ALL {
            rot.push(c.next().id(n));
            rot.extend(partition.path(c).iter().rev());
            rot.push(c.prev().id(n));
            offsets.push(rot.len());
        }
        let embedding = Embedding::from_flat(offsets, rot, (Cardinal::E.id(n), Cardinal::N.id(n)));
        Ok(ExtendedGraph { base, partition, attachments, embedding })
    }

    pub fn base(&self) -> &PlaneGraph {
        &self.base
    }

    pub fn n(&self) -> u32 {
        self.base.n()
    }

    pub fn partition(&self) -> &BoundaryPartition {
        &self.partition
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn vertex_count(&self) -> usize {
        self.n() as usize + 4
    }

    pub fn edge_count(&self) -> usize {
        self.embedding.edge_count()
    }

    pub fn cardinal_id(&self, c: Cardinal) -> Vertex {
        c.id(self.n())
    }

    pub fn cardinal_of(&self, v: Vertex) -> Option<Cardinal> {
        Cardinal::from_id(self.n(), v)
    }

    pub fn is_cardinal(&self, v: Vertex) -> bool {
        v > self.n()
    }

    /// Cardinals adjacent to base vertex `v`, in clockwise run order.
    pub fn attachments(&self, v: Vertex) -> &[Cardinal] {
        self.attachments[v as usize].cards()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.embedding.degree(v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.embedding.has_edge(u, v)
    }

    /// The four edges of the outer cardinal cycle.
    pub fn cardinal_cycle(&self) -> [Edge; 4] {
        let n = self.n();
        Cardinal::ALL.map(|c| Edge::new(c.id(n), c.next().id(n)))
    }

    pub fn is_interior_edge(&self, e: Edge) -> bool {
        !(self.is_cardinal(e.lo()) && self.is_cardinal(e.hi()))
    }

    /// All edges except the cardinal 4-cycle, ascending.
    pub fn interior_edges(&self) -> Vec<Edge> {
        self.embedding
            .edges()
            .into_iter()
            .filter(|&e| self.is_interior_edge(e))
            .collect()
    }

    /// The edge set added by the augmentation: cardinal attachments plus the cardinal cycle.
    pub fn added_edges(&self) -> Vec<Edge> {
        self.embedding
            .edges()
            .into_iter()
            .filter(|e| self.is_cardinal(e.hi()))
            .collect()
    }

    /// Base vertices attached to exactly `k` cardinals.
    pub fn vertices_with_cardinals(&self, k: usize) -> Vec<Vertex> {
        self.base.vertices().filter(|&v| self.attachments(v).len() == k).collect()
    }

    pub fn find_separating_triangles(&self) -> Vec<SeparatingTriangle> {
        self.embedding.separating_triangles()
    }

    pub fn validate_extended(&self) -> ExtendedReport {
        let faces = self.embedding.faces();
        let n = self.n();
        let mut outer = faces[0].clone();
        outer.sort_unstable();
        let exterior_quadrilateral = faces[0].len() == 4 && outer == [n + 1, n + 2, n + 3, n + 4];
        let interior_all_triangles = faces[1..].iter().all(|f| f.len() == 3);
        let euler_consistent =
            self.vertex_count() as i64 - self.edge_count() as i64 + faces.len() as i64 == 2;
        let separating_triangles = self.find_separating_triangles();
        ExtendedReport {
            interior_all_triangles,
            exterior_quadrilateral,
            no_separating_triangle: separating_triangles.is_empty(),
            every_base_vertex_touches_cardinal: self
                .base
                .vertices()
                .all(|v| self.embedding.neighbors(v).any(|u| u > n)),
            euler_consistent,
            separating_triangles,
        }
    }

    pub fn to_json(&self) -> ExtendedJson {
        let g = self.base.to_json();
        let n = self.n();
        ExtendedJson {
            n: g.n,
            outer_cycle: g.outer_cycle,
            chords: g.chords,
            cardinals: Cardinal::ALL.iter().map(|&c| (c, c.id(n))).collect(),
            attachments: self
                .base
                .vertices()
                .map(|v| (v, self.attachments(v).to_vec()))
                .collect(),
        }
    }

    pub fn from_json(json: &ExtendedJson) -> Result<Self, ExtensionError> {
        let base = PlaneGraph::from_json(&GraphJson {
            n: json.n,
            outer_cycle: json.outer_cycle.clone(),
            chords: json.chords.clone(),
        })?;
        let n = base.n();
        for c in Cardinal::ALL {
            if json.cardinals.get(&c).is_some_and(|&id| id != c.id(n)) {
                return Err(ExtensionError::MalformedPartition(format!(
                    "cardinal {c} must have id {}",
                    c.id(n)
                )));
            }
        }
        let mut paths: [Vec<Vertex>; 4] = Default::default();
        for c in Cardinal::ALL {
            let on = |v: Vertex| json.attachments.get(&v).is_some_and(|cs| cs.contains(&c));
            let count = base.vertices().filter(|&v| on(v)).count();
            if count == 0 || count == n as usize {
                return Err(ExtensionError::MalformedPartition(format!(
                    "cardinal {c} is attached to {count} vertices"
                )));
            }
            let start = base
                .vertices()
                .find(|&v| on(v) && !on(base.predecessor(v)))
                .expect("proper arc has a start");
            let path: Vec<Vertex> = (0..count).map(|k| base.cw_from(start, k)).collect();
            if !path.iter().all(|&v| on(v)) {
                return Err(ExtensionError::MalformedPartition(format!(
                    "vertices attached to {c} are not contiguous"
                )));
            }
            paths[c.index()] = path;
        }
        let [pn, pe, ps, pw] = paths;
        let ext = ExtendedGraph::from_partition(base, BoundaryPartition::new(pn, pe, ps, pw))?;
        for v in ext.base.vertices() {
            let mut given = json.attachments.get(&v).cloned().unwrap_or_default();
            given.sort();
            let mut have = ext.attachments(v).to_vec();
            have.sort();
            if given != have {
                return Err(ExtensionError::MalformedPartition(format!(
                    "attachments of {v} are inconsistent"
                )));
            }
        }
        Ok(ext)
    }
}

/// Extended-graph JSON: the base graph plus cardinal ids and per-vertex attachments.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtendedJson {
    pub n: u32,
    pub outer_cycle: Vec<Vertex>,
    pub chords: Vec<[Vertex; 2]>,
    pub cardinals: BTreeMap<Cardinal, Vertex>,
    pub attachments: BTreeMap<Vertex, Vec<Cardinal>>,
}

fn two_degree2(g: &PlaneGraph) -> Result<(Vertex, Vertex), ExtensionError> {
    let census = g.degree2_vertices();
    match census[..] {
        [a, b] => Ok((a, b)),
        _ => Err(ExtensionError::NotTwoDegree2 { census }),
    }
}

/// Pivot completion: `v` (degree > 2) takes `W, N, E`; walking clockwise from
/// `v`, the boundary up to the first degree-2 vertex attaches to `E`, on to
/// the second degree-2 vertex to `S`, and the rest back to `v` to `W`.
///
/// Runs in time linear in the size of `g`.
pub fn outer4_completion(g: &PlaneGraph, v: Vertex) -> Result<ExtendedGraph, ExtensionError> {
    if v == 0 || v > g.n() {
        return Err(ExtensionError::InvalidVertex(v));
    }
    let (d1, d2) = two_degree2(g)?;
    if g.degree(v) <= 2 {
        return Err(ExtensionError::PivotDegreeTooLow { vertex: v, degree: g.degree(v) });
    }
    let n = g.n() as usize;
    let mut east = vec![v];
    let mut k = 1;
    loop {
        let u = g.cw_from(v, k);
        east.push(u);
        if u == d1 || u == d2 {
            break;
        }
        k += 1;
    }
    let first = *east.last().unwrap();
    let mut south = vec![first];
    loop {
        k += 1;
        let u = g.cw_from(v, k);
        south.push(u);
        if u == d1 || u == d2 {
            break;
        }
    }
    let second = *south.last().unwrap();
    let mut west = vec![second];
    while k < n {
        k += 1;
        west.push(g.cw_from(v, k));
    }
    ExtendedGraph::from_partition(g.clone(), BoundaryPartition::new(vec![v], east, south, west))
}

/// Degree-2 completion: `d` takes `W, N, E` and its neighbor `w` takes the two
/// cardinals on its side (`E, S` when `w` follows `d` clockwise, `S, W` when it
/// precedes `d`). The `S` path runs from `w` to the other degree-2 vertex.
pub fn degree2_extension(g: &PlaneGraph, d: Vertex, w: Vertex) -> Result<ExtendedGraph, ExtensionError> {
    for x in [d, w] {
        if x == 0 || x > g.n() {
            return Err(ExtensionError::InvalidVertex(x));
        }
    }
    let (d1, d2) = two_degree2(g)?;
    if d != d1 && d != d2 {
        return Err(ExtensionError::NotDegree2(d));
    }
    let other = if d == d1 { d2 } else { d1 };
    let partition = if w == g.successor(d) {
        BoundaryPartition::new(vec![d], vec![d, w], g.cw_arc(w, other), g.cw_arc(other, d))
    } else if w == g.predecessor(d) {
        BoundaryPartition::new(vec![d], g.cw_arc(d, other), g.cw_arc(other, w), vec![w, d])
    } else {
        return Err(ExtensionError::NotNeighbor(d, w));
    };
    let ext = ExtendedGraph::from_partition(g.clone(), partition)?;
    let report = ext.validate_extended();
    if !report.is_ok() {
        return Err(ExtensionError::InvalidExtension(Box::new(report)));
    }
    Ok(ext)
}

/// The `(d, w)` pairs accepted by [`degree2_extension`], in ascending order.
pub fn degree2_choices(g: &PlaneGraph) -> Vec<(Vertex, Vertex)> {
    let mut out: Vec<(Vertex, Vertex)> = g
        .degree2_vertices()
        .into_iter()
        .flat_map(|d| g.neighbors(d).map(move |w| (d, w)).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out
}

/// Every augmentation of `g` that is an extended graph, ordered by corner
/// tuple `(NE, ES, SW, WN)` lexicographically.
pub fn all_4completions(g: &PlaneGraph) -> Result<Vec<ExtendedGraph>, ExtensionError> {
    let report = g.validate_proper();
    if !report.is_ok() {
        return Err(ExtensionError::NotProper(report));
    }
    let mut out = Vec::new();
    let vs: Vec<Vertex> = g.vertices().collect();
    for &ne in &vs {
        for &es in &vs {
            for &sw in &vs {
                for &wn in &vs {
                    let Some(p) = BoundaryPartition::from_corners(g, [ne, es, sw, wn]) else {
                        continue;
                    };
                    let Ok(ext) = ExtendedGraph::from_partition(g.clone(), p) else {
                        continue;
                    };
                    if ext.validate_extended().is_ok() {
                        out.push(ext);
                    }
                }
            }
        }
    }
    Ok(out)
}
