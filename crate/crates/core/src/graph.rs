//! Biconnected outerplanar triangulated graphs, given as an outer cycle plus chords.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Edge, Embedding, SeparatingTriangle, Vertex};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("outer cycle is not a permutation of 1..={n}: {reason}")]
    BadCycle { n: u32, reason: String },
    #[error("vertex {0} is out of range")]
    InvalidVertex(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("chords {0} and {1} cross")]
    NotOuterplanar(Edge, Edge),
    #[error("graph is not triangulated ({chords} chords, expected {expected})")]
    NotTriangulated { chords: usize, expected: usize },
}

impl GraphError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::BadCycle { .. } => "BadCycle",
            GraphError::InvalidVertex(_) => "InvalidVertex",
            GraphError::DuplicateEdge(_) => "DuplicateEdge",
            GraphError::NotOuterplanar(..) => "NotOuterplanar",
            GraphError::NotTriangulated { .. } => "NotTriangulated",
        }
    }
}

/// On-disk form: `{"n": 6, "outer_cycle": [1,2,3,4,5,6], "chords": [[2,6],[3,6],[3,5]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: u32,
    pub outer_cycle: Vec<Vertex>,
    pub chords: Vec<[Vertex; 2]>,
}

/// Outerplanar graph embedded with its vertices in convex position, listed
/// clockwise by `outer_cycle`.
///
/// The graph is immutable; clones share storage.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    n: u32,
    outer_cycle: Arc<[Vertex]>,
    chords: Arc<[Edge]>,
    position: Arc<[usize]>,
    embedding: Arc<Embedding>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.outer_cycle == other.outer_cycle && self.chords == other.chords
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    pub fn from_outer_cycle_and_chords(
        n: u32,
        cycle: &[Vertex],
        chords: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        let bad = |reason: &str| GraphError::BadCycle { n, reason: reason.to_string() };
        if n < 3 {
            return Err(bad("a cycle needs at least 3 vertices"));
        }
        if cycle.len() != n as usize {
            return Err(bad("wrong length"));
        }
        let mut position = vec![usize::MAX; n as usize + 1];
        for (i, &v) in cycle.iter().enumerate() {
            if v == 0 || v > n {
                return Err(GraphError::InvalidVertex(v));
            }
            if position[v as usize] != usize::MAX {
                return Err(bad(&format!("vertex {v} repeated")));
            }
            position[v as usize] = i;
        }

        let nu = n as usize;
        let mut seen = BTreeSet::new();
        // (i, j) with i < j as cycle positions
        let mut spans = Vec::with_capacity(chords.len());
        for &(a, b) in chords {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::InvalidVertex(v));
                }
            }
            if a == b {
                return Err(GraphError::InvalidVertex(a));
            }
            let e = Edge::new(a, b);
            let (i, j) = {
                let (p, q) = (position[a as usize], position[b as usize]);
                (p.min(q), p.max(q))
            };
            if j - i == 1 || (i == 0 && j == nu - 1) || !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            spans.push((i, j, e));
        }

        // laminar-family scan: chords (i,j),(k,l) cross iff i < k < j < l
        spans.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let mut stack: Vec<(usize, usize, Edge)> = Vec::new();
        for &(i, j, e) in &spans {
            while stack.last().is_some_and(|top| top.1 <= i) {
                stack.pop();
            }
            if let Some(top) = stack.last() {
                if top.0 < i && top.1 < j {
                    return Err(GraphError::NotOuterplanar(top.2, e));
                }
            }
            stack.push((i, j, e));
        }

        let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); nu + 1];
        for i in 0..nu {
            let (u, v) = (cycle[i], cycle[(i + 1) % nu]);
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for e in &seen {
            adjacency[e.lo() as usize].push(e.hi());
            adjacency[e.hi() as usize].push(e.lo());
        }
        // convex position: clockwise order at b_i is by clockwise offset from i
        for (v, nbrs) in adjacency.iter_mut().enumerate().skip(1) {
            let i = position[v];
            nbrs.sort_by_key(|&u| (position[u as usize] + nu - i) % nu);
        }
        let embedding = Embedding::new(adjacency, (cycle[1], cycle[0]));
        Ok(PlaneGraph {
            n,
            outer_cycle: cycle.into(),
            chords: seen.into_iter().collect(),
            position: position.into(),
            embedding: Arc::new(embedding),
        })
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let chords: Vec<(Vertex, Vertex)> = json.chords.iter().map(|c| (c[0], c[1])).collect();
        Self::from_outer_cycle_and_chords(json.n, &json.outer_cycle, &chords)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            outer_cycle: self.outer_cycle.to_vec(),
            chords: self.chords.iter().map(|e| [e.lo(), e.hi()]).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn outer_cycle(&self) -> &[Vertex] {
        &self.outer_cycle
    }

    pub fn chords(&self) -> &[Edge] {
        &self.chords
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n as usize + self.chords.len()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.embedding.edges()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.embedding.degree(v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.embedding.has_edge(u, v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.embedding.neighbors(v)
    }

    /// Index of `v` on the outer cycle.
    pub fn position(&self, v: Vertex) -> usize {
        self.position[v as usize]
    }

    /// Vertex `steps` places clockwise from `v` on the outer cycle.
    pub fn cw_from(&self, v: Vertex, steps: usize) -> Vertex {
        let n = self.n as usize;
        self.outer_cycle[(self.position(v) + steps) % n]
    }

    pub fn successor(&self, v: Vertex) -> Vertex {
        self.cw_from(v, 1)
    }

    pub fn predecessor(&self, v: Vertex) -> Vertex {
        self.cw_from(v, self.n as usize - 1)
    }

    /// Clockwise outer-cycle walk from `from` to `to`, both inclusive.
    pub fn cw_arc(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let n = self.n as usize;
        let len = (self.position(to) + n - self.position(from)) % n;
        (0..=len).map(|k| self.cw_from(from, k)).collect()
    }

    /// Sorted vertices with exactly two neighbors.
    pub fn degree2_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 2).collect()
    }

    /// Bounded faces, each listed clockwise.
    pub fn interior_faces(&self) -> Vec<Vec<Vertex>> {
        let mut faces = self.embedding.faces();
        faces.remove(0);
        faces
    }

    pub fn validate_proper(&self) -> ValidationReport {
        let faces = self.interior_faces();
        let triangulated = faces.iter().all(|f| f.len() == 3)
            && self.chords.len() + 3 == self.n as usize;
        ValidationReport {
            biconnected: self.is_biconnected(),
            triangulated,
            order_gt_3: self.n > 3,
            outerplanar: true,
        }
    }

    fn is_biconnected(&self) -> bool {
        // iterative low-link articulation search from vertex 1
        let n = self.n as usize;
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut time = 1;
        let root: Vertex = 1;
        disc[1] = time;
        low[1] = time;
        let mut root_children = 0;
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, 0, 0)];
        while let Some(&mut (v, parent, ref mut k)) = stack.last_mut() {
            let rot = self.embedding.rotation(v);
            if *k < rot.len() {
                let u = rot[*k];
                *k += 1;
                if disc[u as usize] == 0 {
                    time += 1;
                    disc[u as usize] = time;
                    low[u as usize] = time;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else if u != parent {
                    low[v as usize] = low[v as usize].min(disc[u as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if p != root && low[v as usize] >= disc[p as usize] {
                        return false;
                    }
                }
            }
        }
        root_children == 1 && disc.iter().skip(1).all(|&d| d > 0)
    }

    pub fn weak_dual(&self) -> Result<WeakDual, GraphError> {
        let expected = (self.n as usize).saturating_sub(3);
        let faces = self.interior_faces();
        if self.chords.len() != expected || faces.iter().any(|f| f.len() != 3) {
            return Err(GraphError::NotTriangulated { chords: self.chords.len(), expected });
        }
        let faces: Vec<[Vertex; 3]> = faces
            .into_iter()
            .map(|f| {
                let mut t = [f[0], f[1], f[2]];
                t.sort_unstable();
                t
            })
            .collect();
        let mut by_chord: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (i, t) in faces.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let e = Edge::new(a, b);
                if self.chords.binary_search(&e).is_ok() {
                    by_chord.entry(e).or_default().push(i);
                }
            }
        }
        let edges: Vec<(usize, usize)> = by_chord
            .values()
            .filter(|fs| fs.len() == 2)
            .map(|fs| (fs[0], fs[1]))
            .collect();
        let mut degree = vec![0usize; faces.len()];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let leaf_count = degree.iter().filter(|&&d| d == 1).count();
        Ok(WeakDual { faces, edges, leaf_count })
    }

    pub fn find_separating_triangles(&self) -> Vec<SeparatingTriangle> {
        self.embedding.separating_triangles()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub biconnected: bool,
    pub triangulated: bool,
    pub order_gt_3: bool,
    pub outerplanar: bool,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.biconnected && self.triangulated && self.order_gt_3 && self.outerplanar
    }
}

/// One node per bounded triangular face; faces sharing a chord are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakDual {
    pub faces: Vec<[Vertex; 3]>,
    pub edges: Vec<(usize, usize)>,
    pub leaf_count: usize,
}

impl WeakDual {
    pub fn node_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.faces.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && (self.faces.len() == 1 || self.leaf_count == 2)
    }
}

/// Small named graphs used throughout tests and docs.
pub mod named {
    use super::PlaneGraph;

    pub fn triangle() -> PlaneGraph {
        PlaneGraph::from_outer_cycle_and_chords(3, &[1, 2, 3], &[]).unwrap()
    }

    /// Square with chord 1-3.
    pub fn fan4() -> PlaneGraph {
        PlaneGraph::from_outer_cycle_and_chords(4, &[1, 2, 3, 4], &[(1, 3)]).unwrap()
    }

    pub fn snake6() -> PlaneGraph {
        PlaneGraph::from_outer_cycle_and_chords(6, &[1, 2, 3, 4, 5, 6], &[(2, 6), (3, 6), (3, 5)])
            .unwrap()
    }

    /// Hexagon with the inner triangle 1-3-5: three ears, no area-universal layout.
    pub fn triforce6() -> PlaneGraph {
        PlaneGraph::from_outer_cycle_and_chords(6, &[1, 2, 3, 4, 5, 6], &[(1, 3), (3, 5), (5, 1)])
            .unwrap()
    }

    /// Fan on `n` vertices: every chord leaves vertex 1.
    pub fn fan(n: u32) -> PlaneGraph {
        let cycle: Vec<u32> = (1..=n).collect();
        let chords: Vec<(u32, u32)> = (3..n).map(|k| (1, k)).collect();
        PlaneGraph::from_outer_cycle_and_chords(n, &cycle, &chords).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn fan4_is_valid_with_five_edges() {
        let g = fan4();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.edges().len(), g.n() as usize + g.chords().len());
    }

    #[test]
    fn triangle_has_three_edges() {
        let g = triangle();
        assert_eq!(g.edge_count(), 3);
        assert!(g.chords().is_empty());
    }

    #[test]
    fn crossing_chords_are_rejected() {
        let err = PlaneGraph::from_outer_cycle_and_chords(6, &[1, 2, 3, 4, 5, 6], &[(1, 4), (2, 5)])
            .unwrap_err();
        assert!(matches!(err, GraphError::NotOuterplanar(..)));
        assert_eq!(err.code(), "NotOuterplanar");
    }

    #[test]
    fn nested_and_touching_chords_are_accepted() {
        let g = PlaneGraph::from_outer_cycle_and_chords(
            7,
            &[1, 2, 3, 4, 5, 6, 7],
            &[(1, 5), (1, 4), (2, 4), (5, 7)],
        );
        assert!(g.is_ok());
    }

    #[test]
    fn duplicate_and_boundary_chords_are_rejected() {
        let c: Vec<u32> = (1..=5).collect();
        assert_eq!(
            PlaneGraph::from_outer_cycle_and_chords(5, &c, &[(1, 3), (3, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(Edge::new(1, 3))
        );
        assert_eq!(
            PlaneGraph::from_outer_cycle_and_chords(5, &c, &[(5, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(Edge::new(1, 5))
        );
    }

    #[test]
    fn bad_cycles_are_rejected() {
        assert!(matches!(
            PlaneGraph::from_outer_cycle_and_chords(4, &[1, 2, 2, 4], &[]),
            Err(GraphError::BadCycle { .. })
        ));
        assert!(matches!(
            PlaneGraph::from_outer_cycle_and_chords(4, &[1, 2, 3], &[]),
            Err(GraphError::BadCycle { .. })
        ));
        assert_eq!(
            PlaneGraph::from_outer_cycle_and_chords(3, &[1, 2, 7], &[]).unwrap_err(),
            GraphError::InvalidVertex(7)
        );
    }

    #[test]
    fn validation_flags() {
        assert!(fan4().validate_proper().is_ok());
        let pentagon = PlaneGraph::from_outer_cycle_and_chords(5, &[1, 2, 3, 4, 5], &[]).unwrap();
        let r = pentagon.validate_proper();
        assert!(!r.triangulated);
        assert!(r.biconnected);
        assert!(!triangle().validate_proper().order_gt_3);
        assert!(triangle().validate_proper().triangulated);
    }

    #[test]
    fn degree_census() {
        assert_eq!(fan4().degree2_vertices(), vec![2, 4]);
        assert_eq!(snake6().degree2_vertices(), vec![1, 4]);
        assert_eq!(triforce6().degree2_vertices(), vec![2, 4, 6]);
    }

    #[test]
    fn weak_duals() {
        let d = fan4().weak_dual().unwrap();
        assert_eq!((d.node_count(), d.leaf_count, d.edges.len()), (2, 2, 1));
        assert!(d.is_path());

        let d = triforce6().weak_dual().unwrap();
        assert_eq!((d.node_count(), d.leaf_count), (4, 3));
        assert!(d.is_tree() && !d.is_path());
        // the centre face 1-3-5 touches all three ears
        let centre = d.faces.iter().position(|f| *f == [1, 3, 5]).unwrap();
        assert_eq!(d.edges.iter().filter(|&&(a, b)| a == centre || b == centre).count(), 3);

        let d = snake6().weak_dual().unwrap();
        assert_eq!((d.node_count(), d.leaf_count), (4, 2));
        assert!(d.is_path());

        let pentagon = PlaneGraph::from_outer_cycle_and_chords(5, &[1, 2, 3, 4, 5], &[]).unwrap();
        assert!(matches!(pentagon.weak_dual(), Err(GraphError::NotTriangulated { .. })));
    }

    #[test]
    fn bare_outerplanar_graphs_have_no_separating_triangles() {
        for g in [fan4(), snake6(), triforce6(), triangle()] {
            assert!(g.find_separating_triangles().is_empty());
        }
    }

    #[test]
    fn rotation_is_clockwise_offset_order() {
        let g = fan4();
        assert_eq!(g.embedding().rotation(1), &[2, 3, 4]);
        assert_eq!(g.embedding().rotation(3), &[4, 1, 2]);
        assert_eq!(g.interior_faces().len(), 2);
    }

    #[test]
    fn arcs_wrap_around() {
        let g = snake6();
        assert_eq!(g.cw_arc(5, 2), vec![5, 6, 1, 2]);
        assert_eq!(g.cw_arc(3, 3), vec![3]);
        assert_eq!(g.predecessor(1), 6);
    }

    #[test]
    fn json_round_trip_and_unknown_keys() {
        let g = snake6();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(PlaneGraph::from_json(&back).unwrap(), g);
        let bad = r#"{"n":3,"outer_cycle":[1,2,3],"chords":[],"extra":1}"#;
        assert!(serde_json::from_str::<GraphJson>(bad).is_err());
    }

    #[test]
    fn large_fan_builds() {
        let g = fan(2000);
        assert_eq!(g.degree(1), 1999);
        assert_eq!(g.degree2_vertices(), vec![2, 2000]);
    }
}
