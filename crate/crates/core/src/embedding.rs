//! Combinatorial plane embeddings given by a clockwise rotation system.
//!
//! Vertices are dense ids `1..=vertex_count`; slot 0 of every per-vertex
//! table is unused. Faces are traced with the rule
//! `next(u -> v) = v -> cw_prev_v(u)`, which walks bounded faces clockwise
//! and the outer face counterclockwise.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Vertex = u32;

/// Undirected edge with normalized endpoints (`lo < hi`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b, "loops are not edges");
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }

    /// Parses the `"a-b"` key form used in JSON documents.
    pub fn parse_key(key: &str) -> Option<Edge> {
        let (a, b) = key.split_once('-')?;
        let a: Vertex = a.trim().parse().ok()?;
        let b: Vertex = b.trim().parse().ok()?;
        (a != b).then(|| Edge::new(a, b))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom(format!("loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }
}

/// A 3-cycle that is not a face, with one vertex from its bounded side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SeparatingTriangle {
    pub vertices: [Vertex; 3],
    pub witness: Vertex,
}

#[derive(Clone, Debug)]
pub struct Embedding {
    // clockwise neighbors of v are rot[offsets[v]..offsets[v + 1]]
    offsets: Vec<usize>,
    rot: Vec<Vertex>,
    // per vertex u, ascending (v, position of u in the rotation of v)
    index: Vec<(Vertex, u32)>,
    outer_dart: (Vertex, Vertex),
}

impl Embedding {
    /// `rotation[v]` lists the neighbors of `v` in clockwise order (entry 0 unused);
    /// `outer_dart` is any dart of the outer face as traced by [`Embedding::faces`].
    pub fn new(rotation: Vec<Vec<Vertex>>, outer_dart: (Vertex, Vertex)) -> Self {
        let mut offsets = Vec::with_capacity(rotation.len() + 1);
        offsets.push(0);
        let mut rot = Vec::new();
        for r in &rotation {
            rot.extend_from_slice(r);
            offsets.push(rot.len());
        }
        Self::from_flat(offsets, rot, outer_dart)
    }

    /// Flat form of [`Embedding::new`]: the rotation of `v` is
    /// `rot[offsets[v]..offsets[v + 1]]`.
    ///
    /// # Panics
    ///
    /// If some `u` lists `v` while `v` does not list `u`.
    pub fn from_flat(offsets: Vec<usize>, rot: Vec<Vertex>, outer_dart: (Vertex, Vertex)) -> Self {
        // Visiting tails in ascending order fills each bucket already sorted.
        let mut cursor = offsets.clone();
        let mut index = vec![(0, 0); rot.len()];
        for v in 1..offsets.len().saturating_sub(1) {
            for (i, &u) in rot[offsets[v]..offsets[v + 1]].iter().enumerate() {
                let at = cursor[u as usize];
                assert!(at < offsets[u as usize + 1], "rotation system is not symmetric at {u}");
                index[at] = (v as Vertex, i as u32);
                cursor[u as usize] += 1;
            }
        }
        Embedding { offsets, rot, index, outer_dart }
    }

    fn range(&self, v: Vertex) -> std::ops::Range<usize> {
        let v = v as usize;
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len().saturating_sub(2)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.vertex_count() as Vertex
    }

    pub fn edge_count(&self) -> usize {
        self.rot.len() / 2
    }

    /// Clockwise neighbor order around `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[self.range(v)]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.range(v).len()
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.index[self.range(v)].iter().map(|&(u, _)| u)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.slot(u, v).is_some()
    }

    /// Position of `u` in the rotation of `v`.
    pub fn slot(&self, v: Vertex, u: Vertex) -> Option<usize> {
        if v.max(u) as usize + 1 >= self.offsets.len() {
            return None;
        }
        let idx = &self.index[self.range(u)];
        idx.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|k| idx[k].1 as usize)
    }

    pub fn cw_next(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = self.rotation(v);
        let i = self.slot(v, u).expect("not a neighbor");
        rot[(i + 1) % rot.len()]
    }

    pub fn cw_prev(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = self.rotation(v);
        let i = self.slot(v, u).expect("not a neighbor");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in self.vertices() {
            out.extend(self.neighbors(v).filter(|&u| u > v).map(|u| Edge::new(v, u)));
        }
        out
    }

    /// All faces as dart cycles; the outer face comes first.
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.rot.len()];
        let mut faces = Vec::new();
        let dart = |u: Vertex, v: Vertex| self.slot(u, v).map(|k| self.offsets[u as usize] + k);
        let trace = |start: (Vertex, Vertex), seen: &mut Vec<bool>| -> Option<Vec<Vertex>> {
            let (u0, v0) = start;
            if seen[dart(u0, v0)?] {
                return None;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (u0, v0);
            loop {
                let k = dart(u, v).expect("dart");
                if seen[k] {
                    break;
                }
                seen[k] = true;
                face.push(u);
                let w = self.cw_prev(v, u);
                u = v;
                v = w;
            }
            Some(face)
        };
        if let Some(f) = trace(self.outer_dart, &mut seen) {
            faces.push(f);
        }
        for u in self.vertices() {
            for &v in self.rotation(u) {
                if let Some(f) = trace((u, v), &mut seen) {
                    faces.push(f);
                }
            }
        }
        faces
    }

    /// Vertex set of the outer face.
    pub fn outer_face(&self) -> Vec<Vertex> {
        let mut face = self.faces().swap_remove(0);
        face.sort_unstable();
        face.dedup();
        face
    }

    /// Every 3-cycle `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for a in self.vertices() {
            let na: Vec<Vertex> = self.neighbors(a).filter(|&x| x > a).collect();
            for (i, &b) in na.iter().enumerate() {
                for &c in &na[i + 1..] {
                    if self.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// True when `x` lies strictly inside the clockwise wedge from `from` to `to` at `t`.
    fn in_cw_wedge(&self, t: Vertex, from: Vertex, to: Vertex, x: Vertex) -> bool {
        let d = self.degree(t);
        let (Some(i), Some(j), Some(k)) = (self.slot(t, from), self.slot(t, to), self.slot(t, x)) else {
            return false;
        };
        let off = |p: usize| (p + d - i) % d;
        off(k) > 0 && off(k) < off(j)
    }

    /// All 3-cycles that are not faces, each with a witness from the bounded side.
    pub fn separating_triangles(&self) -> Vec<SeparatingTriangle> {
        let outer = self.outer_face();
        let mut out = Vec::new();
        let mut comp = vec![usize::MAX; self.vertex_count() + 1];
        for tri in self.triangles() {
            let [a, b, c] = tri;
            if outer.iter().all(|x| tri.contains(x)) {
                // the triangle bounds the outer face itself
                continue;
            }
            comp.iter_mut().for_each(|x| *x = usize::MAX);
            // side[0]: the cw wedge b->c at a (equivalently c->a at b, a->b at c)
            let mut sides: [Vec<Vertex>; 2] = [Vec::new(), Vec::new()];
            let mut ncomp = 0;
            for s in self.vertices() {
                if tri.contains(&s) || comp[s as usize] != usize::MAX {
                    continue;
                }
                let mut members = Vec::new();
                let mut queue = VecDeque::from([s]);
                comp[s as usize] = ncomp;
                let mut side = None;
                while let Some(x) = queue.pop_front() {
                    members.push(x);
                    for y in self.neighbors(x) {
                        if tri.contains(&y) {
                            if side.is_none() {
                                let inside = match y {
                                    t if t == a => self.in_cw_wedge(a, b, c, x),
                                    t if t == b => self.in_cw_wedge(b, c, a, x),
                                    _ => self.in_cw_wedge(c, a, b, x),
                                };
                                side = Some(usize::from(!inside));
                            }
                        } else if comp[y as usize] == usize::MAX {
                            comp[y as usize] = ncomp;
                            queue.push_back(y);
                        }
                    }
                }
                ncomp += 1;
                if let Some(side) = side {
                    sides[side].extend(members);
                }
            }
            if sides[0].is_empty() || sides[1].is_empty() {
                continue;
            }
            let bounded = if sides[0].iter().any(|x| outer.contains(x)) { 1 } else { 0 };
            let witness = *sides[bounded].iter().min().expect("non-empty side");
            out.push(SeparatingTriangle { vertices: tri, witness });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // K4 drawn with vertex 4 inside triangle 1-2-3 (clockwise 1, 2, 3).
    fn k4_with_center() -> Embedding {
        let rotation = vec![
            vec![],
            vec![2, 4, 3],
            vec![3, 4, 1],
            vec![1, 4, 2],
            vec![1, 2, 3],
        ];
        Embedding::new(rotation, (2, 1))
    }

    #[test]
    fn edge_normalizes_and_parses() {
        let e = Edge::new(5, 2);
        assert_eq!((e.lo(), e.hi()), (2, 5));
        assert_eq!(e.other(2), 5);
        assert_eq!(Edge::parse_key("5-2"), Some(e));
        assert_eq!(e.to_string(), "2-5");
        assert_eq!(Edge::parse_key("3-3"), None);
    }

    #[test]
    fn k4_faces_obey_euler() {
        let emb = k4_with_center();
        let faces = emb.faces();
        assert_eq!(emb.vertex_count() as i64 - emb.edge_count() as i64 + faces.len() as i64, 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(emb.outer_face(), vec![1, 2, 3]);
    }

    #[test]
    fn outer_triangle_of_k4_is_not_reported() {
        // every 3-cycle of this K4 is a face; the outer one bounds the unbounded region
        assert!(k4_with_center().separating_triangles().is_empty());
    }
}
