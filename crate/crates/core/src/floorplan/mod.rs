//! Rectangular layouts: axis-aligned rectangles tiling a bounding box.
//!
//! Coordinates are `f64` compared exactly. Every generator produces walls
//! from a single computed value per wall, so collinear sides agree bit for bit.

mod dual;
mod staircase;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Edge, Vertex};
use crate::extension::Cardinal;

pub use dual::rectangular_dual;
pub use staircase::{aurfp_order, aurfp_staircase, AurfpOrder};

/// `[x1, y1, x2, y2]` with `x1 < x2`, `y1 < y2`.
pub type Rect = [f64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    RelDual,
    Staircase,
    External,
    Realized,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("layout has no rectangles")]
    Empty,
    #[error("rectangle {0} is degenerate or not finite")]
    Degenerate(Vertex),
    #[error("rectangle {0} leaves the bounding box")]
    OutsideBbox(Vertex),
    #[error("rectangles {0} and {1} overlap")]
    Overlap(Vertex, Vertex),
    #[error("rectangles cover area {covered}, bounding box has {bbox}")]
    NotCovering { covered: f64, bbox: f64 },
    #[error("four rectangles meet at ({x}, {y})")]
    FourCorner { x: f64, y: f64 },
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FloorplanError {
    #[error("labeling does not describe a rectangular dual: {0}")]
    InvalidRel(String),
    #[error("ordering broke down after {prefix:?}: {candidates} candidates")]
    OrderBreakdown { prefix: Vec<Vertex>, candidates: usize },
    #[error("invalid staircase input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

impl FloorplanError {
    pub fn code(&self) -> &'static str {
        match self {
            FloorplanError::InvalidRel(_) => "InvalidRel",
            FloorplanError::OrderBreakdown { .. } => "OrderBreakdown",
            FloorplanError::BadInput(_) => "BadInput",
            FloorplanError::Layout(_) => "InvalidLayout",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutJson {
    bbox: Rect,
    rects: BTreeMap<Vertex, Rect>,
    #[serde(default = "external")]
    source: Source,
}

fn external() -> Source {
    Source::External
}

impl TryFrom<LayoutJson> for Layout {
    type Error = LayoutError;

    fn try_from(j: LayoutJson) -> Result<Self, LayoutError> {
        Layout::new(j.bbox, j.rects, j.source)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LayoutJson")]
pub struct Layout {
    bbox: Rect,
    rects: BTreeMap<Vertex, Rect>,
    source: Source,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// A maximal interior wall segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub axis: Axis,
    /// `y` for horizontal segments, `x` for vertical ones.
    pub coord: f64,
    pub lo: f64,
    pub hi: f64,
    /// Rectangles below (horizontal) or left of (vertical) the segment.
    pub low_side: Vec<Vertex>,
    /// Rectangles above (horizontal) or right of (vertical) the segment.
    pub high_side: Vec<Vertex>,
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// End points `[x1, y1, x2, y2]`.
    pub fn endpoints(&self) -> [f64; 4] {
        match self.axis {
            Axis::Horizontal => [self.lo, self.coord, self.hi, self.coord],
            Axis::Vertical => [self.coord, self.lo, self.coord, self.hi],
        }
    }
}

/// Directed wall contacts of a layout.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Contacts {
    /// `(a, b)`: `b` lies directly right of `a`.
    pub right_of: BTreeSet<(Vertex, Vertex)>,
    /// `(a, b)`: `b` lies directly above `a`.
    pub above: BTreeSet<(Vertex, Vertex)>,
    /// Rectangles touching each boundary wall, indexed by [`Cardinal`].
    pub walls: [BTreeSet<Vertex>; 4],
}

impl Contacts {
    fn rotated_cw(&self) -> Contacts {
        let mut walls: [BTreeSet<Vertex>; 4] = Default::default();
        for c in Cardinal::ALL {
            walls[c.next().index()] = self.walls[c.index()].clone();
        }
        Contacts {
            right_of: self.above.clone(),
            above: self.right_of.iter().map(|&(a, b)| (b, a)).collect(),
            walls,
        }
    }

    fn mirrored(&self) -> Contacts {
        let mut walls = self.walls.clone();
        walls.swap(Cardinal::E.index(), Cardinal::W.index());
        Contacts {
            right_of: self.right_of.iter().map(|&(a, b)| (b, a)).collect(),
            above: self.above.clone(),
            walls,
        }
    }

    fn serialize(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        lines.extend(self.right_of.iter().map(|(a, b)| format!("H {a} {b}")));
        lines.extend(self.above.iter().map(|(a, b)| format!("V {a} {b}")));
        for c in Cardinal::ALL {
            lines.extend(self.walls[c.index()].iter().map(|v| format!("{c} {v}")));
        }
        lines.sort();
        lines.join(";")
    }
}

fn key(x: f64) -> u64 {
    // -0.0 and 0.0 must coincide
    (x + 0.0).to_bits()
}

impl Layout {
    /// Builds a layout after auditing that the rectangles tile `bbox` with no
    /// point shared by four rectangles.
    pub fn new(bbox: Rect, rects: BTreeMap<Vertex, Rect>, source: Source) -> Result<Self, LayoutError> {
        let f = Layout { bbox, rects, source };
        f.audit()?;
        Ok(f)
    }

    pub fn bbox(&self) -> Rect {
        self.bbox
    }

    pub fn rects(&self) -> &BTreeMap<Vertex, Rect> {
        &self.rects
    }

    pub fn rect(&self, v: Vertex) -> Option<Rect> {
        self.rects.get(&v).copied()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rects.keys().copied()
    }

    pub fn area(&self, v: Vertex) -> Option<f64> {
        self.rect(v).map(|r| (r[2] - r[0]) * (r[3] - r[1]))
    }

    pub fn audit(&self) -> Result<(), LayoutError> {
        let b = self.bbox;
        if self.rects.is_empty() {
            return Err(LayoutError::Empty);
        }
        let mut covered = 0.0;
        for (&v, r) in &self.rects {
            if !r.iter().all(|x| x.is_finite()) || r[0] >= r[2] || r[1] >= r[3] {
                return Err(LayoutError::Degenerate(v));
            }
            if r[0] < b[0] || r[1] < b[1] || r[2] > b[2] || r[3] > b[3] {
                return Err(LayoutError::OutsideBbox(v));
            }
            covered += (r[2] - r[0]) * (r[3] - r[1]);
        }
        let items: Vec<(Vertex, Rect)> = self.rects.iter().map(|(&v, &r)| (v, r)).collect();
        for (i, &(u, a)) in items.iter().enumerate() {
            for &(v, c) in &items[i + 1..] {
                if a[0] < c[2] && c[0] < a[2] && a[1] < c[3] && c[1] < a[3] {
                    return Err(LayoutError::Overlap(u, v));
                }
            }
        }
        let total = (b[2] - b[0]) * (b[3] - b[1]);
        if (covered - total).abs() > 1e-9 * total {
            return Err(LayoutError::NotCovering { covered, bbox: total });
        }
        let mut corners: HashMap<(u64, u64), usize> = HashMap::new();
        for r in self.rects.values() {
            for (x, y) in [(r[0], r[1]), (r[0], r[3]), (r[2], r[1]), (r[2], r[3])] {
                let count = corners.entry((key(x), key(y))).or_default();
                *count += 1;
                if *count >= 4 {
                    return Err(LayoutError::FourCorner { x, y });
                }
            }
        }
        Ok(())
    }

    /// All maximal interior segments, horizontal ones first, each group
    /// ordered by coordinate and then by start.
    pub fn maximal_segments(&self) -> Vec<Segment> {
        let b = self.bbox;
        let mut out = Vec::new();
        for axis in [Axis::Horizontal, Axis::Vertical] {
            // (coord, lo, hi, vertex, is_high_side)
            let mut sides: Vec<(f64, f64, f64, Vertex, bool)> = Vec::new();
            for (&v, r) in &self.rects {
                let (lo_c, hi_c, s0, s1, b0, b1) = match axis {
                    Axis::Horizontal => (r[1], r[3], r[0], r[2], b[1], b[3]),
                    Axis::Vertical => (r[0], r[2], r[1], r[3], b[0], b[2]),
                };
                if lo_c > b0 {
                    sides.push((lo_c, s0, s1, v, true));
                }
                if hi_c < b1 {
                    sides.push((hi_c, s0, s1, v, false));
                }
            }
            sides.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
            let mut i = 0;
            while i < sides.len() {
                let (coord, lo, mut hi, _, _) = sides[i];
                let mut seg = Segment { axis, coord, lo, hi, low_side: Vec::new(), high_side: Vec::new() };
                while i < sides.len() && sides[i].0 == coord && sides[i].1 <= hi {
                    let (_, _, s1, v, high) = sides[i];
                    hi = hi.max(s1);
                    if high {
                        seg.high_side.push(v);
                    } else {
                        seg.low_side.push(v);
                    }
                    i += 1;
                }
                seg.hi = hi;
                seg.low_side.sort_unstable();
                seg.high_side.sort_unstable();
                out.push(seg);
            }
        }
        out
    }

    fn spans(&self, v: Vertex, seg: &Segment) -> bool {
        let r = self.rects[&v];
        match seg.axis {
            Axis::Horizontal => r[0] == seg.lo && r[2] == seg.hi,
            Axis::Vertical => r[1] == seg.lo && r[3] == seg.hi,
        }
    }

    /// The first maximal segment that is not an entire side of any rectangle.
    pub fn non_one_sided_segment(&self) -> Option<Segment> {
        self.maximal_segments()
            .into_iter()
            .find(|s| !s.low_side.iter().chain(&s.high_side).any(|&v| self.spans(v, s)))
    }

    /// Every maximal segment is an entire side of some rectangle.
    pub fn is_one_sided(&self) -> bool {
        self.non_one_sided_segment().is_none()
    }

    pub fn contacts(&self) -> Contacts {
        let mut c = Contacts::default();
        for seg in self.maximal_segments() {
            for &a in &seg.low_side {
                for &b in &seg.high_side {
                    let (ra, rb) = (self.rects[&a], self.rects[&b]);
                    let (lo, hi) = match seg.axis {
                        Axis::Horizontal => (ra[0].max(rb[0]), ra[2].min(rb[2])),
                        Axis::Vertical => (ra[1].max(rb[1]), ra[3].min(rb[3])),
                    };
                    if lo < hi {
                        match seg.axis {
                            Axis::Horizontal => c.above.insert((a, b)),
                            Axis::Vertical => c.right_of.insert((a, b)),
                        };
                    }
                }
            }
        }
        let b = self.bbox;
        for (&v, r) in &self.rects {
            for (card, on) in [
                (Cardinal::N, r[3] == b[3]),
                (Cardinal::E, r[2] == b[2]),
                (Cardinal::S, r[1] == b[1]),
                (Cardinal::W, r[0] == b[0]),
            ] {
                if on {
                    c.walls[card.index()].insert(v);
                }
            }
        }
        c
    }

    /// Pairs of rectangles sharing a wall of positive length.
    pub fn interior_adjacency(&self) -> BTreeSet<Edge> {
        let c = self.contacts();
        c.right_of.iter().chain(&c.above).map(|&(a, b)| Edge::new(a, b)).collect()
    }

    /// Interior adjacency plus wall contacts; walls get the cardinal ids
    /// `m+1..m+4` where `m` is the largest rectangle id.
    pub fn dual_adjacency(&self) -> BTreeSet<Edge> {
        let m = self.rects.keys().next_back().copied().unwrap_or(0);
        let c = self.contacts();
        let mut out = self.interior_adjacency();
        for card in Cardinal::ALL {
            out.extend(c.walls[card.index()].iter().map(|&v| Edge::new(v, card.id(m))));
        }
        out
    }

    /// Serialized wall structure, minimized over the four rotations.
    pub fn canonical_form(&self) -> String {
        let mut c = self.contacts();
        let mut best = c.serialize();
        for _ in 0..3 {
            c = c.rotated_cw();
            best = best.min(c.serialize());
        }
        best
    }

    /// Like [`Layout::canonical_form`], additionally identifying mirror images.
    pub fn canonical_form_mod_reflection(&self) -> String {
        let c = self.contacts();
        let mut best: Option<String> = None;
        for mut d in [c.clone(), c.mirrored()] {
            for _ in 0..4 {
                let s = d.serialize();
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
                d = d.rotated_cw();
            }
        }
        best.expect("eight candidates")
    }

    /// The same layout turned a quarter turn clockwise about the bounding box.
    pub fn rotated_cw(&self) -> Layout {
        let b = self.bbox;
        let map = |r: &Rect| [r[1] - b[1], b[2] - r[2], r[3] - b[1], b[2] - r[0]];
        Layout {
            bbox: [0.0, 0.0, b[3] - b[1], b[2] - b[0]],
            rects: self.rects.iter().map(|(&v, r)| (v, map(r))).collect(),
            source: self.source,
        }
    }
}
