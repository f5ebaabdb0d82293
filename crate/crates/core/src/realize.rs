//! Resizing a layout to prescribed rectangle areas without changing its
//! combinatorial structure.
//!
//! Slicing layouts are realized exactly by proportional recursion over their
//! guillotine tree. Other layouts go through a damped Gauss-Newton solve on
//! the positions of their maximal segments.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_traits::Num;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::Vertex;
use crate::floorplan::{Axis, Contacts, Layout, LayoutError, Rect, Source};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RealizeError {
    #[error("layout has no guillotine decomposition")]
    NotSlicing,
    #[error("area of {0} is not a positive finite number")]
    NonPositiveArea(Vertex),
    #[error("areas do not match the layout: {0}")]
    AreaMismatch(String),
    #[error("no convergence; best relative error {error:e}")]
    NotConverged { best: Box<Layout>, error: f64 },
    #[error("combinatorial structure changed: {0}")]
    StructureBroken(String),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

impl RealizeError {
    pub fn code(&self) -> &'static str {
        match self {
            RealizeError::NotSlicing => "NotSlicing",
            RealizeError::NonPositiveArea(_) => "NonPositiveArea",
            RealizeError::AreaMismatch(_) => "AreaMismatch",
            RealizeError::NotConverged { .. } => "NotConverged",
            RealizeError::StructureBroken(_) => "StructureBroken",
            RealizeError::Layout(_) => "InvalidLayout",
        }
    }
}

/// Strictly positive target area per vertex. JSON form: `{"1": 2.5, ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<Vertex, f64>", into = "BTreeMap<Vertex, f64>")]
pub struct AreaAssignment {
    areas: BTreeMap<Vertex, f64>,
}

impl TryFrom<BTreeMap<Vertex, f64>> for AreaAssignment {
    type Error = RealizeError;

    fn try_from(areas: BTreeMap<Vertex, f64>) -> Result<Self, RealizeError> {
        AreaAssignment::new(areas)
    }
}

impl From<AreaAssignment> for BTreeMap<Vertex, f64> {
    fn from(a: AreaAssignment) -> Self {
        a.areas
    }
}

impl AreaAssignment {
    pub fn new(areas: BTreeMap<Vertex, f64>) -> Result<Self, RealizeError> {
        if let Some((&v, _)) = areas.iter().find(|(_, &x)| !(x.is_finite() && x > 0.0)) {
            return Err(RealizeError::NonPositiveArea(v));
        }
        Ok(AreaAssignment { areas })
    }

    pub fn uniform(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        AreaAssignment { areas: vertices.into_iter().map(|v| (v, 1.0)).collect() }
    }

    pub fn get(&self, v: Vertex) -> Option<f64> {
        self.areas.get(&v).copied()
    }

    pub fn total(&self) -> f64 {
        self.areas.values().sum()
    }

    pub fn as_map(&self) -> &BTreeMap<Vertex, f64> {
        &self.areas
    }

    pub fn scaled(&self, c: f64) -> Result<Self, RealizeError> {
        AreaAssignment::new(self.areas.iter().map(|(&v, &x)| (v, x * c)).collect())
    }

    fn check_covers(&self, f: &Layout) -> Result<(), RealizeError> {
        if let Some(v) = f.vertices().find(|v| !self.areas.contains_key(v)) {
            return Err(RealizeError::AreaMismatch(format!("no area for {v}")));
        }
        if let Some(v) = self.areas.keys().find(|&&v| f.rect(v).is_none()) {
            return Err(RealizeError::AreaMismatch(format!("{v} is not in the layout")));
        }
        Ok(())
    }

    /// Square of area `total` at the origin.
    pub fn default_bbox(&self) -> Rect {
        let s = self.total().sqrt();
        [0.0, 0.0, s, s]
    }
}

/// Largest `|area - target| / target` over all rectangles, with targets scaled
/// to the bounding-box area.
pub fn max_relative_error(f: &Layout, a: &AreaAssignment) -> f64 {
    let b = f.bbox();
    let scale = (b[2] - b[0]) * (b[3] - b[1]) / a.total();
    f.vertices()
        .map(|v| {
            let t = a.get(v).unwrap_or(f64::NAN) * scale;
            (f.area(v).unwrap() - t).abs() / t
        })
        .fold(0.0, f64::max)
}

/// Guillotine decomposition. A horizontal cut puts the top part first, a
/// vertical cut the left part first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlicingTree {
    Leaf(Vertex),
    Cut { axis: Axis, first: Box<SlicingTree>, second: Box<SlicingTree> },
}

impl fmt::Display for SlicingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlicingTree::Leaf(v) => write!(f, "{v}"),
            SlicingTree::Cut { axis, first, second } => {
                let c = if *axis == Axis::Horizontal { 'H' } else { 'V' };
                write!(f, "{c}{{{first}|{second}}}")
            }
        }
    }
}

fn split(items: Vec<(Vertex, Rect)>) -> Option<SlicingTree> {
    if items.len() == 1 {
        return Some(SlicingTree::Leaf(items[0].0));
    }
    let top = items.iter().map(|r| r.1[3]).fold(f64::MIN, f64::max);
    let right = items.iter().map(|r| r.1[2]).fold(f64::MIN, f64::max);
    let mut ys: Vec<f64> = items.iter().map(|r| r.1[3]).filter(|&y| y < top).collect();
    ys.sort_by(|a, b| b.total_cmp(a));
    if let Some(y) = ys.into_iter().find(|&y| items.iter().all(|r| !(r.1[1] < y && y < r.1[3]))) {
        let (hi, lo): (Vec<_>, Vec<_>) = items.into_iter().partition(|r| r.1[1] >= y);
        return Some(SlicingTree::Cut { axis: Axis::Horizontal, first: Box::new(split(hi)?), second: Box::new(split(lo)?) });
    }
    let mut xs: Vec<f64> = items.iter().map(|r| r.1[2]).filter(|&x| x < right).collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let x = xs.into_iter().find(|&x| items.iter().all(|r| !(r.1[0] < x && x < r.1[2])))?;
    let (left, rest): (Vec<_>, Vec<_>) = items.into_iter().partition(|r| r.1[2] <= x);
    Some(SlicingTree::Cut { axis: Axis::Vertical, first: Box::new(split(left)?), second: Box::new(split(rest)?) })
}

impl SlicingTree {
    /// Repeatedly splits at the first full-span interior cut (topmost
    /// horizontal, else leftmost vertical).
    pub fn from_layout(f: &Layout) -> Result<SlicingTree, RealizeError> {
        split(f.rects().iter().map(|(&v, &r)| (v, r)).collect()).ok_or(RealizeError::NotSlicing)
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        match self {
            SlicingTree::Leaf(v) => vec![*v],
            SlicingTree::Cut { first, second, .. } => {
                let mut out = first.leaves();
                out.extend(second.leaves());
                out
            }
        }
    }

    fn weight<T: Clone + Num>(&self, areas: &BTreeMap<Vertex, T>) -> T {
        match self {
            SlicingTree::Leaf(v) => areas[v].clone(),
            SlicingTree::Cut { first, second, .. } => first.weight(areas) + second.weight(areas),
        }
    }

    /// Proportional placement: every subtree receives a share of its region
    /// equal to its share of the total area. Exact for exact number types.
    pub fn place<T: Clone + Num>(&self, areas: &BTreeMap<Vertex, T>, region: [T; 4]) -> BTreeMap<Vertex, [T; 4]> {
        let mut out = BTreeMap::new();
        self.place_into(areas, region, &mut out);
        out
    }

    fn place_into<T: Clone + Num>(&self, areas: &BTreeMap<Vertex, T>, region: [T; 4], out: &mut BTreeMap<Vertex, [T; 4]>) {
        match self {
            SlicingTree::Leaf(v) => {
                out.insert(*v, region);
            }
            SlicingTree::Cut { axis, first, second } => {
                let (wf, ws) = (first.weight(areas), second.weight(areas));
                let share = |len: T| len * wf.clone() / (wf.clone() + ws.clone());
                let [x1, y1, x2, y2] = region;
                match axis {
                    Axis::Horizontal => {
                        let y = y2.clone() - share(y2.clone() - y1.clone());
                        first.place_into(areas, [x1.clone(), y.clone(), x2.clone(), y2], out);
                        second.place_into(areas, [x1, y1, x2, y], out);
                    }
                    Axis::Vertical => {
                        let x = x1.clone() + share(x2.clone() - x1.clone());
                        first.place_into(areas, [x1, y1.clone(), x.clone(), y2.clone()], out);
                        second.place_into(areas, [x, y1, x2, y2], out);
                    }
                }
            }
        }
    }
}

pub fn slicing_tree(f: &Layout) -> Result<SlicingTree, RealizeError> {
    SlicingTree::from_layout(f)
}

fn same_structure(f: &Layout, g: &Layout) -> Result<(), RealizeError> {
    if f.contacts() == g.contacts() {
        Ok(())
    } else {
        Err(RealizeError::StructureBroken("wall contacts differ".into()))
    }
}

/// Exact proportional realization of a slicing layout on `bbox` (default: a
/// square of the total area).
pub fn realize_slicing(f: &Layout, a: &AreaAssignment, bbox: Option<Rect>) -> Result<Layout, RealizeError> {
    a.check_covers(f)?;
    let tree = slicing_tree(f)?;
    let bbox = bbox.unwrap_or_else(|| a.default_bbox());
    let rects = tree.place(a.as_map(), bbox);
    let g = Layout::new(bbox, rects, Source::Realized).map_err(|e| RealizeError::StructureBroken(e.to_string()))?;
    same_structure(f, &g)?;
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterativeOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub bbox: Option<Rect>,
}

impl Default for IterativeOptions {
    fn default() -> Self {
        IterativeOptions { tol: 1e-9, max_iters: 10_000, bbox: None }
    }
}

#[derive(Clone, Copy, Debug)]
enum Side {
    Fixed(f64),
    Var(usize),
}

struct Model {
    order: Vec<Vertex>,
    // left, bottom, right, top
    sides: Vec<[Side; 4]>,
    targets: Vec<f64>,
    bbox: Rect,
}

impl Model {
    fn value(&self, s: Side, z: &DVector<f64>) -> f64 {
        match s {
            Side::Fixed(x) => x,
            Side::Var(i) => z[i],
        }
    }

    fn rects(&self, z: &DVector<f64>) -> BTreeMap<Vertex, Rect> {
        self.order
            .iter()
            .zip(&self.sides)
            .map(|(&v, s)| (v, s.map(|side| self.value(side, z))))
            .collect()
    }

    fn residuals(&self, z: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.order.len(),
            self.sides.iter().zip(&self.targets).map(|(s, &t)| {
                let [l, b, r, tp] = s.map(|side| self.value(side, z));
                (r - l) * (tp - b) / t - 1.0
            }),
        )
    }

    fn jacobian(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.order.len(), z.len());
        for (row, (s, &t)) in self.sides.iter().zip(&self.targets).enumerate() {
            let [l, b, r, tp] = s.map(|side| self.value(side, z));
            let (w, h) = (r - l, tp - b);
            for (side, d) in s.iter().zip([-h, -w, h, w]) {
                if let Side::Var(i) = side {
                    j[(row, *i)] += d / t;
                }
            }
        }
        j
    }
}

/// Gauss-Newton on the maximal segment positions with a backtracking line
/// search that rejects any step changing the wall contacts. Succeeds once the
/// largest relative area error is at most `tol`.
pub fn realize_iterative(f: &Layout, a: &AreaAssignment, opts: IterativeOptions) -> Result<Layout, RealizeError> {
    a.check_covers(f)?;
    let bbox = opts.bbox.unwrap_or_else(|| a.default_bbox());
    let ob = f.bbox();
    let sx = (bbox[2] - bbox[0]) / (ob[2] - ob[0]);
    let sy = (bbox[3] - bbox[1]) / (ob[3] - ob[1]);
    let mapx = |x: f64| bbox[0] + (x - ob[0]) * sx;
    let mapy = |y: f64| bbox[1] + (y - ob[1]) * sy;

    let segments = f.maximal_segments();
    let order: Vec<Vertex> = f.vertices().collect();
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sides: Vec<[Side; 4]> = order
        .iter()
        .map(|&v| {
            let r = f.rect(v).unwrap();
            [
                Side::Fixed(mapx(r[0])),
                Side::Fixed(mapy(r[1])),
                Side::Fixed(mapx(r[2])),
                Side::Fixed(mapy(r[3])),
            ]
        })
        .collect();
    let mut z0 = Vec::with_capacity(segments.len());
    for (i, s) in segments.iter().enumerate() {
        let (low, high) = match s.axis {
            Axis::Horizontal => (3, 1),
            Axis::Vertical => (2, 0),
        };
        for &v in &s.low_side {
            sides[pos[&v]][low] = Side::Var(i);
        }
        for &v in &s.high_side {
            sides[pos[&v]][high] = Side::Var(i);
        }
        z0.push(if s.axis == Axis::Horizontal { mapy(s.coord) } else { mapx(s.coord) });
    }
    let scale = (bbox[2] - bbox[0]) * (bbox[3] - bbox[1]) / a.total();
    let targets = order.iter().map(|&v| a.get(v).unwrap() * scale).collect();
    let model = Model { order, sides, targets, bbox };
    let reference: Contacts = f.contacts();

    let build = |z: &DVector<f64>| -> Option<Layout> {
        let g = Layout::new(model.bbox, model.rects(z), Source::Realized).ok()?;
        (g.contacts() == reference).then_some(g)
    };
    let mut z = DVector::from_vec(z0);
    let mut current = build(&z).ok_or_else(|| RealizeError::StructureBroken("rescaled input is not a valid layout".into()))?;
    let mut res = model.residuals(&z);
    for _ in 0..opts.max_iters {
        let err = res.amax();
        if err <= opts.tol {
            return Ok(current);
        }
        let j = model.jacobian(&z);
        let step = match j.svd(true, true).solve(&(-&res), 1e-14) {
            Ok(s) => s,
            Err(_) => break,
        };
        let merit = res.norm_squared();
        let mut alpha = 1.0;
        let mut accepted = false;
        while alpha > 1e-12 {
            let trial = &z + &step * alpha;
            let r = model.residuals(&trial);
            if r.norm_squared() < merit {
                if let Some(g) = build(&trial) {
                    z = trial;
                    res = r;
                    current = g;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let error = res.amax();
    if error <= opts.tol {
        return Ok(current);
    }
    Err(RealizeError::NotConverged { best: Box::new(current), error })
}
