use std::collections::BTreeMap;

use serde::Serialize;

use super::{FloorplanError, Layout, Source};
use crate::embedding::Vertex;
use crate::extension::{BoundaryPartition, Cardinal};
use crate::graph::PlaneGraph;

/// Ear-peeling order starting from a degree-2 vertex `d` and its neighbor `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AurfpOrder {
    pub sequence: Vec<Vertex>,
    /// The frame pair `(l, l')` whose common neighbor produced each vertex after the first two.
    pub frames: Vec<(Vertex, Vertex)>,
}

fn unvisited_common(g: &PlaneGraph, a: Vertex, b: Vertex, seen: &[bool]) -> Vec<Vertex> {
    g.neighbors(a).filter(|&x| !seen[x as usize] && g.has_edge(b, x)).collect()
}

/// Each vertex after `d, w` is the unique unvisited common neighbor of the
/// current frame pair; the frame then moves to whichever new edge still has one.
pub fn aurfp_order(g: &PlaneGraph, d: Vertex, w: Vertex) -> Result<AurfpOrder, FloorplanError> {
    let n = g.n() as usize;
    if d == 0 || w == 0 || d as usize > n || w as usize > n || g.degree(d) != 2 || !g.has_edge(d, w) {
        return Err(FloorplanError::BadInput(format!("({d}, {w}) is not a degree-2 vertex and neighbor")));
    }
    let mut seen = vec![false; n + 1];
    seen[d as usize] = true;
    seen[w as usize] = true;
    let mut sequence = vec![d, w];
    let mut frames = Vec::new();
    let mut frame = (d, w);
    while sequence.len() < n {
        let cand = unvisited_common(g, frame.0, frame.1, &seen);
        if cand.len() != 1 {
            return Err(FloorplanError::OrderBreakdown { prefix: sequence, candidates: cand.len() });
        }
        let x = cand[0];
        seen[x as usize] = true;
        sequence.push(x);
        frames.push(frame);
        if sequence.len() == n {
            break;
        }
        let left = !unvisited_common(g, frame.0, x, &seen).is_empty();
        let right = !unvisited_common(g, frame.1, x, &seen).is_empty();
        frame = match (left, right) {
            (true, false) => (frame.0, x),
            (false, true) => (frame.1, x),
            (both, _) => {
                return Err(FloorplanError::OrderBreakdown { prefix: sequence, candidates: if both { 2 } else { 0 } })
            }
        };
    }
    Ok(AurfpOrder { sequence, frames })
}

/// Staircase layout on an `n x n` grid: `d` takes the full-width top strip;
/// each later vertex on the `S` path takes a unit column on `w`'s side of the
/// remaining region, every other vertex a unit slab across its top; the last
/// vertex fills what remains.
pub fn aurfp_staircase(
    g: &PlaneGraph,
    d: Vertex,
    w: Vertex,
    partition: &BoundaryPartition,
) -> Result<Layout, FloorplanError> {
    let order = aurfp_order(g, d, w)?;
    let clockwise = g.successor(d) == w;
    let south = partition.path(Cardinal::S);
    if partition.path(Cardinal::N) != [d] || !south.contains(&w) {
        return Err(FloorplanError::BadInput("partition does not belong to this (d, w)".into()));
    }
    let n = g.n() as f64;
    let mut region = [0.0, 0.0, n, n];
    let mut rects = BTreeMap::new();
    let last = order.sequence.len() - 1;
    for (i, &v) in order.sequence.iter().enumerate() {
        let [x1, y1, x2, y2] = region;
        let rect = if i == last {
            region
        } else if i > 0 && south.contains(&v) {
            if clockwise {
                region[2] = x2 - 1.0;
                [x2 - 1.0, y1, x2, y2]
            } else {
                region[0] = x1 + 1.0;
                [x1, y1, x1 + 1.0, y2]
            }
        } else {
            region[3] = y2 - 1.0;
            [x1, y2 - 1.0, x2, y2]
        };
        rects.insert(v, rect);
    }
    Ok(Layout::new([0.0, 0.0, n, n], rects, Source::Staircase)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::degree2_extension;
    use crate::graph::named::*;

    fn staircase(g: &PlaneGraph, d: Vertex, w: Vertex) -> Layout {
        let e = degree2_extension(g, d, w).unwrap();
        aurfp_staircase(g, d, w, e.partition()).unwrap()
    }

    #[test]
    fn fan4_clockwise_staircase() {
        let g = fan4();
        assert_eq!(aurfp_order(&g, 2, 3).unwrap().sequence, vec![2, 3, 1, 4]);
        let f = staircase(&g, 2, 3);
        assert_eq!(f.rect(2), Some([0., 3., 4., 4.]));
        assert_eq!(f.rect(3), Some([3., 0., 4., 3.]));
        assert_eq!(f.rect(1), Some([0., 2., 3., 3.]));
        assert_eq!(f.rect(4), Some([0., 0., 3., 2.]));
        assert!(f.is_one_sided());
        assert_eq!(f.interior_adjacency(), g.edges().into_iter().collect());
    }

    #[test]
    fn fan4_counterclockwise_staircase() {
        let g = fan4();
        let f = staircase(&g, 2, 1);
        assert_eq!(f.rect(2), Some([0., 3., 4., 4.]));
        assert_eq!(f.rect(1), Some([0., 0., 1., 3.]));
        assert_eq!(f.rect(3), Some([1., 2., 4., 3.]));
        assert_eq!(f.rect(4), Some([1., 0., 4., 2.]));
        assert_ne!(f.canonical_form(), staircase(&g, 2, 3).canonical_form());
    }

    #[test]
    fn snake6_order_and_adjacency() {
        let g = snake6();
        let order = aurfp_order(&g, 1, 2).unwrap();
        assert_eq!(order.sequence, vec![1, 2, 6, 3, 5, 4]);
        assert_eq!(order.frames.len(), 4);
        let f = staircase(&g, 1, 2);
        assert!(f.is_one_sided());
        assert_eq!(f.interior_adjacency(), g.edges().into_iter().collect());
        assert_eq!(f, staircase(&g, 1, 2));
    }

    #[test]
    fn triforce_order_breaks_down() {
        let g = triforce6();
        assert!(matches!(aurfp_order(&g, 2, 1), Err(FloorplanError::OrderBreakdown { .. })));
    }

    #[test]
    fn rejects_non_degree2_start() {
        assert!(matches!(aurfp_order(&fan4(), 1, 2), Err(FloorplanError::BadInput(_))));
    }
}
