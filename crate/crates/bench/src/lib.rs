//! Inputs shared by the benchmarks.

use aulayout::{corpus, AreaAssignment, Layout, PlaneGraph};

/// The zigzag triangulation of the `n`-gon: visiting `1, 2, n, 3, n-1, ...`,
/// every consecutive pair after the first is a chord.
pub fn zigzag(n: u32) -> PlaneGraph {
    let cycle: Vec<u32> = (1..=n).collect();
    let (mut lo, mut hi) = (2, n + 1);
    let mut order = vec![1, 2];
    while order.len() < n as usize {
        if order.len() % 2 == 0 {
            hi -= 1;
            order.push(hi);
        } else {
            lo += 1;
            order.push(lo);
        }
    }
    let chords: Vec<(u32, u32)> = order.windows(2).skip(1).take(n as usize - 3).map(|w| (w[0], w[1])).collect();
    PlaneGraph::from_outer_cycle_and_chords(n, &cycle, &chords).expect("zigzag")
}

/// Admissible corpus graphs of order `n`.
pub fn admissible(n: u32) -> Vec<PlaneGraph> {
    corpus(n, n).into_iter().map(|(_, g)| g).filter(|g| g.degree2_vertices().len() == 2).collect()
}

/// Deterministic uneven areas for `f`.
pub fn skewed_areas(f: &Layout) -> AreaAssignment {
    AreaAssignment::new(f.vertices().map(|v| (v, 1.0 + f64::from(v % 7))).collect()).expect("positive")
}
