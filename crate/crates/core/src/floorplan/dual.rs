use std::collections::{BTreeMap, HashMap};

use petgraph::algo::toposort;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

use super::{FloorplanError, Layout, Source};
use crate::embedding::{Edge, Vertex};
use crate::extension::Cardinal;
use crate::rel::{Label, RegularEdgeLabeling};

// Wall slots: four per base vertex, then the four boundary walls.
const LEFT: usize = 0;
const RIGHT: usize = 1;
const BOTTOM: usize = 2;
const TOP: usize = 3;

fn slot(v: Vertex, side: usize) -> usize {
    4 * (v as usize - 1) + side
}

/// Longest-path coordinates for one axis: every class gets the length of the
/// longest unit-weight chain from the low boundary wall.
fn coordinates(
    uf: &UnionFind<usize>,
    classes: impl Iterator<Item = usize>,
    low: usize,
    high: usize,
    constraints: &[(usize, usize)],
) -> Result<HashMap<usize, f64>, FloorplanError> {
    let mut g: DiGraph<usize, u32> = DiGraph::new();
    let mut node: HashMap<usize, NodeIndex> = HashMap::new();
    for c in classes {
        let rep = uf.find(c);
        node.entry(rep).or_insert_with(|| g.add_node(rep));
    }
    let (lo, hi) = (node[&uf.find(low)], node[&uf.find(high)]);
    if lo == hi {
        return Err(FloorplanError::InvalidRel("opposite boundary walls coincide".into()));
    }
    for &(a, b) in constraints {
        let (a, b) = (node[&uf.find(a)], node[&uf.find(b)]);
        if a == b {
            return Err(FloorplanError::InvalidRel("a rectangle collapses".into()));
        }
        g.add_edge(a, b, 1);
    }
    let all: Vec<NodeIndex> = g.node_indices().collect();
    for x in all {
        if x != lo {
            g.add_edge(lo, x, 0);
        }
        if x != hi {
            g.add_edge(x, hi, 0);
        }
    }
    let order = toposort(&g, None).map_err(|_| FloorplanError::InvalidRel("cyclic wall order".into()))?;
    let mut dist: HashMap<NodeIndex, u32> = HashMap::new();
    for x in order {
        let here = dist.get(&x).copied().unwrap_or(0);
        for e in g.edges(x) {
            use petgraph::visit::EdgeRef;
            let d = dist.entry(e.target()).or_insert(0);
            *d = (*d).max(here + e.weight());
        }
    }
    Ok(node.into_iter().map(|(rep, ix)| (rep, dist.get(&ix).copied().unwrap_or(0) as f64)).collect())
}

/// The rectangular layout described by a REL: `T1` edges become horizontal
/// contacts (head above tail), `T2` edges vertical ones (head right of tail),
/// and the cardinals become the boundary walls.
pub fn rectangular_dual(r: &RegularEdgeLabeling) -> Result<Layout, FloorplanError> {
    let host = r.host();
    let n = host.n();
    let nu = n as usize;
    let (x0, xe, y0, yn) = (4 * nu, 4 * nu + 1, 4 * nu + 2, 4 * nu + 3);
    let (cn, ce, cs, cw) = (
        Cardinal::N.id(n),
        Cardinal::E.id(n),
        Cardinal::S.id(n),
        Cardinal::W.id(n),
    );
    let bad = |s: String| FloorplanError::InvalidRel(s);

    let mut uf = UnionFind::<usize>::new(4 * nu + 4);
    let mut xcons = Vec::new();
    let mut ycons = Vec::new();
    for v in 1..=n {
        xcons.push((slot(v, LEFT), slot(v, RIGHT)));
        ycons.push((slot(v, BOTTOM), slot(v, TOP)));
    }
    for (e, o) in r.iter() {
        let (t, h) = (o.tail, o.head);
        match o.label {
            Label::T2 => {
                let a = if t == cw {
                    x0
                } else if t <= n {
                    slot(t, RIGHT)
                } else {
                    return Err(bad(format!("T2 edge {e} leaves a cardinal other than W")));
                };
                let b = if h == ce {
                    xe
                } else if h <= n {
                    slot(h, LEFT)
                } else {
                    return Err(bad(format!("T2 edge {e} enters a cardinal other than E")));
                };
                uf.union(a, b);
                if t <= n && h <= n {
                    ycons.push((slot(t, BOTTOM), slot(h, TOP)));
                    ycons.push((slot(h, BOTTOM), slot(t, TOP)));
                }
            }
            Label::T1 => {
                let a = if t == cs {
                    y0
                } else if t <= n {
                    slot(t, TOP)
                } else {
                    return Err(bad(format!("T1 edge {e} leaves a cardinal other than S")));
                };
                let b = if h == cn {
                    yn
                } else if h <= n {
                    slot(h, BOTTOM)
                } else {
                    return Err(bad(format!("T1 edge {e} enters a cardinal other than N")));
                };
                uf.union(a, b);
                if t <= n && h <= n {
                    xcons.push((slot(t, LEFT), slot(h, RIGHT)));
                    xcons.push((slot(h, LEFT), slot(t, RIGHT)));
                }
            }
        }
    }

    let xs = (1..=n).flat_map(|v| [slot(v, LEFT), slot(v, RIGHT)]).chain([x0, xe]);
    let ys = (1..=n).flat_map(|v| [slot(v, BOTTOM), slot(v, TOP)]).chain([y0, yn]);
    let xc = coordinates(&uf, xs, x0, xe, &xcons)?;
    let yc = coordinates(&uf, ys, y0, yn, &ycons)?;
    let at = |m: &HashMap<usize, f64>, i: usize| m[&uf.find(i)];

    let rects: BTreeMap<Vertex, [f64; 4]> = (1..=n)
        .map(|v| {
            (
                v,
                [
                    at(&xc, slot(v, LEFT)),
                    at(&yc, slot(v, BOTTOM)),
                    at(&xc, slot(v, RIGHT)),
                    at(&yc, slot(v, TOP)),
                ],
            )
        })
        .collect();
    let bbox = [0.0, 0.0, at(&xc, xe), at(&yc, yn)];
    let layout =
        Layout::new(bbox, rects, Source::RelDual).map_err(|e| bad(format!("geometry audit failed: {e}")))?;

    let c = layout.contacts();
    let mut expected = 0;
    for (e, o) in r.iter() {
        let (t, h) = (o.tail, o.head);
        let ok = match (o.label, t <= n, h <= n) {
            (Label::T1, true, true) => c.above.contains(&(t, h)),
            (Label::T2, true, true) => c.right_of.contains(&(t, h)),
            (Label::T1, true, false) => c.walls[Cardinal::N.index()].contains(&t),
            (Label::T1, false, true) => c.walls[Cardinal::S.index()].contains(&h),
            (Label::T2, true, false) => c.walls[Cardinal::E.index()].contains(&t),
            (Label::T2, false, true) => c.walls[Cardinal::W.index()].contains(&h),
            _ => false,
        };
        if !ok {
            return Err(bad(format!("edge {e} is not realized as a contact")));
        }
        expected += 1;
    }
    let realized = c.above.len() + c.right_of.len() + c.walls.iter().map(|w| w.len()).sum::<usize>();
    if realized != expected {
        let extra = layout
            .interior_adjacency()
            .into_iter()
            .find(|e: &Edge| r.orientation(*e).is_none())
            .map_or("a wall".to_string(), |e| e.to_string());
        return Err(bad(format!("layout has a contact {extra} absent from the labeling")));
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{degree2_extension, outer4_completion};
    use crate::graph::named::*;
    use crate::rel::find_rels;

    fn only_rel(e: &crate::ExtendedGraph) -> RegularEdgeLabeling {
        let mut rels = find_rels(e, None).unwrap();
        assert_eq!(rels.len(), 1);
        rels.remove(0)
    }

    #[test]
    fn fan4_pivot_dual_has_top_strip_and_bottom_row() {
        let e = outer4_completion(&fan4(), 1).unwrap();
        let f = rectangular_dual(&only_rel(&e)).unwrap();
        let b = f.bbox();
        let top = f.rect(1).unwrap();
        assert_eq!((top[0], top[2], top[3]), (b[0], b[2], b[3]));
        let row: Vec<Vertex> = {
            let mut v = vec![2, 3, 4];
            v.sort_by(|a, c| f.rect(*a).unwrap()[0].total_cmp(&f.rect(*c).unwrap()[0]));
            v
        };
        assert_eq!(row, vec![4, 3, 2]);
        for v in [2, 3, 4] {
            assert_eq!(f.rect(v).unwrap()[1], b[1]);
        }
        assert!(f.is_one_sided());
    }

    #[test]
    fn fan4_degree2_dual() {
        let e = degree2_extension(&fan4(), 2, 3).unwrap();
        let f = rectangular_dual(&only_rel(&e)).unwrap();
        let b = f.bbox();
        let r2 = f.rect(2).unwrap();
        assert_eq!((r2[0], r2[2], r2[3]), (b[0], b[2], b[3]));
        let r3 = f.rect(3).unwrap();
        assert_eq!((r3[1], r3[2]), (b[1], b[2]));
        let (r1, r4) = (f.rect(1).unwrap(), f.rect(4).unwrap());
        assert_eq!(r1[1], r4[3]);
        assert_eq!((r1[0], r4[0]), (b[0], b[0]));
    }

    #[test]
    fn dual_adjacency_matches_host() {
        for g in [fan4(), snake6(), triforce6()] {
            for e in crate::extension::all_4completions(&g).unwrap() {
                for r in find_rels(&e, Some(50)).unwrap() {
                    let f = rectangular_dual(&r).unwrap();
                    assert_eq!(f.dual_adjacency(), e.interior_edges().into_iter().collect());
                }
            }
        }
    }
}
