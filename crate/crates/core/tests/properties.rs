use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock};

use aulayout::{
    all_4completions, enumerate_area_universal, find_rels, realize_slicing, rectangular_dual, corpus, AreaAssignment,
    PlaneGraph,
};
use proptest::prelude::*;

static GRAPHS: LazyLock<Vec<PlaneGraph>> = LazyLock::new(|| corpus(4, 7).into_iter().map(|(_, g)| g).collect());

static ADMISSIBLE: LazyLock<Vec<PlaneGraph>> =
    LazyLock::new(|| GRAPHS.iter().filter(|g| g.degree2_vertices().len() == 2).cloned().collect());

fn relabel(g: &PlaneGraph, f: impl Fn(u32) -> u32) -> PlaneGraph {
    let chords: Vec<(u32, u32)> = g.chords().iter().map(|c| (f(c.lo()), f(c.hi()))).collect();
    let cycle: Vec<u32> = (1..=g.n()).collect();
    PlaneGraph::from_outer_cycle_and_chords(g.n(), &cycle, &chords).unwrap()
}

/// Sorted flippable-edge counts over every REL of every 4-completion.
fn flippable_profile(g: &PlaneGraph) -> Vec<usize> {
    let mut out: Vec<usize> = all_4completions(g)
        .unwrap()
        .iter()
        .flat_map(|e| find_rels(e, None).unwrap_or_default())
        .map(|r| r.flippable_edges().len())
        .collect();
    out.sort_unstable();
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn polygon_rotation_preserves_structure(i in 0usize..GRAPHS.len(), k in 1u32..9) {
        let g = &GRAPHS[i];
        let n = g.n();
        let h = relabel(g, |v| (v - 1 + k) % n + 1);
        prop_assert_eq!(flippable_profile(g), flippable_profile(&h));
        prop_assert_eq!(g.degree2_vertices().len(), h.degree2_vertices().len());
        if g.degree2_vertices().len() == 2 {
            prop_assert_eq!(enumerate_area_universal(g).unwrap().count, enumerate_area_universal(&h).unwrap().count);
        }
    }

    #[test]
    fn polygon_reflection_preserves_flippable_profile(i in 0usize..GRAPHS.len()) {
        let g = &GRAPHS[i];
        let n = g.n();
        let h = relabel(g, |v| n + 1 - v);
        prop_assert_eq!(flippable_profile(g), flippable_profile(&h));
    }

    #[test]
    fn flip_is_an_involution(i in 0usize..GRAPHS.len(), pick in any::<prop::sample::Index>()) {
        let exts = all_4completions(&GRAPHS[i]).unwrap();
        let rels: Vec<_> = exts.iter().flat_map(|e| find_rels(e, None).unwrap_or_default()).collect();
        prop_assume!(!rels.is_empty());
        let r = pick.get(&rels);
        for fe in r.flippable_edges() {
            let once = r.flip(fe.edge).unwrap();
            prop_assert!(once.validate().is_ok());
            prop_assert_ne!(&once, r);
            prop_assert_eq!(&once.flip(fe.edge).unwrap(), r);
        }
    }

    #[test]
    fn dual_adjacency_is_the_extended_graph(i in 0usize..GRAPHS.len(), pick in any::<prop::sample::Index>()) {
        let exts: Vec<_> = all_4completions(&GRAPHS[i]).unwrap().into_iter().map(Arc::new).collect();
        let e = pick.get(&exts);
        let r = find_rels(e, Some(1)).unwrap().remove(0);
        let f = rectangular_dual(&r).unwrap();
        let expected: BTreeSet<_> = e.interior_edges().into_iter().collect();
        prop_assert_eq!(f.dual_adjacency(), expected);
    }

    #[test]
    fn slicing_realization_is_scale_equivariant(
        i in 0usize..ADMISSIBLE.len(),
        pick in any::<prop::sample::Index>(),
        seed in prop::collection::vec(0.01f64..100.0, 7),
        c in 0.001f64..1000.0,
    ) {
        let en = enumerate_area_universal(&ADMISSIBLE[i]).unwrap();
        let f = &pick.get(&en.layouts).layout;
        let a = AreaAssignment::new(f.vertices().map(|v| (v, seed[v as usize - 1])).collect()).unwrap();
        let bbox = [0.0, 0.0, 3.0, 2.0];
        let base = realize_slicing(f, &a, Some(bbox)).unwrap();
        let scaled = realize_slicing(f, &a.scaled(c).unwrap(), Some(bbox)).unwrap();
        prop_assert_eq!(base.canonical_form(), scaled.canonical_form());
        for v in f.vertices() {
            let (p, q) = (base.rect(v).unwrap(), scaled.rect(v).unwrap());
            for k in 0..4 {
                prop_assert!((p[k] - q[k]).abs() <= 1e-9, "{:?} vs {:?}", p, q);
            }
        }
    }
}
