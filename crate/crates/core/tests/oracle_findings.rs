//! Layouts the exhaustive search finds beyond the constructive enumeration.

use aulayout::graph::named::{fan4, snake6};
use aulayout::{brute_force_au, enumerate_area_universal, verify_theorems, Cardinal, DEFAULT_PAIR_CAP};

/// Fan_4 has a one-sided layout with both degree-2 vertices on three
/// cardinals: 2 across the top, 4 across the bottom, 1 and 3 between them.
#[test]
fn fan4_sandwich_layout_is_found_by_brute_force() {
    let g = fan4();
    let bf = brute_force_au(&g, DEFAULT_PAIR_CAP).unwrap();
    let enumerated = enumerate_area_universal(&g).unwrap().canonical_forms();
    assert_eq!(enumerated.len(), 6);

    let extra: Vec<_> = bf
        .witnesses
        .iter()
        .filter(|w| !enumerated.contains(&w.layout.canonical_form()))
        .collect();
    assert!(!extra.is_empty());
    for w in &extra {
        let on_three = w.extension.vertices_with_cardinals(3);
        assert_eq!(on_three, vec![2, 4]);
        assert_eq!(w.extension.attachments(1).len(), 1);
        assert_eq!(w.extension.attachments(3).len(), 1);
        assert!(w.layout.is_one_sided());
        assert_eq!(w.layout.interior_adjacency(), g.edges().into_iter().collect());
    }
    assert_eq!(bf.witness_forms().len(), 7);
    assert!(enumerated.is_subset(&bf.witness_forms()));
}

#[test]
fn sandwich_witness_has_degree2_vertex_without_two_cardinal_neighbor() {
    let g = fan4();
    let bf = brute_force_au(&g, DEFAULT_PAIR_CAP).unwrap();
    let found = bf.witnesses.iter().any(|w| {
        let e = &w.extension;
        e.attachments(2) == [Cardinal::W, Cardinal::N, Cardinal::E]
            && g.neighbors(2).all(|u| e.attachments(u).len() != 2)
    });
    assert!(found);
}

#[test]
fn oracle_reports_the_extra_layout_verbatim() {
    let r = verify_theorems(&[("fan4".into(), fan4())], DEFAULT_PAIR_CAP);
    assert!(r.counterexamples.iter().any(|c| c.contains("7 distinct witness layouts, expected 6")));
    assert!(r.counterexamples.iter().all(|c| !c.starts_with("existence") && !c.starts_with("flip-free") && !c.starts_with("pivot")));
}

#[test]
fn snake6_witnesses_match_enumeration() {
    let g = snake6();
    let bf = brute_force_au(&g, DEFAULT_PAIR_CAP).unwrap();
    let en = enumerate_area_universal(&g).unwrap();
    assert_eq!(bf.witness_forms(), en.canonical_forms());
}
