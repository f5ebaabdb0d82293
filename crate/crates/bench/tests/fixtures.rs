use aulayout_bench::{admissible, zigzag};

#[test]
fn zigzag_is_admissible_with_ear_at_one() {
    for n in [4, 5, 9, 50] {
        let g = zigzag(n);
        assert!(g.validate_proper().is_ok());
        let census = g.degree2_vertices();
        assert_eq!(census.len(), 2, "n={n}");
        assert_eq!(census[0], 1);
        assert!(g.has_edge(1, 2));
    }
}

#[test]
fn admissible_corpus_counts() {
    assert_eq!(admissible(6).len(), 12);
    assert_eq!(admissible(7).len(), 28);
}
