//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use aulayout::graph::named::fan;
use aulayout::{
    brute_force_au, corpus, degree2_choices, degree2_extension, enumerate_area_universal, find_rels,
    max_relative_error, outer4_completion, realize_iterative, realize_slicing, rectangular_dual, rel_lattice,
    aurfp_staircase, AreaAssignment, BruteForce, IterativeOptions, Layout, PlaneGraph, RealizeError, Source,
    DEFAULT_PAIR_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }
}

fn report(id: usize, title: &str, out: Outcome, all_ok: &mut bool) {
    let verdict = if out.failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id} [PRIMARY] {title}: {verdict} ({})", out.detail);
    for f in out.failures.iter().take(10) {
        println!("    {f}");
    }
    if out.failures.len() > 10 {
        println!("    ... {} more", out.failures.len() - 10);
    }
    *all_ok &= out.failures.is_empty();
}

fn admissible(g: &PlaneGraph) -> bool {
    g.degree2_vertices().len() == 2
}

fn census_characterizes_existence(graphs: &[(String, PlaneGraph)], bf: &[BruteForce], elapsed: Duration) -> Outcome {
    let mut out = Outcome::new();
    for ((id, g), b) in graphs.iter().zip(bf) {
        if b.exists != admissible(g) {
            out.fail(format!("{id}: exists={} census={:?}", b.exists, g.degree2_vertices()));
        }
    }
    if elapsed > Duration::from_secs(300) {
        out.fail(format!("oracle took {elapsed:?}"));
    }
    out.detail = format!("{} graphs, 4<=n<=9, oracle {:.1}s", graphs.len(), elapsed.as_secs_f64());
    out
}

fn enumeration_count(graphs: &[(String, PlaneGraph)]) -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    for (id, g) in graphs.iter().filter(|(_, g)| admissible(g)) {
        checked += 1;
        let en = match enumerate_area_universal(g) {
            Ok(en) => en,
            Err(e) => {
                out.fail(format!("{id}: {e}"));
                continue;
            }
        };
        if en.count != g.n() as usize + 2 {
            out.fail(format!("{id}: {} layouts, expected {}", en.count, g.n() + 2));
        }
        let edges = g.edges().into_iter().collect();
        for l in &en.layouts {
            if !l.layout.is_one_sided() {
                out.fail(format!("{id}: {:?} is not one-sided", l.origin));
            }
            if l.layout.interior_adjacency() != edges {
                out.fail(format!("{id}: {:?} adjacency differs from the graph", l.origin));
            }
        }
    }
    out.detail = format!("{checked} admissible graphs");
    out
}

fn flippable_iff_one_sided(graphs: &[(String, PlaneGraph)], bf: &[BruteForce]) -> Outcome {
    let mut out = Outcome::new();
    let mut pairs = 0;
    for ((id, g), b) in graphs.iter().zip(bf) {
        if g.n() > 8 {
            continue;
        }
        for p in &b.pairs {
            pairs += 1;
            if p.flippable_free != p.one_sided {
                out.fail(format!(
                    "{id}: extension #{} flippable_free={} one_sided={}",
                    p.extension, p.flippable_free, p.one_sided
                ));
            }
        }
    }
    out.detail = format!("{pairs} (extension, REL) pairs, n<=8");
    out
}

fn pivot_completion_sufficiency(graphs: &[(String, PlaneGraph)]) -> Outcome {
    let failures: Vec<String> = graphs
        .par_iter()
        .filter(|(_, g)| admissible(g))
        .flat_map_iter(|(id, g)| {
            let mut bad = Vec::new();
            for v in g.vertices().filter(|&v| g.degree(v) > 2) {
                let e = match outer4_completion(g, v) {
                    Ok(e) => e,
                    Err(err) => {
                        bad.push(format!("{id} pivot {v}: {err}"));
                        continue;
                    }
                };
                if !e.validate_extended().is_ok() {
                    bad.push(format!("{id} pivot {v}: not an extended graph"));
                    continue;
                }
                let rels = find_rels(&e, None).unwrap();
                if rels.len() != 1 {
                    bad.push(format!("{id} pivot {v}: {} RELs", rels.len()));
                }
                if !rels[0].flippable_edges().is_empty() {
                    bad.push(format!("{id} pivot {v}: flippable edge present"));
                }
                match rectangular_dual(&rels[0]) {
                    Ok(f) if f.is_one_sided() => {}
                    Ok(_) => bad.push(format!("{id} pivot {v}: dual not one-sided")),
                    Err(err) => bad.push(format!("{id} pivot {v}: {err}")),
                }
            }
            bad
        })
        .collect();
    let pivots: usize = graphs
        .iter()
        .filter(|(_, g)| admissible(g))
        .map(|(_, g)| g.vertices().filter(|&v| g.degree(v) > 2).count())
        .sum();
    Outcome { failures, detail: format!("{pivots} pivot completions") }
}

fn staircase_matches_rel_dual(graphs: &[(String, PlaneGraph)]) -> Outcome {
    let mut out = Outcome::new();
    let mut checked = 0;
    for (id, g) in graphs.iter().filter(|(_, g)| admissible(g)) {
        for (d, w) in degree2_choices(g) {
            checked += 1;
            let e = degree2_extension(g, d, w).unwrap();
            let rels = find_rels(&e, None).unwrap();
            if rels.len() != 1 {
                out.fail(format!("{id} ({d},{w}): {} RELs", rels.len()));
                continue;
            }
            let dual = rectangular_dual(&rels[0]).unwrap();
            let stair = aurfp_staircase(g, d, w, e.partition()).unwrap();
            if dual.canonical_form() != stair.canonical_form() {
                out.fail(format!("{id} ({d},{w}): staircase and dual differ"));
            }
        }
    }
    out.detail = format!("{checked} (d, w) choices");
    out
}

fn log_uniform(rng: &mut ChaCha8Rng, vertices: impl Iterator<Item = u32>) -> AreaAssignment {
    let lo = 1e-3f64.ln();
    let hi = 1e3f64.ln();
    let areas: BTreeMap<u32, f64> = vertices.map(|v| (v, rng.random_range(lo..hi).exp())).collect();
    AreaAssignment::new(areas).unwrap()
}

fn offset_2x2() -> Layout {
    let rects = [
        (1, [0., 0., 1., 0.5]),
        (2, [0., 0.5, 1., 1.]),
        (3, [1., 0., 2., 0.6]),
        (4, [1., 0.6, 2., 1.]),
    ];
    Layout::new([0., 0., 2., 1.], rects.into_iter().collect(), Source::External).unwrap()
}

fn operational_area_universality(graphs: &[(String, PlaneGraph)]) -> Outcome {
    let layouts: Vec<(String, Layout)> = graphs
        .iter()
        .filter(|(_, g)| admissible(g))
        .flat_map(|(id, g)| {
            enumerate_area_universal(g)
                .unwrap()
                .layouts
                .into_iter()
                .map(move |l| (format!("{id} {:?}", l.origin), l.layout))
        })
        .collect();
    let failures: Vec<String> = layouts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, (name, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let form = f.canonical_form();
            let mut bad = Vec::new();
            for trial in 0..100 {
                let a = log_uniform(&mut rng, f.vertices());
                match realize_slicing(f, &a, None) {
                    Ok(g) => {
                        let err = max_relative_error(&g, &a);
                        if err > 1e-9 {
                            bad.push(format!("{name} trial {trial}: relative error {err:e}"));
                        }
                        if g.canonical_form() != form {
                            bad.push(format!("{name} trial {trial}: structure changed"));
                        }
                    }
                    Err(e) => bad.push(format!("{name} trial {trial}: {e}")),
                }
            }
            bad
        })
        .collect();
    let mut out = Outcome { failures, detail: String::new() };

    let offset = offset_2x2();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut broken = 0;
    let tries = 200;
    for _ in 0..tries {
        let a = log_uniform(&mut rng, offset.vertices());
        match realize_iterative(&offset, &a, IterativeOptions::default()) {
            Err(RealizeError::StructureBroken(_)) | Err(RealizeError::NotConverged { .. }) => broken += 1,
            Ok(_) => {}
            Err(e) => out.fail(format!("offset layout: unexpected {e}")),
        }
    }
    if broken == 0 {
        out.fail("offset 2x2 layout realized every sampled assignment");
    }
    out.detail = format!(
        "{} layouts x 100 assignments; offset 2x2 failed on {broken}/{tries} assignments",
        layouts.len()
    );
    out
}

fn flip_algebra(bf: &[BruteForce]) -> Outcome {
    let exts: Vec<_> = bf
        .iter()
        .flat_map(|b| b.extensions.iter().zip(&b.rel_counts))
        .filter(|(_, &c)| c <= 1000)
        .map(|(e, _)| e.clone())
        .collect();
    let results: Vec<(usize, Vec<String>)> = exts
        .par_iter()
        .map(|e| {
            let mut bad = Vec::new();
            let mut flips = 0;
            match rel_lattice(e, 1000) {
                Ok(l) => {
                    if !l.is_connected() {
                        bad.push(format!("lattice with {} RELs is disconnected", l.node_count()));
                    }
                    for r in &l.rels {
                        for f in r.flippable_edges() {
                            flips += 1;
                            let back = r.flip(f.edge).and_then(|s| s.flip(f.edge));
                            if back.as_ref() != Ok(r) {
                                bad.push(format!("flip of {} is not an involution", f.edge));
                            }
                        }
                    }
                }
                Err(err) => bad.push(err.to_string()),
            }
            (flips, bad)
        })
        .collect();
    let flips: usize = results.iter().map(|r| r.0).sum();
    let failures = results.into_iter().flat_map(|r| r.1).collect();
    Outcome { failures, detail: format!("{} extensions, {flips} flips", exts.len()) }
}

fn linear_pivot_completion() -> Outcome {
    let mut out = Outcome::new();
    let mut times = Vec::new();
    for n in [1_000u32, 10_000, 100_000] {
        let g = fan(n);
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let start = Instant::now();
            let e = outer4_completion(&g, 1).unwrap();
            best = best.min(start.elapsed());
            assert_eq!(e.vertex_count(), n as usize + 4);
        }
        times.push(best);
    }
    if times[2] > Duration::from_secs(1) {
        out.fail(format!("n=1e5 took {:?}", times[2]));
    }
    let ratios: Vec<f64> = times.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).collect();
    if ratios.iter().any(|&r| r > 15.0) {
        out.fail(format!("decade ratios {ratios:?}"));
    }
    out.detail = format!(
        "times {:?}, decade ratios {:.1}/{:.1}",
        times,
        ratios[0],
        ratios[1]
    );
    out
}

fn main() {
    let graphs = corpus(4, 9);
    let start = Instant::now();
    let bf: Vec<BruteForce> = graphs
        .par_iter()
        .map(|(id, g)| brute_force_au(g, DEFAULT_PAIR_CAP).unwrap_or_else(|e| panic!("{id}: {e}")))
        .collect();
    let elapsed = start.elapsed();

    let mut ok = true;
    report(1, "degree-2 census decides existence", census_characterizes_existence(&graphs, &bf, elapsed), &mut ok);
    report(2, "enumeration yields n+2 layouts", enumeration_count(&graphs), &mut ok);
    report(3, "flippable-free iff one-sided", flippable_iff_one_sided(&graphs, &bf), &mut ok);
    report(4, "pivot completions are rigid and one-sided", pivot_completion_sufficiency(&graphs), &mut ok);
    report(5, "staircase equals REL dual", staircase_matches_rel_dual(&graphs), &mut ok);
    report(6, "random areas are realized", operational_area_universality(&graphs), &mut ok);
    report(7, "flip involution and lattice connectivity", flip_algebra(&bf), &mut ok);
    report(8, "pivot completion scales linearly", linear_pivot_completion(), &mut ok);
    if !ok {
        std::process::exit(1);
    }
}
