//! Brute-force ground truth over every 4-completion and every REL of small
//! graphs, and per-graph cross-checks of the constructive pipeline against it.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::embedding::Vertex;
use crate::enumerate::enumerate_area_universal;
use crate::extension::{all_4completions, outer4_completion, ExtendedGraph, ExtensionError};
use crate::floorplan::{rectangular_dual, FloorplanError, Layout};
use crate::graph::PlaneGraph;
use crate::rel::{find_rels, visit_rels, RegularEdgeLabeling, RelError};

/// Default bound on visited (extension, REL) pairs per graph.
pub const DEFAULT_PAIR_CAP: usize = 10_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("search exceeded {cap} (extension, labeling) pairs")]
    BudgetExceeded { cap: usize },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Floorplan(#[from] FloorplanError),
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            OracleError::BudgetExceeded { .. } => "BudgetExceeded",
            OracleError::Extension(e) => e.code(),
            OracleError::Rel(e) => e.code(),
            OracleError::Floorplan(e) => e.code(),
        }
    }
}

fn triangulate(i: Vertex, j: Vertex, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
    if j - i < 2 {
        out.push(Vec::new());
        return;
    }
    for k in i + 1..j {
        let mut left = Vec::new();
        triangulate(i, k, &mut left);
        let mut right = Vec::new();
        triangulate(k, j, &mut right);
        for l in &left {
            for r in &right {
                let mut chords = l.clone();
                chords.extend(r);
                if k > i + 1 {
                    chords.push((i, k));
                }
                if j > k + 1 {
                    chords.push((k, j));
                }
                out.push(chords);
            }
        }
    }
}

/// Every triangulation of the convex `n`-gon with boundary `1, 2, ..., n`.
pub fn polygon_triangulations(n: u32) -> Vec<PlaneGraph> {
    if n < 3 {
        return Vec::new();
    }
    let mut sets = Vec::new();
    triangulate(1, n, &mut sets);
    let cycle: Vec<Vertex> = (1..=n).collect();
    sets.into_iter()
        .map(|chords| PlaneGraph::from_outer_cycle_and_chords(n, &cycle, &chords).expect("polygon triangulation"))
        .collect()
}

/// `(id, graph)` pairs for all triangulations with `nmin <= n <= nmax`,
/// ids `n{n}-t{index}`.
pub fn corpus(nmin: u32, nmax: u32) -> Vec<(String, PlaneGraph)> {
    (nmin.max(3)..=nmax)
        .flat_map(|n| {
            polygon_triangulations(n)
                .into_iter()
                .enumerate()
                .map(move |(i, g)| (format!("n{n}-t{i}"), g))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub extension: Arc<ExtendedGraph>,
    pub rel: RegularEdgeLabeling,
    pub layout: Layout,
}

/// One visited (extension, REL) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub extension: usize,
    pub flippable_free: bool,
    pub one_sided: bool,
}

#[derive(Clone, Debug)]
pub struct BruteForce {
    pub exists: bool,
    pub witnesses: Vec<Witness>,
    pub extensions: Vec<Arc<ExtendedGraph>>,
    /// Number of RELs per extension.
    pub rel_counts: Vec<usize>,
    pub pairs: Vec<PairRecord>,
}

impl BruteForce {
    pub fn witness_forms(&self) -> BTreeSet<String> {
        self.witnesses.iter().map(|w| w.layout.canonical_form()).collect()
    }
}

/// Searches every valid 4-completion and every REL of it; a witness is a pair
/// whose rectangular dual is one-sided.
pub fn brute_force_au(g: &PlaneGraph, cap: usize) -> Result<BruteForce, OracleError> {
    let extensions: Vec<Arc<ExtendedGraph>> = all_4completions(g)?.into_iter().map(Arc::new).collect();
    let mut witnesses = Vec::new();
    let mut pairs = Vec::new();
    let mut rel_counts = Vec::with_capacity(extensions.len());
    for (i, e) in extensions.iter().enumerate() {
        let mut failure: Option<OracleError> = None;
        let mut count = 0;
        visit_rels(e, |rel| {
            if pairs.len() == cap {
                failure = Some(OracleError::BudgetExceeded { cap });
                return ControlFlow::Break(());
            }
            count += 1;
            let layout = match rectangular_dual(&rel) {
                Ok(l) => l,
                Err(err) => {
                    failure = Some(err.into());
                    return ControlFlow::Break(());
                }
            };
            let one_sided = layout.is_one_sided();
            pairs.push(PairRecord { extension: i, flippable_free: rel.flippable_edges().is_empty(), one_sided });
            if one_sided {
                witnesses.push(Witness { extension: Arc::clone(e), rel, layout });
            }
            ControlFlow::Continue(())
        })?;
        if let Some(err) = failure {
            return Err(err);
        }
        rel_counts.push(count);
    }
    Ok(BruteForce { exists: !witnesses.is_empty(), witnesses, extensions, rel_counts, pairs })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GraphReport {
    pub id: String,
    pub n: u32,
    pub census: Vec<Vertex>,
    pub exists: bool,
    pub extensions: usize,
    pub pairs: usize,
    pub witnesses: usize,
    pub distinct_witness_layouts: usize,
    /// Extensions with a flippable-free REL that also have other RELs.
    pub rigid_but_not_unique: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    pub graphs: Vec<GraphReport>,
    pub counterexamples: Vec<String>,
}

impl OracleReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn check_pivots(g: &PlaneGraph, bad: &mut Vec<String>) -> Result<(), OracleError> {
    for v in g.vertices().filter(|&v| g.degree(v) > 2) {
        let e = outer4_completion(g, v)?;
        if !e.validate_extended().is_ok() {
            bad.push(format!("pivot: pivot {v} extension fails validation"));
            continue;
        }
        let rels = find_rels(&e, Some(2))?;
        if rels.len() != 1 {
            bad.push(format!("pivot: pivot {v} extension has more than one REL"));
        }
        if !rels[0].flippable_edges().is_empty() {
            bad.push(format!("pivot: pivot {v} REL has a flippable edge"));
        }
        if !rectangular_dual(&rels[0])?.is_one_sided() {
            bad.push(format!("pivot: pivot {v} dual is not one-sided"));
        }
    }
    Ok(())
}

/// Runs every check on one graph; counterexamples are reported, never raised.
pub fn verify_graph(id: &str, g: &PlaneGraph, cap: usize) -> GraphReport {
    let census = g.degree2_vertices();
    let mut report = GraphReport { id: id.to_string(), n: g.n(), census: census.clone(), ..Default::default() };
    let bf = match brute_force_au(g, cap) {
        Ok(bf) => bf,
        Err(e) => {
            report.counterexamples.push(format!("oracle failed: {e}"));
            return report;
        }
    };
    let bad = &mut report.counterexamples;
    let admissible = census.len() == 2;
    report.exists = bf.exists;
    report.extensions = bf.extensions.len();
    report.pairs = bf.pairs.len();
    report.witnesses = bf.witnesses.len();

    if bf.exists != admissible {
        bad.push(format!("existence: exists={} but degree-2 census is {census:?}", bf.exists));
    }
    for p in &bf.pairs {
        if p.flippable_free != p.one_sided {
            bad.push(format!(
                "flip-free: extension #{} has a REL with flippable_free={} one_sided={}",
                p.extension, p.flippable_free, p.one_sided
            ));
        }
    }
    let mut rigid_shared = BTreeSet::new();
    for w in &bf.witnesses {
        let e = &w.extension;
        let three = e.vertices_with_cardinals(3);
        if three.is_empty() {
            bad.push("three-cardinal: witness without a vertex on exactly three cardinals".to_string());
        }
        let idx = bf.extensions.iter().position(|x| Arc::ptr_eq(x, e)).expect("own extension");
        for &d in three.iter().filter(|&&d| g.degree(d) == 2) {
            if !g.neighbors(d).any(|u| e.attachments(u).len() == 2) {
                bad.push(format!("two-cardinal-neighbor: extension #{idx}: degree-2 vertex {d} has no neighbor on exactly two cardinals"));
            }
        }
        if bf.rel_counts[idx] > 1 {
            rigid_shared.insert(idx);
        }
    }
    report.rigid_but_not_unique = rigid_shared.len();

    let forms = bf.witness_forms();
    report.distinct_witness_layouts = forms.len();
    if admissible {
        if forms.len() != g.n() as usize + 2 {
            bad.push(format!("count: {} distinct witness layouts, expected {}", forms.len(), g.n() + 2));
        }
        if let Err(e) = check_pivots(g, bad) {
            bad.push(format!("pivot: {e}"));
        }
        match enumerate_area_universal(g) {
            Ok(en) => {
                if en.canonical_forms() != forms {
                    bad.push("count: enumerated layouts differ from brute-force witnesses".to_string());
                }
            }
            Err(e) => bad.push(format!("count: enumeration failed: {e}")),
        }
    }
    let mut seen = BTreeSet::new();
    report.counterexamples.retain(|c| seen.insert(c.clone()));
    report
}

/// Verifies every graph in parallel; the report keeps corpus order.
pub fn verify_theorems(corpus: &[(String, PlaneGraph)], cap: usize) -> OracleReport {
    let graphs: Vec<GraphReport> = corpus.par_iter().map(|(id, g)| verify_graph(id, g, cap)).collect();
    let counterexamples = graphs
        .iter()
        .flat_map(|r| r.counterexamples.iter().map(move |c| format!("{}: {c}", r.id)))
        .collect();
    OracleReport { graphs, counterexamples }
}
