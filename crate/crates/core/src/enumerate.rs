//! All area-universal layouts of a graph: one per pivot of degree > 2 and one
//! per (degree-2 vertex, neighbor) pair, deduplicated up to rotation.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::embedding::Vertex;
use crate::extension::{degree2_choices, degree2_extension, outer4_completion, ExtensionError};
use crate::floorplan::{aurfp_staircase, rectangular_dual, FloorplanError, Layout};
use crate::graph::{PlaneGraph, ValidationReport};
use crate::rel::{find_rels, RelError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EnumerateError {
    #[error("graph is not a proper outerplanar triangulation of order > 3: {0:?}")]
    NotProper(ValidationReport),
    #[error("graph has {} degree-2 vertices {census:?}; exactly two are required", census.len())]
    NotAdmissible { census: Vec<Vertex> },
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error(transparent)]
    Floorplan(#[from] FloorplanError),
}

impl EnumerateError {
    pub fn code(&self) -> &'static str {
        match self {
            EnumerateError::NotProper(_) => "NotProper",
            EnumerateError::NotAdmissible { .. } => "NotAdmissible",
            EnumerateError::Extension(e) => e.code(),
            EnumerateError::Rel(e) => e.code(),
            EnumerateError::Floorplan(e) => e.code(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    Pivot { vertex: Vertex },
    Degree2 { d: Vertex, w: Vertex },
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumeratedLayout {
    pub origin: Origin,
    pub canonical: String,
    pub one_sided: bool,
    pub layout: Layout,
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    /// Distinct up to rotation, pivots by id first, then `(d, w)` pairs.
    pub layouts: Vec<EnumeratedLayout>,
    /// Layouts built before deduplication.
    pub generated: usize,
    pub count: usize,
    pub count_modulo_reflection: usize,
    pub expected: usize,
}

impl Enumeration {
    pub fn matches(&self) -> bool {
        self.count == self.expected
    }

    pub fn canonical_forms(&self) -> BTreeSet<String> {
        self.layouts.iter().map(|l| l.canonical.clone()).collect()
    }
}

fn build(g: &PlaneGraph, origin: Origin) -> Result<Layout, EnumerateError> {
    Ok(match origin {
        Origin::Pivot { vertex } => {
            let e = outer4_completion(g, vertex)?;
            let r = find_rels(&e, Some(1))?.remove(0);
            rectangular_dual(&r)?
        }
        Origin::Degree2 { d, w } => {
            let e = degree2_extension(g, d, w)?;
            aurfp_staircase(g, d, w, e.partition())?
        }
    })
}

pub fn enumerate_area_universal(g: &PlaneGraph) -> Result<Enumeration, EnumerateError> {
    let report = g.validate_proper();
    if !report.is_ok() {
        return Err(EnumerateError::NotProper(report));
    }
    let census = g.degree2_vertices();
    if census.len() != 2 {
        return Err(EnumerateError::NotAdmissible { census });
    }
    let origins: Vec<Origin> = g
        .vertices()
        .filter(|&v| g.degree(v) > 2)
        .map(|vertex| Origin::Pivot { vertex })
        .chain(degree2_choices(g).into_iter().map(|(d, w)| Origin::Degree2 { d, w }))
        .collect();
    let built: Vec<Layout> = origins.par_iter().map(|&o| build(g, o)).collect::<Result<_, _>>()?;
    let generated = built.len();
    let mut seen = BTreeSet::new();
    let mut reflected = BTreeSet::new();
    let mut layouts = Vec::new();
    for (origin, layout) in origins.into_iter().zip(built) {
        let canonical = layout.canonical_form();
        reflected.insert(layout.canonical_form_mod_reflection());
        if seen.insert(canonical.clone()) {
            let one_sided = layout.is_one_sided();
            layouts.push(EnumeratedLayout { origin, canonical, one_sided, layout });
        }
    }
    Ok(Enumeration {
        count: layouts.len(),
        layouts,
        generated,
        count_modulo_reflection: reflected.len(),
        expected: g.n() as usize + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn fan4_has_six() {
        let e = enumerate_area_universal(&fan4()).unwrap();
        assert_eq!(e.count, 6);
        assert!(e.matches());
        assert!(e.layouts.iter().all(|l| l.one_sided));
        assert_eq!(e.layouts[0].origin, Origin::Pivot { vertex: 1 });
    }

    #[test]
    fn snake6_has_eight() {
        let e = enumerate_area_universal(&snake6()).unwrap();
        assert_eq!((e.count, e.expected), (8, 8));
        let pivots: Vec<Origin> = e.layouts.iter().map(|l| l.origin).take(4).collect();
        assert_eq!(
            pivots,
            [2, 3, 5, 6].map(|vertex| Origin::Pivot { vertex }).to_vec()
        );
        assert!(e.count_modulo_reflection <= e.count);
    }

    #[test]
    fn triforce_is_not_admissible() {
        assert_eq!(
            enumerate_area_universal(&triforce6()).unwrap_err(),
            EnumerateError::NotAdmissible { census: vec![2, 4, 6] }
        );
    }

    #[test]
    fn dual_adjacency_is_the_graph() {
        let g = snake6();
        for l in enumerate_area_universal(&g).unwrap().layouts {
            assert_eq!(l.layout.interior_adjacency(), g.edges().into_iter().collect());
        }
    }
}
