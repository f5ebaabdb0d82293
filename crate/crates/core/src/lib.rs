//! Area-universal rectangular layouts of biconnected outerplanar triangulated graphs.
//!
//! The pipeline runs from a [`PlaneGraph`] (outer cycle plus chords) through an
//! [`ExtendedGraph`] with four cardinal vertices, a [`RegularEdgeLabeling`],
//! and finally a [`Layout`] of axis-aligned rectangles that can be resized to
//! any positive area assignment.

pub mod embedding;
pub mod graph;
pub mod extension;
pub mod rel;
pub mod floorplan;
pub mod realize;
pub mod enumerate;
pub mod oracle;

pub use embedding::{Edge, Embedding, SeparatingTriangle, Vertex};
pub use extension::{
    all_4completions, degree2_choices, degree2_extension, outer4_completion, BoundaryPartition,
    Cardinal, ExtendedGraph, ExtendedJson, ExtendedReport, ExtensionError,
};
pub use graph::{GraphError, GraphJson, PlaneGraph, ValidationReport, WeakDual};
pub use rel::{
    find_rels, rel_lattice, visit_rels, FlippableEdge, Label, Orientation, RegularEdgeLabeling, RelError,
    RelJson, RelLattice,
};
pub use floorplan::{
    aurfp_order, aurfp_staircase, rectangular_dual, AurfpOrder, Axis, Contacts, FloorplanError, Layout,
    LayoutError, Rect, Segment, Source,
};
pub use realize::{
    max_relative_error, realize_iterative, realize_slicing, slicing_tree, AreaAssignment, IterativeOptions,
    RealizeError, SlicingTree,
};
pub use enumerate::{enumerate_area_universal, EnumeratedLayout, EnumerateError, Enumeration, Origin};
pub use oracle::{
    brute_force_au, corpus, polygon_triangulations, verify_graph, verify_theorems, BruteForce, GraphReport,
    OracleError, OracleReport, PairRecord, Witness, DEFAULT_PAIR_CAP,
};
