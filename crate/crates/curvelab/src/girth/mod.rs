//! Girth-based short-curve machinery on cut surfaces.
//!
//! A filling weighted multi-arc on a bounded surface cuts it into polygons.
//! The dual graph (polygons as vertices, shared arcs as edges) has average
//! degree at least 3; discarding the heaviest arcs and extracting a short
//! cycle of the remaining dual graph produces an essential curve whose
//! weighted intersection with the multi-arc is controlled. The constants
//! audit pins the arithmetic behind the size margin of 512.

mod arcs;
mod constants;
mod generator;
mod graphs;
mod pipeline;

pub use arcs::{ArcSystem, CutReport, WeightedMultiArc};
pub use constants::{audit_constants, ConstantsAudit, GirthConstants};
pub use generator::{random_filling_instance, random_graph_with_min_avg_degree, ArcInstance};
pub use graphs::{girth, girth_bound_audit, Girth, GirthBoundReport, MultiGraph};
pub use pipeline::{cut_and_recount, large_mass_arcs, short_curve, verify_short_curve, ShortCurve};
