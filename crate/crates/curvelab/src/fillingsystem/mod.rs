//! Polygonal decompositions induced by filling curve systems, and exact
//! computations with transverse curves encoded as cyclic edge words.
//!
//! The complex is a combinatorial map: crossings are 4-valent vertices,
//! arcs of base curves between crossings are edges, and faces are traced
//! from the rotation system. A puncture sits inside a face; to make every
//! face a disk, each punctured face receives a spoke: an edge from a
//! 1-valent puncture vertex to a corner of the face. Curves transverse to
//! the system are cyclic sequences of oriented edge crossings; two words
//! encode isotopic curves exactly when they are related by reduction moves
//! (removing a bigon against an edge) and slide moves (pushing a strand
//! across a 4-valent crossing). Sliding across a puncture vertex is not a
//! legal move, which is what keeps punctured faces honest.

mod builtin;
mod complex;
mod enumerate;
mod intersect;
mod rebase;
mod topology;
mod twist;
mod word;

pub use builtin::{
    genus2_std, genus3_jsep, genus_g_std, oneedge_g2, sphere4_std, torus_std, BuiltinSystem,
};
pub use complex::{
    build_decomposition, CurveSpec, Decomposition, EdgeKind, FaceInfo, IntersectionPattern,
};
pub use enumerate::{enumerate_bounded_curves, CurveBounds};
pub use intersect::{
    class_is_simple, debug_self_encounters, embedded_taut, geometric_intersection,
    is_simple as is_simple_code,
};
pub use rebase::{pattern_from_codes, rebase_decomposition};
pub use topology::{
    base_subsystem_fills, complement_report, cut_along, cut_along_base_curves, face_components,
    pairing_profile, subsurface_projection, topological_type, PieceReport, ProjectedPiece,
    SubsurfaceSpec, TopologicalType,
};
pub use twist::dehn_twist;
pub use word::{debug_slide_neighbors, CurveCode};

/// Lower-level hooks for sibling modules (surgery, links): crossing
/// localization and tightening with the default search cap.
pub mod detail {
    pub use super::intersect::{crossing_encounters as crossing_encounters_public, Encounter};

    pub fn tighten_public(
        deco: &super::Decomposition,
        code: &super::CurveCode,
    ) -> super::CurveCode {
        super::word::tighten(deco, code, super::intersect::TIGHTEN_CAP)
    }

    pub fn canonical_public(
        deco: &super::Decomposition,
        code: &super::CurveCode,
    ) -> crate::Result<super::CurveCode> {
        super::word::canonical_form(deco, code, 2_000_000)
    }
}
