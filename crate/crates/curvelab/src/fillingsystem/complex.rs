//! The combinatorial map underlying a filling decomposition.

use crate::surfaces::SurfaceType;
use crate::{invalid, Result};
use serde::{Deserialize, Serialize};

/// Darts are indices; the two darts of edge e are 2e and 2e+1.
pub type Dart = usize;

pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

/// What an edge is part of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    /// An arc of the named base curve.
    Curve(usize),
    /// A spoke joining a puncture vertex to a face corner.
    Spoke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    /// A transverse crossing of two base-curve strands (4-valent).
    Crossing,
    /// A puncture, end of a spoke (1-valent).
    Puncture,
}

/// One base curve of an intersection pattern: its name and the cyclic
/// sequence of crossing ids it passes through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub crossings: Vec<usize>,
}

/// Abstract input datum: how the base curves cross. Each crossing id occurs
/// in exactly two curve lists (once each); `signs[x]` fixes the rotation at
/// crossing x: with curves a < b meeting there, the counterclockwise order
/// of the four outgoing darts is (a-out, b-out, a-back, b-back) for +1 and
/// (a-out, b-back, a-back, b-out) for -1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPattern {
    pub curves: Vec<CurveSpec>,
    pub signs: Vec<i8>,
    /// Indices (in traced-face order) of faces that contain one puncture.
    pub punctured_faces: Vec<usize>,
}

/// Face data after tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceInfo {
    /// Boundary sides in cyclic order.
    pub sides: Vec<Dart>,
    /// The face contains a puncture (before spokes are attached the face is
    /// a once-punctured disk; afterwards it is a disk whose boundary visits
    /// the puncture vertex).
    pub punctured: bool,
}

/// A polygonal decomposition of a surface by a filling curve system,
/// augmented with one spoke per punctured face.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    pub surface: SurfaceType,
    pub curve_names: Vec<String>,
    /// Per-dart tail vertex.
    vertex_of: Vec<usize>,
    /// Counterclockwise next outgoing dart at the tail vertex.
    next_at_vertex: Vec<Dart>,
    pub edge_kinds: Vec<EdgeKind>,
    pub vertex_kinds: Vec<VertexKind>,
    /// Traced faces (all disks, after spokes).
    pub faces: Vec<FaceInfo>,
    /// Per-dart face id (the face this dart is a side of).
    face_of: Vec<usize>,
    /// Per curve: the darts traversing it forward, in cyclic order.
    pub curve_darts: Vec<Vec<Dart>>,
    /// Whether the base system fills: every pre-spoke face was a disk or a
    /// once-punctured disk. True for every constructible pattern here.
    pub fills: bool,
    /// Number of crossings between each pair of base curves, from the
    /// pattern (symmetric matrix).
    pub pattern_crossings: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn dart_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_kinds.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.vertex_kinds
            .iter()
            .filter(|k| matches!(k, VertexKind::Crossing))
            .count()
    }

    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    pub fn next_out(&self, d: Dart) -> Dart {
        self.next_at_vertex[d]
    }

    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn edge_kind(&self, d: Dart) -> EdgeKind {
        self.edge_kinds[edge_of(d)]
    }

    pub fn is_curve_dart(&self, d: Dart) -> bool {
        matches!(self.edge_kind(d), EdgeKind::Curve(_))
    }

    pub fn curve_of_dart(&self, d: Dart) -> Option<usize> {
        match self.edge_kind(d) {
            EdgeKind::Curve(c) => Some(c),
            EdgeKind::Spoke => None,
        }
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.curve_names.iter().position(|n| n == name)
    }

    /// Position of side d within its face boundary.
    pub fn side_position(&self, d: Dart) -> usize {
        self.faces[self.face_of[d]]
            .sides
            .iter()
            .position(|&s| s == d)
            .expect("dart indexed by its face")
    }

    /// chi of the surface computed from the complex: vertices - edges +
    /// faces, with punctured faces contributing zero.
    pub fn euler_from_cells(&self) -> i64 {
        let punctured = self.faces.iter().filter(|f| f.punctured).count() as i64;
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64 - punctured
    }

    /// chi of the thickened union of the base curves: crossings minus
    /// curve arcs, which equals minus the total number of crossings.
    pub fn euler_of_filling_neighborhood(&self) -> i64 {
        let crossings = self.crossing_count() as i64;
        let curve_edges = self
            .edge_kinds
            .iter()
            .filter(|k| matches!(k, EdgeKind::Curve(_)))
            .count() as i64;
        crossings - curve_edges
    }

    /// Total crossings between two base curves per the pattern.
    pub fn base_intersection(&self, a: usize, b: usize) -> usize {
        self.pattern_crossings[a][b]
    }

    /// Serialize vertices/edges/faces to a JSON value.
    pub fn dump_json(&self) -> serde_json::Value {
        serde_json::json!({
            "surface": self.surface.to_string(),
            "curves": self.curve_names,
            "vertices": self.vertex_count(),
            "edges": self.edge_kinds.iter().enumerate().map(|(e, k)| {
                serde_json::json!({
                    "id": e,
                    "kind": match k {
                        EdgeKind::Curve(c) => self.curve_names[*c].clone(),
                        EdgeKind::Spoke => "spoke".to_string(),
                    },
                    "tail": self.vertex_of[2 * e],
                    "head": self.vertex_of[2 * e + 1],
                })
            }).collect::<Vec<_>>(),
            "faces": self.faces.iter().map(|f| serde_json::json!({
                "sides": f.sides,
                "punctured": f.punctured,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Build the decomposition from an abstract pattern. Fails when the pattern
/// is combinatorially inconsistent (crossing multiplicities, disconnected),
/// when the Euler count does not close on an orientable surface, or when a
/// traced disk face is a monogon or bigon (the base curves would not be in
/// minimal position).
pub fn build_decomposition(pattern: &IntersectionPattern) -> Result<Decomposition> {
    let ncurves = pattern.curves.len();
    if ncurves == 0 {
        return Err(invalid("pattern needs at least one curve"));
    }
    // Crossing bookkeeping: each crossing occurs once in exactly two
    // distinct curves.
    let mut occurrences: Vec<Vec<(usize, usize)>> = Vec::new(); // crossing -> [(curve, pos)]
    for (c, spec) in pattern.curves.iter().enumerate() {
        if spec.crossings.is_empty() {
            return Err(invalid(format!(
                "curve {} has no crossings; every base curve must meet the system",
                spec.name
            )));
        }
        for (pos, &x) in spec.crossings.iter().enumerate() {
            if occurrences.len() <= x {
                occurrences.resize(x + 1, Vec::new());
            }
            occurrences[x].push((c, pos));
        }
    }
    let nvert = occurrences.len();
    if pattern.signs.len() != nvert {
        return Err(invalid("signs must list one entry per crossing"));
    }
    for (x, occ) in occurrences.iter().enumerate() {
        if occ.len() != 2 {
            return Err(invalid(format!(
                "crossing {x} must occur exactly twice, found {}",
                occ.len()
            )));
        }
        if occ[0].0 == occ[1].0 {
            return Err(invalid(format!(
                "crossing {x} occurs twice on one curve; base curves are simple"
            )));
        }
    }

    // Edges: curve c, position i: edge from crossing at i to crossing at
    // i+1 (cyclically). Forward dart 2e, backward 2e+1.
    let mut edge_kinds = Vec::new();
    let mut vertex_of = Vec::new();
    let mut curve_darts: Vec<Vec<Dart>> = vec![Vec::new(); ncurves];
    // (curve, pos) -> outgoing forward dart; and incoming forward dart.
    let mut out_dart = vec![Vec::new(); ncurves];
    let mut in_dart = vec![Vec::new(); ncurves];
    for (c, spec) in pattern.curves.iter().enumerate() {
        let m = spec.crossings.len();
        out_dart[c] = vec![0; m];
        in_dart[c] = vec![0; m];
        for i in 0..m {
            let e = edge_kinds.len();
            edge_kinds.push(EdgeKind::Curve(c));
            let tail = crossing_vertex(&spec.crossings, i);
            let head = crossing_vertex(&spec.crossings, (i + 1) % m);
            vertex_of.push(tail); // dart 2e
            vertex_of.push(head); // dart 2e+1
            out_dart[c][i] = 2 * e;
            in_dart[c][(i + 1) % m] = 2 * e;
            curve_darts[c].push(2 * e);
        }
    }

    // Rotation at each crossing: curves a < b with darts
    // outA, outB, twin(inA), twin(inB).
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); nvert];
    for (x, occ) in occurrences.iter().enumerate() {
        let (&(c1, p1), &(c2, p2)) = (&occ[0], &occ[1]);
        let ((ca, pa), (cb, pb)) = if c1 < c2 {
            ((c1, p1), (c2, p2))
        } else {
            ((c2, p2), (c1, p1))
        };
        let out_a = out_dart[ca][pa];
        let out_b = out_dart[cb][pb];
        let back_a = twin(in_dart[ca][pa]);
        let back_b = twin(in_dart[cb][pb]);
        rotations[x] = match pattern.signs[x] {
            1 => vec![out_a, out_b, back_a, back_b],
            -1 => vec![out_a, back_b, back_a, out_b],
            s => return Err(invalid(format!("sign at crossing {x} must be +-1, got {s}"))),
        };
    }

    let mut next_at_vertex = vec![usize::MAX; vertex_of.len()];
    for rot in &rotations {
        for (i, &d) in rot.iter().enumerate() {
            next_at_vertex[d] = rot[(i + 1) % rot.len()];
        }
    }

    // Trace pre-spoke faces.
    let faces0 = trace_faces(&next_at_vertex, vertex_of.len());

    // Connectivity of the complex.
    if !complex_connected(&vertex_of, nvert) {
        return Err(invalid("pattern gives a disconnected curve system"));
    }

    // Euler count with the declared punctures.
    let p = pattern.punctured_faces.len();
    for &f in &pattern.punctured_faces {
        if f >= faces0.len() {
            return Err(invalid(format!(
                "punctured face index {f} out of range ({} faces)",
                faces0.len()
            )));
        }
    }
    {
        let mut sorted = pattern.punctured_faces.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != p {
            return Err(invalid("a face can hold at most one puncture"));
        }
    }
    let nedges = edge_kinds.len();
    let chi = nvert as i64 - nedges as i64 + faces0.len() as i64 - p as i64;
    let two_minus = 2 - (p as i64) - chi;
    if two_minus < 0 || two_minus % 2 != 0 {
        return Err(invalid(format!(
            "Euler count does not close: chi = {chi} with {p} punctures is not a surface"
        )));
    }
    let genus = (two_minus / 2) as u32;
    let surface = SurfaceType::new(genus, p as u32);

    // Reject monogon and bigon disk faces (non-minimal position).
    let punctured_set: std::collections::HashSet<usize> =
        pattern.punctured_faces.iter().copied().collect();
    for (fi, sides) in faces0.iter().enumerate() {
        if punctured_set.contains(&fi) {
            continue;
        }
        if sides.len() <= 2 {
            return Err(invalid(format!(
                "face {fi} is a disk {}-gon; base curves are not in minimal position",
                sides.len()
            )));
        }
    }

    // Attach one spoke per punctured face, then retrace.
    let mut vertex_kinds = vec![VertexKind::Crossing; nvert];
    for &fi in &pattern.punctured_faces {
        let sides = &faces0[fi];
        // Corner at the head of the first side: insert the spoke dart into
        // the rotation between twin(d0) and sigma(twin(d0)).
        let d0 = sides[0];
        let corner_vertex = vertex_of[twin(d0)];
        let e = edge_kinds.len();
        edge_kinds.push(EdgeKind::Spoke);
        let sp_out = 2 * e; // tail = corner vertex
        let sp_in = 2 * e + 1; // tail = puncture vertex
        let q = vertex_kinds.len();
        vertex_kinds.push(VertexKind::Puncture);
        vertex_of.push(corner_vertex);
        vertex_of.push(q);
        next_at_vertex.push(usize::MAX);
        next_at_vertex.push(usize::MAX);
        let after = next_at_vertex[twin(d0)];
        next_at_vertex[twin(d0)] = sp_out;
        next_at_vertex[sp_out] = after;
        next_at_vertex[sp_in] = sp_in;
    }

    let faces1 = trace_faces(&next_at_vertex, vertex_of.len());
    // Mark punctured faces: those whose boundary visits a puncture vertex.
    let mut faces = Vec::with_capacity(faces1.len());
    let mut face_of = vec![usize::MAX; vertex_of.len()];
    for (fi, sides) in faces1.iter().enumerate() {
        for &d in sides {
            face_of[d] = fi;
        }
        let punctured = sides
            .iter()
            .any(|&d| matches!(vertex_kinds[vertex_of[d]], VertexKind::Puncture));
        faces.push(FaceInfo {
            sides: sides.clone(),
            punctured,
        });
    }

    // Pairwise crossing counts.
    let mut pattern_crossings = vec![vec![0usize; ncurves]; ncurves];
    for occ in &occurrences {
        let (c1, c2) = (occ[0].0, occ[1].0);
        pattern_crossings[c1][c2] += 1;
        pattern_crossings[c2][c1] += 1;
    }

    let deco = Decomposition {
        surface,
        curve_names: pattern.curves.iter().map(|c| c.name.clone()).collect(),
        vertex_of,
        next_at_vertex,
        edge_kinds,
        vertex_kinds,
        faces,
        face_of,
        curve_darts,
        fills: true,
        pattern_crossings,
    };
    debug_assert_eq!(deco.euler_from_cells(), deco.surface.euler_characteristic());
    Ok(deco)
}

fn crossing_vertex(_crossings: &[usize], _i: usize) -> usize {
    // Crossing ids ARE vertex ids.
    _crossings[_i]
}

/// Orbits of d -> sigma(twin(d)): the faces. Listed in order of smallest
/// member dart, each orbit starting at its smallest dart.
fn trace_faces(next_at_vertex: &[Dart], ndarts: usize) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; ndarts];
    let mut faces = Vec::new();
    for start in 0..ndarts {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            orbit.push(d);
            d = next_at_vertex[twin(d)];
            if d == start {
                break;
            }
        }
        faces.push(orbit);
    }
    faces
}

fn complex_connected(vertex_of: &[usize], nvert: usize) -> bool {
    if nvert == 0 {
        return false;
    }
    let nedges = vertex_of.len() / 2;
    let mut adj = vec![Vec::new(); nvert];
    for e in 0..nedges {
        let (a, b) = (vertex_of[2 * e], vertex_of[2 * e + 1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nvert];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == nvert
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn torus_pattern() -> IntersectionPattern {
        IntersectionPattern {
            curves: vec![
                CurveSpec {
                    name: "u".into(),
                    crossings: vec![0],
                },
                CurveSpec {
                    name: "v".into(),
                    crossings: vec![0],
                },
            ],
            signs: vec![1],
            punctured_faces: vec![0],
        }
    }

    #[test]
    fn torus_decomposition_counts() {
        let d = build_decomposition(&torus_pattern()).unwrap();
        assert_eq!(d.surface, SurfaceType::new(1, 1));
        assert_eq!(d.crossing_count(), 1);
        // 2 curve edges + 1 spoke.
        assert_eq!(d.edge_count(), 3);
        // One hexagon face (square plus the doubled spoke).
        assert_eq!(d.faces.len(), 1);
        assert_eq!(d.faces[0].sides.len(), 6);
        assert!(d.faces[0].punctured);
        assert_eq!(d.euler_of_filling_neighborhood(), -1);
        assert_eq!(d.euler_from_cells(), -1);
    }

    #[test]
    fn rejects_bad_multiplicity() {
        let mut p = torus_pattern();
        p.curves[1].crossings = vec![0, 0];
        assert!(build_decomposition(&p).is_err());
    }

    #[test]
    fn rejects_unpunctured_bigon() {
        // Two curves crossing twice with a bigon face and no punctures.
        let p = IntersectionPattern {
            curves: vec![
                CurveSpec {
                    name: "u".into(),
                    crossings: vec![0, 1],
                },
                CurveSpec {
                    name: "v".into(),
                    crossings: vec![0, 1],
                },
            ],
            signs: vec![1, -1],
            punctured_faces: vec![],
        };
        assert!(build_decomposition(&p).is_err());
    }

    #[test]
    fn sphere4_needs_all_faces_punctured() {
        let curves = vec![
            CurveSpec {
                name: "u".into(),
                crossings: vec![0, 1],
            },
            CurveSpec {
                name: "v".into(),
                crossings: vec![0, 1],
            },
        ];
        let p = IntersectionPattern {
            curves,
            signs: vec![1, -1],
            punctured_faces: vec![0, 1, 2, 3],
        };
        let d = build_decomposition(&p).unwrap();
        assert_eq!(d.surface, SurfaceType::new(0, 4));
        assert_eq!(d.euler_of_filling_neighborhood(), -2);
        assert_eq!(d.faces.len(), 4);
        assert!(d.faces.iter().all(|f| f.punctured));
    }
}
