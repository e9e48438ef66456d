//! Topological classification of codes: separation via mod-2 intersection
//! pairings with a cycle basis of the skeleton, exact cutting along taut
//! codes or base curves, and non-annular subsurface projection.

use super::complex::{edge_of, twin, Dart, Decomposition, EdgeKind, VertexKind};
use super::intersect::{self, TIGHTEN_CAP};
use super::word::{canonical_form, tighten, CurveCode};
use crate::surfaces::{CutComponent, SubsurfaceSummary};
use crate::{invalid, precondition, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Coarse type of a curve class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologicalType {
    Inessential,
    /// Bounds a once-punctured disk.
    Peripheral,
    Nonseparating,
    Separating(SubsurfaceSummary),
}

/// Fundamental cycles of the skeleton graph (edge index sets), from a
/// spanning tree. Pairing a transverse curve with these detects its class
/// in H_1(S; Z/2): the skeleton carries the whole group.
fn cycle_basis(deco: &Decomposition) -> Vec<Vec<usize>> {
    let nv = deco.vertex_count();
    let ne = deco.edge_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let (a, b) = (deco.vertex(2 * e), deco.vertex(2 * e + 1));
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut parent_edge = vec![usize::MAX; nv];
    let mut parent = vec![usize::MAX; nv];
    let mut depth = vec![0usize; nv];
    let mut seen = vec![false; nv];
    let mut order = Vec::new();
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut tree_edges = HashSet::new();
    while let Some(x) = stack.pop() {
        order.push(x);
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                parent_edge[y] = e;
                depth[y] = depth[x] + 1;
                tree_edges.insert(e);
                stack.push(y);
            }
        }
    }
    let mut basis = Vec::new();
    for e in 0..ne {
        if tree_edges.contains(&e) {
            continue;
        }
        let (mut a, mut b) = (deco.vertex(2 * e), deco.vertex(2 * e + 1));
        let mut cycle = vec![e];
        while a != b {
            if depth[a] >= depth[b] {
                cycle.push(parent_edge[a]);
                a = parent[a];
            } else {
                cycle.push(parent_edge[b]);
                b = parent[b];
            }
        }
        // Edges appearing twice cancel mod 2.
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &ed in &cycle {
            *counts.entry(ed).or_insert(0) += 1;
        }
        basis.push(
            counts
                .into_iter()
                .filter(|&(_, c)| c % 2 == 1)
                .map(|(ed, _)| ed)
                .collect(),
        );
    }
    basis
}

/// Parities of the intersection pairing of a code with each fundamental
/// cycle: the mod-2 homology profile. Zero exactly for separating (or
/// nullhomologous) classes.
pub fn pairing_profile(deco: &Decomposition, code: &CurveCode) -> Vec<u8> {
    let mut per_edge = vec![0usize; deco.edge_count()];
    for &d in code.darts() {
        per_edge[edge_of(d)] += 1;
    }
    cycle_basis(deco)
        .iter()
        .map(|cycle| (cycle.iter().map(|&e| per_edge[e]).sum::<usize>() % 2) as u8)
        .collect()
}

pub fn is_separating_class(deco: &Decomposition, code: &CurveCode) -> bool {
    pairing_profile(deco, code).iter().all(|&b| b == 0)
}

/// Classify a code: inessential, peripheral, non-separating, or separating
/// with the summary of both sides.
pub fn topological_type(deco: &Decomposition, code: &CurveCode) -> Result<TopologicalType> {
    code.validate(deco)?;
    let canon = canonical_form(deco, code, 2_000_000)?;
    if canon.is_empty() {
        return Ok(TopologicalType::Inessential);
    }
    if canon.len() == 1 && !deco.is_curve_dart(canon.darts()[0]) {
        return Ok(TopologicalType::Peripheral);
    }
    let embedded = intersect::embedded_taut(deco, &canon)
        .map_err(|_| invalid("topological_type expects a simple curve code"))?;
    if !is_separating_class(deco, &embedded) {
        return Ok(TopologicalType::Nonseparating);
    }
    let summary = cut_along(deco, &[embedded])?;
    Ok(TopologicalType::Separating(summary))
}

// ---------------------------------------------------------------------
// Cutting along taut codes.
// ---------------------------------------------------------------------

/// A germ: curve index and position in its word.
type Germ = (usize, usize);

struct CutContext<'a> {
    deco: &'a Decomposition,
    words: Vec<Vec<Dart>>,
}

impl<'a> CutContext<'a> {
    /// Does germ (c1, i) cross its edge strictly before (c2, j), measured
    /// along the dart words[c1][i]? Both germs must cross the same edge.
    fn foot_before(&self, g1: Germ, g2: Germ) -> Result<bool> {
        let w1 = &self.words[g1.0];
        let w2 = &self.words[g2.0];
        let (n1, n2) = (w1.len(), w2.len());
        let d1 = w1[g1.1];
        let d2 = w2[g2.1];
        debug_assert_eq!(edge_of(d1), edge_of(d2));
        let dir: i8 = if d1 == d2 { 1 } else { -1 };
        // Walk back to the start of the aligned run.
        let (mut a, mut b) = (g1.1 as isize, g2.1 as isize);
        let at = |w: &Vec<Dart>, i: isize| w[i.rem_euclid(w.len() as isize) as usize];
        let mut steps = 0;
        loop {
            let (pa, pb) = (a - 1, b + if dir == 1 { -1 } else { 1 });
            let aligned = if dir == 1 {
                at(w1, pa) == at(w2, pb)
            } else {
                at(w1, pa) == twin(at(w2, pb))
            };
            let same_germ = g1.0 == g2.0
                && dir == 1
                && pa.rem_euclid(n1 as isize) == pb.rem_euclid(n2 as isize);
            if !aligned || same_germ {
                break;
            }
            a = pa;
            b = pb;
            steps += 1;
            if steps > n1 + n2 {
                return Err(Error::Internal(
                    "periodic alignment while ordering crossings".into(),
                ));
            }
        }
        // Left-mouth ranks; smaller rank = earlier along the entry dart.
        let e_l = twin(at(w1, a));
        let p1 = at(w1, a - 1);
        let p2 = if dir == 1 {
            at(w2, b - 1)
        } else {
            twin(at(w2, b + 1))
        };
        if p1 == p2 {
            return Err(Error::Internal("mouth sides coincide; run not maximal".into()));
        }
        let f = self.deco.face(e_l);
        let n = self.deco.faces[f].sides.len();
        let pr = self.deco.side_position(e_l);
        let rank = |s: Dart| (self.deco.side_position(s) + n - pr) % n;
        Ok(rank(p1) < rank(p2))
    }
}

/// Cut the surface along disjoint simple taut codes and summarize the
/// pieces. The codes must be pairwise disjoint (geometric intersection 0 as
/// realized: their taut words may not force crossings).
pub fn cut_along(deco: &Decomposition, codes: &[CurveCode]) -> Result<SubsurfaceSummary> {
    if codes.is_empty() {
        return Err(invalid("cut_along needs at least one code"));
    }
    let mut words: Vec<Vec<Dart>> = Vec::with_capacity(codes.len());
    for c in codes {
        let emb = intersect::embedded_taut(deco, c)
            .map_err(|_| invalid("cut curves must be simple"))?;
        if emb.is_empty() {
            return Err(invalid("cannot cut along a trivial curve"));
        }
        words.push(emb.darts().to_vec());
    }
    for (i, a) in codes.iter().enumerate() {
        for b in codes.iter().skip(i + 1) {
            if intersect::geometric_intersection(deco, a, b)? != 0 {
                return Err(invalid("cut curves must be pairwise disjoint"));
            }
        }
    }
    let ctx = CutContext { deco, words };
    let words = &ctx.words;

    // Crossings per edge, ordered along the canonical dart 2e.
    let mut per_edge: Vec<Vec<Germ>> = vec![Vec::new(); deco.edge_count()];
    for (c, w) in words.iter().enumerate() {
        for (i, &d) in w.iter().enumerate() {
            per_edge[edge_of(d)].push((c, i));
        }
    }
    for e in 0..deco.edge_count() {
        let germs = std::mem::take(&mut per_edge[e]);
        let mut sorted = germs;
        // Insertion sort with the exact comparator (few germs per edge).
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 {
                let before = {
                    let g_prev = sorted[j - 1];
                    let g_cur = sorted[j];
                    // Order along dart 2e: foot_before measures along the
                    // first germ's own dart, so normalize.
                    let along_own = ctx.foot_before(g_prev, g_cur)?;
                    let d_prev = words[g_prev.0][g_prev.1];
                    if d_prev == 2 * e {
                        along_own
                    } else {
                        !along_own
                    }
                };
                if before {
                    break;
                }
                sorted.swap(j - 1, j);
                j -= 1;
            }
        }
        per_edge[e] = sorted;
    }
    // Rank of a germ along its edge (canonical direction).
    let mut germ_rank: HashMap<Germ, usize> = HashMap::new();
    for e in 0..deco.edge_count() {
        for (k, &g) in per_edge[e].iter().enumerate() {
            germ_rank.insert(g, k);
        }
    }

    // Feet around each face: (side-order, position-within-side). A germ
    // (c, i) has its entry foot on side w[i] and serves as the exit foot of
    // chord i-1 on side twin(w[i]) in the neighboring face.
    // Build, per face, the cyclic list of feet. A foot is (germ, entering:
    // bool). Feet on a side are ordered along the side's dart direction.
    #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
    struct Foot {
        curve: usize,
        pos: usize,
        entering: bool,
    }
    let mut face_feet: Vec<Vec<Foot>> = vec![Vec::new(); deco.faces.len()];
    for (fi, face) in deco.faces.iter().enumerate() {
        let mut feet = Vec::new();
        for &side in &face.sides {
            let e = edge_of(side);
            let germs: Vec<Germ> = per_edge[e].clone();
            // Along this side's direction.
            let iter: Box<dyn Iterator<Item = &Germ>> = if side == 2 * e {
                Box::new(germs.iter())
            } else {
                Box::new(germs.iter().rev())
            };
            for &(c, i) in iter {
                let d = words[c][i];
                if d == side {
                    feet.push(Foot {
                        curve: c,
                        pos: i,
                        entering: true,
                    });
                } else {
                    debug_assert_eq!(twin(d), side);
                    feet.push(Foot {
                        curve: c,
                        pos: i,
                        entering: false,
                    });
                }
            }
        }
        face_feet[fi] = feet;
    }

    // Chord pairing: chord i of curve c joins entry foot (c, i, true) to
    // exit foot (c, i+1, false), both in face(w[i]).
    // Fragments: orbits of boundary arcs under (arc after foot) -> (chord
    // jump) -> (arc after partner foot).
    let mut frag_count = 0usize;
    // fragment id per (face, arc index) where arc k runs from foot k to
    // foot k+1 (cyclic); faces without feet have one fragment.
    let mut arc_frag: Vec<Vec<usize>> = Vec::new();
    for (fi, feet) in face_feet.iter().enumerate() {
        let m = feet.len();
        if m == 0 {
            arc_frag.push(vec![frag_count]);
            frag_count += 1;
            continue;
        }
        let mut ids = vec![usize::MAX; m];
        // partner arc: after traversing arc k we sit at foot k+1; jump along
        // its chord to the partner foot p; continue with the arc starting at
        // p (arc index p).
        let partner = |foot: Foot| -> Foot {
            let w = &words[foot.curve];
            let n = w.len();
            if foot.entering {
                Foot {
                    curve: foot.curve,
                    pos: (foot.pos + 1) % n,
                    entering: false,
                }
            } else {
                Foot {
                    curve: foot.curve,
                    pos: (foot.pos + n - 1) % n,
                    entering: true,
                }
            }
        };
        let index_of: HashMap<Foot, usize> = feet
            .iter()
            .enumerate()
            .map(|(k, &f)| (f, k))
            .collect();
        for start in 0..m {
            if ids[start] != usize::MAX {
                continue;
            }
            let id = frag_count;
            frag_count += 1;
            let mut k = start;
            loop {
                ids[k] = id;
                let foot_end = feet[(k + 1) % m];
                // The chord from foot_end jumps... partner foot is the other
                // end of the chord through foot_end.
                let p = partner(foot_end);
                let pk = *index_of.get(&p).unwrap_or_else(|| {
                    panic!("partner foot {p:?} missing in face {fi}")
                });
                k = pk;
                if k == start {
                    break;
                }
            }
        }
        arc_frag.push(ids);
    }

    // Union-find over fragments via edge-segment gluings; count segments.
    let mut parent: Vec<usize> = (0..frag_count).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    // Locate the arc index following a given foot within a face, and the
    // arc preceding the first foot of a side etc. We need, per side, the
    // arc ids adjacent to each edge segment.
    // For face fi, the feet list is cyclic; arc k sits between foot k and
    // foot k+1. The arc BEFORE foot k is arc k-1.
    let foot_index: HashMap<(usize, Foot), usize> = {
        let mut m = HashMap::new();
        for (fi, feet) in face_feet.iter().enumerate() {
            for (k, &f) in feet.iter().enumerate() {
                m.insert((fi, f), k);
            }
        }
        m
    };
    let frag_after_foot = |fi: usize, foot: Foot| -> usize {
        let k = foot_index[&(fi, foot)];
        arc_frag[fi][k]
    };
    let frag_before_foot = |fi: usize, foot: Foot| -> usize {
        let k = foot_index[&(fi, foot)];
        let m = face_feet[fi].len();
        arc_frag[fi][(k + m - 1) % m]
    };
    // For a side with no feet the adjacent fragment for its whole stretch:
    // the arc containing it. With feet elsewhere in the face we need the
    // arc index "current" while walking the face boundary. Rebuild: walk
    // the face boundary side by side, tracking the running arc index.
    // side_stretch_frag[fi][side position in face] = fragment ids of the
    // segments along that side, in side direction, length = feet_on_side+1.
    let mut side_stretch_frag: Vec<Vec<Vec<usize>>> = Vec::with_capacity(deco.faces.len());
    for (fi, face) in deco.faces.iter().enumerate() {
        let feet = &face_feet[fi];
        let m = feet.len();
        let mut per_side = Vec::with_capacity(face.sides.len());
        if m == 0 {
            for _ in &face.sides {
                per_side.push(vec![arc_frag[fi][0]]);
            }
            side_stretch_frag.push(per_side);
            continue;
        }
        // Walk sides in order, keeping a running foot counter.
        let mut next_foot = 0usize; // index into feet of the next foot ahead
        for &side in &face.sides {
            let e = edge_of(side);
            let count = per_edge[e]
                .iter()
                .filter(|&&(c, i)| {
                    let d = words[c][i];
                    d == side || twin(d) == side
                })
                .count();
            let mut stretches = Vec::with_capacity(count + 1);
            // Arc before the first foot of this side is arc (next_foot - 1).
            stretches.push(arc_frag[fi][(next_foot + m - 1) % m]);
            for _ in 0..count {
                stretches.push(arc_frag[fi][next_foot]);
                next_foot = (next_foot + 1) % m;
            }
            per_side.push(stretches);
        }
        debug_assert_eq!(next_foot % m, 0);
        side_stretch_frag.push(per_side);
    }

    // Glue across every edge: segment j along dart 2e pairs with segment
    // (count - j) seen from the twin side (reversed order).
    let mut gluings: Vec<(usize, usize)> = Vec::new();
    for e in 0..deco.edge_count() {
        let count = per_edge[e].len();
        let d0 = 2 * e;
        let d1 = 2 * e + 1;
        let (f0, f1) = (deco.face(d0), deco.face(d1));
        let p0 = deco.side_position(d0);
        let p1 = deco.side_position(d1);
        let s0 = &side_stretch_frag[f0][p0];
        let s1 = &side_stretch_frag[f1][p1];
        debug_assert_eq!(s0.len(), count + 1);
        debug_assert_eq!(s1.len(), count + 1);
        for j in 0..=count {
            gluings.push((s0[j], s1[count - j]));
        }
    }
    for &(a, b) in &gluings {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }

    // Components.
    let mut comp_of_frag: HashMap<usize, usize> = HashMap::new();
    let mut comp_reps = Vec::new();
    for f in 0..frag_count {
        let r = find(&mut parent, f);
        let next = comp_reps.len();
        let entry = comp_of_frag.entry(r);
        let id = *entry.or_insert(next);
        if id == comp_reps.len() {
            comp_reps.push(r);
        }
    }
    let ncomp = comp_reps.len();
    let comp_id = |parent: &mut Vec<usize>, frag: usize, map: &HashMap<usize, usize>| -> usize {
        map[&find(parent, frag)]
    };

    // Per-component counts.
    let mut frag_counts = vec![0i64; ncomp];
    for f in 0..frag_count {
        frag_counts[comp_id(&mut parent, f, &comp_of_frag)] += 1;
    }
    let mut seg_counts = vec![0i64; ncomp];
    for &(a, _) in &gluings {
        seg_counts[comp_id(&mut parent, a, &comp_of_frag)] += 1;
    }
    // Vertices: assign via a fragment at one of their corners. The corner
    // of face(d) at the head of side d is adjacent to the stretch at the
    // end of side d.
    let mut vert_counts = vec![0i64; ncomp];
    let mut punct_counts = vec![0u32; ncomp];
    let mut vert_comp = vec![usize::MAX; deco.vertex_count()];
    for d in 0..deco.dart_count() {
        let v = deco.vertex(twin(d)); // head of d
        if vert_comp[v] != usize::MAX {
            continue;
        }
        let f = deco.face(d);
        let p = deco.side_position(d);
        let frag = *side_stretch_frag[f][p].last().unwrap();
        vert_comp[v] = comp_id(&mut parent, frag, &comp_of_frag);
    }
    for v in 0..deco.vertex_count() {
        let c = vert_comp[v];
        if c == usize::MAX {
            return Err(Error::Internal(format!("vertex {v} not assigned a side")));
        }
        vert_counts[c] += 1;
        if matches!(deco.vertex_kinds[v], VertexKind::Puncture) {
            punct_counts[c] += 1;
        }
    }

    // Boundary copies: each cut code has two banks (its two sides); the
    // bank through the fragment left resp. right of chord 0. Fragment
    // after/before the entry foot of crossing 0.
    let mut bank_counts = vec![Vec::new(); ncomp];
    for (c, w) in words.iter().enumerate() {
        let f = deco.face(w[0]);
        let foot = Foot {
            curve: c,
            pos: 0,
            entering: true,
        };
        let left = comp_id(&mut parent, frag_after_foot(f, foot), &comp_of_frag);
        let right = comp_id(&mut parent, frag_before_foot(f, foot), &comp_of_frag);
        bank_counts[left].push(c);
        bank_counts[right].push(c);
    }

    // Assemble.
    let profiles: Vec<Vec<u8>> = codes.iter().map(|c| pairing_profile(deco, c)).collect();
    let mut components = Vec::with_capacity(ncomp);
    for comp in 0..ncomp {
        let chi_cells = vert_counts[comp] - seg_counts[comp] + frag_counts[comp];
        let punctures = punct_counts[comp];
        let chi_surface = chi_cells - punctures as i64;
        let boundary = bank_counts[comp].len() as u32;
        let two_g = 2 - chi_surface - boundary as i64 - punctures as i64;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Internal(format!(
                "component {comp} has inconsistent invariants: chi {chi_surface}, \
                 boundary {boundary}, punctures {punctures}"
            )));
        }
        components.push(CutComponent {
            genus: (two_g / 2) as u32,
            boundary,
            punctures,
            boundary_labels: bank_counts[comp]
                .iter()
                .map(|&c| format!("cut{c}"))
                .collect(),
            boundary_classes: bank_counts[comp]
                .iter()
                .map(|&c| profiles[c].clone())
                .collect(),
        });
    }
    let summary = SubsurfaceSummary {
        ambient: deco.surface,
        cut_curves: codes.len() as u32,
        components,
    };
    if !summary.euler_count_closes() {
        return Err(Error::Internal(
            "cut summary does not reglue to the ambient surface".into(),
        ));
    }
    Ok(summary)
}

// ---------------------------------------------------------------------
// Cutting along base curves (the skeleton itself).
// ---------------------------------------------------------------------

/// Cut along a set of base curves of the decomposition. The cut curves must
/// be pairwise disjoint in the pattern (no shared crossings).
pub fn cut_along_base_curves(
    deco: &Decomposition,
    cut: &[usize],
) -> Result<SubsurfaceSummary> {
    let cut_set: HashSet<usize> = cut.iter().copied().collect();
    for &a in cut {
        if a >= deco.curve_names.len() {
            return Err(invalid(format!("curve index {a} out of range")));
        }
        for &b in cut {
            if a < b && deco.base_intersection(a, b) > 0 {
                return Err(invalid(
                    "base cut curves must be pairwise disjoint in the pattern",
                ));
            }
        }
    }
    let is_cut_edge = |e: usize| match deco.edge_kinds[e] {
        EdgeKind::Curve(c) => cut_set.contains(&c),
        EdgeKind::Spoke => false,
    };
    // Union faces across non-cut edges.
    let nf = deco.faces.len();
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for e in 0..deco.edge_count() {
        if is_cut_edge(e) {
            continue;
        }
        let (f0, f1) = (deco.face(2 * e), deco.face(2 * e + 1));
        let (r0, r1) = (find(&mut parent, f0), find(&mut parent, f1));
        if r0 != r1 {
            parent[r0] = r1;
        }
    }
    let mut comp_of: HashMap<usize, usize> = HashMap::new();
    let mut ncomp = 0;
    for f in 0..nf {
        let r = find(&mut parent, f);
        if !comp_of.contains_key(&r) {
            comp_of.insert(r, ncomp);
            ncomp += 1;
        }
    }
    let face_comp = |parent: &mut Vec<usize>, f: usize, map: &HashMap<usize, usize>| -> usize {
        map[&find(parent, f)]
    };

    let mut faces_in = vec![0i64; ncomp];
    let mut punct_in = vec![0u32; ncomp];
    let mut parent2 = parent.clone();
    for f in 0..nf {
        let c = face_comp(&mut parent2, f, &comp_of);
        faces_in[c] += 1;
        if deco.faces[f].punctured {
            punct_in[c] += 1;
        }
    }
    // Edges: interior edges once, cut edges one copy per adjacent side.
    let mut edge_in = vec![0i64; ncomp];
    for e in 0..deco.edge_count() {
        let c0 = face_comp(&mut parent2, deco.face(2 * e), &comp_of);
        let c1 = face_comp(&mut parent2, deco.face(2 * e + 1), &comp_of);
        if is_cut_edge(e) {
            edge_in[c0] += 1;
            edge_in[c1] += 1;
        } else {
            debug_assert_eq!(c0, c1);
            edge_in[c0] += 1;
        }
    }
    // Vertices: a vertex on a cut curve splits into two copies (one per
    // local side); other vertices contribute once. A vertex's local sides:
    // the sectors between consecutive rotation darts; sector (x, sigma x)
    // lies in face(sigma x). Group sectors by the component of their faces;
    // a vertex on a cut curve has exactly two groups.
    let mut vert_in = vec![0i64; ncomp];
    for v in 0..deco.vertex_count() {
        // Collect one dart at v.
        let mut dart_at = None;
        for d in 0..deco.dart_count() {
            if deco.vertex(d) == v {
                dart_at = Some(d);
                break;
            }
        }
        let Some(d0) = dart_at else { continue };
        let mut comps = HashSet::new();
        let mut d = d0;
        loop {
            // sector (d, sigma d) is in face(sigma d).
            let nd = deco.next_out(d);
            comps.insert(face_comp(&mut parent2, deco.face(nd), &comp_of));
            d = nd;
            if d == d0 {
                break;
            }
        }
        let on_cut = {
            let mut hit = false;
            let mut d = d0;
            loop {
                if is_cut_edge(edge_of(d)) {
                    hit = true;
                    break;
                }
                d = deco.next_out(d);
                if d == d0 {
                    break;
                }
            }
            hit
        };
        if on_cut {
            // One copy per incident component-side.
            for &c in &comps {
                vert_in[c] += 1;
            }
        } else {
            debug_assert_eq!(comps.len(), 1);
            vert_in[*comps.iter().next().unwrap()] += 1;
        }
    }

    // Banks: each cut curve has two sides; the side along dart d runs in
    // face(d).
    let mut bank_lists: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for &cidx in cut {
        let d = deco.curve_darts[cidx][0];
        let left = face_comp(&mut parent2, deco.face(d), &comp_of);
        let right = face_comp(&mut parent2, deco.face(twin(d)), &comp_of);
        bank_lists[left].push(cidx);
        bank_lists[right].push(cidx);
    }

    let mut components = Vec::with_capacity(ncomp);
    for comp in 0..ncomp {
        let chi_cells = vert_in[comp] - edge_in[comp] + faces_in[comp];
        let chi_surface = chi_cells - punct_in[comp] as i64;
        let boundary = bank_lists[comp].len() as u32;
        let two_g = 2 - chi_surface - boundary as i64 - punct_in[comp] as i64;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Internal(format!(
                "base cut component {comp} inconsistent: chi {chi_surface}, b {boundary}"
            )));
        }
        components.push(CutComponent {
            genus: (two_g / 2) as u32,
            boundary,
            punctures: punct_in[comp],
            boundary_labels: bank_lists[comp]
                .iter()
                .map(|&c| deco.curve_names[c].clone())
                .collect(),
            boundary_classes: bank_lists[comp]
                .iter()
                .map(|&c| {
                    super::builtin::pushoff_word(deco, c, 0)
                        .map(|code| pairing_profile(deco, &code))
                        .unwrap_or_default()
                })
                .collect(),
        });
    }
    let summary = SubsurfaceSummary {
        ambient: deco.surface,
        cut_curves: cut.len() as u32,
        components,
    };
    if !summary.euler_count_closes() {
        return Err(Error::Internal(
            "base cut summary does not reglue to the ambient surface".into(),
        ));
    }
    Ok(summary)
}

/// Which component of the base-curve cut each face belongs to, in the same
/// component order as `cut_along_base_curves`.
pub fn face_components(deco: &Decomposition, cut: &[usize]) -> Result<Vec<usize>> {
    let cut_set: HashSet<usize> = cut.iter().copied().collect();
    let is_cut_edge = |e: usize| match deco.edge_kinds[e] {
        EdgeKind::Curve(c) => cut_set.contains(&c),
        EdgeKind::Spoke => false,
    };
    let nf = deco.faces.len();
    let mut parent: Vec<usize> = (0..nf).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for e in 0..deco.edge_count() {
        if is_cut_edge(e) {
            continue;
        }
        let (f0, f1) = (deco.face(2 * e), deco.face(2 * e + 1));
        let (r0, r1) = (find(&mut parent, f0), find(&mut parent, f1));
        if r0 != r1 {
            parent[r0] = r1;
        }
    }
    let mut comp_of: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(nf);
    for f in 0..nf {
        let r = find(&mut parent, f);
        let n = comp_of.len();
        let id = *comp_of.entry(r).or_insert(n);
        out.push(id);
    }
    Ok(out)
}

/// One complementary piece of a base sub-system (which may self-intersect:
/// u and v are allowed to cross, unlike in `cut_along_base_curves`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub chi: i64,
    pub boundary_circles: usize,
    pub punctures: u32,
    pub genus: u32,
}

impl PieceReport {
    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundary_circles == 1 && self.punctures == 0
    }

    pub fn is_once_punctured_disk(&self) -> bool {
        self.chi == 0 && self.boundary_circles == 1 && self.punctures == 1
    }
}

/// Pieces of the complement of a set of base curves, supporting
/// intersecting cut curves (vertices where two cut curves cross split into
/// four corners).
pub fn complement_report(deco: &Decomposition, cut: &[usize]) -> Result<Vec<PieceReport>> {
    let cut_set: HashSet<usize> = cut.iter().copied().collect();
    for &a in cut {
        if a >= deco.curve_names.len() {
            return Err(invalid(format!("curve index {a} out of range")));
        }
    }
    let is_cut_edge = |e: usize| match deco.edge_kinds[e] {
        EdgeKind::Curve(c) => cut_set.contains(&c),
        EdgeKind::Spoke => false,
    };
    let face_comp = face_components(deco, cut)?;
    let ncomp = face_comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut faces_in = vec![0i64; ncomp];
    let mut punct_in = vec![0u32; ncomp];
    for &c in face_comp.iter() {
        faces_in[c] += 1;
    }
    // Punctures are vertices; count them with the vertex groups below.
    let mut edge_in = vec![0i64; ncomp];
    for e in 0..deco.edge_count() {
        let c0 = face_comp[deco.face(2 * e)];
        let c1 = face_comp[deco.face(2 * e + 1)];
        if is_cut_edge(e) {
            edge_in[c0] += 1;
            edge_in[c1] += 1;
        } else {
            debug_assert_eq!(c0, c1);
            edge_in[c0] += 1;
        }
    }
    // Vertex corner groups: the rotation split at cut darts.
    let mut vert_in = vec![0i64; ncomp];
    for v in 0..deco.vertex_count() {
        let mut d0 = None;
        for d in 0..deco.dart_count() {
            if deco.vertex(d) == v {
                d0 = Some(d);
                break;
            }
        }
        let Some(d0) = d0 else { continue };
        let mut star = vec![d0];
        let mut d = deco.next_out(d0);
        while d != d0 {
            star.push(d);
            d = deco.next_out(d);
        }
        let cut_positions: Vec<usize> = (0..star.len())
            .filter(|&i| is_cut_edge(edge_of(star[i])))
            .collect();
        if cut_positions.is_empty() {
            // Whole vertex in one piece: the component of any sector face.
            let comp = face_comp[deco.face(deco.next_out(star[0]))];
            vert_in[comp] += 1;
            if matches!(deco.vertex_kinds[v], VertexKind::Puncture) {
                punct_in[comp] += 1;
            }
        } else {
            // One corner copy per cut dart: the group of sectors clockwise
            // until the next cut dart. The sector between star[i] and
            // star[i+1] lies in face(star[i+1]).
            for &p in &cut_positions {
                // Corner starting at cut dart star[p]: its first sector is
                // (star[p], star[p+1]).
                let nxt = star[(p + 1) % star.len()];
                let comp = face_comp[deco.face(nxt)];
                vert_in[comp] += 1;
            }
        }
    }
    // Boundary circles: orbits of cut-edge sides under "scan the rotation
    // from the twin for the next cut dart".
    let mut circles_in = vec![0usize; ncomp];
    let mut seen: HashSet<Dart> = HashSet::new();
    for d_start in 0..deco.dart_count() {
        if !is_cut_edge(edge_of(d_start)) || seen.contains(&d_start) {
            continue;
        }
        circles_in[face_comp[deco.face(d_start)]] += 1;
        let mut d = d_start;
        loop {
            seen.insert(d);
            // Continue from the head of d.
            let mut x = deco.next_out(twin(d));
            while !is_cut_edge(edge_of(x)) {
                x = deco.next_out(x);
            }
            d = x;
            if d == d_start {
                break;
            }
        }
    }

    let mut out = Vec::with_capacity(ncomp);
    for c in 0..ncomp {
        let chi_cells = vert_in[c] - edge_in[c] + faces_in[c];
        let chi = chi_cells - punct_in[c] as i64;
        let b = circles_in[c];
        let two_g = 2 - chi - b as i64 - punct_in[c] as i64;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Internal(format!(
                "complement piece {c} inconsistent: chi {chi}, boundary {b}"
            )));
        }
        out.push(PieceReport {
            chi,
            boundary_circles: b,
            punctures: punct_in[c],
            genus: (two_g / 2) as u32,
        });
    }
    Ok(out)
}

/// Does the base sub-system fill: every complementary piece a disk or a
/// once-punctured disk?
pub fn base_subsystem_fills(deco: &Decomposition, cut: &[usize]) -> Result<bool> {
    Ok(complement_report(deco, cut)?
        .iter()
        .all(|p| p.is_disk() || p.is_once_punctured_disk()))
}

/// A non-annular subsurface: one component of the complement of a base
/// sub-system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsurfaceSpec {
    pub cut_curves: Vec<usize>,
    pub component: usize,
}

/// An arc or closed-curve class in the projection output.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjectedPiece {
    ClosedCurve(Vec<(usize, u8)>),
    Arc(Vec<(usize, u8)>),
}

/// Project a code to the subsurface: the arcs and curves of its trace in
/// the chosen complement component. Empty when the code misses the
/// component.
pub fn subsurface_projection(
    deco: &Decomposition,
    code: &CurveCode,
    spec: &SubsurfaceSpec,
) -> Result<Vec<ProjectedPiece>> {
    let summary = cut_along_base_curves(deco, &spec.cut_curves)?;
    let comp = summary
        .components
        .get(spec.component)
        .ok_or_else(|| invalid(format!("component {} out of range", spec.component)))?;
    if comp.genus == 0 && comp.punctures == 0 && comp.boundary == 2 {
        return Err(precondition(
            "annular subsurface projections are not supported",
        ));
    }
    let face_comp = face_components(deco, &spec.cut_curves)?;
    let cut_set: HashSet<usize> = spec.cut_curves.iter().copied().collect();
    let word = tighten(deco, code, TIGHTEN_CAP);
    if word.is_empty() {
        return Ok(Vec::new());
    }
    let crosses_cut = |d: Dart| match deco.edge_kind(d) {
        EdgeKind::Curve(c) => cut_set.contains(&c),
        EdgeKind::Spoke => false,
    };
    let darts = word.darts();
    let crossing_positions: Vec<usize> = (0..darts.len())
        .filter(|&i| crosses_cut(darts[i]))
        .collect();
    if crossing_positions.is_empty() {
        // Entirely inside one component.
        let f = deco.face(darts[0]);
        if face_comp[f] == spec.component {
            return Ok(vec![ProjectedPiece::ClosedCurve(to_pairs(darts))]);
        }
        return Ok(Vec::new());
    }
    // Split at the crossing letters; the segment after crossing position p
    // runs through the component of the faces between p and the next
    // crossing.
    let mut pieces = HashSet::new();
    let n = darts.len();
    for (k, &p) in crossing_positions.iter().enumerate() {
        let q = crossing_positions[(k + 1) % crossing_positions.len()];
        // Letters strictly after p up to and including... the arc consists
        // of the portion of the curve between the two cut crossings: the
        // interior letters (p+1..q).
        let mut seg = Vec::new();
        let mut i = (p + 1) % n;
        while i != q {
            seg.push(darts[i]);
            i = (i + 1) % n;
        }
        // Which side: the face right after crossing p.
        let f = deco.face(darts[p]);
        if face_comp[f] != spec.component {
            continue;
        }
        // Normalize up to reversal.
        let rev: Vec<Dart> = seg.iter().rev().map(|&d| twin(d)).collect();
        let norm = if seg <= rev { seg } else { rev };
        pieces.insert(ProjectedPiece::Arc(to_pairs(&norm)));
    }
    let mut out: Vec<ProjectedPiece> = pieces.into_iter().collect();
    out.sort_by_key(|p| format!("{p:?}"));
    Ok(out)
}

fn to_pairs(darts: &[Dart]) -> Vec<(usize, u8)> {
    darts.iter().map(|&d| (edge_of(d), (d & 1) as u8)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{genus2_std, torus_std};
    use super::*;

    #[test]
    fn pushoff_of_base_is_nonseparating_on_genus2() {
        let g = genus2_std();
        for c in 0..2 {
            let code = g.pushoff(c, 0).unwrap();
            let ty = topological_type(&g.deco, &code).unwrap();
            assert_eq!(ty, TopologicalType::Nonseparating, "curve {c}");
        }
    }

    #[test]
    fn peripheral_detected_on_torus() {
        let t = torus_std();
        // The spoke-crossing loop around the puncture.
        let spoke_dart = (0..t.deco.dart_count())
            .find(|&d| !t.deco.is_curve_dart(d))
            .unwrap();
        let code = CurveCode::new(&t.deco, vec![spoke_dart]).unwrap();
        assert_eq!(
            topological_type(&t.deco, &code).unwrap(),
            TopologicalType::Peripheral
        );
    }

    #[test]
    fn slope_curves_nonseparating_on_torus() {
        let t = torus_std();
        for (p, q) in [(0, 1), (1, 0), (1, 1), (2, 1)] {
            let c = t.slope_code(p, q).unwrap();
            assert_eq!(
                topological_type(&t.deco, &c).unwrap(),
                TopologicalType::Nonseparating,
                "slope {p}/{q}"
            );
        }
    }

    #[test]
    fn cut_genus2_along_base_pushoff() {
        let g = genus2_std();
        let code = g.pushoff(0, 0).unwrap();
        let summary = cut_along(&g.deco, &[code]).unwrap();
        // Cutting a genus-2 surface along a non-separating curve: one
        // component of genus 1 with two boundary circles.
        assert_eq!(summary.components.len(), 1);
        assert_eq!(summary.components[0].genus, 1);
        assert_eq!(summary.components[0].boundary, 2);
        assert!(summary.euler_count_closes());
    }
}
