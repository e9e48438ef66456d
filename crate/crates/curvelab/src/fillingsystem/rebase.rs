//! Rebasing: turn a filling family of transverse codes into an abstract
//! intersection pattern of its own, so curves not carried by the original
//! system can be re-expressed on a system that carries them.

use super::complex::{
    build_decomposition, twin, CurveSpec, Dart, Decomposition, IntersectionPattern,
};
use super::intersect::{crossing_encounters, geometric_intersection, TIGHTEN_CAP};
use super::word::{tighten, CurveCode};
use crate::{invalid, Error, Result};
use std::collections::HashMap;

/// An exact point on the boundary of a face: side position within the
/// face's side list and crossing rank along that side.
type BoundaryPos = (usize, usize);

/// Extract the intersection pattern of a family of taut simple codes on a
/// closed surface. The family must be connected through its crossings.
pub fn pattern_from_codes(
    deco: &Decomposition,
    codes: &[CurveCode],
    names: &[&str],
) -> Result<IntersectionPattern> {
    if deco.surface.punctures != 0 {
        return Err(invalid(
            "rebasing is supported on closed surfaces only",
        ));
    }
    if codes.len() != names.len() || codes.is_empty() {
        return Err(invalid("one name per code required"));
    }
    let mut words: Vec<Vec<Dart>> = Vec::with_capacity(codes.len());
    for c in codes {
        let emb = super::intersect::embedded_taut(deco, c)?;
        if emb.is_empty() {
            return Err(invalid("trivial codes cannot be base curves"));
        }
        words.push(emb.darts().to_vec());
    }

    // Crossing events between each pair.
    struct Event {
        a: usize,
        b: usize,
        /// Chord index of each curve where the crossing is placed, and the
        /// face it happens in.
        chord_a: usize,
        chord_b: usize,
        face: usize,
    }
    let mut events: Vec<Event> = Vec::new();
    for a in 0..codes.len() {
        for b in (a + 1)..codes.len() {
            let ca = CurveCode::unchecked(words[a].clone());
            let cb = CurveCode::unchecked(words[b].clone());
            let (ta, tb, encounters) = crossing_encounters(deco, &ca, &cb)?;
            debug_assert_eq!(ta.darts(), &words[a][..]);
            debug_assert_eq!(tb.darts(), &words[b][..]);
            for e in encounters.iter().filter(|e| e.crossing) {
                // Place the crossing at the corridor start: on a's chord
                // (i-1 -> i) and b's chord entering the same face.
                let (na, nb) = (words[a].len(), words[b].len());
                let (chord_a, chord_b, face) = if e.len == 0 {
                    // Face-local chord pair: e.i, e.j are chord indices.
                    (e.i, e.j, deco.face(words[a][e.i]))
                } else {
                    let face = deco.face(twin(words[a][e.i]));
                    let chord_a = (e.i + na - 1) % na;
                    let chord_b = if e.dir == 1 {
                        (e.j + nb - 1) % nb
                    } else {
                        e.j % nb
                    };
                    (chord_a, chord_b, face)
                };
                events.push(Event {
                    a,
                    b,
                    chord_a,
                    chord_b,
                    face,
                });
            }
        }
    }
    if events.is_empty() {
        return Err(invalid("the codes never cross; they cannot fill"));
    }

    // Exact boundary positions of every chord endpoint, so crossings can be
    // ordered along chords. Feet along a side are ordered by the germ
    // comparator below; the rank data comes from sorting all germs per
    // edge.
    let ctx = GermOrders::build(deco, &words)?;

    // Positions of chord endpoints around each face: (side position, rank
    // along side). Convert to exact convex coordinates on the parabola
    // (k, k^2) where k is the global boundary index.
    // Boundary index: enumerate face sides in order; within a side, feet in
    // side-direction order.
    let mut face_offsets: Vec<Vec<usize>> = Vec::with_capacity(deco.faces.len());
    for face in &deco.faces {
        let mut offsets = Vec::with_capacity(face.sides.len() + 1);
        let mut acc = 0usize;
        for &s in &face.sides {
            offsets.push(acc);
            acc += ctx.per_edge[super::complex::edge_of(s)].len();
        }
        offsets.push(acc);
        face_offsets.push(offsets);
    }
    let global_pos = |deco: &Decomposition, foot_side: Dart, rank_on_side: usize| -> usize {
        let f = deco.face(foot_side);
        let p = deco.side_position(foot_side);
        face_offsets[f][p] + rank_on_side
    };

    // Chord endpoints for curve c, chord t: entry foot = germ (c, t) seen on
    // side words[c][t]... the chord t runs from the crossing t (entry) to
    // crossing t+1 (exit side twin(words[c][t+1])).
    let chord_endpoints = |c: usize, t: usize| -> (usize, usize) {
        let w = &words[c];
        let n = w.len();
        let entry_side = w[t];
        let exit_letter = w[(t + 1) % n];
        let exit_side = twin(exit_letter);
        let r_entry = ctx.rank_on_side(deco, (c, t), entry_side);
        let r_exit = ctx.rank_on_side(deco, (c, (t + 1) % n), exit_side);
        (
            global_pos(deco, entry_side, r_entry),
            global_pos(deco, exit_side, r_exit),
        )
    };

    // Order events along each curve: bucket by chord, order within a chord
    // by the exact crossing parameter along the chord segment on the
    // parabola embedding.
    let param_on_chord = |face: usize, chord: (usize, usize), other: (usize, usize)| -> (i128, i128) {
        // Intersection parameter of segment chord with segment other, as a
        // fraction (num, den) along chord. Points on the parabola.
        let pt = |k: usize| -> (i128, i128) {
            let x = k as i128;
            (x, x * x)
        };
        let _ = face;
        let (a, b) = (pt(chord.0), pt(chord.1));
        let (c, d) = (pt(other.0), pt(other.1));
        // a + s (b - a) = c + u (d - c): solve for s by cross products.
        let (bx, by) = (b.0 - a.0, b.1 - a.1);
        let (dx, dy) = (d.0 - c.0, d.1 - c.1);
        let (ex, ey) = (c.0 - a.0, c.1 - a.1);
        let den = bx * dy - by * dx;
        let num = ex * dy - ey * dx;
        debug_assert_ne!(den, 0, "crossing chords are not parallel");
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    };

    let mut per_curve_chord_events: HashMap<(usize, usize), Vec<(usize, (i128, i128))>> =
        HashMap::new();
    for (id, ev) in events.iter().enumerate() {
        let ch_a = chord_endpoints(ev.a, ev.chord_a);
        let ch_b = chord_endpoints(ev.b, ev.chord_b);
        let s_a = param_on_chord(ev.face, ch_a, ch_b);
        let s_b = param_on_chord(ev.face, ch_b, ch_a);
        per_curve_chord_events
            .entry((ev.a, ev.chord_a))
            .or_default()
            .push((id, s_a));
        per_curve_chord_events
            .entry((ev.b, ev.chord_b))
            .or_default()
            .push((id, s_b));
    }
    for list in per_curve_chord_events.values_mut() {
        list.sort_by(|(_, (n1, d1)), (_, (n2, d2))| (n1 * d2).cmp(&(n2 * d1)));
    }

    // Crossing sequences per curve.
    let mut curve_sequences: Vec<Vec<usize>> = Vec::with_capacity(codes.len());
    for (c, w) in words.iter().enumerate() {
        let mut seq = Vec::new();
        for t in 0..w.len() {
            if let Some(list) = per_curve_chord_events.get(&(c, t)) {
                seq.extend(list.iter().map(|&(id, _)| id));
            }
        }
        if seq.is_empty() {
            return Err(invalid(format!(
                "code {c} crosses nothing; the family cannot fill"
            )));
        }
        curve_sequences.push(seq);
    }

    // Signs: +1 when, around the face boundary, the other curve's chord
    // enters from the arc between this chord's start and end.
    let mut signs = vec![0i8; events.len()];
    for (id, ev) in events.iter().enumerate() {
        let (a1, a2) = chord_endpoints(ev.a, ev.chord_a);
        let (b1, _b2) = chord_endpoints(ev.b, ev.chord_b);
        let total = *face_offsets[ev.face].last().unwrap();
        let between = |x: usize, lo: usize, hi: usize| -> bool {
            let w = |v: usize| (v + total - lo) % total;
            w(x) > 0 && w(x) < w(hi)
        };
        signs[id] = if between(b1, a1, a2) { 1 } else { -1 };
    }

    Ok(IntersectionPattern {
        curves: curve_sequences
            .into_iter()
            .zip(names.iter())
            .map(|(crossings, name)| CurveSpec {
                name: (*name).to_string(),
                crossings,
            })
            .collect(),
        signs,
        punctured_faces: vec![],
    })
}

/// Build a new decomposition carried by the given codes and validate it
/// against the original: same surface, and pairwise base intersections
/// matching the computed geometric intersections.
pub fn rebase_decomposition(
    deco: &Decomposition,
    codes: &[CurveCode],
    names: &[&str],
) -> Result<Decomposition> {
    let pattern = pattern_from_codes(deco, codes, names)?;
    let rebased = build_decomposition(&pattern)?;
    if rebased.surface != deco.surface {
        return Err(Error::Internal(format!(
            "rebased surface {} does not match the original {}",
            rebased.surface, deco.surface
        )));
    }
    for a in 0..codes.len() {
        for b in (a + 1)..codes.len() {
            let want = geometric_intersection(deco, &codes[a], &codes[b])?;
            let got = rebased.base_intersection(a, b) as u64;
            if want != got {
                return Err(Error::Internal(format!(
                    "rebased intersection {}x{}: pattern has {got}, curves have {want}",
                    names[a], names[b]
                )));
            }
        }
    }
    Ok(rebased)
}

/// Total order of crossings along every edge, refined to ranks along each
/// side.
struct GermOrders {
    /// Per edge: germs sorted along the canonical dart.
    per_edge: Vec<Vec<(usize, usize)>>,
}

impl GermOrders {
    fn build(deco: &Decomposition, words: &[Vec<Dart>]) -> Result<GermOrders> {
        use super::complex::edge_of;
        let mut per_edge: Vec<Vec<(usize, usize)>> = vec![Vec::new(); deco.edge_count()];
        for (c, w) in words.iter().enumerate() {
            for (i, &d) in w.iter().enumerate() {
                per_edge[edge_of(d)].push((c, i));
            }
        }
        for e in 0..deco.edge_count() {
            let mut germs = std::mem::take(&mut per_edge[e]);
            let mut result: Vec<(usize, usize)> = Vec::with_capacity(germs.len());
            for g in germs.drain(..) {
                let mut lo = 0usize;
                let mut hi = result.len();
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    if germ_before(deco, words, result[mid], g, e)? {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                result.insert(lo, g);
            }
            per_edge[e] = result;
        }
        Ok(GermOrders { per_edge })
    }

    /// Rank of a germ among the crossings of its edge, counted along the
    /// given side's direction.
    fn rank_on_side(&self, _deco: &Decomposition, germ: (usize, usize), side: Dart) -> usize {
        let e = super::complex::edge_of(side);
        let list = &self.per_edge[e];
        let idx = list
            .iter()
            .position(|&g| g == germ)
            .expect("germ listed on its edge");
        if side == 2 * e {
            idx
        } else {
            list.len() - 1 - idx
        }
    }
}

/// Does germ g1 cross the shared edge before g2, along the canonical dart
/// 2e? Walks to the enclosing corridor; for crossing corridors the crossing
/// is placed at the corridor start, so the order along shared edges is the
/// right-mouth order.
fn germ_before(
    deco: &Decomposition,
    words: &[Vec<Dart>],
    g1: (usize, usize),
    g2: (usize, usize),
    e: usize,
) -> Result<bool> {
    let w1 = &words[g1.0];
    let w2 = &words[g2.0];
    let d1 = w1[g1.1];
    let d2 = w2[g2.1];
    debug_assert_eq!(super::complex::edge_of(d1), e);
    debug_assert_eq!(super::complex::edge_of(d2), e);
    let dir: i8 = if d1 == d2 { 1 } else { -1 };
    let at = |w: &Vec<Dart>, i: isize| w[i.rem_euclid(w.len() as isize) as usize];
    let (n1, n2) = (w1.len() as isize, w2.len() as isize);
    // Find run start and end.
    let (mut a, mut b) = (g1.1 as isize, g2.1 as isize);
    let same = |x: isize, y: isize| g1.0 == g2.0 && dir == 1 && x.rem_euclid(n1) == y.rem_euclid(n2);
    let aligned = |x: isize, y: isize| {
        if dir == 1 {
            at(w1, x) == at(w2, y)
        } else {
            at(w1, x) == twin(at(w2, y))
        }
    };
    let mut guard = 0;
    loop {
        let (pa, pb) = (a - 1, b - dir as isize);
        if !aligned(pa, pb) || same(pa, pb) {
            break;
        }
        a = pa;
        b = pb;
        guard += 1;
        if guard > (n1 + n2) as usize {
            return Err(Error::Internal("periodic alignment in germ ordering".into()));
        }
    }
    let (mut ea, mut eb) = (g1.1 as isize, g2.1 as isize);
    let mut len_after = 0usize;
    loop {
        let (na_, nb_) = (ea + 1, eb + dir as isize);
        if !aligned(na_, nb_) || same(na_, nb_) {
            break;
        }
        ea = na_;
        eb = nb_;
        len_after += 1;
        if len_after > (n1 + n2) as usize {
            return Err(Error::Internal("periodic alignment in germ ordering".into()));
        }
    }
    // Mouth data.
    let e_l = twin(at(w1, a));
    let p1 = at(w1, a - 1);
    let p2 = if dir == 1 { at(w2, b - 1) } else { twin(at(w2, b + 1)) };
    let rank_l = {
        let f = deco.face(e_l);
        let n = deco.faces[f].sides.len();
        let pr = deco.side_position(e_l);
        move |s: Dart| (deco.side_position(s) + n - pr) % n
    };
    let first_left = rank_l(p1) < rank_l(p2);
    let e_r = at(w1, ea);
    let q1 = twin(at(w1, ea + 1));
    let q2 = if dir == 1 {
        twin(at(w2, eb + 1))
    } else {
        at(w2, eb - 1)
    };
    let rank_r = {
        let f = deco.face(e_r);
        let n = deco.faces[f].sides.len();
        let pr = deco.side_position(e_r);
        move |s: Dart| (deco.side_position(s) + n - pr) % n
    };
    let first_right = rank_r(q1) < rank_r(q2);
    let crossing = first_left == first_right;
    // Early-along-the-entry-dart: without a crossing both mouths agree with
    // the left order; with a crossing placed at the corridor start, the
    // order along the shared edges is the post-swap one, i.e. opposite to
    // the left-mouth order.
    let early_along_w1_dart = if crossing { !first_left } else { first_left };
    // Convert to the canonical dart of e.
    Ok(if d1 == 2 * e {
        early_along_w1_dart
    } else {
        !early_along_w1_dart
    })
}

#[cfg(test)]
mod tests {
    use super::super::builtin::genus2_std;
    use super::*;

    #[test]
    fn rebase_base_pushoffs_recovers_pattern() {
        let g = genus2_std();
        let u = g.pushoff(0, 0).unwrap();
        let v = g.pushoff(1, 0).unwrap();
        let rebased = rebase_decomposition(&g.deco, &[u, v], &["u2", "v2"]).unwrap();
        assert_eq!(rebased.surface, g.deco.surface);
        assert_eq!(rebased.base_intersection(0, 1), 4);
        assert_eq!(rebased.euler_of_filling_neighborhood(), -4);
    }
}
