//! Dehn twists along base curves, by word surgery: every strand crossing
//! the twisting curve is rerouted to wind n full loops parallel to it
//! before crossing.

use super::complex::{edge_of, twin, Dart, Decomposition, EdgeKind};
use super::intersect::TIGHTEN_CAP;
use super::word::{tighten, CurveCode};
use crate::{invalid, Result};

/// The pushoff word of curve c on one side, split into per-vertex letter
/// groups, with the face its parallel stretch occupies along each edge.
struct SidePushoff {
    /// Letters grouped by the vertex passed; group t contains the crossings
    /// at the head of the t-th curve dart.
    groups: Vec<Vec<Dart>>,
    /// face_along[t]: the face of the stretch parallel to curve dart t.
    face_along: Vec<usize>,
}

fn side_pushoff(deco: &Decomposition, curve: usize, side: u8) -> Result<SidePushoff> {
    // Reproduce the pushoff walk, keeping group boundaries.
    let darts = &deco.curve_darts[curve];
    let m = darts.len();
    let mut groups = Vec::with_capacity(m);
    for t in 0..m {
        let incoming = darts[t];
        let outgoing = darts[(t + 1) % m];
        let start = twin(incoming);
        let mut star = vec![start];
        let mut d = deco.next_out(start);
        while d != start {
            star.push(d);
            d = deco.next_out(d);
        }
        let out_pos = star.iter().position(|&x| x == outgoing).unwrap();
        groups.push(super::builtin::corner_letters(&star, out_pos, side));
    }
    // The stretch parallel to dart t runs between group t-1 and group t; its
    // face is the face of the last letter of group t-1 (equivalently the
    // entry face of group t's first letter).
    let mut face_along = vec![usize::MAX; m];
    for t in 0..m {
        let prev = (t + m - 1) % m;
        let before = groups[prev].last().copied().or_else(|| {
            // Group may be empty at a vertex where the corner has no ends
            // (cannot happen at 4-valent crossings but keep the walk safe).
            let mut s = prev;
            loop {
                s = (s + m - 1) % m;
                if let Some(&l) = groups[s].last() {
                    return Some(l);
                }
                if s == prev {
                    return None;
                }
            }
        });
        let Some(before) = before else {
            return Err(crate::Error::Internal(
                "pushoff has no crossings; the system would not fill".into(),
            ));
        };
        face_along[t] = deco.face(before);
    }
    Ok(SidePushoff { groups, face_along })
}

impl SidePushoff {
    /// The loop word starting just after curve dart position t, winding once
    /// forward around the curve, ending parallel to dart t again.
    fn loop_from(&self, t: usize) -> Vec<Dart> {
        let m = self.groups.len();
        let mut w = Vec::new();
        for s in 0..m {
            w.extend_from_slice(&self.groups[(t + s) % m]);
        }
        w
    }
}

/// The n-fold Dehn twist of `code` along the base curve `along`, as a
/// tightened code. Only base curves of the decomposition are supported as
/// twisting curves.
pub fn dehn_twist(
    deco: &Decomposition,
    code: &CurveCode,
    along: &str,
    n: i64,
) -> Result<CurveCode> {
    let curve = deco
        .curve_index(along)
        .ok_or_else(|| invalid(format!("unsupported twisting curve '{along}': only base curves are carried")))?;
    code.validate(deco)?;
    let tight = tighten(deco, code, TIGHTEN_CAP);
    if n == 0 || tight.is_empty() {
        return Ok(tight);
    }
    let sides = [side_pushoff(deco, curve, 0)?, side_pushoff(deco, curve, 1)?];
    // Position of each curve edge along the curve.
    let mut edge_pos = vec![usize::MAX; deco.edge_count()];
    for (t, &d) in deco.curve_darts[curve].iter().enumerate() {
        edge_pos[edge_of(d)] = t;
    }
    let reps = n.unsigned_abs() as usize;
    let mut out: Vec<Dart> = Vec::new();
    for &d in tight.darts() {
        let is_on_curve = matches!(deco.edge_kind(d), EdgeKind::Curve(c) if c == curve);
        if is_on_curve {
            let t = edge_pos[edge_of(d)];
            let cd = deco.curve_darts[curve][t];
            // The side-0 pushoff runs against the side that dart cd bounds,
            // side 1 against its twin. The strand enters from the side of
            // the dart twin(d).
            let side = if d == twin(cd) { 0 } else { 1 };
            debug_assert_eq!(
                sides[side].face_along[t],
                deco.face(twin(d)),
                "pushoff side must run in the strand's entry face"
            );
            // Strands entering from the two sides traverse the inserted
            // winding in opposite directions (the annulus twist shifts both
            // boundaries the same absolute way, so the loop direction along
            // the strand flips with its crossing direction).
            let forward = (n > 0) == (side == 0);
            let single = sides[side].loop_from(t);
            let single: Vec<Dart> = if forward {
                single
            } else {
                single.into_iter().rev().map(twin).collect()
            };
            for _ in 0..reps {
                out.extend_from_slice(&single);
            }
        }
        out.push(d);
    }
    let twisted = CurveCode::new(deco, out)?;
    super::intersect::embedded_taut(deco, &twisted)
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{genus2_std, torus_std};
    use super::super::intersect::{geometric_intersection, is_simple};
    use super::*;

    #[test]
    fn twist_fixes_its_own_curve() {
        let t = torus_std();
        let u_par = t.pushoff(0, 0).unwrap();
        for n in [-2i64, 1, 3] {
            let image = dehn_twist(&t.deco, &u_par, "u", n).unwrap();
            assert_eq!(
                geometric_intersection(&t.deco, &image, &u_par).unwrap(),
                0,
                "twisting a curve about itself fixes it (n = {n})"
            );
        }
    }

    #[test]
    fn torus_twist_matches_slope_action() {
        let t = torus_std();
        let v = t.slope_code(1, 0).unwrap();
        // T^n along u = 0/1 sends 1/0 to a slope (e, n)/... with a fixed
        // handedness e shared by all n.
        let mut handedness: Option<i64> = None;
        for n in 1..=3i64 {
            let image = dehn_twist(&t.deco, &v, "u", n).unwrap();
            let u_code = t.slope_code(0, 1).unwrap();
            let v_code = t.slope_code(1, 0).unwrap();
            let iu = geometric_intersection(&t.deco, &image, &u_code).unwrap();
            let iv = geometric_intersection(&t.deco, &image, &v_code).unwrap();
            assert_eq!(iu, 1, "n = {n}");
            assert_eq!(iv, n as u64, "n = {n}");
            // Disambiguate the sign via the diagonal.
            let diag = t.slope_code(1, 1).unwrap();
            let idiag = geometric_intersection(&t.deco, &image, &diag).unwrap();
            // slope (e, n): i with 1/1 = |e - n|.
            let e = if idiag == (n - 1).unsigned_abs() {
                1
            } else {
                assert_eq!(idiag, (n + 1).unsigned_abs(), "n = {n}");
                -1
            };
            match handedness {
                None => handedness = Some(e),
                Some(h) => assert_eq!(h, e, "handedness consistent across n"),
            }
        }
    }

    #[test]
    fn twist_formula_on_genus2() {
        let g = genus2_std();
        let u = g.pushoff(0, 0).unwrap();
        let v = g.pushoff(1, 0).unwrap();
        let i_uv = geometric_intersection(&g.deco, &u, &v).unwrap();
        assert_eq!(i_uv, 4);
        for n in 1..=2i64 {
            let image = dehn_twist(&g.deco, &v, "u", n).unwrap();
            assert!(is_simple(&g.deco, &image).unwrap());
            let got = geometric_intersection(&g.deco, &image, &v).unwrap();
            assert_eq!(got, n as u64 * i_uv * i_uv, "i(T^n_u(v), v) = n i(u,v)^2");
            // And the twist preserves intersection with u itself.
            assert_eq!(geometric_intersection(&g.deco, &image, &u).unwrap(), i_uv);
        }
    }

    #[test]
    fn twist_inverse_is_inverse() {
        let g = genus2_std();
        let v = g.pushoff(1, 0).unwrap();
        let there = dehn_twist(&g.deco, &v, "u", 1).unwrap();
        let back = dehn_twist(&g.deco, &there, "u", -1).unwrap();
        assert_eq!(
            geometric_intersection(&g.deco, &back, &v).unwrap(),
            0,
            "T^-1 T fixes the class"
        );
    }

    #[test]
    fn unsupported_twisting_curve_rejected() {
        let t = torus_std();
        let v = t.slope_code(1, 0).unwrap();
        assert!(dehn_twist(&t.deco, &v, "nope", 1).is_err());
    }
}
