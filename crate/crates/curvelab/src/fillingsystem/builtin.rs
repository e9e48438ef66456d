//! Built-in decompositions: the standard one-holed-torus and four-holed
//! sphere pairs, a genus-2 filling pair with four crossings, a parametric
//! genus-g pair, and richer systems used by the edge classifier corpus.
//!
//! Patterns are found by deterministic search over crossing orders and
//! signs (lexicographically first valid candidate), so the frozen systems
//! are stable across runs.

use super::complex::{
    build_decomposition, edge_of, twin, CurveSpec, Dart, Decomposition, EdgeKind,
    IntersectionPattern,
};
use super::enumerate::{enumerate_bounded_curves, CurveBounds};
use super::intersect::geometric_intersection;
use super::word::CurveCode;
use crate::surfaces::SurfaceType;
use crate::{invalid, Error, Result};
use std::cell::RefCell;
use std::collections::HashMap;

/// A named decomposition plus cached derived data.
pub struct BuiltinSystem {
    pub name: String,
    pub deco: Decomposition,
    slope_cache: RefCell<HashMap<(i64, i64), CurveCode>>,
}

impl BuiltinSystem {
    fn new(name: &str, deco: Decomposition) -> Self {
        BuiltinSystem {
            name: name.to_string(),
            deco,
            slope_cache: RefCell::new(HashMap::new()),
        }
    }

    /// Push a base curve off itself to a transverse code. `side` selects one
    /// of the two parallel copies.
    pub fn pushoff(&self, curve: usize, side: u8) -> Result<CurveCode> {
        pushoff_word(&self.deco, curve, side)
    }

    pub fn curve(&self, name: &str) -> Result<usize> {
        self.deco
            .curve_index(name)
            .ok_or_else(|| invalid(format!("no base curve named {name}")))
    }

    /// For slope models (the torus and four-holed sphere systems): the code
    /// realizing slope p/q, identified inside a bounded enumeration by its
    /// intersection profile against u, v and the frozen diagonal curve.
    pub fn slope_code(&self, p: i64, q: i64) -> Result<CurveCode> {
        let slope = crate::farey::Slope::new(p, q, crate::farey::SlopeModel::Torus)?;
        let key = (slope.p(), slope.q());
        if let Some(c) = self.slope_cache.borrow().get(&key) {
            return Ok(c.clone());
        }
        let factor = match self.deco.surface {
            s if s == SurfaceType::new(1, 1) => 1u64,
            s if s == SurfaceType::new(0, 4) => 2u64,
            _ => {
                return Err(invalid(format!(
                    "slope codes only exist on the slope models, not {}",
                    self.deco.surface
                )))
            }
        };
        let (ap, aq) = (key.0.unsigned_abs(), key.1.unsigned_abs());
        let bound = ap.max(aq).max(1);
        let curves =
            enumerate_bounded_curves(&self.deco, &CurveBounds::uniform(&self.deco, bound))?;
        let u = self.pushoff(0, 0)?;
        let v = self.pushoff(1, 0)?;
        // The diagonal reference: among profile (1,1) curves, the one with
        // the lexicographically smallest canonical word is called 1/1.
        let mut diagonals: Vec<&CurveCode> = Vec::new();
        for c in &curves {
            if geometric_intersection(&self.deco, c, &u)? == factor
                && geometric_intersection(&self.deco, c, &v)? == factor
            {
                diagonals.push(c);
            }
        }
        diagonals.sort();
        let diag = diagonals
            .first()
            .ok_or_else(|| Error::Internal("no diagonal curve found".into()))?;
        // Profile of p/q against (u = 0/1, v = 1/0, diag = 1/1).
        let want = (
            factor * ap,
            factor * aq,
            factor * (key.0 - key.1).unsigned_abs(),
        );
        let mut hits = Vec::new();
        for c in &curves {
            let profile = (
                geometric_intersection(&self.deco, c, &u)?,
                geometric_intersection(&self.deco, c, &v)?,
                geometric_intersection(&self.deco, c, diag)?,
            );
            if profile == want {
                hits.push(c.clone());
            }
        }
        hits.sort();
        hits.dedup();
        match hits.len() {
            1 => {
                let c = hits.pop().unwrap();
                self.slope_cache.borrow_mut().insert(key, c.clone());
                Ok(c)
            }
            0 => Err(Error::Internal(format!(
                "no curve with profile {want:?} for slope {}/{}",
                key.0, key.1
            ))),
            n => Err(Error::Internal(format!(
                "slope {}/{} identified {n} distinct curves",
                key.0, key.1
            ))),
        }
    }
}

/// Walk a base curve and collect the word of a parallel copy. At each
/// crossing along the curve the copy crosses the transversal edge ends in
/// one corner; `side` 0 takes the corner counterclockwise from the incoming
/// edge end, 1 the other corner.
pub(crate) fn pushoff_word(deco: &Decomposition, curve: usize, side: u8) -> Result<CurveCode> {
    let darts = deco
        .curve_darts
        .get(curve)
        .ok_or_else(|| invalid(format!("curve index {curve} out of range")))?;
    let mut letters: Vec<Dart> = Vec::new();
    let m = darts.len();
    for t in 0..m {
        let incoming = darts[t];
        let outgoing = darts[(t + 1) % m];
        // Ends at the vertex between: rotation from twin(incoming).
        let start = twin(incoming);
        debug_assert_eq!(deco.vertex(start), deco.vertex(outgoing));
        let mut star = vec![start];
        let mut d = deco.next_out(start);
        while d != start {
            star.push(d);
            d = deco.next_out(d);
        }
        let out_pos = star
            .iter()
            .position(|&x| x == outgoing)
            .expect("curve continues at its own vertex");
        letters.extend(corner_letters(&star, out_pos, side));
    }
    if letters.is_empty() {
        return Err(Error::Internal(
            "pushoff of a base curve crosses nothing; the system would not fill".into(),
        ));
    }
    CurveCode::new(deco, letters)
}


/// Letters crossed by a strand sliding past a vertex parallel to the curve
/// through it. The rotation `star` starts at the incoming end twin(d_t);
/// `out_pos` locates the outgoing curve dart. Side 0 sweeps the corner
/// counterclockwise from the incoming end (ends crossed ascending, arriving
/// through the twin side); side 1 sweeps the other corner descending,
/// arriving through the dart itself.
pub(crate) fn corner_letters(star: &[Dart], out_pos: usize, side: u8) -> Vec<Dart> {
    if side == 0 {
        star[1..out_pos].iter().map(|&r| twin(r)).collect()
    } else {
        star[out_pos + 1..].iter().rev().copied().collect()
    }
}

/// The standard pair on the one-holed torus: one crossing, one punctured
/// face.
pub fn torus_std() -> BuiltinSystem {
    let pattern = IntersectionPattern {
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
    };
    BuiltinSystem::new(
        "torus_std",
        build_decomposition(&pattern).expect("frozen pattern builds"),
    )
}

/// The standard pair on the four-holed sphere: two crossings, every face a
/// punctured bigon.
pub fn sphere4_std() -> BuiltinSystem {
    for vorder in [vec![0usize, 1], vec![1, 0]] {
        for s0 in [1i8, -1] {
            for s1 in [1i8, -1] {
                let pattern = IntersectionPattern {
                    curves: vec![
                        CurveSpec {
                            name: "u".into(),
                            crossings: vec![0, 1],
                        },
                        CurveSpec {
                            name: "v".into(),
                            crossings: vorder.clone(),
                        },
                    ],
                    signs: vec![s0, s1],
                    punctured_faces: vec![0, 1, 2, 3],
                };
                if let Ok(deco) = build_decomposition(&pattern) {
                    if deco.surface == SurfaceType::new(0, 4) {
                        return BuiltinSystem::new("sphere4_std", deco);
                    }
                }
            }
        }
    }
    unreachable!("a sphere4 pattern exists");
}

/// Search over cyclic orders of the second curve and sign vectors for a
/// two-curve pattern realizing the target closed surface with disk faces.
fn search_pair_pattern(crossings: usize, genus: u32) -> Option<IntersectionPattern> {
    let mut perm: Vec<usize> = (1..crossings).collect();
    let mut orders = Vec::new();
    permutations(&mut perm, 0, &mut orders);
    for order in &orders {
        let mut v = vec![0usize];
        v.extend_from_slice(order);
        for smask in 0..(1u32 << crossings) {
            let signs: Vec<i8> = (0..crossings)
                .map(|i| if smask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            let pattern = IntersectionPattern {
                curves: vec![
                    CurveSpec {
                        name: "u".into(),
                        crossings: (0..crossings).collect(),
                    },
                    CurveSpec {
                        name: "v".into(),
                        crossings: v.clone(),
                    },
                ],
                signs,
                punctured_faces: vec![],
            };
            if let Ok(deco) = build_decomposition(&pattern) {
                if deco.surface == SurfaceType::new(genus, 0) {
                    return Some(pattern);
                }
            }
        }
    }
    None
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// A filling pair on the closed genus-2 surface with i(u, v) = 4: four
/// crossings, eight edges, two octagon faces.
pub fn genus2_std() -> BuiltinSystem {
    let pattern = search_pair_pattern(4, 2).expect("a genus-2 filling pair with 4 crossings exists");
    let deco = build_decomposition(&pattern).unwrap();
    debug_assert_eq!(deco.faces.len(), 2);
    BuiltinSystem::new("genus2_std", deco)
}

/// A filling pair on the closed genus-g surface with i(u, v) = 2g (two
/// 4g-gon faces). Found by bounded search; g up to 6 is supported.
pub fn genus_g_std(genus: u32) -> Result<BuiltinSystem> {
    if !(2..=6).contains(&genus) {
        return Err(invalid(format!(
            "parametric filling pair supported for genus 2..=6, got {genus}"
        )));
    }
    let crossings = 2 * genus as usize;
    // Try structured interleavings first to keep the search fast.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let g = genus as usize;
    candidates.push((0..crossings).map(|i| (i * (2 * g - 1)) % crossings).collect());
    candidates.push(
        (0..crossings)
            .map(|i| if i % 2 == 0 { i / 2 } else { g + i / 2 })
            .collect(),
    );
    for v in &candidates {
        if v[0] != 0 {
            continue;
        }
        for smask in 0..(1u32 << crossings) {
            let signs: Vec<i8> = (0..crossings)
                .map(|i| if smask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            let pattern = IntersectionPattern {
                curves: vec![
                    CurveSpec {
                        name: "u".into(),
                        crossings: (0..crossings).collect(),
                    },
                    CurveSpec {
                        name: "v".into(),
                        crossings: v.clone(),
                    },
                ],
                signs,
                punctured_faces: vec![],
            };
            if let Ok(deco) = build_decomposition(&pattern) {
                if deco.surface == SurfaceType::new(genus, 0) {
                    return Ok(BuiltinSystem::new(
                        &format!("genus{genus}_pair"),
                        deco,
                    ));
                }
            }
        }
    }
    // Full search fallback (feasible for small genus).
    if genus <= 3 {
        if let Some(p) = search_pair_pattern(crossings, genus) {
            return Ok(BuiltinSystem::new(
                &format!("genus{genus}_pair"),
                build_decomposition(&p).unwrap(),
            ));
        }
    }
    Err(Error::Internal(format!(
        "no filling pair pattern found for genus {genus}"
    )))
}

/// A genus-2 filling system {u, v, w} with i(u, v) = 1: carries a 1-edge.
/// i(u, w) = i(v, w) = 2.
pub fn oneedge_g2() -> Result<BuiltinSystem> {
    search_triple(
        "oneedge_g2",
        SurfaceType::new(2, 0),
        [1, 2, 2],
        |_deco| true,
    )
}

/// A genus-3 filling system {u, v, w} with u, v disjoint and jointly
/// separating into two genus-1 pieces; w fills. i(u, w) = i(v, w) = 3.
pub fn genus3_jsep() -> Result<BuiltinSystem> {
    search_triple(
        "genus3_jsep",
        SurfaceType::new(3, 0),
        [0, 3, 3],
        |deco| {
            // u and v must be jointly separating with both sides of genus 1.
            match super::topology::cut_along_base_curves(deco, &[0, 1]) {
                Ok(summary) => {
                    summary.components.len() == 2
                        && summary.components.iter().all(|c| c.genus == 1 && c.boundary == 2)
                }
                Err(_) => false,
            }
        },
    )
}

/// Deterministic search for a three-curve pattern with prescribed pairwise
/// crossing numbers [i(u,v), i(u,w), i(v,w)] on a target surface, subject to
/// an extra structural predicate.
fn search_triple(
    name: &str,
    surface: SurfaceType,
    pair_counts: [usize; 3],
    accept: impl Fn(&Decomposition) -> bool,
) -> Result<BuiltinSystem> {
    let [iuv, iuw, ivw] = pair_counts;
    let total = iuv + iuw + ivw;
    // Crossing ids: 0..iuv between u,v; then u,w; then v,w.
    let uv: Vec<usize> = (0..iuv).collect();
    let uw: Vec<usize> = (iuv..iuv + iuw).collect();
    let vw: Vec<usize> = (iuv + iuw..total).collect();

    // u passes through uv then uw crossings; enumerate interleavings of v's
    // and w's lists as cyclic orders. To keep the search bounded we fix u's
    // order as uv ++ uw and enumerate permutations of v's and w's orders
    // plus signs; the first acceptable pattern wins.
    let u_order: Vec<usize> = uv.iter().chain(uw.iter()).copied().collect();
    let mut v_items: Vec<usize> = uv.iter().chain(vw.iter()).copied().collect();
    let mut w_items: Vec<usize> = uw.iter().chain(vw.iter()).copied().collect();
    let mut v_orders = Vec::new();
    let mut w_orders = Vec::new();
    permutations(&mut v_items, 1, &mut v_orders); // fix first element
    permutations(&mut w_items, 1, &mut w_orders);
    for v_order in &v_orders {
        for w_order in &w_orders {
            for smask in 0..(1u64 << total) {
                let signs: Vec<i8> = (0..total)
                    .map(|i| if smask & (1 << i) != 0 { -1 } else { 1 })
                    .collect();
                let pattern = IntersectionPattern {
                    curves: vec![
                        CurveSpec {
                            name: "u".into(),
                            crossings: u_order.clone(),
                        },
                        CurveSpec {
                            name: "v".into(),
                            crossings: v_order.clone(),
                        },
                        CurveSpec {
                            name: "w".into(),
                            crossings: w_order.clone(),
                        },
                    ],
                    signs,
                    punctured_faces: vec![],
                };
                if let Ok(deco) = build_decomposition(&pattern) {
                    if deco.surface == surface && accept(&deco) {
                        return Ok(BuiltinSystem::new(name, deco));
                    }
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "no pattern found for {name} on {surface}"
    )))
}

/// Edge-name helper used by reports.
pub fn edge_label(deco: &Decomposition, e: usize) -> String {
    match deco.edge_kinds[e] {
        EdgeKind::Curve(c) => format!("{}[{}]", deco.curve_names[c], e),
        EdgeKind::Spoke => format!("spoke[{e}]"),
    }
}

#[allow(dead_code)]
fn dart_label(_deco: &Decomposition, d: Dart) -> String {
    format!("{}{}", edge_of(d), if d & 1 == 0 { "+" } else { "-" })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_std_shape() {
        let t = torus_std();
        assert_eq!(t.deco.surface, SurfaceType::new(1, 1));
        assert_eq!(t.deco.euler_of_filling_neighborhood(), -1);
    }

    #[test]
    fn sphere4_std_shape() {
        let s = sphere4_std();
        assert_eq!(s.deco.surface, SurfaceType::new(0, 4));
        assert_eq!(s.deco.euler_of_filling_neighborhood(), -2);
        assert_eq!(s.deco.faces.len(), 4);
    }

    #[test]
    fn genus2_std_shape() {
        let g = genus2_std();
        assert_eq!(g.deco.surface, SurfaceType::new(2, 0));
        assert_eq!(g.deco.crossing_count(), 4);
        assert_eq!(g.deco.edge_count(), 8);
        assert_eq!(g.deco.faces.len(), 2);
        assert_eq!(g.deco.euler_of_filling_neighborhood(), -4);
    }

    #[test]
    fn pushoffs_are_valid_and_parallel() {
        let g = genus2_std();
        let d = &g.deco;
        for c in 0..2 {
            let p0 = g.pushoff(c, 0).unwrap();
            let p1 = g.pushoff(c, 1).unwrap();
            // A parallel copy misses its own curve and meets the other one
            // in the pattern count.
            assert_eq!(geometric_intersection(d, &p0, &p1).unwrap(), 0);
            let other = g.pushoff(1 - c, 0).unwrap();
            assert_eq!(
                geometric_intersection(d, &p0, &other).unwrap() as usize,
                d.base_intersection(c, 1 - c)
            );
        }
    }

    #[test]
    fn parametric_pairs_build() {
        for g in 2..=5u32 {
            let sys = genus_g_std(g).unwrap();
            assert_eq!(sys.deco.surface, SurfaceType::new(g, 0));
            assert_eq!(
                sys.deco.euler_of_filling_neighborhood(),
                -(2 * g as i64),
                "chi(F) = -i(u,v) for genus {g}"
            );
        }
        assert!(genus_g_std(9).is_err());
    }
}
