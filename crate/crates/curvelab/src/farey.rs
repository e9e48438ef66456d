//! Exact slope models for the one-holed torus and the four-holed sphere.
//!
//! Essential simple closed curves on both surfaces are parameterized by
//! slopes p/q with gcd(p, q) = 1, including 1/0. On the torus model two
//! slopes intersect |p1 q2 - q1 p2| times; on the four-holed sphere twice
//! that. Edge links here are exact finite graphs obtained by integer scans.

use crate::links::{Exactness, LinkGraph, LinkVertex, Provenance};
use crate::{invalid, precondition, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which surface the slope lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlopeModel {
    /// One-holed torus: minimal intersection of distinct slopes is 1.
    Torus,
    /// Four-holed sphere: intersections are doubled, minimum 2.
    Sphere4,
}

impl SlopeModel {
    /// The intersection number of a pair of adjacent (Farey-neighbor) slopes.
    pub fn minimal_intersection(&self) -> u64 {
        match self {
            SlopeModel::Torus => 1,
            SlopeModel::Sphere4 => 2,
        }
    }

    fn factor(&self) -> u64 {
        match self {
            SlopeModel::Torus => 1,
            SlopeModel::Sphere4 => 2,
        }
    }
}

/// A slope p/q in canonical form: gcd(|p|, |q|) = 1 and q > 0, except that
/// the vertical slope is stored as 1/0. The slopes 1/1 and -1/1 play the
/// role of the two diagonal curves adjacent to the standard pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
    model: SlopeModel,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    /// Canonicalize and build a slope. Rejects (0, 0) and non-coprime pairs
    /// are reduced.
    pub fn new(p: i64, q: i64, model: SlopeModel) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(invalid("slope 0/0 is not a curve"));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q, model })
    }

    pub fn torus(p: i64, q: i64) -> Result<Self> {
        Slope::new(p, q, SlopeModel::Torus)
    }

    pub fn sphere4(p: i64, q: i64) -> Result<Self> {
        Slope::new(p, q, SlopeModel::Sphere4)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn model(&self) -> SlopeModel {
        self.model
    }

    /// Parse "p/q" text form.
    pub fn parse(text: &str, model: SlopeModel) -> Result<Self> {
        let (p, q) = text
            .split_once('/')
            .ok_or_else(|| invalid(format!("slope '{text}' must look like p/q")))?;
        let p = p
            .trim()
            .parse::<i64>()
            .map_err(|_| invalid(format!("bad numerator in slope '{text}'")))?;
        let q = q
            .trim()
            .parse::<i64>()
            .map_err(|_| invalid(format!("bad denominator in slope '{text}'")))?;
        Slope::new(p, q, model)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Geometric intersection number of two slopes on the same model.
pub fn slope_intersection(a: Slope, b: Slope) -> Result<u64> {
    if a.model != b.model {
        return Err(invalid("cannot intersect slopes from different models"));
    }
    let det = (a.p as i128 * b.q as i128 - a.q as i128 * b.p as i128).unsigned_abs();
    Ok(a.model.factor() * det as u64)
}

/// An integer 2x2 matrix of determinant +-1 acting on slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChange {
    /// Row-major entries [[a, b], [c, d]].
    pub entries: [[i64; 2]; 2],
}

impl BasisChange {
    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self> {
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        if det.abs() != 1 {
            return Err(invalid(format!(
                "basis change must have determinant +-1, got {det}"
            )));
        }
        Ok(BasisChange { entries })
    }

    pub fn identity() -> Self {
        BasisChange {
            entries: [[1, 0], [0, 1]],
        }
    }

    pub fn det(&self) -> i64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        let det = self.det();
        // adj / det with det = +-1.
        BasisChange {
            entries: [[d * det, -b * det], [-c * det, a * det]],
        }
    }

    /// Apply to a slope (linear action on (p, q), then canonicalize).
    pub fn apply(&self, s: Slope) -> Slope {
        let [[a, b], [c, d]] = self.entries;
        let p = a * s.p + b * s.q;
        let q = c * s.p + d * s.q;
        Slope::new(p, q, s.model).expect("unimodular image of a slope is a slope")
    }
}

/// Find the coordinate change taking `u` to 0/1 and `v` to 1/0.
///
/// Requires the pair to realize the model's minimal intersection, i.e.
/// |p_u q_v - q_u p_v| = 1.
pub fn change_to_standard_pair(u: Slope, v: Slope) -> Result<BasisChange> {
    if u.model != v.model {
        return Err(invalid("mixed slope models"));
    }
    let i = slope_intersection(u, v)?;
    if i != u.model.minimal_intersection() {
        return Err(precondition(format!(
            "change_to_standard_pair needs a minimally intersecting pair \
             (intersection {}), got {}",
            u.model.minimal_intersection(),
            i
        )));
    }
    // The matrix with columns (v, u) maps (1,0) to v and (0,1) to u; its
    // inverse is the change we want.
    let n = BasisChange {
        entries: [[v.p, u.p], [v.q, u.q]],
    };
    Ok(n.inverse())
}

/// Complete a slope to a determinant-one basis: returns M with M(u) = 0/1.
fn send_to_meridian(u: Slope) -> BasisChange {
    // Find (x, y) with x * u.p + y * u.q = 1 (extended gcd), then
    // [[y, -x], [x', y']]... We need row2 . (p,q) = 1 and row1 . (p,q) = 0.
    let (mut r0, mut r1) = (u.p, u.q);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    // r0 = gcd = +-1 since u is canonical; s0*p + t0*q = r0.
    let sign = r0.signum();
    let (x, y) = (s0 * sign, t0 * sign);
    // Row (-q, p) kills u; row (x, y) sends it to 1.
    BasisChange {
        entries: [[-u.q, u.p], [x, y]],
    }
}

/// The exact link of the edge (u, v): all slopes w distinct from u and v
/// with i(w, u) <= k and i(w, v) <= k, with edges between vertices whose
/// pairwise intersection is at most k.
pub fn farey_edge_link(u: Slope, v: Slope, k: u64) -> Result<LinkGraph> {
    if u.model != v.model {
        return Err(invalid("mixed slope models"));
    }
    if u == v {
        return Err(invalid("edge link needs two distinct slopes"));
    }
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let iuv = slope_intersection(u, v)?;
    if iuv > k {
        return Err(precondition(format!(
            "(u, v) is not an edge: i(u,v) = {iuv} > k = {k}"
        )));
    }
    let factor = u.model.factor();
    // Intersection bound in determinant terms.
    let bound = (k / factor) as i64;

    // Change coordinates so u = 0/1; v becomes (a, b) with a != 0.
    let m = send_to_meridian(u);
    let minv = m.inverse();
    let v2 = m.apply(v);
    let (a, b) = (v2.p, v2.q);
    debug_assert!(a != 0, "distinct canonical slopes cannot both be 0/1");

    let mut slopes = Vec::new();
    // w = (x, y): i(w, 0/1) = factor * |x|, i(w, v2) = factor * |x b - y a|,
    // so |y| is confined to an interval of width 2*bound/|a| around x*b/a.
    for x in -bound..=bound {
        let ylo = div_ceil(x * b - bound, a.abs()).min(div_ceil(-(x * b) - bound, a.abs()));
        let yhi = div_floor(x * b + bound, a.abs()).max(div_floor(-(x * b) + bound, a.abs()));
        for y in ylo..=yhi {
            if (x, y) == (0, 0) {
                continue;
            }
            if (x * b - y * a).abs() > bound {
                continue;
            }
            if gcd(x, y) != 1 {
                continue;
            }
            let w = minv.apply(Slope::new(x, y, u.model).unwrap());
            if w == u || w == v {
                continue;
            }
            slopes.push(w);
        }
    }
    slopes.sort_by_key(|s| (s.q, s.p));
    slopes.dedup();

    let n = slopes.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if slope_intersection(slopes[i], slopes[j])? <= k {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let vertices = slopes.into_iter().map(LinkVertex::Slope).collect();
    Ok(LinkGraph {
        vertices,
        adj,
        exactness: Exactness::Exact,
        provenance: Provenance {
            family: format!(
                "C_{k}({})",
                match u.model {
                    SlopeModel::Torus => "S_{1,1}",
                    SlopeModel::Sphere4 => "S_{0,4}",
                }
            ),
            u: u.to_string(),
            v: v.to_string(),
            k,
        },
    })
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// All canonical slopes with |p| <= pmax and |q| <= qmax (the brute-force
/// scan used as the oracle for link vertex sets).
pub fn slope_box_scan(model: SlopeModel, pmax: i64, qmax: i64) -> Vec<Slope> {
    let mut out = Vec::new();
    for p in -pmax..=pmax {
        for q in 0..=qmax {
            if (p, q) == (0, 0) || gcd(p, q) != 1 {
                continue;
            }
            if q == 0 && p != 1 {
                continue;
            }
            if q > 0 || (q == 0 && p == 1) {
                out.push(Slope::new(p, q, model).unwrap());
            }
        }
    }
    out.sort_by_key(|s| (s.q, s.p));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> Slope {
        Slope::torus(p, q).unwrap()
    }

    #[test]
    fn canonicalization() {
        assert_eq!(t(1, -1), t(-1, 1));
        assert_eq!(t(-1, 0), t(1, 0));
        assert_eq!(t(2, 4), t(1, 2));
        assert_eq!(t(0, -5), t(0, 1));
        assert!(Slope::torus(0, 0).is_err());
        // Idempotent.
        let s = t(-3, -6);
        assert_eq!(Slope::torus(s.p(), s.q()).unwrap(), s);
    }

    #[test]
    fn intersection_values() {
        assert_eq!(slope_intersection(t(0, 1), t(1, 0)).unwrap(), 1);
        assert_eq!(slope_intersection(t(1, 2), t(1, 2)).unwrap(), 0);
        let u = Slope::sphere4(0, 1).unwrap();
        let v = Slope::sphere4(1, 0).unwrap();
        assert_eq!(slope_intersection(u, v).unwrap(), 2);
        assert!(slope_intersection(t(0, 1), u).is_err());
    }

    #[test]
    fn standard_pair_identity() {
        let m = change_to_standard_pair(t(0, 1), t(1, 0)).unwrap();
        assert_eq!(m.apply(t(0, 1)), t(0, 1));
        assert_eq!(m.apply(t(1, 0)), t(1, 0));
    }

    #[test]
    fn standard_pair_shear() {
        let (u, v) = (t(1, 1), t(1, 0));
        let m = change_to_standard_pair(u, v).unwrap();
        assert_eq!(m.apply(u), t(0, 1));
        assert_eq!(m.apply(v), t(1, 0));
    }

    #[test]
    fn standard_pair_general() {
        let (u, v) = (t(1, 2), t(1, 3));
        assert_eq!(slope_intersection(u, v).unwrap(), 1);
        let m = change_to_standard_pair(u, v).unwrap();
        assert_eq!(m.apply(u), t(0, 1));
        assert_eq!(m.apply(v), t(1, 0));
        // Intersections preserved.
        for (a, b) in [(t(1, 1), t(2, 3)), (t(0, 1), t(5, 2)), (u, v)] {
            assert_eq!(
                slope_intersection(a, b).unwrap(),
                slope_intersection(m.apply(a), m.apply(b)).unwrap()
            );
        }
    }

    #[test]
    fn standard_pair_rejects_nonminimal() {
        assert!(change_to_standard_pair(t(0, 1), t(2, 1)).is_err());
    }

    #[test]
    fn basis_change_preserves_intersection() {
        // Deterministic pseudo-random scan over matrices and slopes.
        let mats = [
            [[1, 0], [0, 1]],
            [[1, 1], [0, 1]],
            [[1, 0], [1, 1]],
            [[0, 1], [1, 0]],
            [[2, 1], [1, 1]],
            [[3, 2], [1, 1]],
            [[-1, 2], [1, -1]],
        ];
        let slopes = [t(0, 1), t(1, 0), t(1, 1), t(-1, 1), t(2, 5), t(-3, 7)];
        for m in mats {
            let m = BasisChange::new(m).unwrap();
            for &a in &slopes {
                for &b in &slopes {
                    assert_eq!(
                        slope_intersection(a, b).unwrap(),
                        slope_intersection(m.apply(a), m.apply(b)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn edge_link_k1() {
        let link = farey_edge_link(t(0, 1), t(1, 0), 1).unwrap();
        let mut got: Vec<Slope> = link.slopes();
        got.sort_by_key(|s| s.p());
        assert_eq!(got, vec![t(-1, 1), t(1, 1)]);
        assert_eq!(link.edge_count(), 0);
    }

    #[test]
    fn edge_link_k2_vertex_set() {
        let link = farey_edge_link(t(0, 1), t(1, 0), 2).unwrap();
        assert_eq!(link.vertices.len(), 6);
        let got: std::collections::HashSet<Slope> = link.slopes().into_iter().collect();
        for s in [t(1, 1), t(-1, 1), t(1, 2), t(-1, 2), t(2, 1), t(-2, 1)] {
            assert!(got.contains(&s), "missing {s}");
        }
    }

    #[test]
    fn edge_link_rejects_degenerate() {
        assert!(farey_edge_link(t(0, 1), t(0, 1), 1).is_err());
        assert!(farey_edge_link(t(0, 1), t(3, 1), 1).is_err());
    }

    #[test]
    fn edge_link_equivariance() {
        // Moving the pair by a basis change gives an isomorphic link.
        let k = 3;
        let base = farey_edge_link(t(0, 1), t(1, 0), k).unwrap();
        for m in [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[1, -2], [0, 1]]] {
            let m = BasisChange::new(m).unwrap();
            let (u, v) = (m.apply(t(0, 1)), m.apply(t(1, 0)));
            let link = farey_edge_link(u, v, k).unwrap();
            assert_eq!(link.vertices.len(), base.vertices.len());
            assert_eq!(link.edge_count(), base.edge_count());
            assert_eq!(link.degree_multiset(), base.degree_multiset());
        }
    }

    #[test]
    fn vertex_count_matches_box_scan() {
        for k in 1..=5u64 {
            let link = farey_edge_link(t(0, 1), t(1, 0), k).unwrap();
            let scan = slope_box_scan(SlopeModel::Torus, k as i64, k as i64);
            assert_eq!(link.vertices.len(), scan.len() - 2, "k = {k}");
        }
    }

    #[test]
    fn farey_mediant_neighbors() {
        // For k = 1 the adjacency is the Farey graph: every edge (a, b) has
        // exactly two common neighbors at intersection <= 1 from both,
        // namely the two mediants. Brute force over denominators <= 50.
        let scan = slope_box_scan(SlopeModel::Torus, 12, 12);
        let mut checked = 0;
        for &a in &scan {
            for &b in &scan {
                if slope_intersection(a, b).unwrap() != 1 {
                    continue;
                }
                let mut commons = Vec::new();
                for p in -50..=50i64 {
                    for q in 0..=50i64 {
                        let Ok(w) = Slope::torus(p, q) else { continue };
                        if (w.p(), w.q()) != (p, q) {
                            continue;
                        }
                        if slope_intersection(w, a).unwrap() == 1
                            && slope_intersection(w, b).unwrap() == 1
                        {
                            commons.push(w);
                        }
                    }
                }
                commons.sort_by_key(|s| (s.q(), s.p()));
                commons.dedup();
                assert_eq!(commons.len(), 2, "edge ({a}, {b})");
                // The two mediants (p_a + p_b)/(q_a + q_b) and the difference.
                let med_sum = Slope::torus(a.p() + b.p(), a.q() + b.q()).unwrap();
                let med_diff = Slope::torus(a.p() - b.p(), a.q() - b.q()).unwrap();
                assert!(commons.contains(&med_sum), "edge ({a}, {b})");
                assert!(commons.contains(&med_diff), "edge ({a}, {b})");
                checked += 1;
            }
        }
        assert!(checked > 100);
    }
}
