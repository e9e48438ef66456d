//! Curve surgery: resolving crossings of a transverse pair to produce
//! curves with controlled intersections, and zero-edge paths whose length
//! is logarithmic in the starting intersection number.

use crate::fillingsystem::{geometric_intersection, CurveCode, Decomposition};
use crate::{invalid, precondition, Error, Result};
use serde::{Deserialize, Serialize};

/// A path of curves; consecutive entries are disjoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurgeryPath {
    pub curves: Vec<CurveCode>,
    /// Verified intersection numbers of consecutive entries (all zero) and
    /// of each entry with the final target.
    pub consecutive: Vec<u64>,
    pub against_target: Vec<u64>,
}

impl SurgeryPath {
    /// Number of edges in the path.
    pub fn length(&self) -> usize {
        self.curves.len().saturating_sub(1)
    }
}

mod detail {
    use super::*;
    use crate::fillingsystem::detail::{
        crossing_encounters_public as crossing_encounters, tighten_public as tighten,
        Encounter,
    };
    use crate::fillingsystem::{topological_type, TopologicalType};

    /// Where a crossing event lets one switch strands: delta runs along
    /// alpha up to letter `a_end` inclusive, then along beta from letter
    /// `b_start`; symmetrically back at the other event.
    struct Switch {
        a_end: usize,
        b_start: usize,
        b_end: usize,
        a_start: usize,
    }

    fn switch_of(e: &Encounter, na: usize, nb: usize) -> Option<Switch> {
        if e.len == 0 {
            Some(Switch {
                a_end: e.i,
                b_start: (e.j + 1) % nb,
                b_end: e.j,
                a_start: (e.i + 1) % na,
            })
        } else if e.dir == 1 {
            Some(Switch {
                a_end: (e.i + na - 1) % na,
                b_start: e.j % nb,
                b_end: (e.j + nb - 1) % nb,
                a_start: e.i % na,
            })
        } else {
            None // handled by re-running against the reversed word
        }
    }

    fn seg(w: &[usize], from: usize, to: usize) -> Vec<usize> {
        let n = w.len();
        let mut out = Vec::new();
        let mut i = from % n;
        while i != to % n {
            out.push(w[i]);
            i = (i + 1) % n;
        }
        out
    }

    fn full_from(w: &[usize], from: usize) -> Vec<usize> {
        let n = w.len();
        (0..n).map(|t| w[(from + t) % n]).collect()
    }

    fn keep_if_essential(
        deco: &Decomposition,
        word: Vec<usize>,
        out: &mut Vec<CurveCode>,
    ) -> Result<()> {
        let Ok(code) = CurveCode::new(deco, word) else {
            return Ok(());
        };
        let tightened = tighten(deco, &code);
        if tightened.is_empty() {
            return Ok(());
        }
        let Ok(embedded) = crate::fillingsystem::embedded_taut(deco, &tightened) else {
            return Ok(()); // not a simple class (or out of search budget)
        };
        if matches!(
            topological_type(deco, &embedded)?,
            TopologicalType::Nonseparating | TopologicalType::Separating(_)
        ) {
            out.push(embedded.min_rotation_form());
        }
        Ok(())
    }

    /// All essential simple candidates obtained by resolving one or two
    /// crossings of the pair, deterministically ordered. Both orientations
    /// of beta are scanned so every crossing admits a forward switch.
    pub(super) fn surgery_candidates(
        deco: &Decomposition,
        alpha: &CurveCode,
        beta: &CurveCode,
    ) -> Result<Vec<CurveCode>> {
        let mut out = Vec::new();
        let mut any = false;
        for beta_or in [beta.clone(), beta.reversed()] {
            let (ta, tb, encounters) = crossing_encounters(deco, alpha, &beta_or)?;
            let wa = ta.darts().to_vec();
            let wb = tb.darts().to_vec();
            let (na, nb) = (wa.len(), wb.len());
            let switches: Vec<Switch> = encounters
                .iter()
                .filter(|e| e.crossing)
                .filter_map(|e| switch_of(e, na, nb))
                .collect();
            any = any || !switches.is_empty();
            for x in &switches {
                for y in &switches {
                    if std::ptr::eq(x, y) {
                        // Resolve a single crossing: the connected sum.
                        let mut word = full_from(&wa, (x.a_end + 1) % na);
                        word.extend(full_from(&wb, x.b_start));
                        keep_if_essential(deco, word, &mut out)?;
                        continue;
                    }
                    // alpha from y to x, beta from x to y.
                    let mut word = seg(&wa, y.a_start, (x.a_end + 1) % na);
                    word.extend(seg(&wb, x.b_start, (y.b_end + 1) % nb));
                    if word.is_empty() {
                        continue;
                    }
                    keep_if_essential(deco, word, &mut out)?;
                }
            }
        }
        if !any {
            return Err(precondition("surgery needs intersecting curves"));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Boundary curves of a regular neighborhood of the union of a pair
    /// crossing once: traverse alpha, beta, and their reverses around the
    /// single crossing, keeping whichever concatenations are valid words.
    pub(super) fn neighborhood_boundary(
        deco: &Decomposition,
        alpha: &CurveCode,
        beta: &CurveCode,
    ) -> Result<Vec<CurveCode>> {
        let rev = |w: &[usize]| -> Vec<usize> { w.iter().rev().map(|&d| d ^ 1).collect() };
        let mut out = Vec::new();
        for beta_or in [beta.clone(), beta.reversed()] {
            let (ta, tb, encounters) = crossing_encounters(deco, alpha, &beta_or)?;
            let wa = ta.darts().to_vec();
            let wb = tb.darts().to_vec();
            let (na, nb) = (wa.len(), wb.len());
            for e in encounters.iter().filter(|e| e.crossing) {
                let Some(sw) = switch_of(e, na, nb) else { continue };
                let a_fwd = full_from(&wa, sw.a_start);
                let b_fwd = full_from(&wb, sw.b_start);
                let a_rev = rev(&a_fwd);
                let b_rev = rev(&b_fwd);
                for word in [
                    [a_fwd.clone(), b_fwd.clone(), a_rev.clone(), b_rev.clone()].concat(),
                    [a_fwd.clone(), b_rev.clone(), a_rev.clone(), b_fwd.clone()].concat(),
                ] {
                    if let Ok(code) = CurveCode::new(deco, word) {
                        out.push(code);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One surgery step: a curve delta with i(delta, alpha) <= 1 and
/// i(delta, beta) <= ceil(i(alpha, beta) / 2), built by resolving a pair of
/// crossings. Errors when the curves are disjoint.
pub fn lickorish_step(
    deco: &Decomposition,
    alpha: &CurveCode,
    beta: &CurveCode,
) -> Result<CurveCode> {
    let k = geometric_intersection(deco, alpha, beta)?;
    if k == 0 {
        return Err(precondition("lickorish_step needs i(alpha, beta) >= 1"));
    }
    let target_beta = k.div_ceil(2);
    let mut best: Option<(u64, u64, CurveCode)> = None;
    for cand in detail::surgery_candidates(deco, alpha, beta)? {
        let ia = geometric_intersection(deco, &cand, alpha)?;
        if ia > 1 {
            continue;
        }
        let ib = geometric_intersection(deco, &cand, beta)?;
        if ib > target_beta {
            continue;
        }
        let key = (ib, ia, cand.clone());
        if best
            .as_ref()
            .map_or(true, |(b_ib, b_ia, b_c)| (key.0, key.1, &key.2) < (*b_ib, *b_ia, b_c))
        {
            best = Some(key);
        }
    }
    best.map(|(_, _, c)| c).ok_or_else(|| {
        Error::Internal("no surgery candidate met the Lickorish bounds".into())
    })
}

/// A curve disjoint from both, for a pair crossing exactly once: the
/// boundary of a regular neighborhood of the union.
fn disjoint_from_both(
    deco: &Decomposition,
    alpha: &CurveCode,
    beta: &CurveCode,
) -> Result<CurveCode> {
    use crate::fillingsystem::detail::tighten_public as tighten;
    use crate::fillingsystem::{topological_type, TopologicalType};
    for cand in detail::neighborhood_boundary(deco, alpha, beta)? {
        let t = tighten(deco, &cand);
        if t.is_empty() {
            continue;
        }
        let Ok(t) = crate::fillingsystem::embedded_taut(deco, &t) else {
            continue;
        };
        if !matches!(
            topological_type(deco, &t)?,
            TopologicalType::Nonseparating | TopologicalType::Separating(_)
        ) {
            continue;
        }
        if geometric_intersection(deco, &t, alpha)? == 0
            && geometric_intersection(deco, &t, beta)? == 0
        {
            return Ok(t);
        }
    }
    Err(Error::Internal(
        "no essential neighborhood boundary curve found".into(),
    ))
}

/// A zero-edge path from alpha to beta of length at most
/// 2 log2(max(i(alpha, beta), 1)) + 2. Requires genus at least 2.
pub fn zero_edge_path(
    deco: &Decomposition,
    alpha: &CurveCode,
    beta: &CurveCode,
) -> Result<SurgeryPath> {
    if deco.surface.genus < 2 {
        return Err(precondition(
            "zero-edge paths need a surface of genus at least 2",
        ));
    }
    // Recursive scheme: a surgery curve delta with i(delta, alpha) <= 1 and
    // i(delta, beta) <= ceil(k/2) splits the problem into a short hop from
    // alpha to delta and a half-sized instance (delta, beta), giving length
    // at most 2 ceil(log2 k) + 2.
    fn path_between(
        deco: &Decomposition,
        a: &CurveCode,
        b: &CurveCode,
        depth: usize,
    ) -> Result<Vec<CurveCode>> {
        if depth > 16 {
            return Err(Error::Internal("zero-edge path recursion too deep".into()));
        }
        let k = geometric_intersection(deco, a, b)?;
        if k == 0 {
            return Ok(vec![a.clone(), b.clone()]);
        }
        if k == 1 {
            let bridge = disjoint_from_both(deco, a, b)?;
            return Ok(vec![a.clone(), bridge, b.clone()]);
        }
        let delta = lickorish_step(deco, a, b)?;
        let ka = geometric_intersection(deco, &delta, a)?;
        let kb = geometric_intersection(deco, &delta, b)?;
        if kb >= k {
            return Err(Error::Internal(
                "surgery failed to halve the intersection".into(),
            ));
        }
        debug_assert!(ka <= 1);
        let mut left = path_between(deco, a, &delta, depth + 1)?;
        let right = path_between(deco, &delta, b, depth + 1)?;
        left.pop();
        left.extend(right);
        Ok(left)
    }
    let curves = path_between(deco, alpha, beta, 0)?;
    // Verified records.
    let mut consecutive = Vec::new();
    for pair in curves.windows(2) {
        consecutive.push(geometric_intersection(deco, &pair[0], &pair[1])?);
    }
    let mut against_target = Vec::new();
    for c in &curves {
        against_target.push(geometric_intersection(deco, c, beta)?);
    }
    if consecutive.iter().any(|&i| i != 0) {
        return Err(Error::Internal("a path step is not a zero edge".into()));
    }
    Ok(SurgeryPath {
        curves,
        consecutive,
        against_target,
    })
}

/// The stated length bound 2 log2(max(k, 1)) + 2, exactly:
/// length <= 2 ceil(log2 k) + 2 computed on integers.
pub fn path_length_bound(k: u64) -> usize {
    if k <= 1 {
        return 2;
    }
    let log_ceil = 64 - (k - 1).leading_zeros() as usize;
    2 * log_ceil + 2
}

/// Rejects disjoint inputs before surgery.
pub fn require_intersecting(deco: &Decomposition, a: &CurveCode, b: &CurveCode) -> Result<u64> {
    let i = geometric_intersection(deco, a, b)?;
    if i == 0 {
        return Err(invalid("the curves are disjoint; nothing to resolve"));
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fillingsystem::{dehn_twist, genus2_std};

    #[test]
    fn lickorish_on_standard_pair() {
        let g = genus2_std();
        let u = g.pushoff(0, 0).unwrap();
        let v = g.pushoff(1, 0).unwrap();
        assert_eq!(geometric_intersection(&g.deco, &u, &v).unwrap(), 4);
        let delta = lickorish_step(&g.deco, &u, &v).unwrap();
        assert!(geometric_intersection(&g.deco, &delta, &u).unwrap() <= 1);
        assert!(geometric_intersection(&g.deco, &delta, &v).unwrap() <= 2);
    }

    #[test]
    fn lickorish_rejects_disjoint() {
        let g = genus2_std();
        let u0 = g.pushoff(0, 0).unwrap();
        let u1 = g.pushoff(0, 1).unwrap();
        assert!(lickorish_step(&g.deco, &u0, &u1).is_err());
    }

    #[test]
    fn zero_edge_path_small() {
        let g = genus2_std();
        let u = g.pushoff(0, 0).unwrap();
        let v = g.pushoff(1, 0).unwrap();
        let path = zero_edge_path(&g.deco, &u, &v).unwrap();
        assert!(path.length() <= path_length_bound(4), "length {}", path.length());
        assert!(path.consecutive.iter().all(|&i| i == 0));
    }

    #[test]
    fn zero_edge_path_disjoint_inputs() {
        let g = genus2_std();
        let u0 = g.pushoff(0, 0).unwrap();
        let u1 = g.pushoff(0, 1).unwrap();
        let path = zero_edge_path(&g.deco, &u0, &u1).unwrap();
        assert_eq!(path.length(), 1);
    }

    #[test]
    fn halving_chain_on_twisted_pair() {
        let g = genus2_std();
        let v = g.pushoff(1, 0).unwrap();
        let tw = dehn_twist(&g.deco, &v, "u", 1).unwrap();
        let k = geometric_intersection(&g.deco, &tw, &v).unwrap();
        assert_eq!(k, 16);
        let path = zero_edge_path(&g.deco, &tw, &v).unwrap();
        assert!(
            path.length() <= path_length_bound(k),
            "length {} > bound {}",
            path.length(),
            path_length_bound(k)
        );
    }
}

/// Test/debug hook: every surgery candidate with its verified intersections
/// against the two inputs.
pub fn debug_candidates(
    deco: &Decomposition,
    alpha: &CurveCode,
    beta: &CurveCode,
) -> Result<Vec<(CurveCode, u64, u64)>> {
    let mut out = Vec::new();
    for cand in detail::surgery_candidates(deco, alpha, beta)? {
        let ia = geometric_intersection(deco, &cand, alpha)?;
        let ib = geometric_intersection(deco, &cand, beta)?;
        out.push((cand, ia, ib));
    }
    Ok(out)
}
