//! Complete enumeration of essential simple closed curves with bounded
//! intersection against each base curve.
//!
//! Words are grown by depth-first extension through faces with per-curve
//! crossing budgets. Partial words whose face chords already alternate are
//! pruned (the curve could not be embedded), and emitted words are filtered
//! down to taut, simple, essential classes and deduplicated by canonical
//! form. Finiteness comes from the filling property: a word's length is
//! bounded by the total budget, so the search terminates.

use super::complex::{twin, Dart, Decomposition, EdgeKind};
use super::intersect::{self};
use super::word::{canonical_form, CurveCode};
use crate::{invalid, Result};
use std::collections::HashSet;

/// Per-base-curve intersection bounds, plus the spoke crossing allowance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBounds {
    pub per_curve: Vec<u64>,
    /// Crossing budget for each spoke edge. Taut simple curves cross a
    /// spoke at most about as often as they cross the face's other sides;
    /// the default allowance is max(per-curve bounds) + 2, validated against
    /// the slope-model oracles.
    pub spoke_budget: u64,
}

impl CurveBounds {
    pub fn new(per_curve: Vec<u64>, spoke_budget: u64) -> Self {
        CurveBounds {
            per_curve,
            spoke_budget,
        }
    }

    pub fn uniform(deco: &Decomposition, k: u64) -> Self {
        CurveBounds {
            per_curve: vec![k; deco.curve_names.len()],
            spoke_budget: k + 2,
        }
    }

    pub fn pair(deco: &Decomposition, a: u64, b: u64) -> Result<Self> {
        if deco.curve_names.len() != 2 {
            return Err(invalid("pair bounds need a two-curve system"));
        }
        Ok(CurveBounds {
            per_curve: vec![a, b],
            spoke_budget: a.max(b) + 2,
        })
    }
}

struct Search<'a> {
    deco: &'a Decomposition,
    bounds: &'a CurveBounds,
    canonical_cap: usize,
    out: HashSet<CurveCode>,
}

impl<'a> Search<'a> {
    /// Chords of the partial word (entry, exit) per face; the new chord must
    /// not alternate with an existing one on four distinct sides.
    fn chord_ok(&self, chords: &[(Dart, Dart)], entry: Dart, exit: Dart) -> bool {
        let f = self.deco.face(entry);
        for &(a, b) in chords {
            if self.deco.face(a) != f {
                continue;
            }
            let sides = [a, b, entry, exit];
            let mut uniq = sides.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != 4 {
                continue;
            }
            let pa = self.deco.side_position(a);
            let pb = self.deco.side_position(b);
            let pe = self.deco.side_position(entry);
            let px = self.deco.side_position(exit);
            let between = |x: usize, lo: usize, hi: usize| {
                if lo <= hi {
                    x > lo && x < hi
                } else {
                    x > lo || x < hi
                }
            };
            if between(pe, pa, pb) != between(px, pa, pb) {
                return false;
            }
        }
        true
    }

    fn extend(
        &mut self,
        word: &mut Vec<Dart>,
        chords: &mut Vec<(Dart, Dart)>,
        counts: &mut Vec<u64>,
        spokes: &mut u64,
        max_len: usize,
    ) -> Result<()> {
        // Try to close the cycle.
        let first = word[0];
        let last = *word.last().unwrap();
        if self.deco.face(twin(first)) == self.deco.face(last)
            && twin(first) != last
            && self.chord_ok(chords, last, twin(first))
        {
            self.emit(word)?;
        }
        if word.len() >= max_len {
            return Ok(());
        }
        // Extend through every side of the current face.
        let f = self.deco.face(last);
        let sides: Vec<Dart> = self.deco.faces[f].sides.clone();
        for exit in sides {
            let next = twin(exit);
            // Immediate backtrack makes a reducible bigon.
            if next == twin(last) {
                continue;
            }
            // Symmetry: keep the first letter minimal.
            if next < first {
                continue;
            }
            match self.deco.edge_kind(next) {
                EdgeKind::Curve(c) => {
                    if counts[c] + 1 > self.bounds.per_curve[c] {
                        continue;
                    }
                    counts[c] += 1;
                }
                EdgeKind::Spoke => {
                    if *spokes + 1 > self.bounds.spoke_budget {
                        continue;
                    }
                    *spokes += 1;
                }
            }
            if self.chord_ok(chords, last, exit) {
                word.push(next);
                chords.push((last, exit));
                self.extend(word, chords, counts, spokes, max_len)?;
                chords.pop();
                word.pop();
            }
            match self.deco.edge_kind(next) {
                EdgeKind::Curve(c) => counts[c] -= 1,
                EdgeKind::Spoke => *spokes -= 1,
            }
        }
        Ok(())
    }

    fn emit(&mut self, word: &[Dart]) -> Result<()> {
        let code = CurveCode::unchecked(word.to_vec());
        let canon = canonical_form(self.deco, &code, self.canonical_cap)?;
        // Not taut: a shorter representative is enumerated elsewhere.
        if canon.len() != code.len() {
            return Ok(());
        }
        if self.out.contains(&canon) {
            return Ok(());
        }
        // Peripheral: the canonical taut word of a curve around a puncture
        // is the single crossing of that face's spoke.
        if canon.len() == 1 && !self.deco.is_curve_dart(canon.darts()[0]) {
            return Ok(());
        }
        // Simplicity is a property of the class, checked on the emitted word
        // (slides can trade embeddability between words of one class, but a
        // simple class is collected through its embeddable words).
        if !intersect::is_simple(self.deco, &code)? {
            return Ok(());
        }
        self.out.insert(canon);
        Ok(())
    }
}

/// All essential simple closed curve classes meeting base curve j at most
/// bounds.per_curve[j] times, as canonical taut codes. The decomposition
/// must fill (otherwise the set is infinite).
pub fn enumerate_bounded_curves(
    deco: &Decomposition,
    bounds: &CurveBounds,
) -> Result<Vec<CurveCode>> {
    if bounds.per_curve.len() != deco.curve_names.len() {
        return Err(invalid("one bound per base curve required"));
    }
    if !deco.fills {
        return Err(invalid(
            "bounded enumeration needs a filling system; the complement \
             carries infinitely many classes otherwise",
        ));
    }
    let spoke_count = deco
        .edge_kinds
        .iter()
        .filter(|k| matches!(k, EdgeKind::Spoke))
        .count() as u64;
    let max_len = (bounds.per_curve.iter().sum::<u64>() + spoke_count * bounds.spoke_budget)
        as usize;
    let mut search = Search {
        deco,
        bounds,
        canonical_cap: 2_000_000,
        out: HashSet::new(),
    };
    for first in 0..deco.dart_count() {
        let mut counts = vec![0u64; deco.curve_names.len()];
        let mut spokes = 0u64;
        match deco.edge_kind(first) {
            EdgeKind::Curve(c) => {
                if bounds.per_curve[c] == 0 {
                    continue;
                }
                counts[c] = 1;
            }
            EdgeKind::Spoke => {
                if bounds.spoke_budget == 0 {
                    continue;
                }
                spokes = 1;
            }
        }
        let mut word = vec![first];
        let mut chords = Vec::new();
        search.extend(&mut word, &mut chords, &mut counts, &mut spokes, max_len)?;
    }
    let mut out: Vec<CurveCode> = search.out.into_iter().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::builtin::{genus2_std, torus_std};
    use super::*;
    use crate::farey::{slope_box_scan, SlopeModel};

    #[test]
    fn torus_bounds_1_1_matches_slopes() {
        let t = torus_std();
        let curves =
            enumerate_bounded_curves(&t.deco, &CurveBounds::pair(&t.deco, 1, 1).unwrap()).unwrap();
        // Slopes with |p| <= 1, |q| <= 1: 0/1, 1/0, 1/1, -1/1.
        assert_eq!(curves.len(), 4, "{:?}", curves.iter().map(|c| c.label()).collect::<Vec<_>>());
    }

    #[test]
    fn torus_bounds_match_slope_scan_small() {
        let t = torus_std();
        for k in 1..=3u64 {
            let curves =
                enumerate_bounded_curves(&t.deco, &CurveBounds::uniform(&t.deco, k)).unwrap();
            let slopes = slope_box_scan(SlopeModel::Torus, k as i64, k as i64);
            assert_eq!(curves.len(), slopes.len(), "k = {k}");
        }
    }

    #[test]
    fn zero_bounds_empty() {
        let t = torus_std();
        let curves = enumerate_bounded_curves(
            &t.deco,
            &CurveBounds::new(vec![0, 0], 0),
        )
        .unwrap();
        assert!(curves.is_empty());
    }

    #[test]
    fn monotone_in_bounds() {
        let t = torus_std();
        let small = enumerate_bounded_curves(&t.deco, &CurveBounds::uniform(&t.deco, 1)).unwrap();
        let big = enumerate_bounded_curves(&t.deco, &CurveBounds::uniform(&t.deco, 2)).unwrap();
        let bigset: HashSet<_> = big.iter().collect();
        for c in &small {
            assert!(bigset.contains(c));
        }
    }

    #[test]
    fn genus2_small_enumeration_members_verified() {
        let g = genus2_std();
        let curves =
            enumerate_bounded_curves(&g.deco, &CurveBounds::uniform(&g.deco, 2)).unwrap();
        assert!(!curves.is_empty());
        for c in &curves {
            let counts = c.crossings_per_curve(&g.deco);
            assert!(counts.iter().all(|&n| n <= 2), "{}", c.label());
            assert!(intersect::is_simple(&g.deco, c).unwrap());
        }
    }
}
