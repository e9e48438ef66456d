//! Exact geometric intersection of taut curve words.
//!
//! Two taut transverse curves can be realized simultaneously tight (for
//! instance as geodesics), and then every crossing happens either inside a
//! maximal common corridor (a run of shared edge crossings, in parallel or
//! opposite direction) or between two chords of one face whose four side
//! occurrences are pairwise distinct and cyclically alternating. A corridor
//! carries at most one crossing: the strands swap walls exactly when their
//! entry ranks and exit ranks around the mouth faces agree in the
//! convention below.

use super::complex::{twin, Dart, Decomposition};
use super::word::{tighten, CurveCode};
use crate::{invalid, Result};
use std::collections::HashSet;

/// Default cap for tightening searches.
pub const TIGHTEN_CAP: usize = 60_000;

/// A maximal common corridor between occurrences of two (possibly equal)
/// curves. `i` and `j` are the first aligned positions; for `dir = -1` the
/// second curve runs backwards, aligning w1[i + t] with twin(w2[j - t]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Encounter {
    pub i: usize,
    pub j: usize,
    pub len: usize,
    pub dir: i8,
    pub crossing: bool,
}

fn rank_after(deco: &Decomposition, reference: Dart, side: Dart) -> usize {
    let f = deco.face(reference);
    debug_assert_eq!(deco.face(side), f);
    let n = deco.faces[f].sides.len();
    let pr = deco.side_position(reference);
    let ps = deco.side_position(side);
    (ps + n - pr) % n
}

fn at(w: &[Dart], i: isize) -> Dart {
    let n = w.len() as isize;
    w[i.rem_euclid(n) as usize]
}

/// Whether the strands of a corridor cross inside it (see module docs).
fn corridor_crossing(
    deco: &Decomposition,
    w1: &[Dart],
    w2: &[Dart],
    i: usize,
    j: usize,
    len: usize,
    dir: i8,
) -> bool {
    let (i, j, len) = (i as isize, j as isize, len as isize);
    // Left mouth.
    let e_l = twin(at(w1, i));
    let p1 = at(w1, i - 1);
    let p2 = if dir == 1 {
        at(w2, j - 1)
    } else {
        twin(at(w2, j + 1))
    };
    debug_assert_ne!(p1, p2, "corridor not maximal on the left");
    let first_left = rank_after(deco, e_l, p1) < rank_after(deco, e_l, p2);
    // Right mouth.
    let e_r = at(w1, i + len - 1);
    let q1 = twin(at(w1, i + len));
    let q2 = if dir == 1 {
        twin(at(w2, j + len))
    } else {
        at(w2, j - len)
    };
    debug_assert_ne!(q1, q2, "corridor not maximal on the right");
    let first_right = rank_after(deco, e_r, q1) < rank_after(deco, e_r, q2);
    first_left == first_right
}

/// All maximal corridors between w1 and w2 in the given direction.
/// `same_curve` restricts to genuinely distinct occurrence pairs and
/// deduplicates mirrored runs. Returns None when the alignment is fully
/// periodic (equal classes or a power; the caller decides what that means).
fn corridors(
    w1: &[Dart],
    w2: &[Dart],
    dir: i8,
    same_curve: bool,
) -> Option<Vec<(usize, usize, usize)>> {
    let n1 = w1.len();
    let n2 = w2.len();
    let cap = n1 + n2;
    let aligned = |i: isize, j: isize| -> bool {
        let a = at(w1, i);
        let b = at(w2, j);
        if dir == 1 {
            a == b
        } else {
            a == twin(b)
        }
    };
    let mut runs = Vec::new();
    let mut any_aligned = false;
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    for i in 0..n1 {
        for j in 0..n2 {
            if same_curve && dir == 1 && i == j {
                continue;
            }
            if !aligned(i as isize, j as isize) {
                continue;
            }
            any_aligned = true;
            // Start of a maximal run?
            let (pi, pj) = (i as isize - 1, j as isize + if dir == 1 { -1 } else { 1 });
            if aligned(pi, pj) && !(same_curve && dir == 1 && pi.rem_euclid(n1 as isize) == pj.rem_euclid(n2 as isize)) {
                continue;
            }
            let mut len = 1usize;
            while len < cap {
                let (ni, nj) = (
                    i as isize + len as isize,
                    j as isize + if dir == 1 { len as isize } else { -(len as isize) },
                );
                if !aligned(ni, nj) {
                    break;
                }
                if same_curve && dir == 1 && ni.rem_euclid(n1 as isize) == nj.rem_euclid(n2 as isize)
                {
                    break;
                }
                len += 1;
            }
            if len >= cap {
                return None; // fully periodic alignment
            }
            if same_curve {
                // Deduplicate mirrored enumerations of the same run.
                let mut key: Vec<(usize, usize)> = (0..len)
                    .map(|t| {
                        let a = (i + t) % n1;
                        let b = if dir == 1 {
                            (j + t) % n2
                        } else {
                            (j as isize - t as isize).rem_euclid(n2 as isize) as usize
                        };
                        if dir == 1 {
                            (a.min(b), a.max(b))
                        } else {
                            (a.min(b), a.max(b))
                        }
                    })
                    .collect();
                key.sort_unstable();
                if !seen.insert(key) {
                    continue;
                }
            }
            runs.push((i, j, len));
        }
    }
    if runs.is_empty() && any_aligned {
        return None; // alignment exists but never starts: periodic
    }
    Some(runs)
}

/// Chords of a word grouped by face: (face, entry side, exit side, index).
fn chords(deco: &Decomposition, w: &[Dart]) -> Vec<(usize, Dart, Dart, usize)> {
    let n = w.len();
    (0..n)
        .map(|i| {
            let entry = w[i];
            let exit = twin(w[(i + 1) % n]);
            (deco.face(entry), entry, exit, i)
        })
        .collect()
}

fn alternating(deco: &Decomposition, a: (Dart, Dart), b: (Dart, Dart)) -> bool {
    let (p1, p2) = (deco.side_position(a.0), deco.side_position(a.1));
    let (q1, q2) = (deco.side_position(b.0), deco.side_position(b.1));
    // Do {q1, q2} separate {p1, p2} in the cyclic order?
    let n = deco.faces[deco.face(a.0)].sides.len();
    let between = |x: usize, lo: usize, hi: usize| -> bool {
        // strictly between lo and hi cyclically
        if lo <= hi {
            x > lo && x < hi
        } else {
            x > lo || x < hi
        }
    };
    let _ = n;
    between(q1, p1, p2) != between(q2, p1, p2)
}

/// The raw crossing count between two taut words, with per-encounter data.
/// `same_curve` computes self-crossings of a single word. Returns None for
/// periodic alignments (equal classes when the words have equal length, a
/// power otherwise).
fn count_crossings(
    deco: &Decomposition,
    w1: &[Dart],
    w2: &[Dart],
    same_curve: bool,
) -> Option<(u64, Vec<Encounter>)> {
    let mut total = 0u64;
    let mut encounters = Vec::new();
    for dir in [1i8, -1] {
        if same_curve && dir == -1 && w1.is_empty() {
            continue;
        }
        let runs = corridors(w1, w2, dir, same_curve)?;
        for (i, j, len) in runs {
            let crossing = corridor_crossing(deco, w1, w2, i, j, len, dir);
            if crossing {
                total += 1;
            }
            encounters.push(Encounter {
                i,
                j,
                len,
                dir,
                crossing,
            });
        }
    }
    // Face-local chord pairs on four distinct side occurrences.
    let ch1 = chords(deco, w1);
    let ch2 = chords(deco, w2);
    for &(f1, a1, b1, i1) in &ch1 {
        for &(f2, a2, b2, i2) in &ch2 {
            if f1 != f2 {
                continue;
            }
            if same_curve {
                if i2 <= i1 {
                    continue;
                }
                let n = w1.len();
                if i2 == i1 + 1 || (i1 == 0 && i2 == n - 1) {
                    continue; // adjacent chords share a point on the curve
                }
            }
            let sides = [a1, b1, a2, b2];
            let mut uniq = sides.to_vec();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != 4 {
                continue; // shared sides belong to corridors
            }
            if alternating(deco, (a1, b1), (a2, b2)) {
                total += 1;
                encounters.push(Encounter {
                    i: i1,
                    j: i2,
                    len: 0,
                    dir: 1,
                    crossing: true,
                });
            }
        }
    }
    Some((total, encounters))
}

/// Number of transverse self-crossings of the taut representative; zero
/// exactly when the class is simple. Words whose letters are periodic are
/// powers and therefore not simple.
pub fn self_crossings(deco: &Decomposition, code: &CurveCode) -> Result<Option<u64>> {
    if code.len() <= 1 {
        return Ok(Some(0));
    }
    match count_crossings(deco, code.darts(), code.darts(), true) {
        Some((n, _)) => Ok(Some(n)),
        None => Ok(None), // periodic: a power, not simple
    }
}

pub fn is_simple(deco: &Decomposition, code: &CurveCode) -> Result<bool> {
    Ok(matches!(self_crossings(deco, code)?, Some(0)))
}

/// Geometric intersection number of the classes of two codes. Both codes
/// are tightened first; equal classes give zero.
pub fn geometric_intersection(
    deco: &Decomposition,
    a: &CurveCode,
    b: &CurveCode,
) -> Result<u64> {
    a.validate(deco)?;
    b.validate(deco)?;
    let ta = if a.is_empty() { a.clone() } else { embedded_taut(deco, a)? };
    let tb = if b.is_empty() { b.clone() } else { embedded_taut(deco, b)? };
    if ta.is_empty() || tb.is_empty() {
        return Ok(0);
    }
    if ta.min_rotation_form() == tb.min_rotation_form() {
        return Ok(0);
    }
    match count_crossings(deco, ta.darts(), tb.darts(), false) {
        Some((n, _)) => Ok(n),
        None => {
            if ta.len() == tb.len() {
                // Fully periodic alignment of equal lengths: same class.
                Ok(0)
            } else {
                Err(invalid(
                    "periodic alignment between words of different lengths: \
                     an input is a proper power, not a simple curve",
                ))
            }
        }
    }
}

/// Tightened words plus the crossing encounters between them, for callers
/// that need crossing locations (surgery, rebasing).
pub fn crossing_encounters(
    deco: &Decomposition,
    a: &CurveCode,
    b: &CurveCode,
) -> Result<(CurveCode, CurveCode, Vec<Encounter>)> {
    let ta = if a.is_empty() { a.clone() } else { embedded_taut(deco, a)? };
    let tb = if b.is_empty() { b.clone() } else { embedded_taut(deco, b)? };
    if ta.is_empty() || tb.is_empty() || ta.min_rotation_form() == tb.min_rotation_form() {
        return Ok((ta, tb, Vec::new()));
    }
    match count_crossings(deco, ta.darts(), tb.darts(), false) {
        Some((_, enc)) => Ok((ta, tb, enc)),
        None => Err(invalid("periodic alignment; cannot localize crossings")),
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin::torus_std;
    use super::*;
    use crate::farey::{slope_intersection, Slope};

    #[test]
    fn torus_intersections_match_slope_formula_small() {
        let t = torus_std();
        let d = &t.deco;
        let slopes = [(0, 1), (1, 0), (1, 1), (-1, 1), (1, 2), (2, 1), (-1, 2)];
        for &(p1, q1) in &slopes {
            for &(p2, q2) in &slopes {
                let a = t.slope_code(p1, q1).unwrap();
                let b = t.slope_code(p2, q2).unwrap();
                let got = geometric_intersection(d, &a, &b).unwrap();
                let want = slope_intersection(
                    Slope::torus(p1, q1).unwrap(),
                    Slope::torus(p2, q2).unwrap(),
                )
                .unwrap();
                assert_eq!(got, want, "i({p1}/{q1}, {p2}/{q2})");
            }
        }
    }

    #[test]
    fn slope_codes_are_simple() {
        let t = torus_std();
        for &(p, q) in &[(0, 1), (1, 0), (1, 1), (-1, 1), (2, 1), (1, 2), (3, 2)] {
            let c = t.slope_code(p, q).unwrap();
            assert!(is_simple(&t.deco, &c).unwrap(), "slope {p}/{q}");
        }
    }

    #[test]
    fn doubled_word_is_not_simple() {
        let t = torus_std();
        let c = t.slope_code(1, 1).unwrap();
        let mut w = c.darts().to_vec();
        let mut doubled = w.clone();
        doubled.append(&mut w);
        let code = CurveCode::unchecked(doubled);
        assert!(!is_simple(&t.deco, &code).unwrap());
    }

    #[test]
    fn intersection_symmetric() {
        let t = torus_std();
        let d = &t.deco;
        for &(p1, q1) in &[(1, 1), (1, 2), (2, 1), (-1, 2)] {
            for &(p2, q2) in &[(0, 1), (1, 0), (-1, 1), (3, 1)] {
                let a = t.slope_code(p1, q1).unwrap();
                let b = t.slope_code(p2, q2).unwrap();
                assert_eq!(
                    geometric_intersection(d, &a, &b).unwrap(),
                    geometric_intersection(d, &b, &a).unwrap()
                );
            }
        }
    }
}

/// Debug hook: the self-encounters of a word.
pub fn debug_self_encounters(
    deco: &Decomposition,
    code: &CurveCode,
) -> Result<Vec<Encounter>> {
    match count_crossings(deco, code.darts(), code.darts(), true) {
        Some((_, enc)) => Ok(enc),
        None => Err(invalid("periodic")),
    }
}

/// A taut word of the class that realizes zero self-crossings. Tightening
/// minimizes crossings with the complex but can land on a word whose every
/// realization is immersed (slides drag strands across other strands);
/// geometric computations need a representative that embeds, found by
/// searching the slide orbit.
pub fn embedded_taut(deco: &Decomposition, code: &CurveCode) -> Result<CurveCode> {
    use super::word::debug_slide_neighbors;
    use std::collections::{HashSet, VecDeque};
    let start = tighten(deco, code, TIGHTEN_CAP);
    if start.is_empty() {
        return Ok(start);
    }
    let realized = |w: &CurveCode| -> Result<Option<u64>> { self_crossings(deco, w) };
    match realized(&start)? {
        Some(0) => return Ok(start),
        None => return Err(invalid("the word is a proper power, not a simple curve")),
        _ => {}
    }
    let base_len = start.len();
    let mut seen: HashSet<CurveCode> = HashSet::new();
    let mut queue = VecDeque::new();
    let norm = start.min_rotation_form();
    seen.insert(norm.clone());
    queue.push_back(norm);
    let cap = 200_000;
    while let Some(w) = queue.pop_front() {
        let mirror = w.reversed();
        for base in [&w, &mirror] {
            for nb in debug_slide_neighbors(deco, base) {
                if nb.len() != base_len {
                    continue; // stay among taut words
                }
                let norm = nb.min_rotation_form();
                if seen.contains(&norm) {
                    continue;
                }
                if let Some(0) = realized(&norm)? {
                    return Ok(norm);
                }
                if seen.len() >= cap {
                    return Err(crate::Error::Internal(
                        "no embedded representative found within the search cap".into(),
                    ));
                }
                seen.insert(norm.clone());
                queue.push_back(norm);
            }
        }
    }
    Err(invalid(
        "the class has no embedded representative: the curve is not simple",
    ))
}

/// Class-level simplicity: some taut word of the class embeds.
pub fn class_is_simple(deco: &Decomposition, code: &CurveCode) -> Result<bool> {
    match embedded_taut(deco, code) {
        Ok(_) => Ok(true),
        Err(crate::Error::InvalidInput(_)) => Ok(false),
        Err(e) => Err(e),
    }
}
