//! Curve codes: cyclic words of oriented edge crossings.
//!
//! Letter d means the curve crosses edge(d) and lands in face(d), entering
//! through side d. Consecutive letters x, y satisfy face(twin(y)) = face(x):
//! between the two crossings the curve runs as a chord of that face from
//! side x to side twin(y). Words encode isotopy classes up to:
//!
//! - reduction: consecutive (x, twin(x)) is a bigon against edge(x), delete;
//! - slides: a run of letters crossing k consecutive edge ends at a
//!   crossing vertex of valence v rewrites to the complementary v - k ends
//!   (the strand passes the vertex on the other side);
//! - rotation and reflection (the curve is unoriented).
//!
//! Slides never apply at puncture vertices: that is the move the puncture
//! forbids.

use super::complex::{edge_of, twin, Dart, Decomposition, VertexKind};
use crate::{invalid, Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashSet, VecDeque};

/// A transverse curve on a decomposition, as a cyclic dart word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveCode {
    pub(crate) word: Vec<Dart>,
}

impl Serialize for CurveCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // [[edge, dir], ...]
        let pairs: Vec<(usize, u8)> = self.word.iter().map(|&d| (edge_of(d), (d & 1) as u8)).collect();
        let mut outer = serde_json::Map::new();
        outer.insert(
            "word".to_string(),
            serde_json::to_value(&pairs).map_err(serde::ser::Error::custom)?,
        );
        serde_json::Value::Object(outer).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            word: Vec<(usize, u8)>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.word.iter().any(|&(_, dir)| dir > 1) {
            return Err(D::Error::custom("crossing direction must be 0 or 1"));
        }
        Ok(CurveCode {
            word: raw.word.iter().map(|&(e, dir)| 2 * e + dir as usize).collect(),
        })
    }
}

impl CurveCode {
    /// Validate a dart word against a decomposition.
    pub fn new(deco: &Decomposition, word: Vec<Dart>) -> Result<Self> {
        let code = CurveCode { word };
        code.validate(deco)?;
        Ok(code)
    }

    pub(crate) fn unchecked(word: Vec<Dart>) -> Self {
        CurveCode { word }
    }

    pub fn empty() -> Self {
        CurveCode { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn darts(&self) -> &[Dart] {
        &self.word
    }

    /// Compact text form "e3+ e1- ...".
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            return "(trivial)".to_string();
        }
        self.word
            .iter()
            .map(|&d| format!("e{}{}", edge_of(d), if d & 1 == 0 { "+" } else { "-" }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn validate(&self, deco: &Decomposition) -> Result<()> {
        let n = self.word.len();
        for &d in &self.word {
            if d >= deco.dart_count() {
                return Err(invalid(format!("dart {d} out of range")));
            }
        }
        for i in 0..n {
            let x = self.word[i];
            let y = self.word[(i + 1) % n];
            if deco.face(twin(y)) != deco.face(x) {
                return Err(invalid(format!(
                    "letters {i} and {} do not share a face: crossing into face {} \
                     but next crossing leaves face {}",
                    (i + 1) % n,
                    deco.face(x),
                    deco.face(twin(y)),
                )));
            }
        }
        Ok(())
    }

    /// Crossings with each base curve (counted from the word; equals the
    /// geometric intersection when the word is taut).
    pub fn crossings_per_curve(&self, deco: &Decomposition) -> Vec<usize> {
        let mut counts = vec![0usize; deco.curve_names.len()];
        for &d in &self.word {
            if let Some(c) = deco.curve_of_dart(d) {
                counts[c] += 1;
            }
        }
        counts
    }

    pub fn spoke_crossings(&self, deco: &Decomposition) -> usize {
        self.word.iter().filter(|&&d| !deco.is_curve_dart(d)).count()
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> CurveCode {
        CurveCode {
            word: self.word.iter().rev().map(|&d| twin(d)).collect(),
        }
    }

    fn rotated(&self, by: usize) -> CurveCode {
        let n = self.word.len();
        CurveCode {
            word: (0..n).map(|i| self.word[(i + by) % n]).collect(),
        }
    }

    /// Lexicographically minimal rotation of this word or its reversal.
    pub fn min_rotation_form(&self) -> CurveCode {
        let mut best: Option<Vec<Dart>> = None;
        for cand in [self.clone(), self.reversed()] {
            for r in 0..cand.word.len().max(1) {
                let rot = cand.rotated(r % cand.word.len().max(1));
                if best.as_ref().map_or(true, |b| rot.word < *b) {
                    best = Some(rot.word);
                }
            }
        }
        CurveCode {
            word: best.unwrap_or_default(),
        }
    }
}

/// One rewriting step.
#[derive(Debug, Clone, Copy)]
enum Move {
    /// Delete letters at positions i, i+1 (cyclic) forming (x, twin(x)).
    Reduce(usize),
    /// Slide the run of `k` letters starting at position i across the
    /// crossing vertex they corner.
    Slide { at: usize, k: usize },
}

fn apply_reduce(word: &[Dart], i: usize) -> Vec<Dart> {
    let n = word.len();
    let j = (i + 1) % n;
    word.iter()
        .enumerate()
        .filter(|&(p, _)| p != i && p != j)
        .map(|(_, &d)| d)
        .collect()
}

fn reduce_position(word: &[Dart]) -> Option<usize> {
    let n = word.len();
    if n < 2 {
        return None;
    }
    (0..n).find(|&i| word[(i + 1) % n] == twin(word[i]))
}

/// Valence and rotation order at a vertex.
fn vertex_star(deco: &Decomposition, out_dart: Dart) -> Vec<Dart> {
    let mut star = vec![out_dart];
    let mut d = deco.next_out(out_dart);
    while d != out_dart {
        star.push(d);
        d = deco.next_out(d);
    }
    star
}

/// All applicable slide moves on the word.
fn slide_moves(deco: &Decomposition, word: &[Dart]) -> Vec<Move> {
    let n = word.len();
    let mut moves = Vec::new();
    if n < 2 {
        return moves;
    }
    for i in 0..n {
        // Grow the run of corner-cutting pairs starting at i.
        let r0 = twin(word[i]);
        let vertex = deco.vertex(r0);
        if !matches!(deco.vertex_kinds[vertex], VertexKind::Crossing) {
            continue;
        }
        let star = vertex_star(deco, r0);
        let v = star.len();
        // Pulling a single strand across the vertex trades one crossing for
        // the complementary v - 1. At 4-valent crossings this is never
        // needed to connect minimal words, so it is only generated at the
        // irregular (spoke-carrying) vertices.
        if v != 4 && v >= 2 {
            moves.push(Move::Slide { at: i, k: 1 });
        }
        let mut k = 1;
        while k < v - 1 && k < n {
            let expect = star[k];
            let next_letter = word[(i + k) % n];
            if twin(next_letter) != expect {
                break;
            }
            k += 1;
            // A run of k letters crossing star[0..k]; complementary side has
            // v - k >= 1 ends. Keep runs rewritable to at least one letter.
            if v - k >= 1 && k >= 2 {
                moves.push(Move::Slide { at: i, k });
            }
        }
    }
    moves
}

fn apply_slide(deco: &Decomposition, word: &[Dart], at: usize, k: usize) -> Vec<Dart> {
    let n = word.len();
    let r0 = twin(word[at]);
    let star = vertex_star(deco, r0);
    let v = star.len();
    // Rotate so the run starts at position 0, then splice in the
    // complementary ends in descending rotation order.
    let rot: Vec<Dart> = (0..n).map(|i| word[(i + at) % n]).collect();
    let mut out: Vec<Dart> = (k..v).rev().map(|j| star[j]).collect();
    out.extend_from_slice(&rot[k..]);
    out
}

/// Exhaustively apply reductions (cyclic), cheapest loop.
fn reduce_fully(word: &mut Vec<Dart>) {
    while let Some(i) = reduce_position(word) {
        *word = apply_reduce(word, i);
    }
}

/// Greedy tightening: reductions, plus bounded slide search to expose more
/// reductions. Returns a word of minimal length found.
pub fn tighten(deco: &Decomposition, code: &CurveCode, visited_cap: usize) -> CurveCode {
    let mut current = code.word.clone();
    reduce_fully(&mut current);
    loop {
        // BFS over slide moves looking for any word that admits a reduction.
        let start = CurveCode::unchecked(current.clone()).min_rotation_form();
        let mut visited: HashSet<Vec<Dart>> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(start.word.clone());
        queue.push_back(start.word.clone());
        let mut found: Option<Vec<Dart>> = None;
        let len_cap = current.len() + 4;
        'bfs: while let Some(w) = queue.pop_front() {
            let mirror = CurveCode::unchecked(w.clone()).reversed().word;
            for base_word in [&w, &mirror] {
                for mv in slide_moves(deco, base_word) {
                    let Move::Slide { at, k } = mv else { unreachable!() };
                    let next = apply_slide(deco, base_word, at, k);
                    if next.len() > len_cap {
                        continue;
                    }
                    if reduce_position(&next).is_some() {
                        found = Some(next);
                        break 'bfs;
                    }
                    let norm = CurveCode::unchecked(next).min_rotation_form().word;
                    if visited.len() < visited_cap && visited.insert(norm.clone()) {
                        queue.push_back(norm);
                    }
                }
            }
        }
        match found {
            Some(mut w) => {
                reduce_fully(&mut w);
                if w.len() >= current.len() {
                    return CurveCode::unchecked(current).min_rotation_form();
                }
                current = w;
            }
            None => return CurveCode::unchecked(current).min_rotation_form(),
        }
    }
}

/// Canonical form: the lexicographically smallest reduced word reachable by
/// slides, rotations and reflection. Errors out if the move orbit exceeds
/// the cap (callers use this on desk-scale words only).
pub fn canonical_form(deco: &Decomposition, code: &CurveCode, cap: usize) -> Result<CurveCode> {
    let mut base = code.word.clone();
    reduce_fully(&mut base);
    'restart: loop {
        let start = CurveCode::unchecked(base.clone()).min_rotation_form();
        if start.is_empty() {
            return Ok(start);
        }
        let mut visited: HashSet<Vec<Dart>> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(start.word.clone());
        queue.push_back(start.word.clone());
        let len_cap = base.len() + 4;
        let mut best = start.word.clone();
        while let Some(w) = queue.pop_front() {
            let mirror = CurveCode::unchecked(w.clone()).reversed().word;
            for base_word in [&w, &mirror] {
                for mv in slide_moves(deco, base_word) {
                    let Move::Slide { at, k } = mv else { unreachable!() };
                    let mut next = apply_slide(deco, base_word, at, k);
                    if reduce_position(&next).is_some() {
                        reduce_fully(&mut next);
                        if next.len() < base.len() {
                            base = next;
                            continue 'restart;
                        }
                        continue;
                    }
                    if next.len() > len_cap {
                        continue;
                    }
                    let norm = CurveCode::unchecked(next).min_rotation_form().word;
                    if !visited.contains(&norm) {
                        if visited.len() >= cap {
                            return Err(Error::Internal(format!(
                                "canonical form orbit exceeded cap {cap} (word length {})",
                                base.len()
                            )));
                        }
                        if norm.len() == base.len() && norm < best {
                            best = norm.clone();
                        }
                        visited.insert(norm.clone());
                        queue.push_back(norm);
                    }
                }
            }
        }
        return Ok(CurveCode::unchecked(best));
    }
}

/// Is the word already reduced and slide-minimal (no shorter word in its
/// orbit)? Used by the enumerator to drop non-taut candidates.
pub fn is_taut(deco: &Decomposition, code: &CurveCode, cap: usize) -> Result<bool> {
    let canon = canonical_form(deco, code, cap)?;
    Ok(canon.len() == code.len())
}

#[cfg(test)]
mod tests {
    use super::super::builtin::torus_std;
    use super::*;

    #[test]
    fn reversal_is_involution_and_valid() {
        let t = torus_std();
        let d = &t.deco;
        // A slope 1/1 curve: crosses u once and v once.
        let code = t.slope_code(1, 1).unwrap();
        code.validate(d).unwrap();
        let rev = code.reversed();
        rev.validate(d).unwrap();
        assert_eq!(rev.reversed().min_rotation_form(), code.min_rotation_form());
    }

    #[test]
    fn reduction_removes_backtrack() {
        let t = torus_std();
        let d = &t.deco;
        let base = t.slope_code(0, 1).unwrap();
        // Insert a backtrack x, twin(x) after position 0 using any edge on
        // the face the curve passes through.
        let f = d.face(base.word[0]);
        let side = d.faces[f].sides[0];
        let mut word = base.word.clone();
        word.insert(1, twin(side));
        word.insert(2, side);
        let padded = CurveCode::unchecked(word);
        padded.validate(d).unwrap_or_else(|e| panic!("padded word invalid: {e}"));
        let tightened = tighten(d, &padded, 10_000);
        assert_eq!(
            tightened.min_rotation_form(),
            base.min_rotation_form(),
            "backtrack must cancel"
        );
    }

    #[test]
    fn canonical_form_separates_slopes() {
        let t = torus_std();
        let d = &t.deco;
        let a = canonical_form(d, &t.slope_code(1, 1).unwrap(), 100_000).unwrap();
        let b = canonical_form(d, &t.slope_code(-1, 1).unwrap(), 100_000).unwrap();
        let c = canonical_form(d, &t.slope_code(0, 1).unwrap(), 100_000).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn trivial_word_reduces_to_empty() {
        let t = torus_std();
        let d = &t.deco;
        let f = 0;
        let side = d.faces[f].sides[2];
        let w = CurveCode::unchecked(vec![twin(side), side]);
        w.validate(d).unwrap();
        let canon = canonical_form(d, &w, 1000).unwrap();
        assert!(canon.is_empty());
    }
}

/// Debug hook: all single-slide neighbors of a word.
pub fn debug_slide_neighbors(deco: &Decomposition, code: &CurveCode) -> Vec<CurveCode> {
    let mut out = Vec::new();
    for mv in slide_moves(deco, code.darts()) {
        let Move::Slide { at, k } = mv else { unreachable!() };
        out.push(CurveCode::unchecked(apply_slide(deco, code.darts(), at, k)));
    }
    out
}
