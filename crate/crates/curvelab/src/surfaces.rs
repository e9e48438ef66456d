//! Surface bookkeeping: types `(g, p)`, Euler characteristics, complexity,
//! and structural summaries of surfaces cut along curve systems.

use crate::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A connected orientable surface of finite type, identified by its genus
/// and number of punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceType {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceType {
    pub fn new(genus: u32, punctures: u32) -> Self {
        SurfaceType { genus, punctures }
    }

    /// 2 - 2g - p.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// 3g + p - 3, the maximal number of disjoint non-isotopic essential
    /// curves. Not defined for the torus (1, 0).
    pub fn complexity(&self) -> Option<i64> {
        if (self.genus, self.punctures) == (1, 0) {
            None
        } else {
            Some(3 * self.genus as i64 + self.punctures as i64 - 3)
        }
    }

    /// Parse the text form "g<genus>p<punctures>", e.g. "g2p0".
    pub fn parse(spec: &str) -> Result<Self> {
        let rest = spec
            .strip_prefix('g')
            .ok_or_else(|| invalid(format!("surface spec '{spec}' must look like g<n>p<m>")))?;
        let (g, p) = rest
            .split_once('p')
            .ok_or_else(|| invalid(format!("surface spec '{spec}' must look like g<n>p<m>")))?;
        let genus = g
            .parse::<u32>()
            .map_err(|_| invalid(format!("bad genus in surface spec '{spec}'")))?;
        let punctures = p
            .parse::<u32>()
            .map_err(|_| invalid(format!("bad puncture count in surface spec '{spec}'")))?;
        Ok(SurfaceType { genus, punctures })
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}p{}", self.genus, self.punctures)
    }
}

/// One connected component of a surface cut along a curve system.
///
/// Punctures of the original surface stay punctures; each cut locus
/// contributes boundary circles. `boundary_labels[i]` names the curve of the
/// ambient surface that boundary circle `i` is a copy of, and
/// `boundary_classes[i]` is that curve's class in a fixed `H_1(S; Z/2)` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub genus: u32,
    pub boundary: u32,
    pub punctures: u32,
    pub boundary_labels: Vec<String>,
    pub boundary_classes: Vec<Vec<u8>>,
}

impl CutComponent {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64 - self.punctures as i64
    }

    /// A sphere with boundary+puncture count three: either a pair of pants
    /// or a once/twice-punctured annulus or thrice-punctured sphere piece.
    pub fn is_three_holed_sphere(&self) -> bool {
        self.genus == 0 && self.boundary + self.punctures == 3
    }

    /// Whether the component carries a curve that is non-separating in the
    /// ambient surface. True when the component has positive genus, or when
    /// two of its boundary circles have mod-2 classes summing to a class that
    /// is neither zero nor the class of a single boundary circle already on
    /// this side (a curve enclosing that pair is then non-separating in S and
    /// not parallel to a cut curve).
    pub fn contains_nonseparating_curve(&self) -> bool {
        if self.genus > 0 {
            return true;
        }
        let n = self.boundary_classes.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let sum = xor_class(&self.boundary_classes[i], &self.boundary_classes[j]);
                if !sum.iter().all(|&b| b == 0) && self.boundary_labels[i] != self.boundary_labels[j]
                {
                    return true;
                }
            }
        }
        false
    }
}

fn xor_class(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) ^ b.get(i).copied().unwrap_or(0))
        .collect()
}

/// The result of cutting a surface along a curve system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsurfaceSummary {
    pub ambient: SurfaceType,
    pub cut_curves: u32,
    pub components: Vec<CutComponent>,
}

impl SubsurfaceSummary {
    /// Check that the component Euler characteristics re-glue to the ambient
    /// characteristic: each cut curve is counted once on each side, and
    /// re-gluing adds zero (a circle has Euler characteristic zero), so the
    /// sum of the pieces must equal chi(S).
    pub fn euler_count_closes(&self) -> bool {
        let total: i64 = self
            .components
            .iter()
            .map(|c| c.euler_characteristic())
            .sum();
        total == self.ambient.euler_characteristic()
    }

    pub fn is_jointly_separating(&self) -> bool {
        self.components.len() > 1
    }
}

/// Outcome of checking a surface against the size hypothesis and the
/// exceptional-case list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub surface: SurfaceType,
    pub k: u64,
    pub abs_euler: u64,
    pub required: u64,
    /// |chi(S)| >= k + 512.
    pub size_hypothesis: bool,
    /// (g,p) in {(1,1), (1,2), (1,3), (0,4), (0,5), (2,0)}.
    pub exceptional_case: Option<String>,
}

/// The margin added to k in the size hypothesis |chi(S)| >= k + 512.
pub const SIZE_MARGIN: u64 = 512;

/// Check |chi(S)| >= k + 512 and flag the exceptional low-complexity cases.
pub fn hypothesis_check(s: SurfaceType, k: u64) -> Result<HypothesisReport> {
    if k == 0 {
        return Err(invalid("k must be a positive integer"));
    }
    let abs_euler = s.euler_characteristic().unsigned_abs();
    let required = k + SIZE_MARGIN;
    let exceptional_case = match (s.genus, s.punctures) {
        (2, 0) => Some("(2,0): automorphisms surject with Z/2Z kernel (hyperelliptic involution)".into()),
        (1, 1) | (0, 4) => Some(format!(
            "({},{}): Farey-graph case, handled separately",
            s.genus, s.punctures
        )),
        (1, 2) | (1, 3) | (0, 5) => Some(format!(
            "({},{}): excluded low-complexity case",
            s.genus, s.punctures
        )),
        _ => None,
    };
    Ok(HypothesisReport {
        surface: s,
        k,
        abs_euler,
        required,
        size_hypothesis: abs_euler >= required,
        exceptional_case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(SurfaceType::new(2, 0).euler_characteristic(), -2);
        assert_eq!(SurfaceType::new(0, 3).euler_characteristic(), -1);
        assert_eq!(SurfaceType::new(1, 1).euler_characteristic(), -1);
    }

    #[test]
    fn complexity_values() {
        assert_eq!(SurfaceType::new(1, 0).complexity(), None);
        assert_eq!(SurfaceType::new(2, 0).complexity(), Some(3));
        assert_eq!(SurfaceType::new(0, 4).complexity(), Some(1));
    }

    #[test]
    fn parse_round_trip() {
        let s = SurfaceType::parse("g2p0").unwrap();
        assert_eq!(s, SurfaceType::new(2, 0));
        assert_eq!(s.to_string(), "g2p0");
        assert!(SurfaceType::parse("2p0").is_err());
        assert!(SurfaceType::parse("g2").is_err());
        assert!(SurfaceType::parse("gxp1").is_err());
    }

    #[test]
    fn hypothesis_satisfied_for_large_genus() {
        let r = hypothesis_check(SurfaceType::new(300, 0), 16).unwrap();
        assert_eq!(r.abs_euler, 598);
        assert_eq!(r.required, 528);
        assert!(r.size_hypothesis);
        assert!(r.exceptional_case.is_none());
    }

    #[test]
    fn hypothesis_exceptional_cases() {
        let r = hypothesis_check(SurfaceType::new(2, 0), 1).unwrap();
        assert!(!r.size_hypothesis);
        assert!(r.exceptional_case.as_deref().unwrap().contains("(2,0)"));

        let r = hypothesis_check(SurfaceType::new(1, 2), 1).unwrap();
        assert!(r.exceptional_case.as_deref().unwrap().contains("excluded"));
    }

    #[test]
    fn hypothesis_rejects_zero_k() {
        assert!(hypothesis_check(SurfaceType::new(2, 0), 0).is_err());
    }

    #[test]
    fn hypothesis_monotone_in_genus() {
        // Increasing genus never turns satisfied into unsatisfied.
        for k in [1u64, 16, 100] {
            let mut satisfied = false;
            for g in 0..400 {
                let r = hypothesis_check(SurfaceType::new(g, 0), k).unwrap();
                if satisfied {
                    assert!(r.size_hypothesis, "monotonicity broken at g={g} k={k}");
                }
                satisfied = r.size_hypothesis;
            }
        }
    }

    #[test]
    fn cut_component_predicates() {
        let pants = CutComponent {
            genus: 0,
            boundary: 2,
            punctures: 1,
            boundary_labels: vec!["u".into(), "u".into()],
            boundary_classes: vec![vec![1, 0], vec![1, 0]],
        };
        assert!(pants.is_three_holed_sphere());
        // Both boundary circles are copies of the same curve: no new
        // non-separating curve inside.
        assert!(!pants.contains_nonseparating_curve());

        let mixed = CutComponent {
            genus: 0,
            boundary: 4,
            punctures: 0,
            boundary_labels: vec!["u".into(), "u".into(), "v".into(), "v".into()],
            boundary_classes: vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        };
        // A curve around one u-copy and one v-copy has class [u]+[v] != 0.
        assert!(mixed.contains_nonseparating_curve());

        let torus_side = CutComponent {
            genus: 1,
            boundary: 2,
            punctures: 0,
            boundary_labels: vec!["u".into(), "v".into()],
            boundary_classes: vec![vec![1], vec![1]],
        };
        assert!(torus_side.contains_nonseparating_curve());
    }

    #[test]
    fn euler_additivity_under_cutting() {
        // Genus 2 cut along one non-separating curve: one component of genus
        // 1 with two boundary circles.
        let summary = SubsurfaceSummary {
            ambient: SurfaceType::new(2, 0),
            cut_curves: 1,
            components: vec![CutComponent {
                genus: 1,
                boundary: 2,
                punctures: 0,
                boundary_labels: vec!["u".into(), "u".into()],
                boundary_classes: vec![vec![1], vec![1]],
            }],
        };
        assert!(summary.euler_count_closes());
        assert!(!summary.is_jointly_separating());

        // Genus 3 cut along a jointly separating disjoint pair.
        let summary = SubsurfaceSummary {
            ambient: SurfaceType::new(3, 0),
            cut_curves: 2,
            components: vec![
                CutComponent {
                    genus: 1,
                    boundary: 2,
                    punctures: 0,
                    boundary_labels: vec!["u".into(), "v".into()],
                    boundary_classes: vec![vec![1], vec![1]],
                },
                CutComponent {
                    genus: 1,
                    boundary: 2,
                    punctures: 0,
                    boundary_labels: vec!["u".into(), "v".into()],
                    boundary_classes: vec![vec![1], vec![1]],
                },
            ],
        };
        assert!(summary.euler_count_closes());
        assert!(summary.is_jointly_separating());

        // A bad summary does not close.
        let bad = SubsurfaceSummary {
            ambient: SurfaceType::new(3, 0),
            cut_curves: 2,
            components: vec![CutComponent {
                genus: 1,
                boundary: 2,
                punctures: 0,
                boundary_labels: vec!["u".into(), "v".into()],
                boundary_classes: vec![vec![1], vec![1]],
            }],
        };
        assert!(!bad.euler_count_closes());
    }
}
