//! The constants audit: exact arithmetic behind the size margin.
//!
//! The short-curve lemma needs a threshold D with 1/(2 f(1/2)) > log2(D)/D,
//! where f(1/2) = 18 is the logarithmic girth-bound constant at average
//! degree 2.5. The inequality is checked exactly as D^36 < 2^D.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// The frozen constants: f(1/2) = 18, D = 512, epsilon = 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthConstants {
    pub f_half: u64,
    pub d: u64,
    /// epsilon as an exact rational.
    pub epsilon: (u64, u64),
}

impl Default for GirthConstants {
    fn default() -> Self {
        GirthConstants {
            f_half: 18,
            d: 512,
            epsilon: (1, 2),
        }
    }
}

impl GirthConstants {
    /// 1/(2 f) > log2(D)/D, i.e. D^(2f) < 2^D, exactly.
    pub fn threshold_inequality_holds(&self) -> bool {
        d_passes_with_f(self.d, self.f_half)
    }

    pub fn invariants_hold(&self) -> bool {
        self.threshold_inequality_holds() && self.d > 36 && self.d > 4
    }
}

/// Does D satisfy 2f * log2(D) < D (as D^(2f) < 2^D)?
fn d_passes_with_f(d: u64, f: u64) -> bool {
    if d == 0 {
        return false;
    }
    let lhs = BigUint::from(d).pow(2 * f as u32);
    let rhs = BigUint::from(2u32).pow(d as u32);
    lhs < rhs
}

/// Exact audit of the constant choices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsAudit {
    pub f_half: u64,
    /// D = 512 satisfies 1/36 > log2(512)/512 = 9/512.
    pub d512_passes: bool,
    /// D = 256 fails: log2(256)/256 = 8/256 = 1/32 > 1/36.
    pub d256_passes: bool,
    /// Smallest integer D > 36 satisfying the inequality.
    pub minimal_passing_d: u64,
    pub minimal_exceeds_36: bool,
    pub minimal_at_most_512: bool,
}

/// Scan 37..=512 for the minimal passing D and pin the two endpoint checks.
pub fn audit_constants() -> ConstantsAudit {
    let f = 18u64;
    let minimal_passing_d = (37..=512)
        .find(|&d| d_passes_with_f(d, f))
        .expect("512 passes, so the scan terminates");
    ConstantsAudit {
        f_half: f,
        d512_passes: d_passes_with_f(512, f),
        d256_passes: d_passes_with_f(256, f),
        minimal_passing_d,
        minimal_exceeds_36: minimal_passing_d > 36,
        minimal_at_most_512: minimal_passing_d <= 512,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_checks() {
        let audit = audit_constants();
        // 1/36 = 0.0277.. > 9/512 = 0.0175..
        assert!(audit.d512_passes);
        // 1/32 > 1/36, so 256 fails.
        assert!(!audit.d256_passes);
        assert!(audit.minimal_exceeds_36);
        assert!(audit.minimal_at_most_512);
    }

    #[test]
    fn minimal_d_stable_and_consistent() {
        let a = audit_constants();
        let b = audit_constants();
        assert_eq!(a, b);
        // Just below the minimum fails, the minimum passes (monotone region).
        assert!(!d_passes_with_f(a.minimal_passing_d - 1, 18));
        assert!(d_passes_with_f(a.minimal_passing_d, 18));
    }

    #[test]
    fn rational_statement_512() {
        // 1/36 > 9/512 as cross-multiplication: 512 > 324.
        assert!(512u64 * 1 > 9 * 36);
    }

    #[test]
    fn default_constants_invariants() {
        assert!(GirthConstants::default().invariants_hold());
    }
}
