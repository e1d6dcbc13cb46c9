//! Algorithm-selection thresholds.
//!
//! Defaults were measured once on a desktop x86-64 machine; they are
//! machine-specific and can be overridden from a TOML file (see
//! `tuning.toml` at the crate root for the shipped values).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tuning {
    /// Below this length (of the shorter operand) polynomials are multiplied naively.
    pub karatsuba_threshold: usize,
    /// From this output length on, transform-based multiplication is used.
    pub ntt_threshold: usize,
    /// Polynomial matrices whose product degree is below this use the entrywise product.
    pub pm_eval_threshold: usize,
    /// Above this prime size (bits) the Vandermonde strategy is never chosen.
    pub small_prime_bits: u32,
    /// Base-case order of the divide-and-conquer approximant/interpolant algorithms.
    pub pmbasis_threshold: usize,
    /// Largest dimension handled by expansion by minors in the dispatcher.
    pub det_minors_max: usize,
    /// Largest dimension handled by evaluation/interpolation in the dispatcher.
    pub det_eval_max: usize,
    /// Hard cap for expansion by minors.
    pub det_minors_cap: usize,
}

impl Default for Tuning {
    fn default() -> Self {
        Tuning {
            karatsuba_threshold: 32,
            ntt_threshold: 128,
            pm_eval_threshold: 8,
            small_prime_bits: 23,
            pmbasis_threshold: 32,
            det_minors_max: 6,
            det_eval_max: 20,
            det_minors_cap: 8,
        }
    }
}

impl Tuning {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("tuning serializes")
    }
}

static TUNING: OnceLock<Tuning> = OnceLock::new();

/// The process-wide thresholds; defaults unless [`set_tuning`] ran first.
pub fn tuning() -> &'static Tuning {
    TUNING.get_or_init(Tuning::default)
}

/// Installs thresholds for the rest of the process. Fails if they were
/// already read or set.
pub fn set_tuning(t: Tuning) -> Result<()> {
    TUNING.set(t).map_err(|_| Error::BadParams("tuning already initialized".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_matches_defaults() {
        let text = include_str!("../tuning.toml");
        assert_eq!(Tuning::from_toml(text).unwrap(), Tuning::default());
    }

    #[test]
    fn partial_override() {
        let t = Tuning::from_toml("pmbasis_threshold = 8").unwrap();
        assert_eq!(t.pmbasis_threshold, 8);
        assert_eq!(t.det_minors_cap, 8);
    }
}
