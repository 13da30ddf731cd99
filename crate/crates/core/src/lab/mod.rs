//! Compactness diagnostics for Hankel products on Reinhardt domains: symbol
//! classification on boundary disks, test-sequence functionals, spectral
//! tails, and the combined dichotomy experiment.

mod classify;
mod dichotomy;
mod slices;
mod identity;
mod power_sequence;
mod ray;
mod spectra;

pub use classify::{classify_symbol_on_disks, Classification, DiskSymbolProfile};
pub use dichotomy::{dichotomy_experiment, DichotomyOptions};
pub use slices::{verify_slice_decomposition, SliceDecompositionReport};
pub use identity::{product_identity_experiment, random_product_identity_instances, ProductIdentityInstance};
pub use power_sequence::{
    default_alpha_schedule, half_plane_norm, power_sequence_functional, PowerSequenceOptions, TAYLOR_TAIL_LIMIT,
};
pub use ray::{monomial_ray_functional, RayDirection};
pub use spectra::{product_sections, singular_tail_diagnostic};

use std::collections::BTreeMap;

use serde::Serialize;

/// Relative level below which a functional counts as decayed.
pub const DECAY_THRESHOLD: f64 = 0.05;
/// Relative level above which a functional counts as bounded away from zero.
pub const BOUNDED_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    DecaysToZero,
    BoundedAwayFromZero,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    NonCompact,
    CompactConsistent,
}

impl Prediction {
    pub fn expected_verdict(self) -> Verdict {
        match self {
            Prediction::NonCompact => Verdict::BoundedAwayFromZero,
            Prediction::CompactConsistent => Verdict::DecaysToZero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub index: f64,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub truncation: u32,
    pub dimension: usize,
    pub eigenvalues: Vec<f64>,
}

/// Self-describing result of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub sequences: BTreeMap<String, Vec<SeriesPoint>>,
    pub spectra: Vec<Spectrum>,
    pub scalars: BTreeMap<String, f64>,
    pub verdict: Option<Verdict>,
    pub prediction: Option<Prediction>,
    pub agreement: Option<bool>,
    /// Outcome of experiments with a pass/fail contract.
    pub pass: Option<bool>,
    pub tolerances: BTreeMap<String, f64>,
    /// How each family of numbers was obtained (closed form or quadrature).
    pub provenance: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            sequences: BTreeMap::new(),
            spectra: Vec::new(),
            scalars: BTreeMap::new(),
            verdict: None,
            prediction: None,
            agreement: None,
            pass: None,
            tolerances: BTreeMap::new(),
            provenance: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn push_series<I>(&mut self, name: &str, points: I)
    where
        I: IntoIterator<Item = (f64, f64, f64)>,
    {
        self.sequences.insert(
            name.to_string(),
            points
                .into_iter()
                .map(|(index, value, error_bound)| SeriesPoint {
                    index,
                    value,
                    error_bound,
                })
                .collect(),
        );
    }

    /// Values of a named series, empty if absent.
    pub fn values(&self, name: &str) -> Vec<f64> {
        self.sequences
            .get(name)
            .map(|s| s.iter().map(|p| p.value).collect())
            .unwrap_or_default()
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.get(name).copied()
    }

    pub(crate) fn record_ray_thresholds(&mut self) {
        self.tolerances.insert("decay_threshold".into(), DECAY_THRESHOLD);
        self.tolerances.insert("bounded_threshold".into(), BOUNDED_THRESHOLD);
        self.tolerances.insert("window_fraction".into(), 0.25);
    }
}

/// Verdict on a sequence from its last quarter: decayed when every `|v|` there
/// is below `0.05 · max |v|`, bounded away when every one is above `0.5 · max |v|`.
pub fn ray_verdict(magnitudes: &[f64]) -> Verdict {
    if magnitudes.is_empty() {
        return Verdict::Inconclusive;
    }
    let max = magnitudes.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Verdict::DecaysToZero;
    }
    let start = magnitudes.len() - magnitudes.len().div_ceil(4);
    let tail = &magnitudes[start..];
    if tail.iter().all(|&v| v < DECAY_THRESHOLD * max) {
        Verdict::DecaysToZero
    } else if tail.iter().all(|&v| v > BOUNDED_THRESHOLD * max) {
        Verdict::BoundedAwayFromZero
    } else {
        Verdict::Inconclusive
    }
}

/// Joint verdict of independent diagnostics: they must all agree.
pub fn combine_verdicts(verdicts: &[Verdict]) -> Verdict {
    match verdicts.split_first() {
        Some((first, rest)) if rest.iter().all(|v| v == first) => *first,
        _ => Verdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_verdict_rules() {
        assert_eq!(ray_verdict(&[0.5; 16]), Verdict::BoundedAwayFromZero);
        assert_eq!(ray_verdict(&[0.0; 16]), Verdict::DecaysToZero);
        let harmonic: Vec<f64> = (0..=256).map(|m| 1.0 / (m as f64 + 3.0)).collect();
        assert_eq!(ray_verdict(&harmonic), Verdict::DecaysToZero);
        let short: Vec<f64> = (0..=40).map(|m| 1.0 / (m as f64 + 3.0)).collect();
        assert_eq!(ray_verdict(&short), Verdict::Inconclusive);
        assert_eq!(ray_verdict(&[]), Verdict::Inconclusive);
    }

    #[test]
    fn combined_verdicts_must_agree() {
        use Verdict::*;
        assert_eq!(combine_verdicts(&[DecaysToZero, DecaysToZero]), DecaysToZero);
        assert_eq!(combine_verdicts(&[DecaysToZero, BoundedAwayFromZero]), Inconclusive);
        assert_eq!(combine_verdicts(&[]), Inconclusive);
    }
}
