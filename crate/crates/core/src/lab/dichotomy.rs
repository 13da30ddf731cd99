use super::classify::{harmonic_profiles, Classification};
use super::ray::{method_name, monomial_ray_functional, RayDirection};
use super::spectra::{product_sections, singular_tail_diagnostic};
use super::{combine_verdicts, ExperimentReport, Prediction, Verdict};
use crate::error::Result;
use crate::moments::MomentTable;
use crate::shadow::Orientation;
use crate::symbol::MonomialSymbol;

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyOptions {
    pub m_max: u32,
    pub truncations: Vec<u32>,
    pub f1: MonomialSymbol,
    pub f2: MonomialSymbol,
}

impl Default for DichotomyOptions {
    fn default() -> Self {
        Self {
            m_max: 256,
            truncations: vec![4, 8, 12, 16],
            f1: MonomialSymbol::constant(1.0),
            f2: MonomialSymbol::constant(1.0),
        }
    }
}

/// Predicts compactness of `H_ψ^* H_φ` from the boundary disks and compares it
/// with the ray functional and the spectral tail.
///
/// The prediction is non-compact when some disk carries two non-holomorphic
/// restrictions. The ray runs along that disk's free variable, or along both
/// variables when no such disk exists. The diagnostics must agree for a
/// definite verdict.
pub fn dichotomy_experiment(
    table: &MomentTable,
    phi: &MonomialSymbol,
    psi: &MonomialSymbol,
    options: &DichotomyOptions,
) -> Result<ExperimentReport> {
    let (on_phi, on_psi) = harmonic_profiles(table.shadow(), phi, psi)?;
    let offending = on_phi
        .iter()
        .zip(&on_psi)
        .find(|(a, b)| {
            a.classification == Classification::NonHolomorphic && b.classification == Classification::NonHolomorphic
        })
        .map(|(a, _)| a.disk);
    let prediction = if offending.is_some() {
        Prediction::NonCompact
    } else {
        Prediction::CompactConsistent
    };
    let directions = match offending.map(|d| d.orientation) {
        Some(Orientation::Horizontal) => vec![RayDirection::W],
        Some(Orientation::Vertical) => vec![RayDirection::Z],
        None => vec![RayDirection::W, RayDirection::Z],
    };

    let mut report = ExperimentReport::new("dichotomy");
    let mut ray_verdicts = Vec::new();
    for dir in directions {
        let ray = monomial_ray_functional(table, phi, psi, &options.f1, &options.f2, options.m_max, dir)?;
        let v = ray.verdict.unwrap_or(Verdict::Inconclusive);
        ray_verdicts.push(v);
        for (name, series) in ray.sequences {
            report.sequences.insert(format!("ray_{}_{name}", dir.name()), series);
        }
        report.notes.push(format!("ray along {}: {v:?}", dir.name()));
    }
    let ray_verdict = if ray_verdicts.contains(&Verdict::BoundedAwayFromZero) {
        Verdict::BoundedAwayFromZero
    } else {
        combine_verdicts(&ray_verdicts)
    };

    let sections = product_sections(table, psi, phi, &options.truncations)?;
    let spectral = singular_tail_diagnostic(&sections)?;
    let spectral_verdict = spectral.verdict.unwrap_or(Verdict::Inconclusive);
    report.spectra = spectral.spectra;
    for (name, series) in spectral.sequences {
        report.sequences.insert(format!("spectral_{name}"), series);
    }
    report.tolerances.extend(spectral.tolerances);
    report.notes.push(format!("spectral tail: {spectral_verdict:?}"));

    for (p, q) in on_phi.iter().zip(&on_psi) {
        report.notes.push(format!(
            "{} disk, base {}, radius {}: phi {:?}, psi {:?}",
            p.disk.orientation.name(),
            p.disk.base_modulus,
            p.disk.radius,
            p.classification,
            q.classification
        ));
    }
    if on_phi.is_empty() {
        report.notes.push("no boundary disks".into());
    }
    let verdict = combine_verdicts(&[ray_verdict, spectral_verdict]);
    report.verdict = Some(verdict);
    report.prediction = Some(prediction);
    report.agreement = Some(verdict == prediction.expected_verdict());
    report.record_ray_thresholds();
    report.scalars.insert("m_max".into(), options.m_max as f64);
    report.provenance.insert("moments".into(), method_name(table.method()).into());
    report.notes.push(format!("phi = {phi}; psi = {psi}; f1 = {}; f2 = {}", options.f1, options.f2));
    Ok(report)
}
