use super::{ExperimentReport, Spectrum, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, singular_values};
use crate::moments::MomentTable;
use crate::section::{hankel_product_section, OperatorSection};
use crate::symbol::MonomialSymbol;

/// Ranks whose eigenvalues are tracked across truncations.
const TRACKED_RANKS: [usize; 3] = [5, 10, 20];
const ZERO_SPECTRUM: f64 = 1e-12;

/// Square sections of `H_ψ^* H_φ` with `N_z = N_w = N` for each truncation.
pub fn product_sections(
    table: &MomentTable,
    psi: &MonomialSymbol,
    phi: &MonomialSymbol,
    truncations: &[u32],
) -> Result<Vec<OperatorSection>> {
    truncations
        .iter()
        .map(|&n| hankel_product_section(table, psi, phi, n, n))
        .collect()
}

fn truncation_of(section: &OperatorSection) -> u32 {
    section.columns.n_z().max(section.columns.n_w())
}

/// Spectral signature of nested sections.
///
/// Hermitian sections use their eigenvalues. Other sections (`ψ ≠ φ`) fall
/// back to singular values, which carry the same compactness information.
///
/// With `c(N)` the number of eigenvalues above half the largest one:
/// bounded away from zero when `c` grows strictly and by at least half the
/// growth of `N`; decaying when the spectrum vanishes, or `c` stalls over the
/// second half of the truncations and the tracked eigenvalues fall off with rank at the largest truncation;
/// inconclusive otherwise.
pub fn singular_tail_diagnostic(sections: &[OperatorSection]) -> Result<ExperimentReport> {
    if sections.is_empty() {
        return Err(Error::InvalidParameter("need at least one section".into()));
    }
    if sections.windows(2).any(|w| truncation_of(&w[0]) >= truncation_of(&w[1])) {
        return Err(Error::InvalidParameter("truncations must increase strictly".into()));
    }
    let mut report = ExperimentReport::new("spectra");
    let mut counts = Vec::with_capacity(sections.len());
    let mut used_singular = false;
    for s in sections {
        let eigenvalues = match hermitian_eigenvalues(&s.entries) {
            Ok(ev) => ev,
            Err(Error::NotHermitian { .. }) => {
                used_singular = true;
                singular_values(&s.entries)
            }
            Err(e) => return Err(e),
        };
        let lambda_max = eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        let threshold = 0.5 * lambda_max * (1.0 + 1e-9);
        let count = if lambda_max <= ZERO_SPECTRUM {
            0
        } else {
            eigenvalues.iter().filter(|&&l| l > threshold).count()
        };
        counts.push((truncation_of(s), count, lambda_max));
        report.spectra.push(Spectrum {
            truncation: truncation_of(s),
            dimension: eigenvalues.len(),
            eigenvalues,
        });
    }

    report.push_series("count_above_half_max", counts.iter().map(|&(n, c, _)| (n as f64, c as f64, 0.0)));
    report.push_series("lambda_max", counts.iter().map(|&(n, _, l)| (n as f64, l, 0.0)));
    for k in TRACKED_RANKS {
        let pts: Vec<_> = report
            .spectra
            .iter()
            .filter_map(|sp| sp.eigenvalues.get(k - 1).map(|&l| (sp.truncation as f64, l, 0.0)))
            .collect();
        report.push_series(&format!("rank_{k}"), pts);
    }

    let last = report.spectra.last().expect("non-empty");
    let (n_first, c_first, _) = counts[0];
    let (n_last, c_last, lambda_last) = *counts.last().expect("non-empty");
    let growing = counts.len() >= 2
        && counts.windows(2).all(|w| w[1].1 > w[0].1)
        && (c_last - c_first) as f64 >= 0.5 * (n_last - n_first) as f64;
    // Stalled: no growth over the second half of the truncations.
    let tail = &counts[(counts.len() / 2).min(counts.len().saturating_sub(2))..];
    let flat = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    let falls_off = {
        let ev = &last.eigenvalues;
        ev.len() >= 20 && ev[4] >= ev[9] && ev[9] >= ev[19] && ev[19] < ev[4]
    };
    let verdict = if lambda_last <= ZERO_SPECTRUM {
        Verdict::DecaysToZero
    } else if growing {
        Verdict::BoundedAwayFromZero
    } else if counts.len() >= 2 && flat && falls_off {
        Verdict::DecaysToZero
    } else {
        Verdict::Inconclusive
    };
    report.verdict = Some(verdict);
    report.tolerances.insert("count_threshold_fraction".into(), 0.5);
    report.tolerances.insert("growth_per_truncation".into(), 0.5);
    report.tolerances.insert("zero_spectrum".into(), ZERO_SPECTRUM);
    report.provenance.insert(
        "spectrum".into(),
        if used_singular { "singular_values" } else { "hermitian_eigenvalues" }.into(),
    );
    report.notes.push(
        sections
            .iter()
            .map(|s| s.symbol_meta.clone())
            .next()
            .unwrap_or_default(),
    );
    Ok(report)
}
