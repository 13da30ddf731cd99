//! Behaviour of disk projections and Hankel Gram forms as the radius varies.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{disk_hankel_gram, DiskFunction};
use crate::error::{Error, Result};

/// `ψ · χ_{D_s}`: a disk function cut off outside the disk of radius `cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffSymbol {
    pub function: DiskFunction,
    pub cutoff: f64,
}

/// Coefficients `C_n` of `P^{D_r}(ψ χ_{D_s}) = Σ C_n z^n`.
pub fn projection_of_cutoff(r: f64, psi: &CutoffSymbol) -> BTreeMap<u32, Complex64> {
    let m = r.min(psi.cutoff);
    let mut out = BTreeMap::new();
    for (a, b, c) in psi.function.terms() {
        if a < b {
            continue;
        }
        let n = a - b;
        let factor = (n + 1) as f64 / (a + 1) as f64 * m.powi(2 * a as i32 + 2) / r.powi(2 * n as i32 + 2);
        *out.entry(n).or_insert(Complex64::new(0.0, 0.0)) += c * factor;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionConvergenceReport {
    pub radii: Vec<f64>,
    /// `‖E_{D_r} P^{D_r} ψ − E_D P^D ψ‖²_{L²(C)}`.
    pub errors_squared: Vec<f64>,
    pub errors: Vec<f64>,
    /// Sampled sup of the difference of projections on `|z| ≤ compact_radius`.
    pub uniform_errors: Vec<f64>,
    pub compact_radius: f64,
    pub decreasing: bool,
    /// Final error below `1e-3` and every successive ratio below one.
    pub converged: bool,
}

const CONVERGED_BELOW: f64 = 1e-3;

/// `‖E_{D_r} P^{D_r} ψ − E_{D_{r0}} P^{D_{r0}} ψ‖²_{L²(C)}` from radial moments.
pub fn projection_error_squared(psi: &CutoffSymbol, r: f64, r0: f64) -> f64 {
    let a = projection_of_cutoff(r, psi);
    let b = projection_of_cutoff(r0, psi);
    let (small, large) = (r.min(r0), r.max(r0));
    let outer = if r >= r0 { &a } else { &b };
    let mut total = 0.0;
    for n in a.keys().chain(b.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
        let ca = a.get(&n).copied().unwrap_or_default();
        let cb = b.get(&n).copied().unwrap_or_default();
        let k = n as f64 + 1.0;
        total += (ca - cb).norm_sqr() * PI * small.powi(2 * n as i32 + 2) / k;
        let annulus = PI * (large.powi(2 * n as i32 + 2) - small.powi(2 * n as i32 + 2)) / k;
        total += outer.get(&n).copied().unwrap_or_default().norm_sqr() * annulus;
    }
    total
}

fn sampled_sup(coeffs: &BTreeMap<u32, Complex64>, radius: f64) -> f64 {
    const RINGS: usize = 32;
    const ANGLES: usize = 128;
    let mut sup: f64 = 0.0;
    for i in 0..=RINGS {
        let rho = radius * i as f64 / RINGS as f64;
        for k in 0..ANGLES {
            let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / ANGLES as f64);
            let v: Complex64 = coeffs.iter().map(|(&n, &c)| c * z.powu(n)).sum();
            sup = sup.max(v.norm());
        }
    }
    sup
}

/// Error of `P^{D_r}` against `P^D` for a cut-off symbol along `radii → 1`.
pub fn projection_convergence_experiment(psi: &CutoffSymbol, radii: &[f64]) -> Result<ProjectionConvergenceReport> {
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidParameter("radii must be a non-empty list of positive reals".into()));
    }
    let compact_radius = 0.5;
    let reference = projection_of_cutoff(1.0, psi);
    let mut errors_squared = Vec::with_capacity(radii.len());
    let mut uniform_errors = Vec::with_capacity(radii.len());
    for &r in radii {
        errors_squared.push(projection_error_squared(psi, r, 1.0));
        let mut diff = projection_of_cutoff(r, psi);
        for (n, c) in &reference {
            *diff.entry(*n).or_insert(Complex64::new(0.0, 0.0)) -= c;
        }
        uniform_errors.push(sampled_sup(&diff, compact_radius));
    }
    let errors: Vec<f64> = errors_squared.iter().map(|e| e.max(0.0).sqrt()).collect();
    let decreasing = errors.windows(2).all(|w| w[1] <= w[0]);
    let ratios_ok = errors.windows(2).all(|w| w[0] == 0.0 || w[1] / w[0] < 1.0);
    let converged = errors.last().is_some_and(|&e| e < CONVERGED_BELOW) && ratios_ok;
    Ok(ProjectionConvergenceReport {
        radii: radii.to_vec(),
        errors_squared,
        errors,
        uniform_errors,
        compact_radius,
        decreasing,
        converged,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GramConvergenceReport {
    pub r0: f64,
    pub radii: Vec<f64>,
    pub values: Vec<Complex64>,
    pub target: Complex64,
    pub errors: Vec<f64>,
    /// `|G(r) − G(r0)| / |r − r0|`, reported without any assertion.
    pub observed_constants: Vec<f64>,
    /// Errors shrink monotonically towards `r0` on that side and end below
    /// `1e-2 · max(1, |G(r0)|)`; `None` when no radius lies on that side.
    pub converged_above: Option<bool>,
    pub converged_below: Option<bool>,
}

const GRAM_CONVERGED_BELOW: f64 = 1e-2;

/// `G(r) = ⟨H_φ f₁, H_ψ f₂⟩_{D_r}` along `radii → r0`.
pub fn gram_convergence_experiment(
    phi: &DiskFunction,
    psi: &DiskFunction,
    f1: &DiskFunction,
    f2: &DiskFunction,
    radii: &[f64],
    r0: f64,
) -> Result<GramConvergenceReport> {
    if !(r0 > 0.0) || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidParameter("radii must be positive".into()));
    }
    let target = disk_hankel_gram(r0, phi, f1, psi, f2)?;
    let values = radii
        .iter()
        .map(|&r| disk_hankel_gram(r, phi, f1, psi, f2))
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = values.iter().map(|v| (v - target).norm()).collect();
    let observed_constants = radii
        .iter()
        .zip(&errors)
        .map(|(r, e)| if *r == r0 { 0.0 } else { e / (r - r0).abs() })
        .collect();
    let tolerance = GRAM_CONVERGED_BELOW * target.norm().max(1.0);
    let side = |above: bool| {
        let mut pts: Vec<(f64, f64)> = radii
            .iter()
            .zip(&errors)
            .filter(|(r, _)| if above { **r > r0 } else { **r < r0 })
            .map(|(r, e)| ((r - r0).abs(), *e))
            .collect();
        if pts.is_empty() {
            return None;
        }
        pts.sort_by(|a, b| b.0.total_cmp(&a.0));
        let monotone = pts.windows(2).all(|w| w[1].1 <= w[0].1);
        Some(monotone && pts.last().is_some_and(|p| p.1 < tolerance))
    };
    let (converged_above, converged_below) = (side(true), side(false));
    Ok(GramConvergenceReport {
        r0,
        radii: radii.to_vec(),
        values,
        target,
        errors,
        observed_constants,
        converged_above,
        converged_below,
    })
}
