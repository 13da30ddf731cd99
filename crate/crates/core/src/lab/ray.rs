use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classify::harmonic_profiles;
use super::{ray_verdict, ExperimentReport};
use crate::error::{Error, Result};
use crate::moments::{MomentMethod, MomentTable};
use crate::section::{inner_product, project};
use crate::symbol::MonomialSymbol;

/// Variable carrying the weakly null monomials `h_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RayDirection {
    /// `h_m = w^m / ‖w^m‖`, probing horizontal boundary disks.
    W,
    /// `h_m = z^m / ‖z^m‖`, probing vertical boundary disks.
    Z,
}

impl RayDirection {
    pub fn name(self) -> &'static str {
        match self {
            RayDirection::W => "w",
            RayDirection::Z => "z",
        }
    }
}

/// `v_m = ⟨H_φ(f₁ h_m), H_ψ(f₂ h_m)⟩` for `m = 0..=m_max`.
///
/// Series: `functional` (real part), `functional_imag`, and `magnitude`, which
/// carries the verdict.
pub fn monomial_ray_functional(
    table: &MomentTable,
    phi: &MonomialSymbol,
    psi: &MonomialSymbol,
    f1: &MonomialSymbol,
    f2: &MonomialSymbol,
    m_max: u32,
    direction: RayDirection,
) -> Result<ExperimentReport> {
    if m_max < 8 {
        return Err(Error::InvalidParameter(format!("m_max must be at least 8, got {m_max}")));
    }
    if !f1.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f1" });
    }
    if !f2.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f2" });
    }
    harmonic_profiles(table.shadow(), phi, psi)?;
    let u = phi * f1;
    let v = psi * f2;
    let parts: Vec<(Complex64, f64)> = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            let (shifted_u, shifted_v, norm_sq) = match direction {
                RayDirection::W => (u.shift_w(m), v.shift_w(m), table.moment(0, 2 * m)?),
                RayDirection::Z => (u.shift_z(m), v.shift_z(m), table.moment(2 * m, 0)?),
            };
            // ⟨u − Pu, v − Pv⟩ = ⟨u, v⟩ − ⟨Pu, Pv⟩
            let whole = inner_product(table, &shifted_u, &shifted_v)?;
            let held = inner_product(table, &project(table, &shifted_u)?, &project(table, &shifted_v)?)?;
            Ok(((whole - held) / norm_sq, (whole.norm() + held.norm()) / norm_sq))
        })
        .collect::<Result<_>>()?;
    // Each moment carries a relative error; a value built from a handful of
    // them inherits a small multiple of the worst one.
    let rel = table.max_relative_error();
    let bound = |scale: f64| 4.0 * rel * scale + 4.0 * f64::EPSILON * scale;

    let mut report = ExperimentReport::new("ray");
    report.push_series(
        "functional",
        parts.iter().enumerate().map(|(m, (v, s))| (m as f64, v.re, bound(*s))),
    );
    report.push_series(
        "functional_imag",
        parts.iter().enumerate().map(|(m, (v, s))| (m as f64, v.im, bound(*s))),
    );
    report.push_series(
        "magnitude",
        parts.iter().enumerate().map(|(m, (v, s))| (m as f64, v.norm(), bound(*s))),
    );
    let magnitudes: Vec<f64> = parts.iter().map(|(v, _)| v.norm()).collect();
    report.verdict = Some(ray_verdict(&magnitudes));
    report.record_ray_thresholds();
    report.scalars.insert("m_max".into(), m_max as f64);
    report.scalars.insert("max_relative_moment_error".into(), rel);
    report.notes.push(format!(
        "phi = {phi}; psi = {psi}; f1 = {f1}; f2 = {f2}; h_m = {}^m / ||{}^m||",
        direction.name(),
        direction.name()
    ));
    report.provenance.insert("moments".into(), method_name(table.method()).into());
    Ok(report)
}

pub(crate) fn method_name(m: MomentMethod) -> &'static str {
    match m {
        MomentMethod::ClosedForm => "closed_form",
        MomentMethod::Quadrature => "quadrature",
    }
}
