//! The test functions `g_j(w) = a_j (w')^{-α_j}` concentrating at a horizontal
//! boundary disk, with `w' = i (w − w₀)` and `w₀ = y_max`.
//!
//! After the translation the base disk `H = {|w| < y_max}` lies in the lower
//! half-plane with the boundary disk at `w' = 0`, and the principal branch of
//! `(w')^{-α}` is holomorphic on it. Around the centre of `H`,
//! `(w')^{-α} = y^{-α} e^{iπα/2} Σ (α)_n/n! (w/y)^n`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::ray::method_name;
use super::{ray_verdict, ExperimentReport};
use crate::disk::{disk_norm, DiskFunction};
use crate::error::{Error, Result};
use crate::moments::MomentTable;
use crate::section::{hankel, inner_product};
use crate::shadow::{detect_boundary_disks, Orientation};
use crate::symbol::MonomialSymbol;

/// Largest admissible `‖g − g_d‖ / ‖g‖` for the degree-`d` Taylor polynomial.
pub const TAYLOR_TAIL_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSequenceOptions {
    pub alphas: Vec<f64>,
    pub taylor_degree: usize,
}

impl Default for PowerSequenceOptions {
    fn default() -> Self {
        Self {
            alphas: default_alpha_schedule(),
            taylor_degree: 4096,
        }
    }
}

/// `α_j = 0.3 (1 − 1/(j+1))`, `j = 1..=10`. The Taylor tail of `(w')^{-α}`
/// decays like `d^{α−1}`, so larger exponents need impractical degrees.
pub fn default_alpha_schedule() -> Vec<f64> {
    (1..=10).map(|j| 0.3 * (1.0 - 1.0 / (j as f64 + 1.0))).collect()
}

/// `∫_{H'} |w'|^{-2α} dV` over the translated base `H' = {|w' + i y| < y}`.
pub fn half_plane_norm(alpha: f64, y: f64) -> f64 {
    let s = 2.0 - 2.0 * alpha;
    (2.0 * y).powf(s) / s * PI.sqrt() * gamma(1.5 - alpha) / gamma(2.0 - alpha)
}

/// `(α)_n / n!` for `n = 0..=degree`.
fn rising_ratios(alpha: f64, degree: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(degree + 1);
    t.push(1.0);
    for n in 1..=degree {
        t.push(t[n - 1] * (alpha + n as f64 - 1.0) / n as f64);
    }
    t
}

/// Frequency offsets `n' − n` for which `⟨U w^n, V w^{n'}⟩` can be non-zero.
fn offsets(u: &MonomialSymbol, v: &MonomialSymbol) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for (_, fu) in u.frequencies() {
        for (_, fv) in v.frequencies() {
            out.insert(fu - fv);
        }
    }
    out
}

/// Non-zero entries of `⟨L_n, R_{n'}⟩ / y^{n+n'}`, which form a band.
struct BandedForm {
    entries: Vec<(usize, usize, Complex64)>,
}

impl BandedForm {
    fn build(
        table: &MomentTable,
        lefts: &[MonomialSymbol],
        rights: &[MonomialSymbol],
        offsets: &BTreeSet<i64>,
        y: f64,
    ) -> Result<Self> {
        let len = lefts.len() as i64;
        let rows: Vec<Vec<(usize, usize, Complex64)>> = (0..lefts.len())
            .into_par_iter()
            .map(|n| {
                let mut row = Vec::new();
                for &s in offsets {
                    let m = n as i64 + s;
                    if !(0..len).contains(&m) {
                        continue;
                    }
                    let m = m as usize;
                    let v = inner_product(table, &lefts[n], &rights[m])? / y.powi((n + m) as i32);
                    if v != Complex64::new(0.0, 0.0) {
                        row.push((n, m, v));
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `Σ t_n t_{n'} entry(n, n')`.
    fn evaluate(&self, t: &[f64]) -> Complex64 {
        self.entries.iter().map(|&(n, m, v)| v * (t[n] * t[m])).sum()
    }
}

/// Functional `⟨H_φ(f₁ g_j), H_ψ(f₂ g_j)⟩_Ω` along an exponent schedule.
///
/// Series indexed by `j`: `alpha`, `a`, `functional`, `normalized_functional`
/// (divided by `‖f₁ g_j‖ ‖f₂ g_j‖`), `base_norm` (`‖g_j‖` on `H`),
/// `taylor_tail`, `weak_null_witness` (`sup |g_j|` at distance `≥ y_max/4`
/// from the disk), and `symbol_decay` (`‖z̄ w' f₁ g_j‖_Ω`).
pub fn power_sequence_functional(
    table: &MomentTable,
    phi: &MonomialSymbol,
    psi: &MonomialSymbol,
    f1: &MonomialSymbol,
    f2: &MonomialSymbol,
    options: &PowerSequenceOptions,
) -> Result<ExperimentReport> {
    let shadow = table.shadow();
    let disk = detect_boundary_disks(shadow)
        .into_iter()
        .find(|d| d.orientation == Orientation::Horizontal)
        .ok_or(Error::NoHorizontalDisk)?;
    super::classify::harmonic_profiles(shadow, phi, psi)?;
    if !f1.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f1" });
    }
    if !f2.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f2" });
    }
    if options.alphas.is_empty() || options.alphas.iter().any(|a| !(0.0..1.0).contains(a)) {
        return Err(Error::InvalidParameter("alphas must lie in [0, 1)".into()));
    }
    let y = disk.base_modulus;
    let d = options.taylor_degree;
    // Moments up to |w|^{2d} must stay representable.
    if (2 * d + 16) as f64 * y.ln().abs() > 600.0 {
        return Err(Error::InvalidParameter(format!(
            "taylor_degree {d} overflows moments for y_max = {y}"
        )));
    }

    // Tail check before any moment work.
    let mut per_alpha = Vec::with_capacity(options.alphas.len());
    for &alpha in &options.alphas {
        let t = rising_ratios(alpha, d);
        let partial: f64 = t.iter().enumerate().map(|(n, tn)| tn * tn / (n as f64 + 1.0)).sum();
        let truncated = PI * y.powf(2.0 - 2.0 * alpha) * partial;
        let full = half_plane_norm(alpha, y);
        let tail = (1.0 - truncated / full).max(0.0).sqrt();
        if tail > TAYLOR_TAIL_LIMIT {
            return Err(Error::TaylorTailTooLarge {
                alpha,
                degree: d,
                tail,
            });
        }
        per_alpha.push((alpha, t, truncated, tail));
    }

    let u = phi * f1;
    let v = psi * f2;
    // φ − φ₀ vanishing on the disk: z̄ · i (w − w₀).
    let i = Complex64::new(0.0, 1.0);
    let chi = &(&MonomialSymbol::zbar() * &MonomialSymbol::w()).scale(i) - &MonomialSymbol::zbar().scale(i * y);
    let chi_f1 = &chi * f1;

    let range = 0..=d as u32;
    let h_u: Vec<MonomialSymbol> = range
        .clone()
        .into_par_iter()
        .map(|n| hankel(table, phi, &f1.shift_w(n)))
        .collect::<Result<_>>()?;
    let h_v: Vec<MonomialSymbol> = range
        .clone()
        .into_par_iter()
        .map(|n| hankel(table, psi, &f2.shift_w(n)))
        .collect::<Result<_>>()?;
    let shifted = |s: &MonomialSymbol| -> Vec<MonomialSymbol> { range.clone().map(|n| s.shift_w(n)).collect() };
    let (f1s, f2s, chis) = (shifted(f1), shifted(f2), shifted(&chi_f1));

    let functional_band = BandedForm::build(table, &h_u, &h_v, &offsets(&u, &v), y)?;
    let f1_band = BandedForm::build(table, &f1s, &f1s, &offsets(f1, f1), y)?;
    let f2_band = BandedForm::build(table, &f2s, &f2s, &offsets(f2, f2), y)?;
    let chi_band = BandedForm::build(table, &chis, &chis, &offsets(&chi_f1, &chi_f1), y)?;

    let delta = y / 4.0;
    let mut rows = Vec::with_capacity(per_alpha.len());
    for (alpha, t, truncated, tail) in &per_alpha {
        let a = 1.0 / truncated.sqrt();
        // g_n conj(g_{n'}) = a² y^{-2α} t_n t_{n'} y^{-n-n'}; the phase cancels.
        let scale = a * a * y.powf(-2.0 * alpha);
        let functional = functional_band.evaluate(t) * scale;
        let n1 = (f1_band.evaluate(t).re * scale).sqrt();
        let n2 = (f2_band.evaluate(t).re * scale).sqrt();
        let normalized = if n1 * n2 > 0.0 { functional / (n1 * n2) } else { Complex64::new(0.0, 0.0) };
        let g = DiskFunction::polynomial(
            &t.iter()
                .enumerate()
                .map(|(n, tn)| Complex64::new(a * y.powf(-alpha) * tn * y.powi(-(n as i32)), 0.0))
                .collect::<Vec<_>>(),
        );
        let base_norm = disk_norm(y, &g);
        let decay = (chi_band.evaluate(t).re * scale).max(0.0).sqrt();
        rows.push((*alpha, a, functional, normalized, base_norm, *tail, a * delta.powf(-alpha), decay));
    }

    let mut report = ExperimentReport::new("power_sequence");
    let rel = table.max_relative_error();
    let idx = |j: usize| (j + 1) as f64;
    macro_rules! series {
        ($name:expr, $f:expr, $err:expr) => {
            report.push_series($name, rows.iter().enumerate().map(|(j, r)| (idx(j), $f(r), $err(r))));
        };
    }
    type Row = (f64, f64, Complex64, Complex64, f64, f64, f64, f64);
    series!("alpha", |r: &Row| r.0, |_: &Row| 0.0);
    series!("a", |r: &Row| r.1, |_: &Row| 0.0);
    series!("functional", |r: &Row| r.2.re, |r: &Row| r.2.norm() * (2.0 * r.5 + 4.0 * rel));
    series!("normalized_functional", |r: &Row| r.3.re, |r: &Row| r.3.norm() * (4.0 * r.5 + 8.0 * rel));
    series!("base_norm", |r: &Row| r.4, |_: &Row| 1e-12);
    series!("taylor_tail", |r: &Row| r.5, |_: &Row| 0.0);
    series!("weak_null_witness", |r: &Row| r.6, |_: &Row| 0.0);
    series!("symbol_decay", |r: &Row| r.7, |r: &Row| r.7 * (2.0 * r.5 + 4.0 * rel));
    let magnitudes: Vec<f64> = rows.iter().map(|r| r.3.norm()).collect();
    report.verdict = Some(ray_verdict(&magnitudes));
    report.record_ray_thresholds();
    report.tolerances.insert("taylor_tail_limit".into(), TAYLOR_TAIL_LIMIT);
    report.scalars.insert("taylor_degree".into(), d as f64);
    report.scalars.insert("base_point".into(), y);
    report.scalars.insert("witness_distance".into(), delta);
    report.notes.push(format!(
        "g_j = a_j (i (w - {y}))^(-alpha_j), principal branch; phi = {phi}; psi = {psi}; f1 = {f1}; f2 = {f2}"
    ));
    report.provenance.insert("moments".into(), method_name(table.method()).into());
    report.provenance.insert("normalization".into(), "closed_form".into());
    Ok(report)
}
