//! Certified polynomial approximation on a disk by dilation and Taylor truncation.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::{radial_moment, DiskFunction};
use crate::error::{Error, Result};

const MAX_DILATION_STEPS: u32 = 52;
const MAX_TERMS: usize = 1 << 22;

type Coefficients = Arc<dyn Fn(usize) -> Complex64 + Send + Sync>;

/// Holomorphic power series `Σ c_n z^n` with a bound on its coefficients.
#[derive(Clone)]
pub enum PowerSeries {
    Polynomial(Vec<Complex64>),
    /// `|c_n| ≤ m · q^n` for every `n`.
    Geometric { coefficients: Coefficients, m: f64, q: f64 },
    /// Coefficients without any usable bound.
    Unbounded { coefficients: Coefficients },
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerSeries::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            PowerSeries::Geometric { m, q, .. } => {
                f.debug_struct("Geometric").field("m", m).field("q", q).finish_non_exhaustive()
            }
            PowerSeries::Unbounded { .. } => f.write_str("Unbounded"),
        }
    }
}

impl PowerSeries {
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        PowerSeries::Polynomial(coeffs)
    }

    pub fn geometric<F>(coefficients: F, m: f64, q: f64) -> Self
    where
        F: Fn(usize) -> Complex64 + Send + Sync + 'static,
    {
        PowerSeries::Geometric {
            coefficients: Arc::new(coefficients),
            m,
            q,
        }
    }

    pub fn unbounded<F>(coefficients: F) -> Self
    where
        F: Fn(usize) -> Complex64 + Send + Sync + 'static,
    {
        PowerSeries::Unbounded {
            coefficients: Arc::new(coefficients),
        }
    }

    /// `1 / (a − z) = Σ a^{-(n+1)} z^n`.
    pub fn reciprocal_linear(a: Complex64) -> Self {
        let inv = 1.0 / a;
        let m = inv.norm();
        Self::geometric(move |n| inv.powu(n as u32 + 1), m, m)
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        match self {
            PowerSeries::Polynomial(c) => c.get(n).copied().unwrap_or_default(),
            PowerSeries::Geometric { coefficients, .. } | PowerSeries::Unbounded { coefficients } => {
                coefficients(n)
            }
        }
    }
}

/// Output of [`approximate_by_polynomial`].
#[derive(Debug, Clone, Serialize)]
pub struct PolynomialApproximation {
    /// Coefficients of `h(z) = Σ_{n ≤ degree} c_n ρ^n z^n`.
    pub coefficients: Vec<Complex64>,
    pub rho: f64,
    pub degree: usize,
    /// Upper bound for `‖f − f_ρ‖`.
    pub dilation_bound: f64,
    /// Upper bound for `‖f_ρ − h‖`.
    pub truncation_bound: f64,
    pub certified_bound: f64,
}

impl PolynomialApproximation {
    pub fn polynomial(&self) -> DiskFunction {
        DiskFunction::polynomial(&self.coefficients)
    }
}

/// Holomorphic polynomial `h` with `‖f − h‖_{L²(D_r)} < ε`, obtained from the
/// dilation `f_ρ(z) = f(ρz)`, `ρ = 1 − 2^{-k}`, followed by Taylor truncation.
pub fn approximate_by_polynomial(f: &PowerSeries, epsilon: f64, r: f64) -> Result<PolynomialApproximation> {
    if !(epsilon > 0.0) || !(r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need epsilon > 0 and r > 0, got epsilon = {epsilon}, r = {r}"
        )));
    }
    let (coefficients, m, q) = match f {
        PowerSeries::Polynomial(c) => {
            let mut coefficients = c.clone();
            while coefficients.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
                coefficients.pop();
            }
            return Ok(PolynomialApproximation {
                degree: coefficients.len().saturating_sub(1),
                coefficients,
                rho: 1.0,
                dilation_bound: 0.0,
                truncation_bound: 0.0,
                certified_bound: 0.0,
            });
        }
        PowerSeries::Unbounded { .. } => {
            return Err(Error::TailBoundUnavailable("no coefficient bound supplied".into()));
        }
        PowerSeries::Geometric { coefficients, m, q } => (coefficients, *m, *q),
    };
    if !(q * r < 1.0) {
        return Err(Error::TailBoundUnavailable(format!(
            "coefficient ratio {q} does not converge on the disk of radius {r}"
        )));
    }
    let tail_target = (epsilon / 64.0).powi(2);
    // The coefficient tail past K is bounded by the geometric majorant.
    let tail = |qr: f64, k: usize| {
        m * m * PI * r * r * qr.powi(2 * (k as i32 + 1)) / ((k as f64 + 2.0) * (1.0 - qr * qr))
    };
    let mut k_cut = 0;
    while tail(q * r, k_cut) > tail_target {
        k_cut += 1;
        if k_cut > MAX_TERMS {
            return Err(Error::TailBoundUnavailable(format!(
                "more than {MAX_TERMS} terms needed for the geometric tail"
            )));
        }
    }
    let c: Vec<Complex64> = (0..=k_cut).map(|n| coefficients(n)).collect();
    let weight = |n: usize| radial_moment(r, n as u32);

    for step in 1..=MAX_DILATION_STEPS {
        let rho = 1.0 - 0.5f64.powi(step as i32);
        let head: f64 = c
            .iter()
            .enumerate()
            .map(|(n, cn)| cn.norm_sqr() * (1.0 - rho.powi(n as i32)).powi(2) * weight(n))
            .sum();
        let dilation_bound = (head + tail(q * r, k_cut)).sqrt();
        if dilation_bound >= 0.5 * epsilon {
            continue;
        }
        // Truncation of f_ρ: exact terms up to k_cut plus the dilated tail.
        let rho_tail = tail(q * rho * r, k_cut);
        let dilated = |n: usize| c[n].norm_sqr() * rho.powi(2 * n as i32) * weight(n);
        let goal = (0.25 * dilation_bound).max(epsilon / 64.0);
        let mut remaining: f64 = (1..=k_cut).map(dilated).sum::<f64>() + rho_tail;
        let mut degree = 0;
        while remaining.max(0.0).sqrt() > goal && degree < k_cut {
            degree += 1;
            remaining -= dilated(degree);
        }
        let truncation_bound = remaining.max(0.0).sqrt();
        let coefficients: Vec<Complex64> = c[..=degree]
            .iter()
            .enumerate()
            .map(|(n, cn)| cn * rho.powi(n as i32))
            .collect();
        return Ok(PolynomialApproximation {
            coefficients,
            rho,
            degree,
            dilation_bound,
            truncation_bound,
            certified_bound: dilation_bound + truncation_bound,
        });
    }
    Err(Error::TailBoundUnavailable(format!(
        "dilation did not reach epsilon = {epsilon} within {MAX_DILATION_STEPS} steps"
    )))
}
