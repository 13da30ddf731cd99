//! Dispatch from a configuration to the library experiments.

use bergman_core::disk::{
    approximate_by_polynomial, gram_convergence_experiment, projection_convergence_experiment, CutoffSymbol,
    DiskFunction, PowerSeries,
};
use bergman_core::lab::{
    dichotomy_experiment, product_identity_experiment, monomial_ray_functional, power_sequence_functional,
    product_sections, singular_tail_diagnostic, verify_slice_decomposition, DichotomyOptions, ExperimentReport, PowerSequenceOptions,
    RayDirection, Verdict,
};
use bergman_core::shadow::verify_slice_limit;
use bergman_core::{build_shadow, Complex64, MomentMethod, MomentTable, MonomialSymbol};

use crate::config::{ExperimentConfig, ExperimentKind, SeriesDef};
use crate::CliError;

pub const DEFAULT_TRUNCATIONS: [u32; 4] = [4, 8, 12, 16];
pub const DEFAULT_M_MAX: u32 = 256;
pub const DEFAULT_RADII: [f64; 6] = [1.1, 1.05, 1.01, 1.005, 1.001, 1.0005];
pub const DEFAULT_IDENTITY_COUNT: usize = 50;
pub const DEFAULT_SEED: u64 = 20_240_501;

/// Disk experiments take symbols in `z` alone.
fn to_disk(name: &str, s: &MonomialSymbol) -> Result<DiskFunction, CliError> {
    if s.terms().any(|([_, _, c, d], _)| c != 0 || d != 0) {
        return Err(CliError::Config(format!("symbols.{name} = {s} must not involve w")));
    }
    Ok(DiskFunction::from_terms(s.terms().map(|([a, b, _, _], k)| (k, a, b))))
}

fn moment_table(cfg: &ExperimentConfig) -> Result<MomentTable, CliError> {
    let shadow = build_shadow(&cfg.domain.resolve()?)?;
    let mut table = match cfg.parameters.moments {
        Some(m) => MomentTable::with_method(shadow, m),
        None => MomentTable::new(shadow),
    };
    if let Some(tol) = cfg.parameters.tol {
        table = table.with_tolerance(tol);
    }
    Ok(table)
}

/// Runs the configured experiment.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, CliError> {
    let p = &cfg.parameters;
    let truncations = p.truncations.clone().unwrap_or_else(|| DEFAULT_TRUNCATIONS.to_vec());
    let radii = p.radii.clone().unwrap_or_else(|| DEFAULT_RADII.to_vec());
    let mut report = match cfg.experiment {
        ExperimentKind::ProductIdentity => product_identity_experiment(
            &moment_table(cfg)?,
            p.count.unwrap_or(DEFAULT_IDENTITY_COUNT),
            p.seed.unwrap_or(DEFAULT_SEED),
        )?,
        ExperimentKind::SliceLimit => {
            let shadow = build_shadow(&cfg.domain.resolve()?)?;
            let y0 = p.y0.unwrap_or(shadow.y_max());
            let approach = match &p.approach {
                Some(a) => a.clone(),
                None => (1..=12).map(|k| y0 - y0 * 0.5f64.powi(k)).collect(),
            };
            let r = verify_slice_limit(&shadow, y0, &approach)?;
            let mut rep = ExperimentReport::new("slice_limit");
            rep.push_series("slice_radius", r.approach.iter().zip(&r.radii).map(|(&y, &x)| (y, x, 0.0)));
            rep.push_series("error", r.approach.iter().zip(&r.errors).map(|(&y, &e)| (y, e, 0.0)));
            rep.scalars.insert("y0".into(), r.y0);
            rep.scalars.insert("target".into(), r.target);
            rep.scalars.insert("limit_estimate".into(), r.limit_estimate);
            if let Some(rate) = r.observed_rate {
                rep.scalars.insert("observed_rate".into(), rate);
            }
            rep.pass = Some(r.pass);
            rep.notes.push(format!("radii dominate the limit: {}", r.radii_dominate_limit));
            rep
        }
        ExperimentKind::ProjectionConvergence => {
            let psi = CutoffSymbol {
                function: to_disk("psi", &cfg.symbol("psi", Some("z"))?)?,
                cutoff: p.cutoff.unwrap_or(1.0),
            };
            let r = projection_convergence_experiment(&psi, &radii)?;
            let mut rep = ExperimentReport::new("projection_convergence");
            rep.push_series("error_squared", r.radii.iter().zip(&r.errors_squared).map(|(&x, &e)| (x, e, 0.0)));
            rep.push_series("error", r.radii.iter().zip(&r.errors).map(|(&x, &e)| (x, e, 0.0)));
            rep.push_series("uniform_error", r.radii.iter().zip(&r.uniform_errors).map(|(&x, &e)| (x, e, 0.0)));
            rep.scalars.insert("compact_radius".into(), r.compact_radius);
            rep.tolerances.insert("final_error".into(), 1e-3);
            rep.provenance.insert("error".into(), "closed_form".into());
            rep.provenance.insert("uniform_error".into(), "sampled".into());
            rep.notes.push(format!("decreasing: {}", r.decreasing));
            rep.pass = Some(r.converged);
            rep
        }
        ExperimentKind::PolynomialApproximation => {
            let series = match &p.series {
                None => PowerSeries::reciprocal_linear(Complex64::new(2.0, 0.0)),
                Some(SeriesDef::ReciprocalLinear { a_re, a_im }) => {
                    PowerSeries::reciprocal_linear(Complex64::new(*a_re, *a_im))
                }
                Some(SeriesDef::Polynomial { coefficients }) => {
                    PowerSeries::polynomial(coefficients.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
                }
            };
            let eps = p.epsilon.unwrap_or(1e-3);
            let out = approximate_by_polynomial(&series, eps, p.radius.unwrap_or(1.0))?;
            let mut rep = ExperimentReport::new("polynomial_approximation");
            rep.push_series(
                "coefficient_abs",
                out.coefficients.iter().enumerate().map(|(n, c)| (n as f64, c.norm(), 0.0)),
            );
            for (k, v) in [
                ("rho", out.rho),
                ("degree", out.degree as f64),
                ("dilation_bound", out.dilation_bound),
                ("truncation_bound", out.truncation_bound),
                ("certified_bound", out.certified_bound),
            ] {
                rep.scalars.insert(k.into(), v);
            }
            rep.tolerances.insert("epsilon".into(), eps);
            rep.pass = Some(out.certified_bound < eps || out.certified_bound == 0.0);
            rep
        }
        ExperimentKind::GramContinuity => {
            let zb = Some("zbar");
            let (phi, psi) = (to_disk("phi", &cfg.symbol("phi", zb)?)?, to_disk("psi", &cfg.symbol("psi", zb)?)?);
            let (f1, f2) = (to_disk("f1", &cfg.symbol("f1", Some("1"))?)?, to_disk("f2", &cfg.symbol("f2", Some("1"))?)?);
            let r0 = p.r0.unwrap_or(1.0);
            let r = gram_convergence_experiment(&phi, &psi, &f1, &f2, &radii, r0)?;
            let mut rep = ExperimentReport::new("gram_continuity");
            rep.push_series("gram", r.radii.iter().zip(&r.values).map(|(&x, g)| (x, g.re, 0.0)));
            rep.push_series("gram_imag", r.radii.iter().zip(&r.values).map(|(&x, g)| (x, g.im, 0.0)));
            rep.push_series("error", r.radii.iter().zip(&r.errors).map(|(&x, &e)| (x, e, 0.0)));
            rep.push_series(
                "observed_constant",
                r.radii.iter().zip(&r.observed_constants).map(|(&x, &k)| (x, k, 0.0)),
            );
            rep.scalars.insert("r0".into(), r.r0);
            rep.scalars.insert("target_re".into(), r.target.re);
            rep.scalars.insert("target_im".into(), r.target.im);
            rep.provenance.insert("gram".into(), "closed_form".into());
            rep.pass = Some(r.converged_above.unwrap_or(true) && r.converged_below.unwrap_or(true));
            rep
        }
        ExperimentKind::SliceDecomposition => verify_slice_decomposition(
            &moment_table(cfg)?,
            &cfg.symbol("phi", None)?,
            &cfg.symbol("psi", None)?,
            &cfg.symbol("f1", Some("1"))?,
            &cfg.symbol("f2", Some("1"))?,
            &cfg.symbol("g", Some("1"))?,
        )?
        .to_report(),
        ExperimentKind::Ray => monomial_ray_functional(
            &moment_table(cfg)?,
            &cfg.symbol("phi", None)?,
            &cfg.symbol("psi", None)?,
            &cfg.symbol("f1", Some("1"))?,
            &cfg.symbol("f2", Some("1"))?,
            p.m_max.unwrap_or(DEFAULT_M_MAX),
            p.direction.unwrap_or(RayDirection::W),
        )?,
        ExperimentKind::PowerSequence => {
            let defaults = PowerSequenceOptions::default();
            power_sequence_functional(
                &moment_table(cfg)?,
                &cfg.symbol("phi", None)?,
                &cfg.symbol("psi", None)?,
                &cfg.symbol("f1", Some("1"))?,
                &cfg.symbol("f2", Some("1"))?,
                &PowerSequenceOptions {
                    alphas: p.alphas.clone().unwrap_or(defaults.alphas),
                    taylor_degree: p.taylor_degree.unwrap_or(defaults.taylor_degree),
                },
            )?
        }
        ExperimentKind::Spectra => {
            let t = moment_table(cfg)?;
            let sections = product_sections(&t, &cfg.symbol("psi", None)?, &cfg.symbol("phi", None)?, &truncations)?;
            singular_tail_diagnostic(&sections)?
        }
        ExperimentKind::Dichotomy => {
            let defaults = DichotomyOptions::default();
            dichotomy_experiment(
                &moment_table(cfg)?,
                &cfg.symbol("phi", None)?,
                &cfg.symbol("psi", None)?,
                &DichotomyOptions {
                    m_max: p.m_max.unwrap_or(defaults.m_max),
                    truncations,
                    f1: cfg.symbol("f1", Some("1"))?,
                    f2: cfg.symbol("f2", Some("1"))?,
                },
            )?
        }
    };
    report.experiment = cfg.experiment.name().into();
    if matches!(cfg.parameters.moments, Some(MomentMethod::Quadrature)) {
        report.notes.push("moments forced to quadrature".into());
    }
    Ok(report)
}

/// `0` on pass or agreement, `2` on a failed contract, `3` on an inconclusive verdict.
pub fn exit_code(report: &ExperimentReport) -> i32 {
    let inconclusive = report.verdict == Some(Verdict::Inconclusive);
    match (report.agreement, report.pass) {
        (Some(true), _) => 0,
        (Some(false), _) if inconclusive => 3,
        (Some(false), _) => 2,
        (None, Some(true)) => 0,
        (None, Some(false)) => 2,
        (None, None) if inconclusive => 3,
        (None, None) => 0,
    }
}
