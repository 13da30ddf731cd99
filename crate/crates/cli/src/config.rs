//! Experiment configuration files.

use std::collections::BTreeMap;
use std::fmt;

use bergman_core::lab::RayDirection;
use bergman_core::{Complex64, DomainSpec, MomentMethod, MonomialSymbol};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub domain: DomainInput,
    #[serde(default)]
    pub symbols: BTreeMap<String, SymbolDef>,
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

/// A preset name or a full domain specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainInput {
    Preset(String),
    Spec(DomainSpec),
}

impl DomainInput {
    pub fn resolve(&self) -> Result<DomainSpec, CliError> {
        match self {
            DomainInput::Preset(name) => DomainSpec::preset(name)
                .ok_or_else(|| CliError::Config(format!("unknown domain preset `{name}`"))),
            DomainInput::Spec(DomainSpec::Preset { name }) => DomainInput::Preset(name.clone()).resolve(),
            DomainInput::Spec(s) => Ok(s.clone()),
        }
    }
}

/// A shortcut or expression such as `"zbar"` or `"2*z*wbar + w"`, or an
/// explicit term list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolDef {
    Expression(String),
    Terms(Vec<TermDef>),
}

/// `(coeff_re + i coeff_im) · z^a z̄^b w^c w̄^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub coeff_re: f64,
    #[serde(default)]
    pub coeff_im: f64,
    #[serde(default)]
    pub a: u32,
    #[serde(default)]
    pub b: u32,
    #[serde(default)]
    pub c: u32,
    #[serde(default)]
    pub d: u32,
}

/// Named shortcuts accepted wherever a symbol expression is.
pub const SYMBOL_SHORTCUTS: &[(&str, &str)] = &[
    ("one", "1"),
    ("z", "z"),
    ("zbar", "zbar"),
    ("w", "w"),
    ("wbar", "wbar"),
    ("zw", "z*w"),
    ("zwbar", "z*wbar"),
    ("zbarw", "zbar*w"),
    ("zbarwbar", "zbar*wbar"),
    ("z̄", "zbar"),
    ("w̄", "wbar"),
];

impl SymbolDef {
    pub fn to_symbol(&self) -> Result<MonomialSymbol, CliError> {
        match self {
            SymbolDef::Expression(s) => {
                let expr = SYMBOL_SHORTCUTS
                    .iter()
                    .find(|(k, _)| *k == s.trim())
                    .map_or(s.as_str(), |(_, v)| *v);
                expr.parse()
                    .map_err(|e| CliError::Config(format!("cannot parse symbol `{s}`: {e}")))
            }
            SymbolDef::Terms(ts) => Ok(MonomialSymbol::from_terms(
                ts.iter()
                    .map(|t| (Complex64::new(t.coeff_re, t.coeff_im), [t.a, t.b, t.c, t.d])),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    ProductIdentity,
    SliceLimit,
    ProjectionConvergence,
    PolynomialApproximation,
    GramContinuity,
    SliceDecomposition,
    Ray,
    PowerSequence,
    Spectra,
    Dichotomy,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 10] = [
        ExperimentKind::ProductIdentity,
        ExperimentKind::SliceLimit,
        ExperimentKind::ProjectionConvergence,
        ExperimentKind::PolynomialApproximation,
        ExperimentKind::GramContinuity,
        ExperimentKind::SliceDecomposition,
        ExperimentKind::Ray,
        ExperimentKind::PowerSequence,
        ExperimentKind::Spectra,
        ExperimentKind::Dichotomy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::ProductIdentity => "product_identity",
            ExperimentKind::SliceLimit => "slice_limit",
            ExperimentKind::ProjectionConvergence => "projection_convergence",
            ExperimentKind::PolynomialApproximation => "polynomial_approximation",
            ExperimentKind::GramContinuity => "gram_continuity",
            ExperimentKind::SliceDecomposition => "slice_decomposition",
            ExperimentKind::Ray => "ray",
            ExperimentKind::PowerSequence => "power_sequence",
            ExperimentKind::Spectra => "spectra",
            ExperimentKind::Dichotomy => "dichotomy",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            ExperimentKind::ProductIdentity => "identity <P(conj(psi) H_phi f), g> = <H_phi f, H_psi g> on random instances",
            ExperimentKind::SliceLimit => "slice radius r_h(y_j) -> r_h(y0) along an approach sequence",
            ExperimentKind::ProjectionConvergence => "L2(C) and uniform convergence of disk projections as r -> 1",
            ExperimentKind::PolynomialApproximation => "certified polynomial approximation on a disk",
            ExperimentKind::GramContinuity => "continuity of the disk Hankel Gram form G(r) at r0",
            ExperimentKind::SliceDecomposition => "slice decomposition of <H_phi(f1 g), H_psi(f2 g)>",
            ExperimentKind::Ray => "monomial ray functional v_m",
            ExperimentKind::PowerSequence => "functional along the normalized g_j = a_j w^(-alpha_j) family",
            ExperimentKind::Spectra => "eigenvalue tail of nested product sections",
            ExperimentKind::Dichotomy => "boundary-disk prediction against ray and spectral verdicts",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Numeric knobs. Each experiment reads the ones it needs; defaults are
/// documented in the README.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncations: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    /// Relative tolerance of moment quadrature.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taylor_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<RayDirection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<MomentMethod>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Disk radius for the approximation experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Cutoff radius of the symbol in the projection experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approach: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesDef>,
}

/// Power series for the approximation experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesDef {
    /// `1 / (a − z)`.
    ReciprocalLinear {
        a_re: f64,
        #[serde(default)]
        a_im: f64,
    },
    /// `Σ c_n z^n` with `coefficients[n] = [re, im]`.
    Polynomial { coefficients: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks that need more than the schema.
    pub fn validate(&self) -> Result<(), CliError> {
        self.domain.resolve()?;
        for (name, def) in &self.symbols {
            def.to_symbol()
                .map_err(|e| CliError::Config(format!("symbols.{name}: {e}")))?;
        }
        let p = &self.parameters;
        if let Some(t) = &p.truncations {
            if t.is_empty() || t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Config("parameters.truncations must be non-empty and strictly increasing".into()));
            }
        }
        if let Some(r) = &p.radii {
            if r.is_empty() || r.iter().any(|x| !(*x > 0.0)) {
                return Err(CliError::Config("parameters.radii must be non-empty and positive".into()));
            }
        }
        if let Some(tol) = p.tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(CliError::Config(format!("parameters.tol = {tol} must lie in (0, 1)")));
            }
        }
        Ok(())
    }

    /// Symbol `name`, or `default` when the config does not define it.
    pub fn symbol(&self, name: &str, default: Option<&str>) -> Result<MonomialSymbol, CliError> {
        match (self.symbols.get(name), default) {
            (Some(def), _) => def.to_symbol(),
            (None, Some(d)) => SymbolDef::Expression(d.into()).to_symbol(),
            (None, None) => Err(CliError::Config(format!(
                "experiment `{}` needs symbols.{name}",
                self.experiment
            ))),
        }
    }
}
