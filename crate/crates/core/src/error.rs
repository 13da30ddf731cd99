use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("profile is not non-increasing near y = {y}: r rises from {from} to {to}")]
    NonMonotoneProfile { y: f64, from: f64, to: f64 },

    #[error("shadow is not convex: profile slope increases at y = {y}")]
    NonConvexShadow { y: f64 },

    #[error("empty domain: y_max = {y_max}, x_max = {x_max}")]
    EmptyDomain { y_max: f64, x_max: f64 },

    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("kernel evaluated within 1e-14 of its pole (|r^2 - z conj(xi)| = {distance:e})")]
    PoleProximity { distance: f64 },

    #[error("{what} must be a holomorphic polynomial (found a conjugate exponent)")]
    NotHolomorphic { what: &'static str },

    #[error("{what} is not harmonic: term with exponents ({a}, {b}) mixes z and conj(z)")]
    NotHarmonic { what: &'static str, a: u32, b: u32 },

    #[error("{what} is not harmonic on the {orientation} boundary disk")]
    NotHarmonicOnDisk {
        what: &'static str,
        orientation: &'static str,
    },

    #[error("series tail cannot be bounded: {0}")]
    TailBoundUnavailable(String),

    #[error("quadrature did not converge for {what} after {depth} refinements (estimate {estimate:e}, error {error:e})")]
    QuadratureNonConvergence {
        what: String,
        depth: usize,
        estimate: f64,
        error: f64,
    },

    #[error("Taylor tail {tail:e} exceeds 1e-3 of the norm for alpha = {alpha} at degree {degree}")]
    TaylorTailTooLarge { alpha: f64, degree: usize, tail: f64 },

    #[error("section is not Hermitian: max |A - A^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("domain has no horizontal boundary disk")]
    NoHorizontalDisk,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
