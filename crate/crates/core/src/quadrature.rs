//! One-dimensional integration on the shadow and polar rules on disks.
//!
//! The moment pipeline integrates along `|w|` with Romberg extrapolation
//! (trapezoid sums refined by midpoints, then Richardson), splitting a
//! segment in half whenever a fixed number of levels does not settle.
//! Gauss-Legendre and the polar disk rule are used for a posteriori checks.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Integral estimate with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            relative: 1e-13,
            absolute: 1e-300,
        }
    }
}

const LEVELS_PER_SEGMENT: usize = 12;
const MIN_LEVEL: usize = 4;
const MAX_SPLIT_DEPTH: usize = 14;

/// Adaptive Romberg integration of `f` over `[a, b]`.
pub fn romberg<F>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    if b <= a {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    // Relative accuracy is judged against the whole interval, so a pilot
    // estimate fixes the absolute target used by the sub-segments.
    let pilot = romberg_segment(f, a, b, LEVELS_PER_SEGMENT);
    let target = (tol.relative * pilot.value.abs()).max(tol.absolute);
    if pilot.converged(target) {
        return Ok(Estimate {
            value: pilot.value,
            error: pilot.error,
        });
    }
    split(f, a, b, target, 0)
}

fn split<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, target: f64, depth: usize) -> Result<Estimate> {
    let mid = 0.5 * (a + b);
    let mut total = Estimate {
        value: 0.0,
        error: 0.0,
    };
    for (lo, hi) in [(a, mid), (mid, b)] {
        let seg = romberg_segment(f, lo, hi, LEVELS_PER_SEGMENT);
        let part = if seg.converged(0.5 * target) {
            Estimate {
                value: seg.value,
                error: seg.error,
            }
        } else if depth + 1 >= MAX_SPLIT_DEPTH {
            return Err(Error::QuadratureNonConvergence {
                what: format!("segment [{lo}, {hi}]"),
                depth: depth + 1,
                estimate: seg.value,
                error: seg.error,
            });
        } else {
            split(f, lo, hi, 0.5 * target, depth + 1)?
        };
        total.value += part.value;
        total.error += part.error;
    }
    Ok(total)
}

struct Segment {
    value: f64,
    error: f64,
    level: usize,
}

impl Segment {
    fn converged(&self, target: f64) -> bool {
        self.level >= MIN_LEVEL && self.error <= target
    }
}

fn romberg_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, levels: usize) -> Segment {
    let mut prev: Vec<f64> = Vec::with_capacity(levels + 1);
    let mut h = b - a;
    let mut trap = 0.5 * h * (f(a) + f(b));
    prev.push(trap);
    let mut best = Segment {
        value: trap,
        error: f64::INFINITY,
        level: 0,
    };
    for level in 1..=levels {
        let n_new = 1usize << (level - 1);
        let mut mids = 0.0;
        for i in 0..n_new {
            mids += f(a + (i as f64 + 0.5) * h);
        }
        trap = 0.5 * (trap + h * mids);
        h *= 0.5;
        let mut row = Vec::with_capacity(level + 1);
        row.push(trap);
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            let r = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0);
            row.push(r);
        }
        let diag = row[level];
        let err = (diag - prev[level - 1]).abs();
        best = Segment {
            value: diag,
            error: err,
            level,
        };
        if level >= MIN_LEVEL && err <= f64::EPSILON * diag.abs() {
            break;
        }
        prev = row;
    }
    best
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule with `n` nodes mapped to `[a, b]`.
pub fn gauss_legendre_on<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| wi * f(mid + half * xi))
        .sum::<f64>()
        * half
}

/// Polar rule on the disk `|z| < r`: Gauss-Legendre in the radius, the
/// trapezoid rule in the angle.
pub fn disk_integral<F>(r: f64, radial: usize, angular: usize, f: F) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let (x, w) = gauss_legendre(radial);
    let dtheta = 2.0 * PI / angular as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (&xi, &wi) in x.iter().zip(&w) {
        let rho = 0.5 * r * (xi + 1.0);
        let mut ring = Complex64::new(0.0, 0.0);
        for k in 0..angular {
            let theta = k as f64 * dtheta;
            ring += f(Complex64::from_polar(rho, theta));
        }
        total += ring * (wi * 0.5 * r * rho * dtheta);
    }
    total
}
