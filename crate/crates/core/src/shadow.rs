//! Complete Reinhardt domains in C² described by their absolute shadow.
//!
//! A complete Reinhardt domain is determined by the region
//! `Z = {(|z|, |w|)}` in the closed first quadrant. We store `Z` through its
//! horizontal profile `r_h(y)`: the radius of the slice `{z : (z, w) ∈ Ω}`
//! at `|w| = y`. Completeness makes `r_h` non-increasing and convexity of
//! the shadow makes it concave; both are checked on construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the monotonicity and concavity checks on sampled profiles.
pub const PROFILE_TOLERANCE: f64 = 1e-9;

/// Slices of radius at most this are not counted as boundary disks.
pub const DISK_TOLERANCE: f64 = 1e-9;

/// `(1 + √2) / 2`, the ball radius of the bidisk-ball intersection preset.
pub const INTERSECTION_PRESET_RADIUS: f64 = 1.207_106_781_186_547_5;

/// User-facing description of a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Bidisk {
        #[serde(default = "one")]
        r_z: f64,
        #[serde(default = "one")]
        r_w: f64,
    },
    Ball {
        #[serde(rename = "R", default = "one")]
        radius: f64,
    },
    Intersection {
        #[serde(default = "one")]
        r_z: f64,
        #[serde(default = "one")]
        r_w: f64,
        #[serde(rename = "R")]
        radius: f64,
    },
    /// Piecewise-linear profile through `(y, r)` samples, starting at `y = 0`.
    Sampled { points: Vec<(f64, f64)> },
    Preset { name: String },
}

fn one() -> f64 {
    1.0
}

impl DomainSpec {
    pub const PRESETS: &'static [&'static str] =
        &["unit-bidisk", "unit-ball", "bidisk-ball-intersection"];

    pub fn preset(name: &str) -> Option<DomainSpec> {
        match name {
            "unit-bidisk" => Some(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 }),
            "unit-ball" => Some(DomainSpec::Ball { radius: 1.0 }),
            "bidisk-ball-intersection" => Some(DomainSpec::Intersection {
                r_z: 1.0,
                r_w: 1.0,
                radius: INTERSECTION_PRESET_RADIUS,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Bidisk { r_z: f64, r_w: f64 },
    Ball { radius: f64 },
    Intersection { r_z: f64, r_w: f64, radius: f64 },
    Sampled { points: Vec<(f64, f64)> },
}

/// Absolute shadow of a piecewise-smooth bounded convex complete Reinhardt domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowRegion {
    profile: Profile,
    y_max: f64,
    x_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `{(ζ, w₀)}`: the `z` coordinate varies.
    Horizontal,
    /// `{(z₀, ζ)}`: the `w` coordinate varies.
    Vertical,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        }
    }
}

/// Representative of a circle family of affine analytic disks in the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDisk {
    pub orientation: Orientation,
    pub base_modulus: f64,
    pub radius: f64,
}

/// Build the shadow for a domain specification.
pub fn build_shadow(spec: &DomainSpec) -> Result<ShadowRegion> {
    let positive = |v: f64| v.is_finite() && v > 0.0;
    match spec {
        DomainSpec::Bidisk { r_z, r_w } => {
            if !positive(*r_z) || !positive(*r_w) {
                return Err(Error::EmptyDomain {
                    y_max: *r_w,
                    x_max: *r_z,
                });
            }
            Ok(ShadowRegion {
                profile: Profile::Bidisk { r_z: *r_z, r_w: *r_w },
                y_max: *r_w,
                x_max: *r_z,
            })
        }
        DomainSpec::Ball { radius } => {
            if !positive(*radius) {
                return Err(Error::EmptyDomain {
                    y_max: *radius,
                    x_max: *radius,
                });
            }
            Ok(ShadowRegion {
                profile: Profile::Ball { radius: *radius },
                y_max: *radius,
                x_max: *radius,
            })
        }
        DomainSpec::Intersection { r_z, r_w, radius } => {
            let y_max = r_w.min(*radius);
            let x_max = r_z.min(*radius);
            if !positive(*r_z) || !positive(*r_w) || !positive(*radius) {
                return Err(Error::EmptyDomain { y_max, x_max });
            }
            Ok(ShadowRegion {
                profile: Profile::Intersection {
                    r_z: *r_z,
                    r_w: *r_w,
                    radius: *radius,
                },
                y_max,
                x_max,
            })
        }
        DomainSpec::Sampled { points } => sampled(points.clone()),
        DomainSpec::Preset { name } => match DomainSpec::preset(name) {
            Some(spec) => build_shadow(&spec),
            None => Err(Error::InvalidParameter(format!(
                "unknown domain preset `{name}` (known: {})",
                DomainSpec::PRESETS.join(", ")
            ))),
        },
    }
}

fn sampled(points: Vec<(f64, f64)>) -> Result<ShadowRegion> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter(
            "sampled profile needs at least two points".into(),
        ));
    }
    if points[0].0 != 0.0 {
        return Err(Error::InvalidParameter(
            "sampled profile must start at y = 0".into(),
        ));
    }
    for w in points.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::InvalidParameter(
                "sampled profile abscissae must be strictly increasing".into(),
            ));
        }
    }
    if points.iter().any(|&(y, r)| !y.is_finite() || !r.is_finite() || r < 0.0) {
        return Err(Error::InvalidParameter(
            "sampled profile values must be finite and non-negative".into(),
        ));
    }
    let y_max = points[points.len() - 1].0;
    let x_max = points[0].1;
    if y_max <= 0.0 || x_max <= 0.0 {
        return Err(Error::EmptyDomain { y_max, x_max });
    }
    for w in points.windows(2) {
        if w[1].1 > w[0].1 + PROFILE_TOLERANCE {
            return Err(Error::NonMonotoneProfile {
                y: w[1].0,
                from: w[0].1,
                to: w[1].1,
            });
        }
    }
    let slopes: Vec<f64> = points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    for (i, s) in slopes.windows(2).enumerate() {
        if s[1] > s[0] + PROFILE_TOLERANCE {
            return Err(Error::NonConvexShadow { y: points[i + 1].0 });
        }
    }
    Ok(ShadowRegion {
        profile: Profile::Sampled { points },
        y_max,
        x_max,
    })
}

impl ShadowRegion {
    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// Supremum of `|w|` over the domain.
    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    /// Supremum of `|z|` over the domain, `r_h(0)`.
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Radius of the horizontal slice at `|w| = y`.
    pub fn slice_radius(&self, y: f64) -> Result<f64> {
        if !(0.0..=self.y_max).contains(&y) {
            return Err(Error::OutOfRange {
                what: "y",
                value: y,
                min: 0.0,
                max: self.y_max,
            });
        }
        Ok(self.radius_unchecked(y))
    }

    /// `r_h(y)` without the range check; callers guarantee `0 ≤ y ≤ y_max`.
    pub(crate) fn radius_unchecked(&self, y: f64) -> f64 {
        match &self.profile {
            Profile::Bidisk { r_z, .. } => *r_z,
            Profile::Ball { radius } => (radius * radius - y * y).max(0.0).sqrt(),
            Profile::Intersection { r_z, radius, .. } => {
                r_z.min((radius * radius - y * y).max(0.0).sqrt())
            }
            Profile::Sampled { points } => interpolate(points, y),
        }
    }

    /// Radius of the vertical slice `{w : (z, w) ∈ Ω̄}` at `|z| = x`.
    pub fn vertical_slice_radius(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.x_max).contains(&x) {
            return Err(Error::OutOfRange {
                what: "x",
                value: x,
                min: 0.0,
                max: self.x_max,
            });
        }
        Ok(match &self.profile {
            Profile::Bidisk { r_w, .. } => *r_w,
            Profile::Ball { radius } => (radius * radius - x * x).max(0.0).sqrt(),
            Profile::Intersection { r_w, radius, .. } => {
                r_w.min((radius * radius - x * x).max(0.0).sqrt())
            }
            Profile::Sampled { points } => {
                // Largest y with r_h(y) ≥ x on the piecewise-linear profile.
                let mut best = 0.0;
                for w in points.windows(2) {
                    let ((y0, r0), (y1, r1)) = (w[0], w[1]);
                    if r1 >= x {
                        best = y1;
                    } else if r0 >= x {
                        best = y0 + (r0 - x) / (r0 - r1) * (y1 - y0);
                        break;
                    } else {
                        break;
                    }
                }
                best
            }
        })
    }

    /// Points in `[0, y_max]` where the profile may fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0];
        match &self.profile {
            Profile::Bidisk { .. } | Profile::Ball { .. } => {}
            Profile::Intersection { r_z, radius, .. } => {
                if radius > r_z {
                    let kink = (radius * radius - r_z * r_z).sqrt();
                    if kink > 0.0 && kink < self.y_max {
                        pts.push(kink);
                    }
                }
            }
            Profile::Sampled { points } => {
                pts.extend(points[1..points.len() - 1].iter().map(|p| p.0));
            }
        }
        pts.push(self.y_max);
        pts
    }

    /// Whether `(|z|, |w|) = (x, y)` lies in the closed shadow.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        (0.0..=self.y_max).contains(&y) && x >= 0.0 && x <= self.radius_unchecked(y)
    }

    /// Lebesgue volume of the domain, `2π² ∫ y r_h(y)² dy`.
    pub fn volume_by_profile(&self, samples: usize) -> f64 {
        let bp = self.breakpoints();
        bp.windows(2)
            .map(|w| {
                crate::quadrature::gauss_legendre_on(
                    |y| 2.0 * std::f64::consts::PI.powi(2) * y * self.radius_unchecked(y).powi(2),
                    w[0],
                    w[1],
                    samples,
                )
            })
            .sum()
    }
}

fn interpolate(points: &[(f64, f64)], y: f64) -> f64 {
    let idx = points.partition_point(|p| p.0 <= y);
    if idx == 0 {
        return points[0].1;
    }
    if idx >= points.len() {
        return points[points.len() - 1].1;
    }
    let (y0, r0) = points[idx - 1];
    let (y1, r1) = points[idx];
    r0 + (r1 - r0) * (y - y0) / (y1 - y0)
}

/// Horizontal and vertical boundary disk families. No other orientation
/// can occur for a convex complete Reinhardt domain in C².
pub fn detect_boundary_disks(shadow: &ShadowRegion) -> Vec<BoundaryDisk> {
    let mut disks = Vec::new();
    let top = shadow.radius_unchecked(shadow.y_max);
    if top > DISK_TOLERANCE {
        disks.push(BoundaryDisk {
            orientation: Orientation::Horizontal,
            base_modulus: shadow.y_max,
            radius: top,
        });
    }
    let right = shadow
        .vertical_slice_radius(shadow.x_max)
        .expect("x_max is in range");
    if right > DISK_TOLERANCE {
        disks.push(BoundaryDisk {
            orientation: Orientation::Vertical,
            base_modulus: shadow.x_max,
            radius: right,
        });
    }
    disks
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceLimitReport {
    pub y0: f64,
    pub approach: Vec<f64>,
    pub radii: Vec<f64>,
    pub target: f64,
    pub errors: Vec<f64>,
    pub limit_estimate: f64,
    /// Least-squares slope of `log |r_j - r_0|` against `log |y_j - y_0|`.
    pub observed_rate: Option<f64>,
    /// Every `r_j ≥ r_0` (expected when approaching the top slice from below).
    pub radii_dominate_limit: bool,
    pub pass: bool,
}

/// Check `r_h(y_j) → r_h(y0)` along an approach sequence.
///
/// Passes when the errors are non-increasing over the second half of the
/// sequence and either vanish or shrink with a positive observed rate.
pub fn verify_slice_limit(shadow: &ShadowRegion, y0: f64, approach: &[f64]) -> Result<SliceLimitReport> {
    let target = shadow.slice_radius(y0)?;
    let radii = approach
        .iter()
        .map(|&y| shadow.slice_radius(y))
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = radii.iter().map(|r| (r - target).abs()).collect();

    // The rate is fitted on the second half, where the asymptotics dominate.
    let half = errors.len() / 2;
    let pts: Vec<(f64, f64)> = approach[half..]
        .iter()
        .zip(&errors[half..])
        .filter(|(y, e)| **e > 1e-15 && (**y - y0).abs() > 0.0)
        .map(|(y, e)| ((y - y0).abs().ln(), e.ln()))
        .collect();
    let observed_rate = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    } else {
        None
    };

    let tail_monotone = errors[half..]
        .windows(2)
        .all(|w| w[1] <= w[0] + 1e-15);
    let vanishing = errors.iter().all(|&e| e <= 1e-12);
    let pass = !errors.is_empty()
        && tail_monotone
        && (vanishing || observed_rate.is_some_and(|p| p > 0.0));
    Ok(SliceLimitReport {
        y0,
        approach: approach.to_vec(),
        limit_estimate: radii.last().copied().unwrap_or(target),
        radii_dominate_limit: radii.iter().all(|&r| r >= target - 1e-15),
        radii,
        target,
        errors,
        observed_rate,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preset() -> ShadowRegion {
        build_shadow(&DomainSpec::preset("bidisk-ball-intersection").unwrap()).unwrap()
    }

    #[test]
    fn named_profiles() {
        let bidisk = build_shadow(&DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 }).unwrap();
        assert_eq!(bidisk.slice_radius(0.5).unwrap(), 1.0);
        assert_eq!((bidisk.y_max(), bidisk.x_max()), (1.0, 1.0));

        let ball = build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap();
        assert!((ball.slice_radius(0.6).unwrap() - 0.8).abs() < 1e-15);

        let s = preset();
        let r = INTERSECTION_PRESET_RADIUS;
        assert_eq!(s.slice_radius(0.0).unwrap(), 1.0);
        assert!((s.slice_radius(1.0).unwrap() - (r * r - 1.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn preset_radius_is_exact() {
        assert_eq!(INTERSECTION_PRESET_RADIUS, (1.0 + 2f64.sqrt()) / 2.0);
    }

    #[test]
    fn ball_slice_matches_brute_force() {
        // max{|z| : |z|² + 0.36 < 1} by scanning a fine grid of moduli.
        let ball = build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap();
        let brute = (0..=100_000)
            .map(|i| i as f64 * 1e-5)
            .filter(|x| x * x + 0.36 < 1.0)
            .fold(0.0, f64::max);
        assert!((ball.slice_radius(0.6).unwrap() - brute).abs() < 2e-5);
    }

    #[test]
    fn intersection_top_radius_by_root_finding() {
        // Solve x² + 1 = R² for x by bisection on the sphere constraint.
        let r = INTERSECTION_PRESET_RADIUS;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid + 1.0 < r * r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((preset().slice_radius(1.0).unwrap() - lo).abs() < 1e-12);
        assert!((lo - 0.676097).abs() < 5e-7);
    }

    #[test]
    fn out_of_range() {
        let s = preset();
        assert!(matches!(s.slice_radius(1.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(s.slice_radius(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_profiles() {
        let rising = DomainSpec::Sampled {
            points: vec![(0.0, 1.0), (0.5, 1.2), (1.0, 0.5)],
        };
        assert!(matches!(build_shadow(&rising), Err(Error::NonMonotoneProfile { .. })));
        let dented = DomainSpec::Sampled {
            points: vec![(0.0, 1.0), (0.5, 0.4), (1.0, 0.3)],
        };
        assert!(matches!(build_shadow(&dented), Err(Error::NonConvexShadow { .. })));
        let flat = DomainSpec::Sampled {
            points: vec![(0.0, 0.0), (1.0, 0.0)],
        };
        assert!(matches!(build_shadow(&flat), Err(Error::EmptyDomain { .. })));
        assert!(matches!(
            build_shadow(&DomainSpec::Bidisk { r_z: 0.0, r_w: 1.0 }),
            Err(Error::EmptyDomain { .. })
        ));
    }

    #[test]
    fn disks() {
        let bidisk = build_shadow(&DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 }).unwrap();
        let d = detect_boundary_disks(&bidisk);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].orientation, Orientation::Horizontal);
        assert_eq!((d[0].base_modulus, d[0].radius), (1.0, 1.0));
        assert_eq!(d[1].orientation, Orientation::Vertical);
        assert_eq!((d[1].base_modulus, d[1].radius), (1.0, 1.0));

        let ball = build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap();
        assert!(detect_boundary_disks(&ball).is_empty());

        let d = detect_boundary_disks(&preset());
        let expect = (INTERSECTION_PRESET_RADIUS.powi(2) - 1.0).sqrt();
        assert_eq!(d.len(), 2);
        for disk in &d {
            assert_eq!(disk.base_modulus, 1.0);
            assert!((disk.radius - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn sampled_square_with_cut_corner() {
        let s = build_shadow(&DomainSpec::Sampled {
            points: vec![(0.0, 1.0), (0.5, 1.0), (1.0, 0.5)],
        })
        .unwrap();
        assert_eq!(s.slice_radius(0.25).unwrap(), 1.0);
        assert!((s.slice_radius(0.75).unwrap() - 0.75).abs() < 1e-15);
        assert!((s.vertical_slice_radius(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((s.vertical_slice_radius(0.75).unwrap() - 0.75).abs() < 1e-15);
        let d = detect_boundary_disks(&s);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].radius, 0.5);
    }

    #[test]
    fn slice_limits() {
        let approach: Vec<f64> = (1..=200).map(|j| 1.0 - 1.0 / j as f64).collect();

        let bidisk = build_shadow(&DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 }).unwrap();
        let rep = verify_slice_limit(&bidisk, 1.0, &approach).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.limit_estimate, 1.0);

        let rep = verify_slice_limit(&preset(), 1.0, &approach).unwrap();
        assert!(rep.pass && rep.radii_dominate_limit);
        assert!((rep.target - 0.676_096_7).abs() < 1e-6);
        assert!((rep.observed_rate.unwrap() - 1.0).abs() < 0.05);

        let ball = build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap();
        let rep = verify_slice_limit(&ball, 1.0, &approach).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.target, 0.0);
        assert!((rep.observed_rate.unwrap() - 0.5).abs() < 0.05);
    }

    #[test]
    fn slice_limit_rejects_out_of_range_sequence() {
        let s = preset();
        assert!(verify_slice_limit(&s, 1.0, &[0.5, 1.2]).is_err());
    }

    #[test]
    fn volume_of_unit_ball() {
        let ball = build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap();
        let v = ball.volume_by_profile(20);
        assert!((v - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
    }
}
