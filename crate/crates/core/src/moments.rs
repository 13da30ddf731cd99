//! Moments `μ(p, q) = ∫_Ω |z|^p |w|^q dV` of a complete Reinhardt domain.
//!
//! Integrating out the angles and the `|z|` variable leaves
//! `μ(p, q) = 2π/(p+2) · J(p+2, q)` with `J(e, q) = 2π ∫_0^{y_max} y^{q+1} r_h(y)^e dy`.
//! Bidisks and balls use closed forms, everything else adaptive quadrature
//! split at the profile's breakpoints.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quadrature::{romberg, Estimate, Tolerance};
use crate::shadow::{Profile, ShadowRegion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    Quadrature,
}

/// Memoized moments of one shadow. Safe to share between threads; a value
/// computed twice by racing readers is identical, and the first write wins.
#[derive(Debug)]
pub struct MomentTable {
    shadow: ShadowRegion,
    method: MomentMethod,
    tolerance: Tolerance,
    moments: RwLock<HashMap<(u32, u32), Estimate>>,
    slices: RwLock<HashMap<(u32, u32), Estimate>>,
}

impl MomentTable {
    /// Closed forms where available, quadrature otherwise.
    pub fn new(shadow: ShadowRegion) -> Self {
        let method = match shadow.profile() {
            Profile::Bidisk { .. } | Profile::Ball { .. } => MomentMethod::ClosedForm,
            _ => MomentMethod::Quadrature,
        };
        Self::with_method(shadow, method)
    }

    /// Forces a method; `ClosedForm` falls back to quadrature when no closed form exists.
    pub fn with_method(shadow: ShadowRegion, method: MomentMethod) -> Self {
        let method = match (method, shadow.profile()) {
            (MomentMethod::ClosedForm, Profile::Bidisk { .. } | Profile::Ball { .. }) => MomentMethod::ClosedForm,
            _ => MomentMethod::Quadrature,
        };
        Self {
            shadow,
            method,
            tolerance: Tolerance::default(),
            moments: RwLock::new(HashMap::new()),
            slices: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_tolerance(mut self, relative: f64) -> Self {
        self.tolerance.relative = relative;
        self
    }

    pub fn shadow(&self) -> &ShadowRegion {
        &self.shadow
    }

    pub fn method(&self) -> MomentMethod {
        self.method
    }

    /// `μ(p, q)` with its error bound.
    pub fn moment_estimate(&self, p: u32, q: u32) -> Result<Estimate> {
        if let Some(e) = self.moments.read().unwrap().get(&(p, q)) {
            return Ok(*e);
        }
        let est = match self.method {
            MomentMethod::ClosedForm => self.closed_form(p, q),
            MomentMethod::Quadrature => {
                let j = self.slice_integral(p + 2, q)?;
                let f = 2.0 * PI / (p as f64 + 2.0);
                Estimate {
                    value: f * j.value,
                    error: f * j.error,
                }
            }
        };
        Ok(*self.moments.write().unwrap().entry((p, q)).or_insert(est))
    }

    pub fn moment(&self, p: u32, q: u32) -> Result<f64> {
        Ok(self.moment_estimate(p, q)?.value)
    }

    /// `c_{αβ} = ‖z^α w^β‖ = √μ(2α, 2β)`.
    pub fn monomial_norm(&self, alpha: u32, beta: u32) -> Result<f64> {
        Ok(self.moment(2 * alpha, 2 * beta)?.sqrt())
    }

    /// `J(e, q) = 2π ∫_0^{y_max} y^{q+1} r_h(y)^e dy`, always by quadrature.
    pub fn slice_integral(&self, e: u32, q: u32) -> Result<Estimate> {
        if let Some(est) = self.slices.read().unwrap().get(&(e, q)) {
            return Ok(*est);
        }
        let shadow = &self.shadow;
        let f = |y: f64| y.powi(q as i32 + 1) * shadow.radius_unchecked(y).powi(e as i32);
        let mut total = Estimate { value: 0.0, error: 0.0 };
        for w in shadow.breakpoints().windows(2) {
            let part = romberg(&f, w[0], w[1], self.tolerance)?;
            total.value += part.value;
            total.error += part.error;
        }
        let est = Estimate {
            value: 2.0 * PI * total.value,
            error: 2.0 * PI * total.error,
        };
        Ok(*self.slices.write().unwrap().entry((e, q)).or_insert(est))
    }

    /// Largest relative error bound among the moments computed so far.
    pub fn max_relative_error(&self) -> f64 {
        self.moments
            .read()
            .unwrap()
            .values()
            .map(|e| if e.value == 0.0 { 0.0 } else { e.error / e.value.abs() })
            .fold(0.0, f64::max)
    }

    fn closed_form(&self, p: u32, q: u32) -> Estimate {
        let (pf, qf) = (p as f64, q as f64);
        let value = match self.shadow.profile() {
            Profile::Bidisk { r_z, r_w } => {
                4.0 * PI * PI * r_z.powf(pf + 2.0) * r_w.powf(qf + 2.0) / ((pf + 2.0) * (qf + 2.0))
            }
            Profile::Ball { radius } => {
                4.0 * PI * PI * radius.powf(pf + qf + 4.0) / (pf + qf + 4.0) * trig_moment(p + 1, q + 1)
            }
            _ => unreachable!("closed forms exist only for bidisks and balls"),
        };
        Estimate {
            value,
            error: 8.0 * f64::EPSILON * value * (1.0 + (p + q) as f64).sqrt(),
        }
    }
}

/// `∫_0^{π/2} cos^a θ sin^b θ dθ` by Wallis recursion.
pub fn trig_moment(a: u32, b: u32) -> f64 {
    // Reduce the cosine power to 0 or 1.
    let mut factor = 1.0;
    let mut a = a;
    while a >= 2 {
        factor *= (a - 1) as f64 / (a + b) as f64;
        a -= 2;
    }
    if a == 1 {
        return factor / (b as f64 + 1.0);
    }
    let mut b = b;
    while b >= 2 {
        factor *= (b - 1) as f64 / b as f64;
        b -= 2;
    }
    factor * if b == 0 { PI / 2.0 } else { 1.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre_on;
    use crate::shadow::{build_shadow, DomainSpec, INTERSECTION_PRESET_RADIUS};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn table(spec: DomainSpec) -> MomentTable {
        MomentTable::new(build_shadow(&spec).unwrap())
    }

    fn bidisk() -> MomentTable {
        table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 })
    }

    fn ball() -> MomentTable {
        table(DomainSpec::Ball { radius: 1.0 })
    }

    fn intersection() -> MomentTable {
        table(DomainSpec::Intersection {
            r_z: 1.0,
            r_w: 1.0,
            radius: INTERSECTION_PRESET_RADIUS,
        })
    }

    #[test]
    fn trig_moment_values() {
        assert!((trig_moment(0, 0) - PI / 2.0).abs() < 1e-15);
        assert!((trig_moment(1, 1) - 0.5).abs() < 1e-15);
        assert!((trig_moment(2, 2) - PI / 16.0).abs() < 1e-15);
        for (a, b) in [(3, 5), (4, 0), (7, 2), (0, 6)] {
            let q = gauss_legendre_on(|t| t.cos().powi(a) * t.sin().powi(b), 0.0, PI / 2.0, 40);
            assert!((trig_moment(a as u32, b as u32) - q).abs() < 1e-14, "{a} {b}");
        }
    }

    #[test]
    fn bidisk_moments() {
        let t = bidisk();
        assert_eq!(t.method(), MomentMethod::ClosedForm);
        assert!((t.moment(0, 0).unwrap() - PI * PI).abs() < 1e-13);
        assert!((t.moment(2, 0).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        assert!((t.monomial_norm(0, 0).unwrap() - PI).abs() < 1e-14);
        assert!((t.monomial_norm(1, 1).unwrap().powi(2) - PI * PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn ball_moments() {
        let t = ball();
        assert!((t.moment(0, 0).unwrap() - PI * PI / 2.0).abs() < 1e-14);
        // ‖z^α w^β‖² = π² α! β! / (α+β+2)!
        let expect = PI * PI * 2.0 * 6.0 / 5040.0;
        assert!((t.moment(4, 6).unwrap() - expect).abs() < 1e-15);
        assert!((t.moment(0, 0).unwrap() - t.shadow().volume_by_profile(32)).abs() < 1e-12);
    }

    #[test]
    fn quadrature_agrees_with_closed_forms() {
        for spec in [
            DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 },
            DomainSpec::Bidisk { r_z: 0.7, r_w: 1.3 },
            DomainSpec::Ball { radius: 1.0 },
            DomainSpec::Ball { radius: 1.4 },
        ] {
            let shadow = build_shadow(&spec).unwrap();
            let exact = MomentTable::new(shadow.clone());
            let quad = MomentTable::with_method(shadow, MomentMethod::Quadrature);
            for (p, q) in [(0, 0), (2, 0), (0, 2), (4, 10), (2, 128), (40, 6)] {
                let a = exact.moment(p, q).unwrap();
                let b = quad.moment_estimate(p, q).unwrap();
                assert!((a - b.value).abs() <= 1e-10 * a, "{spec:?} ({p},{q}): {a} vs {}", b.value);
                assert!(b.error <= 1e-8 * a);
            }
        }
    }

    #[test]
    fn intersection_matches_piecewise_closed_form() {
        // μ(0, q) = 2π² ∫ y^{q+1} min(1, R² − y²) dy, split at the kink.
        let t = intersection();
        assert_eq!(t.method(), MomentMethod::Quadrature);
        let r2 = INTERSECTION_PRESET_RADIUS.powi(2);
        let k = (r2 - 1.0).sqrt();
        for q in [0u32, 2, 10, 50] {
            let n = q as f64 + 2.0;
            let head = k.powf(n) / n;
            let tail = r2 * (1.0 - k.powf(n)) / n - (1.0 - k.powf(n + 2.0)) / (n + 2.0);
            let expect = 2.0 * PI * PI * (head + tail);
            let got = t.moment(0, q).unwrap();
            assert!((got - expect).abs() < 1e-12 * expect, "q = {q}");
        }
    }

    #[test]
    fn concurrent_fill_is_consistent() {
        let t = Arc::new(intersection());
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let t = Arc::clone(&t);
                std::thread::spawn(move || (0..20).map(|q| t.moment(2 * (i % 3), 2 * q).unwrap()).collect::<Vec<_>>())
            })
            .collect();
        let results: Vec<Vec<f64>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, r) in results.iter().enumerate() {
            assert_eq!(r, &results[i % 3]);
        }
    }

    proptest! {
        #[test]
        fn moments_decrease_inside_the_unit_bidisk(p in 0u32..30, q in 0u32..30, which in 0usize..3) {
            let t = [bidisk(), ball(), intersection()].into_iter().nth(which).unwrap();
            let m = t.moment(p, q).unwrap();
            prop_assert!(m > 0.0);
            prop_assert!(t.moment(p + 1, q).unwrap() <= m);
            prop_assert!(t.moment(p, q + 1).unwrap() <= m);
        }
    }
}
