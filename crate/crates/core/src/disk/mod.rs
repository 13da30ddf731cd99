//! Exact Bergman-space computations on centred disks `D_r ⊂ C`.
//!
//! Every quantity reduces to the radial moments
//! `∫_{D_r} |z|^{2k} dV = π r^{2k+2} / (k+1)`; quadrature only appears in tests
//! and a posteriori checks.

mod approx;
mod convergence;

pub use approx::{approximate_by_polynomial, PolynomialApproximation, PowerSeries};
pub use convergence::{
    gram_convergence_experiment, projection_convergence_experiment, projection_error_squared, projection_of_cutoff,
    CutoffSymbol, GramConvergenceReport, ProjectionConvergenceReport,
};

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Finite sum `Σ c · z^a z̄^b` on a disk.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiskFunction {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl DiskFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<Complex64>, a: u32, b: u32) -> Self {
        Self::from_terms([(c.into(), a, b)])
    }

    pub fn z() -> Self {
        Self::monomial(1.0, 1, 0)
    }

    pub fn zbar() -> Self {
        Self::monomial(1.0, 0, 1)
    }

    /// Collects `(coefficient, a, b)` triples, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Complex64, u32, u32)>>(terms: I) -> Self {
        let mut out = Self::default();
        for (c, a, b) in terms {
            out.add_term(c, a, b);
        }
        out
    }

    /// Holomorphic polynomial `Σ coeffs[n] z^n`.
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(n, &c)| (c, n as u32, 0)))
    }

    fn add_term(&mut self, c: Complex64, a: u32, b: u32) {
        let slot = self.terms.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }

    /// First term mixing `z` and `z̄`, if any.
    pub fn non_harmonic_term(&self) -> Option<(u32, u32)> {
        self.terms.keys().copied().find(|&(a, b)| a > 0 && b > 0)
    }

    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|(a, b, c)| (c.conj(), b, a)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(a, b, c)| (c * s, a, b)))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms()
            .map(|(a, b, c)| c * z.powu(a) * z.conj().powu(b))
            .sum()
    }

    /// Largest `|coefficient|`, used for relative thresholds.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &DiskFunction {
    type Output = DiskFunction;
    fn add(self, rhs: &DiskFunction) -> DiskFunction {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(c, a, b);
        }
        out
    }
}

impl Sub for &DiskFunction {
    type Output = DiskFunction;
    fn sub(self, rhs: &DiskFunction) -> DiskFunction {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(-c, a, b);
        }
        out
    }
}

impl Neg for &DiskFunction {
    type Output = DiskFunction;
    fn neg(self) -> DiskFunction {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &DiskFunction {
    type Output = DiskFunction;
    fn mul(self, rhs: &DiskFunction) -> DiskFunction {
        let mut out = DiskFunction::zero();
        for (a, b, c) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                out.add_term(c * c2, a + a2, b + b2);
            }
        }
        out
    }
}

/// `∫_{D_r} |z|^{2k} dV`.
pub fn radial_moment(r: f64, k: u32) -> f64 {
    PI * r.powi(2 * k as i32 + 2) / (k as f64 + 1.0)
}

/// `⟨f, g⟩_{L²(D_r)}`.
pub fn disk_inner(r: f64, f: &DiskFunction, g: &DiskFunction) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b, c) in f.terms() {
        for (a2, b2, c2) in g.terms() {
            // z^a z̄^b · conj(z^a2 z̄^b2) = z^(a+b2) z̄^(b+a2)
            if a + b2 == b + a2 {
                acc += c * c2.conj() * radial_moment(r, a + b2);
            }
        }
    }
    acc
}

pub fn disk_norm(r: f64, f: &DiskFunction) -> f64 {
    disk_inner(r, f, f).re.max(0.0).sqrt()
}

/// Bergman kernel of `D_r`.
pub fn disk_kernel(r: f64, z: Complex64, xi: Complex64) -> Result<Complex64> {
    let denom = r * r - z * xi.conj();
    if denom.norm() < 1e-14 {
        return Err(Error::PoleProximity {
            distance: denom.norm(),
        });
    }
    Ok(Complex64::new(r * r / PI, 0.0) / (denom * denom))
}

/// Bergman projection of `L²(D_r)` onto `A²(D_r)`.
pub fn disk_project(r: f64, f: &DiskFunction) -> DiskFunction {
    DiskFunction::from_terms(f.terms().filter(|&(a, b, _)| a >= b).map(|(a, b, c)| {
        let factor = (a - b + 1) as f64 / (a + 1) as f64 * r.powi(2 * b as i32);
        (c * factor, a - b, 0)
    }))
}

/// `H_φ f = φ f − P(φ f)` on `D_r`.
pub fn disk_hankel(r: f64, phi: &DiskFunction, f: &DiskFunction) -> DiskFunction {
    let u = phi * f;
    &u - &disk_project(r, &u)
}

/// `⟨H_φ f₁, H_ψ f₂⟩_{D_r}` for holomorphic polynomials `f₁, f₂`.
pub fn disk_hankel_gram(
    r: f64,
    phi: &DiskFunction,
    f1: &DiskFunction,
    psi: &DiskFunction,
    f2: &DiskFunction,
) -> Result<Complex64> {
    if !f1.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f1" });
    }
    if !f2.is_holomorphic() {
        return Err(Error::NotHolomorphic { what: "f2" });
    }
    Ok(disk_inner(r, &disk_hankel(r, phi, f1), &disk_hankel(r, psi, f2)))
}

/// `N×N` section of `H_ψ^* H_φ` on `A²(D_r)` in the basis `z^n / ‖z^n‖`.
pub fn disk_product_section(r: f64, phi: &DiskFunction, psi: &DiskFunction, n: usize) -> DMatrix<Complex64> {
    let basis: Vec<DiskFunction> = (0..n as u32)
        .map(|k| DiskFunction::monomial(1.0 / radial_moment(r, k).sqrt(), k, 0))
        .collect();
    let h_phi: Vec<DiskFunction> = basis.iter().map(|e| disk_hankel(r, phi, e)).collect();
    let h_psi: Vec<DiskFunction> = basis.iter().map(|e| disk_hankel(r, psi, e)).collect();
    DMatrix::from_fn(n, n, |j, k| disk_inner(r, &h_phi[k], &h_psi[j]))
}

/// Operator norm of the `N×N` section of `H_ψ^* H_φ` on `A²(D_r)`.
/// Both symbols must be harmonic polynomials.
pub fn disk_product_norm(r: f64, phi: &DiskFunction, psi: &DiskFunction, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation degree must be at least 1".into()));
    }
    if let Some((a, b)) = phi.non_harmonic_term() {
        return Err(Error::NotHarmonic { what: "phi", a, b });
    }
    if let Some((a, b)) = psi.non_harmonic_term() {
        return Err(Error::NotHarmonic { what: "psi", a, b });
    }
    Ok(linalg::largest_singular_value(&disk_product_section(r, phi, psi, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::disk_integral;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Quadrature oracle for `⟨f, g⟩_{D_r}`.
    fn inner_by_quadrature(r: f64, f: &DiskFunction, g: &DiskFunction) -> Complex64 {
        disk_integral(r, 24, 48, |z| f.eval(z) * g.eval(z).conj())
    }

    #[test]
    fn kernel_values() {
        let k = disk_kernel(1.0, c(0.0), c(0.0)).unwrap();
        assert!((k.re - 1.0 / PI).abs() < 1e-15);
        let k = disk_kernel(1.0, c(0.5), c(0.5)).unwrap();
        assert!((k.re - 0.565_884).abs() < 1e-6);
        // Truncated series Σ (n+1) z^n conj(ξ)^n / π.
        let series: f64 = (0..200).map(|n| (n + 1) as f64 * 0.25f64.powi(n)).sum::<f64>() / PI;
        assert!((k.re - series).abs() < 1e-12);
        assert!(matches!(disk_kernel(1.0, c(1.0), c(1.0)), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn kernel_reproduces_polynomials() {
        let p = DiskFunction::polynomial(&[c(1.0), Complex64::new(0.3, -2.0), c(0.0), c(0.7)]);
        let r = 1.3;
        for k in 0..10 {
            let z = Complex64::from_polar(0.5 * r * k as f64 / 10.0, 0.7 * k as f64);
            let got = disk_integral(r, 40, 96, |xi| disk_kernel(r, z, xi).unwrap() * p.eval(xi));
            assert!((got - p.eval(z)).norm() < 1e-8, "z = {z}");
        }
    }

    #[test]
    fn projection_examples() {
        assert!(disk_project(0.7, &DiskFunction::zbar()).is_empty());
        let p = disk_project(1.5, &DiskFunction::monomial(1.0, 1, 1));
        assert!((p.coefficient(0, 0) - c(1.5f64.powi(2) / 2.0)).norm() < 1e-15);
        assert_eq!(p.len(), 1);
        let p = disk_project(1.0, &DiskFunction::monomial(1.0, 2, 1));
        assert!((p.coefficient(1, 0) - c(2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_against_quadrature() {
        // ⟨|z|², 1⟩ / ‖1‖² on D_r and ⟨z² z̄, z⟩ / ‖z‖² on D_1.
        let r = 1.5;
        let one = DiskFunction::constant(1.0);
        let num = inner_by_quadrature(r, &DiskFunction::monomial(1.0, 1, 1), &one);
        let den = inner_by_quadrature(r, &one, &one);
        assert!(((num / den).re - r * r / 2.0).abs() < 1e-12);
        let z = DiskFunction::z();
        let num = inner_by_quadrature(1.0, &DiskFunction::monomial(1.0, 2, 1), &z);
        let den = inner_by_quadrature(1.0, &z, &z);
        assert!(((num / den).re - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gram_examples() {
        let zb = DiskFunction::zbar();
        let one = DiskFunction::constant(1.0);
        let z = DiskFunction::z();
        for r in [0.5, 1.0, 2.0] {
            let g = disk_hankel_gram(r, &zb, &one, &zb, &one).unwrap();
            let oracle = inner_by_quadrature(r, &zb, &zb);
            assert!((g.re - PI * r.powi(4) / 2.0).abs() < 1e-12 * r.powi(4));
            assert!((g - oracle).norm() < 1e-10 * r.powi(4));
        }
        assert_eq!(disk_hankel_gram(1.0, &zb, &one, &zb, &z).unwrap(), c(0.0));
        assert_eq!(disk_hankel_gram(1.0, &z, &z, &zb, &one).unwrap(), c(0.0));
        let g = disk_hankel_gram(1.0, &zb, &z, &zb, &z).unwrap();
        assert!((g.re - PI / 12.0).abs() < 1e-15);
        assert!(matches!(
            disk_hankel_gram(1.0, &zb, &zb, &zb, &one),
            Err(Error::NotHolomorphic { what: "f1" })
        ));
    }

    #[test]
    fn product_norm_examples() {
        let zb = DiskFunction::zbar();
        let z = DiskFunction::z();
        for n in [1, 5, 12] {
            assert!((disk_product_norm(1.0, &zb, &zb, n).unwrap() - 0.5).abs() < 1e-12);
        }
        assert_eq!(disk_product_norm(1.0, &z, &zb, 6).unwrap(), 0.0);
        let mixed = &z + &zb;
        assert!((disk_product_norm(1.0, &mixed, &zb, 8).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            disk_product_norm(1.0, &DiskFunction::monomial(1.0, 1, 1), &zb, 3),
            Err(Error::NotHarmonic { what: "phi", .. })
        ));
    }

    #[test]
    fn section_diagonal_closed_form() {
        let zb = DiskFunction::zbar();
        let m = disk_product_section(1.0, &zb, &zb, 20);
        for j in 0..20 {
            for k in 0..20 {
                let expect = if j == k { 1.0 / ((j + 1) * (j + 2)) as f64 } else { 0.0 };
                assert!((m[(j, k)] - c(expect)).norm() < 1e-13);
            }
        }
    }

    fn arb_disk_function() -> impl Strategy<Value = DiskFunction> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0, 0u32..4, 0u32..4), 0..5).prop_map(|ts| {
            DiskFunction::from_terms(ts.into_iter().map(|(re, im, a, b)| (Complex64::new(re, im), a, b)))
        })
    }

    fn arb_holomorphic() -> impl Strategy<Value = DiskFunction> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4).prop_map(|cs| {
            DiskFunction::polynomial(&cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn projection_is_idempotent(f in arb_disk_function(), r in 0.2f64..3.0) {
            let p = disk_project(r, &f);
            prop_assert_eq!(disk_project(r, &p), p);
        }

        #[test]
        fn projection_is_self_adjoint(f in arb_disk_function(), g in arb_disk_function(), r in 0.3f64..2.0) {
            let lhs = disk_inner(r, &disk_project(r, &f), &g);
            let rhs = disk_inner(r, &f, &disk_project(r, &g));
            let scale = 1.0 + disk_norm(r, &f) * disk_norm(r, &g);
            prop_assert!((lhs - rhs).norm() < 1e-12 * scale);
        }

        #[test]
        fn gram_is_non_negative(phi in arb_disk_function(), f in arb_holomorphic(), r in 0.3f64..2.0) {
            let g = disk_hankel_gram(r, &phi, &f, &phi, &f).unwrap();
            prop_assert!(g.re >= -1e-12 * (1.0 + disk_norm(r, &(&phi * &f)).powi(2)));
            prop_assert!(g.im.abs() < 1e-12 * (1.0 + g.re.abs()));
        }

        #[test]
        fn holomorphic_symbols_annihilate(f in arb_holomorphic(), psi in arb_disk_function(), r in 0.3f64..2.0) {
            let n = disk_product_norm(r, &f, &DiskFunction::zbar(), 6).unwrap();
            prop_assert_eq!(n, 0.0);
            let g = disk_hankel_gram(r, &f, &DiskFunction::constant(1.0), &psi, &DiskFunction::z()).unwrap();
            prop_assert_eq!(g, Complex64::new(0.0, 0.0));
        }
    }
}
