//! Slice decomposition of `⟨H_φ(f₁ g), H_ψ(f₂ g)⟩_Ω` for `g = g(w)`:
//!
//! `LHS = ∫_H |g|² ⟨H^{Δ_w}(φ f₁), H^{Δ_w}(ψ f₂)⟩_{Δ_w} dV(w) + ⟨H_φ(f₁ g), P^{Δ_w}(ψ f₂) g⟩_Ω`,
//!
//! where `Δ_w` is the slice disk of radius `r_h(|w|)`. The slice side is
//! assembled from profile integrals `J(e, q)` only, never from moments.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::ExperimentReport;
use crate::error::{Error, Result};
use crate::moments::MomentTable;
use crate::section::{hankel, inner_product};
use crate::symbol::MonomialSymbol;

/// `Σ c · z^a z̄^b w^c w̄^d r_h(|w|)^{2k}`, keyed by `[a, b, c, d, k]`.
#[derive(Debug, Clone, Default)]
struct SliceSymbol {
    terms: BTreeMap<[u32; 5], Complex64>,
}

impl SliceSymbol {
    fn add(&mut self, c: Complex64, key: [u32; 5]) {
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn from_symbol(s: &MonomialSymbol) -> Self {
        let mut out = Self::default();
        for ([a, b, c, d], k) in s.terms() {
            out.add(k, [a, b, c, d, 0]);
        }
        out
    }

    /// Projection onto `A²(Δ_w)` in each slice: `z^a z̄^b ↦ (a−b+1)/(a+1) r^{2b} z^{a−b}`.
    fn slice_projection(s: &MonomialSymbol) -> Self {
        let mut out = Self::default();
        for ([a, b, c, d], k) in s.terms() {
            if a >= b {
                out.add(k * ((a - b + 1) as f64 / (a + 1) as f64), [a - b, 0, c, d, b]);
            }
        }
        out
    }

    /// Slice Hankel image `u − P^{Δ_w} u`.
    fn slice_hankel(s: &MonomialSymbol) -> Self {
        let mut out = Self::from_symbol(s);
        for (key, c) in Self::slice_projection(s).terms {
            out.add(-c, key);
        }
        out
    }

    fn times(&self, g: &MonomialSymbol) -> Self {
        let mut out = Self::default();
        for (&[a, b, c, d, k], &x) in &self.terms {
            for ([a2, b2, c2, d2], y) in g.terms() {
                out.add(x * y, [a + a2, b + b2, c + c2, d + d2, k]);
            }
        }
        out
    }

    /// `⟨self, other⟩_Ω` with its accumulated quadrature error.
    fn inner(&self, other: &Self, table: &MomentTable) -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for (&[a, b, c, d, k], &x) in &self.terms {
            for (&[a2, b2, c2, d2, k2], &y) in &other.terms {
                if a + b2 != b + a2 || c + d2 != d + c2 {
                    continue;
                }
                // ∫_Ω |z|^{2A} |w|^{2C} r_h^{2K} = π/(A+1) · J(2K + 2A + 2, 2C)
                let big_a = a + b2;
                let j = table.slice_integral(2 * (k + k2) + 2 * big_a + 2, 2 * (c + d2))?;
                let f = PI / (big_a as f64 + 1.0);
                let w = x * y.conj();
                acc += w * (f * j.value);
                err += w.norm() * f * j.error;
            }
        }
        Ok((acc, err))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceDecompositionReport {
    pub lhs: Complex64,
    pub slice_term: Complex64,
    pub cross_term: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Accumulated error bound of the profile integrals on the right side.
    pub quadrature_error: f64,
}

impl SliceDecompositionReport {
    pub fn to_report(&self) -> ExperimentReport {
        let mut r = ExperimentReport::new("slice_decomposition");
        for (name, v) in [
            ("lhs_re", self.lhs.re),
            ("lhs_im", self.lhs.im),
            ("slice_term_re", self.slice_term.re),
            ("slice_term_im", self.slice_term.im),
            ("cross_term_re", self.cross_term.re),
            ("cross_term_im", self.cross_term.im),
            ("residual", self.residual),
            ("quadrature_error", self.quadrature_error),
        ] {
            r.scalars.insert(name.into(), v);
        }
        r.tolerances.insert("residual".into(), SLICE_DECOMPOSITION_TOLERANCE);
        r.pass = Some(self.residual <= SLICE_DECOMPOSITION_TOLERANCE);
        r.provenance.insert("lhs".into(), "moments".into());
        r.provenance.insert("slice_term".into(), "quadrature".into());
        r
    }
}

pub(crate) const SLICE_DECOMPOSITION_TOLERANCE: f64 = 1e-6;

/// Both sides of the slice decomposition and `|LHS − RHS|`.
/// `g` must be a holomorphic polynomial in `w` alone.
pub fn verify_slice_decomposition(
    table: &MomentTable,
    phi: &MonomialSymbol,
    psi: &MonomialSymbol,
    f1: &MonomialSymbol,
    f2: &MonomialSymbol,
    g: &MonomialSymbol,
) -> Result<SliceDecompositionReport> {
    if g.terms().any(|([a, b, _, d], _)| a != 0 || b != 0 || d != 0) {
        return Err(Error::InvalidParameter(format!("g = {g} must be a holomorphic polynomial in w")));
    }
    for (what, f) in [("f1", f1), ("f2", f2)] {
        if !f.is_holomorphic() {
            return Err(Error::NotHolomorphic { what });
        }
    }
    let h_phi = hankel(table, phi, &(f1 * g))?;
    let lhs = inner_product(table, &h_phi, &hankel(table, psi, &(f2 * g))?)?;

    let u = phi * f1;
    let v = psi * f2;
    let (slice_term, e1) = SliceSymbol::slice_hankel(&u)
        .times(g)
        .inner(&SliceSymbol::slice_hankel(&v).times(g), table)?;
    let (cross_term, e2) =
        SliceSymbol::from_symbol(&h_phi).inner(&SliceSymbol::slice_projection(&v).times(g), table)?;
    let rhs = slice_term + cross_term;
    Ok(SliceDecompositionReport {
        lhs,
        slice_term,
        cross_term,
        rhs,
        residual: (lhs - rhs).norm(),
        quadrature_error: e1 + e2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shadow::{build_shadow, DomainSpec, INTERSECTION_PRESET_RADIUS};

    fn table(spec: DomainSpec) -> MomentTable {
        MomentTable::new(build_shadow(&spec).unwrap())
    }

    fn sym(s: &str) -> MonomialSymbol {
        s.parse().unwrap()
    }

    #[test]
    fn bidisk_zbar_constant_g() {
        let t = table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 });
        let rep = verify_slice_decomposition(&t, &sym("zbar"), &sym("zbar"), &sym("1"), &sym("1"), &sym("1")).unwrap();
        assert!((rep.lhs.re - PI * PI / 2.0).abs() < 1e-12);
        assert_eq!(rep.cross_term, Complex64::new(0.0, 0.0));
        assert!(rep.residual <= 1e-8);
    }

    #[test]
    fn holomorphic_symbol_gives_zeros() {
        let t = table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 });
        let rep = verify_slice_decomposition(&t, &sym("z*w"), &sym("zbar"), &sym("1"), &sym("1"), &sym("w")).unwrap();
        assert!(rep.lhs.norm() < 1e-14 && rep.slice_term.norm() < 1e-14 && rep.cross_term.norm() < 1e-14);
    }

    #[test]
    fn bidisk_zbar_linear_g() {
        let t = table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 });
        let rep = verify_slice_decomposition(&t, &sym("zbar"), &sym("zbar"), &sym("1"), &sym("1"), &sym("w")).unwrap();
        assert!(rep.residual <= 1e-6);
    }

    #[test]
    fn curved_domains_with_cross_terms() {
        // w-dependent symbols make P^Ω differ from the slice projection.
        for spec in [
            DomainSpec::Ball { radius: 1.0 },
            DomainSpec::Intersection {
                r_z: 1.0,
                r_w: 1.0,
                radius: INTERSECTION_PRESET_RADIUS,
            },
        ] {
            let t = table(spec);
            let rep = verify_slice_decomposition(
                &t,
                &sym("zbar*w + z^2*zbar"),
                &sym("zbar*w + 2*z*zbar"),
                &sym("1 + z"),
                &sym("z"),
                &sym("1 + 3*w^2"),
            )
            .unwrap();
            assert!(rep.cross_term.norm() > 1e-6, "{rep:?}");
            assert!(rep.residual <= 1e-10 * (1.0 + rep.lhs.norm()), "{rep:?}");
        }
    }

    #[test]
    fn rejects_z_dependent_g() {
        let t = table(DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 });
        assert!(verify_slice_decomposition(&t, &sym("zbar"), &sym("zbar"), &sym("1"), &sym("1"), &sym("z")).is_err());
    }
}
