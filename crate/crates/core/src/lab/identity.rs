use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExperimentReport;
use crate::error::Result;
use crate::moments::MomentTable;
use crate::section::verify_product_identity;
use crate::symbol::MonomialSymbol;

pub(crate) const PRODUCT_IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ProductIdentityInstance {
    pub psi: MonomialSymbol,
    pub phi: MonomialSymbol,
    pub f: MonomialSymbol,
    pub g: MonomialSymbol,
}

fn random_symbol<R: Rng>(rng: &mut R, holomorphic: bool) -> MonomialSymbol {
    let n_terms = rng.random_range(1..=3);
    MonomialSymbol::from_terms((0..n_terms).map(|_| {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let mut e = [0u32; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            if !(holomorphic && i % 2 == 1) {
                *slot = rng.random_range(0..=if holomorphic { 3 } else { 2 });
            }
        }
        (c, e)
    }))
}

/// Reproducible random `(ψ, φ, f, g)` with holomorphic `f`, `g`.
pub fn random_product_identity_instances(count: usize, seed: u64) -> Vec<ProductIdentityInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ProductIdentityInstance {
            psi: random_symbol(&mut rng, false),
            phi: random_symbol(&mut rng, false),
            f: random_symbol(&mut rng, true),
            g: random_symbol(&mut rng, true),
        })
        .collect()
}

/// Residuals of the identity `⟨P(ψ̄ H_φ f), g⟩ = ⟨H_φ f, H_ψ g⟩` on random instances.
pub fn product_identity_experiment(table: &MomentTable, count: usize, seed: u64) -> Result<ExperimentReport> {
    let instances = random_product_identity_instances(count, seed);
    let residuals = instances
        .iter()
        .map(|i| verify_product_identity(table, &i.psi, &i.phi, &i.f, &i.g))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new("product_identity");
    report.push_series(
        "residual",
        residuals.iter().enumerate().map(|(k, &r)| (k as f64, r, 0.0)),
    );
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    report.scalars.insert("max_residual".into(), worst);
    report.scalars.insert("seed".into(), seed as f64);
    report.tolerances.insert("residual".into(), PRODUCT_IDENTITY_TOLERANCE);
    report.pass = Some(worst <= PRODUCT_IDENTITY_TOLERANCE);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shadow::{build_shadow, DomainSpec};

    #[test]
    fn instances_are_reproducible_and_well_formed() {
        let a = random_product_identity_instances(10, 7);
        assert_eq!(a, random_product_identity_instances(10, 7));
        assert_ne!(a, random_product_identity_instances(10, 8));
        assert!(a.iter().all(|i| i.f.is_holomorphic() && i.g.is_holomorphic()));
    }

    #[test]
    fn identity_holds_on_the_ball() {
        let t = MomentTable::new(build_shadow(&DomainSpec::Ball { radius: 1.0 }).unwrap());
        let rep = product_identity_experiment(&t, 20, 3).unwrap();
        assert_eq!(rep.pass, Some(true));
    }
}
