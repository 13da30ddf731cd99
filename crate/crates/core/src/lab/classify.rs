use num_complex::Complex64;
use serde::Serialize;

use crate::disk::DiskFunction;
use crate::error::{Error, Result};
use crate::shadow::{detect_boundary_disks, BoundaryDisk, Orientation, ShadowRegion};
use crate::symbol::MonomialSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Holomorphic,
    /// Harmonic with a conjugate term, i.e. not holomorphic.
    NonHolomorphic,
    NotHarmonic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiskSymbolProfile {
    pub disk: BoundaryDisk,
    /// One-variable restriction, in `ζ` along the disk.
    pub restricted: DiskFunction,
    pub classification: Classification,
}

/// Restricts the symbol to a representative of each disk family, with base
/// point `w₀ = base_modulus` (horizontal) or `z₀ = base_modulus` (vertical).
pub fn classify_symbol_on_disks(symbol: &MonomialSymbol, disks: &[BoundaryDisk]) -> Vec<DiskSymbolProfile> {
    disks
        .iter()
        .map(|disk| {
            let base = Complex64::new(disk.base_modulus, 0.0);
            let restricted = match disk.orientation {
                Orientation::Horizontal => symbol.restrict_horizontal(base),
                Orientation::Vertical => symbol.restrict_vertical(base),
            };
            let classification = if restricted.non_harmonic_term().is_some() {
                Classification::NotHarmonic
            } else if restricted.is_holomorphic() {
                Classification::Holomorphic
            } else {
                Classification::NonHolomorphic
            };
            DiskSymbolProfile {
                disk: *disk,
                restricted,
                classification,
            }
        })
        .collect()
}

/// Profiles of `φ` and `ψ` on every boundary disk of the shadow, failing with
/// [`Error::NotHarmonicOnDisk`] if either restriction is not harmonic.
pub(crate) fn harmonic_profiles(
    shadow: &ShadowRegion,
    phi: &MonomialSymbol,
    psi: &MonomialSymbol,
) -> Result<(Vec<DiskSymbolProfile>, Vec<DiskSymbolProfile>)> {
    let disks = detect_boundary_disks(shadow);
    let on_phi = classify_symbol_on_disks(phi, &disks);
    let on_psi = classify_symbol_on_disks(psi, &disks);
    for (what, profiles) in [("phi", &on_phi), ("psi", &on_psi)] {
        if let Some(p) = profiles.iter().find(|p| p.classification == Classification::NotHarmonic) {
            return Err(Error::NotHarmonicOnDisk {
                what,
                orientation: p.disk.orientation.name(),
            });
        }
    }
    Ok((on_phi, on_psi))
}
