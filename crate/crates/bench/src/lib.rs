//! Fixtures shared by the benchmarks.

use bergman_core::shadow::INTERSECTION_PRESET_RADIUS;
use bergman_core::{build_shadow, DomainSpec, MomentMethod, MomentTable};

pub fn domains() -> Vec<(&'static str, DomainSpec)> {
    vec![
        ("bidisk", DomainSpec::Bidisk { r_z: 1.0, r_w: 1.0 }),
        ("ball", DomainSpec::Ball { radius: 1.0 }),
        (
            "intersection",
            DomainSpec::Intersection {
                r_z: 1.0,
                r_w: 1.0,
                radius: INTERSECTION_PRESET_RADIUS,
            },
        ),
    ]
}

/// A fresh table, so that each measurement includes the moment computations.
pub fn fresh_table(spec: &DomainSpec, method: Option<MomentMethod>) -> MomentTable {
    let shadow = build_shadow(spec).expect("fixture domains are valid");
    match method {
        Some(m) => MomentTable::with_method(shadow, m),
        None => MomentTable::new(shadow),
    }
}
