//! Output of `bergman-lab list`.

use std::fmt::Write;

use bergman_core::DomainSpec;

use crate::config::{ExperimentKind, SYMBOL_SHORTCUTS};

fn describe(spec: &DomainSpec) -> String {
    match spec {
        DomainSpec::Bidisk { r_z, r_w } => format!("bidisk r_z = {r_z}, r_w = {r_w}"),
        DomainSpec::Ball { radius } => format!("ball R = {radius}"),
        DomainSpec::Intersection { r_z, r_w, radius } => format!(
            "bidisk (r_z = {r_z}, r_w = {r_w}) intersected with the ball R = {radius:.6} = (1+sqrt 2)/2"
        ),
        DomainSpec::Sampled { points } => format!("sampled profile with {} points", points.len()),
        DomainSpec::Preset { name } => name.clone(),
    }
}

pub fn catalog() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain kinds:");
    for (kind, fields) in [
        ("bidisk", "r_z, r_w (default 1)"),
        ("ball", "R (default 1)"),
        ("intersection", "r_z, r_w (default 1), R"),
        ("sampled", "points: [[y, r], ...] starting at y = 0"),
        ("preset", "name"),
    ] {
        let _ = writeln!(out, "  {kind:<14} {fields}");
    }
    let _ = writeln!(out, "presets:");
    for name in DomainSpec::PRESETS {
        let spec = DomainSpec::preset(name).expect("listed preset exists");
        let _ = writeln!(out, "  {name:<26} {}", describe(&spec));
    }
    let _ = writeln!(out, "symbol shortcuts:");
    for (name, expr) in SYMBOL_SHORTCUTS {
        let _ = writeln!(out, "  {name:<10} {expr}");
    }
    let _ = writeln!(out, "  (any sum of products of z, zbar, w, wbar, powers ^k and real numbers)");
    let _ = writeln!(out, "experiments:");
    for kind in ExperimentKind::ALL {
        let _ = writeln!(out, "  {:<26} {}", kind.name(), kind.summary());
    }
    out
}
