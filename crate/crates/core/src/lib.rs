//! Finite-section computations for Toeplitz and Hankel operators on Bergman
//! spaces of complete Reinhardt domains in C².
//!
//! A domain is described by its absolute shadow ([`shadow`]); all inner
//! products of monomials reduce to moments of that shadow ([`moments`]), which
//! feed the operator sections in [`section`]. One-variable disk computations
//! live in [`disk`], and the compactness diagnostics in [`lab`].

pub mod disk;
pub mod error;
pub mod lab;
pub mod linalg;
pub mod moments;
pub mod quadrature;
pub mod section;
pub mod shadow;
pub mod symbol;

pub use error::{Error, Result};
pub use moments::{MomentMethod, MomentTable};
pub use num_complex::Complex64;
pub use section::{IndexSet, OperatorSection};
pub use shadow::{build_shadow, detect_boundary_disks, BoundaryDisk, DomainSpec, Orientation, ShadowRegion};
pub use symbol::MonomialSymbol;
