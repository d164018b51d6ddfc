//! Biquotients `Sp(3)//Sp(1)^2`: enumeration of the defining homomorphisms,
//! exact certification of (effectively) free actions, cohomological
//! invariants (`H^4`, `|H^8|`, `p_1`), and a numerical search for
//! zero-curvature planes of the doubled Cheeger metric.
//!
//! The modules build on each other bottom-up:
//!
//! * [`hlinalg`] quaternionic 3x3 matrices, `sp(3)`, `g0`, brackets, `k + p`
//! * [`intlin`] Smith normal form and torus subgroup solving over the integers
//! * [`reps`] symplectic representations of `Sp(1)` and `Sp(1)^2`, torus data,
//!   `phi_3`, and canonical forms of biquotient specs
//! * [`catalog`] the nineteen named biquotients `M1..M4`, `N1..N13`, `O1, O2`
//! * [`freeness`] the exact certifier, the full classification, and a
//!   sampling cross-check
//! * [`cohomology`] `Bf^*`, `dx_3`, `dx_7`, `|H^8|`, `p_1`, `pi_2`
//! * [`curvature`] horizontal spaces, the zero-plane defect and its
//!   multi-start minimization
//! * [`report`] markdown tables and the JSON bundle

pub mod catalog;
pub mod cohomology;
pub mod curvature;
pub mod error;
pub mod freeness;
pub mod hlinalg;
pub mod intlin;
pub mod report;
pub mod reps;

pub use catalog::{catalog, lookup, CatalogEntry, Family};
pub use error::{Error, Result};
pub use hlinalg::{HMatrix, Quaternion};
pub use intlin::{IntMatrix, SnfResult, TorusSubgroup};
pub use reps::{BiquotientSpec, FactorType, Irrep, RepDecomposition, TorusImage};

/// Version string recorded in report bundles.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
