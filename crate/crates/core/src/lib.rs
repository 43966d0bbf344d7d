//! Truncated h-fold sumset arithmetic for integer bases on [0, N].
//!
//! The crate enumerates symbolic bases (`basis`), packs them into
//! fixed-bound bitmaps (`bitmap`), computes exact truncated sumsets with
//! bit-parallel kernels (`engine`), and builds the experiments layered on
//! top: counting/density profiles and modular obstruction certificates
//! (`analysis`), plus empirical order, representation search, and
//! finite-stability experiments (`order`).

pub mod analysis;
pub mod basis;
pub mod bitmap;
pub mod engine;
pub mod error;
pub mod order;

pub use analysis::{
    cross_check_obstruction, default_grid, density_profile, modular_obstruction,
    CountingProfile, ObstructionReport, ProfileSample, MAX_MODULUS,
};
pub use basis::{polygonal_value, BasisSpec};
pub use bitmap::{IntervalBitmap, MAX_BOUND};
pub use engine::{hfold, sumset};
pub use error::{Error, Result};
pub use order::{
    default_h_max, empirical_order, find_representation, oracle_hfold_membership,
    stability_experiment, verify_legendre, HCoverage, LegendreCheck, OrderReport,
    StabilityReport,
};
