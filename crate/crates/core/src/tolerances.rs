//! Pass/fail thresholds for the reproduction report, in one place.
//!
//! Bump [`TABLE_VERSION`] whenever a value changes.

pub const TABLE_VERSION: u32 = 1;

pub const TARGET_INVERSE_ALPHA: f64 = 137.035999;

pub const DEGENERACY_SUM: f64 = 9.5;

pub const GLOBAL_CUTOFF_MEV: f64 = 292.0;
pub const GLOBAL_CUTOFF_TOL_MEV: f64 = 2.0;
/// Every species other than the two largest stays below this share (%).
pub const MINOR_SPECIES_MAX_PERCENT: f64 = 2.0;

pub const ELECTRON_CUTOFF_RATIO: f64 = 862.6;
pub const ELECTRON_CUTOFF_RATIO_TOL: f64 = 0.1;
pub const INVERSE_ALPHA_AT_861: f64 = 136.8;
pub const INVERSE_ALPHA_AT_861_TOL: f64 = 0.1;

pub const MASS_FACTOR: f64 = 6.48;
pub const MASS_FACTOR_TOL: f64 = 0.05;
pub const PAIR_VOLUME_RATIO: f64 = 0.218;
pub const PAIR_VOLUME_RATIO_TOL: f64 = 0.005;

pub const QUADRATURE_PAIRS: usize = 100;
pub const QUADRATURE_REL_TOL: f64 = 1e-8;

pub const STEFAN_BOLTZMANN_TEMPERATURES_K: [f64; 3] = [2.725, 300.0, 6000.0];
pub const STEFAN_BOLTZMANN_REL_TOL: f64 = 1e-6;
pub const WIEN_X: f64 = 2.821;
pub const WIEN_X_TOL: f64 = 0.001;

pub const BOX_MODE_MIN_COUNT: f64 = 1e5;
pub const BOX_MODE_REL_TOL: f64 = 0.02;

pub const FINITE_DIFFERENCE_SAMPLES: usize = 50;
pub const FINITE_DIFFERENCE_REL_TOL: f64 = 1e-6;
pub const PROBABILITY_SUM_TOL: f64 = 1e-12;

/// fs·m^-1/2
pub const HALF_COMPTON_SIGMA_FS: f64 = 1.465;
pub const HALF_COMPTON_SIGMA_TOL_FS: f64 = 0.05;
/// fs·m^-1/2
pub const URBAN_K_SIGMA_FS: f64 = 0.259;
pub const URBAN_K_SIGMA_TOL_FS: f64 = 0.01;
/// ns·m^-1/2
pub const QUASISTATIONARY_SIGMA_NS: f64 = 0.455;
pub const QUASISTATIONARY_SIGMA_TOL_NS: f64 = 0.02;

pub const MC_PHOTONS: u64 = 100_000;
pub const MC_LENGTHS_M: [f64; 3] = [1.0, 4.0, 16.0];
pub const MC_SCALING_LENGTHS_M: [f64; 4] = [1.0, 4.0, 16.0, 64.0];
pub const MC_STANDARD_ERRORS: f64 = 3.0;
pub const MC_EXPONENT: f64 = 0.5;
pub const MC_EXPONENT_TOL: f64 = 0.02;

/// fs·m^-1/2
pub const SENSITIVITY_FS: f64 = 0.00284;
pub const SENSITIVITY_TOL_FS: f64 = 0.0001;

/// attoseconds
pub const ATTOSECOND_FWHM_AS: f64 = 42.5;
pub const ATTOSECOND_FWHM_TOL_AS: f64 = 0.5;
