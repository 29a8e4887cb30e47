//! Physical constants (CODATA 2018 exact/recommended values).
//!
//! Energies inside the crate are carried in MeV and momenta as `pc` in MeV;
//! the SI values below are only used at the boundaries.

use std::f64::consts::PI;

/// Planck constant (J·s), exact.
pub const H: f64 = 6.626_070_15e-34;

/// Reduced Planck constant ħ = h/2π (J·s).
pub const HBAR: f64 = H / (2.0 * PI);

/// Speed of light in vacuum (m/s), exact.
pub const C: f64 = 299_792_458.0;

/// Boltzmann constant (J/K), exact.
pub const K_B: f64 = 1.380_649e-23;

/// Elementary charge (C), exact.
pub const Q_E: f64 = 1.602_176_634e-19;

/// One MeV in joules.
pub const MEV: f64 = 1.0e6 * Q_E;

/// ħ in MeV·s.
pub const HBAR_MEV_S: f64 = HBAR / MEV;

/// Inverse fine-structure constant (Thomson limit, CODATA 2018).
pub const INVERSE_ALPHA: f64 = 137.035_999_084;

/// Fine-structure constant.
pub const ALPHA: f64 = 1.0 / INVERSE_ALPHA;

/// Electron rest energy (MeV).
pub const ELECTRON_MASS_MEV: f64 = 0.510_998_950_00;

/// Bundle of the constants used by the toolkit.
///
/// The free `const`s in this module are the canonical values;
/// [`PhysicalConstants::CODATA_2018`] packages them for callers that want to
/// pass them around or print them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub h: f64,
    pub c: f64,
    pub k_boltzmann: f64,
    pub q_e: f64,
    pub alpha_target: f64,
    pub electron_mass_energy: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        hbar: HBAR,
        h: H,
        c: C,
        k_boltzmann: K_B,
        q_e: Q_E,
        alpha_target: ALPHA,
        electron_mass_energy: ELECTRON_MASS_MEV,
    };

    /// ħ in J·s.
    pub fn hbar_j_s(&self) -> f64 {
        self.hbar
    }

    /// ħ in eV·s.
    pub fn hbar_ev_s(&self) -> f64 {
        self.hbar / self.q_e
    }

    pub fn inverse_alpha_target(&self) -> f64 {
        1.0 / self.alpha_target
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Converts an energy in MeV to joules.
#[inline]
pub fn mev_to_joule(e_mev: f64) -> f64 {
    e_mev * MEV
}

/// Converts a rest energy in MeV to a mass in kg.
#[inline]
pub fn mass_kg(mass_energy_mev: f64) -> f64 {
    mev_to_joule(mass_energy_mev) / (C * C)
}

/// Reduced Compton wavelength ħ/(mc) in metres for a rest energy in MeV.
#[inline]
pub fn reduced_compton_wavelength(mass_energy_mev: f64) -> f64 {
    HBAR * C / mev_to_joule(mass_energy_mev)
}
