use serde::{Deserialize, Serialize};

use crate::constants::{ALPHA, HBAR_MEV_S};
use crate::species::ParticleSpecies;

/// Best-fit K of the field-modified lifetime ħ/(K·2mc²).
pub const URBAN_K_DEFAULT: f64 = 31.9;

/// Lifetime rule for a virtual pair of rest energy mc².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum LifetimeModel {
    /// τ = ħ/(2mc²)
    HalfCompton,
    /// τ = ħ/(K·2mc²)
    UrbanK { k: f64 },
    /// τ = ħ/(α⁵mc²)
    Quasistationary,
    /// Fixed τ in seconds, independent of the species.
    Custom { tau_s: f64 },
}

impl LifetimeModel {
    pub fn urban_k() -> Self {
        LifetimeModel::UrbanK { k: URBAN_K_DEFAULT }
    }

    pub fn label(&self) -> &'static str {
        match self {
            LifetimeModel::HalfCompton => "half-compton",
            LifetimeModel::UrbanK { .. } => "urban-k",
            LifetimeModel::Quasistationary => "quasistationary",
            LifetimeModel::Custom { .. } => "custom",
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match *self {
            LifetimeModel::UrbanK { k } if !(k > 0.0) => Err(format!("K must be > 0, got {k}")),
            LifetimeModel::Custom { tau_s } if !(tau_s > 0.0 && tau_s.is_finite()) => {
                Err(format!("tau must be > 0, got {tau_s}"))
            }
            _ => Ok(()),
        }
    }
}

/// τ in seconds for a pair of the given rest energy (MeV).
pub fn lifetime_for_mass(model: &LifetimeModel, mass_energy_mev: f64) -> f64 {
    match *model {
        LifetimeModel::HalfCompton => HBAR_MEV_S / (2.0 * mass_energy_mev),
        LifetimeModel::UrbanK { k } => HBAR_MEV_S / (k * 2.0 * mass_energy_mev),
        LifetimeModel::Quasistationary => HBAR_MEV_S / (ALPHA.powi(5) * mass_energy_mev),
        LifetimeModel::Custom { tau_s } => tau_s,
    }
}

pub fn lifetime(model: &LifetimeModel, species: &ParticleSpecies) -> f64 {
    lifetime_for_mass(model, species.mass_mev)
}
