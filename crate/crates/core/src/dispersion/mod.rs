//! Photon propagation-time dispersion from delays at virtual-pair
//! interactions.
//!
//! A photon crossing a distance `L` meets `N = L/(cτ)` pairs on average and
//! is held for about `τ` at each, so the arrival time spreads as
//! `σ_T = √N·τ = √(τ/c)·√L`. The alternative where the photon keeps moving
//! at `c` during each interaction predicts no spread at all and is not
//! simulated.

mod flight;
mod lifetime;

pub use flight::{
    simulate_flight, simulate_flight_with_samples, DelayDistribution, FlightConfig, FlightError,
    InteractionProcess, PhotonFlightResult, SamplingPath, PER_INTERACTION_LIMIT,
};
pub use lifetime::{lifetime, lifetime_for_mass, LifetimeModel, URBAN_K_DEFAULT};

use serde::{Deserialize, Serialize};

use crate::constants::{ELECTRON_MASS_MEV, C};

/// Gaussian FWHM/RMS ratio 2√(2 ln 2).
pub fn fwhm_per_rms() -> f64 {
    2.0 * (2.0 * std::f64::consts::LN_2).sqrt()
}

pub fn fwhm_from_rms(rms: f64) -> f64 {
    rms * fwhm_per_rms()
}

pub fn rms_from_fwhm(fwhm: f64) -> f64 {
    fwhm / fwhm_per_rms()
}

/// √(τ/c)·√L in seconds, for a lifetime `tau_s`.
pub fn sigma_for_lifetime(tau_s: f64, length_m: f64) -> f64 {
    (tau_s / C).sqrt() * length_m.sqrt()
}

/// σ_T (s) over `length_m` for the electron-pair lifetime of `model`.
pub fn analytic_sigma(model: &LifetimeModel, length_m: f64) -> f64 {
    sigma_for_lifetime(lifetime_for_mass(model, ELECTRON_MASS_MEV), length_m)
}

/// RMS width √(𝒯² + σ²L) of a pulse of RMS width `pulse_rms_s` after
/// `length_m`, for a fluctuation coefficient `sigma_per_sqrt_m` (s·m^-1/2).
pub fn pulse_broadening(pulse_rms_s: f64, sigma_per_sqrt_m: f64, length_m: f64) -> f64 {
    (pulse_rms_s * pulse_rms_s + sigma_per_sqrt_m * sigma_per_sqrt_m * length_m).sqrt()
}

/// Smallest coefficient σ (s·m^-1/2) that broadens a pulse of width
/// `pulse_rms_s` by the relative precision `precision` over `length_m`:
/// σ = 𝒯·√(σ_𝒯(2 + σ_𝒯)/L).
pub fn experiment_sensitivity(pulse_rms_s: f64, precision: f64, length_m: f64) -> f64 {
    pulse_rms_s * (precision * (2.0 + precision) / length_m).sqrt()
}

/// Astrophysical bound on the fluctuation coefficient, s·m^-1/2.
pub const LIMIT_BAND: [f64; 2] = [0.2e-15, 0.3e-15];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Excluded,
    Viable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitComparison {
    pub model: LifetimeModel,
    pub model_sigma_per_sqrt_m: f64,
    pub limit_band: [f64; 2],
    /// Excluded iff the coefficient exceeds the upper band edge.
    pub band_verdict: Verdict,
    /// Conclusion quoted in the literature for the named models, kept
    /// alongside the band rule rather than reconciled with it.
    pub stated_conclusion: Option<Verdict>,
}

pub fn compare_to_limits(model: &LifetimeModel) -> LimitComparison {
    let sigma = analytic_sigma(model, 1.0);
    compare_coefficient(model.clone(), sigma)
}

/// Band comparison for an explicitly given coefficient (s·m^-1/2).
pub fn compare_coefficient(model: LifetimeModel, sigma_per_sqrt_m: f64) -> LimitComparison {
    let band_verdict = if sigma_per_sqrt_m > LIMIT_BAND[1] {
        Verdict::Excluded
    } else {
        Verdict::Viable
    };
    let stated_conclusion = match model {
        LifetimeModel::HalfCompton | LifetimeModel::UrbanK { .. } => Some(Verdict::Viable),
        LifetimeModel::Quasistationary => Some(Verdict::Excluded),
        LifetimeModel::Custom { .. } => None,
    };
    LimitComparison {
        model,
        model_sigma_per_sqrt_m: sigma_per_sqrt_m,
        limit_band: LIMIT_BAND,
        band_verdict,
        stated_conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FS: f64 = 1e-15;
    const AS: f64 = 1e-18;

    #[test]
    fn coefficients() {
        let hc = analytic_sigma(&LifetimeModel::HalfCompton, 1.0) / FS;
        let uk = analytic_sigma(&LifetimeModel::urban_k(), 1.0) / FS;
        let qs = analytic_sigma(&LifetimeModel::Quasistationary, 1.0) / 1e-9;
        assert!((hc - 1.465).abs() < 0.05, "{hc}");
        assert!((uk - 0.259).abs() < 0.01, "{uk}");
        assert!((qs - 0.455).abs() < 0.02, "{qs}");
    }

    #[test]
    fn sqrt_length_scaling() {
        for m in [LifetimeModel::HalfCompton, LifetimeModel::Quasistationary] {
            let one = analytic_sigma(&m, 3.0);
            let four = analytic_sigma(&m, 12.0);
            assert_eq!(four, 2.0 * one);
        }
    }

    #[test]
    fn attosecond_pulse() {
        let rms = pulse_broadening(0.0, 0.05 * FS, 0.13);
        assert!((rms / AS - 18.03).abs() < 0.01);
        assert!((fwhm_from_rms(rms) / AS - 42.5).abs() < 0.5);
    }

    #[test]
    fn broadening_edge_cases() {
        assert_eq!(pulse_broadening(2.0 * FS, 0.0, 10.0), 2.0 * FS);
        assert_eq!(pulse_broadening(2.0 * FS, 0.3 * FS, 0.0), 2.0 * FS);
        let (a, b) = (3.0, 4.0);
        assert_eq!(pulse_broadening(a, b, 1.0).powi(2), a * a + b * b);
    }

    #[test]
    fn sensitivity() {
        let s = experiment_sensitivity(2.0 * FS, 0.01, 1e4);
        assert!((s / FS - 0.00284).abs() < 1e-4, "{}", s / FS);
        let s4 = experiment_sensitivity(2.0 * FS, 0.01, 4e4);
        assert!((s4 / s - 0.5).abs() < 1e-14);
        let widened = pulse_broadening(2.0 * FS, s, 1e4);
        assert!((widened / (2.0 * FS) - 1.01).abs() < 1e-14);
    }

    #[test]
    fn fwhm_round_trip() {
        assert!((fwhm_per_rms() - 2.354_82).abs() < 1e-5);
        assert!((rms_from_fwhm(fwhm_from_rms(7.0)) - 7.0).abs() < 1e-14);
    }

    #[test]
    fn verdicts() {
        let q = compare_to_limits(&LifetimeModel::Quasistationary);
        assert_eq!(q.band_verdict, Verdict::Excluded);
        assert_eq!(q.stated_conclusion, Some(Verdict::Excluded));
        let h = compare_to_limits(&LifetimeModel::HalfCompton);
        assert_eq!(h.band_verdict, Verdict::Excluded);
        assert_eq!(h.stated_conclusion, Some(Verdict::Viable));
        let refined = compare_coefficient(LifetimeModel::urban_k(), 0.05 * FS);
        assert_eq!(refined.band_verdict, Verdict::Viable);
    }
}
