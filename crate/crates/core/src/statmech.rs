//! Mode counting and zero-point statistics of a single field mode.
//!
//! Energies of modes are SI (J) with `ω` in rad/s and momenta in kg·m/s.
//! Mass and cutoff energies used by the box counter are in MeV, matching the
//! rest of the crate. The chemical potential is fixed at zero throughout.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{C, H, HBAR, K_B, MEV};
use crate::numerics::{self, NumericsError, QuadratureSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatmechError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("mode count would exceed the limit of {limit} (estimated {estimate:.3e})")]
    OverflowGuard { estimate: f64, limit: u64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Relativistic energy √((mc²)² + (pc)²), same unit as the inputs.
pub fn dispersion_energy(mass_energy: f64, pc: f64) -> f64 {
    mass_energy.hypot(pc)
}

/// Side lengths of a rectangular box, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDims {
    pub lx: f64,
    pub ly: f64,
    pub lz: f64,
}

impl BoxDims {
    pub fn cube(side: f64) -> Self {
        Self {
            lx: side,
            ly: side,
            lz: side,
        }
    }

    pub fn volume(&self) -> f64 {
        self.lx * self.ly * self.lz
    }
}

/// Which integer lattice of standing/travelling waves is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeLattice {
    /// ψ(0) = ψ(L) = 0, `lᵢ ≥ 0`, `pᵢ = h·lᵢ/(2Lᵢ)`; only the all-zero
    /// triple is excluded, so the lowest level is threefold (1,0,0)-type.
    OctantWithZeroComponents,
    /// Same boundary condition but every `lᵢ ≥ 1`; lowest mode is (1,1,1).
    OctantInterior,
    /// ψ(0) = ψ(L), `lᵢ ∈ ℤ`, `pᵢ = h·lᵢ/Lᵢ`; all-zero triple excluded.
    Periodic,
}

/// Modes with energy at most `energy_max` (MeV) for a particle of rest
/// energy `mass_energy` (MeV) in the box, counted by exact enumeration of the
/// chosen lattice.
///
/// Counting is column-wise: for each `(lx, ly)` the largest admissible `lz`
/// is found directly, so the cost scales as `count^(2/3)`. Returns
/// [`StatmechError::OverflowGuard`] when the continuum estimate exceeds
/// `max_count`.
pub fn count_box_modes(
    dims: BoxDims,
    energy_max: f64,
    mass_energy: f64,
    lattice: ModeLattice,
    max_count: u64,
) -> Result<u64, StatmechError> {
    if !(dims.lx > 0.0 && dims.ly > 0.0 && dims.lz > 0.0) {
        return Err(StatmechError::InvalidInput(format!(
            "box lengths must be > 0, got {dims:?}"
        )));
    }
    if !(mass_energy >= 0.0) || !(energy_max >= mass_energy) {
        return Err(StatmechError::InvalidInput(format!(
            "need 0 <= mass_energy <= energy_max, got {mass_energy} and {energy_max}"
        )));
    }
    let estimate = continuum_mode_count(dims, energy_max, mass_energy);
    // boundary layer of the one-sided lattices is below 5·N^(2/3)
    if estimate + 5.0 * estimate.powf(2.0 / 3.0) > max_count as f64 {
        return Err(StatmechError::OverflowGuard {
            estimate,
            limit: max_count,
        });
    }

    // Σ (lᵢ/Lᵢ)² ≤ r2, with lᵢ/Lᵢ = 2pᵢ/h (octant) or pᵢ/h (periodic)
    let pc_max = (energy_max * energy_max - mass_energy * mass_energy).max(0.0).sqrt() * MEV;
    let p_max = pc_max / C;
    let k = match lattice {
        ModeLattice::Periodic => p_max / H,
        _ => 2.0 * p_max / H,
    };
    let r2 = k * k;
    let max_l = |len: f64| (k * len).floor() as i64;
    let (nx, ny) = (max_l(dims.lx), max_l(dims.ly));

    let column = |x: i64, y: i64| -> Option<i64> {
        let fx = x as f64 / dims.lx;
        let fy = y as f64 / dims.ly;
        let rest = r2 - fx * fx - fy * fy;
        if rest < 0.0 {
            return None;
        }
        let mut z = (dims.lz * rest.sqrt()).floor() as i64;
        let fits = |z: i64| {
            let fz = z as f64 / dims.lz;
            fz * fz <= rest
        };
        while z > 0 && !fits(z) {
            z -= 1;
        }
        while fits(z + 1) {
            z += 1;
        }
        Some(z)
    };

    let mut count: u64 = 0;
    match lattice {
        ModeLattice::OctantWithZeroComponents => {
            for x in 0..=nx {
                for y in 0..=ny {
                    match column(x, y) {
                        Some(z) => count += z as u64 + 1,
                        None => break,
                    }
                }
            }
            count = count.saturating_sub(1);
        }
        ModeLattice::OctantInterior => {
            for x in 1..=nx {
                for y in 1..=ny {
                    match column(x, y) {
                        Some(z) => count += z as u64,
                        None => break,
                    }
                }
            }
        }
        ModeLattice::Periodic => {
            for x in -nx..=nx {
                for y in -ny..=ny {
                    if let Some(z) = column(x.abs(), y.abs()) {
                        count += 2 * z as u64 + 1;
                    }
                }
            }
            count = count.saturating_sub(1);
        }
    }
    Ok(count)
}

/// V·4πp³/(3h³) for `p = √(E² − (mc²)²)/c`.
pub fn continuum_mode_count(dims: BoxDims, energy_max: f64, mass_energy: f64) -> f64 {
    let pc = (energy_max * energy_max - mass_energy * mass_energy).max(0.0).sqrt() * MEV;
    let p = pc / C;
    dims.volume() * 4.0 * PI * p.powi(3) / (3.0 * H.powi(3))
}

/// Counts of one energy shell under every lattice convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxModeCensus {
    pub octant_with_zero_components: u64,
    pub octant_interior: u64,
    pub periodic: u64,
    pub continuum: f64,
}

impl BoxModeCensus {
    /// Mean of the two octant counts; the boundary layers of the two
    /// conventions have opposite sign and nearly cancel.
    pub fn octant_midpoint(&self) -> f64 {
        0.5 * (self.octant_with_zero_components as f64 + self.octant_interior as f64)
    }
}

pub fn box_mode_census(
    dims: BoxDims,
    energy_max: f64,
    mass_energy: f64,
    max_count: u64,
) -> Result<BoxModeCensus, StatmechError> {
    let count = |l| count_box_modes(dims, energy_max, mass_energy, l, max_count);
    Ok(BoxModeCensus {
        octant_with_zero_components: count(ModeLattice::OctantWithZeroComponents)?,
        octant_interior: count(ModeLattice::OctantInterior)?,
        periodic: count(ModeLattice::Periodic)?,
        continuum: continuum_mode_count(dims, energy_max, mass_energy),
    })
}

/// dρ/dp = 4πp²/h³, modes per unit momentum per unit volume.
pub fn mode_density(p: f64) -> f64 {
    4.0 * PI * p * p / H.powi(3)
}

/// Density of virtual pairs per unit momentum per unit volume.
///
/// Numerically equal to [`mode_density`]: the ½ of the zero-point level is
/// compensated by the twofold degeneracy.
pub fn vacuum_density(p: f64) -> f64 {
    mode_density(p)
}

/// ħω(n + ½), in joules.
pub fn mode_energy(omega: f64, n: u64) -> f64 {
    HBAR * omega * (n as f64 + 0.5)
}

/// Temperature together with β = 1/(kT).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    temperature: f64,
    beta: f64,
}

impl ThermalState {
    pub fn new(temperature: f64) -> Result<Self, StatmechError> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(StatmechError::InvalidInput(format!(
                "temperature must be > 0 K, got {temperature}"
            )));
        }
        Ok(Self {
            temperature,
            beta: 1.0 / (K_B * temperature),
        })
    }

    pub fn from_beta(beta: f64) -> Result<Self, StatmechError> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(StatmechError::InvalidInput(format!(
                "beta must be > 0, got {beta}"
            )));
        }
        Ok(Self {
            temperature: 1.0 / (K_B * beta),
            beta,
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// kT in joules.
    pub fn kt(&self) -> f64 {
        1.0 / self.beta
    }

    /// ħω/(kT).
    pub fn reduced(&self, omega: f64) -> f64 {
        HBAR * omega * self.beta
    }
}

/// Z = e^{−x/2}/(1 − e^{−x}) with x = ħω/(kT).
pub fn partition_function(omega: f64, state: ThermalState) -> f64 {
    let x = state.reduced(omega);
    (-0.5 * x).exp() / -(-x).exp_m1()
}

/// log Z = −x/2 − log(1 − e^{−x}).
pub fn log_partition_function(omega: f64, state: ThermalState) -> f64 {
    let x = state.reduced(omega);
    -0.5 * x - (-(-x).exp_m1()).ln()
}

/// p(n) = e^{−nx}(1 − e^{−x}); the zero-point offset cancels.
pub fn state_probability(omega: f64, n: u64, state: ThermalState) -> f64 {
    let x = state.reduced(omega);
    (-(n as f64) * x).exp() * -(-x).exp_m1()
}

/// ⟨n⟩ = 1/(e^{x} − 1).
pub fn mean_occupation(omega: f64, state: ThermalState) -> f64 {
    1.0 / state.reduced(omega).exp_m1()
}

/// ⟨E⟩ = ħω(½ + ⟨n⟩), in joules.
pub fn mean_energy(omega: f64, state: ThermalState) -> f64 {
    HBAR * omega * (0.5 + mean_occupation(omega, state))
}

/// Planck energy density per unit momentum for photons (ε = pc, g = 2),
/// in J/m³ per kg·m/s. With `include_zero_point = false` only the thermal
/// occupation is kept.
pub fn planck_energy_density(p: f64, state: ThermalState, include_zero_point: bool) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    let eps = p * C;
    let occupation = 1.0 / (eps * state.beta).exp_m1();
    let level = if include_zero_point {
        0.5 + occupation
    } else {
        occupation
    };
    2.0 * mode_density(p) * eps * level
}

/// (π²/15)(kT)⁴/(ħc)³, the thermal energy density in J/m³.
pub fn stefan_boltzmann_density(state: ThermalState) -> f64 {
    PI * PI / 15.0 * state.kt().powi(4) / (HBAR * C).powi(3)
}

/// Thermal part of the Planck law integrated over all momenta.
pub fn thermal_energy_density(
    state: ThermalState,
    spec: QuadratureSpec,
) -> Result<f64, StatmechError> {
    let scale = state.kt() / C;
    Ok(numerics::integrate_semi_infinite(
        |p| planck_energy_density(p, state, false),
        0.0,
        scale,
        spec,
    )?)
}

/// x* = ħω*/(kT) at the maximum of the thermal spectral density, found by
/// golden-section search on [`planck_energy_density`].
pub fn wien_peak(state: ThermalState) -> Result<f64, StatmechError> {
    let scale = state.kt() / C;
    let x = numerics::maximize_unimodal(
        |x| planck_energy_density(x * scale, state, false),
        0.5,
        10.0,
        1e-10,
    )?;
    Ok(x)
}

/// What a [`SpectralSample`]'s abscissa measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Abscissa {
    /// p in kg·m/s; value in J/m³ per kg·m/s.
    Momentum,
    /// ω in rad/s; value in J/m³ per rad/s.
    AngularFrequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSample {
    pub abscissa: f64,
    pub value: f64,
    pub includes_zero_point: bool,
}

/// Samples the Planck law at the given photon energies `pc` (J).
pub fn spectral_curve(
    state: ThermalState,
    include_zero_point: bool,
    axis: Abscissa,
    photon_energies: impl IntoIterator<Item = f64>,
) -> Vec<SpectralSample> {
    photon_energies
        .into_iter()
        .map(|eps| {
            let p = eps / C;
            let w_p = planck_energy_density(p, state, include_zero_point);
            let (abscissa, value) = match axis {
                Abscissa::Momentum => (p, w_p),
                // p = ħω/c, so w_ω = w_p·ħ/c
                Abscissa::AngularFrequency => (eps / HBAR, w_p * HBAR / C),
            };
            SpectralSample {
                abscissa,
                value,
                includes_zero_point: include_zero_point,
            }
        })
        .collect()
}
