//! Vacuum response of virtual pairs: dipole moments, cutoff-regularized
//! permittivity (expressed as 1/α), cutoff fits, the average pair volume and
//! the magnetic-moment relations.
//!
//! Energies and `pc` are in MeV. SI appears only in the dipole, permittivity
//! and magnetic-moment outputs.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{mass_kg, mev_to_joule, reduced_compton_wavelength, C, HBAR, MEV, Q_E};
use crate::numerics::{self, NumericsError, QuadratureSpec, RootSpec};
use crate::species::{weighted_degeneracy_sum, ParticleSpecies, RegistryError, SpeciesRegistry};
use crate::statmech::{dispersion_energy, vacuum_density};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VacuumError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("species registry is empty")]
    EmptyRegistry,
    #[error("no cutoff given for species `{0}`")]
    MissingCutoff(String),
    #[error("negative radicand {0:e} MeV² in the Landau energy")]
    NegativeRadicand(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl From<RegistryError> for VacuumError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::EmptyRegistry => VacuumError::EmptyRegistry,
            other => VacuumError::InvalidInput(other.to_string()),
        }
    }
}

/// Level spacing ħω of the pair oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OscillatorModel {
    /// ħω = ε(p) = 2√((mc²)² + (pc)²): the energy that makes the pair real.
    ModeQuantum,
    /// ħω = 2mc², independent of momentum.
    FixedGap,
}

impl OscillatorModel {
    /// ħω in MeV for a pair whose members carry momentum `pc` (MeV).
    pub fn level_spacing(self, mass_energy: f64, pc: f64) -> f64 {
        match self {
            OscillatorModel::ModeQuantum => 2.0 * dispersion_energy(mass_energy, pc),
            OscillatorModel::FixedGap => 2.0 * mass_energy,
        }
    }

    /// ω in rad/s.
    pub fn omega(self, mass_energy: f64, pc: f64) -> f64 {
        mev_to_joule(self.level_spacing(mass_energy, pc)) / HBAR
    }
}

/// Largest two-level transition dipole q_e⟨ψ₁|x|ψ₀⟩ = q_e√(ħ/(2mω)), in C·m.
pub fn dipole_max(mass_energy: f64, omega: f64) -> f64 {
    Q_E * (HBAR / (2.0 * mass_kg(mass_energy) * omega)).sqrt()
}

/// Time-averaged induced dipole q_e²E/(mω²) = 2d_max²E/(ħω), in C·m.
pub fn dipole_time_averaged(mass_energy: f64, omega: f64, field_e: f64) -> f64 {
    Q_E * Q_E / (mass_kg(mass_energy) * omega * omega) * field_e
}

/// x − arctan x, accurate for small x where the difference cancels.
pub fn x_minus_atan(x: f64) -> f64 {
    if x.abs() < 0.1 {
        // x³/3 − x⁵/5 + x⁷/7 − …
        let x2 = x * x;
        let mut term = x * x2;
        let mut sum = 0.0;
        for k in 0..12 {
            let denom = f64::from(2 * k + 3);
            let t = term / denom;
            sum += if k % 2 == 0 { t } else { -t };
            term *= x2;
        }
        sum
    } else {
        x - x.atan()
    }
}

/// Contribution of one species to 1/α with momentum cutoff `cutoff_mev`
/// and the momentum-dependent level spacing:
/// (1/2π)·Qᵢ²cᵢ(gᵢ/2)·[A/mc² − arctan(A/mc²)].
pub fn inverse_alpha_single(species: &ParticleSpecies, cutoff_mev: f64) -> f64 {
    species.weight() / (2.0 * PI) * x_minus_atan(cutoff_mev / species.mass_mev)
}

/// Same contribution by direct quadrature of (pc)²/((pc)² + (mc²)²).
pub fn inverse_alpha_single_quadrature(
    species: &ParticleSpecies,
    cutoff_mev: f64,
    spec: QuadratureSpec,
) -> Result<f64, VacuumError> {
    let m = species.mass_mev;
    let m2 = m * m;
    let integral = numerics::integrate(|pc| pc * pc / (pc * pc + m2), 0.0, cutoff_mev, spec)?;
    Ok(species.weight() / (2.0 * PI) * integral / m)
}

/// How the momentum cutoff is assigned to each species.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CutoffPolicy {
    /// One cutoff A (MeV) for every species.
    GlobalConstant { cutoff_mev: f64 },
    /// A cutoff Aᵢ (MeV) per species name.
    PerSpecies { cutoffs_mev: BTreeMap<String, f64> },
    /// Aᵢ = a·mᵢc² with the fixed level spacing ħω = 2mc².
    MassProportional { a: f64 },
}

impl CutoffPolicy {
    pub fn validate(&self) -> Result<(), VacuumError> {
        let bad = |what: &str, v: f64| {
            VacuumError::InvalidInput(format!("{what} must be > 0, got {v}"))
        };
        match self {
            CutoffPolicy::GlobalConstant { cutoff_mev } if !(*cutoff_mev > 0.0) => {
                Err(bad("cutoff", *cutoff_mev))
            }
            CutoffPolicy::MassProportional { a } if !(*a > 0.0) => Err(bad("a", *a)),
            CutoffPolicy::PerSpecies { cutoffs_mev } => {
                for (name, &v) in cutoffs_mev {
                    if !(v > 0.0) {
                        return Err(bad(&format!("cutoff for {name}"), v));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Cutoff for one species, in MeV.
    pub fn cutoff_for(&self, species: &ParticleSpecies) -> Result<f64, VacuumError> {
        match self {
            CutoffPolicy::GlobalConstant { cutoff_mev } => Ok(*cutoff_mev),
            CutoffPolicy::PerSpecies { cutoffs_mev } => cutoffs_mev
                .get(&species.name)
                .copied()
                .ok_or_else(|| VacuumError::MissingCutoff(species.name.clone())),
            CutoffPolicy::MassProportional { a } => Ok(a * species.mass_mev),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CutoffPolicy::GlobalConstant { .. } => "global",
            CutoffPolicy::PerSpecies { .. } => "per-species",
            CutoffPolicy::MassProportional { .. } => "mass-proportional",
        }
    }
}

/// Per-species cutoffs with quarks capped at `quark_cutoff_mev` (the chiral
/// symmetry breaking scale) and every other species at `other_cutoff_mev`.
pub fn chiral_policy(
    reg: &SpeciesRegistry,
    other_cutoff_mev: f64,
    quark_cutoff_mev: f64,
) -> CutoffPolicy {
    let cutoffs_mev = reg
        .iter()
        .map(|s| {
            let a = if s.color_factor == 3 {
                quark_cutoff_mev
            } else {
                other_cutoff_mev
            };
            (s.name.clone(), a)
        })
        .collect();
    CutoffPolicy::PerSpecies { cutoffs_mev }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesContribution {
    pub species: String,
    pub cutoff_mev: f64,
    pub contribution: f64,
    pub percent_of_total: f64,
}

/// 1/α and its decomposition by species, in registry order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaBreakdown {
    pub policy: CutoffPolicy,
    pub total_inverse_alpha: f64,
    pub per_species: Vec<SpeciesContribution>,
}

impl AlphaBreakdown {
    pub fn contribution(&self, name: &str) -> Option<f64> {
        self.per_species
            .iter()
            .find(|c| c.species == name)
            .map(|c| c.contribution)
    }

    /// Species names ordered by decreasing contribution.
    pub fn ranking(&self) -> Vec<&str> {
        let mut v: Vec<_> = self.per_species.iter().collect();
        v.sort_by(|a, b| b.contribution.total_cmp(&a.contribution));
        v.into_iter().map(|c| c.species.as_str()).collect()
    }
}

/// 1/α summed over the registry under `policy`.
///
/// `GlobalConstant` and `PerSpecies` use the momentum-dependent spacing and
/// the arctan closed form; `MassProportional` uses the fixed spacing, which
/// gives the cubic closed form Qᵢ²cᵢ(gᵢ/2)a³/(6π).
pub fn inverse_alpha_total(
    reg: &SpeciesRegistry,
    policy: &CutoffPolicy,
) -> Result<AlphaBreakdown, VacuumError> {
    if reg.is_empty() {
        return Err(VacuumError::EmptyRegistry);
    }
    policy.validate()?;
    let mut rows = Vec::with_capacity(reg.len());
    for s in reg {
        let cutoff = policy.cutoff_for(s)?;
        let contribution = match policy {
            CutoffPolicy::MassProportional { a } => s.weight() * a.powi(3) / (6.0 * PI),
            _ => inverse_alpha_single(s, cutoff),
        };
        rows.push((s.name.clone(), cutoff, contribution));
    }
    let total: f64 = rows.iter().map(|r| r.2).sum();
    let per_species = rows
        .into_iter()
        .map(|(species, cutoff_mev, contribution)| SpeciesContribution {
            species,
            cutoff_mev,
            contribution,
            percent_of_total: 100.0 * contribution / total,
        })
        .collect();
    Ok(AlphaBreakdown {
        policy: policy.clone(),
        total_inverse_alpha: total,
        per_species,
    })
}

/// (1/2π)·S·a³/3 with S the weighted degeneracy sum.
pub fn inverse_alpha_fixed_gap(reg: &SpeciesRegistry, a: f64) -> Result<f64, VacuumError> {
    let s = weighted_degeneracy_sum(reg)?;
    Ok(s * a.powi(3) / (6.0 * PI))
}

/// Fixed-gap 1/α computed the long way: the constant polarizability
/// q_e²/(mω²) times the vacuum pair density integrated up to p = a·mc,
/// converted with 1/α = 4πε₀ħc/q_e².
pub fn inverse_alpha_fixed_gap_via_density(
    reg: &SpeciesRegistry,
    a: f64,
    spec: QuadratureSpec,
) -> Result<f64, VacuumError> {
    if reg.is_empty() {
        return Err(VacuumError::EmptyRegistry);
    }
    let mut total = 0.0;
    for s in reg {
        let omega = OscillatorModel::FixedGap.omega(s.mass_mev, 0.0);
        let polarizability = Q_E * Q_E / (mass_kg(s.mass_mev) * omega * omega);
        let p_max = mev_to_joule(a * s.mass_mev) / C;
        let density = numerics::integrate(vacuum_density, 0.0, p_max, spec)?;
        let eps0 = s.weight() * polarizability * density;
        total += eps0 * 4.0 * PI * HBAR * C / (Q_E * Q_E);
    }
    Ok(total)
}

/// Permittivity contribution ε₀ of one species (F/m) by quadrature of
/// the pair density times the induced polarizability q_e²/(mω(p)²) up to
/// `cutoff_mev`.
pub fn permittivity_contribution(
    species: &ParticleSpecies,
    cutoff_mev: f64,
    model: OscillatorModel,
    spec: QuadratureSpec,
) -> Result<f64, VacuumError> {
    let m = mass_kg(species.mass_mev);
    let p_max = mev_to_joule(cutoff_mev) / C;
    let integrand = |p: f64| {
        let omega = model.omega(species.mass_mev, p * C / MEV);
        vacuum_density(p) * Q_E * Q_E / (m * omega * omega)
    };
    Ok(species.weight() * numerics::integrate(integrand, 0.0, p_max, spec)?)
}

/// Which cutoff family a fit solves for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutoffKind {
    GlobalConstant,
    MassProportional,
}

/// Tolerance on a fitted global cutoff, MeV.
pub const CUTOFF_TOL_MEV: f64 = 1e-4;
/// Tolerance on a fitted mass-proportionality factor.
pub const FACTOR_TOL: f64 = 1e-8;

/// Finds the cutoff that makes 1/α equal `target_inverse_alpha`.
///
/// The global cutoff is found by bracketing root search; the mass-
/// proportional factor has the closed form a = ∛(6π·target/S).
pub fn fit_cutoff(
    reg: &SpeciesRegistry,
    target_inverse_alpha: f64,
    kind: CutoffKind,
) -> Result<CutoffPolicy, VacuumError> {
    if !(target_inverse_alpha > 0.0) {
        return Err(VacuumError::InvalidInput(format!(
            "target must be > 0, got {target_inverse_alpha}"
        )));
    }
    if reg.is_empty() {
        return Err(VacuumError::EmptyRegistry);
    }
    match kind {
        CutoffKind::GlobalConstant => {
            let total = |a: f64| -> f64 {
                reg.iter().map(|s| inverse_alpha_single(s, a)).sum::<f64>()
            };
            let lightest = reg
                .iter()
                .map(|s| s.mass_mev)
                .fold(f64::INFINITY, f64::min);
            let lo = lightest * 1e-6;
            let mut hi = lightest;
            // 1/α grows without bound in A, so doubling always brackets
            while total(hi) < target_inverse_alpha {
                hi *= 2.0;
                if !hi.is_finite() {
                    return Err(VacuumError::Numerics(NumericsError::NoSignChange {
                        lo,
                        hi,
                        g_lo: total(lo) - target_inverse_alpha,
                        g_hi: f64::NAN,
                    }));
                }
            }
            let a = numerics::find_root(
                |a| total(a) - target_inverse_alpha,
                RootSpec::new(lo, hi, CUTOFF_TOL_MEV),
            )?;
            Ok(CutoffPolicy::GlobalConstant { cutoff_mev: a })
        }
        CutoffKind::MassProportional => {
            let s = weighted_degeneracy_sum(reg)?;
            Ok(CutoffPolicy::MassProportional {
                a: (6.0 * PI * target_inverse_alpha / s).cbrt(),
            })
        }
    }
}

/// The mass-proportional factor found by root search on
/// [`inverse_alpha_fixed_gap`] instead of the cube root.
pub fn fit_mass_factor_by_root(
    reg: &SpeciesRegistry,
    target_inverse_alpha: f64,
) -> Result<f64, VacuumError> {
    let s = weighted_degeneracy_sum(reg)?;
    let g = |a: f64| s * a.powi(3) / (6.0 * PI) - target_inverse_alpha;
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    Ok(numerics::find_root(g, RootSpec::new(0.0, hi, FACTOR_TOL))?)
}

/// Chiral policy whose non-quark cutoff is fitted to the target while the
/// quarks stay capped at `quark_cutoff_mev`.
pub fn fit_chiral_cutoff(
    reg: &SpeciesRegistry,
    target_inverse_alpha: f64,
    quark_cutoff_mev: f64,
) -> Result<CutoffPolicy, VacuumError> {
    if !(quark_cutoff_mev > 0.0) {
        return Err(VacuumError::InvalidInput(format!(
            "quark cutoff must be > 0, got {quark_cutoff_mev}"
        )));
    }
    let (quarks, others): (Vec<_>, Vec<_>) = reg.iter().partition(|s| s.color_factor == 3);
    if others.is_empty() {
        return Err(VacuumError::InvalidInput(
            "registry has no colorless species to fit".into(),
        ));
    }
    let fixed: f64 = quarks
        .iter()
        .map(|s| inverse_alpha_single(s, quark_cutoff_mev))
        .sum();
    let rest = target_inverse_alpha - fixed;
    if !(rest > 0.0) {
        return Err(VacuumError::InvalidInput(format!(
            "quarks alone give 1/alpha = {fixed}, above the target {target_inverse_alpha}"
        )));
    }
    let g = |a: f64| others.iter().map(|s| inverse_alpha_single(s, a)).sum::<f64>() - rest;
    let lightest = others.iter().map(|s| s.mass_mev).fold(f64::INFINITY, f64::min);
    let mut hi = lightest;
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    let a = numerics::find_root(g, RootSpec::new(lightest * 1e-6, hi, CUTOFF_TOL_MEV))?;
    Ok(chiral_policy(reg, a, quark_cutoff_mev))
}

/// ⟨V⟩ = 1/n = (6π²/a³)·λ_C³ in m³, with λ_C = ħ/(mc).
pub fn average_pair_volume(species: &ParticleSpecies, a: f64) -> f64 {
    6.0 * PI * PI / a.powi(3) * reduced_compton_wavelength(species.mass_mev).powi(3)
}

/// ⟨V⟩ as the inverse of the vacuum density integrated to p = a·mc.
pub fn average_pair_volume_by_density(
    species: &ParticleSpecies,
    a: f64,
    spec: QuadratureSpec,
) -> Result<f64, VacuumError> {
    let p_max = mev_to_joule(a * species.mass_mev) / C;
    Ok(1.0 / numerics::integrate(vacuum_density, 0.0, p_max, spec)?)
}

/// ε₀ and 1/μ₀ implied by a value of 1/α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumConstants {
    /// F/m
    pub epsilon0: f64,
    /// 1/μ₀ in m/H
    pub inv_mu0: f64,
    /// √((1/μ₀)/ε₀); `None` when both vanish and the speed is undefined.
    pub speed_of_light: Option<f64>,
}

pub fn permeability_from_alpha(inverse_alpha: f64) -> Result<VacuumConstants, VacuumError> {
    if !(inverse_alpha >= 0.0 && inverse_alpha.is_finite()) {
        return Err(VacuumError::InvalidInput(format!(
            "inverse alpha must be >= 0, got {inverse_alpha}"
        )));
    }
    let epsilon0 = inverse_alpha * Q_E * Q_E / (4.0 * PI * HBAR * C);
    let inv_mu0 = epsilon0 * C * C;
    let speed_of_light = (epsilon0 > 0.0).then(|| (inv_mu0 / epsilon0).sqrt());
    Ok(VacuumConstants {
        epsilon0,
        inv_mu0,
        speed_of_light,
    })
}

/// β = q_eħ/(2ε_f/c²) in J/T; the Bohr magneton at ε_f = m_ec².
pub fn relativistic_magnetic_moment(fermion_energy_mev: f64) -> f64 {
    Q_E * HBAR * C * C / (2.0 * mev_to_joule(fermion_energy_mev))
}

/// Pair "distance" x = ħ/(ε_f/c), in metres.
pub fn pair_separation(fermion_energy_mev: f64) -> f64 {
    HBAR * C / mev_to_joule(fermion_energy_mev)
}

/// Classical pair dipole d = Q·q_e·x (C·m) at the separation above.
pub fn pair_electric_dipole(charge_q: f64, fermion_energy_mev: f64) -> f64 {
    charge_q * Q_E * pair_separation(fermion_energy_mev)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LandauForm {
    Relativistic,
    FirstOrder,
    NonRelativistic,
}

/// Spin projection s = ±½.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }
}

/// Energy (MeV) of a charged fermion in Landau level `n` of a field `b_tesla`
/// with longitudinal momentum `p_z_c` (MeV).
///
/// All three forms include the rest energy; the non-relativistic form is
/// mc² + p_z²/(2m) + (q_eħB/2m)(2n + 1 − gs).
pub fn landau_energy(
    mass_energy: f64,
    p_z_c: f64,
    b_tesla: f64,
    n: u32,
    g_lande: f64,
    spin: Spin,
    form: LandauForm,
) -> Result<f64, VacuumError> {
    if !(mass_energy > 0.0) || !(b_tesla >= 0.0) {
        return Err(VacuumError::InvalidInput(format!(
            "need mass_energy > 0 and B >= 0, got {mass_energy}, {b_tesla}"
        )));
    }
    let level = 2.0 * f64::from(n) + 1.0 - g_lande * spin.value();
    // q_e ħ c² B in MeV²
    let field = Q_E * HBAR * C * C * b_tesla / (MEV * MEV);
    let eps_f = dispersion_energy(mass_energy, p_z_c);
    match form {
        LandauForm::Relativistic => {
            let radicand = eps_f * eps_f + field * level;
            if radicand < 0.0 {
                return Err(VacuumError::NegativeRadicand(radicand));
            }
            Ok(radicand.sqrt())
        }
        LandauForm::FirstOrder => Ok(eps_f + field / (2.0 * eps_f) * level),
        LandauForm::NonRelativistic => Ok(mass_energy
            + p_z_c * p_z_c / (2.0 * mass_energy)
            + field / (2.0 * mass_energy) * level),
    }
}
