//! End-to-end reproduction table: recomputes every headline number and
//! checks it against the thresholds in [`crate::tolerances`].

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{C, H, HBAR, MEV};
use crate::dispersion::{
    self, analytic_sigma, compare_coefficient, compare_to_limits, fwhm_from_rms, pulse_broadening,
    simulate_flight, FlightConfig, FlightError, LifetimeModel, SamplingPath, Verdict,
};
use crate::numerics::QuadratureSpec;
use crate::species::{
    default_registry, weighted_degeneracy_sum, ParticleSpecies, RegistryError, SpeciesRegistry,
};
use crate::statmech::{
    self, box_mode_census, BoxDims, StatmechError, ThermalState,
};
use crate::tolerances as tol;
use crate::vacuum::{
    average_pair_volume, chiral_policy, fit_cutoff, inverse_alpha_single,
    inverse_alpha_single_quadrature, inverse_alpha_total, CutoffKind, CutoffPolicy, VacuumError,
};

const FS: f64 = 1e-15;
const AS: f64 = 1e-18;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Vacuum(#[from] VacuumError),
    #[error(transparent)]
    Statmech(#[from] StatmechError),
    #[error(transparent)]
    Flight(#[from] FlightError),
    #[error("registry has no `{0}` entry")]
    MissingSpecies(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Derived,
    Trivial,
}

/// Pass rule attached to a row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Check {
    /// |computed − target| ≤ tol
    Within { target: f64, tol: f64 },
    /// computed ≤ limit
    AtMost { limit: f64 },
    /// computed < limit
    Below { limit: f64 },
    /// computed == target
    Exact { target: f64 },
    /// computed is 1 (true) or 0 (false)
    Holds,
}

impl Check {
    pub fn passes(&self, computed: f64) -> bool {
        match *self {
            Check::Within { target, tol } => (computed - target).abs() <= tol,
            Check::AtMost { limit } => computed <= limit,
            Check::Below { limit } => computed < limit,
            Check::Exact { target } => computed == target,
            Check::Holds => computed == 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Acceptance criterion number, when the row gates one.
    pub criterion: Option<u8>,
    pub quantity: String,
    pub computed: f64,
    pub unit: String,
    pub paper_value: Option<f64>,
    pub rel_diff: Option<f64>,
    pub provenance: Provenance,
    pub check: Option<Check>,
    pub pass: Option<bool>,
    pub note: Option<String>,
}

impl ReportRow {
    fn new(quantity: impl Into<String>, computed: f64, unit: &str, provenance: Provenance) -> Self {
        Self {
            criterion: None,
            quantity: quantity.into(),
            computed,
            unit: unit.to_string(),
            paper_value: None,
            rel_diff: None,
            provenance,
            check: None,
            pass: None,
            note: None,
        }
    }

    fn quoted(mut self, value: f64) -> Self {
        self.paper_value = Some(value);
        self.rel_diff = Some((self.computed - value) / value);
        self
    }

    fn gate(mut self, criterion: u8, check: Check) -> Self {
        self.criterion = Some(criterion);
        self.pass = Some(check.passes(self.computed));
        self.check = Some(check);
        self
    }

    /// Gate on a condition that is not a comparison of `computed`.
    fn verdict(mut self, criterion: u8, holds: bool) -> Self {
        self.criterion = Some(criterion);
        self.check = Some(Check::Holds);
        self.pass = Some(holds);
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tolerance_table_version: u32,
    pub seed: u64,
    pub all_pass: bool,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn failing(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.pass == Some(false))
    }
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub registry: SpeciesRegistry,
    pub inverse_alpha_target: f64,
    pub seed: u64,
    pub photons: u64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            registry: default_registry(),
            inverse_alpha_target: tol::TARGET_INVERSE_ALPHA,
            seed: 7,
            photons: tol::MC_PHOTONS,
        }
    }
}

pub fn build_report(cfg: &ReportConfig) -> Result<Report, ReportError> {
    let mut rows = Vec::new();
    alpha_rows(cfg, &mut rows)?;
    statmech_rows(cfg, &mut rows)?;
    dispersion_rows(cfg, &mut rows)?;
    let all_pass = rows.iter().all(|r| r.pass != Some(false));
    Ok(Report {
        tolerance_table_version: tol::TABLE_VERSION,
        seed: cfg.seed,
        all_pass,
        rows,
    })
}

fn species<'a>(reg: &'a SpeciesRegistry, name: &'static str) -> Result<&'a ParticleSpecies, ReportError> {
    reg.get(name).ok_or(ReportError::MissingSpecies(name))
}

fn alpha_rows(cfg: &ReportConfig, rows: &mut Vec<ReportRow>) -> Result<(), ReportError> {
    let reg = &cfg.registry;
    let target = cfg.inverse_alpha_target;

    let s = weighted_degeneracy_sum(reg)?;
    rows.push(
        ReportRow::new("weighted degeneracy sum", s, "1", Provenance::Paper)
            .quoted(9.5)
            .gate(1, Check::Exact { target: tol::DEGENERACY_SUM }),
    );

    let global = fit_cutoff(reg, target, CutoffKind::GlobalConstant)?;
    let a_global = match global {
        CutoffPolicy::GlobalConstant { cutoff_mev } => cutoff_mev,
        _ => unreachable!("global fit returns a global cutoff"),
    };
    rows.push(
        ReportRow::new("global cutoff A", a_global, "MeV", Provenance::Paper)
            .quoted(292.0)
            .gate(
                2,
                Check::Within {
                    target: tol::GLOBAL_CUTOFF_MEV,
                    tol: tol::GLOBAL_CUTOFF_TOL_MEV,
                },
            ),
    );
    let breakdown = inverse_alpha_total(reg, &global)?;
    let ranking = breakdown.ranking();
    let share = |name: &str| {
        breakdown
            .per_species
            .iter()
            .find(|c| c.species == name)
            .map_or(0.0, |c| c.percent_of_total)
    };
    rows.push(
        ReportRow::new("electron share of 1/alpha at fitted A", share("e"), "%", Provenance::Paper)
            .verdict(2, ranking.first() == Some(&"e"))
            .note(format!("ranking: {}", ranking.join(" > "))),
    );
    rows.push(
        ReportRow::new("u-quark share of 1/alpha at fitted A", share("u"), "%", Provenance::Paper)
            .verdict(2, ranking.get(1) == Some(&"u")),
    );
    let (minor_name, minor_share) = ranking
        .iter()
        .skip(2)
        .map(|n| (*n, share(n)))
        .fold(("", f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    rows.push(
        ReportRow::new("largest remaining species share", minor_share, "%", Provenance::Paper)
            .gate(2, Check::Below { limit: tol::MINOR_SPECIES_MAX_PERCENT })
            .note(format!("species: {minor_name}")),
    );
    for delta in [-0.5, 0.5] {
        if let CutoffPolicy::GlobalConstant { cutoff_mev } =
            fit_cutoff(reg, target + delta, CutoffKind::GlobalConstant)?
        {
            rows.push(
                ReportRow::new(
                    format!("global cutoff A at 1/alpha {:+}", delta),
                    cutoff_mev,
                    "MeV",
                    Provenance::Derived,
                )
                .note("sensitivity of the fit to the target value"),
            );
        }
    }
    let at_rest = inverse_alpha_total(
        reg,
        &CutoffPolicy::GlobalConstant {
            cutoff_mev: species(reg, "e")?.mass_mev,
        },
    )?;
    rows.push(
        ReportRow::new(
            "1/alpha fraction reached at A = m_e c^2",
            at_rest.total_inverse_alpha / target,
            "1",
            Provenance::Paper,
        )
        .quoted(1e-3)
        .note("quoted as 0.1%; the closed form gives the computed value"),
    );
    let chiral = inverse_alpha_total(reg, &chiral_policy(reg, a_global, 100.0))?;
    rows.push(
        ReportRow::new(
            "1/alpha deficit with quark cutoff 100 MeV",
            target - chiral.total_inverse_alpha,
            "1",
            Provenance::Derived,
        )
        .note("leptons and W keep the fitted global cutoff"),
    );

    let electron = species(reg, "e")?;
    let electron_only = reg.subset(&["e"])?;
    if let CutoffPolicy::GlobalConstant { cutoff_mev } =
        fit_cutoff(&electron_only, target, CutoffKind::GlobalConstant)?
    {
        rows.push(
            ReportRow::new("electron-only cutoff A/m_e c^2", cutoff_mev / electron.mass_mev, "1", Provenance::Derived)
                .quoted(861.0)
                .gate(
                    3,
                    Check::Within {
                        target: tol::ELECTRON_CUTOFF_RATIO,
                        tol: tol::ELECTRON_CUTOFF_RATIO_TOL,
                    },
                ),
        );
    }
    rows.push(
        ReportRow::new(
            "1/alpha at A = 861 m_e c^2 (electron only)",
            inverse_alpha_single(electron, 861.0 * electron.mass_mev),
            "1",
            Provenance::Derived,
        )
        .gate(
            3,
            Check::Within {
                target: tol::INVERSE_ALPHA_AT_861,
                tol: tol::INVERSE_ALPHA_AT_861_TOL,
            },
        ),
    );

    let a = match fit_cutoff(reg, target, CutoffKind::MassProportional)? {
        CutoffPolicy::MassProportional { a } => a,
        _ => unreachable!("mass-proportional fit returns a factor"),
    };
    rows.push(
        ReportRow::new("mass-proportional factor a", a, "1", Provenance::Paper)
            .quoted(6.5)
            .gate(4, Check::Within { target: tol::MASS_FACTOR, tol: tol::MASS_FACTOR_TOL }),
    );
    let lambda_c = crate::constants::reduced_compton_wavelength(electron.mass_mev);
    let v_ratio = average_pair_volume(electron, a) / lambda_c.powi(3);
    rows.push(
        ReportRow::new("average pair volume <V>/lambda_C^3", v_ratio, "1", Provenance::Paper)
            .quoted(0.22)
            .gate(
                4,
                Check::Within {
                    target: tol::PAIR_VOLUME_RATIO,
                    tol: tol::PAIR_VOLUME_RATIO_TOL,
                },
            ),
    );

    let worst = quadrature_vs_closed_form(cfg.seed, tol::QUADRATURE_PAIRS)?;
    rows.push(
        ReportRow::new("max rel. diff quadrature vs arctan form", worst, "1", Provenance::Derived)
            .gate(5, Check::Below { limit: tol::QUADRATURE_REL_TOL })
            .note(format!("{} randomized (m, A) pairs", tol::QUADRATURE_PAIRS)),
    );
    Ok(())
}

/// Worst relative disagreement between the arctan closed form and direct
/// quadrature over randomized unit-charge species and cutoffs.
pub fn quadrature_vs_closed_form(seed: u64, pairs: usize) -> Result<f64, ReportError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = default_registry().electron().cloned().ok_or(ReportError::MissingSpecies("e"))?;
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let mut s = base.clone();
        s.mass_mev = 10f64.powf(rng.random_range(-1.0..5.3));
        let cutoff = s.mass_mev * 10f64.powf(rng.random_range(-2.0..4.0));
        let closed = inverse_alpha_single(&s, cutoff);
        let quad = inverse_alpha_single_quadrature(&s, cutoff, QuadratureSpec::default())?;
        worst = worst.max((quad / closed - 1.0).abs());
    }
    Ok(worst)
}

fn statmech_rows(cfg: &ReportConfig, rows: &mut Vec<ReportRow>) -> Result<(), ReportError> {
    for t in tol::STEFAN_BOLTZMANN_TEMPERATURES_K {
        let state = ThermalState::new(t)?;
        let numeric = statmech::thermal_energy_density(state, QuadratureSpec::default())?;
        let exact = statmech::stefan_boltzmann_density(state);
        rows.push(
            ReportRow::new(
                format!("Planck thermal integral / Stefan-Boltzmann - 1 at {t} K"),
                (numeric / exact - 1.0).abs(),
                "1",
                Provenance::Trivial,
            )
            .gate(6, Check::Below { limit: tol::STEFAN_BOLTZMANN_REL_TOL }),
        );
    }
    let x = statmech::wien_peak(ThermalState::new(5000.0)?)?;
    rows.push(
        ReportRow::new("Wien peak x* = hbar omega/kT", x, "1", Provenance::Derived)
            .gate(6, Check::Within { target: tol::WIEN_X, tol: tol::WIEN_X_TOL }),
    );

    let box_check = box_mode_check(&[1.2e5, 1e6, 1e7])?;
    rows.push(
        ReportRow::new("box modes: max |periodic/continuum - 1|", box_check.periodic, "1", Provenance::Derived)
            .gate(7, Check::Below { limit: tol::BOX_MODE_REL_TOL })
            .note("counts from 1.2e5 to 1e7"),
    );
    rows.push(
        ReportRow::new(
            "box modes: max |octant midpoint/continuum - 1|",
            box_check.octant_midpoint,
            "1",
            Provenance::Derived,
        )
        .gate(7, Check::Below { limit: tol::BOX_MODE_REL_TOL }),
    );
    let mut bracket = ReportRow::new(
        "box modes: octant counts bracket the continuum",
        f64::from(u8::from(box_check.bracketed)),
        "1",
        Provenance::Derived,
    )
    .gate(7, Check::Holds);
    bracket.note = Some(format!(
        "at 1.2e5 modes: with zero components {:+.4}, interior {:+.4}",
        box_check.smallest_with_zero, box_check.smallest_interior
    ));
    rows.push(bracket);

    let (fd, psum) = thermal_identity_check(cfg.seed, tol::FINITE_DIFFERENCE_SAMPLES)?;
    rows.push(
        ReportRow::new("max rel. diff <E> vs -dlogZ/dbeta", fd, "1", Provenance::Derived)
            .gate(8, Check::Below { limit: tol::FINITE_DIFFERENCE_REL_TOL }),
    );
    rows.push(
        ReportRow::new("max |sum of state probabilities - 1|", psum, "1", Provenance::Trivial)
            .gate(8, Check::AtMost { limit: tol::PROBABILITY_SUM_TOL }),
    );
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct BoxModeCheck {
    pub periodic: f64,
    pub octant_midpoint: f64,
    pub bracketed: bool,
    pub smallest_with_zero: f64,
    pub smallest_interior: f64,
}

/// Massless modes in a cube counted under every lattice at the requested
/// continuum counts; returns worst relative deviations.
pub fn box_mode_check(target_counts: &[f64]) -> Result<BoxModeCheck, ReportError> {
    let side = 1e-12;
    let dims = BoxDims::cube(side);
    let mut out = BoxModeCheck {
        periodic: 0.0,
        octant_midpoint: 0.0,
        bracketed: true,
        smallest_with_zero: 0.0,
        smallest_interior: 0.0,
    };
    for (i, &n) in target_counts.iter().enumerate() {
        // N = πk³/6 with k = 2pL/h
        let k = (6.0 * n / PI).cbrt();
        let energy = k * H * C / (2.0 * side) / MEV;
        let census = box_mode_census(dims, energy, 0.0, u64::MAX / 4)?;
        let dev = |v: f64| v / census.continuum - 1.0;
        out.periodic = out.periodic.max(dev(census.periodic as f64).abs());
        out.octant_midpoint = out.octant_midpoint.max(dev(census.octant_midpoint()).abs());
        out.bracketed &= (census.octant_interior as f64) <= census.continuum
            && census.continuum <= census.octant_with_zero_components as f64;
        if i == 0 {
            out.smallest_with_zero = dev(census.octant_with_zero_components as f64);
            out.smallest_interior = dev(census.octant_interior as f64);
        }
    }
    Ok(out)
}

/// Worst finite-difference mismatch of ⟨E⟩ against −d(log Z)/dβ, and worst
/// deviation of Σₙp(n) from 1, over randomized (ω, T).
pub fn thermal_identity_check(seed: u64, samples: usize) -> Result<(f64, f64), ReportError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut fd_worst, mut sum_worst): (f64, f64) = (0.0, 0.0);
    for _ in 0..samples {
        let omega = 10f64.powf(rng.random_range(11.0..17.0));
        let x = 10f64.powf(rng.random_range(-1.3..1.3));
        let state = ThermalState::from_beta(x / (HBAR * omega))?;
        let beta = state.beta();
        let h = 1e-6 * beta;
        let up = ThermalState::from_beta(beta + h)?;
        let down = ThermalState::from_beta(beta - h)?;
        let fd = -(statmech::log_partition_function(omega, up)
            - statmech::log_partition_function(omega, down))
            / (2.0 * h);
        let e = statmech::mean_energy(omega, state);
        fd_worst = fd_worst.max((fd / e - 1.0).abs());
        let total: f64 = (0..1000).map(|n| statmech::state_probability(omega, n, state)).sum();
        sum_worst = sum_worst.max((total - 1.0).abs());
    }
    Ok((fd_worst, sum_worst))
}

fn dispersion_rows(cfg: &ReportConfig, rows: &mut Vec<ReportRow>) -> Result<(), ReportError> {
    let hc = analytic_sigma(&LifetimeModel::HalfCompton, 1.0) / FS;
    rows.push(
        ReportRow::new("sigma_T half-Compton lifetime", hc, "fs/m^0.5", Provenance::Paper)
            .quoted(1.5)
            .gate(
                9,
                Check::Within {
                    target: tol::HALF_COMPTON_SIGMA_FS,
                    tol: tol::HALF_COMPTON_SIGMA_TOL_FS,
                },
            ),
    );
    let uk = analytic_sigma(&LifetimeModel::urban_k(), 1.0) / FS;
    rows.push(
        ReportRow::new("sigma_T K = 31.9 lifetime", uk, "fs/m^0.5", Provenance::Paper)
            .quoted(0.26)
            .gate(9, Check::Within { target: tol::URBAN_K_SIGMA_FS, tol: tol::URBAN_K_SIGMA_TOL_FS }),
    );
    let qs = analytic_sigma(&LifetimeModel::Quasistationary, 1.0) / 1e-9;
    rows.push(
        ReportRow::new("sigma_T quasi-stationary lifetime", qs, "ns/m^0.5", Provenance::Paper)
            .quoted(0.46)
            .gate(
                9,
                Check::Within {
                    target: tol::QUASISTATIONARY_SIGMA_NS,
                    tol: tol::QUASISTATIONARY_SIGMA_TOL_NS,
                },
            ),
    );

    let mut sigmas = Vec::new();
    for (i, &length) in tol::MC_SCALING_LENGTHS_M.iter().enumerate() {
        // one independent stream family per length; with a shared seed the
        // large-λ Poisson draws scale almost exactly with L and the fitted
        // exponent would test nothing
        let seed = length_seed(cfg.seed, i as u64);
        let config = FlightConfig::new(LifetimeModel::HalfCompton, length, cfg.photons, seed)
            .with_sampling(SamplingPath::Aggregated);
        let r = simulate_flight(&config)?;
        sigmas.push((length, r.stddev_delay_s));
        if tol::MC_LENGTHS_M.contains(&length) {
            let z = (r.stddev_delay_s - r.analytic_sigma_s).abs() / r.stddev_standard_error_s;
            rows.push(
                ReportRow::new(
                    format!("MC stddev deviation at L = {length} m"),
                    z,
                    "standard errors",
                    Provenance::Derived,
                )
                .gate(10, Check::AtMost { limit: tol::MC_STANDARD_ERRORS })
                .note(format!(
                    "stddev {:.6} fs vs analytic {:.6} fs",
                    r.stddev_delay_s / FS,
                    r.analytic_sigma_s / FS
                )),
            );
        }
    }
    rows.push(
        ReportRow::new("MC stddev scaling exponent in L", power_law_exponent(&sigmas), "1", Provenance::Derived)
            .gate(10, Check::Within { target: tol::MC_EXPONENT, tol: tol::MC_EXPONENT_TOL }),
    );

    let sens = dispersion::experiment_sensitivity(2.0 * FS, 0.01, 1e4) / FS;
    rows.push(
        ReportRow::new("laboratory sensitivity (2 fs, 1%, 10 km)", sens, "fs/m^0.5", Provenance::Paper)
            .quoted(0.003)
            .gate(11, Check::Within { target: tol::SENSITIVITY_FS, tol: tol::SENSITIVITY_TOL_FS }),
    );

    let refined = 0.05 * FS;
    let fwhm = fwhm_from_rms(pulse_broadening(0.0, refined, 0.13)) / AS;
    rows.push(
        ReportRow::new("FWHM after 13 cm from zero width", fwhm, "as", Provenance::Paper)
            .quoted(43.0)
            .gate(
                12,
                Check::Within {
                    target: tol::ATTOSECOND_FWHM_AS,
                    tol: tol::ATTOSECOND_FWHM_TOL_AS,
                },
            ),
    );
    // quoted 16 as and 57 as after 1 cm: not reproduced by either convention
    let rms_1cm = pulse_broadening(0.0, refined, 0.01) / AS;
    rows.push(
        ReportRow::new("broadening after 1 cm from zero width (RMS)", rms_1cm, "as", Provenance::Paper)
            .quoted(16.0)
            .note(format!("unresolved; FWHM convention gives {:.2} as", fwhm_from_rms(rms_1cm))),
    );
    let fwhm43_rms = pulse_broadening(dispersion::rms_from_fwhm(43.0 * AS), refined, 0.01);
    let width_as_rms = pulse_broadening(43.0 * AS, refined, 0.01) / AS;
    rows.push(
        ReportRow::new("43 as FWHM pulse after 1 cm (FWHM)", fwhm_from_rms(fwhm43_rms) / AS, "as", Provenance::Paper)
            .quoted(57.0)
            .note(format!("unresolved; treating 43 as as RMS gives {width_as_rms:.2} as")),
    );

    let q = compare_to_limits(&LifetimeModel::Quasistationary);
    rows.push(
        ReportRow::new(
            "quasi-stationary model excluded by 0.2-0.3 fs/m^0.5 band",
            f64::from(u8::from(q.band_verdict == Verdict::Excluded)),
            "1",
            Provenance::Paper,
        )
        .gate(13, Check::Holds),
    );
    let h = compare_to_limits(&LifetimeModel::HalfCompton);
    rows.push(
        ReportRow::new(
            "half-Compton model excluded by band rule",
            f64::from(u8::from(h.band_verdict == Verdict::Excluded)),
            "1",
            Provenance::Paper,
        )
        .note("stated conclusion: viable; not reconciled"),
    );
    let u = compare_coefficient(LifetimeModel::urban_k(), refined);
    rows.push(
        ReportRow::new(
            "refined K-model estimate 0.05 fs/m^0.5 excluded by band rule",
            f64::from(u8::from(u.band_verdict == Verdict::Excluded)),
            "1",
            Provenance::Paper,
        )
        .note("stated conclusion: viable"),
    );
    Ok(())
}

/// Seed for the `index`-th length of the scaling run.
pub fn length_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Least-squares slope of log σ against log L.
pub fn power_law_exponent(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = x.ln() - mx;
        sxy += dx * (y.ln() - my);
        sxx += dx * dx;
    }
    sxy / sxx
}
