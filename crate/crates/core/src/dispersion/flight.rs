//! Monte Carlo arrival-time spread of photons delayed at virtual-pair
//! interactions.
//!
//! Each photon draws its own interaction count and per-interaction delays
//! from a ChaCha8 stream keyed by `(seed, photon index)`, so results do not
//! depend on how photons are split across rayon workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Gamma, Normal, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::lifetime::{lifetime_for_mass, LifetimeModel};
use super::sigma_for_lifetime;
use crate::constants::{C, ELECTRON_MASS_MEV};

/// Mean interaction count up to which [`SamplingPath::Auto`] loops over
/// individual interactions.
pub const PER_INTERACTION_LIMIT: f64 = 1e4;

// a per-interaction loop beyond this many expected interactions is refused
const PER_INTERACTION_HARD_LIMIT: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlightError {
    #[error("invalid flight configuration: {0}")]
    Config(String),
    #[error("per-interaction sampling requested with {0:.3e} expected interactions per photon")]
    TooManyInteractions(f64),
}

/// Delay added at one interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DelayDistribution {
    /// Exactly τ.
    FixedTau,
    /// Exponential with mean τ; the compound variance doubles.
    ExponentialTau,
    /// Uniform fraction of τ, U(0, τ): the photon meets the pair at a random
    /// moment of its life. Compound variance is λτ²/3.
    UniformFraction,
}

/// Number of interactions along the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionProcess {
    /// Poisson with mean L/(cτ).
    PoissonCount,
    /// Exactly round(L/(cτ)).
    FixedCount,
}

/// How the total delay of one photon is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingPath {
    /// Per-interaction below [`PER_INTERACTION_LIMIT`] expected
    /// interactions, aggregated above.
    Auto,
    /// Sum every interaction delay explicitly.
    PerInteraction,
    /// Draw the sum of N delays from its law: N·τ, Gamma(N, τ), or for the
    /// uniform fraction a Normal(Nτ/2, Nτ²/12) once N > 10⁴.
    Aggregated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlightConfig {
    pub length_m: f64,
    pub lifetime: LifetimeModel,
    /// Rest energy of the pair species setting τ, MeV.
    pub reference_mass_mev: f64,
    pub n_photons: u64,
    pub seed: u64,
    pub delay_distribution: DelayDistribution,
    pub interaction_process: InteractionProcess,
    pub sampling: SamplingPath,
}

impl FlightConfig {
    /// Electron pairs, Poisson count, fixed τ, automatic sampling path.
    pub fn new(lifetime: LifetimeModel, length_m: f64, n_photons: u64, seed: u64) -> Self {
        Self {
            length_m,
            lifetime,
            reference_mass_mev: ELECTRON_MASS_MEV,
            n_photons,
            seed,
            delay_distribution: DelayDistribution::FixedTau,
            interaction_process: InteractionProcess::PoissonCount,
            sampling: SamplingPath::Auto,
        }
    }

    pub fn with_delay(mut self, d: DelayDistribution) -> Self {
        self.delay_distribution = d;
        self
    }

    pub fn with_process(mut self, p: InteractionProcess) -> Self {
        self.interaction_process = p;
        self
    }

    pub fn with_sampling(mut self, s: SamplingPath) -> Self {
        self.sampling = s;
        self
    }

    pub fn tau_s(&self) -> f64 {
        lifetime_for_mass(&self.lifetime, self.reference_mass_mev)
    }

    /// λ = L/(cτ).
    pub fn expected_interactions(&self) -> f64 {
        self.length_m / (C * self.tau_s())
    }

    fn validate(&self) -> Result<(), FlightError> {
        if !(self.length_m > 0.0 && self.length_m.is_finite()) {
            return Err(FlightError::Config(format!(
                "length must be > 0 m, got {}",
                self.length_m
            )));
        }
        if self.n_photons < 2 {
            return Err(FlightError::Config(format!(
                "need at least 2 photons, got {}",
                self.n_photons
            )));
        }
        if !(self.reference_mass_mev > 0.0) {
            return Err(FlightError::Config(format!(
                "reference mass must be > 0, got {}",
                self.reference_mass_mev
            )));
        }
        self.lifetime.validate().map_err(FlightError::Config)?;
        Ok(())
    }

    /// Standard deviation of the total delay implied by the chosen count and
    /// delay laws.
    pub fn model_sigma_s(&self) -> f64 {
        let tau = self.tau_s();
        let lambda = self.expected_interactions();
        let var = match self.interaction_process {
            // Var(Σ Xᵢ) = λ·E[X²] for a Poisson count
            InteractionProcess::PoissonCount => {
                let second_moment = match self.delay_distribution {
                    DelayDistribution::FixedTau => 1.0,
                    DelayDistribution::ExponentialTau => 2.0,
                    DelayDistribution::UniformFraction => 1.0 / 3.0,
                };
                lambda * second_moment * tau * tau
            }
            InteractionProcess::FixedCount => {
                let n = lambda.round();
                let var_x = match self.delay_distribution {
                    DelayDistribution::FixedTau => 0.0,
                    DelayDistribution::ExponentialTau => 1.0,
                    DelayDistribution::UniformFraction => 1.0 / 12.0,
                };
                n * var_x * tau * tau
            }
        };
        var.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonFlightResult {
    pub mean_delay_s: f64,
    pub stddev_delay_s: f64,
    /// Delta-method standard error of `stddev_delay_s`.
    pub stddev_standard_error_s: f64,
    pub n_photons: u64,
    pub tau_s: f64,
    pub expected_interactions: f64,
    /// √(τ/c)·√L.
    pub analytic_sigma_s: f64,
    /// Exact standard deviation for the configured count and delay laws.
    pub model_sigma_s: f64,
    /// Fewer than one interaction expected per photon.
    pub degenerate: bool,
    pub config_echo: FlightConfig,
}

pub fn simulate_flight(config: &FlightConfig) -> Result<PhotonFlightResult, FlightError> {
    simulate_flight_with_samples(config).map(|(r, _)| r)
}

/// Runs the simulation and also returns every photon's total delay (s), in
/// photon-index order.
pub fn simulate_flight_with_samples(
    config: &FlightConfig,
) -> Result<(PhotonFlightResult, Vec<f64>), FlightError> {
    config.validate()?;
    let tau = config.tau_s();
    let lambda = config.expected_interactions();
    let per_interaction = match config.sampling {
        SamplingPath::Auto => lambda <= PER_INTERACTION_LIMIT,
        SamplingPath::PerInteraction => true,
        SamplingPath::Aggregated => false,
    };
    if per_interaction && lambda > PER_INTERACTION_HARD_LIMIT {
        return Err(FlightError::TooManyInteractions(lambda));
    }
    let count_law = match config.interaction_process {
        InteractionProcess::PoissonCount if lambda > 0.0 => Some(
            Poisson::new(lambda)
                .map_err(|e| FlightError::Config(format!("interaction rate {lambda}: {e}")))?,
        ),
        _ => None,
    };
    let fixed_count = lambda.round();

    let delays: Vec<f64> = (0..config.n_photons)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index);
            let n = match &count_law {
                Some(p) => p.sample(&mut rng),
                None => fixed_count,
            };
            if per_interaction {
                sum_each(config.delay_distribution, n as u64, tau, &mut rng)
            } else {
                sum_aggregated(config.delay_distribution, n, tau, &mut rng)
            }
        })
        .collect();

    let stats = Moments::of(&delays);
    let result = PhotonFlightResult {
        mean_delay_s: stats.mean,
        stddev_delay_s: stats.stddev,
        stddev_standard_error_s: stats.stddev_standard_error,
        n_photons: config.n_photons,
        tau_s: tau,
        expected_interactions: lambda,
        analytic_sigma_s: sigma_for_lifetime(tau, config.length_m),
        model_sigma_s: config.model_sigma_s(),
        degenerate: lambda < 1.0,
        config_echo: config.clone(),
    };
    Ok((result, delays))
}

fn sum_each(dist: DelayDistribution, n: u64, tau: f64, rng: &mut ChaCha8Rng) -> f64 {
    match dist {
        DelayDistribution::FixedTau => (0..n).map(|_| tau).sum(),
        DelayDistribution::ExponentialTau => {
            let exp = Exp::new(1.0 / tau).expect("tau > 0");
            (0..n).map(|_| exp.sample(rng)).sum()
        }
        DelayDistribution::UniformFraction => (0..n).map(|_| tau * rng.random::<f64>()).sum(),
    }
}

fn sum_aggregated(dist: DelayDistribution, n: f64, tau: f64, rng: &mut ChaCha8Rng) -> f64 {
    if n < 1.0 {
        return 0.0;
    }
    match dist {
        DelayDistribution::FixedTau => n * tau,
        DelayDistribution::ExponentialTau => Gamma::new(n, tau).expect("n >= 1, tau > 0").sample(rng),
        DelayDistribution::UniformFraction if n <= PER_INTERACTION_LIMIT => {
            sum_each(dist, n as u64, tau, rng)
        }
        DelayDistribution::UniformFraction => Normal::new(0.5 * n * tau, tau * (n / 12.0).sqrt())
            .expect("finite parameters")
            .sample(rng),
    }
}

struct Moments {
    mean: f64,
    stddev: f64,
    stddev_standard_error: f64,
}

impl Moments {
    /// Sample mean, unbiased standard deviation and the standard error of
    /// the latter, √((m₄ − s⁴)/n)/(2s). Sums run over deviations from the
    /// first sample so identical samples give exactly zero spread.
    fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let origin = xs[0];
        let shift: f64 = xs.iter().map(|x| x - origin).sum::<f64>() / n;
        let mean = origin + shift;
        let (mut m2, mut m4) = (0.0, 0.0);
        for x in xs {
            let d = (x - origin) - shift;
            let d2 = d * d;
            m2 += d2;
            m4 += d2 * d2;
        }
        let var = m2 / (n - 1.0);
        let stddev = var.sqrt();
        let m4 = m4 / n;
        let stddev_standard_error = if stddev > 0.0 {
            ((m4 - var * var).max(0.0) / n).sqrt() / (2.0 * stddev)
        } else {
            0.0
        };
        Self {
            mean,
            stddev,
            stddev_standard_error,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn custom(tau_s: f64) -> LifetimeModel {
        LifetimeModel::Custom { tau_s }
    }

    #[test]
    fn too_few_photons() {
        let cfg = FlightConfig::new(LifetimeModel::HalfCompton, 1.0, 1, 7);
        assert!(matches!(simulate_flight(&cfg), Err(FlightError::Config(_))));
    }

    #[test]
    fn bad_length() {
        let cfg = FlightConfig::new(LifetimeModel::HalfCompton, 0.0, 10, 7);
        assert!(matches!(simulate_flight(&cfg), Err(FlightError::Config(_))));
    }

    #[test]
    fn fixed_count_fixed_tau_has_no_spread() {
        let cfg = FlightConfig::new(LifetimeModel::HalfCompton, 1.0, 1000, 3)
            .with_process(InteractionProcess::FixedCount);
        let r = simulate_flight(&cfg).unwrap();
        let n = cfg.expected_interactions().round();
        assert_eq!(r.stddev_delay_s, 0.0);
        assert_eq!(r.mean_delay_s, n * cfg.tau_s());
        assert_eq!(r.model_sigma_s, 0.0);
    }

    #[test]
    fn degenerate_flagged_not_fatal() {
        // τ = 1 s: λ = L/(cτ) ≪ 1
        let cfg = FlightConfig::new(custom(1.0), 1.0, 100, 1);
        let r = simulate_flight(&cfg).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.mean_delay_s, 0.0);
    }

    #[test]
    fn per_interaction_refused_when_huge() {
        let cfg = FlightConfig::new(LifetimeModel::HalfCompton, 100.0, 10, 1)
            .with_sampling(SamplingPath::PerInteraction);
        assert!(matches!(simulate_flight(&cfg), Err(FlightError::TooManyInteractions(_))));
    }

    #[test]
    fn same_seed_same_bits() {
        let cfg = FlightConfig::new(LifetimeModel::HalfCompton, 2.0, 5000, 42)
            .with_delay(DelayDistribution::ExponentialTau);
        let a = simulate_flight(&cfg).unwrap();
        let b = simulate_flight(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.stddev_delay_s.to_bits(), b.stddev_delay_s.to_bits());
    }

    #[test]
    fn different_seed_differs() {
        let a = simulate_flight(&FlightConfig::new(LifetimeModel::HalfCompton, 2.0, 5000, 1)).unwrap();
        let b = simulate_flight(&FlightConfig::new(LifetimeModel::HalfCompton, 2.0, 5000, 2)).unwrap();
        assert_ne!(a.stddev_delay_s, b.stddev_delay_s);
    }

    #[test]
    fn moments_standard_error_for_gaussian_like_data() {
        // for normal data SE(s) ≈ s/√(2n)
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let normal = Normal::new(0.0, 2.0).unwrap();
        let xs: Vec<f64> = (0..200_000).map(|_| normal.sample(&mut rng)).collect();
        let m = Moments::of(&xs);
        let expected = m.stddev / (2.0 * xs.len() as f64).sqrt();
        assert!((m.stddev_standard_error / expected - 1.0).abs() < 0.05);
        assert!((m.stddev - 2.0).abs() < 0.02);
    }

    #[test]
    fn model_sigma_variants() {
        let base = FlightConfig::new(custom(1e-9), 30.0, 10, 0);
        let lambda = base.expected_interactions();
        let tau = base.tau_s();
        let poisson_fixed = base.model_sigma_s();
        assert!((poisson_fixed - lambda.sqrt() * tau).abs() / poisson_fixed < 1e-14);
        assert!((poisson_fixed / sigma_for_lifetime(tau, 30.0) - 1.0).abs() < 1e-12);
        let exp = base.clone().with_delay(DelayDistribution::ExponentialTau).model_sigma_s();
        assert!((exp / poisson_fixed - 2.0_f64.sqrt()).abs() < 1e-14);
    }
}
