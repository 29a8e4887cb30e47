// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vacuum_core::constants::{reduced_compton_wavelength, ELECTRON_MASS_MEV, Q_E};
use vacuum_core::dispersion::{
    self, compare_coefficient, DelayDistribution, FlightConfig, FlightError, InteractionProcess,
    LifetimeModel, SamplingPath, Verdict,
};
use vacuum_core::numerics::QuadratureSpec;
use vacuum_core::report::{build_report, ReportConfig};
use vacuum_core::species::{default_registry, load_registry, SpeciesRegistry};
use vacuum_core::statmech::{self, Abscissa, ThermalState};
use vacuum_core::tolerances::TARGET_INVERSE_ALPHA;
use vacuum_core::vacuum::{
    self, fit_chiral_cutoff, fit_cutoff, inverse_alpha_total, AlphaBreakdown, CutoffKind,
    CutoffPolicy, VacuumError,
};

mod output;

use output::{emit, Format};

#[derive(Debug, Parser)]
#[command(name = "vacuum", version, about = "Vacuum-fluctuation model of alpha and photon time dispersion")]
struct Cli {
    /// Species table (TOML) replacing the built-in registry.
    #[arg(long, global = true, value_name = "PATH")]
    species_file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit or evaluate 1/alpha from the vacuum pair sum.
    Alpha(AlphaArgs),
    /// Planck spectrum with or without the zero-point term.
    Planck(PlanckArgs),
    /// Analytic time-dispersion coefficients and limit comparison.
    Dispersion(DispersionArgs),
    /// Monte Carlo photon flight through the vacuum.
    Simulate(SimulateArgs),
    /// Recompute every headline number and check it against its tolerance.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Global,
    MassProportional,
    Chiral,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["fit", "eval"])))]
struct AlphaArgs {
    /// Fit the cutoff to the target 1/alpha.
    #[arg(long)]
    fit: bool,
    /// Evaluate 1/alpha at the given cutoff.
    #[arg(long)]
    eval: bool,
    #[arg(long, value_enum, default_value_t = PolicyArg::Global)]
    policy: PolicyArg,
    /// Global cutoff A in MeV (eval with global or chiral policy).
    #[arg(long)]
    cutoff_mev: Option<f64>,
    /// Mass-proportionality factor a (eval with mass-proportional policy).
    #[arg(long)]
    a: Option<f64>,
    /// Quark cutoff for the chiral policy, MeV.
    #[arg(long, default_value_t = 100.0)]
    quark_cutoff_mev: f64,
    #[arg(long, default_value_t = TARGET_INVERSE_ALPHA)]
    target: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AbscissaArg {
    Momentum,
    AngularFrequency,
}

#[derive(Debug, Args)]
struct PlanckArgs {
    #[arg(long)]
    temperature_k: f64,
    /// Include the zero-point term ħω/2 per mode.
    #[arg(long, conflicts_with = "thermal_only")]
    with_zpf: bool,
    /// Thermal part only (the default).
    #[arg(long)]
    thermal_only: bool,
    /// Lowest photon energy pc, eV.
    #[arg(long, default_value_t = 1e-4)]
    pc_min_ev: f64,
    /// Highest photon energy pc, eV. Points are log-spaced.
    #[arg(long, default_value_t = 10.0)]
    pc_max_ev: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, value_enum, default_value_t = AbscissaArg::Momentum)]
    abscissa: AbscissaArg,
    /// Integrate the thermal spectrum and compare with Stefan-Boltzmann.
    #[arg(long, conflicts_with = "with_zpf")]
    integrate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    HalfCompton,
    UrbanK,
    Quasistationary,
    Custom,
}

#[derive(Debug, Args)]
struct ModelOpts {
    /// K of the field-modified lifetime.
    #[arg(long, default_value_t = dispersion::URBAN_K_DEFAULT)]
    k: f64,
    /// Lifetime in seconds for the custom model.
    #[arg(long)]
    tau_s: Option<f64>,
}

impl ModelOpts {
    fn model(&self, which: ModelArg) -> Result<LifetimeModel, CliError> {
        let model = match which {
            ModelArg::HalfCompton => LifetimeModel::HalfCompton,
            ModelArg::UrbanK => LifetimeModel::UrbanK { k: self.k },
            ModelArg::Quasistationary => LifetimeModel::Quasistationary,
            ModelArg::Custom => LifetimeModel::Custom {
                tau_s: self
                    .tau_s
                    .ok_or_else(|| CliError::Usage("--model custom needs --tau-s".into()))?,
            },
        };
        model.validate().map_err(CliError::Usage)?;
        Ok(model)
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["model", "all"])))]
struct DispersionArgs {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// The three named lifetime models.
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    opts: ModelOpts,
    #[arg(long, default_value_t = 1.0)]
    length_m: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DelayArg {
    Fixed,
    Exp,
    Uniform,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProcessArg {
    Poisson,
    Fixed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SamplingArg {
    Auto,
    PerInteraction,
    Aggregated,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 1.0)]
    length_m: f64,
    #[arg(long, default_value_t = 100_000)]
    photons: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModelArg::HalfCompton)]
    model: ModelArg,
    #[command(flatten)]
    opts: ModelOpts,
    #[arg(long, value_enum, default_value_t = DelayArg::Fixed)]
    delay: DelayArg,
    #[arg(long, value_enum, default_value_t = ProcessArg::Poisson)]
    process: ProcessArg,
    #[arg(long, value_enum, default_value_t = SamplingArg::Auto)]
    sampling: SamplingArg,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    /// Write every photon's total delay to this CSV file.
    #[arg(long, value_name = "PATH")]
    samples_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Replace the target 1/alpha, to exercise the failure path.
    #[arg(long, hide = true)]
    inject_inverse_alpha: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    /// Bad flags or input files; exit 2.
    Usage(String),
    /// Numerical failure or failed acceptance check; exit 1.
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<VacuumError> for CliError {
    fn from(e: VacuumError) -> Self {
        match e {
            VacuumError::InvalidInput(_) | VacuumError::EmptyRegistry | VacuumError::MissingCutoff(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Failure(m) => eprintln!("failure: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let registry = match &cli.species_file {
        Some(path) => load_registry(path).map_err(|e| CliError::Usage(e.to_string()))?,
        None => default_registry(),
    };
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let outcome = match &cli.command {
        Command::Alpha(args) => cmd_alpha(&registry, args, cli.format, &mut out),
        Command::Planck(args) => cmd_planck(args, cli.format, &mut out),
        Command::Dispersion(args) => cmd_dispersion(args, cli.format, &mut out),
        Command::Simulate(args) => cmd_simulate(args, cli.format, &mut out),
        Command::Report(args) => cmd_report(registry, args, cli.format, &mut out),
    };
    out.flush()?;
    outcome
}

#[derive(Debug, Serialize)]
struct AlphaOutput {
    mode: &'static str,
    target_inverse_alpha: f64,
    ratio_to_target: f64,
    /// ⟨V⟩/λ_C³ of the electron, mass-proportional policy only.
    pair_volume_ratio: Option<f64>,
    breakdown: AlphaBreakdown,
}

fn cmd_alpha(
    reg: &SpeciesRegistry,
    args: &AlphaArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(args.target > 0.0) {
        return Err(CliError::Usage(format!("--target must be > 0, got {}", args.target)));
    }
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--eval with this policy needs {flag}")))
    };
    let policy = match (args.fit, args.policy) {
        (true, PolicyArg::Global) => fit_cutoff(reg, args.target, CutoffKind::GlobalConstant)?,
        (true, PolicyArg::MassProportional) => {
            fit_cutoff(reg, args.target, CutoffKind::MassProportional)?
        }
        (true, PolicyArg::Chiral) => fit_chiral_cutoff(reg, args.target, args.quark_cutoff_mev)?,
        (false, PolicyArg::Global) => CutoffPolicy::GlobalConstant {
            cutoff_mev: need(args.cutoff_mev, "--cutoff-mev")?,
        },
        (false, PolicyArg::MassProportional) => CutoffPolicy::MassProportional {
            a: need(args.a, "--a")?,
        },
        (false, PolicyArg::Chiral) => {
            vacuum::chiral_policy(reg, need(args.cutoff_mev, "--cutoff-mev")?, args.quark_cutoff_mev)
        }
    };
    policy.validate()?;
    let breakdown = inverse_alpha_total(reg, &policy)?;
    let pair_volume_ratio = match (&policy, reg.electron()) {
        (CutoffPolicy::MassProportional { a }, Some(e)) => {
            Some(vacuum::average_pair_volume(e, *a) / reduced_compton_wavelength(e.mass_mev).powi(3))
        }
        _ => None,
    };
    let result = AlphaOutput {
        mode: if args.fit { "fit" } else { "eval" },
        target_inverse_alpha: args.target,
        ratio_to_target: breakdown.total_inverse_alpha / args.target,
        pair_volume_ratio,
        breakdown,
    };
    match format {
        Format::Json => output::write_json(out, &result),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                species: &'a str,
                cutoff_mev: Option<f64>,
                contribution: f64,
                percent_of_total: f64,
            }
            let mut rows: Vec<Row> = result
                .breakdown
                .per_species
                .iter()
                .map(|c| Row {
                    species: &c.species,
                    cutoff_mev: Some(c.cutoff_mev),
                    contribution: c.contribution,
                    percent_of_total: c.percent_of_total,
                })
                .collect();
            rows.push(Row {
                species: "total",
                cutoff_mev: None,
                contribution: result.breakdown.total_inverse_alpha,
                percent_of_total: 100.0,
            });
            output::write_csv(out, &rows)
        }
    }
}

#[derive(Debug, Serialize)]
struct PlanckIntegral {
    temperature_k: f64,
    thermal_energy_density_j_per_m3: f64,
    stefan_boltzmann_j_per_m3: f64,
    rel_diff: f64,
}

#[derive(Debug, Serialize)]
struct PlanckRow {
    temperature_k: f64,
    /// kg·m/s or rad/s
    abscissa: f64,
    abscissa_unit: &'static str,
    value: f64,
    value_unit: &'static str,
    includes_zero_point: bool,
}

fn cmd_planck(args: &PlanckArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let state = ThermalState::new(args.temperature_k).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.integrate {
        let numeric = statmech::thermal_energy_density(state, QuadratureSpec::default())
            .map_err(|e| CliError::Failure(e.to_string()))?;
        let exact = statmech::stefan_boltzmann_density(state);
        let row = PlanckIntegral {
            temperature_k: args.temperature_k,
            thermal_energy_density_j_per_m3: numeric,
            stefan_boltzmann_j_per_m3: exact,
            rel_diff: numeric / exact - 1.0,
        };
        return emit(out, format, &row, std::slice::from_ref(&row));
    }
    let (lo, hi) = (args.pc_min_ev, args.pc_max_ev);
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < pc-min < pc-max, got {lo} and {hi} eV")));
    }
    if args.points < 2 {
        return Err(CliError::Usage(format!("need at least 2 points, got {}", args.points)));
    }
    // log-spaced photon energies
    let ratio = (hi / lo).ln() / (args.points - 1) as f64;
    let energies = (0..args.points).map(|i| lo * (ratio * i as f64).exp() * Q_E);
    let axis = match args.abscissa {
        AbscissaArg::Momentum => Abscissa::Momentum,
        AbscissaArg::AngularFrequency => Abscissa::AngularFrequency,
    };
    let (abscissa_unit, value_unit) = match axis {
        Abscissa::Momentum => ("kg m/s", "J m^-3 (kg m/s)^-1"),
        Abscissa::AngularFrequency => ("rad/s", "J m^-3 (rad/s)^-1"),
    };
    let rows: Vec<PlanckRow> = statmech::spectral_curve(state, args.with_zpf, axis, energies)
        .into_iter()
        .map(|s| PlanckRow {
            temperature_k: args.temperature_k,
            abscissa: s.abscissa,
            abscissa_unit,
            value: s.value,
            value_unit,
            includes_zero_point: s.includes_zero_point,
        })
        .collect();
    emit(out, format, &rows, &rows)
}

#[derive(Debug, Serialize)]
struct DispersionRow {
    model: &'static str,
    lifetime: LifetimeModel,
    tau_s: f64,
    sigma_s_per_sqrt_m: f64,
    sigma_fs_per_sqrt_m: f64,
    length_m: f64,
    sigma_at_length_s: f64,
    limit_band_s_per_sqrt_m: [f64; 2],
    band_verdict: Verdict,
    stated_conclusion: Option<Verdict>,
}

#[derive(Debug, Serialize)]
struct DispersionCsvRow {
    model: &'static str,
    tau_s: f64,
    sigma_s_per_sqrt_m: f64,
    sigma_fs_per_sqrt_m: f64,
    length_m: f64,
    sigma_at_length_s: f64,
    band_verdict: Verdict,
    stated_conclusion: Option<Verdict>,
}

fn cmd_dispersion(args: &DispersionArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if !(args.length_m > 0.0) {
        return Err(CliError::Usage(format!("--length-m must be > 0, got {}", args.length_m)));
    }
    let models = match args.model {
        Some(m) => vec![args.opts.model(m)?],
        None => vec![
            LifetimeModel::HalfCompton,
            LifetimeModel::UrbanK { k: args.opts.k },
            LifetimeModel::Quasistationary,
        ],
    };
    let rows: Vec<DispersionRow> = models
        .into_iter()
        .map(|model| {
            let tau = dispersion::lifetime_for_mass(&model, ELECTRON_MASS_MEV);
            let sigma = dispersion::sigma_for_lifetime(tau, 1.0);
            let cmp = compare_coefficient(model.clone(), sigma);
            DispersionRow {
                model: model.label(),
                lifetime: model,
                tau_s: tau,
                sigma_s_per_sqrt_m: sigma,
                sigma_fs_per_sqrt_m: sigma / 1e-15,
                length_m: args.length_m,
                sigma_at_length_s: sigma * args.length_m.sqrt(),
                limit_band_s_per_sqrt_m: cmp.limit_band,
                band_verdict: cmp.band_verdict,
                stated_conclusion: cmp.stated_conclusion,
            }
        })
        .collect();
    let flat: Vec<DispersionCsvRow> = rows
        .iter()
        .map(|r| DispersionCsvRow {
            model: r.model,
            tau_s: r.tau_s,
            sigma_s_per_sqrt_m: r.sigma_s_per_sqrt_m,
            sigma_fs_per_sqrt_m: r.sigma_fs_per_sqrt_m,
            length_m: r.length_m,
            sigma_at_length_s: r.sigma_at_length_s,
            band_verdict: r.band_verdict,
            stated_conclusion: r.stated_conclusion,
        })
        .collect();
    emit(out, format, &rows, &flat)
}

#[derive(Debug, Serialize)]
struct SimulateCsvRow {
    model: &'static str,
    length_m: f64,
    n_photons: u64,
    seed: u64,
    tau_s: f64,
    expected_interactions: f64,
    mean_delay_s: f64,
    stddev_delay_s: f64,
    stddev_standard_error_s: f64,
    analytic_sigma_s: f64,
    model_sigma_s: f64,
    degenerate: bool,
}

fn cmd_simulate(args: &SimulateArgs, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let lifetime = args.opts.model(args.model)?;
    let config = FlightConfig::new(lifetime, args.length_m, args.photons, args.seed)
        .with_delay(match args.delay {
            DelayArg::Fixed => DelayDistribution::FixedTau,
            DelayArg::Exp => DelayDistribution::ExponentialTau,
            DelayArg::Uniform => DelayDistribution::UniformFraction,
        })
        .with_process(match args.process {
            ProcessArg::Poisson => InteractionProcess::PoissonCount,
            ProcessArg::Fixed => InteractionProcess::FixedCount,
        })
        .with_sampling(match args.sampling {
            SamplingArg::Auto => SamplingPath::Auto,
            SamplingArg::PerInteraction => SamplingPath::PerInteraction,
            SamplingArg::Aggregated => SamplingPath::Aggregated,
        });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))?;
    let (result, samples) = pool
        .install(|| dispersion::simulate_flight_with_samples(&config))
        .map_err(|e| match e {
            FlightError::Config(m) => CliError::Usage(m),
            other => CliError::Usage(other.to_string()),
        })?;
    if result.degenerate {
        eprintln!(
            "warning: {:.3e} expected interactions per photon; most photons are not delayed",
            result.expected_interactions
        );
    }
    if let Some(path) = &args.samples_out {
        let file = File::create(path)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
        let mut w = csv::Writer::from_writer(BufWriter::new(file));
        w.write_record(["photon_index", "delay_s"])
            .map_err(|e| CliError::Failure(e.to_string()))?;
        for (i, d) in samples.iter().enumerate() {
            w.write_record([i.to_string(), d.to_string()])
                .map_err(|e| CliError::Failure(e.to_string()))?;
        }
        w.flush()?;
    }
    let row = SimulateCsvRow {
        model: config.lifetime.label(),
        length_m: config.length_m,
        n_photons: result.n_photons,
        seed: config.seed,
        tau_s: result.tau_s,
        expected_interactions: result.expected_interactions,
        mean_delay_s: result.mean_delay_s,
        stddev_delay_s: result.stddev_delay_s,
        stddev_standard_error_s: result.stddev_standard_error_s,
        analytic_sigma_s: result.analytic_sigma_s,
        model_sigma_s: result.model_sigma_s,
        degenerate: result.degenerate,
    };
    emit(out, format, &result, std::slice::from_ref(&row))
}

#[derive(Debug, Serialize)]
struct ReportCsvRow<'a> {
    criterion: Option<u8>,
    quantity: &'a str,
    computed: f64,
    unit: &'a str,
    paper_value: Option<f64>,
    rel_diff: Option<f64>,
    provenance: vacuum_core::report::Provenance,
    pass: Option<bool>,
    note: Option<&'a str>,
}

fn cmd_report(
    registry: SpeciesRegistry,
    args: &ReportArgs,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let config = ReportConfig {
        registry,
        inverse_alpha_target: args.inject_inverse_alpha.unwrap_or(TARGET_INVERSE_ALPHA),
        seed: args.seed,
        ..ReportConfig::default()
    };
    let report = build_report(&config).map_err(|e| CliError::Failure(e.to_string()))?;
    let flat: Vec<ReportCsvRow> = report
        .rows
        .iter()
        .map(|r| ReportCsvRow {
            criterion: r.criterion,
            quantity: &r.quantity,
            computed: r.computed,
            unit: &r.unit,
            paper_value: r.paper_value,
            rel_diff: r.rel_diff,
            provenance: r.provenance,
            pass: r.pass,
            note: r.note.as_deref(),
        })
        .collect();
    emit(out, format, &report, &flat)?;
    if report.all_pass {
        return Ok(());
    }
    let failing: Vec<String> = report
        .failing()
        .map(|r| {
            format!(
                "  [{}] {} = {}",
                r.criterion.map_or_else(|| "-".to_string(), |c| c.to_string()),
                r.quantity,
                r.computed
            )
        })
        .collect();
    Err(CliError::Failure(format!(
        "{} row(s) outside tolerance:\n{}",
        failing.len(),
        failing.join("\n")
    )))
}

