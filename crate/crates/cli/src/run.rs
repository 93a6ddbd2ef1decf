//! Command definitions and execution.
//!
//! Exit codes: 0 on success, 2 on validation failures (bad region files,
//! bad arguments), 3 on numerical non-convergence, 64 on CLI usage errors.
//! Validation and convergence failures print a machine-readable JSON envelope
//! on stderr.

use std::path::PathBuf;

use acuteprob_core::ball3;
use acuteprob_core::disk;
use acuteprob_core::error::Error as CoreError;
use acuteprob_core::fourier::FourierSeries;
use acuteprob_core::isoperim;
use acuteprob_core::math;
use acuteprob_core::region::ConvexRegion;
use acuteprob_core::variation::{self, Homotopy};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::drivers;
use crate::output::{self, Csv, CsvField, EffectiveConfig};
use crate::schema;

/// Fixed default seed: reproducibility is the product, so the default is a
/// documented constant rather than entropy.
pub const DEFAULT_SEED: u64 = 1729;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "acuteprob",
    about = "Acute-triangle probability on convex regions: estimators, disk closed forms, variational analysis",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monte Carlo estimate of p(S), or of the largest-angle CDF on a φ grid
    Estimate(EstimateArgs),
    /// Closed-form reference constants
    Exact {
        /// one of: p-disk, l-constant
        #[arg(long)]
        what: String,
    },
    /// Quadrature estimate of p(S) via the acute-locus area
    Quadrature(QuadratureArgs),
    /// CSV table of A2(θ) and its Fourier coefficients
    A2Table(A2TableArgs),
    /// Boundary-perturbation analysis
    Variation {
        #[command(subcommand)]
        sub: VariationCmd,
    },
    /// Isoperimetric-ratio bounds
    Isoperim {
        #[command(subcommand)]
        sub: IsoperimCmd,
    },
    /// Three-dimensional analytics
    Ball3d {
        #[command(subcommand)]
        sub: Ball3dCmd,
    },
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    #[arg(long)]
    pub region: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    /// comma-separated φ values in [π/3, π]; switches output to the CDF CSV
    #[arg(long, value_delimiter = ',')]
    pub phi_grid: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub region: PathBuf,
    #[arg(long, default_value_t = acuteprob_core::quadp::DEFAULT_RESOLUTION)]
    pub resolution: u32,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct A2TableArgs {
    #[arg(long, default_value_t = 256)]
    pub theta_steps: usize,
    #[arg(long, default_value_t = 32)]
    pub max_n: u32,
}

#[derive(Subcommand, Debug)]
pub enum VariationCmd {
    /// Fourier power spectrum of the boundary deviation and mode weights
    Spectrum {
        #[arg(long)]
        region: PathBuf,
        #[arg(long, default_value_t = 16)]
        modes: usize,
    },
    /// p(t) along the canonical homotopy with finite-difference derivatives
    Homotopy(HomotopyArgs),
    /// Barrier comparison p(t) vs p̄(t) = p(D) - L t²/(12π³)
    Barrier(BarrierArgs),
}

#[derive(Args, Debug)]
pub struct HomotopyArgs {
    #[arg(long)]
    pub region: PathBuf,
    /// number of grid points on [0, ‖g‖₂]
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Method::Quad)]
    pub method: Method,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = acuteprob_core::quadp::DEFAULT_RESOLUTION)]
    pub resolution: u32,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BarrierArgs {
    #[arg(long)]
    pub region: PathBuf,
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    #[arg(long, default_value_t = acuteprob_core::quadp::DEFAULT_RESOLUTION)]
    pub resolution: u32,
    /// additive tolerance on the barrier comparison
    #[arg(long, default_value_t = 2e-4)]
    pub tolerance: f64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum IsoperimCmd {
    /// Height-partition bound report for one region
    Report {
        #[arg(long)]
        region: PathBuf,
    },
    /// Thin-rectangle decay ladder (R, p_MC, p_upper) with log-log slope
    Ladder {
        /// rectangle heights
        #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.02, 0.01, 0.005])]
        heights: Vec<f64>,
        #[arg(long, default_value_t = 2_000_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Ball3dCmd {
    /// Legendre-coefficient sign table (closed form vs quadrature)
    Signs {
        #[arg(long, default_value_t = 20)]
        max_m: u32,
    },
    /// Monte Carlo p for the unit 3-ball
    Estimate {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum Method {
    Quad,
    Mc,
}

/// A failed run: exit code plus the machine-readable error envelope.
#[derive(Debug)]
pub struct RunError {
    pub exit_code: i32,
    pub json: String,
}

impl RunError {
    fn validation(kind: &str, message: &str) -> RunError {
        RunError {
            exit_code: EXIT_VALIDATION,
            json: output::error_json(kind, message),
        }
    }

    fn from_core(err: CoreError) -> RunError {
        let exit_code = match err {
            CoreError::NonConvergence(_) => EXIT_NONCONVERGENCE,
            _ => EXIT_VALIDATION,
        };
        RunError {
            exit_code,
            json: output::error_json(err.kind(), &err.to_string()),
        }
    }
}

fn load_region(path: &PathBuf) -> Result<(ConvexRegion, String), RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        RunError::validation("io", &format!("cannot read region file {path:?}: {e}"))
    })?;
    let region = schema::parse_region(&text)
        .map_err(|msg| RunError::validation("invalid_region", &msg))?;
    Ok((region, path.display().to_string()))
}

/// Execute a parsed command, returning the stdout artifact.
pub fn execute(command: Command) -> Result<String, RunError> {
    match command {
        Command::Estimate(args) => run_estimate(args),
        Command::Exact { what } => run_exact(&what),
        Command::Quadrature(args) => run_quadrature(args),
        Command::A2Table(args) => run_a2_table(args),
        Command::Variation { sub } => match sub {
            VariationCmd::Spectrum { region, modes } => run_spectrum(region, modes),
            VariationCmd::Homotopy(args) => run_homotopy(args),
            VariationCmd::Barrier(args) => run_barrier(args),
        },
        Command::Isoperim { sub } => match sub {
            IsoperimCmd::Report { region } => run_iso_report(region),
            IsoperimCmd::Ladder {
                heights,
                samples,
                seed,
                threads,
            } => run_iso_ladder(heights, samples, seed, threads),
        },
        Command::Ball3d { sub } => match sub {
            Ball3dCmd::Signs { max_m } => run_signs(max_m),
            Ball3dCmd::Estimate {
                samples,
                seed,
                threads,
            } => run_ball_estimate(samples, seed, threads),
        },
    }
}

fn run_estimate(args: EstimateArgs) -> Result<String, RunError> {
    let (region, region_name) = load_region(&args.region)?;
    let pool = drivers::build_pool(drivers::effective_threads(args.threads));
    let config = EffectiveConfig {
        command: "estimate".into(),
        region: Some(region_name),
        samples: Some(args.samples),
        seed: Some(args.seed),
        phi_grid: args.phi_grid.clone(),
        ..Default::default()
    };
    match &args.phi_grid {
        None => {
            let est = drivers::estimate_p(&pool, &region, args.samples, args.seed)
                .map_err(RunError::from_core)?;
            Ok(output::to_json(&output::EstimateOut {
                config,
                value: est.value,
                std_err: est.std_err,
                n: est.n_samples,
                seed: est.seed,
            }))
        }
        Some(grid) => {
            let cdf = drivers::estimate_f(&pool, &region, grid, args.samples, args.seed)
                .map_err(RunError::from_core)?;
            let mut csv = Csv::new(&config, "phi,value,std_err,n,seed");
            for (phi, est) in cdf.phi_grid.iter().zip(&cdf.values) {
                csv.row(&[
                    CsvField::Float(*phi),
                    CsvField::Float(est.value),
                    CsvField::Float(est.std_err),
                    CsvField::Int(est.n_samples as i64),
                    CsvField::Int(est.seed as i64),
                ]);
            }
            Ok(csv.finish())
        }
    }
}

fn run_exact(what: &str) -> Result<String, RunError> {
    let value = match what {
        "p-disk" => disk::p_disk(),
        "l-constant" => disk::l_constant(),
        other => {
            return Err(RunError::validation(
                "invalid_argument",
                &format!("unknown constant {other:?}; expected p-disk or l-constant"),
            ))
        }
    };
    let config = EffectiveConfig {
        command: "exact".into(),
        what: Some(what.to_string()),
        ..Default::default()
    };
    Ok(output::to_json(&output::ValueOut { config, value }))
}

fn run_quadrature(args: QuadratureArgs) -> Result<String, RunError> {
    let (region, region_name) = load_region(&args.region)?;
    let pool = drivers::build_pool(drivers::effective_threads(args.threads));
    let value = drivers::quadrature_p(&pool, &region, args.resolution)
        .map_err(RunError::from_core)?;
    let config = EffectiveConfig {
        command: "quadrature".into(),
        region: Some(region_name),
        resolution: Some(args.resolution),
        ..Default::default()
    };
    Ok(output::to_json(&output::ValueOut { config, value }))
}

fn run_a2_table(args: A2TableArgs) -> Result<String, RunError> {
    if args.theta_steps < 2 {
        return Err(RunError::validation(
            "invalid_argument",
            "theta-steps must be at least 2",
        ));
    }
    let config = EffectiveConfig {
        command: "a2-table".into(),
        theta_steps: Some(args.theta_steps),
        max_n: Some(args.max_n),
        ..Default::default()
    };
    let mut csv = Csv::new(&config, "theta,a2,n,a_n");
    let rows = args.theta_steps.max(args.max_n as usize + 1);
    for i in 0..rows {
        let theta_cells = if i < args.theta_steps {
            let theta = math::TAU * i as f64 / (args.theta_steps - 1) as f64;
            [CsvField::Float(theta), CsvField::Float(disk::a2_mass(theta))]
        } else {
            [CsvField::Empty, CsvField::Empty]
        };
        let coeff_cells = if i <= args.max_n as usize {
            [
                CsvField::Int(i as i64),
                CsvField::Float(disk::a2_fourier_coeff(i as u32)),
            ]
        } else {
            [CsvField::Empty, CsvField::Empty]
        };
        let [a, b] = theta_cells;
        let [c, d] = coeff_cells;
        csv.row(&[a, b, c, d]);
    }
    Ok(csv.finish())
}

fn run_spectrum(region_path: PathBuf, modes: usize) -> Result<String, RunError> {
    let (region, region_name) = load_region(&region_path)?;
    let series = region.polar_series().map_err(RunError::from_core)?;
    let mut deviation_cos: Vec<f64> = (0..=series.degree()).map(|k| series.cos_coeff(k)).collect();
    deviation_cos[0] -= 1.0;
    let deviation_sin: Vec<f64> = (1..=series.degree()).map(|k| series.sin_coeff(k)).collect();
    let deviation =
        FourierSeries::new(deviation_cos, deviation_sin).map_err(RunError::from_core)?;
    let config = EffectiveConfig {
        command: "variation-spectrum".into(),
        region: Some(region_name),
        modes: Some(modes),
        ..Default::default()
    };
    let l = disk::l_constant();
    let mut csv = Csv::new(&config, "k,c_k,d_k,power,a_k,weight,term");
    let mut spectral_sum = 0.0;
    for k in 0..=modes {
        let c = deviation.cos_coeff(k);
        let d = deviation.sin_coeff(k);
        let power = c * c + d * d;
        let a_k = disk::a2_fourier_coeff(k as u32);
        if k >= 2 {
            let term = (a_k - l) * power;
            spectral_sum += term;
            csv.row(&[
                CsvField::Int(k as i64),
                CsvField::Float(c),
                CsvField::Float(d),
                CsvField::Float(power),
                CsvField::Float(a_k),
                CsvField::Float(a_k - l),
                CsvField::Float(term),
            ]);
        } else {
            csv.row(&[
                CsvField::Int(k as i64),
                CsvField::Float(c),
                CsvField::Float(d),
                CsvField::Float(power),
                CsvField::Float(a_k),
                CsvField::Empty,
                CsvField::Empty,
            ]);
        }
    }
    csv.comment(&format!("spectral_sum_k_ge_2: {spectral_sum}"));
    if let Ok(prediction) = variation::spectral_p2_prediction(&deviation) {
        csv.comment(&format!("predicted_p2_at_zero: {prediction}"));
    }
    Ok(csv.finish())
}

fn trace_csv(
    config: &EffectiveConfig,
    trace: &acuteprob_core::variation::HomotopyTrace,
    tolerance: f64,
) -> String {
    let p_d = disk::p_disk();
    let l = disk::l_constant();
    let coeff = l / (12.0 * math::PI * math::PI * math::PI);
    let mut csv = Csv::new(config, "t,p,stderr,pbar,margin");
    for (i, &t) in trace.ts.iter().enumerate() {
        let pbar = p_d - coeff * t * t;
        csv.row(&[
            CsvField::Float(t),
            CsvField::Float(trace.p[i].value),
            CsvField::Float(trace.p[i].std_err),
            CsvField::Float(pbar),
            CsvField::Float(pbar + tolerance - trace.p[i].value),
        ]);
    }
    csv
        .comment(&format!("g_norm: {}", trace.g_norm));
    csv.finish()
}

fn build_homotopy(region: &ConvexRegion) -> Result<Homotopy, RunError> {
    // regions whose deviation already has zero low modes need no re-embedding
    if let Ok(homotopy) = Homotopy::new(region) {
        return Ok(homotopy);
    }
    let normalized = variation::normalize_embedding(region).map_err(RunError::from_core)?;
    Homotopy::new(&normalized).map_err(RunError::from_core)
}

fn uniform_grid(g_norm: f64, n: usize) -> Result<Vec<f64>, RunError> {
    if n < 3 {
        return Err(RunError::validation(
            "invalid_argument",
            "grid needs at least 3 points for second differences",
        ));
    }
    Ok((0..n)
        .map(|i| g_norm * i as f64 / (n - 1) as f64)
        .collect())
}

fn run_homotopy(args: HomotopyArgs) -> Result<String, RunError> {
    let (region, region_name) = load_region(&args.region)?;
    let homotopy = build_homotopy(&region)?;
    let grid = uniform_grid(homotopy.g_norm, args.grid)?;
    let pool = drivers::build_pool(drivers::effective_threads(args.threads));
    let trace = match args.method {
        Method::Quad => {
            let eval = drivers::ParallelQuadEval {
                pool: &pool,
                resolution: args.resolution,
            };
            variation::homotopy_trace(&homotopy, &grid, &eval).map_err(RunError::from_core)?
        }
        Method::Mc => {
            let eval = drivers::ParallelMcEval {
                pool: &pool,
                n_samples: args.samples,
                seed: args.seed,
            };
            variation::homotopy_trace(&homotopy, &grid, &eval).map_err(RunError::from_core)?
        }
    };
    let config = EffectiveConfig {
        command: "variation-homotopy".into(),
        region: Some(region_name),
        grid: Some(args.grid),
        method: Some(
            match args.method {
                Method::Quad => "quad",
                Method::Mc => "mc",
            }
            .into(),
        ),
        samples: (args.method == Method::Mc).then_some(args.samples),
        seed: (args.method == Method::Mc).then_some(args.seed),
        resolution: (args.method == Method::Quad).then_some(args.resolution),
        ..Default::default()
    };
    Ok(trace_csv(&config, &trace, 0.0))
}

fn run_barrier(args: BarrierArgs) -> Result<String, RunError> {
    let (region, region_name) = load_region(&args.region)?;
    let homotopy = build_homotopy(&region)?;
    let grid = uniform_grid(homotopy.g_norm, args.grid)?;
    let pool = drivers::build_pool(drivers::effective_threads(args.threads));
    let eval = drivers::ParallelQuadEval {
        pool: &pool,
        resolution: args.resolution,
    };
    let trace =
        variation::homotopy_trace(&homotopy, &grid, &eval).map_err(RunError::from_core)?;
    let report =
        variation::barrier_check(&trace, args.tolerance).map_err(RunError::from_core)?;
    let config = EffectiveConfig {
        command: "variation-barrier".into(),
        region: Some(region_name),
        grid: Some(args.grid),
        resolution: Some(args.resolution),
        tolerance: Some(args.tolerance),
        ..Default::default()
    };
    let mut text = trace_csv(&config, &trace, args.tolerance);
    text.push_str(&format!(
        "# passes_barrier: {}\n# below_disk: {}\n",
        report.passes_barrier, report.below_disk
    ));
    Ok(text)
}

fn run_iso_report(region_path: PathBuf) -> Result<String, RunError> {
    let (region, region_name) = load_region(&region_path)?;
    let framed = region.longest_segment_frame().map_err(RunError::from_core)?;
    let report = isoperim::partition_bound(&framed).map_err(RunError::from_core)?;
    let config = EffectiveConfig {
        command: "isoperim-report".into(),
        region: Some(region_name),
        ..Default::default()
    };
    Ok(output::to_json(&output::IsoReportOut {
        config,
        ratio: report.ratio,
        hbar: report.hbar,
        n_parts: report.n_parts,
        nonacute_lb: report.nonacute_lb,
        p_upper: report.p_upper,
        beats_disk: report.beats_disk,
    }))
}

fn run_iso_ladder(
    heights: Vec<f64>,
    samples: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<String, RunError> {
    if heights.is_empty() {
        return Err(RunError::validation(
            "invalid_argument",
            "ladder needs at least one height",
        ));
    }
    let pool = drivers::build_pool(drivers::effective_threads(threads));
    let mut points = Vec::with_capacity(heights.len());
    for &h in &heights {
        let rect = ConvexRegion::rectangle(1.0, h).map_err(RunError::from_core)?;
        let framed = rect.longest_segment_frame().map_err(RunError::from_core)?;
        let report = isoperim::partition_bound(&framed).map_err(RunError::from_core)?;
        let p_mc =
            drivers::estimate_p(&pool, &rect, samples, seed).map_err(RunError::from_core)?;
        points.push(isoperim::LadderPoint {
            height: h,
            ratio: report.ratio,
            p_mc,
            p_upper: report.p_upper,
        });
    }
    let slope = isoperim::loglog_slope(&points);
    let config = EffectiveConfig {
        command: "isoperim-ladder".into(),
        samples: Some(samples),
        seed: Some(seed),
        heights: Some(heights),
        ..Default::default()
    };
    let mut csv = Csv::new(&config, "h,ratio,p_mc,std_err,p_upper,slope");
    for point in &points {
        csv.row(&[
            CsvField::Float(point.height),
            CsvField::Float(point.ratio),
            CsvField::Float(point.p_mc.value),
            CsvField::Float(point.p_mc.std_err),
            CsvField::Float(point.p_upper),
            CsvField::Float(slope),
        ]);
    }
    Ok(csv.finish())
}

fn run_signs(max_m: u32) -> Result<String, RunError> {
    if max_m < 2 {
        return Err(RunError::validation(
            "invalid_argument",
            "max-m must be at least 2",
        ));
    }
    let table = ball3::sign_pattern_check(max_m);
    let config = EffectiveConfig {
        command: "ball3d-signs".into(),
        max_m: Some(max_m),
        ..Default::default()
    };
    let mut csv = Csv::new(&config, "m,closed_form,numeric,sign_ok");
    let mut all_ok = true;
    for row in &table {
        all_ok &= row.sign_ok;
        csv.row(&[
            CsvField::Int(row.m as i64),
            CsvField::Float(row.closed_form),
            CsvField::Float(row.numeric),
            CsvField::Bool(row.sign_ok),
        ]);
    }
    let text = csv.finish();
    if !all_ok {
        // a sign violation would falsify the key lemma; surface it loudly
        return Err(RunError {
            exit_code: EXIT_NONCONVERGENCE,
            json: output::error_json(
                "sign_violation",
                "Legendre coefficient sign pattern violated",
            ),
        });
    }
    Ok(text)
}

fn run_ball_estimate(samples: u64, seed: u64, threads: Option<usize>) -> Result<String, RunError> {
    let pool = drivers::build_pool(drivers::effective_threads(threads));
    let region = ConvexRegion::ball3(1.0).map_err(RunError::from_core)?;
    let est = drivers::estimate_p(&pool, &region, samples, seed).map_err(RunError::from_core)?;
    let config = EffectiveConfig {
        command: "ball3d-estimate".into(),
        samples: Some(samples),
        seed: Some(seed),
        ..Default::default()
    };
    Ok(output::to_json(&output::EstimateOut {
        config,
        value: est.value,
        std_err: est.std_err,
        n: est.n_samples,
        seed: est.seed,
    }))
}
