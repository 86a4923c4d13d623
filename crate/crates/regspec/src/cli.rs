//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use regspec_core::estimator::{self, power_spectrum, PowerNormalization};
use regspec_core::fourier::{FrequencyGrid, TimeSeries};
use regspec_core::likelihood::{self, LambdaSearch};
use regspec_core::penalty::{self, NamedWindow, PenaltySpec};
use regspec_core::simulate::{self, NoiseKind, SimConfig};
use serde_json::json;

use crate::bench;
use crate::error::{CliError, CliResult};
use crate::format::fmt_num;
use crate::io::{self, SpectrumFile, SpectrumMeta};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "regspec", version, about = "Regularized periodograms and likelihood-based window selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the spectrum of a signal.
    Periodogram(PeriodogramArgs),
    /// Fit hyperparameters by minimizing the co-log-likelihood.
    Fit(FitArgs),
    /// Pick the window of a bank with the lowest co-log-likelihood.
    Select(SelectArgs),
    /// Run the filtered-noise benchmark.
    Simulate(SimulateArgs),
    /// Tabulate a window.
    Windows(WindowsArgs),
    /// Write one realization of the benchmark signal.
    GenSignal(GenSignalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Noise {
    Complex,
    Real,
}

impl From<Noise> for NoiseKind {
    fn from(n: Noise) -> Self {
        match n {
            Noise::Complex => NoiseKind::Complex,
            Noise::Real => NoiseKind::Real,
        }
    }
}

#[derive(Debug, Args)]
pub struct PeriodogramArgs {
    /// Signal CSV (`index,re,im`), or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Discrete estimate on `P` frequencies `p/P`.
    #[arg(long, conflicts_with = "grid")]
    pub pad: Option<usize>,
    /// Continuous estimate sampled on `M` frequencies `m/M` (default `8N`).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Named window (usual, cauchy, inv-cosine, hamming, hanning, triangular).
    #[arg(long, conflicts_with = "alpha")]
    pub window: Option<String>,
    /// Sobolev coefficients `α₀,α₁,…`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Divide the power column by `N`.
    #[arg(long)]
    pub per_sample: bool,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LambdaRange {
    /// `lo:hi[:points]` for the λ scan.
    #[arg(long, default_value = "1e-8:1e8:200")]
    pub lambda_range: String,
}

impl LambdaRange {
    fn search(&self) -> CliResult<LambdaSearch> {
        let parts = split_numbers(&self.lambda_range, ':')?;
        let mut search = LambdaSearch::default();
        match parts.as_slice() {
            [lo, hi] => {
                search.lo = *lo;
                search.hi = *hi;
            }
            [lo, hi, points] => {
                search.lo = *lo;
                search.hi = *hi;
                search.points = as_count(*points)?;
            }
            _ => return Err(CliError::Config(format!("bad --lambda-range `{}`", self.lambda_range))),
        }
        search.validate()?;
        Ok(search)
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub input: PathBuf,
    /// Fit λ for a named window instead of the Sobolev grid.
    #[arg(long, conflicts_with = "alpha_grid")]
    pub window: Option<String>,
    /// `lo:hi:n×lo:hi:n` log grids for α₀ and α₁ (`x` also separates).
    #[arg(long)]
    pub alpha_grid: Option<String>,
    #[command(flatten)]
    pub range: LambdaRange,
    /// Grid size used by the inverse cosine (default `8N`).
    #[arg(long)]
    pub pad: Option<usize>,
    /// Write the CLL surface as `alpha0,alpha1,cll` CSV.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    pub input: PathBuf,
    /// Comma-separated window names.
    #[arg(long, default_value = "cauchy,inv-cosine,hanning,hamming,triangular")]
    pub bank: String,
    #[command(flatten)]
    pub range: LambdaRange,
    #[arg(long)]
    pub pad: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    #[arg(long, default_value = "1,-2,3,-2,1", allow_hyphen_values = true)]
    pub taps: String,
    #[arg(long, default_value_t = 100)]
    pub realizations: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Comparison grid size (default `4N`).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub alpha_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = Noise::Complex)]
    pub noise: Noise,
    /// Also run window selection over the default bank.
    #[arg(long)]
    pub select: bool,
    /// Write plot spectra for the first `K` realizations (default all).
    #[arg(long)]
    pub spectra: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WindowsArgs {
    #[arg(long)]
    pub window: String,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long)]
    pub n: usize,
    /// Grid size used by the inverse cosine (default `8N`).
    #[arg(long)]
    pub pad: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenSignalArgs {
    #[arg(long, default_value_t = 512)]
    pub n: usize,
    #[arg(long, default_value = "1,-2,3,-2,1", allow_hyphen_values = true)]
    pub taps: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Realization index.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    #[arg(long, value_enum, default_value_t = Noise::Complex)]
    pub noise: Noise,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn split_numbers(s: &str, sep: char) -> CliResult<Vec<f64>> {
    s.split(sep)
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Config(format!("bad number `{t}` in `{s}`"))))
        .collect()
}

fn as_count(x: f64) -> CliResult<usize> {
    if x >= 1.0 && x.fract() == 0.0 {
        Ok(x as usize)
    } else {
        Err(CliError::Config(format!("expected a positive integer, got {x}")))
    }
}

fn parse_window(name: &str) -> CliResult<NamedWindow> {
    name.parse().map_err(|e: regspec_core::Error| CliError::Config(e.to_string()))
}

/// `lo:hi:n` → log-spaced grid.
fn parse_log_grid(spec: &str) -> CliResult<Vec<f64>> {
    match split_numbers(spec, ':')?.as_slice() {
        [lo, hi, n] if *lo > 0.0 && hi >= lo => Ok(likelihood::log_space(*lo, *hi, as_count(*n)?)),
        _ => Err(CliError::Config(format!("bad grid `{spec}`, expected lo:hi:n"))),
    }
}

pub fn parse_alpha_grid(spec: &str) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let parts: Vec<&str> = spec.split(['×', 'x', 'X']).collect();
    match parts.as_slice() {
        [a0, a1] => Ok((parse_log_grid(a0)?, parse_log_grid(a1)?)),
        _ => Err(CliError::Config(format!("bad --alpha-grid `{spec}`"))),
    }
}

fn default_alpha_grid() -> (Vec<f64>, Vec<f64>) {
    let c = SimConfig::default();
    (c.alpha0_grid, c.alpha1_grid)
}

fn parse_taps(s: &str) -> CliResult<Vec<f64>> {
    split_numbers(s, ',')
}

fn output_format(explicit: Option<OutputFormat>, out: Option<&Path>) -> OutputFormat {
    explicit.unwrap_or_else(|| match out.and_then(|p| p.extension()) {
        Some(e) if e == "json" => OutputFormat::Json,
        _ => OutputFormat::Csv,
    })
}

pub fn periodogram(args: &PeriodogramArgs) -> CliResult<SpectrumFile> {
    let y = io::read_signal(&args.input)?;
    let n = y.len();
    let window_name = args.window.as_deref().map(parse_window).transpose()?;
    let norm = if args.per_sample { PowerNormalization::PerSample } else { PowerNormalization::Raw };
    let penalty_label = match (&args.alpha, window_name) {
        (Some(a), _) => format!("sobolev:{}", a.iter().map(|&v| fmt_num(v)).collect::<Vec<_>>().join(",")),
        (None, w) => format!("window:{}", w.unwrap_or(NamedWindow::Usual).name()),
    };
    let (grid, values, samples) = if let Some(p) = args.pad {
        let spec = match &args.alpha {
            Some(a) => PenaltySpec::Sobolev(a.clone()),
            None => PenaltySpec::Tabulated(penalty::named_window_eigenvalues(
                window_name.unwrap_or(NamedWindow::Usual),
                n,
                p,
            )?),
        };
        let est = estimator::windowed_periodogram_df(&y, p, args.lambda, &spec)?;
        (est.spectrum.frequencies(), est.spectrum.values().to_vec(), n)
    } else {
        let m = args.grid.unwrap_or(estimator::DEFAULT_PAD_FACTOR * n);
        if m == 0 {
            return Err(CliError::Config("--grid must be positive".into()));
        }
        let grid = FrequencyGrid::uniform(m);
        let est = match &args.alpha {
            Some(a) => estimator::windowed_periodogram_cf(&y, args.lambda, a, &grid)?,
            None => {
                let evals = penalty::named_window_eigenvalues(window_name.unwrap_or(NamedWindow::Usual), n, m.max(n))?;
                let window = penalty::window_from_eigenvalues(&evals, args.lambda, n)?;
                estimator::windowed_cf_with_window(&y, window, args.lambda, &grid)?
            }
        };
        (grid, est.spectrum.values().to_vec(), n)
    };
    let power = power_spectrum(&values, samples, norm);
    let meta = SpectrumMeta {
        lambda: Some(args.lambda),
        window: Some(window_name.map_or_else(|| if args.alpha.is_some() { "sobolev".into() } else { "usual".into() }, |w| w.name().into())),
        penalty: Some(penalty_label),
        seed: None,
    };
    Ok(SpectrumFile::new(grid.points(), &values, &power, meta))
}

fn run_periodogram(args: &PeriodogramArgs) -> CliResult<()> {
    let file = periodogram(args)?;
    let text = match output_format(args.format, args.out.as_deref()) {
        OutputFormat::Csv => file.to_csv(),
        OutputFormat::Json => file.to_json(),
    };
    io::write_output(args.out.as_deref(), &text)
}

fn grid_for(pad: Option<usize>, n: usize) -> usize {
    pad.unwrap_or(estimator::DEFAULT_PAD_FACTOR * n)
}

pub fn fit(args: &FitArgs) -> CliResult<serde_json::Value> {
    let y = io::read_signal(&args.input)?;
    if let Some(name) = &args.window {
        let w = parse_window(name)?;
        let evals = penalty::named_window_eigenvalues(w, y.len(), grid_for(args.pad, y.len()))?;
        let report = likelihood::fit_lambda(&y, &evals, &args.range.search()?).map_err(degenerate)?;
        return Ok(report::fit_json(&report, Some(w)));
    }
    let (g0, g1) = match &args.alpha_grid {
        Some(spec) => parse_alpha_grid(spec)?,
        None => default_alpha_grid(),
    };
    let (report, surface) = likelihood::fit_alpha_grid(&y, &g0, &g1).map_err(degenerate)?;
    if let Some(path) = &args.surface {
        fs::write(path, report::surface_csv(&surface)).map_err(|e| CliError::io(path, e))?;
    }
    Ok(report::fit_json(&report, None))
}

fn degenerate(e: regspec_core::Error) -> CliError {
    match e {
        regspec_core::Error::DegenerateData => CliError::Degenerate("the signal is identically zero".into()),
        other => other.into(),
    }
}

pub fn select(args: &SelectArgs) -> CliResult<serde_json::Value> {
    let y = io::read_signal(&args.input)?;
    let bank: Vec<NamedWindow> = args.bank.split(',').map(|s| parse_window(s.trim())).collect::<CliResult<_>>()?;
    if bank.is_empty() {
        return Err(CliError::Config("empty bank".into()));
    }
    let search = args.range.search()?;
    let p = grid_for(args.pad, y.len());
    let mut candidates = Vec::new();
    for &w in &bank {
        let evals = penalty::named_window_eigenvalues(w, y.len(), p)?;
        let r = likelihood::fit_lambda(&y, &evals, &search).map_err(degenerate)?;
        candidates.push(json!({
            "window": w.name(),
            "lambda": crate::format::rounded(r.hyperparams.lambda),
            "cll": crate::format::rounded(r.cll_value),
            "flag": r.flag.name(),
        }));
    }
    let (w, best) = likelihood::select_named_window(&y, &bank, p, &search).map_err(degenerate)?;
    let mut out = report::fit_json(&best, Some(w));
    out.as_object_mut().expect("object").remove("search_trace");
    out.as_object_mut().expect("object").insert("candidates".into(), serde_json::Value::Array(candidates));
    Ok(out)
}

fn sim_config(n: usize, taps: &str, realizations: usize, seed: u64, noise: Noise) -> CliResult<SimConfig> {
    let mut config = SimConfig::new(n, parse_taps(taps)?, realizations, seed);
    config.noise = noise.into();
    config.validate()?;
    Ok(config)
}

pub fn simulate(args: &SimulateArgs) -> CliResult<String> {
    let mut config = sim_config(args.n, &args.taps, args.realizations, args.seed, args.noise)?;
    if let Some(m) = args.grid {
        config.grid_size = m;
    }
    if let Some(spec) = &args.alpha_grid {
        (config.alpha0_grid, config.alpha1_grid) = parse_alpha_grid(spec)?;
    }
    config.validate()?;
    let dir = &args.out_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let write = |name: &str, text: &str| -> CliResult<()> {
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| CliError::io(path, e))
    };
    let threads = bench::threads_from_env();
    let report = bench::run_experiment(&config, threads)?;
    let table = report::table_csv(&report);
    write("report.json", &report::to_json_string(&report::experiment_json(&report)))?;
    write("table.csv", &table)?;
    write("realizations.csv", &report::realizations_csv(&report))?;
    let spectra_dir = dir.join("spectra");
    fs::create_dir_all(&spectra_dir).map_err(|e| CliError::io(&spectra_dir, e))?;
    let keep = args.spectra.unwrap_or(report.realizations.len());
    for r in report.realizations.iter().take(keep) {
        let s = simulate::realization_spectra(&config, r)?;
        let path = spectra_dir.join(format!("realization_{:04}.csv", r.index));
        fs::write(&path, report::spectra_csv(&s)).map_err(|e| CliError::io(path, e))?;
    }
    if args.select {
        let bank = NamedWindow::BANK;
        let picks = bench::select_windows(&config, &bank, &LambdaSearch::default(), threads)?;
        write("selection.csv", &report::histogram_csv(&bank, &bench::histogram(&bank, &picks)))?;
    }
    Ok(table)
}

pub fn windows(args: &WindowsArgs) -> CliResult<String> {
    let w = parse_window(&args.window)?;
    if args.n == 0 {
        return Err(CliError::Config("--n must be positive".into()));
    }
    let evals = penalty::named_window_eigenvalues(w, args.n, grid_for(args.pad, args.n))?;
    let window = penalty::window_from_eigenvalues(&evals, args.lambda, args.n)?;
    let mut out = String::from("n,omega\n");
    for (k, v) in window.coeffs().iter().enumerate() {
        out.push_str(&format!("{k},{}\n", fmt_num(*v)));
    }
    Ok(out)
}

pub fn gen_signal(args: &GenSignalArgs) -> CliResult<TimeSeries> {
    let config = sim_config(args.n, &args.taps, 1, args.seed, args.noise)?;
    Ok(simulate::gen_signal(&config, args.index)?)
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Periodogram(a) => run_periodogram(a),
        Command::Fit(a) => io::write_output(a.out.as_deref(), &report::to_json_string(&fit(a)?)),
        Command::Select(a) => io::write_output(a.out.as_deref(), &report::to_json_string(&select(a)?)),
        Command::Simulate(a) => io::write_output(None, &simulate(a)?),
        Command::Windows(a) => io::write_output(a.out.as_deref(), &windows(a)?),
        Command::GenSignal(a) => io::write_output(a.out.as_deref(), &io::format_signal(&gen_signal(a)?)),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { crate::error::ExitKind::Config as i32 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("regspec: {e}");
            e.exit_code()
        }
    }
}
