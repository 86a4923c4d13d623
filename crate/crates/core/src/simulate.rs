//! Filtered-noise benchmark: usual periodogram (UP) against the first-order
//! Sobolev estimator with ML hyperparameters (RLS+ML), both compared with the
//! true spectrum `|H(ν)|²`.
//!
//! Each realization owns a seed derived from the master seed, so
//! [`run_realization`] can be called in any order or in parallel and
//! [`aggregate`] gives the same report as [`run_experiment`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::estimator::{self, power_spectrum, PowerNormalization};
use crate::fourier::{self, FrequencyGrid, TimeSeries};
use crate::likelihood::{self, FitFlag, LambdaSearch};
use crate::metrics::{roughness, Distance, PowerSpectrumGrid};
use crate::penalty::{NamedWindow, Window};
use crate::rng;
use crate::{Error, Result};

pub const DEFAULT_TAPS: [f64; 5] = [1.0, -2.0, 3.0, -2.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseKind {
    /// Circular complex Gaussian, unit variance.
    #[default]
    Complex,
    /// Real standard Gaussian.
    Real,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub samples: usize,
    pub taps: Vec<f64>,
    pub realizations: usize,
    pub master_seed: u64,
    /// Size `M` of the uniform comparison grid.
    pub grid_size: usize,
    pub noise: NoiseKind,
    pub alpha0_grid: Vec<f64>,
    pub alpha1_grid: Vec<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self::new(512, DEFAULT_TAPS.to_vec(), 100, 1)
    }
}

impl SimConfig {
    /// `M = 4N` and a 30 × 30 log grid on `[1e-10, 1e10]²`.
    pub fn new(samples: usize, taps: Vec<f64>, realizations: usize, master_seed: u64) -> Self {
        let alphas = likelihood::log_space(1e-10, 1e10, 30);
        Self {
            samples,
            taps,
            realizations,
            master_seed,
            grid_size: 4 * samples,
            noise: NoiseKind::Complex,
            alpha0_grid: alphas.clone(),
            alpha1_grid: alphas,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.taps.is_empty() {
            return Err(Error::invalid("taps", "must not be empty"));
        }
        if self.taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("taps", "must be finite"));
        }
        if self.samples < self.taps.len() {
            return Err(Error::invalid("samples", "must be at least the number of taps"));
        }
        if self.realizations == 0 {
            return Err(Error::invalid("realizations", "must be at least 1"));
        }
        if self.grid_size < self.samples {
            return Err(Error::GridTooSmall { samples: self.samples, grid: self.grid_size });
        }
        if self.alpha0_grid.is_empty() || self.alpha1_grid.is_empty() {
            return Err(Error::invalid("alpha grid", "must not be empty"));
        }
        Ok(())
    }

    pub fn grid(&self) -> FrequencyGrid {
        FrequencyGrid::uniform(self.grid_size)
    }

    pub fn realization_seed(&self, index: usize) -> u64 {
        rng::derive_seed(self.master_seed, index as u64)
    }
}

/// `N` fully overlapped outputs of the FIR filter driven by fresh noise.
pub fn gen_signal(config: &SimConfig, index: usize) -> Result<TimeSeries> {
    config.validate()?;
    let taps = &config.taps;
    let len = config.samples + taps.len() - 1;
    let mut g = rng::seeded(config.realization_seed(index));
    let noise: Vec<Complex64> = (0..len)
        .map(|_| match config.noise {
            NoiseKind::Complex => rng::complex_gaussian(&mut g),
            NoiseKind::Real => Complex64::new(rng::real_gaussian(&mut g), 0.0),
        })
        .collect();
    let last = taps.len() - 1;
    let out = (0..config.samples)
        .map(|n| taps.iter().enumerate().map(|(k, &h)| noise[n + last - k] * h).sum())
        .collect();
    TimeSeries::new(out)
}

/// `|H(m/M)|²` with `H(ν) = Σ_k h_k e^{-2iπνk}`.
pub fn true_spectrum(taps: &[f64], grid_size: usize) -> Result<PowerSpectrumGrid> {
    if taps.is_empty() || grid_size == 0 {
        return Err(Error::EmptyInput);
    }
    let values = (0..grid_size)
        .map(|m| {
            let nu = m as f64 / grid_size as f64;
            let h: Complex64 = taps
                .iter()
                .enumerate()
                .map(|(k, &t)| fourier::unit_phase(-(nu * k as f64).fract()) * t)
                .sum();
            h.norm_sqr()
        })
        .collect();
    PowerSpectrumGrid::new(values)
}

/// Per-sample power of the Sobolev estimate `λ = 1, (α₀, α₁)` on the grid.
pub fn sobolev_power(y: &TimeSeries, alpha0: f64, alpha1: f64, grid: &FrequencyGrid) -> Result<PowerSpectrumGrid> {
    let evals = likelihood::sobolev1_eigenvalues(alpha0, alpha1, y.len());
    let window = Window::new(evals.iter().map(|e| 1.0 / (1.0 + e)).collect())?;
    let est = estimator::windowed_cf_with_window(y, window, 1.0, grid)?;
    PowerSpectrumGrid::new(est.power(PowerNormalization::PerSample))
}

/// Per-sample power of the plain periodogram on the grid.
pub fn usual_power(y: &TimeSeries, grid: &FrequencyGrid) -> Result<PowerSpectrumGrid> {
    let est = estimator::usual_periodogram_cf(y, 0.0, grid)?;
    PowerSpectrumGrid::new(power_spectrum(est.values(), y.len(), PowerNormalization::PerSample))
}

/// Distances `[L1, L2, ISD, SIS]` of `estimate` from `truth`.
pub fn distances(estimate: &PowerSpectrumGrid, truth: &PowerSpectrumGrid) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, d) in out.iter_mut().zip(Distance::ALL) {
        *slot = d.eval(estimate, truth, None)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizationResult {
    pub index: usize,
    pub seed: u64,
    /// `[L1, L2, ISD, SIS]` of the usual periodogram.
    pub up: [f64; 4],
    /// `[L1, L2, ISD, SIS]` of the ML-tuned estimate.
    pub ml: [f64; 4],
    pub ml_alphas: (f64, f64),
    pub ml_flag: FitFlag,
    pub ml_cll: f64,
    /// Grid node minimizing each distance.
    pub oracle_alphas: [(f64, f64); 4],
    pub oracle: [f64; 4],
    pub roughness_truth: f64,
    pub roughness_ml: f64,
    pub roughness_oracle: [f64; 4],
}

impl RealizationResult {
    /// `(d_UP - d_ML) / d_UP` per distance.
    pub fn gains(&self) -> [f64; 4] {
        let mut g = [0.0; 4];
        for k in 0..4 {
            g[k] = (self.up[k] - self.ml[k]) / self.up[k];
        }
        g
    }
}

pub fn run_realization(config: &SimConfig, index: usize) -> Result<RealizationResult> {
    config.validate()?;
    let y = gen_signal(config, index)?;
    let grid = config.grid();
    let truth = true_spectrum(&config.taps, config.grid_size)?;

    let up = distances(&usual_power(&y, &grid)?, &truth)?;

    let (fit, _) = likelihood::fit_alpha_grid(&y, &config.alpha0_grid, &config.alpha1_grid)?;
    let ml_alphas = fit.alphas.ok_or(Error::invalid("fit", "missing alphas"))?;
    let ml_power = sobolev_power(&y, ml_alphas.0, ml_alphas.1, &grid)?;
    let ml = distances(&ml_power, &truth)?;

    let mut oracle = [f64::INFINITY; 4];
    let mut oracle_alphas = [(0.0, 0.0); 4];
    let mut roughness_oracle = [0.0; 4];
    for &a0 in &config.alpha0_grid {
        for &a1 in &config.alpha1_grid {
            let power = sobolev_power(&y, a0, a1, &grid)?;
            let d = distances(&power, &truth)?;
            for k in 0..4 {
                if d[k] < oracle[k] {
                    oracle[k] = d[k];
                    oracle_alphas[k] = (a0, a1);
                    roughness_oracle[k] = roughness(&power);
                }
            }
        }
    }

    Ok(RealizationResult {
        index,
        seed: config.realization_seed(index),
        up,
        ml,
        ml_alphas,
        ml_flag: fit.flag,
        ml_cll: fit.cll_value,
        oracle_alphas,
        oracle,
        roughness_truth: roughness(&truth),
        roughness_ml: roughness(&ml_power),
        roughness_oracle,
    })
}

/// Power spectra of one realization for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationSpectra {
    pub truth: PowerSpectrumGrid,
    pub up: PowerSpectrumGrid,
    pub ml: PowerSpectrumGrid,
    /// Oracle estimates in `[L1, L2, ISD, SIS]` order.
    pub oracle: [PowerSpectrumGrid; 4],
}

pub fn realization_spectra(config: &SimConfig, result: &RealizationResult) -> Result<RealizationSpectra> {
    let y = gen_signal(config, result.index)?;
    let grid = config.grid();
    let o = |k: usize| sobolev_power(&y, result.oracle_alphas[k].0, result.oracle_alphas[k].1, &grid);
    Ok(RealizationSpectra {
        truth: true_spectrum(&config.taps, config.grid_size)?,
        up: usual_power(&y, &grid)?,
        ml: sobolev_power(&y, result.ml_alphas.0, result.ml_alphas.1, &grid)?,
        oracle: [o(0)?, o(1)?, o(2)?, o(3)?],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: SimConfig,
    pub realizations: Vec<RealizationResult>,
    pub up_median: [f64; 4],
    pub ml_median: [f64; 4],
    /// Median over realizations of the per-realization gain.
    pub median_gain: [f64; 4],
    /// `(median d_UP - median d_ML) / median d_UP`.
    pub gain_of_medians: [f64; 4],
    /// Realizations where RLS+ML beats UP, per distance.
    pub improved: [usize; 4],
}

impl ExperimentReport {
    /// One-sided binomial test at 5% that RLS+ML wins more often than not.
    pub fn majority_improved(&self, k: usize) -> bool {
        let m = self.realizations.len() as f64;
        // Normal approximation to Binomial(m, 1/2).
        self.improved[k] as f64 > 0.5 * m + 1.645 * 0.5 * m.sqrt()
    }
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// Sorts by realization index and summarizes.
pub fn aggregate(config: &SimConfig, mut realizations: Vec<RealizationResult>) -> Result<ExperimentReport> {
    if realizations.is_empty() {
        return Err(Error::EmptyInput);
    }
    realizations.sort_by_key(|r| r.index);
    let column = |f: &dyn Fn(&RealizationResult) -> f64| -> Vec<f64> { realizations.iter().map(f).collect() };
    let mut report = ExperimentReport {
        config: config.clone(),
        up_median: [0.0; 4],
        ml_median: [0.0; 4],
        median_gain: [0.0; 4],
        gain_of_medians: [0.0; 4],
        improved: [0; 4],
        realizations: Vec::new(),
    };
    for k in 0..4 {
        report.up_median[k] = median(&column(&|r| r.up[k]));
        report.ml_median[k] = median(&column(&|r| r.ml[k]));
        report.median_gain[k] = median(&column(&|r| r.gains()[k]));
        report.gain_of_medians[k] = (report.up_median[k] - report.ml_median[k]) / report.up_median[k];
        report.improved[k] = realizations.iter().filter(|r| r.ml[k] < r.up[k]).count();
    }
    report.realizations = realizations;
    Ok(report)
}

pub fn run_experiment(config: &SimConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let results = (0..config.realizations)
        .map(|i| run_realization(config, i))
        .collect::<Result<Vec<_>>>()?;
    aggregate(config, results)
}

/// Grid size used for window selection: `8N`.
pub fn selection_grid_size(samples: usize) -> usize {
    estimator::DEFAULT_PAD_FACTOR * samples
}

/// Window chosen by the CLL for realization `index`.
pub fn select_window_for(
    config: &SimConfig,
    index: usize,
    bank: &[NamedWindow],
    search: &LambdaSearch,
) -> Result<(NamedWindow, likelihood::FitReport)> {
    let y = gen_signal(config, index)?;
    likelihood::select_named_window(&y, bank, selection_grid_size(config.samples), search)
}

/// Selection counts per bank entry over all realizations.
pub fn selection_histogram(config: &SimConfig, bank: &[NamedWindow], search: &LambdaSearch) -> Result<Vec<usize>> {
    let mut counts = vec![0; bank.len()];
    for i in 0..config.realizations {
        let (_, report) = select_window_for(config, i, bank, search)?;
        counts[report.window_index.ok_or(Error::EmptyBank)?] += 1;
    }
    Ok(counts)
}

/// `(2cos 2πν - 1)⁴`, the factored form of the default taps' `|H|²`.
pub fn default_taps_power(nu: f64) -> f64 {
    (2.0 * (2.0 * PI * nu).cos() - 1.0).powi(4)
}
