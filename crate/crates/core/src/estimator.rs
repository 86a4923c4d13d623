//! Closed-form regularized least-squares periodograms.
//!
//! | criterion | minimizer |
//! |-----------|-----------|
//! | `‖y - W_N a‖² + λ‖a‖²` | `â(ν) = (1+λ)^{-1} Σ_n y_n e^{-2iπνn}` |
//! | `‖y - W_NP a‖² + λ a^†a` | `â = (1+λ)^{-1} F_P ỹ_P` |
//! | `‖y - W_N a‖² + λ R_Q(a)` | `â(ν) = Σ_n ω_n y_n e^{-2iπνn}`, `ω_n = (1+λε_n)^{-1}` |
//! | `‖y - W_NP a‖² + λ a^†Π_a a` | `â = F_P (w ⊙ ỹ_P)`, `w_p = (1+λe_p)^{-1}` |
//!
//! [`rls_oracle_df`] solves the discrete normal equations densely and is only
//! meant for verification at small sizes.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::fourier::{self, FrequencyGrid, SpectrumCf, SpectrumDf, TimeSeries};
use crate::linalg::DenseMatrix;
use crate::penalty::{self, PenaltySpec, Window};
use crate::{Error, Result};

/// Largest grid accepted by [`rls_oracle_df`].
pub const ORACLE_MAX_GRID: usize = 64;

/// Zero-padding factor used when the caller does not choose `P`.
pub const DEFAULT_PAD_FACTOR: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Discrete(SpectrumDf),
    Continuous(SpectrumCf),
}

impl Spectrum {
    pub fn values(&self) -> &[Complex64] {
        match self {
            Spectrum::Discrete(s) => s.amps(),
            Spectrum::Continuous(s) => s.values(),
        }
    }

    pub fn frequencies(&self) -> FrequencyGrid {
        match self {
            Spectrum::Discrete(s) => s.frequencies(),
            Spectrum::Continuous(s) => s.grid().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationResult {
    pub spectrum: Spectrum,
    pub window: Window,
    pub lambda: f64,
    /// `Σ_p |â_p|²` (discrete) or `∫ |â(ν)|² dν` (continuous).
    pub empirical_power: f64,
    /// Number of data samples `N`.
    pub samples: usize,
}

impl EstimationResult {
    pub fn power(&self, normalization: PowerNormalization) -> Vec<f64> {
        power_spectrum(self.spectrum.values(), self.samples, normalization)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerNormalization {
    /// `|â|²`
    #[default]
    Raw,
    /// `|â|² / N`, comparable with a power spectral density.
    PerSample,
}

pub fn power_spectrum(values: &[Complex64], samples: usize, normalization: PowerNormalization) -> Vec<f64> {
    let scale = match normalization {
        PowerNormalization::Raw => 1.0,
        PowerNormalization::PerSample => 1.0 / samples.max(1) as f64,
    };
    values.iter().map(|z| z.norm_sqr() * scale).collect()
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeLambda(lambda))
    }
}

/// Minimizer of `‖y - W_NP a‖² + λ a^†a`: `(1+λ)^{-1} F_P ỹ_P`.
/// `λ = 0` gives the minimum-norm interpolant.
pub fn usual_periodogram_df(y: &TimeSeries, p: usize, lambda: f64) -> Result<SpectrumDf> {
    check_lambda(lambda)?;
    let scale = 1.0 / (1.0 + lambda);
    let raw = fourier::adjoint_synthesis_df(y, p)?;
    SpectrumDf::new(raw.into_amps().into_iter().map(|z| z * scale).collect())
}

/// Minimizer of `‖y - W_N a‖² + λ ∫|a|²`, sampled on `grid`.
pub fn usual_periodogram_cf(y: &TimeSeries, lambda: f64, grid: &FrequencyGrid) -> Result<SpectrumCf> {
    check_lambda(lambda)?;
    let scaled: Vec<Complex64> = y.samples().iter().map(|z| z / (1.0 + lambda)).collect();
    fourier::evaluate_on_grid(&scaled, grid)
}

/// `Σ_n ω_n y_n e^{-2iπνn}` on `grid`.
pub fn windowed_ft(y: &TimeSeries, window: &Window, grid: &FrequencyGrid) -> Result<SpectrumCf> {
    fourier::evaluate_on_grid(&y.tapered(window.coeffs())?, grid)
}

/// `∫₀¹ |Σ_n z_n e^{-2iπνn}|² dν` by the rectangle rule on `N` uniform nodes,
/// which is exact for this trigonometric polynomial.
fn integrated_power(z: &[Complex64]) -> Result<f64> {
    let nodes = z.len().max(1);
    let samples = fourier::adjoint_synthesis_uniform(z, nodes)?;
    Ok(samples.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / nodes as f64)
}

/// Minimizer of `‖y - W_NP a‖² + λ a^†Π_a a`: `F_P (w ⊙ ỹ_P)`.
pub fn windowed_periodogram_df(
    y: &TimeSeries,
    p: usize,
    lambda: f64,
    penalty: &PenaltySpec,
) -> Result<EstimationResult> {
    check_lambda(lambda)?;
    let n = y.len();
    if p < n {
        return Err(Error::GridTooSmall { samples: n, grid: p });
    }
    let evals = match penalty {
        PenaltySpec::CirculantRow(_) => penalty.eigenvalues(p)?,
        _ => penalty.eigenvalues(n)?,
    };
    let window = penalty::window_from_eigenvalues(&evals, lambda, n)?;
    let tapered = y.tapered(window.coeffs())?;
    let amps = fourier::dft(&fourier::zero_pad(&tapered, p)?)?;
    let spectrum = SpectrumDf::new(amps)?;
    let empirical_power = spectrum.energy();
    Ok(EstimationResult { spectrum: Spectrum::Discrete(spectrum), window, lambda, empirical_power, samples: n })
}

/// Minimizer of `‖y - W_N a‖² + λ Σ_q α_q ∫|a^{(q)}|²`, sampled on `grid`.
pub fn windowed_periodogram_cf(
    y: &TimeSeries,
    lambda: f64,
    alphas: &[f64],
    grid: &FrequencyGrid,
) -> Result<EstimationResult> {
    check_lambda(lambda)?;
    let n = y.len();
    let eps = penalty::sobolev_eigenvalues(alphas, (0..n).map(|k| k as i64))?;
    let window = penalty::window_from_eigenvalues(&eps, lambda, n)?;
    windowed_cf_with_window(y, window, lambda, grid)
}

/// Continuous-frequency estimate for an arbitrary window.
pub fn windowed_cf_with_window(
    y: &TimeSeries,
    window: Window,
    lambda: f64,
    grid: &FrequencyGrid,
) -> Result<EstimationResult> {
    let tapered = y.tapered(window.coeffs())?;
    let spectrum = fourier::evaluate_on_grid(&tapered, grid)?;
    let empirical_power = integrated_power(&tapered)?;
    Ok(EstimationResult {
        spectrum: Spectrum::Continuous(spectrum),
        window,
        lambda,
        empirical_power,
        samples: y.len(),
    })
}

/// Dense `N × P` synthesis matrix `W_NP[n, p] = P^{-1/2} e^{2iπpn/P}`.
pub fn synthesis_matrix(n: usize, p: usize) -> DenseMatrix {
    let scale = 1.0 / (p as f64).sqrt();
    DenseMatrix::from_fn(n, p, |row, col| fourier::unit_phase(((row * col) % p) as f64 / p as f64) * scale)
}

/// `(W^†W + λΠ)^{-1} W^† y` by Gaussian elimination, `P ≤ 64`.
pub fn rls_oracle_df(y: &TimeSeries, p: usize, lambda: f64, penalty: &PenaltySpec) -> Result<SpectrumDf> {
    check_lambda(lambda)?;
    let n = y.len();
    if p < n {
        return Err(Error::GridTooSmall { samples: n, grid: p });
    }
    if p > ORACLE_MAX_GRID {
        return Err(Error::OracleTooLarge { size: p, limit: ORACLE_MAX_GRID });
    }
    let w = synthesis_matrix(n, p);
    let wh = w.adjoint();
    let normal = wh.mul(&w)?.add_scaled(&penalty.dense_matrix(p)?, lambda)?;
    let rhs = wh.mul_vec(y.samples())?;
    SpectrumDf::new(normal.solve(&rhs)?)
}

/// `‖y - W_NP a‖² + λ a^†Π a` with `Π` given densely.
pub fn rls_criterion_df(y: &TimeSeries, a: &[Complex64], lambda: f64, penalty: &DenseMatrix) -> Result<f64> {
    let w = synthesis_matrix(y.len(), a.len());
    let fit: f64 = w
        .mul_vec(a)?
        .iter()
        .zip(y.samples())
        .map(|(wa, yn)| (yn - wa).norm_sqr())
        .sum();
    let pa = penalty.mul_vec(a)?;
    let quad: Complex64 = a.iter().zip(&pa).map(|(u, v)| u.conj() * v).sum();
    Ok(fit + lambda * quad.re)
}
