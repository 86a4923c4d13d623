//! Gaussian prior on the spectral amplitudes `a(ν)`.
//!
//! With the penalty `α₀∫|a|² + α₁∫|a'|²` the prior correlation has Fourier
//! coefficients `(α₀ + 4π²α₁p²)^{-1}` and the closed form
//!
//! ```text
//! γ(ν) = cosh(α(|ν| - 1/2)) / (2α' sinh(α/2)),   α = √(α₀/α₁),  α' = √(α₀α₁)
//! ```
//!
//! on `[-1, 1]`. Its integral over `[0, 1]` is `1/α₀` and its one-sided slope
//! at `0⁺` is `-1/(2α₁)`.
//!
//! Conditioning on `a(1)` gives the Markov covariance
//! `sinh(αν') sinh(α(1-ν)) / (α' sinh α)` for `ν ≥ ν'`. As `α₀ → 0` the
//! increments of `a` follow a Brownian bridge with variance `1/α₁`:
//! `Cov = (1/α₁) [[τ(1-τ), -ττ'], [-ττ', τ'(1-τ')]]` for disjoint intervals of
//! lengths `τ`, `τ'`. [`IncrementLaw::PublishedLimit`] keeps the alternative
//! closed form `(1/(2α₁)) [[τ(1-τ), 2ττ'], [2ττ', τ'(1-τ')]]` for comparison;
//! it is off by a factor of two on the diagonal and by a sign off it.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::fourier::{self, FrequencyGrid, SpectrumCf, SpectrumDf, TimeSeries};
use crate::linalg::DenseMatrix;
use crate::penalty::Window;
use crate::quadrature::GaussLegendre;
use crate::rng::{self, SimRng};
use crate::{Error, Result};

/// Above this `α` the hyperbolic ratios are evaluated in exponential form.
pub const STABLE_ALPHA: f64 = 30.0;

/// Default number of positive-frequency terms for [`kernel_series`].
pub const DEFAULT_SERIES_TERMS: usize = 100_000;

/// Largest `N` accepted by [`posterior_mean_oracle`].
pub const ORACLE_MAX_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevKernelParams {
    alpha0: f64,
    alpha1: f64,
}

impl SobolevKernelParams {
    pub fn new(alpha0: f64, alpha1: f64) -> Result<Self> {
        if !(alpha0 > 0.0 && alpha0.is_finite()) {
            return Err(Error::invalid("alpha0", "must be positive and finite"));
        }
        if !(alpha1 > 0.0 && alpha1.is_finite()) {
            return Err(Error::invalid("alpha1", "must be positive and finite"));
        }
        Ok(Self { alpha0, alpha1 })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    /// `α = √(α₀/α₁)`
    pub fn alpha(&self) -> f64 {
        (self.alpha0 / self.alpha1).sqrt()
    }

    /// `α' = √(α₀α₁)`
    pub fn alpha_prime(&self) -> f64 {
        (self.alpha0 * self.alpha1).sqrt()
    }

    /// `ε_p = α₀ + 4π²α₁p²`
    pub fn eigenvalue(&self, p: i64) -> f64 {
        self.alpha0 + 4.0 * PI * PI * self.alpha1 * (p as f64).powi(2)
    }

    /// Analytic one-sided derivative of the kernel at `0⁺`.
    pub fn slope_at_zero(&self) -> f64 {
        -1.0 / (2.0 * self.alpha1)
    }

    /// Smallest `T` whose tail bound `1/(2π²α₁T)` is below `tol`.
    pub fn series_terms_for(&self, tol: f64) -> usize {
        (1.0 / (2.0 * PI * PI * self.alpha1 * tol)).ceil() as usize
    }
}

/// Symmetric partial Fourier sum `Σ_{|p| ≤ terms} e^{-2iπνp} / ε_p`.
/// The imaginary part is pure rounding.
pub fn kernel_series(nu: f64, params: &SobolevKernelParams, terms: usize) -> Complex64 {
    let terms = terms.max(1) as i64;
    // Smallest terms first.
    let mut acc = Complex64::new(0.0, 0.0);
    for p in (1..=terms).rev() {
        let inv = 1.0 / params.eigenvalue(p);
        let t = (nu * p as f64).fract();
        acc += (fourier::unit_phase(-t) + fourier::unit_phase(t)) * inv;
    }
    acc + 1.0 / params.eigenvalue(0)
}

/// Closed-form kernel on `ν ∈ [-1, 1]`.
pub fn kernel_closed(nu: f64, params: &SobolevKernelParams) -> Result<f64> {
    if !(-1.0..=1.0).contains(&nu) {
        return Err(Error::FrequencyOutOfRange(nu));
    }
    Ok(kernel_unchecked(nu.abs(), params))
}

fn kernel_unchecked(u: f64, params: &SobolevKernelParams) -> f64 {
    let alpha = params.alpha();
    let scale = 2.0 * params.alpha_prime();
    if alpha < STABLE_ALPHA {
        (alpha * (u - 0.5)).cosh() / (scale * (alpha / 2.0).sinh())
    } else {
        ((alpha * (u - 1.0)).exp() + (-alpha * u).exp()) / (scale * -(-alpha).exp_m1())
    }
}

/// `∫₀¹ γ(ν) e^{2iπνn} dν`, by Gauss-Legendre quadrature of the closed form.
pub fn kernel_fourier_coefficient(params: &SobolevKernelParams, n: i64) -> Complex64 {
    let rule = GaussLegendre::new(24);
    let panels = 32 + 2 * n.unsigned_abs() as usize;
    let re = rule.integrate(0.0, 1.0, panels, |v| {
        kernel_unchecked(v, params) * (2.0 * PI * (v * n as f64).fract()).cos()
    });
    let im = rule.integrate(0.0, 1.0, panels, |v| {
        kernel_unchecked(v, params) * (2.0 * PI * (v * n as f64).fract()).sin()
    });
    Complex64::new(re, im)
}

/// Covariance of `a(ν), a(ν')` given `a(1)`, by two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalCov {
    /// `γ(ν-ν') - γ(ν)γ(ν')/γ(0)`
    pub from_kernel: f64,
    /// `sinh(αν') sinh(α(1-ν)) / (α' sinh α)`
    pub markov: f64,
}

impl ConditionalCov {
    pub fn discrepancy(&self) -> f64 {
        (self.from_kernel - self.markov).abs()
    }
}

/// `sinh(x) sinh(y) / sinh(z)` for `0 ≤ x, y` and `x + y ≤ z`, overflow-free.
fn sinh_ratio(x: f64, y: f64, z: f64) -> f64 {
    let one_minus = |t: f64| -(-2.0 * t).exp_m1();
    0.5 * (x + y - z).exp() * one_minus(x) * one_minus(y) / one_minus(z)
}

/// Requires `0 ≤ ν' ≤ ν ≤ 1`.
pub fn conditional_cov(nu: f64, nu_prime: f64, params: &SobolevKernelParams) -> Result<ConditionalCov> {
    if !(0.0..=1.0).contains(&nu) || !(0.0..=1.0).contains(&nu_prime) {
        return Err(Error::FrequencyOutOfRange(if (0.0..=1.0).contains(&nu) { nu_prime } else { nu }));
    }
    if nu < nu_prime {
        return Err(Error::UnorderedFrequencies);
    }
    let g = |v: f64| kernel_unchecked(v.abs(), params);
    let from_kernel = g(nu - nu_prime) - g(nu) * g(nu_prime) / g(0.0);
    let alpha = params.alpha();
    let markov = sinh_ratio(alpha * nu_prime, alpha * (1.0 - nu), alpha) / params.alpha_prime();
    Ok(ConditionalCov { from_kernel, markov })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncrementLaw {
    /// `r = 2(γ(0) - γ(τ))`, `ρ = γ(ν₂-ν₂') + γ(ν₁-ν₁') - γ(ν₁-ν₂') - γ(ν₂-ν₁')`.
    General,
    /// `(1/(2α₁)) [[τ(1-τ), 2ττ'], [2ττ', τ'(1-τ')]]`, the published `α₀ → 0`
    /// closed form.
    PublishedLimit,
    /// `(1/α₁) [[τ(1-τ), -ττ'], [-ττ', τ'(1-τ')]]`, the limit of `General`.
    BridgeLimit,
}

/// Covariance of `[a(ν₂) - a(ν₁), a(ν₂') - a(ν₁')]` for
/// `ν₁ ≤ ν₂ ≤ ν₁' ≤ ν₂'` in `[0, 1]`.
pub fn increment_cov(
    nus: [f64; 4],
    params: &SobolevKernelParams,
    law: IncrementLaw,
) -> Result<[[f64; 2]; 2]> {
    let [n1, n2, m1, m2] = nus;
    if let Some(&bad) = nus.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::FrequencyOutOfRange(bad));
    }
    if !(n1 <= n2 && n2 <= m1 && m1 <= m2) {
        return Err(Error::UnorderedFrequencies);
    }
    let (tau, tau_p) = (n2 - n1, m2 - m1);
    let a1 = params.alpha1();
    Ok(match law {
        IncrementLaw::General => {
            let g = |v: f64| kernel_unchecked(v.abs(), params);
            let r = 2.0 * (g(0.0) - g(tau));
            let r_p = 2.0 * (g(0.0) - g(tau_p));
            let rho = g(n2 - m2) + g(n1 - m1) - g(n1 - m2) - g(n2 - m1);
            [[r, rho], [rho, r_p]]
        }
        IncrementLaw::PublishedLimit => {
            let off = 2.0 * tau * tau_p / (2.0 * a1);
            [[tau * (1.0 - tau) / (2.0 * a1), off], [off, tau_p * (1.0 - tau_p) / (2.0 * a1)]]
        }
        IncrementLaw::BridgeLimit => {
            let off = -tau * tau_p / a1;
            [[tau * (1.0 - tau) / a1, off], [off, tau_p * (1.0 - tau_p) / a1]]
        }
    })
}

/// Normalized prior correlation: a Sobolev kernel or tabulated Fourier
/// coefficients `ĉ(n)`, `n = 0..`.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorKernel {
    Sobolev(SobolevKernelParams),
    Tabulated(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriorModel {
    pub kernel: PriorKernel,
    /// Prior power.
    pub r_a: f64,
    /// Noise power.
    pub r_b: f64,
}

impl PriorModel {
    pub fn new(kernel: PriorKernel, r_a: f64, r_b: f64) -> Result<Self> {
        if !(r_a > 0.0 && r_a.is_finite()) {
            return Err(Error::invalid("r_a", "must be positive and finite"));
        }
        if !(r_b > 0.0 && r_b.is_finite()) {
            return Err(Error::invalid("r_b", "must be positive and finite"));
        }
        if let PriorKernel::Tabulated(c) = &kernel {
            if c.is_empty() {
                return Err(Error::EmptyInput);
            }
            if let Some(index) = c.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
                return Err(Error::NegativeCoefficient { index, value: c[index] });
            }
        }
        Ok(Self { kernel, r_a, r_b })
    }

    /// `λ = r_b / r_a`
    pub fn lambda(&self) -> f64 {
        self.r_b / self.r_a
    }

    /// `ĉ(n)` from the closed form `1/ε_n` or the table.
    pub fn coefficient(&self, n: usize) -> Result<f64> {
        match &self.kernel {
            PriorKernel::Sobolev(p) => Ok(1.0 / p.eigenvalue(n as i64)),
            PriorKernel::Tabulated(c) => {
                c.get(n).copied().ok_or(Error::LengthMismatch { expected: n + 1, found: c.len() })
            }
        }
    }

    /// `ω_n = [1 + λ ĉ(n)^{-1}]^{-1}`.
    pub fn posterior_window(&self, n: usize) -> Result<Window> {
        let lambda = self.lambda();
        Window::new((0..n).map(|k| self.coefficient(k).map(|c| 1.0 / (1.0 + lambda / c))).collect::<Result<_>>()?)
    }
}

/// `E[a(ν) | y] = R_{a(ν)y} R_y^{-1} y` by dense Gaussian conditioning.
///
/// `R_y = diag(r_a ĉ(n) + r_b)` and `R_{a(ν)y}[n] = r_a ĉ(n) e^{-2iπνn}`;
/// for the Sobolev kernel `ĉ(n)` is obtained by quadrature of the closed-form
/// correlation, independently of the penalty eigenvalues.
pub fn posterior_mean_oracle(y: &TimeSeries, prior: &PriorModel, grid: &FrequencyGrid) -> Result<SpectrumCf> {
    let n = y.len();
    if n > ORACLE_MAX_SAMPLES {
        return Err(Error::OracleTooLarge { size: n, limit: ORACLE_MAX_SAMPLES });
    }
    let coeffs: Vec<f64> = match &prior.kernel {
        PriorKernel::Sobolev(p) => (0..n).map(|k| kernel_fourier_coefficient(p, k as i64).re).collect(),
        PriorKernel::Tabulated(_) => (0..n).map(|k| prior.coefficient(k)).collect::<Result<_>>()?,
    };
    let mut r_y = DenseMatrix::zeros(n, n);
    for (k, &c) in coeffs.iter().enumerate() {
        let d = prior.r_a * c + prior.r_b;
        if !(d > 0.0) {
            return Err(Error::SingularSystem);
        }
        r_y[(k, k)] = Complex64::new(d, 0.0);
    }
    let weights = r_y.solve(y.samples())?;
    let values = grid
        .points()
        .iter()
        .map(|&nu| {
            coeffs
                .iter()
                .zip(&weights)
                .enumerate()
                .map(|(k, (&c, &w))| fourier::unit_phase(-(nu * k as f64).fract()) * (prior.r_a * c) * w)
                .sum()
        })
        .collect();
    SpectrumCf::new(grid.clone(), values)
}

/// Draws `a ~ CN(0, r_a F_P diag(e^{-1}) F_P^†)`. Owns its generator.
#[derive(Debug, Clone)]
pub struct PriorSampler {
    rng: SimRng,
}

impl PriorSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: rng::seeded(seed) }
    }

    pub fn draw(&mut self, evals: &[f64], r_a: f64) -> Result<SpectrumDf> {
        if evals.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !(r_a > 0.0) {
            return Err(Error::invalid("r_a", "must be positive"));
        }
        if let Some(i) = evals.iter().position(|&e| !(e > 0.0)) {
            return Err(Error::ImproperPrior(i));
        }
        let white: Vec<Complex64> = evals
            .iter()
            .map(|&e| rng::complex_gaussian(&mut self.rng) * (r_a / e).sqrt())
            .collect();
        SpectrumDf::new(fourier::dft(&white)?)
    }
}

/// One draw from a fresh sampler seeded with `seed`.
pub fn sample_prior_df(evals: &[f64], r_a: f64, seed: u64) -> Result<SpectrumDf> {
    PriorSampler::new(seed).draw(evals, r_a)
}
