//! Fourier operators with a fixed normalization.
//!
//! `F_P` carries `P^{-1/2}` on both the forward and the inverse transform, so
//! it is unitary and symmetric. `W_NP` (discrete synthesis, `C^P → C^N`) is the
//! first `N` rows of `F_P^†`; consequently `W_NP F_P = [I_N O]` and
//! `W_NP^† y = F_P ỹ_P` where `ỹ_P` is `y` zero-padded to length `P`.
//!
//! The continuous-frequency adjoint `W_N^† z (ν) = Σ_n z_n e^{-2iπνn}` has no
//! normalization factor.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::fft::{self, Direction};
use crate::{Error, Result};

/// `N ≥ 1` finite complex samples observed at integer times `0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::new(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// `Σ_n |y_n|²`
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Multiplies every sample by the real taper `coeffs` (which must be at
    /// least as long as the series).
    pub fn tapered(&self, coeffs: &[f64]) -> Result<Vec<Complex64>> {
        if coeffs.len() < self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: coeffs.len() });
        }
        Ok(self.samples.iter().zip(coeffs).map(|(y, w)| y * *w).collect())
    }
}

/// Complex amplitudes on the discrete grid `ν_p = p/P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDf {
    amps: Vec<Complex64>,
}

impl SpectrumDf {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self { amps })
    }

    pub fn grid_size(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn frequency(&self, p: usize) -> f64 {
        p as f64 / self.amps.len() as f64
    }

    pub fn frequencies(&self) -> FrequencyGrid {
        FrequencyGrid::uniform(self.amps.len())
    }

    /// `Σ_p |a_p|²`
    pub fn energy(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Strictly increasing frequencies inside `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let in_range = points.iter().all(|&v| (0.0..1.0).contains(&v));
        let increasing = points.windows(2).all(|w| w[0] < w[1]);
        if !(in_range && increasing) {
            return Err(Error::InvalidGrid);
        }
        Ok(Self { points })
    }

    /// `{p/M : p = 0..M}`; `m` is clamped to at least 1.
    pub fn uniform(m: usize) -> Self {
        let m = m.max(1);
        Self { points: (0..m).map(|p| p as f64 / m as f64).collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `Some(M)` when the grid is exactly `{p/M}`.
    pub fn uniform_size(&self) -> Option<usize> {
        let m = self.points.len();
        self.points
            .iter()
            .enumerate()
            .all(|(p, &v)| v == p as f64 / m as f64)
            .then_some(m)
    }
}

/// Samples of a continuous-frequency amplitude function on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCf {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl SpectrumCf {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn unitary(v: &[Complex64], dir: Direction) -> Result<Vec<Complex64>> {
    if v.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = v.to_vec();
    fft::transform(&mut out, dir);
    let scale = 1.0 / (v.len() as f64).sqrt();
    out.iter_mut().for_each(|z| *z *= scale);
    Ok(out)
}

/// `F_P v`, with `F_P[p, q] = P^{-1/2} exp(-2iπpq/P)`.
pub fn dft(v: &[Complex64]) -> Result<Vec<Complex64>> {
    unitary(v, Direction::Forward)
}

/// `F_P^† v`, the exact inverse of [`dft`].
pub fn idft(v: &[Complex64]) -> Result<Vec<Complex64>> {
    unitary(v, Direction::Backward)
}

/// Direct `O(P²)` evaluation of [`dft`]; kept as a reference implementation.
pub fn dft_direct(v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = v.len();
    let scale = 1.0 / (len as f64).sqrt();
    Ok((0..len)
        .map(|p| {
            v.iter()
                .enumerate()
                .map(|(q, &x)| x * unit_phase(-(((p * q) % len) as f64) / len as f64))
                .sum::<Complex64>()
                * scale
        })
        .collect())
}

/// `exp(2iπ t)`
pub(crate) fn unit_phase(t: f64) -> Complex64 {
    let angle = 2.0 * PI * t;
    Complex64::new(angle.cos(), angle.sin())
}

/// `y` followed by `P - N` zeros.
pub fn zero_pad(y: &[Complex64], p: usize) -> Result<Vec<Complex64>> {
    if p < y.len() {
        return Err(Error::GridTooSmall { samples: y.len(), grid: p });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); p];
    out[..y.len()].copy_from_slice(y);
    Ok(out)
}

/// `W_NP a`: the first `N` entries of `F_P^† a`.
pub fn synthesis_df(a: &SpectrumDf, n: usize) -> Result<TimeSeries> {
    let p = a.grid_size();
    if n > p {
        return Err(Error::GridTooSmall { samples: n, grid: p });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut full = idft(a.amps())?;
    full.truncate(n);
    TimeSeries::new(full)
}

/// `W_NP^† y = F_P ỹ_P`.
pub fn adjoint_synthesis_df(y: &TimeSeries, p: usize) -> Result<SpectrumDf> {
    SpectrumDf::new(dft(&zero_pad(y.samples(), p)?)?)
}

/// `W_N^† z` evaluated at `ν`: `Σ_n z_n e^{-2iπνn}`.
pub fn adjoint_synthesis_at(z: &[Complex64], nu: f64) -> Complex64 {
    z.iter()
        .enumerate()
        .map(|(n, &zn)| {
            let t = (nu * n as f64).fract();
            zn * unit_phase(-t)
        })
        .sum()
}

/// `W_N^† z` on an arbitrary grid, one independent sum per grid point.
pub fn adjoint_synthesis_cf(z: &[Complex64], grid: &FrequencyGrid) -> SpectrumCf {
    let values = grid.points().iter().map(|&nu| adjoint_synthesis_at(z, nu)).collect();
    SpectrumCf { grid: grid.clone(), values }
}

/// `W_N^† z` on the uniform grid `p/M`, by FFT. Works for any `M ≥ 1`
/// (samples beyond `M` are folded, which is exact on that grid).
pub fn adjoint_synthesis_uniform(z: &[Complex64], m: usize) -> Result<SpectrumCf> {
    if m == 0 {
        return Err(Error::invalid("m", "grid size must be positive"));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (n, &zn) in z.iter().enumerate() {
        buf[n % m] += zn;
    }
    fft::transform(&mut buf, Direction::Forward);
    SpectrumCf::new(FrequencyGrid::uniform(m), buf)
}

/// Evaluates `W_N^† z` on `grid`, taking the FFT path when the grid is uniform.
pub fn evaluate_on_grid(z: &[Complex64], grid: &FrequencyGrid) -> Result<SpectrumCf> {
    match grid.uniform_size() {
        Some(m) => adjoint_synthesis_uniform(z, m),
        None => Ok(adjoint_synthesis_cf(z, grid)),
    }
}
