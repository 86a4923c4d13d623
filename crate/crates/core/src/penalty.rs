//! Quadratic penalties and the windows they induce.
//!
//! A penalty is summarized by its eigenvalue sequence: `ε_p` for a Sobolev
//! penalty in continuous frequency, `e_p` for a circulant penalty matrix in
//! discrete frequency. The induced data window is `ω_n = (1 + λ e_n)^{-1}`,
//! and only the first `N` eigenvalues ever reach the estimate.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::fourier::dft;
use crate::linalg::DenseMatrix;
use crate::{Error, Result};

/// Absolute tolerance for the Hermitian and positivity checks on circulant
/// eigenvalues.
pub const EIGEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum PenaltySpec {
    /// `Σ_q α_q ∫ |a^{(q)}(ν)|² dν`
    Sobolev(Vec<f64>),
    /// First row of a Hermitian circulant matrix `Π_a`.
    CirculantRow(Vec<Complex64>),
    /// Eigenvalues given directly.
    Tabulated(Vec<f64>),
}

impl PenaltySpec {
    /// The identity penalty, which yields the usual periodogram.
    pub fn identity() -> Self {
        PenaltySpec::Tabulated(alloc::vec![1.0])
    }

    /// Eigenvalues `e_0..e_{len-1}`. Tabulated sequences shorter than `len`
    /// are rejected; a one-element table is broadcast.
    pub fn eigenvalues(&self, len: usize) -> Result<Vec<f64>> {
        match self {
            PenaltySpec::Sobolev(alphas) => sobolev_eigenvalues(alphas, (0..len).map(|p| p as i64)),
            PenaltySpec::CirculantRow(row) => {
                if row.len() != len {
                    return Err(Error::LengthMismatch { expected: len, found: row.len() });
                }
                circulant_eigenvalues(row)
            }
            PenaltySpec::Tabulated(evals) => {
                check_nonnegative(evals)?;
                match evals.len() {
                    1 => Ok(alloc::vec![evals[0]; len]),
                    l if l >= len => Ok(evals[..len].to_vec()),
                    l => Err(Error::LengthMismatch { expected: len, found: l }),
                }
            }
        }
    }

    /// Dense `P × P` penalty matrix. A circulant row is laid out directly;
    /// other forms are assembled as `F_P diag(e) F_P^†` entry by entry.
    pub fn dense_matrix(&self, p: usize) -> Result<DenseMatrix> {
        match self {
            PenaltySpec::CirculantRow(row) => {
                if row.len() != p {
                    return Err(Error::LengthMismatch { expected: p, found: row.len() });
                }
                circulant_eigenvalues(row)?;
                Ok(circulant_matrix(row))
            }
            _ => {
                let evals = self.eigenvalues(p)?;
                Ok(DenseMatrix::from_fn(p, p, |j, k| {
                    let shift = (p + k - j) % p;
                    evals
                        .iter()
                        .enumerate()
                        .map(|(q, &e)| e * crate::fourier::unit_phase(((q * shift) % p) as f64 / p as f64))
                        .sum::<Complex64>()
                        / p as f64
                }))
            }
        }
    }
}

fn check_nonnegative(values: &[f64]) -> Result<()> {
    match values.iter().position(|&v| !(v >= 0.0)) {
        Some(index) => Err(Error::NegativeCoefficient { index, value: values[index] }),
        None => Ok(()),
    }
}

/// `C[j, k] = row[(k - j) mod P]`.
pub fn circulant_matrix(row: &[Complex64]) -> DenseMatrix {
    let p = row.len();
    DenseMatrix::from_fn(p, p, |j, k| row[(p + k - j) % p])
}

/// Real window coefficients `ω_n`, `n = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    coeffs: Vec<f64>,
}

impl Window {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = coeffs.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coeffs })
    }

    /// The rectangular window `ω ≡ c`.
    pub fn constant(n: usize, value: f64) -> Self {
        Self { coeffs: alloc::vec![value; n.max(1)] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `ε_p = Σ_q α_q (2πp)^{2q}`.
pub fn sobolev_eigenvalue(alphas: &[f64], p: i64) -> f64 {
    let w2 = (2.0 * PI * p as f64).powi(2);
    // Horner in (2πp)².
    alphas.iter().rev().fold(0.0, |acc, &a| acc * w2 + a)
}

pub fn sobolev_eigenvalues(alphas: &[f64], indices: impl IntoIterator<Item = i64>) -> Result<Vec<f64>> {
    if alphas.is_empty() {
        return Err(Error::DegeneratePenalty);
    }
    check_nonnegative(alphas)?;
    if alphas.iter().all(|&a| a == 0.0) {
        return Err(Error::DegeneratePenalty);
    }
    Ok(indices.into_iter().map(|p| sobolev_eigenvalue(alphas, p)).collect())
}

/// Eigenvalues of the circulant matrix with first row `row`:
/// `e_p = Σ_m row_m e^{-2iπpm/P}` (the unnormalized DFT of the row).
pub fn circulant_eigenvalues(row: &[Complex64]) -> Result<Vec<f64>> {
    let scale = (row.len() as f64).sqrt();
    let raw = dft(row)?;
    raw.iter()
        .enumerate()
        .map(|(index, z)| {
            let z = z * scale;
            if z.im.abs() > EIGEN_TOL {
                Err(Error::NonHermitianPenalty { index, imag: z.im })
            } else if z.re < -EIGEN_TOL {
                Err(Error::IndefinitePenalty { index, value: z.re })
            } else {
                Ok(z.re.max(0.0))
            }
        })
        .collect()
}

/// `ω_n = (1 + λ e_n)^{-1}` for `n = 0..N`.
pub fn window_from_eigenvalues(evals: &[f64], lambda: f64, n: usize) -> Result<Window> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeLambda(lambda));
    }
    if evals.len() < n {
        return Err(Error::LengthMismatch { expected: n, found: evals.len() });
    }
    check_nonnegative(&evals[..n])?;
    Window::new(evals[..n].iter().map(|&e| 1.0 / (1.0 + lambda * e)).collect())
}

/// Named window families, each expressed as a penalty eigenvalue sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedWindow {
    /// `e_n ≡ 1`: rectangular window, usual periodogram.
    Usual,
    /// `e_n = 4π²n²` (first-order Sobolev penalty).
    Cauchy,
    /// `e_n = 1 - cos(2πn/P)` (circular first difference).
    InvCosine,
    Hamming,
    Hanning,
    Triangular,
}

impl NamedWindow {
    pub const ALL: [NamedWindow; 6] = [
        NamedWindow::Usual,
        NamedWindow::Cauchy,
        NamedWindow::InvCosine,
        NamedWindow::Hamming,
        NamedWindow::Hanning,
        NamedWindow::Triangular,
    ];

    /// The selection bank: Cauchy, inverse cosine, Hanning, Hamming, triangular.
    pub const BANK: [NamedWindow; 5] = [
        NamedWindow::Cauchy,
        NamedWindow::InvCosine,
        NamedWindow::Hanning,
        NamedWindow::Hamming,
        NamedWindow::Triangular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedWindow::Usual => "usual",
            NamedWindow::Cauchy => "cauchy",
            NamedWindow::InvCosine => "inv-cosine",
            NamedWindow::Hamming => "hamming",
            NamedWindow::Hanning => "hanning",
            NamedWindow::Triangular => "triangular",
        }
    }

    /// One-sided reference lag window `ω̄_n` for the classic families.
    pub fn reference(self, n: usize, len: usize) -> Option<f64> {
        let x = n as f64 / len as f64;
        match self {
            NamedWindow::Hamming => Some(0.54 + 0.46 * (PI * x).cos()),
            NamedWindow::Hanning => Some(0.5 * (1.0 + (PI * x).cos())),
            NamedWindow::Triangular => Some(1.0 - x),
            _ => None,
        }
    }
}

impl fmt::Display for NamedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        match normalized.as_str() {
            "usual" | "rectangular" => Ok(NamedWindow::Usual),
            "cauchy" => Ok(NamedWindow::Cauchy),
            "inv-cosine" | "inverse-cosine" | "invcosine" => Ok(NamedWindow::InvCosine),
            "hamming" => Ok(NamedWindow::Hamming),
            "hanning" | "hann" => Ok(NamedWindow::Hanning),
            "triangular" | "triangle" | "bartlett" => Ok(NamedWindow::Triangular),
            _ => Err(Error::UnknownWindow(s.to_string())),
        }
    }
}

/// First `N` eigenvalues of the named family. `p` is the discrete grid size
/// (used by the inverse cosine only, which needs `P ≥ N`).
///
/// Classic windows are embedded as `e_n = 1/ω̄_n - 1`, so that `λ = 1`
/// reproduces the reference lag window exactly; all of them have `e_0 = 0`.
pub fn named_window_eigenvalues(window: NamedWindow, n: usize, p: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(match window {
        NamedWindow::Usual => alloc::vec![1.0; n],
        NamedWindow::Cauchy => (0..n).map(|k| 4.0 * PI * PI * (k * k) as f64).collect(),
        NamedWindow::InvCosine => {
            if p < n {
                return Err(Error::GridTooSmall { samples: n, grid: p });
            }
            (0..n).map(|k| 1.0 - (2.0 * PI * k as f64 / p as f64).cos()).collect()
        }
        classic => (0..n)
            .map(|k| {
                let w = classic.reference(k, n).unwrap_or(1.0);
                if k == 0 {
                    0.0
                } else {
                    1.0 / w - 1.0
                }
            })
            .collect(),
    })
}

/// The inverse-cosine λ′ whose window matches the Cauchy window of parameter
/// `λ` as `P → ∞`: `P²(1 - cos(2πn/P)) → 2π²n²`, hence `λ′ = 2P²λ`.
pub fn inv_cosine_equivalent_lambda(lambda: f64, p: usize) -> f64 {
    2.0 * (p as f64).powi(2) * lambda
}

/// Rescales `e` by `c = (1/P) Σ_p e_p^{-1}` so that `Π_a^{-1}` has a unit
/// diagonal. Returns the scaled eigenvalues and `c`.
pub fn normalize_penalty(evals: &[f64]) -> Result<(Vec<f64>, f64)> {
    if evals.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_nonnegative(evals)?;
    if let Some(i) = evals.iter().position(|&e| e == 0.0) {
        return Err(Error::NormalizationUndefined(i));
    }
    let c = evals.iter().map(|e| 1.0 / e).sum::<f64>() / evals.len() as f64;
    Ok((evals.iter().map(|e| e * c).collect(), c))
}
