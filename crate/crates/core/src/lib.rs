//! Periodograms as minimizers of regularized least-squares criteria.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! * [`fourier`]: the unitary DFT `F_P`, the truncated synthesis operators and
//!   their adjoints, zero-padding.
//! * [`penalty`]: Sobolev / circulant / tabulated penalties, their eigenvalues
//!   and the windows they induce.
//! * [`estimator`]: closed-form usual and windowed periodograms (discrete and
//!   continuous frequency) plus a dense normal-equation oracle.
//! * [`prior_process`]: the Gaussian prior on spectral amplitudes, its
//!   correlation kernel, conditional and increment covariances, and a dense
//!   Gaussian-conditioning oracle for the posterior mean.
//! * [`likelihood`]: the marginal co-log-likelihood, concentrated over the
//!   prior power, with λ search, `(α₀, α₁)` grid search and window selection.
//! * [`metrics`]: L1, L2, Itakura-Saito and symmetric Itakura-Saito distances.
//! * [`simulate`]: the filtered-noise benchmark comparing the usual periodogram
//!   against the maximum-likelihood regularized one.
//!
//! # Conventions
//!
//! Frequencies live on the half-open interval `[0, 1)`. The DFT matrix is
//! `F_P[p, q] = P^{-1/2} exp(-2iπpq/P)` and the discrete synthesis operator is
//! `W_NP[n, p] = P^{-1/2} exp(+2iπpn/P)`, so that `W_NP` is the first `N` rows
//! of `F_P^†` and `W_NP^† y = F_P · zero_pad(y, P)`. The continuous adjoint
//! `W_N^† z = Σ_n z_n exp(-2iπνn)` carries no normalization, hence on the grid
//! `p/P` it equals `√P` times the discrete one.

#![no_std]
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod fft;
pub mod estimator;
pub mod fourier;
pub mod likelihood;
pub mod linalg;
pub mod metrics;
pub mod penalty;
pub mod prior_process;
pub mod quadrature;
pub mod rng;
pub mod simulate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
