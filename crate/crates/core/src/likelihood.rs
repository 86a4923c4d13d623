//! Marginal co-log-likelihood (CLL) of the data under the Gaussian model, and
//! hyperparameter fits built on it.
//!
//! The data covariance is `r_a Σ_y` with `Σ_y = diag(λ + e_n^{-1})`, `n = 0..N`.
//! Indices with `e_n = 0` carry an infinite prior variance: their weight in
//! `Σ_y^{-1}` is zero and they are left out of both sums.
//!
//! Smaller CLL is better; every fit here minimizes it.

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // inherent when a dependency links std
use num_traits::Float;

use crate::fourier::TimeSeries;
use crate::penalty::{named_window_eigenvalues, NamedWindow, EIGEN_TOL};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    pub lambda: f64,
    pub r_a: f64,
}

impl Hyperparams {
    pub fn new(lambda: f64, r_a: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid("lambda", "must be positive and finite"));
        }
        if !(r_a > 0.0 && r_a.is_finite()) {
            return Err(Error::invalid("r_a", "must be positive and finite"));
        }
        Ok(Self { lambda, r_a })
    }

    /// Noise power `r_b = λ r_a`.
    pub fn r_b(&self) -> f64 {
        self.lambda * self.r_a
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("lambda", "must be positive and finite"))
    }
}

fn is_zero_eigenvalue(e: f64) -> bool {
    e.abs() <= EIGEN_TOL
}

/// `λ + e_n^{-1}` for `n = 0..N`; `+∞` where `e_n = 0`.
pub fn sigma_y_diag(evals: &[f64], lambda: f64, n: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    if evals.len() < n {
        return Err(Error::LengthMismatch { expected: n, found: evals.len() });
    }
    evals[..n]
        .iter()
        .enumerate()
        .map(|(index, &e)| {
            if !e.is_finite() {
                Err(Error::NonFinite(index))
            } else if is_zero_eigenvalue(e) {
                Ok(f64::INFINITY)
            } else if e < 0.0 {
                Err(Error::NegativeCoefficient { index, value: e })
            } else {
                Ok(lambda + 1.0 / e)
            }
        })
        .collect()
}

/// `(Σ log σ_n, Σ |y_n|²/σ_n, kept)` over the finite entries of `Σ_y`.
fn sums(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<(f64, f64, usize)> {
    let sigma = sigma_y_diag(evals, lambda, y.len())?;
    let mut log_det = 0.0;
    let mut quad = 0.0;
    let mut kept = 0;
    for (s, z) in sigma.iter().zip(y.samples()) {
        if s.is_finite() {
            log_det += s.ln();
            quad += z.norm_sqr() / s;
            kept += 1;
        }
    }
    Ok((log_det, quad, kept))
}

/// `N log r_a + Σ log σ_n + (1/r_a) Σ |y_n|²/σ_n`, `N` counting kept indices.
pub fn cll_full(r_a: f64, lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    if !(r_a > 0.0 && r_a.is_finite()) {
        return Err(Error::invalid("r_a", "must be positive and finite"));
    }
    let (log_det, quad, kept) = sums(lambda, y, evals)?;
    Ok(kept as f64 * r_a.ln() + log_det + quad / r_a)
}

/// `r̂_a = (1/N) Σ |y_n|²/σ_n`, the minimizer of [`cll_full`] in `r_a`.
pub fn optimal_r_a(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    let (_, quad, kept) = sums(lambda, y, evals)?;
    if kept == 0 || !(quad > 0.0) {
        return Err(Error::DegenerateData);
    }
    Ok(quad / kept as f64)
}

/// `Σ log σ_n + N log Σ |y_n|²/σ_n`.
///
/// `min_{r_a} cll_full = concentrated_cll + N(1 - log N)`.
pub fn concentrated_cll(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    let (log_det, quad, kept) = sums(lambda, y, evals)?;
    if kept == 0 || !(quad > 0.0) {
        return Err(Error::DegenerateData);
    }
    Ok(log_det + kept as f64 * quad.ln())
}

/// [`concentrated_cll`] minus its `λ → ∞` limit `N log Σ |y_n|²` (kept indices).
///
/// With `u_n = 1/(λ e_n)` this is `Σ log1p(u_n) + N log1p(-Σ|y_n|² u_n/(1+u_n) / Σ|y_n|²)`,
/// which keeps full relative precision where the plain form has cancelled to
/// rounding noise. Same minimizer in `λ` and in `e`-families sharing kept indices.
pub fn concentrated_cll_excess(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    sigma_y_diag(evals, lambda, y.len())?;
    let (mut log_sum, mut energy, mut drop, mut kept) = (0.0, 0.0, 0.0, 0usize);
    let mut shrunk = 0.0;
    for (&e, z) in evals.iter().zip(y.samples()) {
        if is_zero_eigenvalue(e) {
            continue;
        }
        let u = 1.0 / (lambda * e);
        let w = z.norm_sqr();
        log_sum += u.ln_1p();
        energy += w;
        drop += w * u / (1.0 + u);
        shrunk += w / (1.0 + u);
        kept += 1;
    }
    if kept == 0 || !(energy > 0.0) {
        return Err(Error::DegenerateData);
    }
    let ratio = drop / energy;
    let log_ratio = if ratio < 0.5 { (-ratio).ln_1p() } else { (shrunk / energy).ln() };
    Ok(log_sum + kept as f64 * log_ratio)
}

/// `d/dλ` of [`concentrated_cll`]: `Σ 1/σ_n - N (Σ |y_n|²/σ_n²) / (Σ |y_n|²/σ_n)`.
pub fn concentrated_cll_derivative(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    let sigma = sigma_y_diag(evals, lambda, y.len())?;
    let (mut inv, mut quad, mut quad2, mut kept) = (0.0, 0.0, 0.0, 0usize);
    for (s, z) in sigma.iter().zip(y.samples()) {
        if s.is_finite() {
            inv += 1.0 / s;
            quad += z.norm_sqr() / s;
            quad2 += z.norm_sqr() / (s * s);
            kept += 1;
        }
    }
    if kept == 0 || !(quad > 0.0) {
        return Err(Error::DegenerateData);
    }
    Ok(inv - kept as f64 * quad2 / quad)
}

/// Gradient of [`cll_full`] with respect to `(log r_a, log λ)`.
pub fn cll_full_log_gradient(r_a: f64, lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<[f64; 2]> {
    if !(r_a > 0.0 && r_a.is_finite()) {
        return Err(Error::invalid("r_a", "must be positive and finite"));
    }
    let sigma = sigma_y_diag(evals, lambda, y.len())?;
    let (mut inv, mut quad, mut quad2, mut kept) = (0.0, 0.0, 0.0, 0usize);
    for (s, z) in sigma.iter().zip(y.samples()) {
        if s.is_finite() {
            inv += 1.0 / s;
            quad += z.norm_sqr() / s;
            quad2 += z.norm_sqr() / (s * s);
            kept += 1;
        }
    }
    Ok([kept as f64 - quad / r_a, lambda * (inv - quad2 / r_a)])
}

/// `log{ Π σ_n · [Σ |y_n|²/σ_n]^N }` evaluated literally. Overflows for
/// large `N`; meant as a cross-check of [`concentrated_cll`].
pub fn concentrated_cll_product_form(lambda: f64, y: &TimeSeries, evals: &[f64]) -> Result<f64> {
    let sigma = sigma_y_diag(evals, lambda, y.len())?;
    let mut product = 1.0;
    let mut quad = 0.0;
    let mut kept = 0usize;
    for (s, z) in sigma.iter().zip(y.samples()) {
        if s.is_finite() {
            product *= s;
            quad += z.norm_sqr() / s;
            kept += 1;
        }
    }
    if kept == 0 || !(quad > 0.0) {
        return Err(Error::DegenerateData);
    }
    Ok((product * quad.powi(kept as i32)).ln())
}

/// `log_space(lo, hi, n)`: `n` points evenly spaced in `log` from `lo` to `hi`.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|k| {
                    if k == 0 {
                        lo
                    } else if k == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * k as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSearch {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Golden-section stops once the bracket is this narrow, relative in `λ`.
    pub rel_tol: f64,
    pub max_refine_iters: usize,
}

impl Default for LambdaSearch {
    fn default() -> Self {
        Self { lo: 1e-8, hi: 1e8, points: 200, rel_tol: 1e-6, max_refine_iters: 200 }
    }
}

impl LambdaSearch {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo > 0.0 && self.hi > self.lo && self.hi.is_finite()) {
            return Err(Error::invalid("lambda range", "need 0 < lo < hi < inf"));
        }
        if self.points < 3 {
            return Err(Error::invalid("points", "need at least 3 grid points"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::invalid("rel_tol", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitFlag {
    Interior,
    /// The minimum sits on the edge of the search range.
    BoundaryOptimum,
    /// The objective does not vary over the search range.
    FlatObjective,
}

impl FitFlag {
    pub fn name(self) -> &'static str {
        match self {
            FitFlag::Interior => "interior",
            FitFlag::BoundaryOptimum => "boundary-optimum",
            FitFlag::FlatObjective => "flat-objective",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub hyperparams: Hyperparams,
    /// `concentrated_cll` at `hyperparams.lambda`.
    pub cll_value: f64,
    pub flag: FitFlag,
    /// Index into the bank for [`select_window`].
    pub window_index: Option<usize>,
    /// `(α₀, α₁)` for [`fit_alpha_grid`].
    pub alphas: Option<(f64, f64)>,
    /// Every `(λ, CLL)` evaluated, in evaluation order.
    pub search_trace: Vec<(f64, f64)>,
}

fn is_flat(values: &[f64]) -> bool {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    hi - lo <= 1e-9 * (1.0 + lo.abs())
}

/// First index of the smallest value.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = k;
        }
    }
    best
}

/// Minimizes [`concentrated_cll`] over `λ`: a log-spaced scan, then
/// golden-section search in `log λ` on the bracket around the best node.
pub fn fit_lambda(y: &TimeSeries, evals: &[f64], search: &LambdaSearch) -> Result<FitReport> {
    search.validate()?;
    // The search runs on the excess; the trace records the plain CLL.
    let f = |lambda: f64| concentrated_cll_excess(lambda, y, evals);
    let offset = concentrated_cll(search.lo, y, evals)? - f(search.lo)?;
    let grid = log_space(search.lo, search.hi, search.points);
    let mut trace = Vec::with_capacity(grid.len() + 2 * search.max_refine_iters);
    let mut values = Vec::with_capacity(grid.len());
    for &l in &grid {
        let v = f(l)?;
        values.push(v);
        trace.push((l, v + offset));
    }
    let best = argmin(&values);
    let flat = {
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        hi - lo <= 1e-9 * (1.0 + offset.abs())
    };
    let (lambda, flag) = if flat {
        (search.lo, FitFlag::FlatObjective)
    } else if best == 0 || best == grid.len() - 1 {
        (grid[best], FitFlag::BoundaryOptimum)
    } else {
        let mut a = grid[best - 1].ln();
        let mut b = grid[best + 1].ln();
        let inv_phi = (5.0.sqrt() - 1.0) / 2.0;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = f(c.exp())?;
        let mut fd = f(d.exp())?;
        trace.push((c.exp(), fc + offset));
        trace.push((d.exp(), fd + offset));
        let tol = search.rel_tol.ln_1p();
        let mut iters = 0;
        while b - a > tol && iters < search.max_refine_iters {
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c.exp())?;
                trace.push((c.exp(), fc + offset));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d.exp())?;
                trace.push((d.exp(), fd + offset));
            }
            iters += 1;
        }
        let mid = (0.5 * (a + b)).exp();
        // Keep whichever of the bracket midpoint and the best grid node is lower.
        if f(mid)? <= values[best] {
            (mid, FitFlag::Interior)
        } else {
            (grid[best], FitFlag::Interior)
        }
    };
    let cll_value = concentrated_cll(lambda, y, evals)?;
    let r_a = optimal_r_a(lambda, y, evals)?;
    Ok(FitReport {
        hyperparams: Hyperparams::new(lambda, r_a)?,
        cll_value,
        flag,
        window_index: None,
        alphas: None,
        search_trace: trace,
    })
}

/// CLL over an `(α₀, α₁)` grid, row-major with `α₀` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSurface {
    pub alpha0: Vec<f64>,
    pub alpha1: Vec<f64>,
    pub values: Vec<f64>,
}

impl AlphaSurface {
    pub fn at(&self, i0: usize, i1: usize) -> f64 {
        self.values[i0 * self.alpha1.len() + i1]
    }

    /// `(α₀, α₁, CLL)` rows in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.alpha0
            .iter()
            .flat_map(move |&a0| self.alpha1.iter().map(move |&a1| (a0, a1)))
            .zip(&self.values)
            .map(|((a0, a1), &v)| (a0, a1, v))
    }
}

/// `ε_n = α₀ + 4π²α₁n²` for `n = 0..N`.
pub fn sobolev1_eigenvalues(alpha0: f64, alpha1: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| alpha0 + 4.0 * PI * PI * alpha1 * (k * k) as f64).collect()
}

fn check_sorted_positive(grid: &[f64], name: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(name, "grid is empty"));
    }
    if grid.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::invalid(name, "grid values must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(name, "grid must be strictly increasing"));
    }
    Ok(())
}

/// Minimizes the CLL over the first-order Sobolev family with `λ` fixed to 1;
/// the overall scale of `(α₀, α₁)` plays the role of `λ`.
pub fn fit_alpha_grid(y: &TimeSeries, alpha0_grid: &[f64], alpha1_grid: &[f64]) -> Result<(FitReport, AlphaSurface)> {
    check_sorted_positive(alpha0_grid, "alpha0 grid")?;
    check_sorted_positive(alpha1_grid, "alpha1 grid")?;
    let n = y.len();
    let mut values = Vec::with_capacity(alpha0_grid.len() * alpha1_grid.len());
    let mut excess = Vec::with_capacity(values.capacity());
    for &a0 in alpha0_grid {
        for &a1 in alpha1_grid {
            let e = sobolev1_eigenvalues(a0, a1, n);
            values.push(concentrated_cll(1.0, y, &e)?);
            excess.push(concentrated_cll_excess(1.0, y, &e)?);
        }
    }
    let best = argmin(&excess);
    let (i0, i1) = (best / alpha1_grid.len(), best % alpha1_grid.len());
    let on_edge = |i: usize, len: usize| len > 1 && (i == 0 || i == len - 1);
    let flag = if values.len() > 1 && is_flat(&values) {
        FitFlag::FlatObjective
    } else if on_edge(i0, alpha0_grid.len()) || on_edge(i1, alpha1_grid.len()) {
        FitFlag::BoundaryOptimum
    } else {
        FitFlag::Interior
    };
    let (a0, a1) = (alpha0_grid[i0], alpha1_grid[i1]);
    let evals = sobolev1_eigenvalues(a0, a1, n);
    let report = FitReport {
        hyperparams: Hyperparams::new(1.0, optimal_r_a(1.0, y, &evals)?)?,
        cll_value: values[best],
        flag,
        window_index: None,
        alphas: Some((a0, a1)),
        search_trace: Vec::new(),
    };
    Ok((report, AlphaSurface { alpha0: alpha0_grid.to_vec(), alpha1: alpha1_grid.to_vec(), values }))
}

/// Runs [`fit_lambda`] for each eigenvalue sequence of the bank and keeps the
/// lowest CLL; ties go to the lowest index.
pub fn select_window<E: AsRef<[f64]>>(y: &TimeSeries, bank: &[E], search: &LambdaSearch) -> Result<FitReport> {
    let mut best: Option<FitReport> = None;
    for (k, evals) in bank.iter().enumerate() {
        let mut report = fit_lambda(y, evals.as_ref(), search)?;
        report.window_index = Some(k);
        if best.as_ref().map_or(true, |b| report.cll_value < b.cll_value) {
            best = Some(report);
        }
    }
    best.ok_or(Error::EmptyBank)
}

/// [`select_window`] over named families with grid size `p`.
pub fn select_named_window(
    y: &TimeSeries,
    bank: &[NamedWindow],
    p: usize,
    search: &LambdaSearch,
) -> Result<(NamedWindow, FitReport)> {
    let evals = bank
        .iter()
        .map(|&w| named_window_eigenvalues(w, y.len(), p))
        .collect::<Result<Vec<_>>>()?;
    let report = select_window(y, &evals, search)?;
    let k = report.window_index.ok_or(Error::EmptyBank)?;
    Ok((bank[k], report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use alloc::vec;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn random_series(n: usize, seed: u64) -> TimeSeries {
        let mut g = rng::seeded(seed);
        TimeSeries::new((0..n).map(|_| rng::complex_gaussian(&mut g)).collect()).unwrap()
    }

    fn cauchy(n: usize) -> Vec<f64> {
        named_window_eigenvalues(NamedWindow::Cauchy, n, n).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_y_diag(&[1.0; 3], 0.5, 3).unwrap(), vec![1.5; 3]);
        let s = sigma_y_diag(&cauchy(3), 1.0, 3).unwrap();
        assert!(s[0].is_infinite());
        assert_relative_eq!(s[1], 1.0 + 1.0 / (4.0 * PI * PI), max_relative = 1e-15);
        assert_relative_eq!(s[1], 1.02533, max_relative = 1e-5);
        assert!(sigma_y_diag(&[1.0, -1.0], 1.0, 2).is_err());
    }

    #[test]
    fn white_penalty_is_flat() {
        let y = random_series(16, 3);
        let expected = 16.0 * y.energy().ln();
        for lambda in log_space(1e-6, 1e6, 25) {
            let v = concentrated_cll(lambda, &y, &[1.0; 16]).unwrap();
            assert!((v - expected).abs() < 1e-9 * expected.abs().max(1.0));
        }
        let report = fit_lambda(&y, &[1.0; 16], &LambdaSearch::default()).unwrap();
        assert_eq!(report.flag, FitFlag::FlatObjective);
    }

    #[test]
    fn concentration_identity() {
        let y = random_series(16, 5);
        let e = cauchy(16);
        for lambda in [1e-3, 0.2, 1.0, 17.0] {
            let r = optimal_r_a(lambda, &y, &e).unwrap();
            let full = cll_full(r, lambda, &y, &e).unwrap();
            let kept = 15.0;
            let conc = concentrated_cll(lambda, &y, &e).unwrap();
            assert!((full - (conc + kept * (1.0 - kept.ln()))).abs() < 1e-10 * full.abs().max(1.0));
            for factor in [0.9, 1.1] {
                assert!(cll_full(r * factor, lambda, &y, &e).unwrap() > full);
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let y = random_series(12, 8);
        let scaled = TimeSeries::new(y.samples().iter().map(|z| z * 3.0).collect()).unwrap();
        let e = cauchy(12);
        let shift = concentrated_cll(0.4, &scaled, &e).unwrap() - concentrated_cll(0.4, &y, &e).unwrap();
        assert_relative_eq!(shift, 2.0 * 11.0 * 3.0.ln(), max_relative = 1e-12);
    }

    #[test]
    fn product_form_agrees() {
        let y = random_series(8, 13);
        let e: Vec<f64> = (0..8).map(|k| 0.5 + k as f64).collect();
        for lambda in [0.01, 0.3, 1.0, 4.0, 50.0] {
            let a = concentrated_cll(lambda, &y, &e).unwrap();
            let b = concentrated_cll_product_form(lambda, &y, &e).unwrap();
            assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn zero_data_is_degenerate() {
        let y = TimeSeries::new(vec![Complex64::new(0.0, 0.0); 4]).unwrap();
        assert_eq!(concentrated_cll(1.0, &y, &[1.0; 4]), Err(Error::DegenerateData));
        assert_eq!(fit_lambda(&y, &[1.0; 4], &LambdaSearch::default()), Err(Error::DegenerateData));
    }

    #[test]
    fn monotone_objective_hits_boundary() {
        // A single dominant low-frequency coefficient makes strong smoothing
        // always preferable.
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[0] = Complex64::new(10.0, 0.0);
        v[1] = Complex64::new(1e-3, 0.0);
        let y = TimeSeries::new(v).unwrap();
        let e: Vec<f64> = (0..8).map(|k| 1.0 + k as f64).collect();
        let search = LambdaSearch { lo: 1e-6, hi: 1e6, ..LambdaSearch::default() };
        let report = fit_lambda(&y, &e, &search).unwrap();
        assert_eq!(report.flag, FitFlag::BoundaryOptimum);
        assert!(report.hyperparams.lambda == 1e-6 || report.hyperparams.lambda == 1e6);
    }

    #[test]
    fn report_cll_matches_lambda() {
        let y = random_series(32, 21);
        let e = cauchy(32);
        let report = fit_lambda(&y, &e, &LambdaSearch::default()).unwrap();
        assert_eq!(report.cll_value, concentrated_cll(report.hyperparams.lambda, &y, &e).unwrap());
        assert!(report.search_trace.len() >= 200);
    }

    #[test]
    fn eigenvalue_scaling_maps_lambda() {
        let y = TimeSeries::new(
            (0..24)
                .map(|k| {
                    let t = k as f64;
                    Complex64::new((0.3 * t).cos() * 4.0 / (1.0 + 0.2 * t), (0.7 * t).sin() * 0.5)
                })
                .collect(),
        )
        .unwrap();
        let e: Vec<f64> = (0..24).map(|k| 0.1 + (k * k) as f64).collect();
        let scaled: Vec<f64> = e.iter().map(|v| v * 5.0).collect();
        let a = fit_lambda(&y, &e, &LambdaSearch::default()).unwrap();
        let b = fit_lambda(&y, &scaled, &LambdaSearch::default()).unwrap();
        if a.flag == FitFlag::Interior && b.flag == FitFlag::Interior {
            assert_relative_eq!(b.hyperparams.lambda, a.hyperparams.lambda / 5.0, max_relative = 1e-4);
        }
    }

    #[test]
    fn alpha_grid_single_point_and_recompute() {
        let y = random_series(16, 2);
        let (report, surface) = fit_alpha_grid(&y, &[0.5], &[0.01]).unwrap();
        assert_eq!(report.alphas, Some((0.5, 0.01)));
        let grid0 = log_space(1e-3, 1e3, 5);
        let grid1 = log_space(1e-4, 1e2, 4);
        let (_, surface2) = fit_alpha_grid(&y, &grid0, &grid1).unwrap();
        for (a0, a1, v) in surface2.rows() {
            let direct = concentrated_cll(1.0, &y, &sobolev1_eigenvalues(a0, a1, 16)).unwrap();
            assert!((v - direct).abs() <= 1e-12 * v.abs().max(1.0));
        }
        assert_eq!(surface.values.len(), 1);
        assert!(fit_alpha_grid(&y, &[2.0, 1.0], &[1.0]).is_err());
    }

    #[test]
    fn select_window_contracts() {
        let y = random_series(16, 4);
        let single = select_window(&y, &[cauchy(16)], &LambdaSearch::default()).unwrap();
        let direct = fit_lambda(&y, &cauchy(16), &LambdaSearch::default()).unwrap();
        assert_eq!(single.window_index, Some(0));
        assert_eq!(single.hyperparams, direct.hyperparams);
        let empty: [Vec<f64>; 0] = [];
        assert_eq!(select_window(&y, &empty, &LambdaSearch::default()), Err(Error::EmptyBank));
        let tie = select_window(&y, &[cauchy(16), cauchy(16)], &LambdaSearch::default()).unwrap();
        assert_eq!(tie.window_index, Some(0));
    }

    #[test]
    fn log_space_endpoints() {
        let g = log_space(1e-3, 1e3, 7);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1e3);
        assert_relative_eq!(g[3], 1.0, max_relative = 1e-12);
    }
}
