//! Acceptance suite. Each criterion prints one `criterion N: PASS|FAIL` line;
//! the process exits non-zero when any criterion fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::Rng;
use regspec::bench;
use regspec::core::estimator::{self, synthesis_matrix};
use regspec::core::fourier::{self, FrequencyGrid, TimeSeries};
use regspec::core::likelihood::{self, LambdaSearch};
use regspec::core::linalg::DenseMatrix;
use regspec::core::penalty::{self, NamedWindow, PenaltySpec};
use regspec::core::prior_process::{
    self, IncrementLaw, PriorKernel, PriorModel, SobolevKernelParams, DEFAULT_SERIES_TERMS,
};
use regspec::core::quadrature::GaussLegendre;
use regspec::core::simulate::SimConfig;
use regspec::core::{rng, Complex64};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_series<R: Rng>(g: &mut R, n: usize) -> TimeSeries {
    TimeSeries::new((0..n).map(|_| rng::complex_gaussian(g) * 2.0).collect()).unwrap()
}

fn log_uniform<R: Rng>(g: &mut R, lo: f64, hi: f64) -> f64 {
    10f64.powf(g.random_range(lo.log10()..hi.log10()))
}

fn rel_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den.max(1e-300)).sqrt()
}

/// Positive eigenvalues with `e_p = e_{P-p}` and the circulant row they define.
fn random_circulant<R: Rng>(g: &mut R, p: usize) -> (Vec<f64>, Vec<Complex64>) {
    let half: Vec<f64> = (0..=p / 2).map(|_| g.random_range(0.05..20.0)).collect();
    let e: Vec<f64> = (0..p).map(|k| half[k.min(p - k)]).collect();
    let spectrum: Vec<Complex64> = e.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let row = fourier::idft(&spectrum).unwrap().into_iter().map(|z| z / (p as f64).sqrt()).collect();
    (e, row)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut g = rng::seeded(101);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = g.random_range(1..=8);
        let p = g.random_range(n..=32);
        let lambda = log_uniform(&mut g, 1e-3, 1e3);
        let y = random_series(&mut g, n);
        let (_, row) = random_circulant(&mut g, p);
        let spec = PenaltySpec::CirculantRow(row);
        let closed = estimator::windowed_periodogram_df(&y, p, lambda, &spec).unwrap();
        let dense = estimator::rls_oracle_df(&y, p, lambda, &spec).unwrap();
        worst = worst.max(rel_l2(closed.spectrum.values(), dense.amps()));
        let usual = estimator::usual_periodogram_df(&y, p, lambda).unwrap();
        let dense = estimator::rls_oracle_df(&y, p, lambda, &PenaltySpec::identity()).unwrap();
        worst = worst.max(rel_l2(usual.amps(), dense.amps()));
        // Continuous forms: √P times the discrete Sobolev estimate on the p/P grid.
        let alphas = [g.random_range(0.1..2.0), g.random_range(1e-3..1.0)];
        let cf = estimator::windowed_periodogram_cf(&y, lambda, &alphas, &FrequencyGrid::uniform(p)).unwrap();
        let df = estimator::windowed_periodogram_df(&y, p, lambda, &PenaltySpec::Sobolev(alphas.to_vec())).unwrap();
        let scaled: Vec<Complex64> = df.spectrum.values().iter().map(|z| z * (p as f64).sqrt()).collect();
        worst = worst.max(rel_l2(&scaled, cf.spectrum.values()));
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-9 && elapsed < Duration::from_secs(5),
        format!("100 cases, worst relative l2 {worst:.3e} (tol 1e-9), {:.2} s (limit 5 s)", elapsed.as_secs_f64()),
    )
}

fn dense_fourier(p: usize) -> DenseMatrix {
    let s = 1.0 / (p as f64).sqrt();
    DenseMatrix::from_fn(p, p, |j, k| {
        Complex64::from_polar(s, -2.0 * std::f64::consts::PI * ((j * k) % p) as f64 / p as f64)
    })
}

fn criterion_2() -> Outcome {
    let (mut eig_err, mut id_err): (f64, f64) = (0.0, 0.0);
    for (n, p) in [(1, 1), (3, 3), (4, 9), (5, 16), (8, 32), (7, 20)] {
        let w = synthesis_matrix(n, p);
        let gram = w.adjoint().mul(&w).unwrap();
        let gram = DMatrix::from_fn(p, p, |i, j| gram[(i, j)]);
        let mut eig: Vec<f64> = gram.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        for (k, e) in eig.iter().enumerate() {
            eig_err = eig_err.max((e - if k < p - n { 0.0 } else { 1.0 }).abs());
        }
        let prod = w.mul(&dense_fourier(p)).unwrap();
        for i in 0..n {
            for j in 0..p {
                let target = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
                id_err = id_err.max((prod[(i, j)] - target).norm());
            }
        }
    }
    check(
        eig_err < 1e-9 && id_err <= 1e-12,
        format!("eigenvalue error {eig_err:.3e} (tol 1e-9), W F = [I O] entrywise {id_err:.3e} (tol 1e-12)"),
    )
}

fn criterion_3() -> Outcome {
    let mut g = rng::seeded(303);
    let (mut identity_err, mut strict, mut zero_err): (f64, bool, f64) = (0.0, true, 0.0);
    let mut count = 0;
    for _ in 0..100 {
        let n = g.random_range(1..=16);
        let p = g.random_range(n..=4 * n);
        let y = random_series(&mut g, n);
        let (_, row) = random_circulant(&mut g, p);
        for lambda in [0.0, log_uniform(&mut g, 1e-3, 1e3)] {
            let mut estimates = vec![
                estimator::windowed_periodogram_df(&y, p, lambda, &PenaltySpec::CirculantRow(row.clone())).unwrap(),
                estimator::windowed_periodogram_df(&y, p, lambda, &PenaltySpec::identity()).unwrap(),
                estimator::windowed_periodogram_cf(&y, lambda, &[1.0, 0.2], &FrequencyGrid::uniform(p)).unwrap(),
            ];
            for w in NamedWindow::ALL {
                let e = penalty::named_window_eigenvalues(w, n, p).unwrap();
                let window = penalty::window_from_eigenvalues(&e, lambda, n).unwrap();
                estimates.push(estimator::windowed_cf_with_window(&y, window, lambda, &FrequencyGrid::uniform(p)).unwrap());
            }
            for est in estimates {
                count += 1;
                let expected: f64 =
                    y.samples().iter().zip(est.window.coeffs()).map(|(z, w)| w * w * z.norm_sqr()).sum();
                identity_err = identity_err.max((est.empirical_power - expected).abs() / expected.max(1.0));
                if lambda == 0.0 {
                    zero_err = zero_err.max((est.empirical_power - y.energy()).abs() / y.energy());
                } else if est.window.coeffs().iter().any(|&w| w < 1.0) {
                    strict &= est.empirical_power < y.energy();
                }
            }
        }
    }
    check(
        identity_err <= 1e-10 && zero_err <= 1e-10 && strict,
        format!(
            "{count} estimates, identity error {identity_err:.3e}, λ = 0 error {zero_err:.3e} (tol 1e-10), strict inequality for λ > 0: {strict}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let rule = GaussLegendre::new(24);
    for (a0, a1) in [(1.0, 1.0), (4.0, 0.25), (0.01, 10.0)] {
        let p = SobolevKernelParams::new(a0, a1).unwrap();
        let mut worst: (f64, f64) = (0.0, 0.0);
        for k in 0..100 {
            let nu = k as f64 / 100.0;
            let s = prior_process::kernel_series(nu, &p, DEFAULT_SERIES_TERMS);
            let err = (s - Complex64::new(prior_process::kernel_closed(nu, &p).unwrap(), 0.0)).norm();
            if err > worst.0 {
                worst = (err, nu);
            }
        }
        let integral = rule.integrate(0.0, 1.0, 64, |v| prior_process::kernel_closed(v, &p).unwrap());
        let int_err = (integral - 1.0 / a0).abs();
        ok &= worst.0 < 1e-6 && int_err < 1e-8;
        lines.push(format!(
            "({a0}, {a1}): series error {:.3e} at ν = {} (tol 1e-6), integral error {int_err:.3e} (tol 1e-8)",
            worst.0, worst.1
        ));
    }
    check(ok, lines.join("; "))
}

fn criterion_5() -> Outcome {
    let p = SobolevKernelParams::new(1.0, 1.0).unwrap();
    let (mut worst, mut boundary): (f64, f64) = (0.0, 0.0);
    for i in 0..20 {
        for j in 0..20 {
            let (nu, nu_p) = (i as f64 / 19.0, j as f64 / 19.0);
            if nu < nu_p {
                continue;
            }
            let c = prior_process::conditional_cov(nu, nu_p, &p).unwrap();
            worst = worst.max(c.discrepancy());
        }
    }
    for k in 0..20 {
        let v = k as f64 / 19.0;
        for c in [
            prior_process::conditional_cov(v, 0.0, &p).unwrap(),
            prior_process::conditional_cov(1.0, v, &p).unwrap(),
        ] {
            boundary = boundary.max(c.from_kernel.abs()).max(c.markov.abs());
        }
    }
    check(
        worst < 1e-9 && boundary <= 1e-12,
        format!("20×20 grid discrepancy {worst:.3e} (tol 1e-9), boundary values {boundary:.3e} (tol 1e-12)"),
    )
}

fn criterion_6() -> Outcome {
    let mut g = rng::seeded(606);
    let grid = FrequencyGrid::uniform(64);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let y = random_series(&mut g, 8);
        let p = SobolevKernelParams::new(log_uniform(&mut g, 1e-2, 10.0), log_uniform(&mut g, 1e-4, 1e-1)).unwrap();
        let prior =
            PriorModel::new(PriorKernel::Sobolev(p), log_uniform(&mut g, 0.1, 10.0), log_uniform(&mut g, 0.1, 10.0))
                .unwrap();
        let oracle = prior_process::posterior_mean_oracle(&y, &prior, &grid).unwrap();
        let closed = estimator::windowed_ft(&y, &prior.posterior_window(8).unwrap(), &grid).unwrap();
        let scale = closed.values().iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (a, b) in oracle.values().iter().zip(closed.values()) {
            worst = worst.max((a - b).norm() / scale);
        }
    }
    check(worst <= 1e-9, format!("20 pairs at N = 8, worst error {worst:.3e} (tol 1e-9)"))
}

fn criterion_7() -> Outcome {
    let mut g = rng::seeded(707);
    let y = random_series(&mut g, 32);
    let flat = vec![1.0; 32];
    let values: Vec<f64> = likelihood::log_space(1e-6, 1e6, 121)
        .into_iter()
        .map(|l| likelihood::concentrated_cll(l, &y, &flat).unwrap())
        .collect();
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().cloned().fold(f64::INFINITY, f64::min);

    let e = penalty::named_window_eigenvalues(NamedWindow::Cauchy, 32, 32).unwrap();
    let kept = 31.0f64;
    let mut identity: f64 = 0.0;
    let mut derivative: f64 = 0.0;
    for _ in 0..10 {
        let lambda = log_uniform(&mut g, 1e-4, 1e2);
        let r_hat = likelihood::optimal_r_a(lambda, &y, &e).unwrap();
        let full = likelihood::cll_full(r_hat, lambda, &y, &e).unwrap();
        let conc = likelihood::concentrated_cll(lambda, &y, &e).unwrap() + kept * (1.0 - kept.ln());
        identity = identity.max((full - conc).abs() / full.abs().max(1.0));
        let h = 1e-5 * lambda;
        let fd = (likelihood::concentrated_cll(lambda + h, &y, &e).unwrap()
            - likelihood::concentrated_cll(lambda - h, &y, &e).unwrap())
            / (2.0 * h);
        let exact = likelihood::concentrated_cll_derivative(lambda, &y, &e).unwrap();
        derivative = derivative.max((fd - exact).abs() / exact.abs().max(1e-3));
    }
    check(
        spread < 1e-9 && identity <= 1e-10 && derivative <= 1e-5,
        format!(
            "(a) flat spread {spread:.3e} (tol 1e-9); (b) concentration identity {identity:.3e} (tol 1e-10); (c) derivative {derivative:.3e} (tol 1e-5)"
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let config = SimConfig::default();
    let report = bench::run_experiment(&config, bench::threads_from_env()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let names = ["L1", "L2", "ISD", "SIS"];
    let gains: Vec<String> = (0..4)
        .map(|k| {
            format!(
                "{} {:+.1}% (gain of medians {:+.1}%, improved {}/{})",
                names[k],
                100.0 * report.median_gain[k],
                100.0 * report.gain_of_medians[k],
                report.improved[k],
                report.realizations.len()
            )
        })
        .collect();
    let in_range = report.median_gain.iter().all(|g| (0.25..=0.65).contains(g));
    check(
        in_range && elapsed < Duration::from_secs(600),
        format!(
            "N = {}, {} realizations, {}×{} α-grid; median gains {} (range 25%..65%); {:.1} s",
            config.samples,
            config.realizations,
            config.alpha0_grid.len(),
            config.alpha1_grid.len(),
            gains.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_9() -> Outcome {
    let config = SimConfig::default();
    let bank = NamedWindow::BANK;
    let search = LambdaSearch::default();
    let threads = bench::threads_from_env();
    let first = bench::select_windows(&config, &bank, &search, threads).map_err(|e| e.to_string())?;
    let second = bench::select_windows(&config, &bank, &search, Some(1)).map_err(|e| e.to_string())?;
    let deterministic = first == second;
    let counts = bench::histogram(&bank, &first);
    let top = counts.iter().copied().max().unwrap_or(0);
    let plurality = counts[4] == top;
    let histogram: Vec<String> = bank.iter().zip(&counts).map(|(w, c)| format!("{w} {c}")).collect();
    check(
        deterministic,
        format!(
            "histogram [{}]; triangular plurality (soft): {}; deterministic: {deterministic}",
            histogram.join(", "),
            if plurality { "yes" } else { "no" }
        ),
    )
}

fn criterion_10() -> Outcome {
    let p = SobolevKernelParams::new(1e-8, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut verdicts = Vec::new();
    for tau in [0.1, 0.25, 0.5] {
        let nus = [0.0, tau, 1.0 - tau, 1.0];
        let general = prior_process::increment_cov(nus, &p, IncrementLaw::General).unwrap();
        let published = prior_process::increment_cov(nus, &p, IncrementLaw::PublishedLimit).unwrap();
        let bridge = prior_process::increment_cov(nus, &p, IncrementLaw::BridgeLimit).unwrap();
        let target = tau * (1.0 - tau) / 2.0;
        worst = worst.max((general[0][0] - target).abs() / target);
        verdicts.push(format!(
            "τ = {tau}: diagonal {:.6} vs {target:.6}, off-diagonal {:.6} (published {:.6}, bridge {:.6})",
            general[0][0], general[0][1], published[0][1], bridge[0][1]
        ));
    }
    check(
        worst <= 2e-3,
        format!("worst diagonal relative error {worst:.3e} (tol 2e-3); {}", verdicts.join("; ")),
    )
}

fn tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn criterion_11() -> Outcome {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let signal = fixtures.join("signal_seed1.csv");
    let mut mismatches = Vec::new();
    for (format, golden) in [("csv", "periodogram_cauchy_lambda1.csv"), ("json", "periodogram_cauchy_lambda1.json")] {
        let expected = fs::read(fixtures.join(golden)).unwrap();
        for threads in ["1", "2", "8"] {
            let out = Command::new(env!("CARGO_BIN_EXE_regspec"))
                .args(["periodogram", signal.to_str().unwrap(), "--window", "cauchy", "--lambda", "1"])
                .args(["--format", format])
                .env("REGSPEC_THREADS", threads)
                .output()
                .unwrap();
            if !out.status.success() || out.stdout != expected {
                mismatches.push(format!("{golden} with {threads} threads"));
            }
        }
    }
    let dirs: Vec<_> = ["1", "4", "1"]
        .iter()
        .map(|threads| {
            let d = tempfile::tempdir().unwrap();
            let status = Command::new(env!("CARGO_BIN_EXE_regspec"))
                .args(["simulate", "--n", "64", "--realizations", "4", "--seed", "1", "--out-dir"])
                .arg(d.path())
                .env("REGSPEC_THREADS", threads)
                .output()
                .unwrap()
                .status;
            assert!(status.success());
            tree(d.path())
        })
        .collect();
    if dirs[0] != dirs[1] || dirs[0] != dirs[2] {
        mismatches.push("simulate output differs across thread counts".into());
    }
    check(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "golden spectra byte-identical for 1, 2, 8 threads; simulate trees identical for 1, 4, 1 threads".into()
        } else {
            format!("mismatches: {}", mismatches.join(", "))
        },
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k}: FAIL {detail}");
            }
        }
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
