//! JSON and CSV renderings of fits and benchmark reports.

use regspec_core::likelihood::{AlphaSurface, FitReport};
use regspec_core::metrics::Distance;
use regspec_core::penalty::NamedWindow;
use regspec_core::simulate::{ExperimentReport, NoiseKind, RealizationSpectra};
use serde_json::{json, Value};

use crate::format::{fmt_num, rounded};

fn num(x: f64) -> Value {
    json!(rounded(x))
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn fit_json(report: &FitReport, window: Option<NamedWindow>) -> Value {
    let h = &report.hyperparams;
    let mut v = json!({
        "lambda": num(h.lambda),
        "r_a": num(h.r_a),
        "r_b": num(h.r_b()),
        "cll": num(report.cll_value),
        "flag": report.flag.name(),
    });
    let obj = v.as_object_mut().expect("object");
    if let Some(k) = report.window_index {
        obj.insert("window_index".into(), json!(k));
    }
    if let Some(w) = window {
        obj.insert("window".into(), json!(w.name()));
    }
    if let Some((a0, a1)) = report.alphas {
        obj.insert("alpha0".into(), num(a0));
        obj.insert("alpha1".into(), num(a1));
    }
    if !report.search_trace.is_empty() {
        let trace: Vec<Value> = report.search_trace.iter().map(|&(l, c)| json!([rounded(l), rounded(c)])).collect();
        obj.insert("search_trace".into(), Value::Array(trace));
    }
    v
}

/// `alpha0,alpha1,cll` rows.
pub fn surface_csv(surface: &AlphaSurface) -> String {
    let mut out = String::from("alpha0,alpha1,cll\n");
    for (a0, a1, v) in surface.rows() {
        out.push_str(&format!("{},{},{}\n", fmt_num(a0), fmt_num(a1), fmt_num(v)));
    }
    out
}

fn row(label: &str, values: &[f64; 4]) -> String {
    let cells: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
    format!("{label},{}\n", cells.join(","))
}

fn header() -> String {
    let names: Vec<&str> = Distance::ALL.iter().map(|d| d.name()).collect();
    format!("method,{}\n", names.join(","))
}

/// Median distances of both methods and the gains, one column per distance.
pub fn table_csv(report: &ExperimentReport) -> String {
    let mut oracle = [0.0; 4];
    for (k, slot) in oracle.iter_mut().enumerate() {
        let v: Vec<f64> = report.realizations.iter().map(|r| r.oracle[k]).collect();
        *slot = regspec_core::simulate::median(&v);
    }
    let mut out = header();
    out.push_str(&row("UP", &report.up_median));
    out.push_str(&row("RLS+ML", &report.ml_median));
    out.push_str(&row("Gain", &report.median_gain));
    out.push_str(&row("Gain of medians", &report.gain_of_medians));
    out.push_str(&row("Oracle", &oracle));
    out
}

pub fn realizations_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("index,seed,ml_alpha0,ml_alpha1,ml_flag,ml_cll");
    for prefix in ["up", "ml", "oracle", "oracle_alpha0", "oracle_alpha1", "oracle_roughness"] {
        for d in Distance::ALL {
            out.push_str(&format!(",{prefix}_{}", d.name()));
        }
    }
    out.push_str(",roughness_truth,roughness_ml\n");
    for r in &report.realizations {
        let mut cells = vec![
            r.index.to_string(),
            r.seed.to_string(),
            fmt_num(r.ml_alphas.0),
            fmt_num(r.ml_alphas.1),
            r.ml_flag.name().to_string(),
            fmt_num(r.ml_cll),
        ];
        let groups: [[f64; 4]; 6] = [
            r.up,
            r.ml,
            r.oracle,
            r.oracle_alphas.map(|a| a.0),
            r.oracle_alphas.map(|a| a.1),
            r.roughness_oracle,
        ];
        for g in groups {
            cells.extend(g.iter().map(|&v| fmt_num(v)));
        }
        cells.push(fmt_num(r.roughness_truth));
        cells.push(fmt_num(r.roughness_ml));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn experiment_json(report: &ExperimentReport) -> Value {
    let c = &report.config;
    let per_distance = |values: &[f64; 4]| -> Value {
        Value::Object(Distance::ALL.iter().zip(values).map(|(d, &v)| (d.name().to_string(), num(v))).collect())
    };
    let realizations: Vec<Value> = report
        .realizations
        .iter()
        .map(|r| {
            json!({
                "index": r.index,
                "seed": r.seed,
                "ml": { "alpha0": num(r.ml_alphas.0), "alpha1": num(r.ml_alphas.1), "flag": r.ml_flag.name(), "cll": num(r.ml_cll) },
                "up_distance": per_distance(&r.up),
                "ml_distance": per_distance(&r.ml),
                "oracle_distance": per_distance(&r.oracle),
                "oracle_alpha0": per_distance(&r.oracle_alphas.map(|a| a.0)),
                "oracle_alpha1": per_distance(&r.oracle_alphas.map(|a| a.1)),
                "roughness": { "truth": num(r.roughness_truth), "ml": num(r.roughness_ml), "oracle": per_distance(&r.roughness_oracle) },
            })
        })
        .collect();
    json!({
        "config": {
            "samples": c.samples,
            "taps": nums(&c.taps),
            "realizations": c.realizations,
            "master_seed": c.master_seed,
            "grid_size": c.grid_size,
            "noise": match c.noise { NoiseKind::Complex => "complex", NoiseKind::Real => "real" },
            "alpha0_grid": nums(&c.alpha0_grid),
            "alpha1_grid": nums(&c.alpha1_grid),
        },
        "up_median": per_distance(&report.up_median),
        "ml_median": per_distance(&report.ml_median),
        "median_gain": per_distance(&report.median_gain),
        "gain_of_medians": per_distance(&report.gain_of_medians),
        "improved": Value::Object(Distance::ALL.iter().zip(&report.improved).map(|(d, &v)| (d.name().to_string(), json!(v))).collect()),
        "realization_results": realizations,
    })
}

/// `nu,truth,up,ml,oracle_L1,oracle_L2,oracle_ISD,oracle_SIS`.
pub fn spectra_csv(s: &RealizationSpectra) -> String {
    let mut out = String::from("nu,truth,up,ml,oracle_L1,oracle_L2,oracle_ISD,oracle_SIS\n");
    for m in 0..s.truth.len() {
        let cells = [
            s.truth.frequency(m),
            s.truth.values()[m],
            s.up.values()[m],
            s.ml.values()[m],
            s.oracle[0].values()[m],
            s.oracle[1].values()[m],
            s.oracle[2].values()[m],
            s.oracle[3].values()[m],
        ];
        let cells: Vec<String> = cells.iter().map(|&v| fmt_num(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// `window,count` rows.
pub fn histogram_csv(bank: &[NamedWindow], counts: &[usize]) -> String {
    let mut out = String::from("window,count\n");
    for (w, c) in bank.iter().zip(counts) {
        out.push_str(&format!("{},{c}\n", w.name()));
    }
    out
}
