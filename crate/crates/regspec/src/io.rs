//! Text file formats: signals as `index,re,im` CSV, spectra as
//! `nu,re,im,power` CSV or JSON.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use regspec_core::fourier::TimeSeries;
use regspec_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::format::{fmt_num, rounded};

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(path, e.to_string()))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::input(path, e.to_string()))
}

/// Writes to `path`, or to stdout when `path` is `None` or `-`.
pub fn write_output(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, contents).map_err(|e| CliError::io(p, e)),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(contents.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?;
            out.flush().map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Parses `index,re[,im]` CSV text. Indices must run `0, 1, …` in order.
pub fn parse_signal(text: &str, origin: &Path) -> CliResult<TimeSeries> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| CliError::input(origin, e.to_string()))?.clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(i_index), Some(i_re)) = (column("index"), column("re")) else {
        return Err(CliError::input(origin, "expected header `index,re,im`"));
    };
    let i_im = column("im");
    let mut samples = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| CliError::input(origin, e.to_string()))?;
        let field = |i: usize| -> CliResult<&str> {
            record.get(i).ok_or_else(|| CliError::input(origin, format!("line {line}: missing column")))
        };
        let index: usize = field(i_index)?
            .parse()
            .map_err(|_| CliError::input(origin, format!("line {line}: bad index")))?;
        if index != samples.len() {
            return Err(CliError::input(origin, format!("line {line}: expected index {}, found {index}", samples.len())));
        }
        let number = |s: &str| -> CliResult<f64> {
            let v: f64 = s.parse().map_err(|_| CliError::input(origin, format!("line {line}: bad number `{s}`")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::input(origin, format!("line {line}: non-finite value")))
            }
        };
        let re = number(field(i_re)?)?;
        let im = match i_im.and_then(|i| record.get(i)) {
            Some(s) if !s.is_empty() => number(s)?,
            _ => 0.0,
        };
        samples.push(Complex64::new(re, im));
    }
    if samples.is_empty() {
        return Err(CliError::input(origin, "no samples"));
    }
    TimeSeries::new(samples).map_err(|e| CliError::input(origin, e.to_string()))
}

pub fn read_signal(path: &Path) -> CliResult<TimeSeries> {
    parse_signal(&read_input(path)?, path)
}

pub fn format_signal(y: &TimeSeries) -> String {
    let mut out = String::from("index,re,im\n");
    for (n, z) in y.samples().iter().enumerate() {
        out.push_str(&format!("{n},{},{}\n", fmt_num(z.re), fmt_num(z.im)));
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMeta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalty: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A sampled spectrum together with its power column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub grid: Vec<f64>,
    /// `[re, im]` pairs.
    pub values: Vec<[f64; 2]>,
    pub power: Vec<f64>,
    pub meta: SpectrumMeta,
}

impl SpectrumFile {
    /// Values are rounded to the printed precision so that CSV and JSON
    /// carry the same numbers.
    pub fn new(grid: &[f64], values: &[Complex64], power: &[f64], meta: SpectrumMeta) -> Self {
        Self {
            grid: grid.iter().copied().map(rounded).collect(),
            values: values.iter().map(|z| [rounded(z.re), rounded(z.im)]).collect(),
            power: power.iter().copied().map(rounded).collect(),
            meta: SpectrumMeta { lambda: meta.lambda.map(rounded), ..meta },
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("nu,re,im,power\n");
        for ((nu, v), p) in self.grid.iter().zip(&self.values).zip(&self.power) {
            out.push_str(&format!("{},{},{},{}\n", fmt_num(*nu), fmt_num(v[0]), fmt_num(v[1]), fmt_num(*p)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spectrum serializes");
        s.push('\n');
        s
    }

    pub fn parse_csv(text: &str, origin: &Path) -> CliResult<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| CliError::input(origin, e.to_string()))?;
        if headers.iter().collect::<Vec<_>>() != ["nu", "re", "im", "power"] {
            return Err(CliError::input(origin, "expected header `nu,re,im,power`"));
        }
        let mut file = SpectrumFile { grid: vec![], values: vec![], power: vec![], meta: SpectrumMeta::default() };
        for record in reader.records() {
            let record = record.map_err(|e| CliError::input(origin, e.to_string()))?;
            let v: Vec<f64> = record
                .iter()
                .map(|s| s.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::input(origin, e.to_string()))?;
            file.grid.push(v[0]);
            file.values.push([v[1], v[2]]);
            file.power.push(v[3]);
        }
        file.validate(origin)?;
        Ok(file)
    }

    pub fn parse_json(text: &str, origin: &Path) -> CliResult<Self> {
        let file: SpectrumFile = serde_json::from_str(text).map_err(|e| CliError::input(origin, e.to_string()))?;
        file.validate(origin)?;
        Ok(file)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = read_input(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::parse_json(&text, path)
        } else {
            Self::parse_csv(&text, path)
        }
    }

    fn validate(&self, origin: &Path) -> CliResult<()> {
        if self.grid.len() != self.values.len() || self.grid.len() != self.power.len() {
            return Err(CliError::input(origin, "columns have different lengths"));
        }
        if self.grid.iter().any(|nu| !(0.0..1.0).contains(nu)) || self.grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::input(origin, "nu must be strictly increasing in [0, 1)"));
        }
        Ok(())
    }
}
