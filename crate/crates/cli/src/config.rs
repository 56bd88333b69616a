//! The `solve` run configuration: one JSON document, exact rational strings
//! for everything that feeds the exact backend.

use std::path::PathBuf;

use serde::Deserialize;
use serieseig::algebra::rational::parse_rational;
use serieseig::potential::PotentialConfig;
use serieseig::{Precision, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hill,
    Hankel,
    /// Hankel over `D` and Hill over `M = 2D − 1`.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendName {
    Exact,
    Float,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Orders {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub potential: PotentialConfig,
    pub a: String,
    #[serde(default)]
    pub s: u8,
    pub method: Method,
    /// `M` range for hill, `D` range for hankel and both.
    pub orders: Orders,
    #[serde(default)]
    pub d: usize,
    pub interval: (String, String),
    #[serde(default = "default_tol")]
    pub tol: String,
    #[serde(default = "default_backend")]
    pub backend: BackendName,
    #[serde(default = "default_precision")]
    pub precision: u32,
    /// Path prefix for `<prefix>.csv` (or `<prefix>.hill.csv` and
    /// `<prefix>.hankel.csv`) and `<prefix>.json`.
    pub output: PathBuf,
}

fn default_tol() -> String {
    "1e-25".into()
}

fn default_backend() -> BackendName {
    BackendName::Float
}

fn default_precision() -> u32 {
    Precision::DEFAULT_DIGITS
}

/// Everything parsed and range-checked; nothing here can fail later.
#[derive(Clone, Debug)]
pub struct Validated {
    pub a: Rational,
    pub lo: Rational,
    pub hi: Rational,
    pub tol: Rational,
}

impl RunConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> anyhow::Result<Validated> {
        let a = parse_rational(&self.a)?;
        let lo = parse_rational(&self.interval.0)?;
        let hi = parse_rational(&self.interval.1)?;
        let tol = parse_rational(&self.tol)?;
        anyhow::ensure!(self.s <= 1, "s must be 0 or 1, got {}", self.s);
        anyhow::ensure!(self.orders.min >= 1 && self.orders.min <= self.orders.max, "empty order range {}..{}", self.orders.min, self.orders.max);
        anyhow::ensure!(lo < hi, "interval ({}, {}) is empty", self.interval.0, self.interval.1);
        anyhow::ensure!(tol > Rational::from_integer(0.into()), "tol must be positive");
        anyhow::ensure!(self.precision >= Precision::MIN_DIGITS, "precision must be at least {} digits", Precision::MIN_DIGITS);
        self.potential.to_spec(1)?;
        Ok(Validated { a, lo, hi, tol })
    }
}
