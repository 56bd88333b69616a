//! Chaining per-order roots into sequences and judging their convergence.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::rational::{decimal_exponent, format_rational, int, log10_abs, pow10, rat, to_significant};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::hankel::{hankel_roots, HankelOptions, HankelResult, HankelSpec};
use crate::hill::{hill_roots, HillResult};
use crate::potential::PotentialSpec;
use crate::series::{SeriesParams, SeriesTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceMethod {
    Hill,
    Hankel,
}

impl SequenceMethod {
    pub fn name(self) -> &'static str {
        match self {
            SequenceMethod::Hill => "hill",
            SequenceMethod::Hankel => "hankel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSequence {
    pub method: SequenceMethod,
    /// `M` or `D`, strictly increasing.
    pub indices: Vec<usize>,
    #[serde(serialize_with = "ser_rationals")]
    pub values: Vec<Rational>,
    pub label: usize,
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

impl RootSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> Option<&Rational> {
        self.values.last()
    }

    /// `log10 |E_last − E_prev|`, `-∞` when they coincide.
    pub fn final_self_diff(&self) -> Option<f64> {
        let n = self.values.len();
        (n >= 2).then(|| log10_abs(&(&self.values[n - 1] - &self.values[n - 2])))
    }
}

/// Greedy nearest-neighbour chaining. Candidate links between consecutive
/// indices are claimed in order of increasing distance, ties going to the
/// smaller values; roots left unlinked start new sequences. Without an explicit
/// `window` the limit is ten times the median gap between roots at the first
/// index that has two or more.
pub fn match_sequences(method: SequenceMethod, per_index: &BTreeMap<usize, Vec<Rational>>, window: Option<&Rational>) -> Vec<RootSequence> {
    let window = window.cloned().or_else(|| default_window(per_index));
    let mut seqs: Vec<RootSequence> = Vec::new();
    // sequence id for each root of the previous index
    let mut prev: Option<(usize, Vec<(Rational, usize)>)> = None;
    for (&k, roots) in per_index {
        let mut roots = roots.clone();
        roots.sort();
        let mut owner: Vec<Option<usize>> = vec![None; roots.len()];
        if let Some((pk, prev_roots)) = prev.as_ref().filter(|(pk, _)| *pk + 1 == k) {
            let _ = pk;
            let mut pairs: Vec<(Rational, usize, usize)> = Vec::new();
            for (i, r) in roots.iter().enumerate() {
                for (j, (p, _)) in prev_roots.iter().enumerate() {
                    let dist = (r - p).abs();
                    if window.as_ref().is_none_or(|w| dist <= *w) {
                        pairs.push((dist, i, j));
                    }
                }
            }
            pairs.sort_by(|a, b| a.0.cmp(&b.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));
            let mut claimed = vec![false; prev_roots.len()];
            for (_, i, j) in pairs {
                if owner[i].is_none() && !claimed[j] {
                    claimed[j] = true;
                    owner[i] = Some(prev_roots[j].1);
                }
            }
        }
        let mut this = Vec::with_capacity(roots.len());
        for (r, o) in roots.into_iter().zip(owner) {
            let id = o.unwrap_or_else(|| {
                seqs.push(RootSequence { method, indices: Vec::new(), values: Vec::new(), label: seqs.len() });
                seqs.len() - 1
            });
            seqs[id].indices.push(k);
            seqs[id].values.push(r.clone());
            this.push((r, id));
        }
        prev = Some((k, this));
    }
    seqs
}

fn default_window(per_index: &BTreeMap<usize, Vec<Rational>>) -> Option<Rational> {
    let roots = per_index.values().find(|r| r.len() >= 2)?;
    let mut sorted = roots.clone();
    sorted.sort();
    let mut gaps: Vec<Rational> = sorted.windows(2).map(|w| &w[1] - &w[0]).collect();
    gaps.sort();
    Some(gaps[gaps.len() / 2].clone() * int(10))
}

/// Sequence with the smallest final self-difference among those of length ≥ 3.
pub fn best_sequence(seqs: &[RootSequence]) -> Option<&RootSequence> {
    seqs.iter()
        .filter(|s| s.len() >= 3)
        .min_by(|a, b| a.final_self_diff().unwrap().total_cmp(&b.final_self_diff().unwrap()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub limit_estimate: Rational,
    /// `None` when the last two values coincide exactly.
    pub stable_digits: Option<u32>,
    /// `log10 |E_{k+1} − E_k|`; `-∞` marks equal neighbours.
    pub self_diffs: Vec<f64>,
    /// Least-squares slope of the finite self-differences against the index.
    pub rate_slope: f64,
    pub reference_error: Option<Vec<f64>>,
    pub converged_exactly: bool,
}

fn fmt_log(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.6}")
    }
}

impl Serialize for ConvergenceReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConvergenceReport", 6)?;
        st.serialize_field("limit_estimate", &to_significant(&self.limit_estimate, 40))?;
        st.serialize_field("stable_digits", &self.stable_digits.map_or("exact".to_string(), |d| d.to_string()))?;
        st.serialize_field("self_diffs", &self.self_diffs.iter().map(|&x| fmt_log(x)).collect::<Vec<_>>())?;
        st.serialize_field("rate_slope", &fmt_log(self.rate_slope))?;
        st.serialize_field(
            "reference_error",
            &self.reference_error.as_ref().map(|v| v.iter().map(|&x| fmt_log(x)).collect::<Vec<_>>()),
        )?;
        st.serialize_field("converged_exactly", &self.converged_exactly)?;
        st.end()
    }
}

pub fn convergence_report(seq: &RootSequence, reference: Option<&Rational>) -> Result<ConvergenceReport> {
    if seq.len() < 3 {
        return Err(Error::InvalidParameter(format!("convergence report needs at least 3 values, got {}", seq.len())));
    }
    let self_diffs: Vec<f64> = seq.values.windows(2).map(|w| log10_abs(&(&w[1] - &w[0]))).collect();
    let points: Vec<(f64, f64)> = seq.indices[1..]
        .iter()
        .zip(&self_diffs)
        .filter(|(_, d)| d.is_finite())
        .map(|(&k, &d)| (k as f64, d))
        .collect();
    let last = *self_diffs.last().unwrap();
    let converged_exactly = last == f64::NEG_INFINITY;
    let stable_digits = if converged_exactly {
        None
    } else {
        let r = &seq.values[seq.len() - 1] - &seq.values[seq.len() - 2];
        Some((-decimal_exponent(&r) - 1).max(0) as u32)
    };
    Ok(ConvergenceReport {
        limit_estimate: seq.last().unwrap().clone(),
        stable_digits,
        self_diffs,
        rate_slope: least_squares_slope(&points),
        reference_error: reference.map(|r| seq.values.iter().map(|v| log10_abs(&(v - r))).collect()),
        converged_exactly,
    })
}

/// Zero for fewer than two points.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Per-order search state for tracking one eigenvalue through increasing
/// order: the first pick is the root nearest `seed`, later picks are nearest
/// the previous pick.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackOptions {
    pub seed: Option<Rational>,
    /// Initial half-width of the next search window in units of the last
    /// step; it grows tenfold until a root turns up.
    pub window_factor: Rational,
    pub hankel: HankelOptions,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { seed: None, window_factor: rat(1, 10), hankel: HankelOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrackedHankel {
    /// Every scan performed, one per `D`, with the window actually searched.
    pub results: Vec<HankelResult>,
    pub sequence: RootSequence,
}

/// Hankel roots for `D` in `dims`, each scan warm-started around the previous
/// pick. The window is `prev ± window_factor·|prev − prev₂|`, rounded down to
/// a power of ten and widened tenfold while empty, never leaving `[lo, hi]`.
pub fn track_hankel(
    table: &SeriesTable,
    offset: usize,
    dims: std::ops::RangeInclusive<usize>,
    lo: &Rational,
    hi: &Rational,
    opts: &TrackOptions,
) -> Result<TrackedHankel> {
    let mut results = Vec::new();
    let mut seq = RootSequence { method: SequenceMethod::Hankel, indices: Vec::new(), values: Vec::new(), label: 0 };
    let seed = opts.seed.clone().unwrap_or_else(|| (lo + hi) / int(2));
    for dim in dims {
        let spec = HankelSpec::new(dim, offset)?;
        let n = seq.values.len();
        let mut half = (n >= 2).then(|| {
            let step = (&seq.values[n - 1] - &seq.values[n - 2]).abs() * &opts.window_factor;
            if step.is_zero() {
                pow10(-10)
            } else {
                pow10(decimal_exponent(&step) as i32)
            }
        });
        loop {
            let (wlo, whi, full) = match &half {
                Some(h) => {
                    let c = &seq.values[n - 1];
                    let wlo = (c - h).max(lo.clone());
                    let whi = (c + h).min(hi.clone());
                    let full = wlo == *lo && whi == *hi;
                    (wlo, whi, full)
                }
                None => (lo.clone(), hi.clone(), true),
            };
            let r = hankel_roots(table, spec, &wlo, &whi, &opts.hankel)?;
            let target = seq.values.last().unwrap_or(&seed);
            let pick = r.nearest(target).map(|x| x.value.clone());
            results.push(r);
            if let Some(v) = pick {
                seq.indices.push(dim);
                seq.values.push(v);
                break;
            }
            if full {
                break;
            }
            half = half.map(|h| h * int(10));
        }
    }
    Ok(TrackedHankel { results, sequence: seq })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrackedHill {
    pub results: Vec<HillResult>,
    pub sequence: RootSequence,
}

/// Hill roots for `M` in `orders` on the fixed interval, picking the root
/// nearest the previous pick (nearest `seed`, default the midpoint, at first).
pub fn track_hill(
    table: &SeriesTable,
    orders: std::ops::RangeInclusive<usize>,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    seed: Option<&Rational>,
) -> Result<TrackedHill> {
    let mut results = Vec::new();
    let mut seq = RootSequence { method: SequenceMethod::Hill, indices: Vec::new(), values: Vec::new(), label: 0 };
    let mid = (lo + hi) / int(2);
    for m in orders {
        let r = hill_roots(table, m, lo, hi, tol)?;
        let target = seq.values.last().or(seed).unwrap_or(&mid);
        if let Some(root) = r.nearest(target) {
            seq.indices.push(m);
            seq.values.push(root.value.clone());
        }
        results.push(r);
    }
    Ok(TrackedHill { results, sequence: seq })
}

/// Series table long enough for order `j_max` at width `a` and parity `s`.
pub fn table_for(potential: &PotentialSpec, a: &Rational, s: u8, j_max: usize) -> Result<SeriesTable> {
    SeriesTable::generate(&potential.with_order(j_max), SeriesParams::new(a.clone(), s, j_max)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthMethod {
    Hill,
    /// Hankel with `2D − 1 = M`.
    Hankel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WidthScan {
    pub a_grid: Vec<Rational>,
    /// `log10 |root − reference|`; `None` is the "no-root" sentinel and
    /// `-∞` an exact root.
    pub errors: Vec<Option<f64>>,
    pub m: usize,
    pub best_a: Rational,
}

impl Serialize for WidthScan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WidthScan", 4)?;
        st.serialize_field("a_grid", &self.a_grid.iter().map(format_rational).collect::<Vec<_>>())?;
        st.serialize_field("errors", &self.errors.iter().map(|e| e.map_or("no-root".to_string(), fmt_log)).collect::<Vec<_>>())?;
        st.serialize_field("M", &self.m)?;
        st.serialize_field("best_a", &format_rational(&self.best_a))?;
        st.end()
    }
}

impl WidthScan {
    /// Largest minus smallest finite error: how strongly the method depends on `a`.
    pub fn spread(&self) -> f64 {
        let finite: Vec<f64> = self.errors.iter().flatten().copied().filter(|e| e.is_finite()).collect();
        let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

#[allow(clippy::too_many_arguments)]
pub fn scan_width_parameter(
    method: WidthMethod,
    potential: &PotentialSpec,
    m: usize,
    a_grid: &[Rational],
    reference: &Rational,
    lo: &Rational,
    hi: &Rational,
    opts: &HankelOptions,
) -> Result<WidthScan> {
    if a_grid.is_empty() {
        return Err(Error::InvalidParameter("a_grid is empty".into()));
    }
    let spec = match method {
        WidthMethod::Hill => None,
        WidthMethod::Hankel => {
            if m % 2 == 0 {
                return Err(Error::InvalidParameter(format!("Hankel width scan needs odd M = 2D − 1, got {m}")));
            }
            Some(HankelSpec::new(m.div_ceil(2), 0)?)
        }
    };
    let mut errors = Vec::with_capacity(a_grid.len());
    for a in a_grid {
        let table = table_for(potential, a, 0, m)?;
        let root = match spec {
            None => hill_roots(&table, m, lo, hi, &opts.tol)?.nearest(reference).map(|r| r.value.clone()),
            Some(spec) => hankel_roots(&table, spec, lo, hi, opts)?.nearest(reference).map(|r| r.value.clone()),
        };
        errors.push(root.map(|r| log10_abs(&(r - reference))));
    }
    let best = errors
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.map(|e| (i, e)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or(Error::NoEigenvalue)?;
    Ok(WidthScan { a_grid: a_grid.to_vec(), errors, m, best_a: a_grid[best.0].clone() })
}
