//! Hankel–Padé quantization.
//!
//! If `Σ_{j≤N+d} a_j y^j / Σ_{j≤N} b_j y^j` (with `y = x²`) is to reproduce the
//! series `Σ c_j y^j` through `y^{2N+d+1}`, one more coefficient than it has
//! free parameters, the linear conditions on `b` are consistent only where
//! `H_D^d(E) = det[c_{i+j+d-1}(E)]_{i,j=1..D}` vanishes, `D = N+1`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{format_rational, int, log10_abs, signum, to_fixed};
use crate::algebra::{det_exact, Bracket, EPoly, HighPrecFloat, Matrix, Poly, Precision, Rational, Ring};
use crate::error::{Error, Result};
use crate::series::{FloatSeries, SeriesTable};

/// Determinant dimension `D` and diagonal displacement `d` of `H_D^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HankelSpec {
    #[serde(rename = "D")]
    pub dim: usize,
    #[serde(rename = "d")]
    pub offset: usize,
}

impl HankelSpec {
    pub fn new(dim: usize, offset: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParameter("Hankel dimension D must be at least 1".into()));
        }
        Ok(HankelSpec { dim, offset })
    }

    /// Highest series index consumed: `c_{2D+d-1}`.
    pub fn required_j(&self) -> usize {
        2 * self.dim + self.offset - 1
    }

    /// Series index of matrix entry `(i, j)`, zero-based.
    fn index(&self, i: usize, j: usize) -> usize {
        i + j + self.offset + 1
    }

    fn check(&self, table: &SeriesTable) -> Result<()> {
        if table.j_max() < self.required_j() {
            return Err(Error::TableTooShort { required: self.required_j(), available: table.j_max() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float(#[serde(skip)] Precision),
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float(_) => "float",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HankelValue {
    Exact(Rational),
    Float(HighPrecFloat),
}

impl HankelValue {
    pub fn signum(&self) -> i8 {
        match self {
            HankelValue::Exact(r) => signum(r),
            HankelValue::Float(x) => x.signum(),
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            HankelValue::Exact(r) => r.clone(),
            HankelValue::Float(x) => x.to_rational(),
        }
    }

    pub fn log10_abs(&self) -> f64 {
        match self {
            HankelValue::Exact(r) => log10_abs(r),
            HankelValue::Float(x) => x.log10_abs(),
        }
    }
}

/// `H_D^d` at one energy with the chosen backend.
pub fn hankel_eval(table: &SeriesTable, spec: HankelSpec, e: &Rational, backend: Backend) -> Result<HankelValue> {
    spec.check(table)?;
    Ok(match backend {
        Backend::Exact => HankelValue::Exact(HankelEvaluator::exact_det(table, spec, e)),
        Backend::Float(prec) => {
            let fs = table.float_evaluator(prec);
            let (det, _) = float_det(&fs, spec, &HighPrecFloat::from_rational(e, prec));
            HankelValue::Float(det)
        }
    })
}

/// `H_D^d` as an exact polynomial in `E`. Degree grows like `D² + Dd`, so
/// this is meant for small `D`.
pub fn hankel_symbolic(table: &SeriesTable, spec: HankelSpec) -> Result<EPoly> {
    spec.check(table)?;
    Ok(hankel_symbolic_from(table.coefficients(), spec))
}

/// Symbolic determinant over any coefficient ring, e.g. with the width
/// parameter left symbolic.
pub fn hankel_symbolic_from<R: Ring>(c: &[Poly<R>], spec: HankelSpec) -> Poly<R> {
    let m = Matrix::from_fn(spec.dim, |i, j| c[spec.index(i, j)].clone());
    det_exact(&m)
}

/// Gaussian elimination with partial pivoting. Returns the determinant and
/// `log10` of the Hadamard bound `Π‖row‖₂`, the natural absolute error scale.
fn float_det(fs: &FloatSeries, spec: HankelSpec, e: &HighPrecFloat) -> (HighPrecFloat, f64) {
    let c = fs.eval(e, spec.required_j());
    let n = spec.dim;
    let mut a: Vec<Vec<HighPrecFloat>> = (0..n).map(|i| (0..n).map(|j| c[spec.index(i, j)].clone()).collect()).collect();
    let hadamard: f64 = a
        .iter()
        .map(|row| {
            let m = row.iter().map(|x| x.log10_abs()).fold(f64::NEG_INFINITY, f64::max);
            if m == f64::NEG_INFINITY {
                m
            } else {
                let s: f64 = row.iter().map(|x| 10f64.powf(2.0 * (x.log10_abs() - m))).sum();
                m + 0.5 * s.log10()
            }
        })
        .sum();
    let prec = fs.precision();
    let mut det = HighPrecFloat::from_i64(1, prec);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x][k].abs().partial_cmp(&a[y][k].abs()).unwrap_or(Ordering::Equal))
            .unwrap();
        if a[p][k].is_zero() {
            return (HighPrecFloat::zero(prec), hadamard);
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        det = &det * &pivot_row[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] / &pivot_row[k];
            for j in k + 1..n {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
    }
    (det, hadamard)
}

/// Evaluates one `H_D^d` repeatedly, caching the float recurrence set-up.
pub struct HankelEvaluator<'a> {
    table: &'a SeriesTable,
    spec: HankelSpec,
    float: FloatSeries,
    /// Same recurrence `CHECK_DIGITS` lower, for a second opinion.
    check: FloatSeries,
    prec: Precision,
    exact_only: bool,
}

const CHECK_DIGITS: u32 = 30;

/// Float sign plus whether it clears the rounding-error scale.
#[derive(Clone, Debug)]
struct FloatSample {
    value: HighPrecFloat,
    reliable: bool,
}

impl<'a> HankelEvaluator<'a> {
    pub fn new(table: &'a SeriesTable, spec: HankelSpec, prec: Precision) -> Result<Self> {
        spec.check(table)?;
        let low = Precision::digits(prec.decimal_digits().saturating_sub(CHECK_DIGITS));
        Ok(HankelEvaluator {
            table,
            spec,
            float: table.float_evaluator(prec),
            check: table.float_evaluator(low),
            prec,
            exact_only: false,
        })
    }

    /// Every sample computed exactly (then rounded for display and descent).
    pub fn exact_only(mut self, on: bool) -> Self {
        self.exact_only = on;
        self
    }

    pub fn exact(&self, e: &Rational) -> Rational {
        Self::exact_det(self.table, self.spec, e)
    }

    fn exact_det(table: &SeriesTable, spec: HankelSpec, e: &Rational) -> Rational {
        let c = eval_series_exact(table, e, spec.required_j());
        det_exact(&Matrix::from_fn(spec.dim, |i, j| c[spec.index(i, j)].clone()))
    }

    pub fn exact_sign(&self, e: &Rational) -> i8 {
        signum(&self.exact(e))
    }

    pub fn float(&self, e: &Rational) -> HighPrecFloat {
        self.sample(e).value
    }

    fn sample(&self, e: &Rational) -> FloatSample {
        if self.exact_only {
            let v = self.exact(e);
            return FloatSample { value: HighPrecFloat::from_rational(&v, self.prec), reliable: !v.is_zero() };
        }
        let x = HighPrecFloat::from_rational(e, self.prec);
        let (value, hadamard) = float_det(&self.float, self.spec, &x);
        // headroom of 10 digits below the working precision
        let noise = hadamard - self.prec.decimal_digits() as f64 + 10.0;
        if value.is_zero() {
            return FloatSample { value, reliable: false };
        }
        if value.log10_abs() > noise {
            return FloatSample { value, reliable: true };
        }
        // The bound is very pessimistic for graded matrices. Rounding error
        // scales with the unit roundoff, so if the result barely moves when
        // the precision drops, it is accurate at full precision.
        let low = self.check.precision();
        if low.decimal_digits() + 20 > self.prec.decimal_digits() {
            return FloatSample { value, reliable: false };
        }
        let (coarse, _) = float_det(&self.check, self.spec, &HighPrecFloat::from_rational(e, low));
        let drift = (&coarse - &value).log10_abs() - value.log10_abs();
        FloatSample { reliable: drift < -3.0, value }
    }

    /// Float sign when it is trustworthy, exact sign otherwise.
    fn guarded_sign(&self, e: &Rational) -> i8 {
        let s = self.sample(e);
        if s.reliable {
            s.value.signum()
        } else {
            self.exact_sign(e)
        }
    }
}

/// `c_0(E) … c_upto(E)` by clearing each polynomial's denominators first, so
/// Horner runs over integers: `c(p/q) = Σ n_k p^k q^{deg-k} / (L q^deg)`.
fn eval_series_exact(table: &SeriesTable, e: &Rational, upto: usize) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let (p, q) = (e.numer(), e.denom());
    let deg_max = upto;
    let mut qpow: Vec<BigInt> = Vec::with_capacity(deg_max + 1);
    qpow.push(BigInt::one());
    for k in 1..=deg_max {
        let next = &qpow[k - 1] * q;
        qpow.push(next);
    }
    table.coefficients()[..=upto]
        .iter()
        .map(|poly| {
            let coeffs = poly.coeffs();
            if coeffs.is_empty() {
                return Rational::zero();
            }
            let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let deg = coeffs.len() - 1;
            let mut acc = BigInt::zero();
            for (k, c) in coeffs.iter().enumerate().rev() {
                let n = c.numer() * (&lcm / c.denom());
                acc = acc * p + n * &qpow[deg - k];
            }
            // Horner above multiplies by p only; restore the q powers
            Rational::new(acc, lcm * &qpow[deg])
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HankelOptions {
    pub grid_n: usize,
    /// Final bracket width.
    pub tol: Rational,
    pub precision: Precision,
    /// A grid point whose `|H|` is below this fraction of both neighbours,
    /// with no sign change, is reported as a degenerate candidate.
    pub dip_ratio: f64,
    /// Subdivisions of the two cells around a local minimum of `|H|`.
    pub zoom_n: usize,
    pub zoom_depth: usize,
    /// Skip the float backend entirely.
    pub exact_only: bool,
}

impl Default for HankelOptions {
    fn default() -> Self {
        HankelOptions {
            grid_n: 200,
            tol: crate::algebra::rational::pow10(-25),
            precision: Precision::default(),
            dip_ratio: 1e-3,
            zoom_n: 20,
            zoom_depth: 3,
            exact_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HankelRoot {
    #[serde(serialize_with = "crate::hill::ser_rational")]
    pub value: Rational,
    /// `None` only when `value` is an exact zero of the determinant.
    pub bracket: Option<Bracket>,
    /// Backend that drove the bisection.
    pub backend: &'static str,
    /// Both final bracket endpoint signs (or the zero) verified exactly.
    pub exact_confirmed: bool,
}

impl HankelRoot {
    pub fn bracket_width(&self) -> Rational {
        self.bracket.as_ref().map_or_else(Rational::zero, Bracket::width)
    }
}

/// A local minimum of `|H|` on the scan grid without a sign change: possibly a
/// double root, possibly a pair of roots closer than the grid spacing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerateCandidate {
    #[serde(serialize_with = "crate::hill::ser_rational")]
    pub energy: Rational,
    pub log10_abs_h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HankelResult {
    pub spec: HankelSpec,
    /// Ascending.
    pub roots: Vec<HankelRoot>,
    pub degenerate: Vec<DegenerateCandidate>,
    #[serde(serialize_with = "ser_pair")]
    pub interval: (Rational, Rational),
}

fn ser_pair<S: serde::Serializer>(r: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&format_rational(&r.0))?;
    t.serialize_element(&format_rational(&r.1))?;
    t.end()
}

impl HankelResult {
    pub fn nearest(&self, target: &Rational) -> Option<&HankelRoot> {
        self.roots.iter().min_by(|a, b| (&a.value - target).abs().cmp(&(&b.value - target).abs()))
    }
}

/// Scans `grid_n + 1` equally spaced energies on `[lo, hi]` with the float
/// backend, certifies every sign change exactly, then bisects each bracket.
/// Local minima of `|H|` without a sign change are re-scanned on a finer grid
/// up to `zoom_depth` times, since roots of `H` come in tight clusters.
pub fn hankel_roots(table: &SeriesTable, spec: HankelSpec, lo: &Rational, hi: &Rational, opts: &HankelOptions) -> Result<HankelResult> {
    if lo >= hi {
        return Err(Error::InvalidInterval(format!("({lo}, {hi})")));
    }
    if opts.grid_n < 2 || opts.zoom_n < 2 {
        return Err(Error::InvalidParameter("grid sizes must be at least 2".into()));
    }
    let ev = HankelEvaluator::new(table, spec, opts.precision)?.exact_only(opts.exact_only);
    let mut pts: Vec<Point> = uniform(lo, hi, opts.grid_n)
        .into_iter()
        .map(|e| Point { sample: ev.sample(&e), e, level: 0, exact: None })
        .collect();
    for level in 0..opts.zoom_depth {
        let mut added = Vec::new();
        for i in 1..pts.len() - 1 {
            if pts[i].level == level && pts[i].is_local_min(&pts[i - 1], &pts[i + 1]) {
                let sub = uniform(&pts[i - 1].e, &pts[i + 1].e, opts.zoom_n);
                added.extend(sub[1..opts.zoom_n].iter().filter(|e| **e != pts[i].e).cloned());
            }
        }
        if added.is_empty() {
            break;
        }
        added.sort();
        added.dedup();
        pts.extend(added.into_iter().map(|e| Point { sample: ev.sample(&e), e, level: level + 1, exact: None }));
        pts.sort_by(|x, y| x.e.cmp(&y.e));
        pts.dedup_by(|x, y| x.e == y.e);
    }

    // A pair of roots closer than the finest spacing shows up as a same-sign
    // local minimum of |H|; descend into it and look for the opposite sign.
    let mut split = Vec::new();
    for i in 1..pts.len() - 1 {
        let s = pts[i].sample.value.signum();
        if s != 0
            && pts[i - 1].sample.value.signum() == s
            && pts[i + 1].sample.value.signum() == s
            && pts[i].is_local_min(&pts[i - 1], &pts[i + 1])
        {
            if let Some(p) = split_pair(&ev, &pts[i - 1].e, &pts[i + 1].e, s, &opts.tol) {
                split.push(p);
            }
        }
    }
    pts.extend(split);
    pts.sort_by(|x, y| x.e.cmp(&y.e));
    pts.dedup_by(|x, y| x.e == y.e);

    let mut roots = Vec::new();
    for p in &mut pts[1..] {
        if !p.sample.reliable && p.exact_sign(&ev) == 0 {
            roots.push(HankelRoot { value: p.e.clone(), bracket: None, backend: "exact", exact_confirmed: true });
        }
    }
    roots.retain(|r| r.value != *hi);
    for i in 0..pts.len() - 1 {
        let (s0, s1) = (pts[i].sample.value.signum(), pts[i + 1].sample.value.signum());
        let float_change = s0 != 0 && s1 != 0 && s0 != s1;
        if !float_change && pts[i].sample.reliable && pts[i + 1].sample.reliable {
            continue;
        }
        let e0 = pts[i].exact_sign(&ev);
        let e1 = pts[i + 1].exact_sign(&ev);
        if e0 == 0 || e1 == 0 || e0 == e1 {
            continue;
        }
        let bracket = Bracket::new(pts[i].e.clone(), pts[i + 1].e.clone(), e0, e1)?;
        roots.push(refine_hybrid(&ev, bracket, &opts.tol));
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));

    let dip = opts.dip_ratio.log10();
    let mut degenerate = Vec::new();
    for i in 1..pts.len() - 1 {
        let (l, c, r) = (&pts[i - 1].sample.value, &pts[i].sample.value, &pts[i + 1].sample.value);
        let same = c.signum() != 0 && l.signum() == c.signum() && r.signum() == c.signum();
        let lc = c.log10_abs();
        if same && lc < l.log10_abs() + dip && lc < r.log10_abs() + dip {
            degenerate.push(DegenerateCandidate { energy: pts[i].e.clone(), log10_abs_h: lc });
        }
    }
    Ok(HankelResult { spec, roots, degenerate, interval: (lo.clone(), hi.clone()) })
}

/// Golden-section descent of `s·H` on `[lo, hi]`; returns the first point
/// whose sign is (reliably, or exactly) opposite to `s`.
fn split_pair(ev: &HankelEvaluator<'_>, lo: &Rational, hi: &Rational, s: i8, tol: &Rational) -> Option<Point> {
    const MAX_STEPS: usize = 200;
    let inv_phi = Rational::new(618_034.into(), 1_000_000.into());
    let probe = |e: Rational| -> (Point, Option<f64>) {
        let mut p = Point { sample: ev.sample(&e), e, level: usize::MAX, exact: None };
        let sign = p.sample.value.signum();
        if sign == -s && (p.sample.reliable || p.exact_sign(ev) == -s) {
            return (p, None);
        }
        // descent key: log-magnitude on the expected side, smaller is deeper
        let key = if sign == s { p.sample.value.log10_abs() } else { f64::NEG_INFINITY };
        (p, Some(key))
    };
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let interior = |a: &Rational, b: &Rational, t: &Rational| {
        let w = b - a;
        dyadic_round(&(a + &w * t), &w)
    };
    let one = Rational::one();
    let (mut c, mut d) = (interior(&a, &b, &(&one - &inv_phi)), interior(&a, &b, &inv_phi));
    let (pc, mut fc) = probe(c.clone());
    if fc.is_none() {
        return Some(pc);
    }
    let (pd, mut fd) = probe(d.clone());
    if fd.is_none() {
        return Some(pd);
    }
    for _ in 0..MAX_STEPS {
        if &b - &a < *tol || c >= d {
            return None;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = interior(&a, &b, &(&one - &inv_phi));
            let (p, f) = probe(c.clone());
            if f.is_none() {
                return Some(p);
            }
            fc = f;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = interior(&a, &b, &inv_phi);
            let (p, f) = probe(d.clone());
            if f.is_none() {
                return Some(p);
            }
            fd = f;
        }
    }
    None
}

/// `x` rounded to a dyadic rational with spacing below `width / 1024`.
fn dyadic_round(x: &Rational, width: &Rational) -> Rational {
    let bits = (-crate::algebra::rational::log10_abs(width) * std::f64::consts::LOG2_10).ceil().max(0.0) as i64 + 10;
    let scale = crate::algebra::rational::pow2(bits);
    (x * &scale).round() / scale
}

fn uniform(lo: &Rational, hi: &Rational, n: usize) -> Vec<Rational> {
    let step = (hi - lo) / int(n as i64);
    (0..=n).map(|i| lo + &step * int(i as i64)).collect()
}

struct Point {
    e: Rational,
    sample: FloatSample,
    level: usize,
    exact: Option<i8>,
}

impl Point {
    fn exact_sign(&mut self, ev: &HankelEvaluator<'_>) -> i8 {
        *self.exact.get_or_insert_with(|| ev.exact_sign(&self.e))
    }

    fn is_local_min(&self, left: &Point, right: &Point) -> bool {
        let m = self.sample.value.log10_abs();
        m <= left.sample.value.log10_abs() && m <= right.sample.value.log10_abs()
    }
}

/// Float-guided dyadic bisection, certified at the end by exact signs at both
/// endpoints; falls back to exact bisection from the starting bracket if the
/// certificate fails.
fn refine_hybrid(ev: &HankelEvaluator<'_>, start: Bracket, tol: &Rational) -> HankelRoot {
    let float_run = crate::algebra::refine_root(|x| ev.guarded_sign(x), &start, tol);
    if float_run.exact && ev.exact_sign(&float_run.value) == 0 {
        return HankelRoot { value: float_run.value, bracket: Some(float_run.bracket), backend: "exact", exact_confirmed: true };
    }
    let b = &float_run.bracket;
    if !float_run.exact && ev.exact_sign(b.lo()) == start.sign_lo() && ev.exact_sign(b.hi()) == start.sign_hi() {
        let backend = if ev.exact_only { "exact" } else { "float" };
        return HankelRoot { value: float_run.value, bracket: Some(float_run.bracket), backend, exact_confirmed: true };
    }
    let exact_run = crate::algebra::refine_root(|x| ev.exact_sign(x), &start, tol);
    HankelRoot { value: exact_run.value, bracket: Some(exact_run.bracket), backend: "exact", exact_confirmed: true }
}

/// Rational approximant `Σ a_j y^j / Σ b_j y^j`, `y = x²`, `b_0 = 1`.
#[derive(Clone, Debug)]
pub struct PadeApproximant {
    pub numerator: Vec<HighPrecFloat>,
    pub denominator: Vec<HighPrecFloat>,
    /// `|Σ_i b_i c_{N+d+1-i}|`: the one matching condition not imposed.
    pub residual: HighPrecFloat,
}

impl PadeApproximant {
    /// First `terms` Taylor coefficients of numerator / denominator.
    pub fn expand(&self, terms: usize) -> Vec<HighPrecFloat> {
        let prec = self.residual.precision();
        let b = &self.denominator;
        let mut q: Vec<HighPrecFloat> = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut acc = self.numerator.get(k).cloned().unwrap_or_else(|| HighPrecFloat::zero(prec));
            for i in 1..b.len().min(k + 1) {
                acc = &acc - &(&b[i] * &q[k - i]);
            }
            q.push(acc);
        }
        q
    }
}

/// Padé approximant `[N+d / N]` to the series at energy `e` (ideally a root
/// of `H_{N+1}^d`).
pub fn pade_coefficients(table: &SeriesTable, n: usize, d: usize, e: &HighPrecFloat) -> Result<PadeApproximant> {
    let need = 2 * n + d + 1;
    if table.j_max() < need {
        return Err(Error::TableTooShort { required: need, available: table.j_max() });
    }
    let prec = e.precision();
    let c = table.float_evaluator(prec).eval(e, need);
    // rows k = N+d+2 ..= 2N+d+1, unknowns b_1..b_N: Σ_i b_i c_{k-i} = -c_k
    let mut a: Vec<Vec<HighPrecFloat>> = (0..n)
        .map(|r| {
            let k = n + d + 2 + r;
            let mut row: Vec<HighPrecFloat> = (1..=n).map(|i| c[k - i].clone()).collect();
            row.push(-c[k].clone());
            row
        })
        .collect();
    let b_tail = solve_consistent(&mut a, n, prec)?;
    let mut b = vec![HighPrecFloat::from_i64(1, prec)];
    b.extend(b_tail);
    let conv = |k: usize| {
        (0..=k.min(n)).fold(HighPrecFloat::zero(prec), |acc, i| &acc + &(&b[i] * &c[k - i]))
    };
    let numerator = (0..=n + d).map(conv).collect();
    let residual = conv(n + d + 1).abs();
    Ok(PadeApproximant { numerator, denominator: b, residual })
}

/// Solves an augmented `n × (n+1)` system by partial pivoting. Free variables
/// of a consistent singular system are set to zero; an inconsistent one errors.
fn solve_consistent(a: &mut [Vec<HighPrecFloat>], n: usize, prec: Precision) -> Result<Vec<HighPrecFloat>> {
    let scale = a.iter().flatten().map(|x| x.log10_abs()).fold(f64::NEG_INFINITY, f64::max);
    let zero_below = scale - prec.decimal_digits() as f64 + 10.0;
    let negligible = |x: &HighPrecFloat| x.is_zero() || x.log10_abs() < zero_below;
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == n {
            break;
        }
        let p = (row..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap_or(Ordering::Equal))
            .unwrap();
        if negligible(&a[p][col]) {
            continue;
        }
        a.swap(p, row);
        for r in 0..n {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[row][col];
            for j in col..=n {
                a[r][j] = &a[r][j] - &(&f * &a[row][j]);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !negligible(&r[n])) {
        return Err(Error::PadeSingular);
    }
    let mut x = vec![HighPrecFloat::zero(prec); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = &a[r][n] / &a[r][col];
    }
    Ok(x)
}

/// Fixed-point rendering used by reports.
pub fn display_root(r: &Rational, digits: usize) -> String {
    to_fixed(r, digits)
}
