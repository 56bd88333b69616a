//! Shooting oracle: Numerov integration of `ψ'' = (V(x) − E) ψ` outward from
//! the origin with the closed-form potential, bisecting `E` on the sign of
//! `ψ(x_max)`.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::algebra::rational::{int, pow10};
use crate::algebra::{HighPrecFloat, Precision, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShootingConfig {
    x_max: Rational,
    h: Rational,
    parity: Parity,
    precision: Precision,
}

impl ShootingConfig {
    pub fn new(x_max: Rational, h: Rational, parity: Parity, precision: Precision) -> Result<Self> {
        if !x_max.is_positive() || !h.is_positive() || h >= x_max {
            return Err(Error::InvalidParameter(format!("need 0 < h < x_max, got h={h}, x_max={x_max}")));
        }
        if !(&x_max / &h).is_integer() {
            return Err(Error::InvalidParameter(format!("x_max/h = {} is not an integer", &x_max / &h)));
        }
        Ok(ShootingConfig { x_max, h, parity, precision })
    }

    /// `x_max = 12`, `h = 1/200`, 50 digits.
    pub fn standard(parity: Parity) -> Self {
        Self::new(int(12), Rational::new(1.into(), 200.into()), parity, Precision::digits(50)).expect("valid defaults")
    }

    pub fn x_max(&self) -> &Rational {
        &self.x_max
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn with_h(&self, h: Rational) -> Result<Self> {
        Self::new(self.x_max.clone(), h, self.parity, self.precision)
    }

    fn steps(&self) -> usize {
        (&self.x_max / &self.h).to_integer().try_into().expect("step count fits in usize")
    }
}

/// Potential sampled on the grid once; only `E` changes between shots.
struct Shooter {
    v: Vec<HighPrecFloat>,
    k: HighPrecFloat,
    parity: Parity,
    prec: Precision,
}

impl Shooter {
    fn new<F: Fn(&HighPrecFloat) -> HighPrecFloat>(potential: F, cfg: &ShootingConfig) -> Self {
        let prec = cfg.precision;
        let h = HighPrecFloat::from_rational(&cfg.h, prec);
        let v = (0..=cfg.steps()).map(|i| potential(&(&h * &HighPrecFloat::from_i64(i as i64, prec)))).collect();
        let k = HighPrecFloat::from_rational(&(&cfg.h * &cfg.h / int(12)), prec);
        Shooter { v, k, parity: cfg.parity, prec }
    }

    /// `ψ(x_max)` for energy `e`.
    fn shoot(&self, e: &HighPrecFloat) -> HighPrecFloat {
        let one = HighPrecFloat::from_i64(1, self.prec);
        let ten = HighPrecFloat::from_i64(10, self.prec);
        let twelve = HighPrecFloat::from_i64(12, self.prec);
        let w = |i: usize| &one - &(&self.k * &(&self.v[i] - e));
        let (mut w_prev, mut w_cur) = (w(0), w(1));
        let (mut y_prev, mut y_cur) = match self.parity {
            // ψ(−h) = ψ(h) closes the first step
            Parity::Even => {
                let y1 = &(&(&twelve - &(&ten * &w_prev)) * &one) / &(&HighPrecFloat::from_i64(2, self.prec) * &w_cur);
                (one.clone(), y1)
            }
            Parity::Odd => (HighPrecFloat::zero(self.prec), one.clone()),
        };
        for i in 1..self.v.len() - 1 {
            let w_next = w(i + 1);
            let y_next = &(&(&(&twelve - &(&ten * &w_cur)) * &y_cur) - &(&w_prev * &y_prev)) / &w_next;
            y_prev = y_cur;
            y_cur = y_next;
            w_prev = w_cur;
            w_cur = w_next;
        }
        y_cur
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    #[serde(serialize_with = "ser_float")]
    pub energy: HighPrecFloat,
    #[serde(serialize_with = "crate::hill::ser_rational")]
    pub h: Rational,
    #[serde(serialize_with = "crate::hill::ser_rational")]
    pub x_max: Rational,
    /// `|E(h) − E(2h)| / 15`, when the coarser run was made.
    #[serde(serialize_with = "ser_opt_float")]
    pub error_estimate: Option<HighPrecFloat>,
}

fn ser_float<S: serde::Serializer>(x: &HighPrecFloat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_decimal(30))
}

fn ser_opt_float<S: serde::Serializer>(x: &Option<HighPrecFloat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_scientific(3)),
        None => s.serialize_none(),
    }
}

/// Bisects `E` in `(lo, hi)` on the sign of `ψ(x_max)` down to `10^-30`.
pub fn numerov_eigenvalue<F>(potential: F, cfg: &ShootingConfig, lo: &Rational, hi: &Rational) -> Result<HighPrecFloat>
where
    F: Fn(&HighPrecFloat) -> HighPrecFloat,
{
    if lo >= hi {
        return Err(Error::InvalidInterval(format!("({lo}, {hi})")));
    }
    let shooter = Shooter::new(potential, cfg);
    let prec = cfg.precision;
    let half = HighPrecFloat::from_rational(&Rational::new(One::one(), 2.into()), prec);
    let mut a = HighPrecFloat::from_rational(lo, prec);
    let mut b = HighPrecFloat::from_rational(hi, prec);
    let sa = shooter.shoot(&a).signum();
    let sb = shooter.shoot(&b).signum();
    if sa == 0 || sb == 0 || sa == sb {
        return Err(Error::NoEigenvalue);
    }
    let tol = HighPrecFloat::from_rational(&pow10(-30), prec);
    while &b - &a > tol {
        let m = &(&a + &b) * &half;
        let sm = shooter.shoot(&m).signum();
        if sm == 0 {
            return Ok(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(&(&a + &b) * &half)
}

/// [`numerov_eigenvalue`] at `h` and at `2h`, with the Richardson-style
/// discretization estimate for the finer run.
pub fn numerov_with_estimate<F>(potential: F, cfg: &ShootingConfig, lo: &Rational, hi: &Rational) -> Result<OracleResult>
where
    F: Fn(&HighPrecFloat) -> HighPrecFloat,
{
    let fine = numerov_eigenvalue(&potential, cfg, lo, hi)?;
    let coarse_h = cfg.h() * int(2);
    // no estimate when 2h does not divide x_max
    let error_estimate = match cfg.with_h(coarse_h) {
        Ok(coarse_cfg) => {
            let coarse = numerov_eigenvalue(&potential, &coarse_cfg, lo, hi)?;
            Some(&(&fine - &coarse).abs() / &HighPrecFloat::from_i64(15, cfg.precision()))
        }
        Err(_) => None,
    };
    Ok(OracleResult { energy: fine, h: cfg.h().clone(), x_max: cfg.x_max().clone(), error_estimate })
}
