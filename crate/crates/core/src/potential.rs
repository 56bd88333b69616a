//! Even potentials `V(x) = Σ_{k≥1} v_k x^{2k}`: polynomial ones stored
//! verbatim, and `x² + λx²/(1+gx²)` expanded as a geometric series.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, int, parse_rational};
use crate::algebra::{HighPrecFloat, Precision, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialKind {
    Polynomial,
    RationalTruncated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    /// `v[k-1]` is the coefficient of `x^{2k}`.
    v: Vec<Rational>,
    kind: PotentialKind,
    /// `(λ, g)` for the rational potential.
    params: Option<(Rational, Rational)>,
    truncation_order: usize,
}

impl PotentialSpec {
    /// `V = Σ coeffs[k-1] x^{2k}`, stored as given.
    pub fn polynomial(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::FreeParticle);
        }
        let n = coeffs.len();
        Ok(PotentialSpec { v: coeffs, kind: PotentialKind::Polynomial, params: None, truncation_order: n })
    }

    /// `V = x⁴`.
    pub fn quartic() -> Self {
        Self::polynomial(vec![int(0), int(1)]).unwrap()
    }

    /// `V = x²`.
    pub fn harmonic() -> Self {
        Self::polynomial(vec![int(1)]).unwrap()
    }

    /// Taylor coefficients of `x² + λx²/(1+gx²)` through `x^{2J}`:
    /// `v_1 = 1+λ`, `v_k = λ(-g)^{k-1}`.
    pub fn rational(lambda: Rational, g: Rational, order: usize) -> Result<Self> {
        if !g.is_positive() {
            return Err(Error::NonPositiveCoupling);
        }
        if order == 0 {
            return Err(Error::InvalidParameter("truncation order must be at least 1".into()));
        }
        let mut v = Vec::with_capacity(order);
        v.push(Rational::one() + &lambda);
        let mut tail = lambda.clone();
        for _ in 2..=order {
            tail = -(tail * &g);
            v.push(tail.clone());
        }
        Ok(PotentialSpec {
            v,
            kind: PotentialKind::RationalTruncated,
            params: Some((lambda, g)),
            truncation_order: order,
        })
    }

    /// Same potential, re-expanded (rational) or unchanged (polynomial) so
    /// that at least `order` coefficients are materialised.
    pub fn with_order(&self, order: usize) -> Self {
        match &self.params {
            Some((l, g)) if order != self.truncation_order => Self::rational(l.clone(), g.clone(), order).unwrap(),
            _ => self.clone(),
        }
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn params(&self) -> Option<(&Rational, &Rational)> {
        self.params.as_ref().map(|(l, g)| (l, g))
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    /// Stored coefficients, `coefficients()[k-1] = v_k`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.v
    }

    /// `v_k` for `k ≥ 1`. Polynomial potentials are zero past their last
    /// term; a truncated rational potential has no value past its order.
    pub fn v(&self, k: usize) -> Result<Rational> {
        assert!(k >= 1, "potential coefficients start at v_1");
        match self.v.get(k - 1) {
            Some(c) => Ok(c.clone()),
            None if self.kind == PotentialKind::Polynomial => Ok(Rational::zero()),
            None => Err(Error::PotentialTooShort { available: self.truncation_order, missing: k }),
        }
    }

    /// Closed-form `V(x)`, never the truncated series.
    pub fn value_at(&self, x: &HighPrecFloat) -> HighPrecFloat {
        let prec = x.precision();
        let x2 = x * x;
        match &self.params {
            Some((lambda, g)) => {
                let l = HighPrecFloat::from_rational(lambda, prec);
                let gf = HighPrecFloat::from_rational(g, prec);
                let one = HighPrecFloat::from_i64(1, prec);
                let denom = &one + &(&gf * &x2);
                &x2 + &(&(&l * &x2) / &denom)
            }
            None => {
                let mut acc = HighPrecFloat::zero(prec);
                for c in self.v.iter().rev() {
                    acc = &(&acc + &HighPrecFloat::from_rational(c, prec)) * &x2;
                }
                acc
            }
        }
    }

    /// Radius of convergence of the expansion in `x`: the poles sit at `±i/√g`.
    pub fn pole_radius(&self, prec: Precision) -> Result<PoleInfo> {
        let (_, g) = self.params().ok_or(Error::NoFinitePoles)?;
        let root_g = HighPrecFloat::from_rational(g, prec).sqrt();
        let radius = &HighPrecFloat::from_i64(1, prec) / &root_g;
        Ok(PoleInfo { radius, location_description: format!("±i/√g on imaginary axis (g = {})", format_rational(g)) })
    }
}

/// Location of the potential's complex singularities.
#[derive(Clone, Debug)]
pub struct PoleInfo {
    pub radius: HighPrecFloat,
    pub location_description: String,
}

/// On-disk potential description with exact rational strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Polynomial { v: Vec<String> },
    Rational { lambda: String, g: String },
}

impl PotentialConfig {
    /// Builds the spec, expanding a rational potential through `x^{2·order}`.
    pub fn to_spec(&self, order: usize) -> Result<PotentialSpec> {
        match self {
            PotentialConfig::Polynomial { v } => {
                let coeffs = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                PotentialSpec::polynomial(coeffs)
            }
            PotentialConfig::Rational { lambda, g } => {
                PotentialSpec::rational(parse_rational(lambda)?, parse_rational(g)?, order.max(1))
            }
        }
    }
}
