//! Coefficients `c_j(E)` of `ψ = e^{-a x²} Σ_j c_j(E) x^{2j+s}`.
//!
//! Substituting the ansatz into `ψ'' + (E - V)ψ = 0` leaves
//! `φ'' - 4axφ' + (4a²x² - 2a + E - V)φ = 0` for `φ = Σ c_j x^{2j+s}`, and the
//! coefficient of `x^{2j+s}` gives
//!
//! ```text
//! (2j+2+s)(2j+1+s) c_{j+1} = (2a(4j+2s+1) - E) c_j - 4a² c_{j-1} + Σ_{k=1..j} v_k c_{j-k}
//! ```
//!
//! with `c_0 = 1`, `c_{-1} = 0`.

use num_traits::{One, Signed, Zero};
use crate::algebra::rational::{format_rational, int};
use crate::algebra::{EPoly, HighPrecFloat, Poly, Precision, Rational, RationalAlgebra};
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesParams {
    /// Gaussian width `a`.
    pub a: Rational,
    /// Parity index: 0 for even states, 1 for odd.
    pub s: u8,
    /// Highest coefficient index generated.
    pub j_max: usize,
}

impl SeriesParams {
    pub fn new(a: Rational, s: u8, j_max: usize) -> Result<Self> {
        if s > 1 {
            return Err(Error::InvalidParameter(format!("parity index s must be 0 or 1, got {s}")));
        }
        if j_max < 1 {
            return Err(Error::InvalidParameter("series length J must be at least 1".into()));
        }
        Ok(SeriesParams { a, s, j_max })
    }

    /// `(2j+2+s)(2j+1+s)`, the factor in front of `c_{j+1}`.
    fn step_denominator(&self, j: usize) -> i64 {
        let s = self.s as i64;
        let j = j as i64;
        (2 * j + 2 + s) * (2 * j + 1 + s)
    }
}

/// Exact energy polynomials `c_0 … c_J`.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    params: SeriesParams,
    potential: PotentialSpec,
    c: Vec<EPoly>,
}

/// Runs the recurrence over any ring containing the rationals, with `E` the
/// polynomial variable. `a` lives in the coefficient ring so it may itself be
/// symbolic.
pub fn series_coefficients<R: RationalAlgebra>(
    potential: &PotentialSpec,
    a: &R,
    s: u8,
    j_max: usize,
    c0: &R,
) -> Result<Vec<Poly<R>>> {
    let params = SeriesParams::new(Rational::zero(), s, j_max)?;
    let v: Vec<R> = (1..=j_max).map(|k| potential.v(k).map(|x| R::from_rational(&x))).collect::<Result<_>>()?;
    let four_a2 = R::from_int(4) * a.clone() * a.clone();
    let mut c: Vec<Poly<R>> = Vec::with_capacity(j_max + 1);
    c.push(Poly::constant(c0.clone()));
    for j in 0..j_max {
        let diag = R::from_int(2 * (4 * j as i64 + 2 * s as i64 + 1)) * a.clone();
        // (diag - E) c_j
        let mut next = c[j].scale(&diag) - c[j].shift(1);
        if j >= 1 {
            next = next - c[j - 1].scale(&four_a2);
        }
        for k in 1..=j {
            if !v[k - 1].is_zero() {
                next = next + c[j - k].scale(&v[k - 1]);
            }
        }
        let inv = Rational::new(One::one(), params.step_denominator(j).into());
        c.push(next.scale_rational(&inv));
    }
    Ok(c)
}

impl SeriesTable {
    pub fn generate(potential: &PotentialSpec, params: SeriesParams) -> Result<Self> {
        Self::generate_normalized(potential, params, &Rational::one())
    }

    /// Same recurrence with `c_0 = κ`.
    pub fn generate_normalized(potential: &PotentialSpec, params: SeriesParams, kappa: &Rational) -> Result<Self> {
        let c = series_coefficients(potential, &params.a, params.s, params.j_max, kappa)?;
        Ok(SeriesTable { params, potential: potential.clone(), c })
    }

    /// Wraps arbitrary coefficients without checking them; used to probe
    /// [`residual_check`] with corrupted tables.
    pub fn from_parts(potential: PotentialSpec, params: SeriesParams, c: Vec<EPoly>) -> Self {
        SeriesTable { params, potential, c }
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn j_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coefficient(&self, j: usize) -> Result<&EPoly> {
        self.c.get(j).ok_or(Error::SeriesTooShort { requested: j, available: self.j_max() })
    }

    pub fn coefficients(&self) -> &[EPoly] {
        &self.c
    }

    /// `c_0(E) … c_upto(E)` exactly, via Horner on the stored polynomials.
    pub fn eval_exact(&self, e: &Rational, upto: usize) -> Result<Vec<Rational>> {
        if upto > self.j_max() {
            return Err(Error::SeriesTooShort { requested: upto, available: self.j_max() });
        }
        Ok(self.c[..=upto].iter().map(|p| p.eval(e)).collect())
    }

    /// Float evaluator running the recurrence at a fixed numeric energy.
    pub fn float_evaluator(&self, prec: Precision) -> FloatSeries {
        FloatSeries::new(self, prec)
    }

    /// JSON-ready dump: `{"0": ["1"], "1": ["a", "-1/2"], …}`.
    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: serde_json::Map<String, serde_json::Value> = self
            .c
            .iter()
            .enumerate()
            .map(|(j, p)| (j.to_string(), serde_json::json!(p.to_strings())))
            .collect();
        serde_json::json!({
            "a": format_rational(&self.params.a),
            "s": self.params.s,
            "J": self.j_max(),
            "coefficients": coefficients,
        })
    }
}

/// The recurrence evaluated numerically at one energy, in high precision.
/// Avoids the cancellation of Horner on large alternating polynomials.
#[derive(Clone, Debug)]
pub struct FloatSeries {
    prec: Precision,
    s: u8,
    diag: Vec<HighPrecFloat>,
    four_a2: HighPrecFloat,
    v: Vec<HighPrecFloat>,
    inv_den: Vec<HighPrecFloat>,
    c0: HighPrecFloat,
}

impl FloatSeries {
    fn new(table: &SeriesTable, prec: Precision) -> Self {
        let p = &table.params;
        let j_max = table.j_max();
        let a = HighPrecFloat::from_rational(&p.a, prec);
        let diag = (0..j_max)
            .map(|j| &a * &HighPrecFloat::from_i64(2 * (4 * j as i64 + 2 * p.s as i64 + 1), prec))
            .collect();
        let four_a2 = &(&a * &a) * &HighPrecFloat::from_i64(4, prec);
        let v = (1..=j_max)
            .map(|k| HighPrecFloat::from_rational(&table.potential.v(k).unwrap_or_else(|_| Rational::zero()), prec))
            .collect();
        let inv_den = (0..j_max)
            .map(|j| HighPrecFloat::from_rational(&Rational::new(1.into(), p.step_denominator(j).into()), prec))
            .collect();
        let c0 = HighPrecFloat::from_rational(&table.c[0].coeff(0), prec);
        FloatSeries { prec, s: p.s, diag, four_a2, v, inv_den, c0 }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn parity(&self) -> u8 {
        self.s
    }

    /// `c_0(E) … c_upto(E)`.
    pub fn eval(&self, e: &HighPrecFloat, upto: usize) -> Vec<HighPrecFloat> {
        assert!(upto <= self.diag.len(), "series evaluator built for J = {}", self.diag.len());
        let mut c = Vec::with_capacity(upto + 1);
        c.push(self.c0.clone());
        for j in 0..upto {
            let mut next = &(&self.diag[j] - e) * &c[j];
            if j >= 1 {
                next = &next - &(&self.four_a2 * &c[j - 1]);
            }
            for k in 1..=j {
                if !self.v[k - 1].is_zero() {
                    next = &next + &(&self.v[k - 1] * &c[j - k]);
                }
            }
            c.push(&next * &self.inv_den[j]);
        }
        c
    }
}

/// Applies `φ'' - 4axφ' + (4a²x² - 2a + E - V)φ` to the truncated series at a
/// fixed energy, as polynomials in `x`, and returns the largest `|coefficient|`
/// of `x^{2j+s}` for `j ≤ J-1`. Exactly zero for every valid table.
pub fn residual_check(table: &SeriesTable, e: &Rational) -> Rational {
    let p = &table.params;
    let s = p.s as usize;
    let j_max = table.j_max();
    let a = &p.a;
    let values: Vec<Rational> = table.c.iter().map(|c| c.eval(e)).collect();
    let mut phi = vec![Rational::zero(); 2 * j_max + s + 1];
    for (j, cj) in values.iter().enumerate() {
        phi[2 * j + s] = cj.clone();
    }
    let phi = Poly::new(phi);
    let x = Poly::<Rational>::x();
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let v_poly = Poly::new(
        std::iter::once(Rational::zero())
            .chain((1..=j_max).flat_map(|k| [Rational::zero(), table.potential.v(k).unwrap_or_else(|_| Rational::zero())]))
            .collect(),
    );
    let multiplier = Poly::constant(int(4) * a * a) * x.clone() * x.clone()
        + Poly::constant(e - int(2) * a)
        - v_poly;
    let lhs = d2 - (x * d1).scale(&(int(4) * a)) + multiplier * phi;
    (0..j_max)
        .map(|j| lhs.coeff(2 * j + s).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::roots::isolate_real_roots;

    fn ep(c: &[(i64, i64)]) -> EPoly {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn quartic_with_symbolic_width() {
        let a: Poly<Rational> = Poly::x();
        let c = series_coefficients(&PotentialSpec::quartic(), &a, 0, 3, &Poly::constant(int(1))).unwrap();
        // c_1 = a - E/2
        let c1 = Poly::new(vec![Poly::x(), Poly::constant(rat(-1, 2))]);
        // c_2 = a²/2 - E a/2 + E²/24
        let c2 = Poly::new(vec![
            Poly::new(vec![int(0), int(0), rat(1, 2)]),
            Poly::new(vec![int(0), rat(-1, 2)]),
            Poly::constant(rat(1, 24)),
        ]);
        assert_eq!(c[1], c1);
        assert_eq!(c[2], c2);
    }

    #[test]
    fn harmonic_ground_state_truncates() {
        let t = SeriesTable::generate(&PotentialSpec::harmonic(), SeriesParams::new(rat(1, 2), 0, 8).unwrap()).unwrap();
        assert_eq!(t.coefficient(1).unwrap(), &ep(&[(1, 2), (-1, 2)]));
        assert_eq!(t.coefficient(2).unwrap(), &ep(&[(5, 24), (-6, 24), (1, 24)]));
        for j in 1..=8 {
            assert!(t.coefficient(j).unwrap().eval(&int(1)).is_zero(), "c_{j}(1) != 0");
        }
    }

    #[test]
    fn quartic_third_coefficient_at_zero_width() {
        let t = SeriesTable::generate(&PotentialSpec::quartic(), SeriesParams::new(int(0), 0, 3).unwrap()).unwrap();
        // (1 - E³/24)/30
        assert_eq!(t.coefficient(3).unwrap(), &ep(&[(1, 30), (0, 1), (0, 1), (-1, 720)]));
        assert_eq!(t.coefficient(2).unwrap().eval(&int(2)), rat(1, 6));
    }

    #[test]
    fn degrees_grow_by_one() {
        let pot = PotentialSpec::rational(int(1), rat(1, 5), 12).unwrap();
        for s in [0, 1] {
            let t = SeriesTable::generate(&pot, SeriesParams::new(rat(3, 7), s, 12).unwrap()).unwrap();
            for (j, c) in t.coefficients().iter().enumerate() {
                assert_eq!(c.degree(), Some(j));
            }
        }
    }

    #[test]
    fn short_potential_names_missing_coefficient() {
        let pot = PotentialSpec::rational(int(1), rat(1, 10), 3).unwrap();
        let err = SeriesTable::generate(&pot, SeriesParams::new(rat(1, 2), 0, 5).unwrap()).unwrap_err();
        assert_eq!(err, Error::PotentialTooShort { available: 3, missing: 4 });
    }

    #[test]
    fn residuals() {
        let h = SeriesTable::generate(&PotentialSpec::harmonic(), SeriesParams::new(rat(1, 2), 0, 6).unwrap()).unwrap();
        assert!(residual_check(&h, &int(1)).is_zero());
        let q = SeriesTable::generate(&PotentialSpec::quartic(), SeriesParams::new(int(1), 0, 10).unwrap()).unwrap();
        assert!(residual_check(&q, &rat(17, 13)).is_zero());
        let mut c = q.coefficients().to_vec();
        c[5] = c[5].clone() + Poly::constant(rat(1, 1000));
        let bad = SeriesTable::from_parts(q.potential().clone(), q.params().clone(), c);
        assert!(!residual_check(&bad, &rat(17, 13)).is_zero());
    }

    #[test]
    fn odd_parity_residual() {
        let pot = PotentialSpec::polynomial(vec![int(1), rat(1, 3)]).unwrap();
        let t = SeriesTable::generate(&pot, SeriesParams::new(rat(2, 3), 1, 9).unwrap()).unwrap();
        assert!(residual_check(&t, &rat(-5, 4)).is_zero());
    }

    #[test]
    fn harmonic_roots_are_odd_integers_4k_plus_1() {
        let t = SeriesTable::generate(&PotentialSpec::harmonic(), SeriesParams::new(rat(1, 2), 0, 6).unwrap()).unwrap();
        for m in 1..=6usize {
            let p = t.coefficient(m).unwrap();
            let iso = isolate_real_roots(p, &int(-1), &int(4 * m as i64 + 2)).unwrap();
            assert_eq!(iso.brackets.len(), m);
            for (k, b) in iso.brackets.iter().enumerate() {
                assert!(b.contains(&int(4 * k as i64 + 1)));
            }
        }
    }

    #[test]
    fn normalization_is_linear() {
        let pot = PotentialSpec::quartic();
        let params = SeriesParams::new(int(1), 0, 6).unwrap();
        let t1 = SeriesTable::generate(&pot, params.clone()).unwrap();
        let t3 = SeriesTable::generate_normalized(&pot, params, &int(3)).unwrap();
        for (x, y) in t1.coefficients().iter().zip(t3.coefficients()) {
            assert_eq!(&x.scale(&int(3)), y);
        }
    }

    #[test]
    fn float_recurrence_matches_exact() {
        let pot = PotentialSpec::rational(int(1), rat(1, 10), 15).unwrap();
        let t = SeriesTable::generate(&pot, SeriesParams::new(rat(1, 2), 0, 15).unwrap()).unwrap();
        let prec = Precision::digits(60);
        let e = rat(138, 100);
        let exact = t.eval_exact(&e, 15).unwrap();
        let approx = t.float_evaluator(prec).eval(&HighPrecFloat::from_rational(&e, prec), 15);
        for (x, y) in exact.iter().zip(&approx) {
            let err = (y.to_rational() - x).abs();
            assert!(err <= x.abs() * crate::algebra::rational::pow10(-50) + crate::algebra::rational::pow10(-70));
        }
    }

    #[test]
    fn invalid_params() {
        assert!(SeriesParams::new(int(1), 2, 3).is_err());
        assert!(SeriesParams::new(int(1), 0, 0).is_err());
    }
}
