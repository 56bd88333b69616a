//! Binary floating point with a configurable, large mantissa.
//!
//! Values are `±mag · 2^exp` with `mag < 2^bits`. Results of `+ - * /`,
//! `sqrt` and rational conversion are rounded to nearest (ties to even) at
//! the wider precision of the operands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{pow10, to_significant, Rational};

/// Precision of a [`HighPrecFloat`], in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 50;
    pub const DEFAULT_DIGITS: u32 = 256;

    /// Clamps to [`Precision::MIN_DIGITS`].
    pub fn digits(d: u32) -> Self {
        Precision(d.max(Self::MIN_DIGITS))
    }

    pub fn decimal_digits(self) -> u32 {
        self.0
    }

    /// Mantissa bits, enough that half an ulp is below `10^-P` relative.
    pub fn bits(self) -> u32 {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 1
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone)]
pub struct HighPrecFloat {
    neg: bool,
    mag: BigUint,
    exp: i64,
    bits: u32,
}

impl HighPrecFloat {
    pub fn zero(prec: Precision) -> Self {
        HighPrecFloat { neg: false, mag: BigUint::zero(), exp: 0, bits: prec.bits() }
    }

    pub fn from_i64(n: i64, prec: Precision) -> Self {
        Self::round(n < 0, BigUint::from(n.unsigned_abs()), 0, prec.bits(), false)
    }

    /// Correctly rounded conversion.
    pub fn from_rational(r: &Rational, prec: Precision) -> Self {
        Self::quotient(r.numer(), r.denom(), prec.bits())
    }

    fn quotient(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        if num.is_zero() {
            return HighPrecFloat { neg: false, mag: BigUint::zero(), exp: 0, bits };
        }
        let neg = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
        let n = num.magnitude();
        let d = den.magnitude();
        // scale so the integer quotient carries bits + 2 significant bits
        let shift = bits as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (scaled_n, scaled_d) = if shift >= 0 { (n << shift as u64, d.clone()) } else { (n.clone(), d << (-shift) as u64) };
        let (q, r) = scaled_n.div_rem(&scaled_d);
        Self::round(neg, q, -shift, bits, !r.is_zero())
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        let m = BigInt::from_biguint(if self.neg { Sign::Minus } else { Sign::Plus }, self.mag.clone());
        if self.exp >= 0 {
            Rational::from_integer(m << self.exp as u64)
        } else {
            Rational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn precision(&self) -> Precision {
        Precision(((self.bits - 1) as f64 / std::f64::consts::LOG2_10).floor() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.mag.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        HighPrecFloat { neg: false, ..self.clone() }
    }

    /// Position of the most significant bit: `|x|` lies in `[2^(t-1), 2^t)`.
    fn top(&self) -> i64 {
        self.exp + self.mag.bits() as i64
    }

    /// `log10 |x|` in double precision; `-inf` at zero. Valid far beyond the
    /// f64 exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.mag.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = self.mag.bits();
        let keep = nb.min(60);
        let head = (&self.mag >> (nb - keep)).to_f64().unwrap();
        head.log10() + (self.exp + (nb - keep) as i64) as f64 * std::f64::consts::LOG10_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.mag.is_zero() {
            return 0.0;
        }
        let v = 10f64.powf(self.log10_abs());
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.neg || self.mag.is_zero(), "square root of a negative number");
        if self.mag.is_zero() {
            return self.clone();
        }
        let want = 2 * (self.bits as i64 + 2);
        let mut shift = (want - self.mag.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mag << shift as u64;
        let root = m.sqrt();
        let inexact = &root * &root != m;
        Self::round(false, root, (self.exp - shift) / 2, self.bits, inexact)
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        to_significant(&self.to_rational(), sig)
    }

    /// Scientific notation `d.ddd…e±k` with `sig` significant digits.
    pub fn to_scientific(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = self.to_rational();
        let k = super::rational::decimal_exponent(&r);
        let scaled = r * pow10(-(k as i32));
        let body = super::rational::to_fixed(&scaled, sig.saturating_sub(1));
        // rounding may carry into a new decade (9.99… -> 10.0)
        if body.trim_start_matches('-').starts_with("10") {
            let scaled = self.to_rational() * pow10(-(k as i32 + 1));
            return format!("{}e{}", super::rational::to_fixed(&scaled, sig.saturating_sub(1)), k + 1);
        }
        format!("{body}e{k}")
    }

    fn round(neg: bool, mag: BigUint, exp: i64, bits: u32, sticky: bool) -> Self {
        if mag.is_zero() {
            return HighPrecFloat { neg: false, mag, exp: 0, bits };
        }
        let nb = mag.bits();
        if nb <= bits as u64 {
            // sticky bits below an exact mantissa cannot change round-to-nearest
            return HighPrecFloat { neg, mag, exp, bits };
        }
        let shift = nb - bits as u64;
        let mut q = &mag >> shift;
        let half_bit = mag.bit(shift - 1);
        let below = sticky || mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
        if half_bit && (below || q.bit(0)) {
            q += 1u32;
        }
        let mut exp = exp + shift as i64;
        if q.bits() > bits as u64 {
            q >>= 1;
            exp += 1;
        }
        HighPrecFloat { neg, mag: q, exp, bits }
    }

    fn add_signed(&self, rhs: &Self, negate_rhs: bool) -> Self {
        let bits = self.bits.max(rhs.bits);
        let rneg = rhs.neg != negate_rhs;
        if rhs.mag.is_zero() {
            return Self::round(self.neg, self.mag.clone(), self.exp, bits, false);
        }
        if self.mag.is_zero() {
            return Self::round(rneg, rhs.mag.clone(), rhs.exp, bits, false);
        }
        // operand far below the other's last kept bit only contributes a sticky bit
        let gap = bits as i64 + 3;
        if rhs.top() < self.top() - gap {
            return self.nudge(rneg, bits);
        }
        if self.top() < rhs.top() - gap {
            let mut big = rhs.clone();
            big.neg = rneg;
            return big.nudge(self.neg, bits);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mag << (self.exp - e) as u64;
        let b = &rhs.mag << (rhs.exp - e) as u64;
        let (neg, mag) = if self.neg == rneg {
            (self.neg, a + b)
        } else {
            match a.cmp(&b) {
                Ordering::Greater => (self.neg, a - b),
                Ordering::Less => (rneg, b - a),
                Ordering::Equal => return Self::zero(Precision(0)).with_bits(bits),
            }
        };
        Self::round(neg, mag, e, bits, false)
    }

    /// `self ± tiny` where `tiny < 2^(top - bits - 3)`: the tiny term only
    /// decides rounding, so it enters as a sticky bit below two guard bits.
    fn nudge(&self, tiny_neg: bool, bits: u32) -> Self {
        let s = (bits as u64 + 2).saturating_sub(self.mag.bits()).max(2);
        let mag = &self.mag << s;
        let mag = if tiny_neg == self.neg { mag } else { mag - 1u32 };
        Self::round(self.neg, mag, self.exp - s as i64, bits, true)
    }

    fn with_bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }
}

impl PartialEq for HighPrecFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for HighPrecFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl HighPrecFloat {
    fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            (s, _) => {
                let ord = match self.top().cmp(&other.top()) {
                    Ordering::Equal => {
                        let e = self.exp.min(other.exp);
                        let a = &self.mag << (self.exp - e) as u64;
                        let b = &other.mag << (other.exp - e) as u64;
                        a.cmp(&b)
                    }
                    o => o,
                };
                if s < 0 {
                    ord.reverse()
                } else {
                    ord
                }
            }
        }
    }
}

impl fmt::Debug for HighPrecFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scientific(20))
    }
}

impl fmt::Display for HighPrecFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_scientific(sig))
    }
}

impl<'a> Add<&'a HighPrecFloat> for &'a HighPrecFloat {
    type Output = HighPrecFloat;
    fn add(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a HighPrecFloat> for &'a HighPrecFloat {
    type Output = HighPrecFloat;
    fn sub(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a HighPrecFloat> for &'a HighPrecFloat {
    type Output = HighPrecFloat;
    fn mul(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        let bits = self.bits.max(rhs.bits);
        HighPrecFloat::round(self.neg != rhs.neg, &self.mag * &rhs.mag, self.exp + rhs.exp, bits, false)
    }
}

impl<'a> Div<&'a HighPrecFloat> for &'a HighPrecFloat {
    type Output = HighPrecFloat;
    fn div(self, rhs: &HighPrecFloat) -> HighPrecFloat {
        assert!(!rhs.mag.is_zero(), "division by zero");
        let bits = self.bits.max(rhs.bits);
        if self.mag.is_zero() {
            return HighPrecFloat::zero(Precision(0)).with_bits(bits);
        }
        let shift = bits as i64 + 2 + rhs.mag.bits() as i64 - self.mag.bits() as i64;
        let shift = shift.max(0);
        let (q, r) = (&self.mag << shift as u64).div_rem(&rhs.mag);
        HighPrecFloat::round(self.neg != rhs.neg, q, self.exp - shift - rhs.exp, bits, !r.is_zero())
    }
}

impl Neg for HighPrecFloat {
    type Output = HighPrecFloat;
    fn neg(mut self) -> HighPrecFloat {
        if !self.mag.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HighPrecFloat {
            type Output = HighPrecFloat;
            fn $m(self, rhs: HighPrecFloat) -> HighPrecFloat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a HighPrecFloat> for HighPrecFloat {
            type Output = HighPrecFloat;
            fn $m(self, rhs: &HighPrecFloat) -> HighPrecFloat {
                (&self).$m(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);
