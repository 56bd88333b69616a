//! Exact rational scalars and the handful of helpers the rest of the crate
//! needs on top of `num-rational`: parsing, decimal rendering, dyadic splitting.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact arbitrary-precision fraction, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` with small integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^k` as an exact rational, negative `k` allowed.
pub fn pow10(k: i32) -> Rational {
    let p = num_traits::pow(BigInt::from(10), k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `2^k` as an exact rational, negative `k` allowed.
pub fn pow2(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal (`"-1.25"`, `"1e-3"`) exactly.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let n: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().map_err(|_| bad())? };
    let scale = exponent - frac_part.len() as i32;
    let value = Rational::from_integer(n) * pow10(scale);
    Ok(if neg { -value } else { value })
}

/// Renders as `"p/q"` or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal with exactly `digits` places after the point,
/// rounded half away from zero.
pub fn to_fixed(r: &Rational, digits: usize) -> String {
    let scaled = r * pow10(digits as i32);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem.abs() * 2u32;
    let mut q = q;
    if twice >= *scaled.denom() {
        q += if r.is_negative() { -1 } else { 1 };
    }
    let neg = q.is_negative();
    let mut s = q.abs().to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

/// Decimal with `sig` significant digits (fixed notation, no exponent).
pub fn to_significant(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return to_fixed(r, sig.saturating_sub(1));
    }
    let mag = decimal_exponent(r);
    let places = (sig as i64 - 1 - mag).max(0) as usize;
    to_fixed(r, places)
}

/// `floor(log10 |r|)` computed exactly; `r` must be nonzero.
pub fn decimal_exponent(r: &Rational) -> i64 {
    let a = r.abs();
    let mut k = (log10_abs(&a).floor()) as i64;
    // correct any float misestimate at decade boundaries
    loop {
        if a < pow10(k as i32) {
            k -= 1;
        } else if a >= pow10(k as i32 + 1) {
            k += 1;
        } else {
            return k;
        }
    }
}

/// `log10 |r|` to double precision; `-inf` for zero.
pub fn log10_abs(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_bigint(r.numer()) - log10_bigint(r.denom())
}

pub(crate) fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return to_f64_int(n).abs().log10();
    }
    let shift = bits - 64;
    let top = to_f64_int(&(n.abs() >> shift));
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn to_f64_int(n: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY)
}

pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * 10f64.powf(log10_abs(r))
}

/// Exact value of the nearest representable double; used for grid display only.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn signum(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// A dyadic rational `k / 2^n` inside the middle half of `(lo, hi)`.
///
/// Bisection driven by this split keeps every interior point dyadic, so the
/// denominators of evaluation points grow by one bit per step at most.
pub fn dyadic_split(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let width = hi - lo;
    let center = (lo + hi) / int(2);
    if center.denom().is_one() || is_dyadic(&center) {
        return center;
    }
    // smallest n with 2^-n <= width / 4
    let mut n = -(log10_abs(&width) / std::f64::consts::LOG10_2).floor() as i64 + 2;
    loop {
        let unit = pow2(-n);
        if unit <= &width / int(4) {
            break;
        }
        n += 1;
    }
    let scaled = &center * pow2(n);
    let k = scaled.round();
    k * pow2(-n)
}

fn is_dyadic(r: &Rational) -> bool {
    let d = r.denom();
    d.trailing_zeros().map_or(true, |tz| (d >> tz).is_one())
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // both in (fl, fl+1): recurse on reciprocals of fractional parts
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}
