//! The minimal commutative-ring interface shared by integers, rationals and
//! polynomials, enough for fraction-free elimination and the series recurrence.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{bareiss, bareiss_int, Matrix};
use super::rational::Rational;

pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// `self / rhs` when the quotient exists in the ring, `None` otherwise.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    /// Exact determinant; Bareiss elimination unless a ring has a faster route.
    fn determinant(m: Matrix<Self>) -> Self {
        bareiss(m)
    }
}

/// Rings that contain the rationals (constants embed exactly).
pub trait RationalAlgebra: Ring {
    fn from_rational(r: &Rational) -> Self;
}

impl Ring for BigInt {
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn determinant(m: Matrix<Self>) -> Self {
        bareiss_int(m)
    }
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }

    /// Clears denominators row by row and runs integer Bareiss; much cheaper
    /// than elimination over the rationals, which normalises by gcd at every step.
    fn determinant(m: Matrix<Self>) -> Self {
        let n = m.size();
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            let lcm = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in m.row(i) {
                rows.push(x.numer() * (&lcm / x.denom()));
            }
            scale *= lcm;
        }
        let det = bareiss_int(Matrix::from_vec(n, rows));
        Rational::new(det, scale)
    }
}

impl RationalAlgebra for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}
