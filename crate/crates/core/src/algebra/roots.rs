//! Certified real-root isolation (Sturm sequences over the rationals) and
//! exact-sign bisection.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::EPoly;
use super::rational::{dyadic_split, format_rational, int, pow2, signum, simplest_between, Rational};
use crate::error::Error;

/// An interval whose endpoint signs differ, both computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    lo: Rational,
    hi: Rational,
    sign_lo: i8,
    sign_hi: i8,
}

impl Bracket {
    /// Checks `lo < hi` and a strict sign change.
    pub fn new(lo: Rational, hi: Rational, sign_lo: i8, sign_hi: i8) -> Result<Self, Error> {
        if lo >= hi {
            return Err(Error::InvalidBracket(format!("lo {lo} is not below hi {hi}")));
        }
        if sign_lo == 0 || sign_hi == 0 || sign_lo == sign_hi {
            return Err(Error::InvalidBracket(format!("no sign change: {sign_lo} at lo, {sign_hi} at hi")));
        }
        Ok(Bracket { lo, hi, sign_lo, sign_hi })
    }

    /// Builds a bracket by evaluating `sign_of` at both endpoints.
    pub fn from_signs(lo: Rational, hi: Rational, mut sign_of: impl FnMut(&Rational) -> i8) -> Result<Self, Error> {
        let sl = sign_of(&lo);
        let sh = sign_of(&hi);
        Self::new(lo, hi, sl, sh)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn sign_lo(&self) -> i8 {
        self.sign_lo
    }

    pub fn sign_hi(&self) -> i8 {
        self.sign_hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

#[derive(Serialize)]
struct BracketRepr {
    lo: String,
    hi: String,
    sign_lo: i8,
    sign_hi: i8,
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BracketRepr {
            lo: format_rational(&self.lo),
            hi: format_rational(&self.hi),
            sign_lo: self.sign_lo,
            sign_hi: self.sign_hi,
        }
        .serialize(s)
    }
}

/// A root of even multiplicity: the polynomial touches zero without changing
/// sign. The enclosure is a bracket for the square-free factor carrying it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerateRoot {
    pub enclosure: Bracket,
    pub multiplicity: usize,
}

/// Result of [`isolate_real_roots`]: one entry per distinct root in the open
/// search interval.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RootIsolation {
    /// Odd-multiplicity roots with a certified sign change of the polynomial.
    pub brackets: Vec<Bracket>,
    /// Multiplicities of the bracketed roots, aligned with `brackets`.
    pub multiplicities: Vec<usize>,
    pub degenerate: Vec<DegenerateRoot>,
}

impl RootIsolation {
    pub fn distinct_count(&self) -> usize {
        self.brackets.len() + self.degenerate.len()
    }
}

/// Signed remainder chain `p, p', -rem(p, p'), …`, each member rescaled by a
/// positive constant.
pub fn sturm_chain(p: &EPoly) -> Vec<EPoly> {
    let mut chain = vec![p.normalize_abs()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.normalize_abs());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push((-r).normalize_abs());
    }
    chain
}

/// Sign variations of the chain at `x`, zeros skipped.
pub fn sign_variations(chain: &[EPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = signum(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_count(p: &EPoly, lo: &Rational, hi: &Rational) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, lo).saturating_sub(sign_variations(&chain, hi))
}

/// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` monic and square-free.
/// Returns `(f_i, i)` for the non-constant factors.
pub fn square_free_decomposition(p: &EPoly) -> Vec<(EPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div_poly(&a0).expect("gcd divides p");
    let mut c = dp.exact_div_poly(&a0).expect("gcd divides p'");
    let mut d = c - b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div_poly(&a).expect("gcd divides b");
        c = d.exact_div_poly(&a).expect("gcd divides d");
        d = c - b.derivative();
        i += 1;
    }
    out
}

/// Disjoint certified enclosures for every distinct real root of `p` in the
/// open interval `(lo, hi)`.
pub fn isolate_real_roots(p: &EPoly, lo: &Rational, hi: &Rational) -> Result<RootIsolation, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidInterval(format!("({lo}, {hi})")));
    }
    let factors = square_free_decomposition(p);
    if factors.is_empty() {
        return Ok(RootIsolation::default());
    }
    let squarefree = factors.iter().fold(EPoly::one(), |acc, (f, _)| acc * f.clone());
    let chain = sturm_chain(&squarefree);
    let is_root = |x: &Rational| squarefree.eval(x).is_zero();
    let count = |a: &Rational, b: &Rational| sign_variations(&chain, a).saturating_sub(sign_variations(&chain, b));

    // pull root endpoints inward so every interval endpoint is a non-root
    let (mut a, mut b) = (lo.clone(), hi.clone());
    if is_root(&a) {
        a = nudge_off_root(&a, hi, true, &is_root, &count);
    }
    if is_root(&b) {
        b = nudge_off_root(&b, &a, false, &is_root, &count);
    }

    let mut isolating = Vec::new();
    let mut work = vec![(a, b)];
    while let Some((l, r)) = work.pop() {
        match count(&l, &r) {
            0 => {}
            1 => isolating.push((l, r)),
            _ => {
                let m = split_off_root(&l, &r, &is_root);
                work.push((m.clone(), r));
                work.push((l, m));
            }
        }
    }
    isolating.sort_by(|x, y| x.0.cmp(&y.0));

    let mut out = RootIsolation::default();
    for (l, r) in isolating {
        let (f, mult) = factors
            .iter()
            .find(|(f, _)| signum(&f.eval(&l)) != signum(&f.eval(&r)))
            .expect("one square-free factor changes sign on an isolating interval");
        if mult % 2 == 1 {
            out.brackets.push(Bracket::from_signs(l, r, |x| signum(&p.eval(x)))?);
            out.multiplicities.push(*mult);
        } else {
            let enclosure = Bracket::from_signs(l, r, |x| signum(&f.eval(x)))?;
            out.degenerate.push(DegenerateRoot { enclosure, multiplicity: *mult });
        }
    }
    Ok(out)
}

/// A non-root split point near the middle of `(l, r)`.
fn split_off_root(l: &Rational, r: &Rational, is_root: &impl Fn(&Rational) -> bool) -> Rational {
    let m = dyadic_split(l, r);
    if !is_root(&m) {
        return m;
    }
    let width = r - l;
    (3..)
        .flat_map(|k| {
            let d = &width * pow2(-k);
            [&m + &d, &m - &d]
        })
        .find(|x| x > l && x < r && !is_root(x))
        .unwrap()
}

fn nudge_off_root(
    x: &Rational,
    toward: &Rational,
    upward: bool,
    is_root: &impl Fn(&Rational) -> bool,
    count: &impl Fn(&Rational, &Rational) -> usize,
) -> Rational {
    let width = (toward - x).abs();
    (1..)
        .map(|k| {
            let d = &width * pow2(-k);
            if upward {
                x + d
            } else {
                x - d
            }
        })
        .find(|y| {
            if is_root(y) {
                return false;
            }
            if upward {
                count(x, y) == 0
            } else {
                // (y, x] contains x itself
                count(y, x) == 1
            }
        })
        .unwrap()
}

/// Outcome of exact-sign bisection.
#[derive(Clone, Debug, PartialEq)]
pub struct Refined {
    /// Bracket midpoint, or the exact root when a midpoint evaluated to zero.
    pub value: Rational,
    pub bracket: Bracket,
    pub exact: bool,
}

/// Bisects with dyadic midpoints until `hi - lo < tol`. `sign_of` must be
/// exact; a zero midpoint ends the search with that point as the root.
pub fn refine_root(mut sign_of: impl FnMut(&Rational) -> i8, bracket: &Bracket, tol: &Rational) -> Refined {
    let mut b = bracket.clone();
    while b.width() >= *tol {
        let m = dyadic_split(&b.lo, &b.hi);
        let s = sign_of(&m);
        if s == 0 {
            return Refined { value: m, bracket: b, exact: true };
        }
        if s == b.sign_lo {
            b.lo = m;
        } else {
            b.hi = m;
        }
    }
    Refined { value: b.midpoint(), bracket: b, exact: false }
}

/// Refines a root of `p` and, if the simplest rational in the final bracket
/// is an exact root, reports that instead of the midpoint.
pub fn refine_poly_root(p: &EPoly, bracket: &Bracket, tol: &Rational) -> Refined {
    let mut out = refine_root(|x| signum(&p.eval(x)), bracket, tol);
    if !out.exact {
        let guess = simplest_between(out.bracket.lo(), out.bracket.hi());
        if p.eval(&guess).is_zero() {
            out.value = guess;
            out.exact = true;
        }
    }
    out
}

/// Lagrange-style bound: every real root of `p` has `|x| < bound`.
pub fn root_bound(p: &EPoly) -> Rational {
    let Some(lead) = p.leading() else { return Rational::zero() };
    let lead = lead.abs();
    let max = p.coeffs().iter().rev().skip(1).map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
    Rational::one() + max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::rational::rat;

    fn ep(c: &[(i64, i64)]) -> EPoly {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn factored_quadratic() {
        // (5 - E)(1 - E)/24
        let p = ep(&[(5, 24), (-6, 24), (1, 24)]);
        let iso = isolate_real_roots(&p, &int(0), &int(10)).unwrap();
        assert_eq!(iso.brackets.len(), 2);
        assert!(iso.brackets[0].contains(&int(1)));
        assert!(iso.brackets[1].contains(&int(5)));
        assert!(iso.degenerate.is_empty());
        let r = refine_poly_root(&p, &iso.brackets[1], &rat(1, 1 << 20));
        assert_eq!(r.value, int(5));
        assert!(r.exact);
    }

    #[test]
    fn cube_root_of_24() {
        let p = ep(&[(1, 1), (0, 1), (0, 1), (-1, 24)]);
        let iso = isolate_real_roots(&p, &int(0), &int(10)).unwrap();
        assert_eq!(iso.brackets.len(), 1);
        let r = refine_root(|x| signum(&p.eval(x)), &iso.brackets[0], &rat(1, 1_000_000));
        let v = crate::algebra::rational::to_f64(&r.value);
        assert!((v - 24f64.cbrt()).abs() < 1e-6);
    }

    #[test]
    fn double_root_is_degenerate() {
        let p = ep(&[(0, 1), (0, 1), (1, 24)]);
        let iso = isolate_real_roots(&p, &int(-1), &int(1)).unwrap();
        assert!(iso.brackets.is_empty());
        assert_eq!(iso.degenerate.len(), 1);
        assert_eq!(iso.degenerate[0].multiplicity, 2);
        assert!(iso.degenerate[0].enclosure.contains(&int(0)));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let err = isolate_real_roots(&EPoly::zero(), &int(0), &int(1)).unwrap_err();
        assert_eq!(err.to_string(), "zero polynomial has no isolated roots");
    }

    #[test]
    fn roots_on_endpoints_and_splits_are_excluded_or_kept() {
        // (E)(E-1)(E-2)(E-3): endpoints 0 and 3 are roots, 1.5 is the first split
        let p = ep(&[(0, 1), (-6, 1), (11, 1), (-6, 1), (1, 1)]);
        let iso = isolate_real_roots(&p, &int(0), &int(3)).unwrap();
        assert_eq!(iso.brackets.len(), 2);
        assert!(iso.brackets[0].contains(&int(1)));
        assert!(iso.brackets[1].contains(&int(2)));
        // root exactly at a dyadic split point
        let q = ep(&[(-3, 2), (1, 1)]) * ep(&[(-1, 1), (1, 1)]) * ep(&[(-2, 1), (1, 1)]);
        let iso = isolate_real_roots(&q, &int(0), &int(3)).unwrap();
        assert_eq!(iso.brackets.len(), 3);
    }

    #[test]
    fn triple_root_changes_sign() {
        let p = ep(&[(-1, 1), (1, 1)]);
        let p = p.clone() * p.clone() * p;
        let iso = isolate_real_roots(&p, &int(0), &int(2)).unwrap();
        assert_eq!(iso.brackets.len(), 1);
        assert_eq!(iso.multiplicities, vec![3]);
    }

    #[test]
    fn refine_third() {
        let b = Bracket::new(int(0), int(1), -1, 1).unwrap();
        let tol = rat(1, 1 << 20);
        let r = refine_root(|x| signum(&(x - rat(1, 3))), &b, &tol);
        assert!((r.value.clone() - rat(1, 3)).abs() < tol);
        assert!(r.bracket.width() < tol);
        assert!(r.bracket.lo() < &rat(1, 3) && &rat(1, 3) < r.bracket.hi());
    }

    #[test]
    fn exact_midpoint_hit() {
        let b = Bracket::new(int(0), int(1), -1, 1).unwrap();
        let r = refine_root(|x| signum(&(x - rat(1, 2))), &b, &rat(1, 1000));
        assert!(r.exact);
        assert_eq!(r.value, rat(1, 2));
    }

    #[test]
    fn bracket_validation() {
        assert!(Bracket::new(int(1), int(0), -1, 1).is_err());
        assert!(Bracket::new(int(0), int(1), 1, 1).is_err());
        assert!(Bracket::new(int(0), int(1), 0, 1).is_err());
    }

    #[test]
    fn yun_multiplicities() {
        let a = ep(&[(-1, 1), (1, 1)]);
        let b = ep(&[(2, 1), (1, 1)]);
        let p = (a.clone() * a.clone() * b.clone()).scale(&rat(3, 1));
        let f = square_free_decomposition(&p);
        assert_eq!(f, vec![(b, 1), (a, 2)]);
    }
}
