//! Baseline quantization: eigenvalue estimates are the real roots of a single
//! series coefficient, `c_M(E) = 0`.

use serde::Serialize;

use crate::algebra::rational::{format_rational, signum, to_fixed};
use crate::algebra::roots::{isolate_real_roots, refine_poly_root, refine_root};
use crate::algebra::{Bracket, Rational};
use crate::error::{Error, Result};
use crate::series::SeriesTable;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HillRoot {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// Certified sign change of `c_M` (or of its square-free factor when the
    /// multiplicity is even).
    pub bracket: Bracket,
    pub multiplicity: usize,
    /// `value` is an exact root rather than a bracket midpoint.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HillResult {
    pub m: usize,
    /// Ascending.
    pub roots: Vec<HillRoot>,
    #[serde(serialize_with = "ser_interval")]
    pub interval: (Rational, Rational),
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn ser_interval<S: serde::Serializer>(r: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&to_fixed(&r.0, 20))?;
    t.serialize_element(&to_fixed(&r.1, 20))?;
    t.end()
}

impl HillResult {
    /// The root closest to `target`, if any.
    pub fn nearest(&self, target: &Rational) -> Option<&HillRoot> {
        self.roots.iter().min_by(|a, b| {
            let da = num_traits::Signed::abs(&(&a.value - target));
            let db = num_traits::Signed::abs(&(&b.value - target));
            da.cmp(&db)
        })
    }
}

/// Every real root of `c_M` in `(lo, hi)`, isolated by Sturm sequences and
/// refined until its bracket is narrower than `tol`.
pub fn hill_roots(table: &SeriesTable, m: usize, lo: &Rational, hi: &Rational, tol: &Rational) -> Result<HillResult> {
    if m > table.j_max() {
        return Err(Error::SeriesTooShort { requested: m, available: table.j_max() });
    }
    let p = table.coefficient(m)?;
    let iso = isolate_real_roots(p, lo, hi)?;
    let mut roots = Vec::with_capacity(iso.distinct_count());
    for (b, &mult) in iso.brackets.iter().zip(&iso.multiplicities) {
        let r = refine_poly_root(p, b, tol);
        roots.push(HillRoot { value: r.value, bracket: r.bracket, multiplicity: mult, exact: r.exact });
    }
    if !iso.degenerate.is_empty() {
        let factors = crate::algebra::roots::square_free_decomposition(p);
        for d in &iso.degenerate {
            let (f, _) = factors
                .iter()
                .find(|(f, k)| *k == d.multiplicity && signum(&f.eval(d.enclosure.lo())) == d.enclosure.sign_lo())
                .expect("degenerate root comes from a factor of matching multiplicity");
            let r = refine_root(|x| signum(&f.eval(x)), &d.enclosure, tol);
            roots.push(HillRoot { value: r.value, bracket: r.bracket, multiplicity: d.multiplicity, exact: r.exact });
        }
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(HillResult { m, roots, interval: (lo.clone(), hi.clone()) })
}

/// [`hill_roots`] for each `M` in `m_min..=m_max`; no matching across orders.
pub fn hill_sequence(
    table: &SeriesTable,
    m_min: usize,
    m_max: usize,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Result<Vec<HillResult>> {
    if m_max > table.j_max() {
        return Err(Error::SeriesTooShort { requested: m_max, available: table.j_max() });
    }
    (m_min..=m_max).map(|m| hill_roots(table, m, lo, hi, tol)).collect()
}
