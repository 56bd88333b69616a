//! Fixtures shared by the benchmarks.

use serieseig::algebra::rational::{int, parse_rational};
use serieseig::sequence::table_for;
use serieseig::{HankelSpec, PotentialSpec, Rational, SeriesTable};

/// Quartic oscillator table at `a = 1`, long enough for Hankel order `dim`.
pub fn quartic_table(dim: usize) -> SeriesTable {
    let j = HankelSpec::new(dim, 0).unwrap().required_j();
    table_for(&PotentialSpec::quartic(), &int(1), 0, j).unwrap()
}

/// Energy close to the quartic ground state, where determinants are tiny.
pub fn near_ground() -> Rational {
    parse_rational("1.0603620904").unwrap()
}
