//! Eigenvalues of `ψ'' + (E - V(x)) ψ = 0` for even potentials from the
//! Gaussian-weighted power series `ψ = e^{-a x²} Σ c_j(E) x^{2j+s}`.
//!
//! Two quantization conditions are implemented on top of the same exact
//! series table:
//!
//! * [`hill`]: roots of the single coefficient `c_M(E)`;
//! * [`hankel`]: roots of the Hankel determinants `H_D^d(E) = |c_{i+j+d-1}(E)|`,
//!   the condition for a rational approximant in `x²` to reproduce the series.
//!
//! Everything that decides a sign is computed in exact rational arithmetic;
//! the [`HighPrecFloat`] backend only speeds up scans. [`numerov`] provides an
//! independent check by direct integration of the closed-form potential.

pub mod algebra;
pub mod error;
pub mod hankel;
pub mod hill;
pub mod numerov;
pub mod potential;
pub mod reference;
pub mod reproduce;
pub mod sequence;
pub mod series;

pub use algebra::{det_exact, Bracket, EPoly, HighPrecFloat, Matrix, Poly, Precision, Rational};
pub use error::{Error, Result};
pub use potential::{PoleInfo, PotentialKind, PotentialSpec};
pub use series::{SeriesParams, SeriesTable};
pub use hankel::{Backend, DegenerateCandidate, HankelOptions, HankelResult, HankelRoot, HankelSpec, HankelValue, PadeApproximant};
pub use hill::{HillResult, HillRoot};
pub use sequence::{ConvergenceReport, RootSequence, SequenceMethod, TrackOptions, WidthMethod, WidthScan};
