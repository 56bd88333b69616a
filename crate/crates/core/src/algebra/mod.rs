//! Exact arithmetic substrate: rationals, polynomials in E, fraction-free
//! determinants, certified root isolation, and a high-precision float backend.

pub mod float;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod roots;

pub use float::{HighPrecFloat, Precision};
pub use matrix::{det_exact, Matrix};
pub use poly::{EPoly, Poly};
pub use rational::Rational;
pub use ring::{RationalAlgebra, Ring};
pub use roots::{isolate_real_roots, refine_root, Bracket, DegenerateRoot, Refined, RootIsolation};
