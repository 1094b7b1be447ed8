//! Gröbner bases, Schreyer frames and minimal free resolutions of
//! homogeneous ideals.

pub mod betti;
pub mod groebner;
pub mod minimal;
pub mod parse;
mod schreyer;

pub use betti::{hilbert_numerics, BettiTable};
pub use groebner::{groebner_basis, groebner_basis_in, is_groebner_basis, reduce, DEGREE_CAP};
pub use minimal::{minimal_free_resolution, resolve, resolve_ideal_text, FreeResolution, Matrix};
pub use parse::{parse_ideal, parse_poly};
