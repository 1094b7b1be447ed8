//! Polynomial arithmetic over GF(p) and graded bookkeeping.

pub mod graded;
pub mod ring;

pub use graded::{binomial, chi_o, dim_r, koszul_shape, module_cancel, FreeModule, GradedDims};
pub use ring::{Monomial, MonomialOrder, Poly, Ring, RingConfig, DEFAULT_CHARACTERISTIC, NVARS};
