//! Free resolutions, Rao-module invariants and deformation bookkeeping for
//! space curves in P^3.
//!
//! ```
//! use rao_forge::algebra::RingConfig;
//! use rao_forge::invariants::CurveData;
//! use rao_forge::obstruction::{classify, dim_h_dg};
//! use rao_forge::resolution::resolve_ideal_text;
//!
//! let (_, betti) = resolve_ideal_text("x0*x2\nx0*x3\nx1*x2\nx1*x3", RingConfig::default())?;
//! let skew = CurveData::buchsbaum_from_betti(betti)?;
//! assert_eq!((skew.degree(), skew.genus()), (2, -1));
//! assert_eq!(dim_h_dg(&classify(&skew, None)), Ok(8));
//! # Ok::<(), rao_forge::RaoError>(())
//! ```

pub mod algebra;
pub mod batch;
pub mod deformation;
pub mod error;
pub mod invariants;
pub mod obstruction;
pub mod rao;
pub mod report;
pub mod resolution;

pub use error::{RaoError, Result};
