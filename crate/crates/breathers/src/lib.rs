//! Breather solutions of the focusing NLS equation on a unit background, their Lax spectra,
//! Darboux construction, linearized-NLS solution families, spectral numerics and evolution.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod darboux;
pub mod error;
pub mod evolution;
pub mod exact;
pub mod families;
pub mod fd;
pub mod fit;
pub mod grid;
pub mod io;
pub mod lax;
pub mod quad;
pub mod scalar;
pub mod spectral;
pub mod v2;

pub use error::{Error, Result};
pub use exact::{BreatherKind, BreatherSpec};
pub use grid::{Boundary, SpaceTimeGrid};
pub use scalar::Real;

pub type C64 = num_complex::Complex64;
pub type Breather = exact::BreatherSpec<f64>;
pub type Seed = darboux::DarbouxSeed<f64>;
pub type Vec2 = v2::V2<f64>;
pub type Mat2 = v2::M2<f64>;
