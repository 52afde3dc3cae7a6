//! Numerical Moyal products on noncommutative spacetimes.
//!
//! * [`geometry`]: Lorentz transforms, skew forms, orbits and stabilizers.
//! * [`weyl_algebra`]: exact products of Weyl unitaries `u_α u_β = e(Q_αβ) u_{α+β}`.
//! * [`star_numeric`]: grid functions, the FFT star product, the left-regular
//!   representation and the semiclassical sweep.
//! * [`covariance`]: functions fibered over a sample of the Lorentz group and
//!   their translation, boost and `Φ^α` actions.
//! * [`oracle`]: adaptive quadrature used to cross-check the FFT product.
//! * [`suites`] and [`commands`]: the checks and commands behind the `moyal` binary.
//!
//! Each capability has a runnable program under `examples/`.

pub mod commands;
pub mod config;
pub mod covariance;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod star_numeric;
pub mod suites;
pub mod weyl_algebra;

pub use error::{Error, Result};
