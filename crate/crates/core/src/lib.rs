//! Chartist-fundamentalist stock market as a piecewise-linear discontinuous map.
//!
//! Chartists always trade on the last price change; fundamentalists only
//! trade when the mispricing `x = P - F` leaves the band `[-h, h]`. In
//! deviations the deterministic model is the planar map `M` of [`map`],
//! which glues the chartist-only map `C` (inside the band) to the joint map
//! `F` (outside). The crate provides
//!
//! - exact evaluation of `M`, `F`, `C`, their Jacobians, inverses and the
//!   closed-form chartist solution ([`map`]);
//! - parameter regions, the immediate basin of the segment of fixed points,
//!   orbit classification, cycle search, Lyapunov exponents and detection of
//!   mirror-image attractor pairs ([`analysis`]);
//! - deterministic parallel basin and bifurcation grids ([`grids`]);
//! - seeded simulation with fundamental shocks and regime statistics
//!   ([`stochastic`]);
//! - CSV/PPM output, figure presets and the `pwl-market` command line
//!   ([`io`], [`presets`], [`cli`]).
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod grids;
pub mod io;
pub mod linalg;
pub mod map;
pub mod params;
pub mod presets;
pub mod stochastic;

pub use error::{Error, Result};
pub use map::{Branch, MapKind, State};
pub use params::{ModelParams, RawParams};
