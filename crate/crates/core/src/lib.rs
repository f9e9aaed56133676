//! Spectral analysis of Toeplitz operators `T_{z̄ + p}` on the Bergman
//! space of the unit disk, `p` an analytic polynomial.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix it to `f64`, which is what the certification
//! tolerances are calibrated for.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod config;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod polynomial;
pub mod raster;
pub mod scalar;
pub mod spectral;
mod wire;

pub use config::{Config, Tolerances};
pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Poly = polynomial::ComplexPoly<f64>;
pub type Poly32 = polynomial::ComplexPoly<f32>;
pub type Roots = polynomial::RootSet<f64>;
pub type Symbol = spectral::HarmonicSymbol<f64>;
pub type Symbol32 = spectral::HarmonicSymbol<f32>;
pub type Report = spectral::SpectralReport<f64>;
pub type Construction = constructions::ConstructionParams<f64>;
pub type Section = matrix::FiniteSection<f64>;
pub type Grid = raster::RasterGrid<f64>;
