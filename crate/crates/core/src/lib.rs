//! Minimizers of the constrained population-density energy
//! F(u) = int(|grad u|^2 + V |u|^2) over {u in H^1 : 0 <= u <= 1}.
//!
//! The crate has three layers:
//! - exact radially symmetric minimizers for piecewise-constant radial
//!   potentials, built from Bessel functions ([`radial`], [`bessel`]);
//! - a projected semi-implicit gradient-descent solver on a uniform 2D grid
//!   for general piecewise-constant potential wells ([`solver`],
//!   [`potential`], [`grid`]);
//! - diagnostics that test the structural properties of computed fields:
//!   Lewy-Stampacchia residuals, distance bounds near the saturated set,
//!   exponential decay rates, the energy/contact-set identity, and a
//!   quasiconcavity probe ([`diagnostics`]).

// negated comparisons like `!(t > 0.0)` are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod config;
pub mod diagnostics;
mod dd;
pub mod error;
pub mod grid;
pub mod io;
pub mod potential;
pub mod radial;
pub mod solver;

pub use error::{Error, Result};
