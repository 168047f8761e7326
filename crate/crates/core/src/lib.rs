// Copyright 2026 liedexp contributors
// SPDX-License-Identifier: Apache-2.0

//! Norm estimates for the differential of the Lie exponential map.
//!
//! For a real Lie algebra with an inner product, the differential of `exp`
//! at `x` is, up to a left translation, the operator
//! `φ(ad_x) = (1 - e^{-ad_x}) / ad_x`. Its extreme singular values are the
//! exact minimum and maximum of `|d exp_x(y)|` over unit `y`. This crate
//! computes those extremes and evaluates the eigenvalue- and singular-value
//! based bounds that bracket them (diagonalizable, general and nilpotent
//! cases), together with randomized verification suites.
//!
//! Module map:
//! - [`algebra`]: structure constants, inner products, `ad_x`, the bracket
//!   norm constant `δ₀`.
//! - [`matfunc`]: scalar and matrix `φ`, plus a quadrature oracle.
//! - [`spectral`]: eigenvalues, singular values, diagonalizability and the
//!   minimax / Weyl machinery.
//! - [`bounds`]: the bound report for a given `x`.
//! - [`harness`]: algebra catalog, brute-force oracles and property suites.
//! - [`sweep`]: ray sweeps and their CSV encoding.

pub mod algebra;
pub mod bounds;
mod error;
pub mod harness;
pub mod linalg;
pub mod matfunc;
pub mod spectral;
pub mod sweep;

pub use algebra::{AdOperator, DeltaZeroEstimate, InnerProduct, LieAlgebra, StructureConstants, ValidationReport};
pub use bounds::{BoundReport, Tolerances};
pub use error::{Error, Result};
pub use matfunc::{phi_matrix, phi_scalar, PhiOperator};
pub use spectral::SpectralSummary;
