// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix kernels and special functions. No physics lives here.
//!
//! Matrices are `ndarray::Array2<Complex64>` in row-major order. All routines
//! are pure functions of their inputs.

mod eig;
mod expm;
mod linalg;
pub mod special;

use ndarray::Array2;
use num_complex::Complex64;

pub use eig::{gen_eig_small, herm_eig, sqrtm_psd};
pub use expm::expm;
pub use linalg::{
    dagger, det, frobenius, hermitian_deviation, identity, kron, matpow, norm1, solve, trace,
};
pub use special::{bessel_j, digamma_complex, erf_complex};

/// Dense complex matrix, row-major.
pub type CMatrix = Array2<Complex64>;

/// Shorthand for `Complex64::new`.
#[inline]
pub const fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Hermitian input tolerance shared by the eigen-solvers.
pub const HERMITIAN_TOL: f64 = 1e-10;
