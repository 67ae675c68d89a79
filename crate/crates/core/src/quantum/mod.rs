// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Channel algebra on one and two qubits.
//!
//! Density matrices are vectorized row-major, `(vec ρ)[d*i + j] = ρ[i][j]`, so
//! a superoperator `V` acts as `ρ'[i][j] = Σ V[(i,j),(k,l)] ρ[k][l]` and the
//! unitary map `ρ -> wρw†` is literally `w ⊗ w*`.
//!
//! Qubit basis: index 0 is the excited state, index 1 the ground state.

mod choi;
pub mod random;
mod reduce;
mod state;
mod superop;

pub use choi::{
    choi, concurrence, concurrence_general, concurrence_lenient, factorization_check, spin_flip,
};
pub use reduce::{block_trace, block_trace_full, permute_middle, reduce_with_impurity_state};
pub use state::{partial_trace_first, partial_trace_second, DensityMatrix, PSD_TOL, TRACE_TOL};
pub use superop::{lindblad_generator, steady_state, LindbladSpec, Superoperator};

use crate::numerics::{c64, CMatrix};
use ndarray::array;

pub fn sigma_x() -> CMatrix {
    array![[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]]
}

pub fn sigma_y() -> CMatrix {
    array![[c64(0.0, 0.0), c64(0.0, -1.0)], [c64(0.0, 1.0), c64(0.0, 0.0)]]
}

pub fn sigma_z() -> CMatrix {
    array![[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(-1.0, 0.0)]]
}

/// Lowering operator `|g⟩⟨e|` (excited is index 0).
pub fn sigma_minus() -> CMatrix {
    array![[c64(0.0, 0.0), c64(0.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]]
}

/// Raising operator `|e⟩⟨g|`.
pub fn sigma_plus() -> CMatrix {
    array![[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(0.0, 0.0), c64(0.0, 0.0)]]
}

/// The maximally entangled state `(|00⟩ + |11⟩)/√2`.
pub fn phi_plus() -> DensityMatrix {
    let mut m = CMatrix::zeros((4, 4));
    for &i in &[0usize, 3] {
        for &j in &[0usize, 3] {
            m[[i, j]] = c64(0.5, 0.0);
        }
    }
    DensityMatrix::new(m).expect("Bell projector is a valid state")
}
