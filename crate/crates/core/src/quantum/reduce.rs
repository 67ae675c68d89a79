// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Reduction of a qubit⊗impurity map (16×16) to a qubit map (4×4).
//!
//! The 16-dim vec index of `ρ[(q1,n1),(q2,n2)]` has digits `(q1,n1,q2,n2)`.
//! [`permute_middle`] regroups it as `(q1,q2,n1,n2)` so the map becomes a 4×4
//! array of 4×4 impurity blocks `Z_ij`.

use log::debug;
use num_complex::Complex64;

use super::superop::Superoperator;
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, HERMITIAN_TOL};

const IMPURITY_DIM: f64 = 2.0;

fn swap_middle(idx: usize) -> usize {
    let (a, b, c, d) = ((idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
    (a << 3) | (c << 2) | (b << 1) | d
}

fn check16(v: &Superoperator) -> Result<()> {
    if v.sysdim() != 4 {
        return Err(Error::dim(format!("expected a 16x16 map, got sysdim {}", v.sysdim())));
    }
    Ok(())
}

/// `P V Pᵀ` with `P = I⊗p⊗I` and `p` the swap of the two middle qubits.
pub fn permute_middle(v: &Superoperator) -> Result<Superoperator> {
    check16(v)?;
    let m = v.matrix();
    let out = CMatrix::from_shape_fn((16, 16), |(r, c)| m[[swap_middle(r), swap_middle(c)]]);
    Superoperator::new(out, v.is_trace_preserving())
}

/// Sum over impurity-diagonal positions: `Σ_{n,m} Ṽ[(i;n,n),(j;m,m)]`.
fn diagonal_block_sum(m: &CMatrix) -> CMatrix {
    CMatrix::from_shape_fn((4, 4), |(i, j)| {
        let mut acc = Complex64::ZERO;
        for n in 0..2 {
            for k in 0..2 {
                acc += m[[4 * i + 3 * n, 4 * j + 3 * k]];
            }
        }
        acc
    })
}

/// Qubit map from an already permuted 16×16 map: output impurity traced,
/// input impurity summed over its diagonal, which is the maximally mixed
/// impurity up to the factor restored below.
///
/// For a trace-preserving `Ṽ` the raw sum preserves trace only up to the
/// impurity dimension; that constant is divided out and logged.
pub fn block_trace(v: &Superoperator) -> Result<Superoperator> {
    check16(v)?;
    let raw = diagonal_block_sum(v.matrix());
    let factor = trace_factor(&raw);
    let scale = match factor {
        Some(f) if (f - 1.0).abs() <= 1e-8 => 1.0,
        Some(f) if (f - IMPURITY_DIM).abs() <= 1e-8 => {
            debug!("block_trace: raw reduction scales trace by {f}; rescaled by 1/{IMPURITY_DIM}");
            1.0 / IMPURITY_DIM
        }
        other => {
            debug!("block_trace: trace factor {other:?} is not a constant 1 or 2; rescaled by 1/{IMPURITY_DIM}");
            1.0 / IMPURITY_DIM
        }
    };
    Superoperator::new(raw.mapv(|z| z * scale), v.is_trace_preserving())
}

/// Literal block trace `V_s[i][j] = Tr Z_ij`, without any normalization.
pub fn block_trace_full(v: &Superoperator) -> Result<Superoperator> {
    check16(v)?;
    let m = v.matrix();
    let out = CMatrix::from_shape_fn((4, 4), |(i, j)| (0..4).map(|k| m[[4 * i + k, 4 * j + k]]).sum());
    Superoperator::new(out, false)
}

/// Qubit map for an explicit initial impurity state `σ` (2×2, unit trace):
/// `V_s(ρ) = Tr_imp Ṽ(ρ⊗σ)`, from an already permuted map.
pub fn reduce_with_impurity_state(v: &Superoperator, sigma: &CMatrix) -> Result<Superoperator> {
    check16(v)?;
    if sigma.dim() != (2, 2) {
        return Err(Error::dim("impurity state must be 2x2"));
    }
    let tr = sigma[[0, 0]] + sigma[[1, 1]];
    if (tr - 1.0).norm() > 1e-10 || (sigma[[0, 1]] - sigma[[1, 0]].conj()).norm() > HERMITIAN_TOL {
        return Err(Error::domain("impurity state must be Hermitian with unit trace"));
    }
    let m = v.matrix();
    let out = CMatrix::from_shape_fn((4, 4), |(i, j)| {
        let mut acc = Complex64::ZERO;
        for n in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    acc += m[[4 * i + 3 * n, 4 * j + 2 * a + b]] * sigma[[a, b]];
                }
            }
        }
        acc
    });
    Superoperator::new(out, v.is_trace_preserving())
}

// Common value of Σ_q raw[(q,q),(k,l)] / δ_kl, if the trace functional is a
// multiple of the identity's.
fn trace_factor(raw: &CMatrix) -> Option<f64> {
    let row = |col: usize| raw[[0, col]] + raw[[3, col]];
    let f = row(0);
    let g = row(3);
    let off = row(1).norm().max(row(2).norm());
    if (f - g).norm() <= 1e-8 && f.im.abs() <= 1e-8 && off <= 1e-8 {
        Some(f.re)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c64, frobenius, identity, kron};

    #[test]
    fn middle_swap_on_basis_vectors() {
        // |a b c d> -> |a c b d>
        assert_eq!(swap_middle(0b0100), 0b0010);
        assert_eq!(swap_middle(0b1010), 0b1100);
        assert_eq!(swap_middle(0b1001), 0b1001);
        for i in 0..16 {
            assert_eq!(swap_middle(swap_middle(i)), i);
        }
    }

    #[test]
    fn permute_is_involutive_and_fixes_identity() {
        let m = CMatrix::from_shape_fn((16, 16), |(i, j)| c64(i as f64, j as f64 * 0.5));
        let v = Superoperator::new(m, false).unwrap();
        let twice = permute_middle(&permute_middle(&v).unwrap()).unwrap();
        assert_eq!(twice, v);
        let id = Superoperator::identity(4).unwrap();
        assert_eq!(permute_middle(&id).unwrap(), id);
    }

    #[test]
    fn identity_reduces_to_identity() {
        let id = Superoperator::identity(4).unwrap();
        assert!(frobenius(&(diagonal_block_sum(id.matrix()) - identity(4).mapv(|z| z * 2.0))) < 1e-15);
        assert_eq!(block_trace(&id).unwrap().matrix(), &identity(4));
    }

    #[test]
    fn decoupled_map_recovered() {
        let vq = CMatrix::from_shape_vec(
            (4, 4),
            vec![
                c64(0.8, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0),
                c64(0.0, 0.0), c64(0.3, 0.1), c64(0.0, 0.0), c64(0.0, 0.0),
                c64(0.0, 0.0), c64(0.0, 0.0), c64(0.3, -0.1), c64(0.0, 0.0),
                c64(0.2, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0),
            ],
        )
        .unwrap();
        let permuted = Superoperator::new(kron(&vq, &identity(4)), true).unwrap();
        assert!(frobenius(&(block_trace(&permuted).unwrap().into_matrix() - &vq)) < 1e-15);
        let half = identity(2).mapv(|z| z * 0.5);
        let explicit = reduce_with_impurity_state(&permuted, &half).unwrap();
        assert!(frobenius(&(explicit.into_matrix() - &vq)) < 1e-15);
        let literal = block_trace_full(&permuted).unwrap();
        assert!(frobenius(&(literal.into_matrix() - vq.mapv(|z| z * 4.0))) < 1e-14);
    }
}
