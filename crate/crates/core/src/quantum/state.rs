// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{self, c64, dagger, herm_eig, hermitian_deviation, CMatrix, HERMITIAN_TOL};

pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated in a valid state.
pub const PSD_TOL: f64 = 1e-8;

/// A one- or two-qubit density matrix.
///
/// [`DensityMatrix::new`] enforces Hermiticity, unit trace and positivity.
/// [`DensityMatrix::from_raw`] only symmetrizes, for outputs of maps that are
/// not guaranteed to be completely positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let rho = Self::from_raw(matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Accepts any square 2×2 or 4×4 matrix; the Hermitian part is kept.
    pub fn from_raw(matrix: CMatrix) -> Result<Self> {
        let (r, c) = matrix.dim();
        if r != c || !(r == 2 || r == 4) {
            return Err(Error::dim(format!("density matrix must be 2x2 or 4x4, got {r}x{c}")));
        }
        let dev = hermitian_deviation(&matrix);
        let matrix = if dev > 0.0 {
            (&matrix + &dagger(&matrix)).mapv(|z| z * 0.5)
        } else {
            matrix
        };
        Ok(Self { matrix })
    }

    /// Pure state `|ψ⟩⟨ψ|` from an already normalized or unnormalized vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::domain("zero state vector"));
        }
        let n = psi.len();
        let m = CMatrix::from_shape_fn((n, n), |(i, j)| psi[i] * psi[j].conj() / (norm * norm));
        Self::new(m)
    }

    /// Checks Hermiticity, trace and positivity of the stored matrix.
    pub fn validate(&self) -> Result<()> {
        let dev = hermitian_deviation(&self.matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::domain(format!("state not Hermitian (deviation {dev:.3e})")));
        }
        let tr = numerics::trace(&self.matrix);
        if (tr - c64(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::domain(format!("state trace is {tr}, expected 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::domain(format!("state has negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (vals, _) = herm_eig(&self.matrix)?;
        Ok(vals[0])
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        numerics::trace(&self.matrix)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_two_qubit(rho: &CMatrix) -> Result<()> {
    if rho.dim() != (4, 4) {
        return Err(Error::dim(format!("expected a 4x4 two-qubit matrix, got {:?}", rho.dim())));
    }
    Ok(())
}

/// Trace over the first qubit of a two-qubit matrix.
pub fn partial_trace_first(rho: &CMatrix) -> Result<CMatrix> {
    check_two_qubit(rho)?;
    Ok(CMatrix::from_shape_fn((2, 2), |(a, b)| {
        (0..2).map(|i| rho[[2 * i + a, 2 * i + b]]).sum()
    }))
}

/// Trace over the second qubit of a two-qubit matrix.
pub fn partial_trace_second(rho: &CMatrix) -> Result<CMatrix> {
    check_two_qubit(rho)?;
    Ok(CMatrix::from_shape_fn((2, 2), |(i, j)| {
        (0..2).map(|a| rho[[2 * i + a, 2 * j + a]]).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{identity, kron};
    use crate::quantum::sigma_z;

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(identity(2).mapv(|z| z * 0.5)).is_ok());
        assert!(DensityMatrix::new(identity(2)).is_err());
        assert!(DensityMatrix::new(sigma_z().mapv(|z| z * 0.5 + 0.25)).is_err());
        assert!(DensityMatrix::new(identity(3)).is_err());
    }

    #[test]
    fn partial_traces_of_product() {
        let a = CMatrix::from_shape_vec((2, 2), vec![c64(0.7, 0.0), c64(0.1, 0.2), c64(0.1, -0.2), c64(0.3, 0.0)]).unwrap();
        let b = identity(2).mapv(|z| z * 0.5);
        let ab = kron(&a, &b);
        let tb = partial_trace_second(&ab).unwrap();
        let ta = partial_trace_first(&ab).unwrap();
        assert!(numerics::frobenius(&(tb - &a)) < 1e-15);
        assert!(numerics::frobenius(&(ta - &b)) < 1e-15);
    }

    #[test]
    fn pure_state_purity() {
        let s = 0.5f64.sqrt();
        let rho = DensityMatrix::from_pure(&[c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, s)]).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-14);
    }
}
