// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use log::debug;
use ndarray::Array1;
use num_complex::Complex64;

use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::numerics::{
    self, c64, dagger, expm, hermitian_deviation, identity, kron, matpow, solve, CMatrix,
    HERMITIAN_TOL,
};

/// Linear map on row-vectorized `sysdim × sysdim` matrices.
///
/// The same type holds evolution maps `V`, generators `L` and Redfield
/// tensors `R`; `trace_preserving` records what the producer guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    sysdim: usize,
    matrix: CMatrix,
    trace_preserving: bool,
}

impl Superoperator {
    pub fn new(matrix: CMatrix, trace_preserving: bool) -> Result<Self> {
        let (r, c) = matrix.dim();
        let sysdim = match r {
            4 => 2,
            16 => 4,
            _ => 0,
        };
        if r != c || sysdim == 0 {
            return Err(Error::dim(format!("superoperator must be 4x4 or 16x16, got {r}x{c}")));
        }
        Ok(Self {
            sysdim,
            matrix,
            trace_preserving,
        })
    }

    pub fn identity(sysdim: usize) -> Result<Self> {
        Self::new(identity(sysdim * sysdim), true)
    }

    /// Conjugation `ρ -> wρw†`, i.e. `w ⊗ w*`.
    pub fn unitary(w: &CMatrix) -> Result<Self> {
        let n = w.nrows();
        let wdw = dagger(w).dot(w);
        if w.dim() != (n, n) || numerics::frobenius(&(wdw - identity(n))) > 1e-10 {
            return Err(Error::domain("unitary superoperator needs a unitary matrix"));
        }
        Self::new(kron(w, &w.mapv(|z| z.conj())), true)
    }

    pub fn sysdim(&self) -> usize {
        self.sysdim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// `exp(self · t)`, treating `self` as a generator.
    pub fn exp(&self, t: f64) -> Result<Self> {
        Self::new(expm(&self.matrix, t)?, self.trace_preserving)
    }

    /// The map "first `other`, then `self`".
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.sysdim != other.sysdim {
            return Err(Error::dim("cannot compose superoperators of different size"));
        }
        Self::new(
            self.matrix.dot(&other.matrix),
            self.trace_preserving && other.trace_preserving,
        )
    }

    pub fn pow(&self, n: u64) -> Self {
        Self {
            sysdim: self.sysdim,
            matrix: matpow(&self.matrix, n),
            trace_preserving: self.trace_preserving,
        }
    }

    /// `unvec(V · vec X)` for an arbitrary matrix `X`.
    pub fn apply_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        let d = self.sysdim;
        if x.dim() != (d, d) {
            return Err(Error::dim(format!("map on {d}x{d} matrices applied to {:?}", x.dim())));
        }
        let v: Array1<Complex64> = x.iter().copied().collect();
        let out = self.matrix.dot(&v);
        Ok(out.into_shape_with_order((d, d)).expect("d*d entries"))
    }

    /// Applies the map to a state, re-symmetrizing the output.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_matrix(rho.matrix())?;
        let dev = hermitian_deviation(&out);
        if dev > 1e-8 {
            debug!("apply: output Hermitian deviation {dev:.3e} removed by symmetrization");
        }
        DensityMatrix::from_raw(out)
    }

    /// Largest violation of `Tr V(E_kl) = δ_kl` over matrix units.
    pub fn trace_defect(&self) -> f64 {
        let d = self.sysdim;
        let mut worst = 0.0_f64;
        for k in 0..d {
            for l in 0..d {
                let col = d * k + l;
                let tr: Complex64 = (0..d).map(|i| self.matrix[[d * i + i, col]]).sum();
                let want = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((tr - want).norm());
            }
        }
        worst
    }
}

/// Hamiltonian plus jump operators with rates.
#[derive(Debug, Clone)]
pub struct LindbladSpec {
    pub hamiltonian: CMatrix,
    pub jumps: Vec<(CMatrix, f64)>,
}

impl LindbladSpec {
    pub fn new(hamiltonian: CMatrix) -> Self {
        Self {
            hamiltonian,
            jumps: Vec::new(),
        }
    }

    pub fn jump(mut self, op: CMatrix, rate: f64) -> Self {
        self.jumps.push((op, rate));
        self
    }
}

/// Generator `L = -i(H⊗I - I⊗Hᵀ) + Σ γ (F⊗F̄ - ½(F†F⊗I + I⊗(F†F)ᵀ))`.
pub fn lindblad_generator(spec: &LindbladSpec) -> Result<Superoperator> {
    let h = &spec.hamiltonian;
    let d = h.nrows();
    if h.dim() != (d, d) || !(d == 2 || d == 4) {
        return Err(Error::dim(format!("Hamiltonian must be 2x2 or 4x4, got {:?}", h.dim())));
    }
    let dev = hermitian_deviation(h);
    if dev > HERMITIAN_TOL {
        return Err(Error::domain(format!("Hamiltonian not Hermitian (deviation {dev:.3e})")));
    }
    let id = identity(d);
    let minus_i = c64(0.0, -1.0);
    let mut l = (kron(h, &id) - kron(&id, &h.t().to_owned())).mapv(|z| z * minus_i);
    for (f, rate) in &spec.jumps {
        if f.dim() != (d, d) {
            return Err(Error::dim("jump operator size differs from the Hamiltonian"));
        }
        if !(*rate >= 0.0) || !rate.is_finite() {
            return Err(Error::invalid(format!("jump rate must be finite and >= 0, got {rate}")));
        }
        if *rate == 0.0 {
            continue;
        }
        let fdf = dagger(f).dot(f);
        let term = kron(f, &f.mapv(|z| z.conj()))
            - (kron(&fdf, &id) + kron(&id, &fdf.t().to_owned())).mapv(|z| z * 0.5);
        l = l + term.mapv(|z| z * *rate);
    }
    Superoperator::new(l, true)
}

/// Unit-trace null vector of a generator, returned as a matrix.
pub fn steady_state(generator: &Superoperator) -> Result<CMatrix> {
    let d = generator.sysdim();
    let n = d * d;
    let mut a = generator.matrix().clone();
    // replace the first equation by the trace constraint
    for col in 0..n {
        a[[0, col]] = Complex64::ZERO;
    }
    for i in 0..d {
        a[[0, d * i + i]] = c64(1.0, 0.0);
    }
    let mut rhs = CMatrix::zeros((n, 1));
    rhs[[0, 0]] = c64(1.0, 0.0);
    let x = solve(&a, &rhs)?;
    Ok(CMatrix::from_shape_fn((d, d), |(i, j)| x[[d * i + j, 0]]))
}
