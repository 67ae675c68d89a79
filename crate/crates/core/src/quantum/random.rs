// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Haar-random states and unitaries for property checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::state::DensityMatrix;
use crate::numerics::{c64, dagger, CMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed unit vector in `C^d`.
pub fn pure_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    DensityMatrix::from_pure(&pure_vector(rng, d)).expect("normalized random vector")
}

/// Hilbert-Schmidt random mixed state `GG†/Tr(GG†)`.
pub fn mixed_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    let g = CMatrix::from_shape_fn((d, d), |_| gaussian(rng));
    let w = g.dot(&dagger(&g));
    let tr: Complex64 = w.diag().sum();
    DensityMatrix::new(w.mapv(|z| z / tr.re)).expect("Gram matrix is a valid state")
}

/// Haar unitary by Gram-Schmidt on a complex Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let mut u = CMatrix::from_shape_fn((d, d), |_| gaussian(rng));
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| u[[i, k]].conj() * u[[i, j]]).sum();
            for i in 0..d {
                let uk = u[[i, k]];
                u[[i, j]] -= proj * uk;
            }
        }
        let norm = (0..d).map(|i| u[[i, j]].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            u[[i, j]] /= norm;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frobenius, identity};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2, 4] {
            let u = unitary(&mut rng, d);
            assert!(frobenius(&(dagger(&u).dot(&u) - identity(d))) < 1e-12);
            assert!((pure_state(&mut rng, d).purity() - 1.0).abs() < 1e-12);
            assert!(mixed_state(&mut rng, d).purity() < 1.0);
        }
    }
}
