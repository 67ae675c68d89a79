// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by scaling and squaring with the degree-13 Padé
//! approximant (Higham 2005). The generators in this crate are non-normal, so
//! there is no eigendecomposition shortcut.

use super::linalg::{identity, norm1, solve};
use super::{c64, CMatrix};
use crate::error::{Error, Result};

const MAX_DIM: usize = 64;

/// Largest 1-norm for which the degree-13 approximant is accurate to unit roundoff.
const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `exp(A·t)`.
pub fn expm(a: &CMatrix, t: f64) -> Result<CMatrix> {
    let (n, m) = a.dim();
    if n != m {
        return Err(Error::dim(format!("expm needs a square matrix, got {n}x{m}")));
    }
    if n > MAX_DIM {
        return Err(Error::dim(format!("expm supports dimension <= {MAX_DIM}, got {n}")));
    }
    if !t.is_finite() || a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::domain("expm: non-finite input"));
    }
    if n == 0 {
        return Ok(CMatrix::zeros((0, 0)));
    }

    let at = a.mapv(|z| z * t);
    let norm = norm1(&at);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = at.mapv(|z| z * 2f64.powi(-squarings));

    let mut r = pade13(&scaled)?;
    for _ in 0..squarings {
        r = r.dot(&r);
    }
    Ok(r)
}

fn pade13(a: &CMatrix) -> Result<CMatrix> {
    let b = |k: usize| c64(PADE_13[k], 0.0);
    let id = identity(a.nrows());
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);

    let inner_u = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let u = a.dot(&(a6.dot(&inner_u) + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1)));

    let inner_v = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let v = a6.dot(&inner_v) + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);

    solve(&(&v - &u), &(&v + &u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::frobenius;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Truncated Taylor series, the independent oracle for small norms.
    fn taylor_exp(a: &CMatrix, t: f64, terms: usize) -> CMatrix {
        let at = a.mapv(|z| z * t);
        let mut term = identity(a.nrows());
        let mut sum = term.clone();
        for k in 1..terms {
            term = term.dot(&at).mapv(|z| z / k as f64);
            sum = sum + &term;
        }
        sum
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, target_norm1: f64) -> CMatrix {
        let a = CMatrix::from_shape_fn((n, n), |_| {
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let s = target_norm1 / norm1(&a);
        a.mapv(|z| z * s)
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let z = CMatrix::zeros((5, 5));
        assert!(frobenius(&(expm(&z, 1.0).unwrap() - identity(5))) < 1e-15);
    }

    #[test]
    fn diagonal_case() {
        let mut a = CMatrix::zeros((2, 2));
        a[[0, 0]] = c64(-0.7, 0.3);
        a[[1, 1]] = c64(1.2, 0.0);
        let t = 2.5;
        let e = expm(&a, t).unwrap();
        assert!((e[[0, 0]] - (a[[0, 0]] * t).exp()).norm() < 1e-13);
        assert!((e[[1, 1]] - (a[[1, 1]] * t).exp()).norm() < 1e-12 * 20.0);
        assert!(e[[0, 1]].norm() < 1e-15 && e[[1, 0]].norm() < 1e-15);
    }

    #[test]
    fn matches_taylor_oracle_on_random_16x16() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 16, 1.0);
            let e = expm(&a, 1.0).unwrap();
            let o = taylor_exp(&a, 1.0, 30);
            assert!(frobenius(&(e - &o)) < 1e-10 * frobenius(&o));
        }
    }

    #[test]
    fn relative_accuracy_with_scaling() {
        // ‖At‖₁ = 10 exercises the squaring phase; oracle = Taylor of A/16 squared 4 times.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 8, 10.0);
        let mut o = taylor_exp(&a, 1.0 / 16.0, 40);
        for _ in 0..4 {
            o = o.dot(&o);
        }
        let e = expm(&a, 1.0).unwrap();
        assert!(frobenius(&(e - &o)) <= 1e-12 * frobenius(&o));
    }

    #[test]
    fn semigroup_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 16, 1.0);
        let (s, t) = (0.37, 1.91);
        let lhs = expm(&a, s).unwrap().dot(&expm(&a, t).unwrap());
        let rhs = expm(&a, s + t).unwrap();
        assert!(frobenius(&(lhs - rhs)) < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        let a = CMatrix::zeros((2, 3));
        assert!(matches!(expm(&a, 1.0), Err(Error::Dimension(_))));
        let mut b = CMatrix::zeros((2, 2));
        b[[0, 1]] = c64(f64::NAN, 0.0);
        assert!(matches!(expm(&b, 1.0), Err(Error::Domain(_))));
        assert!(matches!(expm(&CMatrix::zeros((2, 2)), f64::INFINITY), Err(Error::Domain(_))));
        assert!(matches!(expm(&CMatrix::zeros((65, 65)), 1.0), Err(Error::Dimension(_))));
    }
}
