// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use ndarray::{Array2, Axis};
use num_complex::Complex64;

use super::{c64, CMatrix};
use crate::error::{Error, Result};

pub fn identity(n: usize) -> CMatrix {
    Array2::from_diag_elem(n, c64(1.0, 0.0))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = CMatrix::zeros((ar * br, ac * bc));
    for ((i, j), &x) in a.indexed_iter() {
        if x == Complex64::ZERO {
            continue;
        }
        for ((k, l), &y) in b.indexed_iter() {
            out[[i * br + k, j * bc + l]] = x * y;
        }
    }
    out
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diag().sum()
}

/// Induced 1-norm: largest absolute column sum.
pub fn norm1(a: &CMatrix) -> f64 {
    a.axis_iter(Axis(1))
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `max |A - A†|` over all entries.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let n = a.nrows();
    if n != a.ncols() {
        return f64::INFINITY;
    }
    let mut dev = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    dev
}

struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign: f64,
}

fn lu_decompose(a: &CMatrix) -> Result<Lu> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::dim(format!("LU needs a square matrix, got {:?}", a.dim())));
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[[i, k]].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == 0.0 {
            return Err(Error::domain("singular matrix in LU decomposition"));
        }
        if p != k {
            for j in 0..n {
                lu.swap([k, j], [p, j]);
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = lu[[k, k]];
        for i in (k + 1)..n {
            let f = lu[[i, k]] / pivot;
            lu[[i, k]] = f;
            if f != Complex64::ZERO {
                for j in (k + 1)..n {
                    let u = lu[[k, j]];
                    lu[[i, j]] -= f * u;
                }
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

/// Solve `A X = B` by LU decomposition with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if b.nrows() != n {
        return Err(Error::dim(format!(
            "solve: lhs is {:?}, rhs is {:?}",
            a.dim(),
            b.dim()
        )));
    }
    let Lu { lu, perm, .. } = lu_decompose(a)?;
    let m = b.ncols();
    let mut x = CMatrix::zeros((n, m));
    for col in 0..m {
        let mut y: Vec<Complex64> = perm.iter().map(|&p| b[[p, col]]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= lu[[i, j]] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= lu[[i, j]] * y[j];
            }
            y[i] = s / lu[[i, i]];
        }
        for i in 0..n {
            x[[i, col]] = y[i];
        }
    }
    Ok(x)
}

pub fn det(a: &CMatrix) -> Result<Complex64> {
    match lu_decompose(a) {
        Ok(Lu { lu, sign, .. }) => Ok(lu.diag().iter().fold(c64(sign, 0.0), |acc, &d| acc * d)),
        Err(Error::Domain(_)) => Ok(Complex64::ZERO),
        Err(e) => Err(e),
    }
}

/// `a^n` by repeated squaring.
pub fn matpow(a: &CMatrix, mut n: u64) -> CMatrix {
    let mut result = identity(a.nrows());
    let mut base = a.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result.dot(&base);
        }
        n >>= 1;
        if n > 0 {
            base = base.dot(&base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CMatrix {
        ndarray::array![
            [c64(2.0, 1.0), c64(0.5, 0.0), c64(0.0, -1.0)],
            [c64(1.0, 0.0), c64(-1.0, 0.5), c64(3.0, 0.0)],
            [c64(0.0, 2.0), c64(1.0, 1.0), c64(0.25, 0.0)]
        ]
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = sample();
        let b = ndarray::array![[c64(1.0, 0.0)], [c64(0.0, 1.0)], [c64(-2.0, 0.5)]];
        let x = solve(&a, &b).unwrap();
        let r = a.dot(&x) - &b;
        assert!(frobenius(&r) < 1e-13);
    }

    #[test]
    fn singular_solve_is_domain_error() {
        let a = CMatrix::zeros((2, 2));
        assert!(matches!(solve(&a, &identity(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(kron(&identity(2), &identity(3)), identity(6));
    }

    #[test]
    fn det_of_permuted_diagonal() {
        let mut a = CMatrix::zeros((3, 3));
        a[[0, 1]] = c64(2.0, 0.0);
        a[[1, 0]] = c64(3.0, 0.0);
        a[[2, 2]] = c64(0.0, 1.0);
        let d = det(&a).unwrap();
        assert!((d - c64(0.0, -6.0)).norm() < 1e-14);
    }

    #[test]
    fn matpow_matches_repeated_product() {
        let a = sample() * c64(0.3, 0.0);
        let mut p = identity(3);
        for _ in 0..7 {
            p = p.dot(&a);
        }
        assert!(frobenius(&(matpow(&a, 7) - p)) < 1e-12);
    }
}
