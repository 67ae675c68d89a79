// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::linalg::{dagger, hermitian_deviation, identity};
use super::{c64, CMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 100;
const QR_MAX_ITERS: usize = 2000;

/// Eigenvalues below this are rejected by [`sqrtm_psd`]; those in `[-PSD_CLAMP, 0)` are zeroed.
pub const PSD_CLAMP: f64 = 1e-8;

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns the eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as the columns of the second value.
pub fn herm_eig(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::dim(format!("herm_eig needs a square matrix, got {:?}", a.dim())));
    }
    let dev = hermitian_deviation(a);
    if dev > HERMITIAN_TOL {
        return Err(Error::domain(format!("herm_eig: input is not Hermitian (deviation {dev:.3e})")));
    }
    let mut m = (a + &dagger(a)).mapv(|z| z * 0.5);
    let mut v = identity(n);
    let scale = super::frobenius(&m).max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[[p, q]].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[[i, i]].re.total_cmp(&m[[j, j]].re));
    let values = order.iter().map(|&i| m[[i, i]].re).collect();
    let mut vectors = CMatrix::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        vectors.column_mut(dst).assign(&v.column(src));
    }
    Ok((values, vectors))
}

/// One Jacobi rotation annihilating `m[p][q]`, accumulated into `v`.
fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let g = m[[p, q]];
    let abs_g = g.norm();
    if abs_g < f64::MIN_POSITIVE * 1e10 {
        return;
    }
    let phase_conj = (g / abs_g).conj();
    let tau = (m[[q, q]].re - m[[p, p]].re) / (2.0 * abs_g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U restricted to the (p, q) plane
    let upp = c64(c, 0.0);
    let upq = c64(s, 0.0);
    let uqp = phase_conj * (-s);
    let uqq = phase_conj * c;

    let n = m.nrows();
    for k in 0..n {
        let (mp, mq) = (m[[k, p]], m[[k, q]]);
        m[[k, p]] = mp * upp + mq * uqp;
        m[[k, q]] = mp * upq + mq * uqq;
    }
    for k in 0..n {
        let (mp, mq) = (m[[p, k]], m[[q, k]]);
        m[[p, k]] = upp.conj() * mp + uqp.conj() * mq;
        m[[q, k]] = upq.conj() * mp + uqq.conj() * mq;
    }
    m[[p, q]] = Complex64::ZERO;
    m[[q, p]] = Complex64::ZERO;
    m[[p, p]] = c64(m[[p, p]].re, 0.0);
    m[[q, q]] = c64(m[[q, q]].re, 0.0);
    for k in 0..n {
        let (vp, vq) = (v[[k, p]], v[[k, q]]);
        v[[k, p]] = vp * upp + vq * uqp;
        v[[k, q]] = vp * upq + vq * uqq;
    }
}

/// All eigenvalues (with multiplicity) of a general complex matrix of
/// dimension at most 4: Householder reduction to Hessenberg form followed by
/// single-shift QR with Wilkinson shifts.
pub fn gen_eig_small(a: &CMatrix) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::dim(format!("gen_eig_small needs a square matrix, got {:?}", a.dim())));
    }
    if n > 4 {
        return Err(Error::UnsupportedSize(format!("gen_eig_small supports n <= 4, got {n}")));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::domain("gen_eig_small: non-finite input"));
    }
    let mut h = hessenberg(a);
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n;
    let mut since_deflation = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[[0, 0]]);
            break;
        }
        let sub = h[[hi - 1, hi - 2]].norm();
        let diag = h[[hi - 1, hi - 1]].norm() + h[[hi - 2, hi - 2]].norm();
        if sub <= f64::EPSILON * diag || sub < 1e-300 {
            eigs.push(h[[hi - 1, hi - 1]]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if hi == 2 {
            let (l1, l2) = eig2(h[[0, 0]], h[[0, 1]], h[[1, 0]], h[[1, 1]]);
            eigs.push(l1);
            eigs.push(l2);
            break;
        }
        total += 1;
        since_deflation += 1;
        if total > QR_MAX_ITERS {
            return Err(Error::Convergence("gen_eig_small: QR iteration did not converge".into()));
        }
        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            h[[hi - 1, hi - 1]] + c64(sub * 0.75, sub * 0.5)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, hi, shift);
    }
    Ok(eigs)
}

fn hessenberg(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = ((k + 1)..n).map(|i| h[[i, k]]).collect();
        let alpha_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { c64(1.0, 0.0) };
        let mut u = x.clone();
        u[0] += phase * alpha_norm;
        let unorm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if unorm == 0.0 {
            continue;
        }
        for z in u.iter_mut() {
            *z /= unorm;
        }
        // H <- (I - 2uu†) H (I - 2uu†) on the trailing block
        for j in 0..n {
            let dot: Complex64 = u
                .iter()
                .enumerate()
                .map(|(i, ui)| ui.conj() * h[[k + 1 + i, j]])
                .sum();
            for (i, ui) in u.iter().enumerate() {
                h[[k + 1 + i, j]] -= *ui * dot * 2.0;
            }
        }
        for i in 0..n {
            let dot: Complex64 = u
                .iter()
                .enumerate()
                .map(|(j, uj)| h[[i, k + 1 + j]] * uj)
                .sum();
            for (j, uj) in u.iter().enumerate() {
                h[[i, k + 1 + j]] -= dot * uj.conj() * 2.0;
            }
        }
        for i in (k + 2)..n {
            h[[i, k]] = Complex64::ZERO;
        }
    }
    h
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    // recover the smaller root from the determinant to avoid cancellation
    let det = a * d - b * c;
    if l1.norm() >= l2.norm() && l1.norm() > 0.0 {
        (l1, det / l1)
    } else if l2.norm() > 0.0 {
        (det / l2, l2)
    } else {
        (l1, l2)
    }
}

fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let (a, b) = (h[[hi - 2, hi - 2]], h[[hi - 2, hi - 1]]);
    let (c, d) = (h[[hi - 1, hi - 2]], h[[hi - 1, hi - 1]]);
    let (l1, l2) = eig2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_step(h: &mut CMatrix, hi: usize, shift: Complex64) {
    for i in 0..hi {
        h[[i, i]] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - 1);
    for k in 0..(hi - 1) {
        let x = h[[k, k]];
        let y = h[[k + 1, k]];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (c64(1.0, 0.0), Complex64::ZERO)
        } else {
            (x / r, y / r)
        };
        for j in 0..hi {
            let (rk, rk1) = (h[[k, j]], h[[k + 1, j]]);
            h[[k, j]] = c.conj() * rk + s.conj() * rk1;
            h[[k + 1, j]] = -s * rk + c * rk1;
        }
        rotations.push((c, s));
    }
    for (k, &(c, s)) in rotations.iter().enumerate() {
        for i in 0..hi {
            let (ck, ck1) = (h[[i, k]], h[[i, k + 1]]);
            h[[i, k]] = ck * c + ck1 * s;
            h[[i, k + 1]] = -ck * s.conj() + ck1 * c.conj();
        }
    }
    for i in 0..hi {
        h[[i, i]] += shift;
    }
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn sqrtm_psd(a: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = herm_eig(a)?;
    if let Some(&min) = values.first() {
        if min < -PSD_CLAMP {
            return Err(Error::domain(format!(
                "sqrtm_psd: negative eigenvalue {min:.3e}"
            )));
        }
    }
    let n = a.nrows();
    let mut scaled = vectors.clone();
    for (j, &lam) in values.iter().enumerate() {
        let r = lam.max(0.0).sqrt();
        for i in 0..n {
            scaled[[i, j]] *= r;
        }
    }
    Ok(scaled.dot(&dagger(&vectors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{det, frobenius};
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
        CMatrix::from_shape_fn((n, n), |_| {
            c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
        let a = random_complex(rng, n);
        (&a + &dagger(&a)).mapv(|z| z * 0.5)
    }

    fn sorted_by_re_im(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn identity_and_pauli_x() {
        let (vals, _) = herm_eig(&identity(2)).unwrap();
        assert_eq!(vals, vec![1.0, 1.0]);
        let sx = array![[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]];
        let (vals, _) = herm_eig(&sx).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-15 && (vals[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_hermitian_residuals_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 4, 8, 16] {
            let a = random_hermitian(&mut rng, n);
            let (vals, vecs) = herm_eig(&a).unwrap();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            for (j, &lam) in vals.iter().enumerate() {
                let v = vecs.column(j).to_owned();
                let r = a.dot(&v) - v.mapv(|z| z * lam);
                assert!(r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() < 1e-10);
            }
            let gram = dagger(&vecs).dot(&vecs);
            assert!(frobenius(&(gram - identity(n))) < 1e-10);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = array![[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(0.0, 0.0), c64(0.0, 0.0)]];
        assert!(matches!(herm_eig(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn diagonal_spectrum() {
        let mut a = CMatrix::zeros((4, 4));
        for i in 0..4 {
            a[[i, i]] = c64(i as f64 + 1.0, 0.0);
        }
        let e = sorted_by_re_im(gen_eig_small(&a).unwrap());
        for (i, z) in e.iter().enumerate() {
            assert!((z - c64(i as f64 + 1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn companion_of_x2_plus_1() {
        // (x - i)(x + i) = x^2 + 1
        let a = array![[c64(0.0, 0.0), c64(-1.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]];
        let e = sorted_by_re_im(gen_eig_small(&a).unwrap());
        assert!((e[0] - c64(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - c64(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn spin_flip_product_at_ln2() {
        // R = M M~ for the dephased Bell state with e^{-γt} = 1/2
        let x = 0.5;
        let mut r = CMatrix::zeros((4, 4));
        r[[0, 0]] = c64((1.0 + x * x) / 4.0, 0.0);
        r[[3, 3]] = r[[0, 0]];
        r[[0, 3]] = c64(2.0 * x / 4.0, 0.0);
        r[[3, 0]] = r[[0, 3]];
        let mut e: Vec<f64> = gen_eig_small(&r).unwrap().iter().map(|z| z.re).collect();
        e.sort_by(|a, b| b.total_cmp(a));
        let expected = [0.5625, 0.0625, 0.0, 0.0];
        for (a, b) in e.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{e:?}");
        }
    }

    #[test]
    fn eigenvalue_product_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=4 {
            for _ in 0..50 {
                let a = random_complex(&mut rng, n);
                let e = gen_eig_small(&a).unwrap();
                assert_eq!(e.len(), n);
                let prod = e.iter().fold(c64(1.0, 0.0), |acc, z| acc * z);
                let d = det(&a).unwrap();
                assert!((prod - d).norm() <= 1e-9 * d.norm().max(1.0));
            }
        }
    }

    #[test]
    fn hermitian_and_general_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let a = random_hermitian(&mut rng, 4);
            let (h, _) = herm_eig(&a).unwrap();
            let mut g: Vec<f64> = gen_eig_small(&a).unwrap().iter().map(|z| z.re).collect();
            g.sort_by(f64::total_cmp);
            for (x, y) in h.iter().zip(&g) {
                assert!((x - y).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn rejects_five_by_five() {
        assert!(matches!(
            gen_eig_small(&identity(5)),
            Err(Error::UnsupportedSize(_))
        ));
    }

    #[test]
    fn sqrtm_examples() {
        assert!(frobenius(&(sqrtm_psd(&identity(3)).unwrap() - identity(3))) < 1e-15);
        let d = array![[c64(4.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(9.0, 0.0)]];
        let s = sqrtm_psd(&d).unwrap();
        assert!((s[[0, 0]] - c64(2.0, 0.0)).norm() < 1e-14);
        assert!((s[[1, 1]] - c64(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sqrtm_reconstructs_gram_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2, 4, 6] {
            let c = random_complex(&mut rng, n);
            let a = dagger(&c).dot(&c);
            let b = sqrtm_psd(&a).unwrap();
            assert!(hermitian_deviation(&b) < 1e-12);
            assert!(frobenius(&(b.dot(&b) - &a)) < 1e-9);
        }
    }

    #[test]
    fn sqrtm_clamps_and_rejects() {
        let tiny = array![[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(-5e-9, 0.0)]];
        let s = sqrtm_psd(&tiny).unwrap();
        assert_eq!(s[[1, 1]], Complex64::ZERO);
        let bad = array![[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(-1e-6, 0.0)]];
        assert!(matches!(sqrtm_psd(&bad), Err(Error::Domain(_))));
    }
}
