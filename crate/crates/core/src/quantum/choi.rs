// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::state::{DensityMatrix, PSD_TOL};
use super::superop::Superoperator;
use super::sigma_y;
use crate::error::{Error, Result};
use crate::numerics::{gen_eig_small, herm_eig, kron, sqrtm_psd, CMatrix};

/// Pure-state threshold for the factorization check.
const PURITY_TOL: f64 = 1e-10;

/// Choi state `(I⊗Λ)|φ⁺⟩⟨φ⁺|`, with `M[(i,a),(j,b)] = V[(a,b),(i,j)] / 2`.
///
/// The result is symmetrized but not checked for positivity, so maps that
/// are not completely positive still produce a (possibly unphysical) matrix.
pub fn choi(v: &Superoperator) -> Result<DensityMatrix> {
    if v.sysdim() != 2 {
        return Err(Error::dim(format!("choi needs a one-qubit map, got sysdim {}", v.sysdim())));
    }
    let vm = v.matrix();
    let m = CMatrix::from_shape_fn((4, 4), |(r, c)| {
        let (i, a) = (r / 2, r % 2);
        let (j, b) = (c / 2, c % 2);
        vm[[2 * a + b, 2 * i + j]] * 0.5
    });
    DensityMatrix::from_raw(m)
}

/// `(σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &CMatrix) -> CMatrix {
    let yy = kron(&sigma_y(), &sigma_y());
    yy.dot(&rho.mapv(|z| z.conj())).dot(&yy)
}

fn wootters(mut lambdas: Vec<f64>) -> Result<f64> {
    for l in lambdas.iter_mut() {
        if *l < -PSD_TOL {
            return Err(Error::domain(format!("negative spin-flip eigenvalue {l:.3e}")));
        }
        *l = l.max(0.0).sqrt();
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

fn check_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::dim(format!("concurrence needs a two-qubit state, got dim {}", rho.dim())));
    }
    Ok(())
}

/// Concurrence via the Hermitian matrix `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    rho.validate()?;
    let root = sqrtm_psd(rho.matrix())?;
    let k = root.dot(&spin_flip(rho.matrix())).dot(&root);
    let k = DensityMatrix::from_raw(k)?.into_matrix();
    let (vals, _) = herm_eig(&k)?;
    wootters(vals)
}

/// Concurrence via the eigenvalues of the non-Hermitian product `ρρ̃`.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    rho.validate()?;
    let vals = spectrum_of_product(rho.matrix())?;
    wootters(vals)
}

/// The same formula without any validity check on `ρ`; negative or complex
/// eigenvalues of `ρρ̃` contribute only their nonnegative real part. Used for
/// channels that are not guaranteed to be completely positive.
pub fn concurrence_lenient(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubit(rho)?;
    let vals = spectrum_of_product(rho.matrix())?
        .into_iter()
        .map(|l| l.max(0.0))
        .collect();
    wootters(vals)
}

fn spectrum_of_product(rho: &CMatrix) -> Result<Vec<f64>> {
    let r = rho.dot(&spin_flip(rho));
    Ok(gen_eig_small(&r)?.iter().map(|z: &Complex64| z.re).collect())
}

/// Both sides of `C((I⊗Λ)χ) = C(χ) · C((I⊗Λ)φ⁺)` for a pure two-qubit `χ`.
pub fn factorization_check(v: &Superoperator, chi: &DensityMatrix) -> Result<(f64, f64)> {
    check_two_qubit(chi)?;
    if v.sysdim() != 2 {
        return Err(Error::dim("factorization_check needs a one-qubit map"));
    }
    if chi.purity() < 1.0 - PURITY_TOL {
        return Err(Error::domain(format!("state is not pure (purity {})", chi.purity())));
    }
    let vm = v.matrix();
    let x = chi.matrix();
    let out = CMatrix::from_shape_fn((4, 4), |(r, c)| {
        let (i, a) = (r / 2, r % 2);
        let (j, b) = (c / 2, c % 2);
        let mut acc = Complex64::ZERO;
        for p in 0..2 {
            for q in 0..2 {
                acc += vm[[2 * a + b, 2 * p + q]] * x[[2 * i + p, 2 * j + q]];
            }
        }
        acc
    });
    let lhs = concurrence(&DensityMatrix::from_raw(out)?)?;
    let rhs = concurrence(chi)? * concurrence(&choi(v)?)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c64, identity};
    use crate::quantum::phi_plus;

    fn dephased_bell(x: f64) -> DensityMatrix {
        let mut m = CMatrix::zeros((4, 4));
        m[[0, 0]] = c64(0.5, 0.0);
        m[[3, 3]] = c64(0.5, 0.0);
        m[[0, 3]] = c64(x / 2.0, 0.0);
        m[[3, 0]] = c64(x / 2.0, 0.0);
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn identity_channel_gives_bell_projector() {
        let m = choi(&Superoperator::identity(2).unwrap()).unwrap();
        assert_eq!(m, phi_plus());
        assert!((concurrence(&m).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_is_separable() {
        let mut m = CMatrix::zeros((4, 4));
        m[[0, 0]] = c64(1.0, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        assert_eq!(concurrence(&rho).unwrap(), 0.0);
        assert_eq!(concurrence_general(&rho).unwrap(), 0.0);
    }

    #[test]
    fn dephased_bell_closed_form() {
        for gt in [0.0, 0.5, 1.0, 2.0] {
            let x = (-gt as f64).exp();
            let rho = dephased_bell(x);
            assert!((concurrence(&rho).unwrap() - x).abs() < 1e-12);
            assert!((concurrence_general(&rho).unwrap() - x).abs() < 1e-12);
        }
    }

    #[test]
    fn werner_family() {
        for p in [0.0, 0.5, 1.0, 0.2, 0.8] {
            let m = phi_plus().into_matrix().mapv(|z| z * p) + identity(4).mapv(|z| z * ((1.0 - p) / 4.0));
            let c = concurrence(&DensityMatrix::new(m).unwrap()).unwrap();
            assert!((c - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn rejects_invalid_states() {
        let bad = DensityMatrix::from_raw(identity(4)).unwrap();
        assert!(matches!(concurrence(&bad), Err(Error::Domain(_))));
        let one_qubit = DensityMatrix::new(identity(2).mapv(|z| z * 0.5)).unwrap();
        assert!(concurrence(&one_qubit).is_err());
    }

    #[test]
    fn factorization_for_bell_and_product() {
        let v = Superoperator::identity(2).unwrap();
        let (l, r) = factorization_check(&v, &phi_plus()).unwrap();
        assert!((l - r).abs() < 1e-12);
        let prod = DensityMatrix::from_pure(&[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]).unwrap();
        assert_eq!(factorization_check(&v, &prod).unwrap(), (0.0, 0.0));
        let mixed = DensityMatrix::new(identity(4).mapv(|z| z * 0.25)).unwrap();
        assert!(matches!(factorization_check(&v, &mixed), Err(Error::Domain(_))));
    }
}
