// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Resonantly driven two-level atom damped by a thermal radiation field.

use log::debug;
use num_complex::Complex64;

use super::{param, ChannelFamily, ParamList};
use crate::error::{Error, Result};
use crate::numerics::{c64, CMatrix};
use crate::quantum::{
    lindblad_generator, sigma_minus, sigma_plus, LindbladSpec, Superoperator,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResFluoParams {
    /// Rabi frequency `Ω`.
    pub omega: f64,
    /// Spontaneous emission rate `γ₀`.
    pub gamma0: f64,
    /// Thermal occupation `N` at the transition frequency.
    pub n_thermal: f64,
}

impl Default for ResFluoParams {
    fn default() -> Self {
        Self {
            omega: 0.0,
            gamma0: 0.1,
            n_thermal: 0.5,
        }
    }
}

impl ResFluoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma0 > 0.0) || !self.gamma0.is_finite() {
            return Err(Error::invalid("gamma0 must be positive"));
        }
        if !(self.omega >= 0.0) || !self.omega.is_finite() {
            return Err(Error::invalid("Omega must be >= 0"));
        }
        if !(self.n_thermal >= 0.0) || !self.n_thermal.is_finite() {
            return Err(Error::invalid("N must be >= 0"));
        }
        Ok(())
    }

    /// Total damping `γ = γ₀(2N + 1)`.
    pub fn gamma(&self) -> f64 {
        self.gamma0 * (2.0 * self.n_thermal + 1.0)
    }

    /// `μ = √(Ω² - (γ/4)²)`, real when underdamped and imaginary when overdamped.
    pub fn mu(&self) -> Complex64 {
        c64(self.omega * self.omega - (self.gamma() / 4.0).powi(2), 0.0).sqrt()
    }
}

/// Lindblad generator with `H = -(Ω/2)(σ₊ + σ₋)`, emission `σ₋` at rate
/// `γ₀(N+1)` and absorption `σ₊` at rate `γ₀N`.
pub fn resfluo_generator(p: &ResFluoParams) -> Result<Superoperator> {
    p.validate()?;
    let h = (sigma_plus() + sigma_minus()).mapv(|z| z * (-p.omega / 2.0));
    let spec = LindbladSpec::new(h)
        .jump(sigma_minus(), p.gamma0 * (p.n_thermal + 1.0))
        .jump(sigma_plus(), p.gamma0 * p.n_thermal);
    lindblad_generator(&spec)
}

/// Superoperator assembled from the tabulated element formulas (`a`, `b`,
/// `d` with `X = e^{-γt/4}`, `S±`, `S₃`). Known not to reduce to the identity
/// at `t = 0`; kept only as a cross-check.
pub fn resfluo_closed_form(p: &ResFluoParams, t: f64) -> Result<Superoperator> {
    p.validate()?;
    if !(t >= 0.0) {
        return Err(Error::domain("t must be >= 0"));
    }
    let g = p.gamma();
    let g0 = p.gamma0;
    let om = p.omega;
    let mu = p.mu();
    let i = c64(0.0, 1.0);
    let x = (-g * t / 4.0).exp();
    let x2 = x * x;
    let x3 = x2 * x;
    let cos = (mu * t).cos();
    // sin(μt)/μ, continued through μ = 0
    let sinc = if mu.norm() < 1e-12 { c64(t, 0.0) } else { (mu * t).sin() / mu };
    let denom = g * g + 2.0 * om * om;
    let s_plus = c64(0.0, -om * g0 / denom);
    let s_minus = s_plus.conj();
    let s3 = -g0 * g / denom;

    let damped_minus = (cos - sinc * (g / 4.0)) * x3;
    let damped_plus = (cos + sinc * (g / 4.0)) * x3;
    let drive = i * om * sinc * x3;

    let a_sum = (c64(1.0, 0.0) - damped_minus) * s3 + 1.0 + drive * (s_minus + s_plus);
    let a_diff = damped_minus;
    let a1 = (a_sum + a_diff) * 0.5;
    let a4 = (a_sum - a_diff) * 0.5;
    let a2 = drive;
    let b_sum = -(s_plus + s_minus) * x2 - drive * s3 + damped_plus * (s_minus - s_plus);
    let b_diff = drive;
    let b1 = (b_sum + b_diff) * 0.5;
    let b4 = (b_sum - b_diff) * 0.5;
    let b2 = damped_plus + x2 * 0.5;
    let b3 = -damped_plus + x2 * 0.5;
    let d_sum = -a_sum + 2.0;
    let d_diff = -a_diff;
    let d1 = (d_sum + d_diff) * 0.5;
    let d4 = (d_sum - d_diff) * 0.5;

    let v = CMatrix::from_shape_vec(
        (4, 4),
        vec![
            a1, a2, a2.conj(), a4,
            b1, b2, b3, b4,
            b1.conj(), b3.conj(), b2.conj(), b4.conj(),
            d1, -a2, -a2.conj(), d4,
        ],
    )
    .expect("16 entries");
    Superoperator::new(v, false)
}

/// Largest elementwise deviation between the tabulated closed form and the
/// generator route at each requested time.
pub fn closed_form_discrepancy(p: &ResFluoParams, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    let l = resfluo_generator(p)?;
    times
        .iter()
        .map(|&t| {
            let a = l.exp(t)?;
            let b = resfluo_closed_form(p, t)?;
            let worst = (a.matrix() - b.matrix())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            if worst > 1e-6 {
                debug!("resonance fluorescence closed form deviates by {worst:.3e} at t = {t}");
            }
            Ok((t, worst))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ResFluo {
    pub params: ResFluoParams,
    generator: Superoperator,
}

impl ResFluo {
    pub fn new(params: ResFluoParams) -> Result<Self> {
        let generator = resfluo_generator(&params)?;
        Ok(Self { params, generator })
    }

    pub fn generator(&self) -> &Superoperator {
        &self.generator
    }
}

impl ChannelFamily for ResFluo {
    fn name(&self) -> &str {
        "resfluo"
    }

    fn params(&self) -> ParamList {
        vec![
            param("Omega", self.params.omega),
            param("gamma0", self.params.gamma0),
            param("N", self.params.n_thermal),
        ]
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        self.generator.exp(t).map_err(|e| e.at_time(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frobenius, identity};
    use crate::quantum::{steady_state, DensityMatrix};

    #[test]
    fn identity_at_zero() {
        let v = resfluo_generator(&ResFluoParams { omega: 0.3, ..Default::default() })
            .unwrap()
            .exp(0.0)
            .unwrap();
        assert!(frobenius(&(v.into_matrix() - identity(4))) < 1e-15);
    }

    #[test]
    fn pure_damping() {
        let p = ResFluoParams { omega: 0.0, gamma0: 0.1, n_thermal: 0.0 };
        let l = resfluo_generator(&p).unwrap();
        let mut e = CMatrix::zeros((2, 2));
        e[[0, 0]] = c64(1.0, 0.0);
        let rho = DensityMatrix::new(e).unwrap();
        for t in [1.0, 10.0, 30.0] {
            let out = l.exp(t).unwrap().apply(&rho).unwrap();
            assert!((out.matrix()[[0, 0]].re - (-0.1 * t).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn long_time_limit_is_the_null_vector() {
        let p = ResFluoParams { omega: 0.4, gamma0: 0.1, n_thermal: 0.5 };
        let l = resfluo_generator(&p).unwrap();
        let ss = steady_state(&l).unwrap();
        let rho = DensityMatrix::new(identity(2).mapv(|z| z * 0.5)).unwrap();
        let late = l.exp(2000.0).unwrap().apply(&rho).unwrap();
        assert!(frobenius(&(late.into_matrix() - &ss)) < 1e-10);
        // the kernel is annihilated by L
        let vec_ss: Vec<_> = ss.iter().copied().collect();
        let lv = l.matrix().dot(&ndarray::Array1::from(vec_ss));
        assert!(lv.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn mu_regimes() {
        let under = ResFluoParams { omega: 0.5, gamma0: 0.1, n_thermal: 0.0 };
        assert!(under.mu().im.abs() < 1e-15 && under.mu().re > 0.0);
        let over = ResFluoParams { omega: 0.01, gamma0: 0.1, n_thermal: 0.0 };
        assert!(over.mu().re.abs() < 1e-15 && over.mu().im > 0.0);
        let v = resfluo_closed_form(&over, 3.0).unwrap();
        assert!(v.matrix()[[0, 0]].im.abs() < 1e-12);
    }

    #[test]
    fn closed_form_fails_identity_check() {
        let p = ResFluoParams { omega: 0.5, gamma0: 0.1, n_thermal: 0.0 };
        let v0 = resfluo_closed_form(&p, 0.0).unwrap();
        assert!((v0.matrix()[[1, 1]].re - 1.5).abs() < 1e-12);
        let report = closed_form_discrepancy(&p, &[0.0, 1.0, 5.0]).unwrap();
        assert_eq!(report.len(), 3);
        assert!(report[0].1 > 0.1);
    }
}
