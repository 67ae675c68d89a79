// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-level system whose coupling to the bath is frequency modulated,
//! `g -> g·exp(-i m sin νt)`, in the interaction picture.

use num_complex::Complex64;

use super::{param, ChannelFamily, ParamList};
use crate::error::{Error, Result};
use crate::numerics::{bessel_j, c64, CMatrix};
use crate::quantum::Superoperator;

/// First zero of `J_0`, the population-trapping modulation depth.
pub const BESSEL_J0_ZERO: f64 = 2.404825557695773;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqModParams {
    /// Modulation amplitude `m`.
    pub m: f64,
    /// Modulation frequency `ν`.
    pub nu: f64,
    /// Bath correlation frequency `κ`.
    pub kappa_bath: f64,
    /// Detuning `Δ = ω₀ - ω`.
    pub delta: f64,
    /// `C₀^{-+}`.
    pub c_mp: f64,
    /// `C₀^{+-}`.
    pub c_pm: f64,
}

impl Default for FreqModParams {
    fn default() -> Self {
        Self {
            m: 2.4048,
            nu: 0.0,
            kappa_bath: 0.1,
            delta: 0.1,
            c_mp: 0.1,
            c_pm: 0.1,
        }
    }
}

impl FreqModParams {
    pub fn validate(&self) -> Result<()> {
        if self.m.abs() > 50.0 || !self.m.is_finite() {
            return Err(Error::invalid(format!("|m| must be <= 50, got {}", self.m)));
        }
        if !(self.nu >= 0.0) {
            return Err(Error::invalid("nu must be >= 0"));
        }
        if !(self.kappa_bath > 0.0) || !(self.c_mp > 0.0) || !(self.c_pm > 0.0) {
            return Err(Error::invalid("kappa_bath, C_mp and C_pm must be positive"));
        }
        if !self.delta.is_finite() {
            return Err(Error::invalid("Delta must be finite"));
        }
        Ok(())
    }

    /// `α = 2(κ - iΔ) J₁²(m) / ((κ - iΔ)² + ν²)`.
    pub fn alpha(&self) -> Result<Complex64> {
        let k = c64(self.kappa_bath, -self.delta);
        let denom = k * k + self.nu * self.nu;
        if denom.norm() < 1e-300 {
            return Err(Error::Singular("(kappa - i Delta)^2 + nu^2 vanishes".into()));
        }
        let j1 = bessel_j(1, self.m)?;
        Ok(k * (2.0 * j1 * j1) / denom)
    }

    /// `T = C₀^{-+} + C₀^{+-}`.
    pub fn t_sum(&self) -> f64 {
        self.c_mp + self.c_pm
    }
}

pub fn freqmod_generator(p: &FreqModParams) -> Result<Superoperator> {
    p.validate()?;
    let alpha = p.alpha()?;
    let t = p.t_sum();
    let ra = 2.0 * alpha.re;
    let mut l = CMatrix::zeros((4, 4));
    l[[0, 0]] = c64(-ra * p.c_mp, 0.0);
    l[[0, 3]] = c64(ra * p.c_pm, 0.0);
    l[[1, 1]] = -alpha * t;
    l[[2, 2]] = -alpha.conj() * t;
    l[[3, 0]] = c64(ra * p.c_mp, 0.0);
    l[[3, 3]] = c64(-ra * p.c_pm, 0.0);
    Superoperator::new(l, true)
}

/// Closed-form `V(t) = exp(Lt)`.
pub fn freqmod_closed_form(p: &FreqModParams, time: f64) -> Result<Superoperator> {
    p.validate()?;
    let alpha = p.alpha()?;
    let t = p.t_sum();
    let x = (-2.0 * alpha.re * t * time).exp();
    let mut v = CMatrix::zeros((4, 4));
    v[[0, 0]] = c64((p.c_mp * x + p.c_pm) / t, 0.0);
    v[[0, 3]] = c64(p.c_pm * (1.0 - x) / t, 0.0);
    v[[1, 1]] = (-alpha * t * time).exp();
    v[[2, 2]] = (-alpha.conj() * t * time).exp();
    v[[3, 0]] = c64(p.c_mp * (1.0 - x) / t, 0.0);
    v[[3, 3]] = c64((p.c_pm * x + p.c_mp) / t, 0.0);
    Superoperator::new(v, true)
}

/// Smaller root of `X² - (2 + T²/(C₀^{-+}C₀^{+-}))X + 1 = 0`, the value of
/// `exp(-2Re(α)Tt)` at which the Choi state becomes separable.
pub fn x_minus(p: &FreqModParams) -> f64 {
    let b = 2.0 + p.t_sum().powi(2) / (p.c_mp * p.c_pm);
    // product of the roots is 1, so take the larger one stably
    let x_plus = 0.5 * (b + (b * b - 4.0).sqrt());
    1.0 / x_plus
}

/// Closed-form sudden-death time `-ln(X₋) / (2Re(α)T)`.
pub fn freqmod_tesd(p: &FreqModParams) -> Result<f64> {
    p.validate()?;
    let alpha = p.alpha()?;
    if !(alpha.re > 0.0) {
        return Err(Error::NoDecay(format!("Re(alpha) = {} is not positive", alpha.re)));
    }
    let xm = x_minus(p);
    if xm > 1.0 {
        return Err(Error::domain(format!("X_- = {xm} exceeds 1")));
    }
    Ok(-xm.ln() / (2.0 * alpha.re * p.t_sum()))
}

/// Frequency-modulation family; the generator is built once.
#[derive(Debug, Clone)]
pub struct FreqMod {
    pub params: FreqModParams,
    generator: Superoperator,
}

impl FreqMod {
    pub fn new(params: FreqModParams) -> Result<Self> {
        let generator = freqmod_generator(&params)?;
        Ok(Self { params, generator })
    }

    pub fn generator(&self) -> &Superoperator {
        &self.generator
    }
}

impl ChannelFamily for FreqMod {
    fn name(&self) -> &str {
        "freqmod"
    }

    fn params(&self) -> ParamList {
        let p = &self.params;
        vec![
            param("m", p.m),
            param("nu", p.nu),
            param("kappa_bath", p.kappa_bath),
            param("Delta", p.delta),
            param("C_mp", p.c_mp),
            param("C_pm", p.c_pm),
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

    #[test]
    fn generator_matches_closed_form() {
        for nu in [0.0, 0.3, 2.0] {
            let p = FreqModParams { nu, ..Default::default() };
            let l = freqmod_generator(&p).unwrap();
            for t in [0.0, 0.5, 1.6, 4.0] {
                let a = l.exp(t).unwrap();
                let b = freqmod_closed_form(&p, t).unwrap();
                let worst = (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(worst < 1e-9, "nu = {nu}, t = {t}: {worst}");
            }
        }
        let v0 = freqmod_closed_form(&FreqModParams::default(), 0.0).unwrap();
        assert!(frobenius(&(v0.into_matrix() - identity(4))) < 1e-15);
    }

    #[test]
    fn equal_correlators_relax_to_half() {
        let v = freqmod_closed_form(&FreqModParams::default(), 1e3).unwrap();
        assert!((v.matrix()[[0, 0]].re - 0.5).abs() < 1e-12);
        assert!((v.matrix()[[3, 0]].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn root_for_equal_correlators() {
        let xm = x_minus(&FreqModParams::default());
        assert!((xm - (3.0 - 2.0 * 2f64.sqrt())).abs() < 1e-15);
        // back-substitution
        assert!((xm * xm - 6.0 * xm + 1.0).abs() < 1e-14);
    }

    #[test]
    fn trapping_depth_zeroes_j0() {
        assert!(bessel_j(0, FreqModParams::default().m).unwrap().abs() < 1e-4);
        assert!(bessel_j(0, BESSEL_J0_ZERO).unwrap().abs() < 1e-14);
    }

    #[test]
    fn modulation_delays_sudden_death() {
        let t0 = freqmod_tesd(&FreqModParams::default()).unwrap();
        let t1 = freqmod_tesd(&FreqModParams { nu: 1.0, ..Default::default() }).unwrap();
        assert!(t1 > t0);
    }

    #[test]
    fn singular_and_no_decay() {
        let p = FreqModParams { kappa_bath: 1e-300, delta: 0.0, nu: 0.0, ..Default::default() };
        assert!(p.alpha().is_err() || freqmod_tesd(&p).is_err());
        let q = FreqModParams { m: 0.0, ..Default::default() };
        assert!(matches!(freqmod_tesd(&q), Err(Error::NoDecay(_))));
    }
}
