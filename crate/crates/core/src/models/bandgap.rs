// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-level atom coupled to a photonic crystal reservoir near a band edge,
//! at zero temperature and in the single-excitation sector.
//!
//! Time is the scaled `τ = α²t` and the detuning is `Δ = δ/α²`; negative `Δ`
//! places the transition inside the gap.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::{param, ChannelFamily, ParamList};
use crate::error::{Error, Result};
use crate::numerics::{c64, erf_complex, CMatrix};
use crate::quantum::Superoperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandGapParams {
    pub delta: f64,
    pub tau_max: f64,
    pub tau_step: f64,
}

impl Default for BandGapParams {
    fn default() -> Self {
        Self {
            delta: 0.0,
            tau_max: 50.0,
            tau_step: 0.05,
        }
    }
}

impl BandGapParams {
    pub fn with_delta(delta: f64) -> Self {
        Self {
            delta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_step > 0.0) || !(self.tau_max > 0.0) {
            return Err(Error::invalid("tau_step and tau_max must be positive"));
        }
        if !self.delta.is_finite() {
            return Err(Error::invalid("Delta must be finite"));
        }
        Ok(())
    }

    /// The τ grid `0, step, 2·step, ...` up to and including `tau_max`.
    pub fn tau_grid(&self) -> Vec<f64> {
        let n = (self.tau_max / self.tau_step + 1e-9).floor() as usize;
        (0..=n).map(|k| k as f64 * self.tau_step).collect()
    }
}

/// Excited-state amplitude `c(τ)`.
pub fn bandgap_c(delta: f64, tau: f64) -> Result<Complex64> {
    if !(tau >= 0.0) {
        return Err(Error::domain(format!("tau must be >= 0, got {tau}")));
    }
    if delta == 0.25 {
        return Err(Error::Degenerate("Delta = 1/4 gives a double root".into()));
    }
    let root = c64(1.0 - 4.0 * delta, 0.0).sqrt();
    let d_plus = root - 1.0;
    let d_minus = -root - 1.0;
    let phase = Complex64::from_polar(1.0, FRAC_PI_4) * tau.sqrt();
    let i = c64(0.0, 1.0);
    let branch = |d: Complex64| -> Result<Complex64> {
        Ok(d * (i * d * d * tau).exp() * (erf_complex(d * phase)? + 1.0))
    };
    let prefactor = (i * delta * tau).exp() / root * 0.5;
    Ok(prefactor * (branch(d_plus)? - branch(d_minus)?))
}

/// The channel with amplitude `c`: populations `|c|²`, coherences `c`, `c*`.
pub fn bandgap_superoperator(c: Complex64) -> Superoperator {
    let p = c.norm_sqr();
    let mut v = CMatrix::zeros((4, 4));
    v[[0, 0]] = c64(p, 0.0);
    v[[1, 1]] = c;
    v[[2, 2]] = c.conj();
    v[[3, 0]] = c64(1.0 - p, 0.0);
    v[[3, 3]] = c64(1.0, 0.0);
    Superoperator::new(v, true).expect("4x4")
}

pub fn bandgap_channel(delta: f64, tau: f64) -> Result<Superoperator> {
    Ok(bandgap_superoperator(bandgap_c(delta, tau)?))
}

/// Band-gap family in scaled time τ.
#[derive(Debug, Clone, Copy)]
pub struct BandGap {
    pub params: BandGapParams,
}

impl BandGap {
    pub fn new(params: BandGapParams) -> Result<Self> {
        params.validate()?;
        if params.delta == 0.25 {
            return Err(Error::Degenerate("Delta = 1/4 gives a double root".into()));
        }
        Ok(Self { params })
    }
}

impl ChannelFamily for BandGap {
    fn name(&self) -> &str {
        "bandgap"
    }

    fn params(&self) -> ParamList {
        vec![
            param("Delta", self.params.delta),
            param("tau_max", self.params.tau_max),
            param("tau_step", self.params.tau_step),
        ]
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        bandgap_channel(self.params.delta, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{choi, concurrence, DensityMatrix};

    #[test]
    fn unit_amplitude_at_zero() {
        for delta in [0.0, -0.1, -0.25, -0.5, 0.1] {
            let c = bandgap_c(delta, 0.0).unwrap();
            assert!((c.norm_sqr() - 1.0).abs() < 1e-12, "Delta = {delta}");
        }
        let v = bandgap_channel(-0.1, 0.0).unwrap();
        assert!(crate::numerics::frobenius(&(v.matrix() - crate::numerics::identity(4))) < 1e-12);
    }

    #[test]
    fn double_root_rejected() {
        assert!(matches!(bandgap_c(0.25, 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn choi_concurrence_is_amplitude() {
        // X state with one vanishing middle population: C = 2|M_03| = |c|
        for tau in [0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 16.0, 20.0] {
            let c = bandgap_c(-0.1, tau).unwrap();
            let m = choi(&bandgap_superoperator(c)).unwrap();
            assert!((concurrence(&m).unwrap() - c.norm()).abs() < 1e-8);
        }
    }

    #[test]
    fn excited_state_fully_relaxes_without_gap() {
        let mut e = CMatrix::zeros((2, 2));
        e[[0, 0]] = c64(1.0, 0.0);
        let rho = DensityMatrix::new(e).unwrap();
        let out = bandgap_channel(0.0, 50.0).unwrap().apply(&rho).unwrap();
        assert!(out.matrix()[[1, 1]].re > 0.99);
        assert!((out.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_covers_horizon() {
        let g = BandGapParams::default().tau_grid();
        assert_eq!(g.len(), 1001);
        assert!((g[1000] - 50.0).abs() < 1e-12);
    }
}
