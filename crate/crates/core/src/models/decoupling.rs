// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure dephasing of a qubit by a bath of harmonic oscillators, with and
//! without ideal bang-bang π pulses.
//!
//! The bath enters only through its spectral density, here ohmic with an
//! exponential cutoff, `J(ω) = η ω e^{-ω/ω_c}`, sampled on a midpoint grid
//! with `|g_k|² = J(ω_k) δω`.

use std::f64::consts::PI;

use super::{param, ChannelFamily, ParamList};
use crate::error::{Error, Result};
use crate::numerics::{c64, CMatrix};
use crate::quantum::Superoperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpectrum {
    /// Ohmic coupling `η`.
    pub coupling_strength: f64,
    /// Cutoff frequency `ω_c`.
    pub cutoff: f64,
    pub n_modes: usize,
    /// Upper end of the frequency grid.
    pub omega_max: f64,
    /// Temperature with `k_B = 1`; zero selects the vacuum.
    pub temperature: f64,
}

impl Default for BathSpectrum {
    fn default() -> Self {
        Self::ohmic(0.05, 1.0, 0.0)
    }
}

impl BathSpectrum {
    /// Ohmic bath on the default grid: 16000 modes up to 40 cutoffs.
    pub fn ohmic(coupling_strength: f64, cutoff: f64, temperature: f64) -> Self {
        Self {
            coupling_strength,
            cutoff,
            n_modes: 16_000,
            omega_max: 40.0 * cutoff,
            temperature,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coupling_strength > 0.0) || !(self.cutoff > 0.0) || !(self.omega_max > 0.0) {
            return Err(Error::invalid("coupling_strength, cutoff and omega_max must be positive"));
        }
        if self.n_modes < 100 {
            return Err(Error::invalid(format!("n_modes must be >= 100, got {}", self.n_modes)));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(Error::invalid("temperature must be >= 0"));
        }
        Ok(())
    }

    /// Mode frequencies and weights `(ω_k, |g_k|²)`.
    pub fn modes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let dw = self.omega_max / self.n_modes as f64;
        (0..self.n_modes).map(move |k| {
            let w = (k as f64 + 0.5) * dw;
            let j = self.coupling_strength * w * (-w / self.cutoff).exp();
            (w, j * dw)
        })
    }

    fn coth_factor(&self, w: f64) -> f64 {
        if self.temperature == 0.0 {
            1.0
        } else {
            1.0 / (w / (2.0 * self.temperature)).tanh()
        }
    }
}

/// Bang-bang pulse train.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSchedule {
    pub n_pulses: u64,
    /// Separation `Δt` between pulses.
    pub spacing: f64,
    /// Duration `τ_p` of each pulse.
    pub pulse_duration: f64,
    /// Pulse amplitude `U`.
    pub strength: f64,
}

impl Default for PulseSchedule {
    fn default() -> Self {
        Self {
            n_pulses: 0,
            spacing: 0.05,
            pulse_duration: 0.01,
            strength: 50.0 * PI,
        }
    }
}

impl PulseSchedule {
    pub fn with_pulses(n_pulses: u64, spacing: f64) -> Self {
        Self {
            n_pulses,
            spacing,
            ..Self::default()
        }
    }

    /// `|2Uτ_p| = π` within 1e-9.
    pub fn is_pi_pulse(&self) -> bool {
        ((2.0 * self.strength * self.pulse_duration).abs() - PI).abs() <= 1e-9
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.spacing > 0.0) || !self.spacing.is_finite() {
            return Err(Error::invalid("pulse spacing must be positive"));
        }
        if !(self.pulse_duration >= 0.0) {
            return Err(Error::invalid("pulse duration must be >= 0"));
        }
        Ok(())
    }
}

/// `Σ_k (4|g_k|²/ω_k²)(1 - cos ω_k t) coth(ω_k/2T)`.
pub fn gamma_free(bath: &BathSpectrum, t: f64) -> Result<f64> {
    bath.validate()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("t must be >= 0, got {t}")));
    }
    Ok(bath
        .modes()
        .map(|(w, g2)| {
            let s = (w * t / 2.0).sin();
            4.0 * g2 / (w * w) * 2.0 * s * s * bath.coth_factor(w)
        })
        .sum())
}

/// Per-mode `|η_k|²` for `N` pulses at spacing `Δt`, with the same
/// `4|g_k|²/ω_k²` prefactor as the free-evolution `|ξ_k|²`.
///
/// The pulse-interference bracket `N + 2Σ_k k cos(2(N-k)x)` is the Fejér
/// kernel `sin²(Nx)/sin²(x)`, evaluated directly near its poles.
pub fn eta_squared(prefactor: f64, n: u64, x: f64) -> f64 {
    let one_minus_cos = 2.0 * (x / 2.0).sin().powi(2);
    let sx = x.sin();
    let bracket = if sx.abs() > 1e-4 {
        ((n as f64 * x).sin() / sx).powi(2)
    } else {
        let (mut re, mut im) = (0.0, 0.0);
        for m in 0..n {
            let (s, c) = (2.0 * m as f64 * x).sin_cos();
            re += c;
            im += s;
        }
        re * re + im * im
    };
    prefactor * 4.0 * one_minus_cos * one_minus_cos * bracket
}

/// Per-mode `|ξ_k(t)|² = (4|g_k|²/ω_k²)·2(1 - cos ω_k t)`.
pub fn xi_squared(prefactor: f64, wt: f64) -> f64 {
    prefactor * 4.0 * (wt / 2.0).sin().powi(2)
}

/// `Σ_k (|η_k|²/2) coth(ω_k/2T)` for the schedule's pulse count and spacing.
pub fn gamma_pulsed(bath: &BathSpectrum, schedule: &PulseSchedule) -> Result<f64> {
    bath.validate()?;
    schedule.validate()?;
    let n = schedule.n_pulses;
    if n == 0 {
        return Ok(0.0);
    }
    Ok(bath
        .modes()
        .map(|(w, g2)| {
            let pref = 4.0 * g2 / (w * w);
            eta_squared(pref, n, w * schedule.spacing) / 2.0 * bath.coth_factor(w)
        })
        .sum())
}

/// Dephasing channel `diag(1, e^{-γ}, e^{-γ}, 1)`.
pub fn qnd_channel(gamma: f64) -> Result<Superoperator> {
    if !(gamma >= 0.0) {
        return Err(Error::domain(format!("dephasing exponent must be >= 0, got {gamma}")));
    }
    let e = (-gamma).exp();
    let mut v = CMatrix::zeros((4, 4));
    v[[0, 0]] = c64(1.0, 0.0);
    v[[1, 1]] = c64(e, 0.0);
    v[[2, 2]] = c64(e, 0.0);
    v[[3, 3]] = c64(1.0, 0.0);
    Superoperator::new(v, true)
}

fn bath_params(bath: &BathSpectrum) -> ParamList {
    vec![
        param("coupling_strength", bath.coupling_strength),
        param("cutoff", bath.cutoff),
        param("n_modes", bath.n_modes),
        param("omega_max", bath.omega_max),
        param("temperature", bath.temperature),
        param("spectral_density", "ohmic"),
        param("pulse_prefactor", "4|g|^2/w^2"),
    ]
}

/// Free QND dephasing.
#[derive(Debug, Clone, Copy)]
pub struct QndFree {
    pub bath: BathSpectrum,
}

impl QndFree {
    pub fn new(bath: BathSpectrum) -> Result<Self> {
        bath.validate()?;
        Ok(Self { bath })
    }
}

impl ChannelFamily for QndFree {
    fn name(&self) -> &str {
        "qnd"
    }

    fn params(&self) -> ParamList {
        bath_params(&self.bath)
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        qnd_channel(gamma_free(&self.bath, t).map_err(|e| e.at_time(t))?)
    }

    fn no_sudden_death(&self) -> bool {
        true
    }

    fn concurrence(&self, t: f64) -> Result<f64> {
        Ok((-gamma_free(&self.bath, t).map_err(|e| e.at_time(t))?).exp())
    }
}

/// QND dephasing interrupted by `N` ideal π pulses, so that `t = 2NΔt`.
#[derive(Debug, Clone, Copy)]
pub struct QndPulsed {
    pub bath: BathSpectrum,
    pub schedule: PulseSchedule,
}

impl QndPulsed {
    pub fn new(bath: BathSpectrum, schedule: PulseSchedule) -> Result<Self> {
        bath.validate()?;
        schedule.validate()?;
        Ok(Self { bath, schedule })
    }

    fn gamma_at(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::domain(format!("t must be >= 0, got {t}")).at_time(t));
        }
        let n = (t / (2.0 * self.schedule.spacing)).round() as u64;
        let sched = PulseSchedule { n_pulses: n, ..self.schedule };
        gamma_pulsed(&self.bath, &sched).map_err(|e| e.at_time(t))
    }
}

impl ChannelFamily for QndPulsed {
    fn name(&self) -> &str {
        "qnd-pulsed"
    }

    fn params(&self) -> ParamList {
        let mut p = bath_params(&self.bath);
        p.push(param("spacing", self.schedule.spacing));
        p.push(param("pulse_duration", self.schedule.pulse_duration));
        p.push(param("strength", self.schedule.strength));
        p
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        qnd_channel(self.gamma_at(t)?)
    }

    fn no_sudden_death(&self) -> bool {
        true
    }

    fn time_quantum(&self) -> Option<f64> {
        Some(2.0 * self.schedule.spacing)
    }

    fn concurrence(&self, t: f64) -> Result<f64> {
        Ok((-self.gamma_at(t)?).exp())
    }
}
