// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Josephson charge qubit coupled to one background-charge impurity that
//! switches between its two charge states at rate `γ` (telegraph noise).
//!
//! The qubit and the impurity level are treated together as a four-level
//! system with eigenstates
//!
//! ```text
//! |a⟩ = |θ+⟩|0⟩   |b⟩ = |θ-⟩|0⟩   |c⟩ = |θ'+⟩|1⟩   |d⟩ = |θ'-⟩|1⟩
//! ```
//!
//! evolving under a Redfield tensor. The fermionic band is eliminated
//! perturbatively and the impurity is traced out at the end. Pulses act on
//! the qubit only.

use std::f64::consts::PI;

use log::debug;
use num_complex::Complex64;

use super::decoupling::PulseSchedule;
use super::{param, ChannelFamily, ParamList};
use crate::error::{Error, Result};
use crate::numerics::{c64, dagger, digamma_complex, matpow, CMatrix};
use crate::quantum::{
    block_trace, permute_middle, reduce_with_impurity_state, sigma_x, Superoperator,
};

/// Position of the labels a, b, c, d in qubit⊗impurity order (`2q + n`).
const KRON_POS: [usize; 4] = [0, 2, 1, 3];
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JosephsonParams {
    /// Charge bias `ε`.
    pub epsilon: f64,
    /// Josephson energy `E_j`.
    pub ej: f64,
    /// Extra bias `v` produced by the occupied impurity.
    pub v: f64,
    /// Impurity switching rate `γ`.
    pub gamma_sw: f64,
    /// Impurity level `ε_c`.
    pub epsilon_c: f64,
    /// Inverse temperature; large values stand in for zero temperature.
    pub beta: f64,
    /// Adds the free precession `-iω_ij` of the coherences to the tensor.
    pub include_coherent_phases: bool,
}

impl Default for JosephsonParams {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            ej: 1.0,
            v: 0.45,
            gamma_sw: 1.0,
            epsilon_c: 0.0,
            beta: 1e4,
            include_coherent_phases: true,
        }
    }
}

impl JosephsonParams {
    /// Coupling ratio `κ = v/γ`.
    pub fn kappa(&self) -> f64 {
        self.v / self.gamma_sw
    }

    /// Same parameters with `v = κγ`.
    pub fn with_kappa(self, kappa: f64) -> Self {
        Self {
            v: kappa * self.gamma_sw,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_sw > 0.0) || !self.gamma_sw.is_finite() {
            return Err(Error::invalid("gamma_sw must be positive"));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::invalid("beta must be positive and finite"));
        }
        if !(self.ej >= 0.0) || !(self.v >= 0.0) {
            return Err(Error::invalid("Ej and v must be >= 0"));
        }
        if !self.epsilon.is_finite() || !self.epsilon_c.is_finite() || !self.ej.is_finite() || !self.v.is_finite() {
            return Err(Error::invalid("Josephson parameters must be finite"));
        }
        Ok(())
    }

    fn metadata(&self) -> ParamList {
        vec![
            param("epsilon", self.epsilon),
            param("Ej", self.ej),
            param("v", self.v),
            param("gamma_sw", self.gamma_sw),
            param("kappa", self.kappa()),
            param("epsilon_c", self.epsilon_c),
            param("beta", self.beta),
            param("coherent_phases", self.include_coherent_phases),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstructure {
    /// Energies of a, b, c, d.
    pub energies: [f64; 4],
    pub theta: f64,
    pub theta_prime: f64,
    /// Splitting with the impurity empty.
    pub omega: f64,
    /// Splitting with the impurity occupied.
    pub omega_prime: f64,
}

pub fn eigenstructure(p: &JosephsonParams) -> Result<Eigenstructure> {
    p.validate()?;
    let omega = p.epsilon.hypot(p.ej);
    let omega_prime = (p.epsilon + p.v).hypot(p.ej);
    if omega == 0.0 || omega_prime == 0.0 {
        return Err(Error::Degenerate("qubit splitting vanishes (epsilon = Ej = 0)".into()));
    }
    Ok(Eigenstructure {
        energies: [
            -omega / 2.0,
            omega / 2.0,
            -omega_prime / 2.0 + p.epsilon_c,
            omega_prime / 2.0 + p.epsilon_c,
        ],
        theta: p.ej.atan2(p.epsilon),
        theta_prime: p.ej.atan2(p.epsilon + p.v),
        omega,
        omega_prime,
    })
}

/// Scalar ingredients of the Redfield tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct RedfieldElements {
    pub c: f64,
    pub s: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub w: f64,
    pub w_prime: f64,
    pub z_minus: Complex64,
    pub z_plus: Complex64,
    pub y_plus: Complex64,
    pub y_minus: Complex64,
    /// `R_{ii,nn}` over the labels a, b, c, d.
    pub population_block: [[f64; 4]; 4],
}

/// Tunnelling rate `iG^>(ω) = γ/(1 - e^{-βω})`; at `|βω| < 1e-8` the
/// symmetric value `γ/2` is used.
pub fn tunnelling_rate(gamma: f64, beta: f64, w: f64) -> f64 {
    let x = beta * w;
    if x.abs() < 1e-8 {
        gamma / 2.0
    } else {
        gamma / -(-x).exp_m1()
    }
}

fn t_coefficient(beta: f64, w: f64) -> f64 {
    0.5 * (beta * w / 2.0).tanh()
}

fn w_coefficient(beta: f64, w: f64) -> Result<f64> {
    let z = c64(PI, beta * w) / (2.0 * PI);
    Ok(-digamma_complex(z)?.re / PI)
}

pub fn redfield_elements(p: &JosephsonParams) -> Result<RedfieldElements> {
    let es = eigenstructure(p)?;
    let e = es.energies;
    let om = |i: usize, j: usize| e[i] - e[j];
    let half = (es.theta - es.theta_prime) / 2.0;
    let (c, s) = (half.cos(), half.sin());
    let (c2, s2) = (c * c, s * s);

    let mut chi = [[0.0; 4]; 4];
    for (i, j, x) in [(A, C, c2), (B, D, c2), (A, D, s2), (B, C, s2)] {
        chi[i][j] = x;
        chi[j][i] = x;
    }
    let g = p.gamma_sw;
    let mut pop = [[0.0; 4]; 4];
    for i in 0..4 {
        for n in 0..4 {
            if n != i {
                pop[i][n] = chi[i][n] * tunnelling_rate(g, p.beta, om(n, i));
                pop[i][i] -= chi[i][n] * tunnelling_rate(g, p.beta, om(i, n));
            }
        }
    }

    let beta = p.beta;
    let delta = t_coefficient(beta, om(C, A)) + t_coefficient(beta, om(D, B));
    let delta_prime = t_coefficient(beta, om(D, A)) + t_coefficient(beta, om(C, B));
    let w_cb = w_coefficient(beta, om(C, B))?;
    let w = w_coefficient(beta, om(C, A))? - w_cb;
    let w_prime = w_coefficient(beta, om(D, A))? - w_cb;

    let z_minus = c64(1.0 - c2 * delta - s2 * delta_prime, c2 * w + s2 * w_prime) * (-g / 2.0);
    let z_plus = c64(1.0 + c2 * delta + s2 * delta_prime, c2 * w - s2 * w_prime) * (-g / 2.0);
    let y_plus = c64(1.0 + delta, -w) * (c2 * g / 2.0);
    let y_minus = c64(1.0 - delta, -w) * (c2 * g / 2.0);

    Ok(RedfieldElements {
        c,
        s,
        delta,
        delta_prime,
        w,
        w_prime,
        z_minus,
        z_plus,
        y_plus,
        y_minus,
        population_block: pop,
    })
}

/// The 16×16 tensor over vec indices `4i + j` of the labels a, b, c, d.
pub fn redfield_tensor_labels(p: &JosephsonParams) -> Result<CMatrix> {
    let es = eigenstructure(p)?;
    let el = redfield_elements(p)?;
    let idx = |i: usize, j: usize| 4 * i + j;
    let mut r = CMatrix::zeros((16, 16));
    for i in 0..4 {
        for n in 0..4 {
            r[[idx(i, i), idx(n, n)]] = c64(el.population_block[i][n], 0.0);
        }
    }
    let (ab, ba, cd, dc) = (idx(A, B), idx(B, A), idx(C, D), idx(D, C));
    r[[ab, ab]] = el.z_minus;
    r[[ab, cd]] = el.y_plus;
    r[[cd, ab]] = el.y_minus;
    r[[cd, cd]] = el.z_plus;
    r[[ba, ba]] = el.z_minus.conj();
    r[[ba, dc]] = el.y_plus.conj();
    r[[dc, ba]] = el.y_minus.conj();
    r[[dc, dc]] = el.z_plus.conj();
    if p.include_coherent_phases {
        let e = es.energies;
        for (i, j) in [(A, B), (B, A), (C, D), (D, C)] {
            r[[idx(i, j), idx(i, j)]] += c64(0.0, -(e[i] - e[j]));
        }
    }
    Ok(r)
}

/// The Redfield generator in qubit⊗impurity order, ready for
/// [`permute_middle`] and [`block_trace`].
pub fn redfield_generator(p: &JosephsonParams) -> Result<Superoperator> {
    let labels = redfield_tensor_labels(p)?;
    let pos = |v: usize| 4 * KRON_POS[v / 4] + KRON_POS[v % 4];
    let mut r = CMatrix::zeros((16, 16));
    for ((row, col), &x) in labels.indexed_iter() {
        r[[pos(row), pos(col)]] = x;
    }
    Superoperator::new(r, true)
}

/// How the impurity is eliminated from the 16×16 evolution.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ImpurityReduction {
    /// Normalized block trace, equivalent to a maximally mixed initial impurity.
    #[default]
    MaximallyMixed,
    /// Diagonal initial impurity state with the given empty-level population.
    Populations(f64),
}

fn reduce(v: &Superoperator, reduction: ImpurityReduction) -> Result<Superoperator> {
    let permuted = permute_middle(v)?;
    match reduction {
        ImpurityReduction::MaximallyMixed => block_trace(&permuted),
        ImpurityReduction::Populations(p0) => {
            let mut sigma = CMatrix::zeros((2, 2));
            sigma[[0, 0]] = c64(p0, 0.0);
            sigma[[1, 1]] = c64(1.0 - p0, 0.0);
            reduce_with_impurity_state(&permuted, &sigma)
        }
    }
}

/// Qubit channel `V_s(t)` from `exp(Rt)` by permutation and block trace.
pub fn reduced_qubit_channel(p: &JosephsonParams, t: f64) -> Result<Superoperator> {
    Josephson::new(*p)?.channel(t)
}

/// Basis in which the π pulse is a σx rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PulseBasis {
    /// The qubit energy eigenbasis, in which the tensor is written.
    #[default]
    Eigen,
    /// The charge basis of `H_Q = (ε/2)σz - (E_j/2)σx`.
    Charge,
}

/// Qubit unitary of one π pulse, written in the eigenbasis.
pub fn pulse_unitary(p: &JosephsonParams, basis: PulseBasis) -> Result<CMatrix> {
    match basis {
        PulseBasis::Eigen => Ok(sigma_x()),
        PulseBasis::Charge => {
            let es = eigenstructure(p)?;
            let (ch, sh) = ((es.theta / 2.0).cos(), (es.theta / 2.0).sin());
            let w = CMatrix::from_shape_vec(
                (2, 2),
                vec![c64(ch, 0.0), c64(-sh, 0.0), c64(sh, 0.0), c64(ch, 0.0)],
            )
            .expect("2x2");
            Ok(dagger(&w).dot(&sigma_x()).dot(&w))
        }
    }
}

/// Pulse count `2N` with `2NΔt` closest to `t`.
fn pulse_count(t: f64, spacing: f64) -> u64 {
    let n = (t / (2.0 * spacing)).round().max(0.0) as u64;
    let dev = (2.0 * n as f64 * spacing - t).abs();
    if dev > 1e-9 * t.max(1.0) {
        debug!("pulse train: t = {t} rounded to {} ({} pulses)", 2.0 * n as f64 * spacing, 2 * n);
    }
    2 * n
}

/// `(V_p V_s(Δt))^{2N}` with `2NΔt ≈ t`.
pub fn pulsed_channel(
    p: &JosephsonParams,
    schedule: &PulseSchedule,
    t: f64,
) -> Result<Superoperator> {
    JosephsonPulsed::new(*p, *schedule, PulseBasis::Eigen)?.channel(t)
}

/// Free evolution of the charge qubit.
#[derive(Debug, Clone)]
pub struct Josephson {
    pub params: JosephsonParams,
    pub reduction: ImpurityReduction,
    generator: Superoperator,
}

impl Josephson {
    pub fn new(params: JosephsonParams) -> Result<Self> {
        Self::with_reduction(params, ImpurityReduction::default())
    }

    pub fn with_reduction(params: JosephsonParams, reduction: ImpurityReduction) -> Result<Self> {
        let generator = redfield_generator(&params)?;
        Ok(Self {
            params,
            reduction,
            generator,
        })
    }

    /// The 16×16 generator in qubit⊗impurity order.
    pub fn generator(&self) -> &Superoperator {
        &self.generator
    }

    /// Reduces an arbitrary 16×16 evolution with this family's reduction.
    pub fn reduce(&self, v: &Superoperator) -> Result<Superoperator> {
        reduce(v, self.reduction)
    }
}

impl ChannelFamily for Josephson {
    fn name(&self) -> &str {
        "josephson"
    }

    fn params(&self) -> ParamList {
        let mut m = self.params.metadata();
        m.push(param("reduction", format!("{:?}", self.reduction)));
        m
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        if !(t >= 0.0) {
            return Err(Error::domain("t must be >= 0").at_time(t));
        }
        let v = self.generator.exp(t).map_err(|e| e.at_time(t))?;
        reduce(&v, self.reduction)
    }

    fn completely_positive(&self) -> bool {
        false
    }
}

/// Charge qubit under a bang-bang train of π pulses at spacing `Δt`.
#[derive(Debug, Clone)]
pub struct JosephsonPulsed {
    pub params: JosephsonParams,
    pub schedule: PulseSchedule,
    pub basis: PulseBasis,
    step: CMatrix,
}

impl JosephsonPulsed {
    pub fn new(params: JosephsonParams, schedule: PulseSchedule, basis: PulseBasis) -> Result<Self> {
        schedule.validate()?;
        if !schedule.is_pi_pulse() {
            return Err(Error::domain(format!(
                "pulses are not pi pulses: 2 U tau_p = {}",
                2.0 * schedule.strength * schedule.pulse_duration
            )));
        }
        let free = Josephson::new(params)?.channel(schedule.spacing)?;
        let pulse = Superoperator::unitary(&pulse_unitary(&params, basis)?)?;
        let step = pulse.compose(&free)?.into_matrix();
        Ok(Self {
            params,
            schedule,
            basis,
            step,
        })
    }

    /// One pulse interval: free evolution for `Δt`, then a pulse.
    pub fn step(&self) -> &CMatrix {
        &self.step
    }
}

impl ChannelFamily for JosephsonPulsed {
    fn name(&self) -> &str {
        "josephson-pulsed"
    }

    fn params(&self) -> ParamList {
        let mut m = self.params.metadata();
        m.push(param("spacing", self.schedule.spacing));
        m.push(param("pulse_duration", self.schedule.pulse_duration));
        m.push(param("strength", self.schedule.strength));
        m.push(param("pulse_basis", format!("{:?}", self.basis)));
        m
    }

    fn channel(&self, t: f64) -> Result<Superoperator> {
        if !(t >= 0.0) {
            return Err(Error::domain("t must be >= 0").at_time(t));
        }
        let n = pulse_count(t, self.schedule.spacing);
        Superoperator::new(matpow(&self.step, n), true)
    }

    fn completely_positive(&self) -> bool {
        false
    }

    fn time_quantum(&self) -> Option<f64> {
        Some(2.0 * self.schedule.spacing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frobenius, identity};
    use crate::quantum::{choi, concurrence_lenient};

    #[test]
    fn angles_at_special_points() {
        let p = JosephsonParams { v: 0.0, ..Default::default() };
        let es = eigenstructure(&p).unwrap();
        assert_eq!(es.theta, es.theta_prime);
        assert_eq!(es.omega, es.omega_prime);
        let dephasing = eigenstructure(&JosephsonParams { ej: 0.0, ..Default::default() }).unwrap();
        assert_eq!(dephasing.theta, 0.0);
        let degeneracy = eigenstructure(&JosephsonParams { epsilon: 0.0, ..Default::default() }).unwrap();
        assert!((degeneracy.theta - PI / 2.0).abs() < 1e-15);
        let bad = JosephsonParams { epsilon: 0.0, ej: 0.0, ..Default::default() };
        assert!(matches!(eigenstructure(&bad), Err(Error::Degenerate(_))));
    }

    #[test]
    fn population_block_conserves_probability() {
        for p in [
            JosephsonParams::default(),
            JosephsonParams { beta: 2.0, epsilon_c: 0.3, ..Default::default() },
            JosephsonParams::default().with_kappa(5.2),
        ] {
            let el = redfield_elements(&p).unwrap();
            assert!((el.c * el.c + el.s * el.s - 1.0).abs() < 1e-12);
            for n in 0..4 {
                let col: f64 = (0..4).map(|i| el.population_block[i][n]).sum();
                assert!(col.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rate_limits() {
        assert_eq!(tunnelling_rate(1.0, 1e4, 0.0), 0.5);
        assert!((tunnelling_rate(1.0, 1e4, 1.0) - 1.0).abs() < 1e-15);
        assert!(tunnelling_rate(1.0, 1e4, -1.0).abs() < 1e-300);
    }

    #[test]
    fn decoupled_limit_is_unitary() {
        let fam = Josephson::new(JosephsonParams { v: 0.0, ..Default::default() }).unwrap();
        for t in [0.0, 1.0, 4.0, 10.0] {
            let c = concurrence_lenient(&choi(&fam.channel(t).unwrap()).unwrap()).unwrap();
            assert!((c - 1.0).abs() < 1e-6, "t = {t}: {c}");
        }
        assert!(frobenius(&(fam.channel(0.0).unwrap().into_matrix() - identity(4))) < 1e-14);
    }

    #[test]
    fn reduced_channel_preserves_trace() {
        let fam = Josephson::new(JosephsonParams::default()).unwrap();
        for t in [0.5, 5.0, 20.0] {
            assert!(fam.channel(t).unwrap().trace_defect() < 1e-8);
        }
    }

    #[test]
    fn pulses() {
        let p = JosephsonParams { v: 0.0, ..Default::default() };
        let sched = PulseSchedule::default();
        let fam = JosephsonPulsed::new(p, sched, PulseBasis::Eigen).unwrap();
        assert!(frobenius(&(fam.channel(0.0).unwrap().into_matrix() - identity(4))) < 1e-15);
        let two = fam.channel(2.0 * sched.spacing).unwrap();
        let c = concurrence_lenient(&choi(&two).unwrap()).unwrap();
        assert!((c - 1.0).abs() < 1e-9);
        let not_pi = PulseSchedule { strength: 10.0, ..sched };
        assert!(matches!(JosephsonPulsed::new(p, not_pi, PulseBasis::Eigen), Err(Error::Domain(_))));
        let u = pulse_unitary(&JosephsonParams::default(), PulseBasis::Charge).unwrap();
        assert!(frobenius(&(u.dot(&u) - identity(2))) < 1e-14);
    }

    #[test]
    fn literal_tensor_omits_precession() {
        let with = redfield_tensor_labels(&JosephsonParams::default()).unwrap();
        let without = redfield_tensor_labels(&JosephsonParams {
            include_coherent_phases: false,
            ..Default::default()
        })
        .unwrap();
        let es = eigenstructure(&JosephsonParams::default()).unwrap();
        assert!(((with[[1, 1]] - without[[1, 1]]) - c64(0.0, es.omega)).norm() < 1e-14);
    }
}
