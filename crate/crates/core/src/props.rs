// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded randomized checks of the channel algebra and model invariants.
//!
//! [`prop_suite`] runs every check and returns a table. Checks flagged as
//! diagnostics are reported but never fail the suite.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::esd::{find_tesd, ZERO_THRESHOLD};
use crate::models::bandgap::{bandgap_c, BandGap, BandGapParams};
use crate::models::decoupling::{gamma_free, gamma_pulsed, BathSpectrum, PulseSchedule, QndFree};
use crate::models::freqmod::{freqmod_tesd, FreqMod, FreqModParams};
use crate::models::josephson::{Josephson, JosephsonParams};
use crate::models::resfluo::{ResFluo, ResFluoParams};
use crate::models::ChannelFamily;
use crate::numerics::{expm, frobenius, hermitian_deviation, identity, CMatrix};
use crate::quantum::{
    choi, concurrence, concurrence_general, factorization_check, partial_trace_first,
    partial_trace_second, random,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PropCheck {
    pub name: String,
    pub passed: bool,
    /// Reported only; never fails the suite.
    pub diagnostic: bool,
    /// Largest observed deviation, or the diagnostic value.
    pub worst: f64,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropReport {
    pub seed: u64,
    pub checks: Vec<PropCheck>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.diagnostic)
    }

    pub fn get(&self, name: &str) -> Option<&PropCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property suite, seed {}", self.seed)?;
        for c in &self.checks {
            let status = match (c.passed, c.diagnostic) {
                (true, _) => "PASS",
                (false, true) => "DIAG",
                (false, false) => "FAIL",
            };
            writeln!(
                f,
                "{status:<5}{:<34} worst={:<11.3e} {:>7.3}s  {}",
                c.name, c.worst, c.seconds, c.detail
            )?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "FAILED" })
    }
}

/// One entry of the factorization-law channel set: a family and the time
/// window it is sampled on.
pub struct SampledFamily {
    pub label: String,
    pub family: Box<dyn ChannelFamily>,
    pub horizon: f64,
}

/// Six completely positive families covering the Markovian and QND models.
pub fn factorization_families() -> Result<Vec<SampledFamily>> {
    let entry = |label: &str, family: Box<dyn ChannelFamily>, horizon: f64| SampledFamily {
        label: label.to_string(),
        family,
        horizon,
    };
    Ok(vec![
        entry("bandgap(delta=0)", Box::new(BandGap::new(BandGapParams::with_delta(0.0))?), 20.0),
        entry("bandgap(delta=-0.25)", Box::new(BandGap::new(BandGapParams::with_delta(-0.25))?), 20.0),
        entry("freqmod", Box::new(FreqMod::new(FreqModParams::default())?), 3.0),
        entry("resfluo(omega=0)", Box::new(ResFluo::new(ResFluoParams::default())?), 15.0),
        entry(
            "resfluo(omega=0.5)",
            Box::new(ResFluo::new(ResFluoParams { omega: 0.5, ..Default::default() })?),
            15.0,
        ),
        entry("qnd", Box::new(QndFree::new(BathSpectrum::default())?), 5.0),
    ])
}

/// Maximum `|lhs - rhs|` of the factorization law over `states` random pure
/// states, every family and `times` random times per family.
pub fn factorization_law(rng: &mut ChaCha8Rng, states: usize, times: usize) -> Result<(f64, usize)> {
    let families = factorization_families()?;
    let mut worst = 0.0_f64;
    let mut count = 0;
    for fam in &families {
        let channels = (0..times)
            .map(|_| fam.family.channel(rng.random_range(0.0..fam.horizon)))
            .collect::<Result<Vec<_>>>()?;
        for _ in 0..states {
            let chi = random::pure_state(rng, 4);
            for v in &channels {
                let (lhs, rhs) = factorization_check(v, &chi)?;
                worst = worst.max((lhs - rhs).abs());
                count += 1;
            }
        }
    }
    Ok((worst, count))
}

/// Worst deviations of the Choi states of the Markovian families from
/// `(Hermitian, unit trace, positive, Tr_out = I/2)`.
pub fn choi_physicality(rng: &mut ChaCha8Rng, times: usize) -> Result<[f64; 4]> {
    let mut worst = [0.0_f64; 4];
    for fam in factorization_families()? {
        for _ in 0..times {
            let t = rng.random_range(0.0..fam.horizon);
            let m = choi(&fam.family.channel(t)?)?;
            worst[0] = worst[0].max(hermitian_deviation(m.matrix()));
            worst[1] = worst[1].max((m.trace().re - 1.0).abs().max(m.trace().im.abs()));
            worst[2] = worst[2].max((-m.min_eigenvalue()?).max(0.0));
            let half = identity(2).mapv(|z| z * 0.5);
            worst[3] = worst[3].max(frobenius(&(partial_trace_second(m.matrix())? - &half)));
        }
    }
    Ok(worst)
}

/// Smallest Choi eigenvalue of the Redfield channel over a sample of
/// couplings, temperatures and times `t > 0`, as `(λ, κ, β, t)`.
pub fn redfield_cp_violation() -> Result<(f64, f64, f64, f64)> {
    let mut worst = (f64::INFINITY, 0.0, 0.0, 0.0);
    for &beta in &[1e4, 1.0] {
        for &kappa in &[0.05, 0.25, 0.45, 1.0, 5.05, 5.5] {
            let p = JosephsonParams { beta, ..JosephsonParams::default().with_kappa(kappa) };
            let fam = Josephson::new(p)?;
            for k in 1..=20 {
                let t = 0.5 * k as f64;
                let lam = choi(&fam.channel(t)?)?.min_eigenvalue()?;
                if lam < worst.0 {
                    worst = (lam, kappa, beta, t);
                }
            }
        }
    }
    Ok(worst)
}

fn record(
    checks: &mut Vec<PropCheck>,
    name: &str,
    diagnostic: bool,
    run: impl FnOnce() -> Result<(bool, f64, String)>,
) {
    let start = Instant::now();
    let (passed, worst, detail) = match run() {
        Ok(r) => r,
        Err(e) => (false, f64::NAN, format!("error: {e}")),
    };
    checks.push(PropCheck {
        name: name.to_string(),
        passed,
        diagnostic,
        worst,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    });
}

/// Runs every check with randomness drawn from `seed`.
pub fn prop_suite(seed: u64) -> PropReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    record(&mut checks, "expm semigroup", false, || {
        let mut worst = 0.0_f64;
        for _ in 0..10 {
            let a = CMatrix::from_shape_fn((16, 16), |_| {
                crate::c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) / 16.0
            });
            let (s, t) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
            let lhs = expm(&a, s)?.dot(&expm(&a, t)?);
            worst = worst.max(frobenius(&(lhs - expm(&a, s + t)?)));
        }
        Ok((worst <= 1e-9, worst, "10 random 16x16 generators".into()))
    });

    record(&mut checks, "factorization law", false, || {
        let (worst, n) = factorization_law(&mut rng, 100, 5)?;
        Ok((worst <= 1e-6, worst, format!("{n} (state, channel) pairs, 6 families")))
    });

    record(&mut checks, "choi physicality (markovian)", false, || {
        let w = choi_physicality(&mut rng, 20)?;
        let ok = w[0] <= 1e-10 && w[1] <= 1e-10 && w[2] <= 1e-8 && w[3] <= 1e-8;
        let worst = w.iter().copied().fold(0.0, f64::max);
        Ok((
            ok,
            worst,
            format!("herm {:.1e}, trace {:.1e}, neg {:.1e}, marginal {:.1e}", w[0], w[1], w[2], w[3]),
        ))
    });

    record(&mut checks, "concurrence routes agree", false, || {
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let rho = random::mixed_state(&mut rng, 4);
            worst = worst.max((concurrence(&rho)? - concurrence_general(&rho)?).abs());
        }
        Ok((worst <= 1e-9, worst, "1000 random mixed states".into()))
    });

    record(&mut checks, "trace preservation", false, || {
        let mut worst = 0.0_f64;
        let gens = [
            FreqMod::new(FreqModParams::default())?.generator().clone(),
            ResFluo::new(ResFluoParams::default())?.generator().clone(),
            ResFluo::new(ResFluoParams { omega: 0.5, ..Default::default() })?.generator().clone(),
        ];
        for g in &gens {
            for _ in 0..20 {
                let v = g.exp(rng.random_range(0.0..20.0))?;
                let rho = random::mixed_state(&mut rng, 2);
                let out = v.apply_matrix(rho.matrix())?;
                worst = worst.max((crate::numerics::trace(&out) - crate::c64(1.0, 0.0)).norm());
            }
        }
        Ok((worst <= 1e-9, worst, "3 generators x 20 times".into()))
    });

    record(&mut checks, "bandgap concurrence = |c|", false, || {
        let mut worst = 0.0_f64;
        for &delta in &[0.0, -0.1, -0.25] {
            let fam = BandGap::new(BandGapParams::with_delta(delta))?;
            for k in 0..=40 {
                let tau = 0.5 * k as f64;
                let c = bandgap_c(delta, tau)?.norm();
                worst = worst.max((fam.concurrence(tau)? - c).abs());
            }
        }
        Ok((worst <= 1e-8, worst, "delta in {0, -0.1, -0.25}, tau in [0, 20]".into()))
    });

    record(&mut checks, "freqmod t_esd bracket", false, || {
        let mut worst = 0.0_f64;
        let mut ok = true;
        for k in 0..5 {
            let params = FreqModParams { nu: 2.0 * k as f64, ..Default::default() };
            let fam = FreqMod::new(params)?;
            let exact = freqmod_tesd(&params)?;
            let r = find_tesd(&fam, 4.0 * exact)?;
            let (lo, hi) = r.bracket.unwrap_or((f64::NAN, f64::NAN));
            ok &= fam.concurrence(lo)? > ZERO_THRESHOLD && fam.concurrence(hi)? <= ZERO_THRESHOLD;
            worst = worst.max((r.t_esd().unwrap_or(f64::NAN) - exact).abs() / exact);
        }
        Ok((ok && worst <= 1e-6, worst, "bisection vs closed form, nu in {0..8}".into()))
    });

    record(&mut checks, "qnd pulsed <= free", false, || {
        let mut violations = 0;
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..20 {
            let bath = BathSpectrum::ohmic(
                rng.random_range(0.01..0.2),
                rng.random_range(0.5..2.0),
                rng.random_range(0.0..1.0),
            );
            let dt = rng.random_range(0.01..0.1) / bath.cutoff;
            for n in [1u64, 2, 5, 10, 20, 50] {
                let gp = gamma_pulsed(&bath, &PulseSchedule::with_pulses(n, dt))?;
                let gf = gamma_free(&bath, 2.0 * n as f64 * dt)?;
                worst = worst.max(gp - gf);
                if gp > gf + 1e-12 {
                    violations += 1;
                }
            }
        }
        Ok((violations == 0, worst, format!("{violations} violations, 20 baths x 6 pulse counts")))
    });

    record(&mut checks, "qnd no sudden death", false, || {
        let fam = QndFree::new(BathSpectrum::default())?;
        let least = (0..=100)
            .map(|k| fam.concurrence(k as f64))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        Ok((least > 0.0, least, "min concurrence on t in [0, 100]".into()))
    });

    record(&mut checks, "josephson trace/hermiticity", false, || {
        let mut worst = 0.0_f64;
        for &kappa in &[0.05, 0.45, 5.05] {
            let fam = Josephson::new(JosephsonParams::default().with_kappa(kappa))?;
            for _ in 0..5 {
                let v = fam.channel(rng.random_range(0.0..10.0))?;
                let rho = random::mixed_state(&mut rng, 2);
                let out = v.apply_matrix(rho.matrix())?;
                worst = worst
                    .max((crate::numerics::trace(&out) - crate::c64(1.0, 0.0)).norm())
                    .max(hermitian_deviation(&out));
            }
        }
        Ok((worst <= 1e-8, worst, "kappa in {0.05, 0.45, 5.05}".into()))
    });

    record(&mut checks, "josephson decoupled limit", false, || {
        let fam = Josephson::new(JosephsonParams { v: 0.0, ..Default::default() })?;
        let mut worst = 0.0_f64;
        for k in 0..=20 {
            worst = worst.max((fam.concurrence(0.5 * k as f64)? - 1.0).abs());
        }
        Ok((worst <= 1e-6, worst, "v = 0, t in [0, 10]".into()))
    });

    record(&mut checks, "choi marginal of redfield", false, || {
        let fam = Josephson::new(JosephsonParams::default())?;
        let half = identity(2).mapv(|z| z * 0.5);
        let mut worst = 0.0_f64;
        for k in 0..=10 {
            let m = choi(&fam.channel(k as f64)?)?;
            worst = worst.max(frobenius(&(partial_trace_first(m.matrix())? - &half)).min(
                frobenius(&(partial_trace_second(m.matrix())? - &half)),
            ));
        }
        Ok((worst <= 1e-8, worst, "one marginal of the Choi state is I/2".into()))
    });

    record(&mut checks, "redfield complete positivity", true, || {
        let (lam, kappa, beta, t) = redfield_cp_violation()?;
        Ok((
            lam >= -1e-8,
            lam,
            format!("smallest Choi eigenvalue at kappa={kappa}, beta={beta}, t={t}"),
        ))
    });

    PropReport { seed, checks }
}
