// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter tables for every model and the families they build.

use esdlab_core::models::bandgap::{BandGap, BandGapParams};
use esdlab_core::models::decoupling::{BathSpectrum, PulseSchedule, QndFree, QndPulsed};
use esdlab_core::models::freqmod::{FreqMod, FreqModParams};
use esdlab_core::models::josephson::{
    ImpurityReduction, Josephson, JosephsonParams, JosephsonPulsed, PulseBasis,
};
use esdlab_core::models::resfluo::{ResFluo, ResFluoParams};
use esdlab_core::models::ChannelFamily;

use crate::config::Params;
use crate::CliError;

pub type Defaults = Vec<(&'static str, String)>;

pub const MODELS: &[&str] = &[
    "bandgap",
    "freqmod",
    "resfluo",
    "qnd",
    "qnd-pulsed",
    "josephson",
    "josephson-pulsed",
];

fn s(v: impl ToString) -> String {
    v.to_string()
}

pub fn freqmod_defaults() -> Defaults {
    let p = FreqModParams::default();
    vec![
        ("m", s(p.m)),
        ("nu", s(p.nu)),
        ("kappa", s(p.kappa_bath)),
        ("delta", s(p.delta)),
        ("c_mp", s(p.c_mp)),
        ("c_pm", s(p.c_pm)),
    ]
}

pub fn freqmod_params(p: &Params) -> Result<FreqModParams, CliError> {
    Ok(FreqModParams {
        m: p.f64("m")?,
        nu: p.f64("nu")?,
        kappa_bath: p.f64("kappa")?,
        delta: p.f64("delta")?,
        c_mp: p.f64("c_mp")?,
        c_pm: p.f64("c_pm")?,
    })
}

pub fn resfluo_defaults() -> Defaults {
    let p = ResFluoParams::default();
    vec![("omega", s(p.omega)), ("gamma0", s(p.gamma0)), ("N", s(p.n_thermal))]
}

pub fn resfluo_params(p: &Params) -> Result<ResFluoParams, CliError> {
    Ok(ResFluoParams {
        omega: p.f64("omega")?,
        gamma0: p.f64("gamma0")?,
        n_thermal: p.f64("N")?,
    })
}

pub fn bath_defaults() -> Defaults {
    let b = BathSpectrum::default();
    vec![
        ("coupling", s(b.coupling_strength)),
        ("cutoff", s(b.cutoff)),
        ("temperature", s(b.temperature)),
        ("n_modes", s(b.n_modes)),
        ("omega_max", "auto".into()),
    ]
}

/// `omega_max = auto` means 40 cutoffs.
pub fn bath(p: &Params) -> Result<BathSpectrum, CliError> {
    let mut b = BathSpectrum::ohmic(p.f64("coupling")?, p.f64("cutoff")?, p.f64("temperature")?);
    b.n_modes = p.usize("n_modes")?;
    if p.raw("omega_max") != "auto" {
        b.omega_max = p.f64("omega_max")?;
    }
    Ok(b)
}

pub fn schedule_defaults() -> Defaults {
    let d = PulseSchedule::default();
    vec![
        ("spacing", s(d.spacing)),
        ("pulse_duration", s(d.pulse_duration)),
        ("strength", s(d.strength)),
    ]
}

pub fn schedule(p: &Params) -> Result<PulseSchedule, CliError> {
    Ok(PulseSchedule {
        n_pulses: 0,
        spacing: p.f64("spacing")?,
        pulse_duration: p.f64("pulse_duration")?,
        strength: p.f64("strength")?,
    })
}

pub fn josephson_defaults() -> Defaults {
    let j = JosephsonParams::default();
    vec![
        ("epsilon", s(j.epsilon)),
        ("Ej", s(j.ej)),
        ("kappa", s(j.kappa())),
        ("gamma_sw", s(j.gamma_sw)),
        ("epsilon_c", s(j.epsilon_c)),
        ("beta", s(j.beta)),
        ("coherent_phases", s(j.include_coherent_phases)),
        ("impurity", "mixed".into()),
    ]
}

/// Josephson parameters with `v = κγ`.
pub fn josephson_params(p: &Params) -> Result<JosephsonParams, CliError> {
    let gamma_sw = p.f64("gamma_sw")?;
    Ok(JosephsonParams {
        epsilon: p.f64("epsilon")?,
        ej: p.f64("Ej")?,
        v: p.f64("kappa")? * gamma_sw,
        gamma_sw,
        epsilon_c: p.f64("epsilon_c")?,
        beta: p.f64("beta")?,
        include_coherent_phases: p.bool("coherent_phases")?,
    })
}

/// `impurity = mixed`, or the initial empty-level population in `[0, 1]`.
pub fn reduction(p: &Params) -> Result<ImpurityReduction, CliError> {
    match p.raw("impurity") {
        "mixed" => Ok(ImpurityReduction::MaximallyMixed),
        _ => {
            let p0 = p.f64("impurity")?;
            if !(0.0..=1.0).contains(&p0) {
                return Err(CliError::Config(format!("impurity population must lie in [0, 1], got {p0}")));
            }
            Ok(ImpurityReduction::Populations(p0))
        }
    }
}

pub fn basis(p: &Params) -> Result<PulseBasis, CliError> {
    match p.raw("basis") {
        "eigen" => Ok(PulseBasis::Eigen),
        "charge" => Ok(PulseBasis::Charge),
        v => Err(CliError::Config(format!("basis: expected eigen or charge, got {v:?}"))),
    }
}

/// Parameter table of a model for `eval`.
pub fn model_defaults(model: &str) -> Result<Defaults, CliError> {
    Ok(match model {
        "bandgap" => vec![("delta", s(BandGapParams::default().delta))],
        "freqmod" => freqmod_defaults(),
        "resfluo" => resfluo_defaults(),
        "qnd" => bath_defaults(),
        "qnd-pulsed" => {
            let mut d = bath_defaults();
            d.push(("spacing", s(PulseSchedule::default().spacing)));
            d
        }
        "josephson" => josephson_defaults(),
        "josephson-pulsed" => {
            let mut d = josephson_defaults();
            d.retain(|(k, _)| *k != "impurity");
            d.extend(schedule_defaults());
            d.push(("basis", "eigen".into()));
            d
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown model {other:?}; valid models: {}",
                MODELS.join(", ")
            )))
        }
    })
}

pub fn build_model(model: &str, p: &Params) -> Result<Box<dyn ChannelFamily>, CliError> {
    Ok(match model {
        "bandgap" => Box::new(BandGap::new(BandGapParams::with_delta(p.f64("delta")?))?),
        "freqmod" => Box::new(FreqMod::new(freqmod_params(p)?)?),
        "resfluo" => Box::new(ResFluo::new(resfluo_params(p)?)?),
        "qnd" => Box::new(QndFree::new(bath(p)?)?),
        "qnd-pulsed" => {
            let sched = PulseSchedule::with_pulses(0, p.f64("spacing")?);
            Box::new(QndPulsed::new(bath(p)?, sched)?)
        }
        "josephson" => Box::new(Josephson::with_reduction(josephson_params(p)?, reduction(p)?)?),
        "josephson-pulsed" => {
            Box::new(JosephsonPulsed::new(josephson_params(p)?, schedule(p)?, basis(p)?)?)
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown model {other:?}; valid models: {}",
                MODELS.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_model_builds_from_defaults() {
        for m in MODELS {
            let p = Params::new(m, &model_defaults(m).unwrap(), &[]).unwrap();
            let fam = build_model(m, &p).unwrap();
            assert_eq!(fam.name(), *m);
            assert!(fam.concurrence(0.0).unwrap() > 0.99);
        }
        assert!(model_defaults("nope").is_err());
    }

    #[test]
    fn josephson_kappa_scales_with_gamma() {
        let p = Params::new(
            "josephson",
            &josephson_defaults(),
            &[("gamma_sw".into(), "2".into()), ("kappa".into(), "0.5".into())],
        )
        .unwrap();
        assert_eq!(josephson_params(&p).unwrap().v, 1.0);
    }
}
