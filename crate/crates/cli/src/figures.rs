// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Figure reproductions. Each figure owns a parameter table and produces
//! one or more artifacts.

use esdlab_core::esd::{linspace, sweep, trace_concurrence, EsdOutcome, EsdResult, SweepResult, SweepTask};
use esdlab_core::models::bandgap::{BandGap, BandGapParams};
use esdlab_core::models::decoupling::QndFree;
use esdlab_core::models::freqmod::{freqmod_tesd, FreqMod, FreqModParams};
use esdlab_core::models::josephson::{Josephson, JosephsonParams, JosephsonPulsed};
use esdlab_core::models::resfluo::{ResFluo, ResFluoParams};
use esdlab_core::models::ChannelFamily;
use log::warn;
use rayon::prelude::*;

use crate::config::Params;
use crate::models::{self, Defaults};
use crate::output::{Artifact, Plot, Row, Series, Table};
use crate::CliError;

pub const FIGURES: &[&str] = &[
    "bandgap",
    "freqmod",
    "resfluo",
    "josephson-contour",
    "dephasing-compare",
    "kappa-sweeps",
    "bangbang",
];

fn s(v: impl ToString) -> String {
    v.to_string()
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{}", (x * 1e12).round() / 1e12)).collect::<Vec<_>>().join(",")
}

pub fn defaults(name: &str) -> Result<Defaults, CliError> {
    let bg = BandGapParams::default();
    Ok(match name {
        "bandgap" => vec![
            ("deltas", "0,-0.1,-0.25".into()),
            ("tau_max", s(bg.tau_max)),
            ("tau_step", s(bg.tau_step)),
            ("taus", "auto".into()),
        ],
        "freqmod" => {
            let mut d = models::freqmod_defaults();
            d.retain(|(k, _)| *k != "nu");
            d.extend([
                ("nu_min", s(0.0)),
                ("nu_max", s(9.5)),
                ("nu_points", s(20)),
                ("horizon", s(1e4)),
            ]);
            d
        }
        "resfluo" => {
            let mut d = models::resfluo_defaults();
            d.retain(|(k, _)| *k != "omega");
            d.extend([
                ("omegas", "0,0.1,0.2,0.3,0.4,0.5".into()),
                ("t_max", s(30)),
                ("t_step", s(0.1)),
                ("horizon", s(200)),
            ]);
            d
        }
        "josephson-contour" => {
            let mut d = models::josephson_defaults();
            d.retain(|(k, _)| !matches!(*k, "epsilon" | "Ej"));
            d.extend([("t", s(5)), ("points", s(21))]);
            d
        }
        "dephasing-compare" => {
            let mut d = models::josephson_defaults();
            for (k, v) in d.iter_mut() {
                if *k == "Ej" {
                    *v = s(0);
                }
            }
            d.extend(models::bath_defaults());
            d.extend([("t_max", s(10)), ("t_step", s(0.05))]);
            d
        }
        "kappa-sweeps" => {
            let mut d = models::josephson_defaults();
            d.retain(|(k, _)| *k != "kappa");
            d.extend([
                ("weak_kappas", list(&linspace(0.05, 0.5, 10))),
                ("strong_kappas", list(&linspace(5.05, 5.5, 10))),
                ("t_max", s(10)),
                ("t_step", s(0.05)),
            ]);
            d
        }
        "bangbang" => {
            let mut d = models::josephson_defaults();
            d.retain(|(k, _)| !matches!(*k, "impurity"));
            for (k, v) in d.iter_mut() {
                if *k == "kappa" {
                    *v = s(0.38);
                }
            }
            d.extend(models::schedule_defaults());
            d.extend([
                ("basis", "eigen".into()),
                ("weak_kappas", list(&linspace(0.1, 0.5, 5))),
                ("strong_kappas", list(&linspace(5.05, 5.5, 4))),
                ("kink_kappas", list(&linspace(0.3, 0.4, 11))),
                ("crossover_kappas", list(&linspace(0.05, 0.6, 12))),
                ("ejs", "0,0.25,0.5,0.75,1".into()),
                ("t_max_weak", s(1000)),
                ("t_max_strong", s(20)),
                ("trace_points", s(201)),
                ("horizon", s(20000)),
            ]);
            d
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown figure {other:?}; valid figures: {}",
                FIGURES.join(", ")
            )))
        }
    })
}

pub fn run(name: &str, p: &Params) -> Result<Vec<Artifact>, CliError> {
    match name {
        "bandgap" => bandgap(p),
        "freqmod" => freqmod(p),
        "resfluo" => resfluo(p),
        "josephson-contour" => josephson_contour(p),
        "dephasing-compare" => dephasing_compare(p),
        "kappa-sweeps" => kappa_sweeps(p),
        "bangbang" => bangbang(p),
        other => Err(CliError::Config(format!(
            "unknown figure {other:?}; valid figures: {}",
            FIGURES.join(", ")
        ))),
    }
}

fn table(model: &str, p: &Params, extra: &[(&str, String)], series_name: Option<&str>) -> Table {
    let mut params = p.entries().to_vec();
    params.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    Table {
        model: model.to_string(),
        params,
        series_name: series_name.map(str::to_string),
        rows: Vec::new(),
    }
}

fn line(stem: &str, title: &str, table: Table, x: &str, y: &str) -> Artifact {
    Artifact {
        stem: stem.to_string(),
        title: title.to_string(),
        table,
        plot: Plot::Line { x_label: x.into(), y_label: y.into() },
    }
}

/// Time grid `0, dt, ..., t_max`.
fn time_grid(p: &Params, max_key: &str, step_key: &str) -> Result<Vec<f64>, CliError> {
    let (t_max, dt) = (p.f64(max_key)?, p.f64(step_key)?);
    if !(t_max >= 0.0) || !(dt > 0.0) {
        return Err(CliError::Config(format!("{max_key} must be >= 0 and {step_key} > 0")));
    }
    let n = (t_max / dt).round() as usize;
    Ok(linspace(0.0, t_max, n + 1))
}

fn tesd_value(r: Option<&EsdResult>) -> f64 {
    match r.map(|r| r.outcome) {
        Some(EsdOutcome::Finite(t)) => t,
        Some(EsdOutcome::None) | Some(EsdOutcome::BeyondHorizon) => f64::INFINITY,
        None => f64::NAN,
    }
}

/// Appends one row per trace sample, with the sweep value as series.
fn push_traces(t: &mut Table, res: &SweepResult) {
    for pt in &res.points {
        match &pt.trace {
            Some(tr) => t.rows.extend(tr.times.iter().zip(&tr.values).map(|(&x, &y)| Row {
                x,
                y,
                series: Some(Series::Num(pt.x)),
            })),
            None => warn!("{} = {}: {}", res.parameter, pt.x, pt.error.as_deref().unwrap_or("no trace")),
        }
    }
}

fn push_tesd(t: &mut Table, res: &SweepResult, series: Option<Series>) {
    for pt in &res.points {
        if let Some(e) = &pt.error {
            warn!("{} = {}: {e}", res.parameter, pt.x);
        }
        t.rows.push(Row { x: pt.x, y: tesd_value(pt.tesd.as_ref()), series: series.clone() });
    }
}

fn bandgap(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let base = BandGapParams { tau_max: p.f64("tau_max")?, tau_step: p.f64("tau_step")?, ..Default::default() };
    let taus = if p.raw("taus") == "auto" { None } else { Some(p.list("taus")?) };
    let mut out = Vec::new();
    for delta in p.list("deltas")? {
        let params = BandGapParams { delta, ..base };
        let fam = BandGap::new(params)?;
        let grid = match &taus {
            Some(t) => t.clone(),
            None => params.tau_grid(),
        };
        let tr = trace_concurrence(&fam, &grid)?;
        let extrapolated = !(-0.25..=0.0).contains(&delta);
        let mut t = table(
            "bandgap",
            p,
            &[("delta", s(delta)), ("extrapolated", s(extrapolated))],
            None,
        );
        t.rows = tr.times.iter().zip(&tr.values).map(|(&x, &y)| Row { x, y, series: None }).collect();
        out.push(line(
            &format!("bandgap_delta_{delta}"),
            &format!("band gap, delta = {delta}"),
            t,
            "tau",
            "concurrence",
        ));
    }
    Ok(out)
}

fn freqmod(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let fixed = models::freqmod_params(&Params::new(
        "fig freqmod",
        &models::freqmod_defaults(),
        &p.entries().iter().filter(|(k, _)| models::freqmod_defaults().iter().any(|(d, _)| d == k)).cloned().collect::<Vec<_>>(),
    )?)?;
    let n = p.usize("nu_points")?;
    if n == 0 {
        return Err(CliError::Config("nu_points must be positive".into()));
    }
    let grid = linspace(p.f64("nu_min")?, p.f64("nu_max")?, n);
    let make = |nu| FreqMod::new(FreqModParams { nu, ..fixed });
    let res = sweep("nu", &grid, make, &SweepTask::Tesd { horizon: p.f64("horizon")? })?;
    let mut t = table("freqmod", p, &[], None);
    push_tesd(&mut t, &res, Some(Series::Label("numeric".into())));
    for &nu in &grid {
        let y = freqmod_tesd(&FreqModParams { nu, ..fixed }).unwrap_or(f64::NAN);
        t.rows.push(Row { x: nu, y, series: Some(Series::Label("closed-form".into())) });
    }
    Ok(vec![line("freqmod_tesd", "sudden-death time vs modulation frequency", t, "nu", "t_ESD")])
}

fn resfluo(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let base = ResFluoParams { omega: 0.0, gamma0: p.f64("gamma0")?, n_thermal: p.f64("N")? };
    let omegas = p.list("omegas")?;
    let make = |omega| ResFluo::new(ResFluoParams { omega, ..base });
    let task = SweepTask::Both { horizon: p.f64("horizon")?, times: time_grid(p, "t_max", "t_step")? };
    let res = sweep("omega", &omegas, make, &task)?;
    let mut traces = table("resfluo", p, &[], Some("omega"));
    push_traces(&mut traces, &res);
    let mut tesd = table("resfluo", p, &[], None);
    push_tesd(&mut tesd, &res, None);
    Ok(vec![
        line("resfluo_traces", "resonance fluorescence", traces, "t", "concurrence"),
        line("resfluo_tesd", "sudden-death time vs drive", tesd, "Omega", "t_ESD"),
    ])
}

fn josephson_base(p: &Params, overrides: &[(&str, f64)]) -> Result<JosephsonParams, CliError> {
    let mut entries: Vec<(String, String)> = p
        .entries()
        .iter()
        .filter(|(k, _)| models::josephson_defaults().iter().any(|(d, _)| d == k))
        .cloned()
        .collect();
    entries.extend(overrides.iter().map(|(k, v)| (k.to_string(), s(v))));
    models::josephson_params(&Params::new("josephson", &models::josephson_defaults(), &entries)?)
}

fn josephson_contour(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let t_eval = p.f64("t")?;
    let n = p.usize("points")?;
    if n < 2 {
        return Err(CliError::Config("points must be at least 2".into()));
    }
    let axis = linspace(0.0, 1.0, n);
    let base = josephson_base(p, &[])?;
    let reduction = models::reduction(p)?;
    let cells: Vec<(f64, f64)> = axis.iter().flat_map(|&ej| axis.iter().map(move |&e| (e, ej))).collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(epsilon, ej)| {
            let pp = JosephsonParams { epsilon, ej, ..base };
            match Josephson::with_reduction(pp, reduction).and_then(|f| f.concurrence(t_eval)) {
                Ok(c) => c,
                Err(e) => {
                    warn!("epsilon = {epsilon}, Ej = {ej}: {e}");
                    f64::NAN
                }
            }
        })
        .collect();
    let mut t = table("josephson", p, &[], Some("Ej"));
    t.rows = cells
        .iter()
        .zip(values)
        .map(|(&(x, ej), y)| Row { x, y, series: Some(Series::Num(ej)) })
        .collect();
    Ok(vec![Artifact {
        stem: "josephson_contour".into(),
        title: format!("concurrence at t = {t_eval}"),
        table: t,
        plot: Plot::Contour {
            x_label: "epsilon".into(),
            y_label: "Ej".into(),
            levels: vec![0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        },
    }])
}

fn dephasing_compare(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let times = time_grid(p, "t_max", "t_step")?;
    let jp = josephson_base(p, &[])?;
    let telegraph = trace_concurrence(&Josephson::with_reduction(jp, models::reduction(p)?)?, &times)?;
    let oscillator = trace_concurrence(&QndFree::new(models::bath(p)?)?, &times)?;
    let mut t = table("josephson+qnd", p, &[], None);
    for (label, tr) in [("telegraph", &telegraph), ("oscillator", &oscillator)] {
        t.rows.extend(tr.times.iter().zip(&tr.values).map(|(&x, &y)| Row {
            x,
            y,
            series: Some(Series::Label(label.into())),
        }));
    }
    Ok(vec![line("dephasing_compare", "pure dephasing: telegraph vs oscillator bath", t, "t", "concurrence")])
}

fn kappa_sweeps(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let times = time_grid(p, "t_max", "t_step")?;
    let base = josephson_base(p, &[])?;
    let reduction = models::reduction(p)?;
    let mut out = Vec::new();
    for (key, stem, title) in [
        ("weak_kappas", "kappa_weak", "weak coupling"),
        ("strong_kappas", "kappa_strong", "strong coupling"),
    ] {
        let make = |k| Josephson::with_reduction(base.with_kappa(k), reduction);
        let res = sweep("kappa", &p.list(key)?, make, &SweepTask::Trace { times: times.clone() })?;
        let mut t = table("josephson", p, &[], Some("kappa"));
        push_traces(&mut t, &res);
        out.push(line(stem, title, t, "t", "concurrence"));
    }
    Ok(out)
}

fn bangbang(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let base = josephson_base(p, &[])?;
    let sched = models::schedule(p)?;
    let basis = models::basis(p)?;
    let horizon = p.f64("horizon")?;
    let points = p.usize("trace_points")?.max(2);
    let quantum = 2.0 * sched.spacing;
    // Trace times on the pulse lattice.
    let lattice = |t_max: f64| -> Vec<f64> {
        let mut ks: Vec<u64> = (0..points)
            .map(|i| (t_max * i as f64 / (points - 1) as f64 / quantum).round() as u64)
            .collect();
        ks.dedup();
        ks.into_iter().map(|k| k as f64 * quantum).collect()
    };
    let pulsed = |pp: JosephsonParams| JosephsonPulsed::new(pp, sched, basis);
    let mut out = Vec::new();
    for (key, max_key, stem, title) in [
        ("weak_kappas", "t_max_weak", "bangbang_weak", "pulsed, weak coupling"),
        ("strong_kappas", "t_max_strong", "bangbang_strong", "pulsed, strong coupling"),
        ("kink_kappas", "t_max_weak", "bangbang_kink", "pulsed, kink window"),
    ] {
        let times = lattice(p.f64(max_key)?);
        let res = sweep("kappa", &p.list(key)?, |k| pulsed(base.with_kappa(k)), &SweepTask::Trace { times })?;
        let mut t = table("josephson-pulsed", p, &[], Some("kappa"));
        push_traces(&mut t, &res);
        out.push(line(stem, title, t, "t", "concurrence"));
    }

    let kappas = p.list("crossover_kappas")?;
    let task = SweepTask::Tesd { horizon };
    let with_pulses = sweep("kappa", &kappas, |k| pulsed(base.with_kappa(k)), &task)?;
    let without = sweep("kappa", &kappas, |k| Josephson::new(base.with_kappa(k)), &task)?;
    let mut t = table("josephson-pulsed", p, &[], None);
    push_tesd(&mut t, &with_pulses, Some(Series::Label("pulsed".into())));
    push_tesd(&mut t, &without, Some(Series::Label("unpulsed".into())));
    out.push(line("bangbang_tesd_kappa", "sudden-death time vs coupling", t, "kappa", "t_ESD"));

    let ejs = p.list("ejs")?;
    let res = sweep("Ej", &ejs, |ej| pulsed(JosephsonParams { ej, ..base }), &task)?;
    let mut t = table("josephson-pulsed", p, &[], None);
    push_tesd(&mut t, &res, None);
    out.push(line("bangbang_tesd_ej", "sudden-death time vs Josephson energy", t, "Ej", "t_ESD"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(name: &str, overrides: &[(&str, &str)]) -> Params {
        let o: Vec<(String, String)> = overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Params::new(name, &defaults(name).unwrap(), &o).unwrap()
    }

    fn value(a: &Artifact, key: &str) -> Option<String> {
        a.table.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
    }

    #[test]
    fn bandgap_default_ordering() {
        let arts = bandgap(&params("bandgap", &[])).unwrap();
        assert_eq!(arts.len(), 3);
        let last = |a: &Artifact| a.table.rows.last().unwrap().y;
        assert!(last(&arts[2]) > last(&arts[1]) && last(&arts[1]) > 0.0);
        let single = bandgap(&params("bandgap", &[("taus", "0"), ("deltas", "-0.5")])).unwrap();
        assert_eq!(single[0].table.rows.len(), 1);
        assert!((single[0].table.rows[0].y - 1.0).abs() < 1e-9);
        assert_eq!(value(&single[0], "extrapolated").as_deref(), Some("true"));
    }

    #[test]
    fn unstated_parameters_are_in_metadata() {
        let rf = params("resfluo", &[]);
        assert!(rf.entries().iter().any(|(k, _)| k == "N"));
        for name in ["josephson-contour", "dephasing-compare", "kappa-sweeps", "bangbang"] {
            let p = params(name, &[]);
            for key in ["epsilon_c", "beta"] {
                assert!(p.entries().iter().any(|(k, _)| k == key), "{name} lacks {key}");
            }
        }
        assert!(params("bangbang", &[]).entries().iter().any(|(k, _)| k == "spacing"));
    }

    #[test]
    fn freqmod_numeric_matches_closed_form() {
        let arts = freqmod(&params("freqmod", &[("nu_points", "4"), ("nu_max", "3")])).unwrap();
        let rows = &arts[0].table.rows;
        assert_eq!(rows.len(), 8);
        for i in 0..4 {
            assert!((rows[i].y - rows[i + 4].y).abs() <= 1e-6 * rows[i + 4].y);
        }
    }

    #[test]
    fn contour_has_degenerate_corner() {
        let arts = josephson_contour(&params("josephson-contour", &[("points", "3")])).unwrap();
        let rows = &arts[0].table.rows;
        assert_eq!(rows.len(), 9);
        assert!(rows[0].y.is_nan());
        assert!(rows[1..].iter().all(|r| (0.0..=1.0).contains(&r.y)));
    }
}
