// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence traces, sudden-death times and parameter sweeps over any
//! [`ChannelFamily`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::{ChannelFamily, ParamList};

/// Concurrence at or below this value counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-9;
/// Default number of coarse scan intervals.
pub const COARSE_POINTS: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub model: String,
    pub params: ParamList,
}

impl Metadata {
    pub fn of<F: ChannelFamily + ?Sized>(family: &F) -> Self {
        Self {
            model: family.name().to_string(),
            params: family.params(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub metadata: Metadata,
}

/// Concurrence of the Choi state at each grid time.
pub fn trace_concurrence<F: ChannelFamily + ?Sized>(family: &F, times: &[f64]) -> Result<ConcurrenceTrace> {
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("time grid must be strictly ascending"));
    }
    let values = times
        .iter()
        .map(|&t| family.concurrence(t).map_err(|e| e.at_time(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcurrenceTrace {
        times: times.to_vec(),
        values,
        metadata: Metadata::of(family),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EsdOutcome {
    Finite(f64),
    /// The family has a strictly positive concurrence floor.
    None,
    /// Still entangled at the horizon.
    BeyondHorizon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsdResult {
    pub outcome: EsdOutcome,
    /// `(t_lo, t_hi)` with concurrence above and at-or-below the threshold.
    pub bracket: Option<(f64, f64)>,
    pub tolerance: f64,
}

impl EsdResult {
    pub fn t_esd(&self) -> Option<f64> {
        match self.outcome {
            EsdOutcome::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self.outcome {
            EsdOutcome::Finite(t) => format!("{t}"),
            EsdOutcome::None => "none".into(),
            EsdOutcome::BeyondHorizon => "beyond-horizon".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsdOptions {
    pub coarse_points: usize,
    /// Bracket width as a fraction of the horizon.
    pub relative_tolerance: f64,
}

impl Default for EsdOptions {
    fn default() -> Self {
        Self {
            coarse_points: COARSE_POINTS,
            relative_tolerance: 1e-10,
        }
    }
}

/// First time the concurrence reaches zero, with default options.
pub fn find_tesd<F: ChannelFamily + ?Sized>(family: &F, horizon: f64) -> Result<EsdResult> {
    find_tesd_with(family, horizon, EsdOptions::default())
}

/// Coarse scan for the first zero on `[0, horizon]`, then bisection.
///
/// Families with a time quantum are scanned and bisected on multiples of it,
/// and the reported time is the first lattice point with zero concurrence.
pub fn find_tesd_with<F: ChannelFamily + ?Sized>(
    family: &F,
    horizon: f64,
    opts: EsdOptions,
) -> Result<EsdResult> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::invalid(format!("horizon must be positive, got {horizon}")));
    }
    if opts.coarse_points == 0 {
        return Err(Error::invalid("coarse_points must be positive"));
    }
    let dead = |t: f64| -> Result<bool> {
        Ok(family.concurrence(t).map_err(|e| e.at_time(t))? <= ZERO_THRESHOLD)
    };
    let tolerance = opts.relative_tolerance * horizon;

    if let Some(q) = family.time_quantum() {
        let steps = (horizon / q).floor() as u64;
        let coarse = opts.coarse_points as u64;
        let grid: Vec<u64> = {
            let mut g: Vec<u64> = (0..=coarse).map(|k| k * steps / coarse).collect();
            g.dedup();
            g
        };
        let mut lo = None;
        for &k in &grid {
            if dead(k as f64 * q)? {
                let Some(mut a) = lo else {
                    return Ok(finite(0.0, (0.0, 0.0), q));
                };
                let mut b = k;
                while b - a > 1 {
                    let mid = a + (b - a) / 2;
                    if dead(mid as f64 * q)? {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                return Ok(finite(b as f64 * q, (a as f64 * q, b as f64 * q), q));
            }
            lo = Some(k);
        }
        return Ok(alive(family, q));
    }

    let n = opts.coarse_points;
    let mut prev = None;
    for k in 0..=n {
        let t = horizon * k as f64 / n as f64;
        if dead(t)? {
            let Some(mut a) = prev else {
                return Ok(finite(0.0, (0.0, 0.0), tolerance));
            };
            let mut b = t;
            while b - a > tolerance {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if dead(mid)? {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return Ok(finite(0.5 * (a + b), (a, b), tolerance));
        }
        prev = Some(t);
    }
    Ok(alive(family, tolerance))
}

fn finite(t: f64, bracket: (f64, f64), tolerance: f64) -> EsdResult {
    EsdResult {
        outcome: EsdOutcome::Finite(t),
        bracket: Some(bracket),
        tolerance,
    }
}

fn alive<F: ChannelFamily + ?Sized>(family: &F, tolerance: f64) -> EsdResult {
    EsdResult {
        outcome: if family.no_sudden_death() {
            EsdOutcome::None
        } else {
            EsdOutcome::BeyondHorizon
        },
        bracket: None,
        tolerance,
    }
}

/// What to compute at each sweep point.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepTask {
    Tesd { horizon: f64 },
    Trace { times: Vec<f64> },
    Both { horizon: f64, times: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub x: f64,
    pub tesd: Option<EsdResult>,
    pub trace: Option<ConcurrenceTrace>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: String,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// Finite sudden-death times in grid order, `None` where absent.
    pub fn tesd_column(&self) -> Vec<Option<f64>> {
        self.points
            .iter()
            .map(|p| p.tesd.and_then(|r| r.t_esd()))
            .collect()
    }
}

/// Evaluates `task` for the family built at each grid value. Points run in
/// parallel; the result is in grid order, and a failing point records its
/// error without stopping the sweep.
pub fn sweep<F, M>(parameter: &str, grid: &[f64], make: M, task: &SweepTask) -> Result<SweepResult>
where
    F: ChannelFamily,
    M: Fn(f64) -> Result<F> + Sync,
{
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    let points = grid
        .par_iter()
        .map(|&x| {
            let run = || -> Result<(Option<EsdResult>, Option<ConcurrenceTrace>)> {
                let family = make(x)?;
                Ok(match task {
                    SweepTask::Tesd { horizon } => (Some(find_tesd(&family, *horizon)?), None),
                    SweepTask::Trace { times } => (None, Some(trace_concurrence(&family, times)?)),
                    SweepTask::Both { horizon, times } => (
                        Some(find_tesd(&family, *horizon)?),
                        Some(trace_concurrence(&family, times)?),
                    ),
                })
            };
            match run() {
                Ok((tesd, trace)) => SweepPoint { x, tesd, trace, error: None },
                Err(e) => {
                    log::warn!("sweep point {parameter} = {x} failed: {e}");
                    SweepPoint { x, tesd: None, trace: None, error: Some(e.to_string()) }
                }
            }
        })
        .collect();
    Ok(SweepResult {
        parameter: parameter.to_string(),
        points,
    })
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}
