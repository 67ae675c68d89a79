// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical channel families.
//!
//! Every model exposes one or more [`ChannelFamily`] implementations: a
//! time-parametrized producer of one-qubit superoperators `V(t)` together with
//! the parameter record that produced it.

pub mod bandgap;
pub mod decoupling;
pub mod freqmod;
pub mod josephson;
pub mod resfluo;

use std::fmt::Display;

use crate::error::Result;
use crate::quantum::{choi, concurrence, concurrence_lenient, Superoperator};

/// Ordered `key=value` record describing a family, for output metadata.
pub type ParamList = Vec<(String, String)>;

pub(crate) fn param(key: &str, value: impl Display) -> (String, String) {
    (key.to_string(), value.to_string())
}

/// A time-parametrized one-qubit channel.
pub trait ChannelFamily: Send + Sync {
    /// Short model identifier, e.g. `"bandgap"`.
    fn name(&self) -> &str;

    fn params(&self) -> ParamList;

    /// The channel after time `t >= 0`.
    fn channel(&self, t: f64) -> Result<Superoperator>;

    /// Whether `V(t)` is guaranteed to be completely positive. When false,
    /// concurrence is evaluated without rejecting slightly unphysical Choi
    /// states.
    fn completely_positive(&self) -> bool {
        true
    }

    /// Families whose concurrence has a strictly positive analytic floor.
    fn no_sudden_death(&self) -> bool {
        false
    }

    /// Smallest admissible time step, for families defined only on a lattice
    /// of times (pulse trains).
    fn time_quantum(&self) -> Option<f64> {
        None
    }

    /// Concurrence of the Choi state of `V(t)`.
    fn concurrence(&self, t: f64) -> Result<f64> {
        let m = choi(&self.channel(t)?)?;
        if self.completely_positive() {
            concurrence(&m)
        } else {
            concurrence_lenient(&m)
        }
    }
}

impl<F: ChannelFamily + ?Sized> ChannelFamily for Box<F> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn params(&self) -> ParamList {
        (**self).params()
    }
    fn channel(&self, t: f64) -> Result<Superoperator> {
        (**self).channel(t)
    }
    fn completely_positive(&self) -> bool {
        (**self).completely_positive()
    }
    fn no_sudden_death(&self) -> bool {
        (**self).no_sudden_death()
    }
    fn time_quantum(&self) -> Option<f64> {
        (**self).time_quantum()
    }
    fn concurrence(&self, t: f64) -> Result<f64> {
        (**self).concurrence(t)
    }
}
