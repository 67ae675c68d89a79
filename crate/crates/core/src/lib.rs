// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement dynamics of two-qubit systems under decoherence control.
//!
//! One qubit of a maximally entangled pair is sent through a single-qubit
//! channel `V(t)`; the entanglement of the resulting Choi state is tracked in
//! time and the first time it reaches zero (entanglement sudden death) is
//! located. Five channel families are provided:
//!
//! * [`models::bandgap`]: atom near the edge of a photonic band gap,
//! * [`models::freqmod`]: frequency-modulated system-bath coupling,
//! * [`models::resfluo`]: resonantly driven, thermally damped two-level atom,
//! * [`models::decoupling`]: QND dephasing by an oscillator bath, free or with
//!   bang-bang pulses,
//! * [`models::josephson`]: charge qubit coupled to a switching background
//!   charge, free or with bang-bang pulses.
//!
//! The building blocks live in [`numerics`] (dense complex kernels and special
//! functions) and [`quantum`] (superoperators, Lindblad generators, Choi states
//! and concurrence). [`esd`] turns any [`models::ChannelFamily`] into
//! concurrence traces, sudden-death times and parameter sweeps.

pub mod error;
pub mod esd;
pub mod models;
pub mod numerics;
pub mod props;
pub mod quantum;

pub use error::{Error, Result};
pub use numerics::{c64, CMatrix};
