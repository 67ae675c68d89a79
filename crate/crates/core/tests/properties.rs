// Copyright 2026 The esdlab Authors
// SPDX-License-Identifier: Apache-2.0

use esdlab_core::esd::{find_tesd, linspace, sweep, SweepTask, ZERO_THRESHOLD};
use esdlab_core::models::bandgap::bandgap_c;
use esdlab_core::models::decoupling::{gamma_free, gamma_pulsed, BathSpectrum, PulseSchedule};
use esdlab_core::models::freqmod::{freqmod_tesd, FreqMod, FreqModParams};
use esdlab_core::models::josephson::{Josephson, JosephsonParams};
use esdlab_core::models::resfluo::{ResFluo, ResFluoParams};
use esdlab_core::models::ChannelFamily;
use esdlab_core::numerics::{dagger, expm, frobenius, identity, kron, trace};
use esdlab_core::quantum::{
    choi, concurrence, concurrence_general, factorization_check, partial_trace_second, random,
    DensityMatrix, Superoperator,
};
use esdlab_core::{c64, CMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn half_identity() -> CMatrix {
    identity(2).mapv(|z| z * 0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expm_semigroup(seed in any::<u64>(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let mut r = rng(seed);
        let u = random::unitary(&mut r, 4);
        let a = CMatrix::from_shape_fn((16, 16), |(i, j)| u[[i % 4, j % 4]] * 0.05 * ((i + j) % 3) as f64);
        let lhs = expm(&a, s).unwrap().dot(&expm(&a, t).unwrap());
        prop_assert!(frobenius(&(lhs - expm(&a, s + t).unwrap())) <= 1e-9);
    }

    #[test]
    fn concurrence_routes_agree_and_are_bounded(seed in any::<u64>()) {
        let rho = random::mixed_state(&mut rng(seed), 4);
        let c = concurrence(&rho).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        prop_assert!((c - concurrence_general(&rho).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = random::mixed_state(&mut r, 4);
        let w = kron(&random::unitary(&mut r, 2), &random::unitary(&mut r, 2));
        let rotated = DensityMatrix::from_raw(w.dot(rho.matrix()).dot(&dagger(&w))).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn unitary_channels_keep_full_entanglement(seed in any::<u64>()) {
        let v = Superoperator::unitary(&random::unitary(&mut rng(seed), 2)).unwrap();
        let m = choi(&v).unwrap();
        prop_assert!((concurrence(&m).unwrap() - 1.0).abs() <= 1e-7);
        prop_assert!(frobenius(&(partial_trace_second(m.matrix()).unwrap() - half_identity())) <= 1e-10);
    }

    #[test]
    fn factorization_law_on_markovian_channels(
        seed in any::<u64>(),
        omega in 0.0..2.0f64,
        n in 0.0..1.0f64,
        t in 0.0..30.0f64,
    ) {
        let v = ResFluo::new(ResFluoParams { omega, n_thermal: n, ..Default::default() })
            .unwrap()
            .channel(t)
            .unwrap();
        let chi = random::pure_state(&mut rng(seed), 4);
        let (lhs, rhs) = factorization_check(&v, &chi).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-6, "{lhs} vs {rhs}");
    }

    #[test]
    fn resfluo_is_trace_preserving_and_positive(
        seed in any::<u64>(),
        omega in 0.0..10.0f64,
        gamma0 in 0.01..1.0f64,
        n in 0.0..2.0f64,
        t in 0.0..50.0f64,
    ) {
        let fam = ResFluo::new(ResFluoParams { omega, gamma0, n_thermal: n }).unwrap();
        let v = fam.channel(t).unwrap();
        let rho = random::mixed_state(&mut rng(seed), 2);
        let out = v.apply_matrix(rho.matrix()).unwrap();
        prop_assert!((trace(&out) - c64(1.0, 0.0)).norm() <= 1e-9);
        let m = choi(&v).unwrap();
        prop_assert!(m.min_eigenvalue().unwrap() >= -1e-8);
        prop_assert!(frobenius(&(partial_trace_second(m.matrix()).unwrap() - half_identity())) <= 1e-8);
    }

    #[test]
    fn freqmod_bracket_invariant(
        nu in 0.0..3.0f64,
        kappa in 0.05..0.5f64,
        c_mp in 0.05..0.3f64,
        c_pm in 0.05..0.3f64,
    ) {
        let p = FreqModParams { nu, kappa_bath: kappa, c_mp, c_pm, ..Default::default() };
        let exact = freqmod_tesd(&p).unwrap();
        let fam = FreqMod::new(p).unwrap();
        let r = find_tesd(&fam, 3.0 * exact).unwrap();
        let (lo, hi) = r.bracket.unwrap();
        prop_assert!(fam.concurrence(lo).unwrap() > ZERO_THRESHOLD);
        prop_assert!(fam.concurrence(hi).unwrap() <= ZERO_THRESHOLD);
        prop_assert!((r.t_esd().unwrap() - exact).abs() <= 1e-6 * exact);
    }

    #[test]
    fn bandgap_amplitude_starts_at_one(delta in -1.0..0.2f64) {
        prop_assert!((bandgap_c(delta, 0.0).unwrap().norm_sqr() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn fast_pulses_slow_dephasing(
        coupling in 0.01..0.2f64,
        cutoff in 0.5..2.0f64,
        temperature in 0.0..2.0f64,
        x in 0.005..0.1f64,
        n in 1u64..50,
    ) {
        let mut bath = BathSpectrum::ohmic(coupling, cutoff, temperature);
        bath.n_modes = 2000;
        let dt = x / cutoff;
        let gp = gamma_pulsed(&bath, &PulseSchedule::with_pulses(n, dt)).unwrap();
        let gf = gamma_free(&bath, 2.0 * n as f64 * dt).unwrap();
        prop_assert!(gp <= gf, "{gp} > {gf}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn josephson_channel_preserves_trace_and_hermiticity(
        seed in any::<u64>(),
        epsilon in 0.1..1.5f64,
        ej in 0.0..1.5f64,
        kappa in 0.0..6.0f64,
        t in 0.0..10.0f64,
    ) {
        let fam = Josephson::new(JosephsonParams { epsilon, ej, ..JosephsonParams::default().with_kappa(kappa) }).unwrap();
        let v = fam.channel(t).unwrap();
        prop_assert!(v.trace_defect() <= 1e-8);
        let rho = random::mixed_state(&mut rng(seed), 2);
        let out = v.apply_matrix(rho.matrix()).unwrap();
        prop_assert!(frobenius(&(&out - &dagger(&out))) <= 1e-8);
    }
}

#[test]
fn sweeps_are_identical_serial_and_parallel() {
    let grid = linspace(0.0, 0.5, 11);
    let task = SweepTask::Both { horizon: 50.0, times: linspace(0.0, 20.0, 41) };
    let make = |omega| ResFluo::new(ResFluoParams { omega, ..Default::default() });
    let parallel = sweep("omega", &grid, make, &task).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| sweep("omega", &grid, make, &task).unwrap());
    assert_eq!(parallel, serial);
}
