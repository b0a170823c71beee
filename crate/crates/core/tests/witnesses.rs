use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use raman_core::{
    compute_coefficients, hz1_witness, specialize, witness, CoherentInputs, Criterion, Frame, ModePair, Process,
    RamanParams, WitnessOptions,
};

fn absolute(p: RamanParams) -> RamanParams {
    let (wa, wc) = (3.1e8, 4.7e7);
    RamanParams {
        frame: Frame::Absolute {
            omega_a: wa,
            omega_b: wa - wc + p.d_omega1,
            omega_c: wc,
            omega_d: wa + wc - p.d_omega2,
        },
        ..p
    }
}

fn amplitude() -> impl Strategy<Value = f64> {
    0.0..12.0f64
}

proptest! {
    #[test]
    fn hz_witnesses_are_frame_invariant(
        a1 in 0.1..12.0f64, a2 in amplitude(), a3 in amplitude(), a4 in amplitude(),
        phi in 0.0..(2.0 * PI), t in 1e-8..1e-6f64,
    ) {
        let p = RamanParams::paper();
        let q = absolute(p);
        let a = CoherentInputs::from_magnitudes(a1, phi, a2, a3, a4);
        for pair in ModePair::ALL {
            for c in [Criterion::Hz1, Criterion::Hz2] {
                let x = witness(c, pair, &p, &a, t, WitnessOptions::default());
                let y = witness(c, pair, &q, &a, t, WitnessOptions::default());
                prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{pair} {c}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn spontaneous_stokes_pair_is_nonnegative(
        g in 1e4..3e5f64, d1 in 5e4..5e5f64, d2 in 5e4..5e5f64, a1 in 0.1..20.0f64, t in 0.0..1e-6f64,
    ) {
        prop_assume!((d1 - d2).abs() > 1e3);
        let p = RamanParams { g, chi: g, d_omega1: d1, d_omega2: d2, frame: Frame::CoRotating };
        let a = specialize(&CoherentInputs::from_magnitudes(a1, 0.3, 1.0, 1.0, 1.0), Process::Spontaneous).unwrap();
        prop_assert!(hz1_witness(ModePair::AB, &p, &a, t) >= 0.0);
    }

    #[test]
    fn stokes_pair_hz1_ignores_pump_phase(a2 in amplitude(), t in 1e-8..1e-6f64) {
        let p = RamanParams::paper();
        let base = CoherentInputs::from_magnitudes(10.0, 0.0, a2, 0.0, 0.0);
        let w0 = hz1_witness(ModePair::AB, &p, &base, t);
        for phi in [FRAC_PI_2, PI] {
            let w = hz1_witness(ModePair::AB, &p, &base.with_pump_phase(phi), t);
            prop_assert!((w - w0).abs() <= 1e-12 * w0.abs().max(1.0));
        }
    }
}

/// Least-squares slope of `ln|w|` against `ln t`.
fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.abs().ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn witnesses_vanish_quadratically_for_real_amplitudes() {
    let p = RamanParams::paper();
    let times: Vec<f64> = (0..=20).map(|k| 1e-9 * 100f64.powf(k as f64 / 20.0)).collect();
    for phi in [0.0, PI] {
        let a = CoherentInputs::paper(phi);
        for pair in ModePair::ALL {
            for c in Criterion::ALL {
                let pts: Vec<(f64, f64)> = times
                    .iter()
                    .map(|&t| (t, witness(c, pair, &p, &a, t, WitnessOptions::default())))
                    .collect();
                if pts.iter().all(|&(_, w)| w == 0.0) {
                    continue;
                }
                let slope = loglog_slope(&pts);
                assert!((1.8..=2.2).contains(&slope), "{pair} {c} phi={phi}: slope {slope}");
            }
        }
    }
}

#[test]
fn coefficients_feed_witnesses_consistently() {
    let p = RamanParams::paper();
    let a = CoherentInputs::paper(FRAC_PI_2);
    let t = 4e-7;
    let c = compute_coefficients(&p, t);
    for pair in ModePair::ALL {
        for crit in Criterion::ALL {
            let direct = witness(crit, pair, &p, &a, t, WitnessOptions::default());
            let via = raman_core::witness_from(crit, pair, &c, &a, WitnessOptions::default());
            assert_eq!(direct, via);
        }
    }
}
