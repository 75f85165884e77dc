// Copyright 2026 The aqft Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! The semiclassical chain against the unitary route, and sampling against
//! the exact path probabilities.

use aqft::experiments::{grid_points, monte_carlo_estimate, unitary_distribution, PhiGrid};
use aqft::phase::{nearest_estimate, Phase};
use aqft::semiclassical::{
    bit_trials, delta_p, full_distribution, path_probability, sample_run_seeded, success_probability_exact,
    Criterion, TrialSpec,
};
use aqft::{log_rule_threshold, BitString};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn full_distribution_matches_statevector_route() {
    for n in 2..=7 {
        let mut ms = vec![2, log_rule_threshold(n, 2), n];
        ms.dedup();
        for &m in &ms {
            for phi in grid_points(&PhiGrid::Dyadic(17), n, 32, 0) {
                let spec = TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap();
                let semi = full_distribution(&spec).unwrap();
                let unitary = unitary_distribution(n, m, phi).unwrap();
                let tv = semi.total_variation(&unitary).unwrap();
                assert!(tv <= 1e-10, "n={n} m={m} phi={phi} tv={tv}");
                assert!((semi.total() - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn exact_success_is_the_path_product() {
    let phi = Phase::parse("0.3217", 40).unwrap().phase;
    let spec = TrialSpec::new(8, 5, phi, Criterion::Nearest).unwrap();
    let product: f64 = bit_trials(&spec).iter().map(|t| t.probability).product();
    assert_eq!(success_probability_exact(&spec), product);
    let (x_hat, _) = spec.nearest();
    assert_eq!(path_probability(&spec, &x_hat).unwrap(), product);
    let dist = full_distribution(&spec).unwrap();
    assert!((dist.get(&x_hat) - product).abs() < 1e-14);
}

#[test]
fn sampled_frequencies_track_path_probabilities() {
    let phi = Phase::parse("0.3217", 40).unwrap().phase;
    let spec = TrialSpec::new(3, 2, phi, Criterion::Nearest).unwrap();
    let samples = 100_000u64;
    let mut counts = [0u64; 8];
    for i in 0..samples {
        counts[sample_run_seeded(&spec, 7, i).estimate.value() as usize] += 1;
    }
    for (x, &c) in counts.iter().enumerate() {
        let p = path_probability(&spec, &BitString::from_value(x as u128, 3).unwrap()).unwrap();
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        let f = c as f64 / samples as f64;
        assert!((f - p).abs() <= 4.0 * se + 1e-12, "x={x} freq={f} p={p}");
    }
}

// With a correct tail, delta_p differs from 2^(p-1) delta only by the dropped
// bits of chi_p, worth less than 2^(-(m-1)) / 2. A wrong tail bit instead
// shifts delta_p by a large fixed amount (next test).
#[test]
fn residuals_with_correct_tails_are_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(2..=40usize);
        let m = rng.gen_range(2..=n);
        let phi = Phase::new(rng.gen::<u64>() as u128, 64).unwrap();
        let spec = TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap();
        let (x_hat, delta) = nearest_estimate(phi, n);
        for p in 1..=n {
            let tail: Vec<u8> = (p + 1..=n).map(|q| x_hat.bit(q)).collect();
            let d = delta_p(&spec, p, &tail).unwrap().to_f64().abs();
            let ideal = (2f64.powi(p as i32 - 1) * delta.to_f64()).abs();
            let truncation = if p + m - 1 < n { 2f64.powi(-(m as i32 - 1)) } else { 0.0 };
            assert!(d <= ideal + truncation / 2.0 + 1e-15, "n={n} m={m} p={p} d={d}");
            assert!(d <= 0.5);
        }
    }
}

#[test]
fn a_wrong_tail_bit_moves_the_residual() {
    // phi = 0.0101b exactly; flip x_{p+1}: delta_p jumps by 1/4 from 0.
    let phi = Phase::parse("0.0101b", 4).unwrap().phase;
    let spec = TrialSpec::new(4, 4, phi, Criterion::Nearest).unwrap();
    let (x_hat, _) = spec.nearest();
    for p in 1..=3 {
        let mut tail: Vec<u8> = (p + 1..=4).map(|q| x_hat.bit(q)).collect();
        assert!(delta_p(&spec, p, &tail).unwrap().is_zero());
        tail[0] ^= 1;
        assert_eq!(delta_p(&spec, p, &tail).unwrap().abs(), Phase::pow2_inv(2).unwrap());
        let prob = (PI * 0.25).cos().powi(2);
        let got = aqft::semiclassical::bit_success_probability(&spec, p, &tail).unwrap();
        assert!((got - prob).abs() < 1e-15);
    }
}

#[test]
fn criterion_two_never_does_worse() {
    for phi in grid_points(&PhiGrid::WorstCase, 10, 32, 3) {
        let near = TrialSpec::new(10, 5, phi, Criterion::Nearest).unwrap();
        let two = near.with_criterion(Criterion::OneOfTwoNearest);
        assert!(success_probability_exact(&two) + 1e-15 >= success_probability_exact(&near));
    }
}

// Binomial tolerance: se = sqrt(p (1 - p) / N) evaluated at the exact p, so a
// spec with p = 1 tolerates no failures.
#[test]
fn monte_carlo_battery() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let samples = 4000;
    let mut within = 0;
    for i in 0..100 {
        let n = rng.gen_range(2..=14usize);
        let m = rng.gen_range(2..=n);
        let phi = Phase::new(rng.gen::<u64>() as u128 >> 24, 40).unwrap();
        let criterion = if rng.gen_bool(0.5) { Criterion::Nearest } else { Criterion::OneOfTwoNearest };
        let spec = TrialSpec::new(n, m, phi, criterion).unwrap();
        let est = monte_carlo_estimate(&spec, samples, i).unwrap();
        let p = success_probability_exact(&spec);
        let se = (p * (1.0 - p) / samples as f64).sqrt();
        if (est.p_hat - p).abs() <= 4.0 * se + 1e-12 {
            within += 1;
        }
    }
    assert!(within >= 99, "{within}/100 within 4 se");
}

fn sweep_phases(n: usize) -> Vec<Phase> {
    let mut phis = grid_points(&PhiGrid::Dyadic(257), n, 32, 0);
    phis.extend(grid_points(&PhiGrid::WorstCase, n, 32, 5));
    phis
}

// Correct tail, p <= n - m: the dropped chi bits keep delta_p within
// (-2^-m, 2^-m], so the bit succeeds with probability >= cos^2(pi 2^-m).
#[test]
fn first_case_residual_bound() {
    for n in [4usize, 8, 16, 33, 64] {
        for m in [2, log_rule_threshold(n, 2)] {
            let h = 2f64.powi(-(m as i32));
            for phi in sweep_phases(n) {
                let spec = TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap();
                for t in bit_trials(&spec).iter().filter(|t| t.p + m <= n) {
                    let d = t.delta.to_f64();
                    assert!(-h < d && d <= h, "n={n} m={m} phi={phi} p={} delta_p={d}", t.p);
                    assert!(t.probability >= (PI * h).cos().powi(2) - 1e-15);
                }
            }
        }
    }
}

// Correct tail, p > n - m: chi_p is untruncated, so delta_p = 2^(p-1) delta
// exactly and |delta_p| <= 2^(p-n-1).
#[test]
fn second_case_residual_bound() {
    for n in [4usize, 8, 16, 33, 64] {
        for m in [2, log_rule_threshold(n, 2)] {
            for phi in sweep_phases(n) {
                let spec = TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap();
                let (_, delta) = spec.nearest();
                for t in bit_trials(&spec).iter().filter(|t| t.p + m > n) {
                    let scaled = aqft::phase::SignedOffset::wrap(delta.to_phase().mul_pow2(t.p as u32 - 1));
                    assert_eq!(t.delta, scaled, "n={n} m={m} phi={phi} p={}", t.p);
                    assert!(t.delta.to_f64().abs() <= 2f64.powi(t.p as i32 - n as i32 - 1));
                    let floor = (PI / 2.0 * 2f64.powi(t.p as i32 - n as i32)).cos().powi(2);
                    assert!(t.probability >= floor - 1e-15);
                }
            }
        }
    }
}

// Success need not be monotone in m; count the dips rather than assert.
#[test]
fn monotonicity_in_threshold_is_measured() {
    let n = 8;
    let mut dips = 0;
    let mut largest = 0.0f64;
    let phis = grid_points(&PhiGrid::Dyadic(1024), n, 32, 0);
    for &phi in &phis {
        let ps: Vec<f64> = (2..=n)
            .map(|m| success_probability_exact(&TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap()))
            .collect();
        for w in ps.windows(2) {
            if w[1] < w[0] {
                dips += 1;
                largest = largest.max(w[0] - w[1]);
            }
        }
    }
    println!("n={n}: {dips} decreases over {} phases x 6 steps, largest {largest:.3e}", phis.len());
    assert!(dips <= phis.len() * (n - 2));
}
