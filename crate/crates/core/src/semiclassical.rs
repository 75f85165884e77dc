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

//! Semiclassical inverse transform: bits are measured one at a time from
//! `x_n` up to `x_1`, and the controlled rotations of the inverse `AQFT_m`
//! become a classically chosen rotation by `-chi_p` on the next trial.
//!
//! Trial `p` starts from `|0> + e^(2 pi i 2^(p-1) phi)|1>`, applies `-chi_p`,
//! then a Hadamard, and returns bit `b` with probability `cos^2(pi eps)`,
//! where `eps = 2^(p-1) phi - chi_p - b/2` wrapped to `[-1/2, 1/2)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::{chi, nearest_estimate, phase_from_bits, wrapped_distance, BitString, Phase, SignedOffset};
use crate::MAX_PHASE_BITS;

/// Largest register accepted by [`full_distribution`].
pub const FULL_DISTRIBUTION_LIMIT: usize = 12;

/// Which measured strings count as a success.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// The unique nearest multiple of `2^-n` (ties go to the lower one).
    Nearest,
    /// Any multiple strictly within `2^-n` of `phi`: one string, or two at a tie
    /// and in general position.
    OneOfTwoNearest,
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(Criterion::Nearest),
            "two" | "one-of-two" | "one_of_two_nearest" => Ok(Criterion::OneOfTwoNearest),
            _ => Err(Error::Config(format!("unknown criterion {s:?} (expected nearest|two)"))),
        }
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Criterion::Nearest => "nearest",
            Criterion::OneOfTwoNearest => "two",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialSpec {
    n: usize,
    m: usize,
    phi: Phase,
    criterion: Criterion,
}

impl TrialSpec {
    /// `m` is clamped with [`crate::clamp_threshold`].
    pub fn new(n: usize, m: usize, phi: Phase, criterion: Criterion) -> Result<Self> {
        if n == 0 || n >= MAX_PHASE_BITS as usize {
            return Err(Error::TooManyQubits { n, cap: MAX_PHASE_BITS as usize - 1 });
        }
        let m = crate::clamp_threshold(n, m)?;
        Ok(TrialSpec { n, m, phi, criterion })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn phi(&self) -> Phase {
        self.phi
    }

    pub fn criterion(&self) -> Criterion {
        self.criterion
    }

    pub fn with_criterion(self, criterion: Criterion) -> Self {
        TrialSpec { criterion, ..self }
    }

    /// Nearest estimate `x_hat` and `delta = phi - (0.x_hat)`.
    pub fn nearest(&self) -> (BitString, SignedOffset) {
        nearest_estimate(self.phi, self.n)
    }

    /// Strings counted as a success, ascending.
    pub fn qualifying_strings(&self) -> Vec<BitString> {
        let (x, _) = self.nearest();
        match self.criterion {
            Criterion::Nearest => vec![x],
            Criterion::OneOfTwoNearest => {
                let modulus_mask = (1u128 << self.n) - 1;
                let limit = Phase::pow2_inv(self.n as u32).expect("n < 127");
                let mut out: Vec<BitString> = [x.value().wrapping_sub(1), x.value(), x.value() + 1]
                    .into_iter()
                    .map(|v| BitString::from_value(v & modulus_mask, self.n).expect("masked"))
                    .filter(|c| wrapped_distance(self.phi, phase_from_bits(c)) < limit)
                    .collect();
                out.sort();
                out.dedup();
                out
            }
        }
    }

    pub fn is_success(&self, estimate: &BitString) -> bool {
        match self.criterion {
            Criterion::Nearest => *estimate == self.nearest().0,
            Criterion::OneOfTwoNearest => {
                let limit = Phase::pow2_inv(self.n as u32).expect("n < 127");
                wrapped_distance(self.phi, phase_from_bits(estimate)) < limit
            }
        }
    }
}

/// Residual angle for measuring `target_p` on trial `p` given the bits of
/// `target` below `p` as the already-measured tail.
fn trial_offset(phi: Phase, target: &BitString, p: usize, m: usize) -> SignedOffset {
    let bit = Phase::new(target.bit(p) as u128, 1).expect("1 bit");
    SignedOffset::wrap(phi.mul_pow2(p as u32 - 1) - chi(target, p, m) - bit)
}

#[inline]
fn cos2(offset: SignedOffset) -> f64 {
    (PI * offset.to_f64()).cos().powi(2)
}

fn check_p(n: usize, p: usize) -> Result<()> {
    if p == 0 || p > n {
        Err(Error::BitIndexOutOfRange { p, n })
    } else {
        Ok(())
    }
}

/// The string `x_hat_1 ... x_hat_p` followed by `tail`.
fn splice_tail(spec: &TrialSpec, p: usize, tail: &[u8]) -> Result<BitString> {
    check_p(spec.n, p)?;
    if tail.len() != spec.n - p {
        return Err(Error::IncompleteTail { p, got: tail.len(), expected: spec.n - p });
    }
    let (x_hat, _) = spec.nearest();
    let mut y = x_hat;
    for (i, &b) in tail.iter().enumerate() {
        if b > 1 {
            return Err(Error::Config(format!("tail bit {} is {b}", p + 1 + i)));
        }
        y = y.with_bit(p + 1 + i, b);
    }
    Ok(y)
}

/// Offset `delta_p` for the trial on bit `p`, when the correct bit is
/// `x_hat_p` and `tail = x_(p+1) ... x_n` has already been measured.
///
/// Computed twice and checked for exact equality:
///
/// - closed form: `2^-m (0.x_(p+m) ... x_n) + 2^(p-1) delta` when
///   `p <= n - m`, else `2^(p-1) delta`, with `delta = phi - (0.x_hat_1..x_hat_p x_(p+1)..x_n)`;
/// - operational: `2^(p-1) phi - chi_p - (0.x_hat_p)`.
pub fn delta_p(spec: &TrialSpec, p: usize, tail: &[u8]) -> Result<SignedOffset> {
    let y = splice_tail(spec, p, tail)?;
    let (n, m) = (spec.n, spec.m);
    let delta = SignedOffset::wrap(spec.phi - phase_from_bits(&y));
    let amplified = delta.to_phase().mul_pow2(p as u32 - 1);
    let closed = if p + m <= n {
        // 2^-m * (0.x_(p+m)..x_n) = tail_value / 2^(n-p+1)
        let skipped = Phase::new(y.tail_value(p + m - 1), (n - p + 1) as u32)?;
        SignedOffset::wrap(skipped + amplified)
    } else {
        SignedOffset::wrap(amplified)
    };
    let operational = trial_offset(spec.phi, &y, p, m);
    assert_eq!(closed, operational, "delta_p routes disagree at p={p} for {spec:?}");
    Ok(closed)
}

/// `cos^2(pi delta_p)`: probability that trial `p` returns the correct bit.
pub fn bit_success_probability(spec: &TrialSpec, p: usize, tail: &[u8]) -> Result<f64> {
    delta_p(spec, p, tail).map(cos2)
}

/// Probability that the trial chain returns exactly `target`.
pub fn path_probability(spec: &TrialSpec, target: &BitString) -> Result<f64> {
    if target.len() != spec.n {
        return Err(Error::LengthMismatch { got: target.len(), expected: spec.n });
    }
    Ok((1..=spec.n).rev().map(|p| cos2(trial_offset(spec.phi, target, p, spec.m))).product())
}

/// Exact success probability: the path probability summed over the
/// strings accepted by the trial's criterion.
pub fn success_probability_exact(spec: &TrialSpec) -> f64 {
    spec.qualifying_strings()
        .iter()
        .map(|s| path_probability(spec, s).expect("qualifying strings have length n"))
        .sum()
}

/// One trial of the per-bit analysis for the nearest estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BitTrial {
    pub p: usize,
    pub bit: u8,
    #[serde(serialize_with = "ser_display")]
    pub chi: Phase,
    #[serde(serialize_with = "ser_display")]
    pub delta: SignedOffset,
    pub probability: f64,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `delta_p` and `cos^2(pi delta_p)` for every bit of the nearest estimate,
/// in measurement order (`p = n` first).
pub fn bit_trials(spec: &TrialSpec) -> Vec<BitTrial> {
    let (x, _) = spec.nearest();
    let bits = x.to_vec();
    (1..=spec.n)
        .rev()
        .map(|p| {
            let delta = delta_p(spec, p, &bits[p..]).expect("tail taken from the estimate");
            BitTrial { p, bit: x.bit(p), chi: chi(&x, p, spec.m), delta, probability: cos2(delta) }
        })
        .collect()
}

/// Result of one sampled run of the trial chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    #[serde(serialize_with = "ser_display")]
    pub estimate: BitString,
    /// Probability of the outcome observed on each bit, indexed `x_1 .. x_n`.
    pub per_bit_probabilities: Vec<f64>,
    pub success: bool,
}

impl RunRecord {
    pub fn path_probability(&self) -> f64 {
        self.per_bit_probabilities.iter().product()
    }
}

/// Run the chain with explicit uniform draws in `[0, 1)`; `draws[0]` decides
/// `x_n`, `draws[n-1]` decides `x_1`. A trial returns 0 iff its draw is
/// below `P(0)`.
pub fn sample_run(spec: &TrialSpec, draws: &[f64]) -> Result<RunRecord> {
    let n = spec.n;
    if draws.len() < n {
        return Err(Error::NotEnoughDraws(draws.len(), n));
    }
    let mut x = BitString::zeros(n);
    let mut probs = vec![0.0; n];
    for (i, p) in (1..=n).rev().enumerate() {
        // chi only reads bits above p, all measured already
        let p0 = cos2(trial_offset(spec.phi, &x, p, spec.m));
        let (bit, prob) = if draws[i] < p0 { (0, p0) } else { (1, 1.0 - p0) };
        x = x.with_bit(p, bit);
        probs[p - 1] = prob;
    }
    Ok(RunRecord { estimate: x, per_bit_probabilities: probs, success: spec.is_success(&x) })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based draws for sample `index`: the ChaCha key depends on
/// `(seed, n, m)` and the stream number is the sample index, so a sample's
/// draws never depend on which worker produced it.
pub fn counter_draws(seed: u64, n: usize, m: usize, index: u64) -> Vec<f64> {
    let key = splitmix64(splitmix64(splitmix64(seed) ^ n as u64) ^ m as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

/// [`sample_run`] with [`counter_draws`].
pub fn sample_run_seeded(spec: &TrialSpec, seed: u64, index: u64) -> RunRecord {
    let draws = counter_draws(seed, spec.n, spec.m, index);
    sample_run(spec, &draws).expect("n draws generated")
}

/// Outcome distribution of the trial chain, indexed by the integer value
/// of the measured string.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(n: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << n {
            return Err(Error::LengthMismatch { got: probs.len(), expected: 1 << n });
        }
        Ok(Distribution { n, probs })
    }

    pub fn num_bits(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, s: &BitString) -> f64 {
        self.probs[s.value() as usize]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BitString, f64)> + '_ {
        let n = self.n;
        self.probs.iter().enumerate().map(move |(i, &p)| (BitString::from_value(i as u128, n).expect("i < 2^n"), p))
    }

    /// `1/2 sum |p - q|`.
    pub fn total_variation(&self, other: &[f64]) -> Result<f64> {
        if other.len() != self.probs.len() {
            return Err(Error::LengthMismatch { got: other.len(), expected: self.probs.len() });
        }
        Ok(0.5 * self.probs.iter().zip(other).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }
}

/// [`path_probability`] for all `2^n` strings (`n <= 12`).
pub fn full_distribution(spec: &TrialSpec) -> Result<Distribution> {
    let n = spec.n;
    if n > FULL_DISTRIBUTION_LIMIT {
        return Err(Error::SizeGuard { what: "full_distribution", n, limit: FULL_DISTRIBUTION_LIMIT });
    }
    let probs = (0..1u128 << n)
        .map(|v| path_probability(spec, &BitString::from_value(v, n).expect("v < 2^n")).expect("length n"))
        .collect();
    Distribution::new(n, probs)
}
