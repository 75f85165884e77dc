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

//! Phase-estimation laboratory for the quantum Fourier transform.
//!
//! The crate models the exact QFT, the approximate transform `AQFT_m` that
//! drops every controlled rotation of order `k > m`, and the semiclassical
//! (measure-and-feed-forward) inverse transform. Success probabilities are
//! computed exactly from dyadic phases, sampled with a seeded counter-based
//! RNG, and compared against the closed-form lower bounds.
//!
//! Module map:
//!
//! - [`phase`]: exact binary fractions, nearest-multiple rounding, `chi_p`.
//! - [`statevector`]: dense `2^n` simulator and the direct DFT oracle.
//! - [`circuits`]: QFT / AQFT gate programs, inversion, execution, counts.
//! - [`semiclassical`]: per-bit trial chain, exact and sampled probabilities.
//! - [`bounds`]: closed-form bounds and the cosine-product identity.
//! - [`experiments`]: seeded sweeps, Monte Carlo batteries, tables.
//! - [`cli`]: the `aqft` command-line front end.

pub mod bounds;
pub mod circuits;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod format;
pub mod phase;
pub mod semiclassical;
pub mod statevector;

pub use circuits::{CircuitPlan, Gate, GateCount};
pub use error::{Error, Result};
pub use phase::{BitString, Phase, SignedOffset};
pub use semiclassical::{Criterion, RunRecord, TrialSpec};
pub use statevector::StateVector;

/// Largest register handled by the exact phase arithmetic (numerators are `u128`).
pub const MAX_PHASE_BITS: u32 = 127;

/// Resolve a rotation threshold against a register size.
///
/// `m >= n` selects the full QFT; `m < 2` is rejected. A one-qubit register
/// has no rotations at all and resolves to `m = 2`.
pub fn clamp_threshold(n: usize, m: usize) -> Result<usize> {
    if m < 2 {
        return Err(Error::InvalidThreshold { n, m });
    }
    Ok(m.min(n.max(2)))
}

/// `ceil(log2 n) + offset`, clamped to `[2, n]` (the log-depth rule when `offset = 2`).
pub fn log_rule_threshold(n: usize, offset: usize) -> usize {
    let ceil_log = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    (ceil_log + offset).max(2).min(n.max(2))
}
