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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register of {n} qubits exceeds the cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },

    #[error("qubit index {q} out of range for a {n}-qubit register")]
    QubitOutOfRange { q: usize, n: usize },

    #[error("control and target are both qubit {0}")]
    QubitClash(usize),

    #[error("basis index {index} out of range for {n} qubits")]
    BasisIndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("threshold m={m} is invalid for n={n} (need m >= 2)")]
    InvalidThreshold { n: usize, m: usize },

    #[error("precision of {0} bits is outside the supported range 0..=127")]
    PrecisionOutOfRange(u32),

    #[error("bit string has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("bit index {p} out of range for a {n}-bit register")]
    BitIndexOutOfRange { p: usize, n: usize },

    #[error("measured tail for bit {p} has {got} bits, expected {expected}")]
    IncompleteTail { p: usize, got: usize, expected: usize },

    #[error("{what} requires n <= {limit}, got {n}")]
    SizeGuard { what: &'static str, n: usize, limit: usize },

    #[error("fixed bound needs n >= 4, got {0}")]
    BoundDomain(usize),

    #[error("{0} random draws supplied, need {1}")]
    NotEnoughDraws(usize, usize),

    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("cannot parse phase {input:?}: {reason}")]
    PhaseParse { input: String, reason: String },

    #[error("cannot parse circuit line {line}: {reason}")]
    CircuitParse { line: usize, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot write output: {message}")]
    Output { kind: std::io::ErrorKind, message: String },
}
