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

//! Dense statevector simulation.
//!
//! Qubit 1 is the most significant bit of the basis index, so the register
//! `|x_1 x_2 ... x_n>` sits at index `x = sum x_p 2^(n-p)`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::phase::{Phase, SignedOffset};

/// Hard cap on the register size (`2^24` amplitudes, 256 MiB).
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Largest register accepted by [`StateVector::dft_reference`].
pub const DFT_REFERENCE_LIMIT: usize = 12;

/// Below this many amplitudes gates run on one thread.
const PAR_MIN_LEN: usize = 1 << 14;

/// Amplitudes below this magnitude are omitted from the debug text.
pub const DEBUG_TEXT_CUTOFF: f64 = 1e-13;

/// Rotation direction: `Forward` multiplies `|1>` by `e^(+2 pi i theta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Forward,
    Inverse,
}

impl Sign {
    fn apply(self, angle: Phase) -> Phase {
        match self {
            Sign::Forward => angle,
            Sign::Inverse => -angle,
        }
    }
}

/// `e^(2 pi i theta)`, with `theta` taken in `[-1/2, 1/2)` before conversion.
pub fn phase_factor(theta: Phase) -> Complex64 {
    let t = SignedOffset::wrap(theta).to_f64();
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

/// Outcome of a projective single-qubit measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub bit: u8,
    pub state: StateVector,
    /// Pre-measurement probability of `bit`.
    pub probability: f64,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooManyQubits { n, cap })
    } else {
        Ok(())
    }
}

impl StateVector {
    pub fn basis_state(n: usize, j: usize) -> Result<Self> {
        Self::basis_state_with_cap(n, j, DEFAULT_QUBIT_CAP)
    }

    pub fn basis_state_with_cap(n: usize, j: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        let dim = 1usize << n;
        if j >= dim {
            return Err(Error::BasisIndexOutOfRange { index: j, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[j] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Wrap raw amplitudes; the length must be a power of two. No
    /// normalisation is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::Config(format!("{} amplitudes is not a power of two", amps.len())));
        }
        let n = amps.len().trailing_zeros() as usize;
        check_cap(n, DEFAULT_QUBIT_CAP)?;
        Ok(StateVector { n, amps })
    }

    /// The product state `(x)_p (|0> + e^(2 pi i 2^(p-1) phi)|1>)/sqrt 2`.
    ///
    /// Each amplitude's total angle `phi * sum_{p: x_p = 1} 2^(p-1)` is formed
    /// exactly before the one conversion to floating point.
    pub fn prepare_phase_register(phi: Phase, n: usize) -> Result<Self> {
        Self::prepare_phase_register_with_cap(phi, n, DEFAULT_QUBIT_CAP)
    }

    pub fn prepare_phase_register_with_cap(phi: Phase, n: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        let dim = 1usize << n;
        let scale = (dim as f64).sqrt().recip();
        let amp = |x: usize| {
            // qubit p is bit (n - p) of x and carries weight 2^(p-1)
            let weight = if n == 0 { 0 } else { (x.reverse_bits() >> (usize::BITS as usize - n)) as u128 };
            phase_factor(phi.mul_int(weight)) * scale
        };
        let amps = if dim >= PAR_MIN_LEN {
            (0..dim).into_par_iter().map(amp).collect()
        } else {
            (0..dim).map(amp).collect()
        };
        Ok(StateVector { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn qubit_mask(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.n {
            return Err(Error::QubitOutOfRange { q, n: self.n });
        }
        Ok(1usize << (self.n - q))
    }

    /// Run `f(low, high)` over every amplitude pair differing only in `mask`.
    fn for_each_pair<F>(&mut self, mask: usize, f: F)
    where
        F: Fn(&mut Complex64, &mut Complex64) + Sync,
    {
        let body = |chunk: &mut [Complex64]| {
            let (lo, hi) = chunk.split_at_mut(mask);
            lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
        };
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_chunks_mut(2 * mask).for_each(body);
        } else {
            self.amps.chunks_mut(2 * mask).for_each(body);
        }
    }

    /// Multiply every amplitude whose index has all bits of `mask` set.
    fn scale_where(&mut self, mask: usize, factor: Complex64) {
        let f = |(i, a): (usize, &mut Complex64)| {
            if i & mask == mask {
                *a *= factor;
            }
        };
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_iter_mut().enumerate().for_each(f);
        } else {
            self.amps.iter_mut().enumerate().for_each(f);
        }
    }

    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        let mask = self.qubit_mask(q)?;
        self.for_each_pair(mask, |a, b| {
            let (x, y) = (*a, *b);
            *a = (x + y) * FRAC_1_SQRT_2;
            *b = (x - y) * FRAC_1_SQRT_2;
        });
        Ok(())
    }

    /// Multiply the `|1>` component of qubit `q` by `e^(+-2 pi i angle)`.
    pub fn apply_rotation(&mut self, q: usize, angle: Phase, sign: Sign) -> Result<()> {
        let mask = self.qubit_mask(q)?;
        self.scale_where(mask, phase_factor(sign.apply(angle)));
        Ok(())
    }

    /// Rotation on `target` restricted to the subspace where `control` is `|1>`.
    /// The gate is diagonal, so control and target are interchangeable.
    pub fn apply_controlled_rotation(&mut self, control: usize, target: usize, angle: Phase, sign: Sign) -> Result<()> {
        let cm = self.qubit_mask(control)?;
        let tm = self.qubit_mask(target)?;
        if cm == tm {
            return Err(Error::QubitClash(control));
        }
        self.scale_where(cm | tm, phase_factor(sign.apply(angle)));
        Ok(())
    }

    /// Projective measurement of qubit `q`: outcome 0 iff `draw < P(0)`.
    pub fn measure_qubit(&self, q: usize, draw: f64) -> Result<MeasurementOutcome> {
        let mask = self.qubit_mask(q)?;
        let (mut w0, mut w1) = (0.0, 0.0);
        for (i, a) in self.amps.iter().enumerate() {
            if i & mask == 0 {
                w0 += a.norm_sqr();
            } else {
                w1 += a.norm_sqr();
            }
        }
        let p0 = w0 / (w0 + w1);
        let p1 = 1.0 - p0;
        let (bit, probability, weight) = if draw < p0 { (0u8, p0, w0) } else { (1u8, p1, w1) };
        let scale = weight.sqrt().recip();
        let keep = if bit == 0 { 0 } else { mask };
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if i & mask == keep { a * scale } else { Complex64::new(0.0, 0.0) })
            .collect();
        Ok(MeasurementOutcome { bit, state: StateVector { n: self.n, amps }, probability })
    }

    /// Direct application of `|j> -> 2^(-n/2) sum_k e^(2 pi i jk / 2^n)|k>`,
    /// `O(4^n)`. The reference the circuit builders are checked against.
    pub fn dft_reference(&self) -> Result<StateVector> {
        if self.n > DFT_REFERENCE_LIMIT {
            return Err(Error::SizeGuard { what: "dft_reference", n: self.n, limit: DFT_REFERENCE_LIMIT });
        }
        let dim = self.amps.len();
        let bits = self.n as u32;
        let twiddle: Vec<Complex64> =
            (0..dim).map(|t| phase_factor(Phase::new(t as u128, bits).expect("n <= 12"))).collect();
        let scale = (dim as f64).sqrt().recip();
        let amps = (0..dim)
            .into_par_iter()
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, a) in self.amps.iter().enumerate() {
                    acc += twiddle[(j * k) & (dim - 1)] * a;
                }
                acc * scale
            })
            .collect();
        Ok(StateVector { n: self.n, amps })
    }

    /// Same state with qubit `p` relabelled `n + 1 - p` (bit-reversed indices).
    pub fn with_reversed_qubits(&self) -> StateVector {
        let n = self.n;
        let rev = |i: usize| if n == 0 { 0 } else { i.reverse_bits() >> (usize::BITS as usize - n) };
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            amps[rev(i)] = *a;
        }
        StateVector { n, amps }
    }

    /// Reduced density matrix `[[rho00, rho01], [rho10, rho11]]` of qubit `q`.
    pub fn qubit_density(&self, q: usize) -> Result<[[Complex64; 2]; 2]> {
        let mask = self.qubit_mask(q)?;
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, a0) in self.amps.iter().enumerate().filter(|(i, _)| i & mask == 0) {
            let a1 = self.amps[i | mask];
            rho[0][0] += a0 * a0.conj();
            rho[0][1] += a0 * a1.conj();
            rho[1][0] += a1 * a0.conj();
            rho[1][1] += a1 * a1.conj();
        }
        Ok(rho)
    }

    /// `index<TAB>re<TAB>im`, one line per amplitude above
    /// [`DEBUG_TEXT_CUTOFF`], indices ascending.
    pub fn to_debug_text(&self) -> String {
        let clean = |v: f64| if v.abs() < 5e-16 { 0.0 } else { v };
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > DEBUG_TEXT_CUTOFF {
                let _ = writeln!(out, "{i}\t{:.15}\t{:.15}", clean(a.re), clean(a.im));
            }
        }
        out
    }

    /// Inverse of [`to_debug_text`](Self::to_debug_text) for an `n`-qubit register.
    pub fn from_debug_text(n: usize, text: &str) -> Result<StateVector> {
        let mut state = StateVector::basis_state(n, 0)?;
        state.amps[0] = Complex64::new(0.0, 0.0);
        for (lineno, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = |r: &str| Error::Config(format!("debug text line {}: {r}", lineno + 1));
            let mut fields = line.split('\t');
            let mut next = || fields.next().ok_or_else(|| bad("expected 3 tab-separated fields"));
            let index: usize = next()?.parse().map_err(|_| bad("bad index"))?;
            let re: f64 = next()?.parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = next()?.parse().map_err(|_| bad("bad imaginary part"))?;
            if index >= state.amps.len() {
                return Err(Error::BasisIndexOutOfRange { index, n });
            }
            state.amps[index] = Complex64::new(re, im);
        }
        Ok(state)
    }

    /// Largest per-amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        self.same_size(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    fn same_size(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }
}

/// `<a|b>`, conjugating `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.same_size(b)?;
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    inner_product(a, b).map(|z| z.norm_sqr())
}
