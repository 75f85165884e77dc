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

//! QFT and `AQFT_m` gate programs.
//!
//! Wire `j` receives a Hadamard followed by controlled rotations
//! `R_k = diag(1, e^(2 pi i / 2^k))` for `k = 2, 3, ...`, each controlled by
//! wire `j + k - 1`. The threshold `m` keeps exactly the gates with `k <= m`.
//! No qubit-reversal swaps are appended: after the forward transform wire
//! `p` holds `(0.x_p ... x_n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::statevector::{Sign, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Hadamard { target: usize },
    /// `R_k` on `target` controlled by `control`; `inverted` conjugates it.
    ControlledRk { k: u32, control: usize, target: usize, inverted: bool },
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::Hadamard { .. } => self,
            Gate::ControlledRk { k, control, target, inverted } => {
                Gate::ControlledRk { k, control, target, inverted: !inverted }
            }
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        let in_range = |q: usize| if q == 0 || q > n { Err(Error::QubitOutOfRange { q, n }) } else { Ok(()) };
        match *self {
            Gate::Hadamard { target } => in_range(target),
            Gate::ControlledRk { k, control, target, .. } => {
                in_range(control)?;
                in_range(target)?;
                if control == target {
                    return Err(Error::QubitClash(target));
                }
                if k < 2 {
                    return Err(Error::Config(format!("rotation order {k} < 2")));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Hadamard { target } => write!(f, "H {target}"),
            Gate::ControlledRk { k, control, target, inverted } => {
                write!(f, "CR {k} {control} {target}")?;
                if inverted {
                    f.write_str(" inv")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateCount {
    pub hadamards: usize,
    pub rotations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitPlan {
    n: usize,
    gates: Vec<Gate>,
    label: String,
}

impl CircuitPlan {
    /// A validated plan. Labels may not contain whitespace.
    pub fn new(n: usize, gates: Vec<Gate>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::Config(format!("invalid circuit label {label:?}")));
        }
        for g in &gates {
            g.check(n)?;
        }
        Ok(CircuitPlan { n, gates, label })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Reversed gate order with every rotation conjugated.
    pub fn inverse(&self) -> CircuitPlan {
        let label = match self.label.strip_prefix("inv_") {
            Some(rest) => rest.to_string(),
            None => format!("inv_{}", self.label),
        };
        CircuitPlan { n: self.n, gates: self.gates.iter().rev().map(|g| g.inverse()).collect(), label }
    }

    pub fn gate_count(&self) -> GateCount {
        self.gates.iter().fold(GateCount::default(), |mut c, g| {
            match g {
                Gate::Hadamard { .. } => c.hadamards += 1,
                Gate::ControlledRk { .. } => c.rotations += 1,
            }
            c
        })
    }

    /// Apply the gates in order.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: state.num_qubits() });
        }
        for g in &self.gates {
            match *g {
                Gate::Hadamard { target } => state.apply_hadamard(target)?,
                Gate::ControlledRk { k, control, target, inverted } => {
                    let sign = if inverted { Sign::Inverse } else { Sign::Forward };
                    state.apply_controlled_rotation(control, target, Phase::pow2_inv(k)?, sign)?
                }
            }
        }
        Ok(())
    }

    pub fn run(&self, mut state: StateVector) -> Result<StateVector> {
        self.apply(&mut state)?;
        Ok(state)
    }

    /// Line format: a `n=<n> label=<label>` header, then `H q` or
    /// `CR k control target [inv]` per gate.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} label={}\n", self.n, self.label);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for CircuitPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for CircuitPlan {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, reason: &str| Error::CircuitParse { line: line + 1, reason: reason.to_string() };
        let (hline, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let mut n = None;
        let mut label = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| bad(hline, "bad n"))?),
                Some(("label", v)) => label = Some(v.to_string()),
                _ => return Err(bad(hline, "expected `n=<n> label=<label>`")),
            }
        }
        let n = n.ok_or_else(|| bad(hline, "header lacks n"))?;
        let label = label.ok_or_else(|| bad(hline, "header lacks label"))?;
        let mut gates = Vec::new();
        for (i, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad(i, "bad integer"));
            let gate = match toks.as_slice() {
                ["H", q] => Gate::Hadamard { target: num(q)? },
                ["CR", k, c, t] => Gate::ControlledRk { k: num(k)? as u32, control: num(c)?, target: num(t)?, inverted: false },
                ["CR", k, c, t, "inv"] => {
                    Gate::ControlledRk { k: num(k)? as u32, control: num(c)?, target: num(t)?, inverted: true }
                }
                _ => return Err(bad(i, "unrecognised gate")),
            };
            gate.check(n).map_err(|e| bad(i, &e.to_string()))?;
            gates.push(gate);
        }
        CircuitPlan::new(n, gates, label)
    }
}

fn build(n: usize, keep_up_to: usize, label: String) -> Result<CircuitPlan> {
    if n == 0 {
        return Err(Error::Config("a circuit needs at least one qubit".into()));
    }
    let mut gates = Vec::with_capacity(n + aqft_rotation_count(n, keep_up_to.max(2).min(n)));
    for j in 1..=n {
        gates.push(Gate::Hadamard { target: j });
        let top = keep_up_to.min(n - j + 1);
        for k in 2..=top {
            gates.push(Gate::ControlledRk { k: k as u32, control: j + k - 1, target: j, inverted: false });
        }
    }
    Ok(CircuitPlan { n, gates, label })
}

/// The exact QFT.
pub fn build_qft(n: usize) -> Result<CircuitPlan> {
    build(n, n, "qft".into())
}

/// `AQFT_m`: the QFT with every `R_k`, `k > m`, removed. `m >= n` is the
/// exact QFT (same gates and label).
pub fn build_aqft(n: usize, m: usize) -> Result<CircuitPlan> {
    let m = crate::clamp_threshold(n, m)?;
    if m >= n {
        return build_qft(n);
    }
    build(n, m, format!("aqft_m{m}"))
}

/// `n(n-1)/2`.
pub fn qft_rotation_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `(m-1)(n-m+1) + (m-1)(m-2)/2` for `2 <= m <= n`; `m` above `n` saturates.
pub fn aqft_rotation_count(n: usize, m: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let m = m.min(n);
    if m < 2 {
        return 0;
    }
    (m - 1) * (n - m + 1) + (m - 1) * (m - 2) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: usize) -> Gate {
        Gate::Hadamard { target: t }
    }

    fn cr(k: u32, control: usize, target: usize) -> Gate {
        Gate::ControlledRk { k, control, target, inverted: false }
    }

    #[test]
    fn qft_layouts() {
        assert_eq!(build_qft(1).unwrap().gates(), &[h(1)]);
        assert_eq!(build_qft(3).unwrap().gates(), &[h(1), cr(2, 2, 1), cr(3, 3, 1), h(2), cr(2, 3, 2), h(3)]);
        assert!(build_qft(0).is_err());
    }

    #[test]
    fn counts_by_enumeration() {
        for n in 1..=10 {
            let c = build_qft(n).unwrap().gate_count();
            assert_eq!(c, GateCount { hadamards: n, rotations: n * (n - 1) / 2 });
        }
        assert_eq!(build_qft(10).unwrap().gate_count(), GateCount { hadamards: 10, rotations: 45 });
        assert_eq!(build_aqft(10, 5).unwrap().gate_count(), GateCount { hadamards: 10, rotations: 30 });
        assert_eq!(build_aqft(5, 3).unwrap().gate_count().rotations, 7);
        for n in 2..=12 {
            let plan = build_aqft(n, 2).unwrap();
            assert_eq!(plan.gate_count(), GateCount { hadamards: n, rotations: n - 1 });
            for j in 1..n {
                let on_wire: Vec<_> = plan
                    .gates()
                    .iter()
                    .filter(|g| matches!(g, Gate::ControlledRk { target, .. } if *target == j))
                    .collect();
                assert_eq!(on_wire, vec![&cr(2, j + 1, j)]);
            }
        }
    }

    #[test]
    fn aqft_full_threshold_is_qft() {
        assert_eq!(build_aqft(1, 2).unwrap(), build_qft(1).unwrap());
        for n in 2..=12 {
            assert_eq!(build_aqft(n, n).unwrap(), build_qft(n).unwrap());
            assert_eq!(build_aqft(n, n + 5).unwrap(), build_qft(n).unwrap());
        }
        assert!(build_aqft(4, 1).is_err());
    }

    #[test]
    fn aqft_label_and_kept_orders() {
        let p = build_aqft(6, 3).unwrap();
        assert_eq!(p.label(), "aqft_m3");
        assert!(p.gates().iter().all(|g| match g {
            Gate::ControlledRk { k, .. } => *k <= 3,
            _ => true,
        }));
    }

    #[test]
    fn inverse_is_structural_involution() {
        let p = build_aqft(6, 4).unwrap();
        let inv = p.inverse();
        assert_eq!(inv.label(), "inv_aqft_m4");
        assert_eq!(inv.gates().first(), Some(&h(6)));
        assert_eq!(inv.gates()[1], Gate::ControlledRk { k: 2, control: 6, target: 5, inverted: true });
        assert_eq!(inv.inverse(), p);
    }

    #[test]
    fn text_golden_and_parse() {
        let text = build_qft(3).unwrap().to_text();
        assert_eq!(text, "n=3 label=qft\nH 1\nCR 2 2 1\nCR 3 3 1\nH 2\nCR 2 3 2\nH 3\n");
        let inv = build_aqft(5, 3).unwrap().inverse();
        assert_eq!(inv.to_text().parse::<CircuitPlan>().unwrap(), inv);
        assert!("n=2 label=x\nH 3\n".parse::<CircuitPlan>().is_err());
        assert!("n=2 label=x\nCR 2 1 1\n".parse::<CircuitPlan>().is_err());
        assert!("H 1\n".parse::<CircuitPlan>().is_err());
        assert!("n=2 label=x\nX 1\n".parse::<CircuitPlan>().is_err());
    }

    #[test]
    fn run_rejects_wrong_size() {
        let p = build_qft(3).unwrap();
        assert!(matches!(p.run(StateVector::basis_state(2, 0).unwrap()), Err(Error::DimensionMismatch { .. })));
        let empty = CircuitPlan::new(3, vec![], "empty").unwrap();
        let s = StateVector::basis_state(3, 5).unwrap();
        assert_eq!(empty.run(s.clone()).unwrap(), s);
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(qft_rotation_count(1024), 523_776);
        assert_eq!(aqft_rotation_count(1024, 12), 11_198);
        assert_eq!(aqft_rotation_count(4, 9), qft_rotation_count(4));
    }
}
