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

//! Reproducible batch experiments: exact sweeps over phase grids, Monte
//! Carlo estimates, AQFT-vs-QFT fidelity tables and gate-count tables.
//!
//! Every result is a pure function of its configuration and seed. Rows are
//! produced in parallel and emitted in key order, and per-sample randomness
//! comes from [`counter_draws`], so thread count never changes an output byte.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{aqft_lower_bound, barenco_bound, fixed_bound, fixed_bound_const};
use crate::circuits::{aqft_rotation_count, build_aqft, build_qft, qft_rotation_count};
use crate::error::{Error, Result};
use crate::format::prob;
use crate::phase::{phase_from_bits, BitString, Phase, DEFAULT_GUARD_BITS};
use crate::semiclassical::{counter_draws, sample_run, success_probability_exact, Criterion, TrialSpec};
use crate::statevector::{fidelity, StateVector};
use crate::{clamp_threshold, log_rule_threshold, MAX_PHASE_BITS};

/// Register limit for [`fidelity_sweep`] (it enumerates all basis inputs).
pub const FIDELITY_SWEEP_LIMIT: usize = 10;

/// Fewest samples accepted by [`monte_carlo_estimate`].
pub const MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MRule {
    Fixed(usize),
    /// `ceil(log2 n) + offset`, clamped to `[2, n]`.
    LogRule(usize),
}

impl MRule {
    pub fn resolve(&self, n: usize) -> Result<usize> {
        match *self {
            MRule::Fixed(m) => clamp_threshold(n, m),
            MRule::LogRule(offset) => Ok(log_rule_threshold(n, offset)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiGrid {
    /// `k` points `floor(j 2^G / k) / 2^G`, `j = 0..k`, with `G >= n + 3`.
    Dyadic(usize),
    /// Exact ties, near-ties and exact multiples around a fixed family of
    /// estimates, where the success probability is smallest.
    WorstCase,
    Explicit(Vec<Phase>),
}

/// Which bound a sweep row must clear to count as passing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RequiredBound {
    /// `4/pi^2 cos^2(pi 2^-m)^(n-m)` for the row's own threshold.
    #[default]
    Aqft,
    /// `4/pi^2 - 1/(4n)`; needs `n >= 4`.
    Fixed,
    /// `4/pi^2 - 1/16`.
    Const,
}

impl RequiredBound {
    fn value(&self, row: &SweepRow) -> f64 {
        match self {
            RequiredBound::Aqft => row.aqft_bound,
            RequiredBound::Fixed => row.fixed_n.expect("validated: n >= 4"),
            RequiredBound::Const => row.fixed_const,
        }
    }
}

impl std::str::FromStr for RequiredBound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "aqft" => Ok(RequiredBound::Aqft),
            "fixed" => Ok(RequiredBound::Fixed),
            "const" => Ok(RequiredBound::Const),
            other => Err(Error::Config(format!("unknown bound {other:?} (aqft | fixed | const)"))),
        }
    }
}

impl fmt::Display for RequiredBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RequiredBound::Aqft => "aqft",
            RequiredBound::Fixed => "fixed",
            RequiredBound::Const => "const",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub m_rule: MRule,
    pub phi_grids: Vec<PhiGrid>,
    pub criterion: Criterion,
    pub seed: u64,
    pub samples: usize,
    /// Precision of generated phases is `n + guard_bits` (capped at 127).
    pub guard_bits: u32,
    pub require: RequiredBound,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_values: vec![8],
            m_rule: MRule::LogRule(2),
            phi_grids: vec![PhiGrid::Dyadic(257)],
            criterion: Criterion::Nearest,
            seed: 0,
            samples: 10_000,
            guard_bits: DEFAULT_GUARD_BITS,
            require: RequiredBound::Aqft,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values is empty".into()));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0 || n >= MAX_PHASE_BITS as usize) {
            return Err(Error::Config(format!("register size {n} outside 1..{MAX_PHASE_BITS}")));
        }
        if self.phi_grids.is_empty() {
            return Err(Error::Config("no phi grid".into()));
        }
        for g in &self.phi_grids {
            match g {
                PhiGrid::Dyadic(0) => return Err(Error::Config("dyadic grid needs at least one point".into())),
                PhiGrid::Explicit(v) if v.is_empty() => return Err(Error::Config("explicit grid is empty".into())),
                _ => {}
            }
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be >= 1".into()));
        }
        for &n in &self.n_values {
            self.m_rule.resolve(n)?;
            if self.require == RequiredBound::Fixed && n < 4 {
                return Err(Error::BoundDomain(n));
            }
        }
        Ok(())
    }

    /// Parse `key = value` lines. Keys: `n` (comma list), `m`, `log_rule`,
    /// `grid` (`dyadic:K`, `worst`, `explicit:P1,P2,..`; repeatable or
    /// joined with `+`), `criterion`, `seed`, `samples`, `guard_bits`,
    /// `require` (`aqft`, `fixed`, `const`).
    /// `#` starts a comment.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let mut grids = Vec::new();
        let mut pending_explicit = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |r: String| Error::Config(format!("line {}: {r}", i + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => cfg.n_values = parse_usize_list(value).map_err(bad)?,
                "m" => cfg.m_rule = MRule::Fixed(value.parse().map_err(|_| bad(format!("bad m {value:?}")))?),
                "log_rule" => cfg.m_rule = MRule::LogRule(value.parse().map_err(|_| bad(format!("bad log_rule {value:?}")))?),
                "grid" => {
                    for part in value.split('+') {
                        grids.push(parse_grid_spec(part.trim(), &mut pending_explicit).map_err(bad)?);
                    }
                }
                "criterion" => cfg.criterion = value.parse()?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad(format!("bad seed {value:?}")))?,
                "samples" => cfg.samples = value.parse().map_err(|_| bad(format!("bad samples {value:?}")))?,
                "guard_bits" => cfg.guard_bits = value.parse().map_err(|_| bad(format!("bad guard_bits {value:?}")))?,
                "require" => cfg.require = value.parse()?,
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
        if !grids.is_empty() {
            cfg.phi_grids = grids;
        }
        resolve_explicit(&mut cfg, pending_explicit)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn precision_for(&self, n: usize) -> u32 {
        (n as u32 + self.guard_bits).min(MAX_PHASE_BITS)
    }
}

/// Explicit lists come back empty and are filled by [`resolve_explicit`]
/// once the final `n` list (and so the precision) is known.
fn parse_grid_spec(spec: &str, pending: &mut Vec<String>) -> std::result::Result<PhiGrid, String> {
    if spec == "worst" || spec == "worstcase" {
        return Ok(PhiGrid::WorstCase);
    }
    if let Some(k) = spec.strip_prefix("dyadic:") {
        return k.trim().parse().map(PhiGrid::Dyadic).map_err(|_| format!("bad grid size {k:?}"));
    }
    if let Some(list) = spec.strip_prefix("explicit:") {
        pending.push(list.to_string());
        return Ok(PhiGrid::Explicit(Vec::new()));
    }
    Err(format!("unknown grid {spec:?} (dyadic:K | worst | explicit:P,..)"))
}

fn resolve_explicit(cfg: &mut SweepConfig, pending: Vec<String>) -> Result<()> {
    let max_n = cfg.n_values.iter().copied().max().unwrap_or(1);
    let precision = cfg.precision_for(max_n);
    let mut lists = pending.into_iter();
    for g in cfg.phi_grids.iter_mut() {
        if let PhiGrid::Explicit(v) = g {
            if v.is_empty() {
                let list = lists.next().unwrap_or_default();
                *v = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| Phase::parse(s, precision).map(|p| p.phase))
                    .collect::<Result<_>>()?;
            }
        }
    }
    Ok(())
}

pub fn parse_usize_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad integer {t:?}"))).collect()
}

fn ceil_log2(k: usize) -> u32 {
    if k <= 1 {
        0
    } else {
        usize::BITS - (k - 1).leading_zeros()
    }
}

/// Base estimates used by [`PhiGrid::WorstCase`]: structured patterns plus
/// eight seeded strings.
fn worst_case_bases(n: usize, seed: u64) -> Vec<BitString> {
    let full = if n >= 128 { u128::MAX } else { (1u128 << n) - 1 };
    let alt = 0x5555_5555_5555_5555_5555_5555_5555_5555u128 & full;
    let mut values = vec![0, full, alt, !alt & full, full >> 1, 1u128 << (n - 1)];
    for i in 0..8 {
        let draws = counter_draws(seed ^ 0x5eed_0000, n, 0, i);
        let v = draws.iter().fold(0u128, |acc, d| (acc << 1) | (*d >= 0.5) as u128);
        values.push(v & full);
    }
    values.sort_unstable();
    values.dedup();
    values.into_iter().map(|v| BitString::from_value(v, n).expect("masked")).collect()
}

/// Grid points for register size `n`, ascending and de-duplicated.
pub fn grid_points(grid: &PhiGrid, n: usize, guard_bits: u32, seed: u64) -> Vec<Phase> {
    let mut points = match grid {
        PhiGrid::Dyadic(k) => {
            let k = *k;
            let index_bits = ceil_log2(k);
            let g = (n as u32 + 3).max(index_bits).min(MAX_PHASE_BITS).min(128 - index_bits);
            (0..k as u128).map(|j| Phase::new((j << g) / k as u128, g).expect("g <= 127")).collect()
        }
        PhiGrid::WorstCase => {
            let f = (n as u32 + guard_bits).min(MAX_PHASE_BITS).max(n as u32 + 2);
            let half = Phase::pow2_inv(n as u32 + 1).expect("n < 126");
            let eps = Phase::pow2_inv(f).expect("f <= 127");
            let offsets = [Phase::ZERO, half, half - eps, eps - half, -half];
            worst_case_bases(n, seed)
                .iter()
                .flat_map(|x| {
                    let base = phase_from_bits(x);
                    offsets.iter().map(move |&o| base + o)
                })
                .collect()
        }
        PhiGrid::Explicit(v) => v.clone(),
    };
    points.sort();
    points.dedup();
    points
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    /// Exact dyadic form `k/2^F`.
    pub phi: String,
    pub phi_decimal: f64,
    pub exact_p: f64,
    pub aqft_bound: f64,
    pub fixed_n: Option<f64>,
    pub fixed_const: f64,
    pub barenco: f64,
    /// `exact_p` minus the required bound.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub min_exact_p: f64,
    pub argmin_n: usize,
    pub argmin_phi: String,
    pub min_margin: f64,
    pub required: RequiredBound,
    /// Rows with `exact_p` below the required bound.
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

impl SweepResult {
    pub const CSV_HEADER: &'static str = "n,m,phi,phi_decimal,exact_p,aqft_bound,fixed_n,fixed_const,barenco,margin";

    /// Header, one line per row, then a `# summary ...` trailer line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.m,
                r.phi,
                r.phi_decimal,
                prob(r.exact_p),
                prob(r.aqft_bound),
                r.fixed_n.map(prob).unwrap_or_else(|| "NA".into()),
                prob(r.fixed_const),
                prob(r.barenco),
                prob(r.margin)
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "# summary rows={} min_exact_p={} argmin_n={} argmin_phi={} min_margin={} required={} violations={}",
            s.rows,
            prob(s.min_exact_p),
            s.argmin_n,
            s.argmin_phi,
            prob(s.min_margin),
            s.required,
            s.violations
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Exact success probability and bounds at every `(n, m(n), phi)`.
pub fn sweep_exact(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut n_values = config.n_values.clone();
    n_values.sort_unstable();
    n_values.dedup();
    for &n in &n_values {
        let m = config.m_rule.resolve(n)?;
        let aqft = aqft_lower_bound(n, m)?;
        let fixed_n = fixed_bound(n).ok();
        let barenco = barenco_bound(n, m.min(n) as f64)?;
        let mut phis: Vec<Phase> = config
            .phi_grids
            .iter()
            .flat_map(|g| grid_points(g, n, config.guard_bits, config.seed))
            .collect();
        phis.sort();
        phis.dedup();
        let chunk: Vec<SweepRow> = phis
            .par_iter()
            .map(|&phi| {
                let spec = TrialSpec::new(n, m, phi, config.criterion)?;
                let exact_p = success_probability_exact(&spec);
                let mut row = SweepRow {
                    n,
                    m,
                    phi: phi.to_dyadic_string(),
                    phi_decimal: phi.to_f64(),
                    exact_p,
                    aqft_bound: aqft,
                    fixed_n,
                    fixed_const: fixed_bound_const(),
                    barenco,
                    margin: 0.0,
                };
                row.margin = exact_p - config.require.value(&row);
                Ok(row)
            })
            .collect::<Result<_>>()?;
        rows.extend(chunk);
    }
    let argmin = rows
        .iter()
        .min_by(|a, b| a.exact_p.total_cmp(&b.exact_p))
        .expect("validated grids are non-empty");
    let summary = SweepSummary {
        rows: rows.len(),
        min_exact_p: argmin.exact_p,
        argmin_n: argmin.n,
        argmin_phi: argmin.phi.clone(),
        min_margin: rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min),
        required: config.require,
        violations: rows.iter().filter(|r| r.margin < 0.0).count(),
    };
    Ok(SweepResult { rows, summary })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub samples: usize,
    pub successes: usize,
    pub p_hat: f64,
    /// `sqrt(p_hat (1 - p_hat) / samples)`.
    pub standard_error: f64,
}

impl MonteCarloEstimate {
    /// `|p_hat - p| <= k * standard_error`.
    pub fn agrees_with(&self, p: f64, k: f64) -> bool {
        (self.p_hat - p).abs() <= k * self.standard_error
    }
}

/// Fraction of successful sampled runs, on the global rayon pool.
pub fn monte_carlo_estimate(spec: &TrialSpec, samples: usize, seed: u64) -> Result<MonteCarloEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples { got: samples, min: MIN_SAMPLES });
    }
    let successes = (0..samples as u64)
        .into_par_iter()
        .filter(|&i| {
            let draws = counter_draws(seed, spec.n(), spec.m(), i);
            sample_run(spec, &draws).expect("n draws").success
        })
        .count();
    let p_hat = successes as f64 / samples as f64;
    Ok(MonteCarloEstimate {
        samples,
        successes,
        p_hat,
        standard_error: (p_hat * (1.0 - p_hat) / samples as f64).sqrt(),
    })
}

/// [`monte_carlo_estimate`] on a dedicated pool of `workers` threads.
pub fn monte_carlo_estimate_with_workers(
    spec: &TrialSpec,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| monte_carlo_estimate(spec, samples, seed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityRow {
    pub n: usize,
    pub m: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
}

/// `|<QFT x|AQFT_m x>|^2` over every basis input `x`, summarised per `m`.
pub fn fidelity_sweep(n: usize, m_list: &[usize]) -> Result<Vec<FidelityRow>> {
    if n > FIDELITY_SWEEP_LIMIT {
        return Err(Error::SizeGuard { what: "fidelity_sweep", n, limit: FIDELITY_SWEEP_LIMIT });
    }
    let qft = build_qft(n)?;
    let dim = 1usize << n;
    let exact: Vec<StateVector> = (0..dim)
        .into_par_iter()
        .map(|x| qft.run(StateVector::basis_state(n, x)?))
        .collect::<Result<_>>()?;
    m_list
        .iter()
        .map(|&m| {
            let plan = build_aqft(n, m)?;
            let fids: Vec<f64> = (0..dim)
                .into_par_iter()
                .map(|x| fidelity(&exact[x], &plan.run(StateVector::basis_state(n, x)?)?))
                .collect::<Result<_>>()?;
            Ok(FidelityRow {
                n,
                m: clamp_threshold(n, m)?,
                min_fidelity: fids.iter().copied().fold(f64::INFINITY, f64::min),
                mean_fidelity: fids.iter().sum::<f64>() / dim as f64,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateCountRow {
    pub n: usize,
    pub m: usize,
    pub hadamards: usize,
    pub qft_rotations: usize,
    pub aqft_rotations: usize,
    /// `qft_rotations / aqft_rotations` (1 when both are zero).
    pub ratio: f64,
}

impl GateCountRow {
    pub const CSV_HEADER: &'static str = "n,m,hadamards,qft_rotations,aqft_rotations,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.m,
            self.hadamards,
            self.qft_rotations,
            self.aqft_rotations,
            prob(self.ratio)
        )
    }
}

/// Closed-form rotation counts for each `n` under `m_rule`.
pub fn gate_count_table(n_list: &[usize], m_rule: MRule) -> Result<Vec<GateCountRow>> {
    n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::Config("n must be at least 1".into()));
            }
            let m = m_rule.resolve(n)?;
            let qft_rotations = qft_rotation_count(n);
            let aqft_rotations = aqft_rotation_count(n, m);
            let ratio = if aqft_rotations == 0 { 1.0 } else { qft_rotations as f64 / aqft_rotations as f64 };
            Ok(GateCountRow { n, m, hadamards: n, qft_rotations, aqft_rotations, ratio })
        })
        .collect()
}

/// Measurement distribution of the inverse `AQFT_m` circuit applied to the
/// phase register, by statevector simulation. Index = measured integer.
pub fn unitary_distribution(n: usize, m: usize, phi: Phase) -> Result<Vec<f64>> {
    let plan = build_aqft(n, m)?.inverse();
    let state = plan.run(StateVector::prepare_phase_register(phi, n)?)?;
    Ok(state.probabilities())
}
