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

//! The `aqft` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a checked property fails (bound
//! violation in `sweep`, Monte Carlo disagreement in `montecarlo`), 2 on
//! usage or parse errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::bounds_report;
use crate::circuits::{build_aqft, build_qft};
use crate::error::{Error, Result};
use crate::experiments::{
    gate_count_table, monte_carlo_estimate, monte_carlo_estimate_with_workers, sweep_exact,
    unitary_distribution, GateCountRow, MRule, PhiGrid, SweepConfig,
};
use crate::format::prob;
use crate::phase::{phase_from_bits, BitString, ParsedPhase, Phase, DEFAULT_GUARD_BITS};
use crate::semiclassical::{bit_trials, success_probability_exact, Criterion, TrialSpec};
use crate::statevector::{StateVector, DEFAULT_QUBIT_CAP};
use crate::MAX_PHASE_BITS;

/// Environment variable holding the default `--format`.
pub const FORMAT_ENV: &str = "AQFT_FORMAT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "aqft", version, about = "QFT / AQFT phase-estimation laboratory")]
pub struct Cli {
    /// Output format (default from AQFT_FORMAT, else text)
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a QFT / AQFT_m gate program in line format
    EmitCircuit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        inverse: bool,
    },
    /// Statevector simulation of inverse AQFT_m on the phase register
    Simulate {
        #[command(flatten)]
        trial: TrialArgs,
        /// Number of most likely outcomes to print
        #[arg(long, default_value_t = 16)]
        top: usize,
        /// Print the final state in debug text form instead
        #[arg(long)]
        dump_state: bool,
    },
    /// Exact success probability with the per-bit table
    Trial {
        #[command(flatten)]
        trial: TrialArgs,
    },
    /// Evaluate every bound for (n, m)
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Exact success probability over phase grids against the bounds
    Sweep(SweepArgs),
    /// Seeded Monte Carlo estimate of the success probability
    Montecarlo {
        #[command(flatten)]
        trial: TrialArgs,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Worker threads (results do not depend on this)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Closed-form QFT vs AQFT rotation counts
    Gatecount {
        /// Comma-separated register sizes
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, conflicts_with = "log_rule")]
        m: Option<usize>,
        #[arg(long)]
        log_rule: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: usize,
    /// Threshold; omitted means the full QFT
    #[arg(long)]
    pub m: Option<usize>,
    /// `0.3217`, `5/2^4`, `5/16` or `0.0101b`
    #[arg(long)]
    pub phi: String,
    #[arg(long, value_enum, default_value_t = CriterionArg::Nearest)]
    pub criterion: CriterionArg,
    /// Bits used for decimal phases (default n + 32)
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Nearest,
    Two,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Nearest => Criterion::Nearest,
            CriterionArg::Two => Criterion::OneOfTwoNearest,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// key=value configuration file; flags given alongside override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, conflicts_with = "log_rule")]
    pub m: Option<usize>,
    /// m = ceil(log2 n) + K (default 2)
    #[arg(long)]
    pub log_rule: Option<usize>,
    /// Dyadic grid size
    #[arg(long)]
    pub grid: Option<usize>,
    /// Add the worst-case (tie / near-tie) grid
    #[arg(long)]
    pub worst_case: bool,
    /// Explicit comma-separated phases
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub guard_bits: Option<u32>,
    /// Bound every row must clear: aqft (default), fixed or const
    #[arg(long)]
    pub require: Option<String>,
}

/// Parse `args` (including the program name) and run, writing to `out` and
/// `err`. Returns the process exit code; never panics on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let format = cli.format.or_else(format_from_env).unwrap_or(OutputFormat::Text);
    match dispatch(&cli.command, format, out, err) {
        Ok(code) => code,
        // the reader went away (`aqft ... | head`); nothing left to report
        Err(Error::Output { kind: std::io::ErrorKind::BrokenPipe, .. }) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn format_from_env() -> Option<OutputFormat> {
    let v = std::env::var(FORMAT_ENV).ok()?;
    OutputFormat::from_str(v.trim(), true).ok()
}

fn io(e: std::io::Error) -> Error {
    Error::Output { kind: e.kind(), message: e.to_string() }
}

fn dispatch(cmd: &Command, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::EmitCircuit { n, m, inverse } => emit_circuit(*n, *m, *inverse, format, out),
        Command::Simulate { trial, top, dump_state } => simulate(trial, *top, *dump_state, format, out),
        Command::Trial { trial } => trial_cmd(trial, format, out),
        Command::Bounds { n, m } => bounds_cmd(*n, *m, format, out, err),
        Command::Sweep(args) => sweep_cmd(args, format, out),
        Command::Montecarlo { trial, samples, seed, workers } => {
            montecarlo_cmd(trial, *samples, *seed, *workers, format, out)
        }
        Command::Gatecount { n, m, log_rule } => gatecount_cmd(n, *m, *log_rule, format, out),
    }
}

fn emit_circuit(n: usize, m: Option<usize>, inverse: bool, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    if n == 0 || n > DEFAULT_QUBIT_CAP {
        return Err(Error::Config(format!("--n must be in 1..={DEFAULT_QUBIT_CAP}, got {n}")));
    }
    let plan = match m {
        None => build_qft(n)?,
        Some(m) if m < 2 || m > n.max(2) => {
            return Err(Error::Config(format!("--m must be in 2..={n}, got {m}")));
        }
        Some(m) => build_aqft(n, m)?,
    };
    let plan = if inverse { plan.inverse() } else { plan };
    match format {
        OutputFormat::Json => {
            let gates: Vec<String> = plan.gates().iter().map(|g| g.to_string()).collect();
            let count = plan.gate_count();
            let v = json!({
                "n": plan.num_qubits(),
                "label": plan.label(),
                "hadamards": count.hadamards,
                "rotations": count.rotations,
                "gates": gates,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
        }
        _ => write!(out, "{}", plan.to_text()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

struct ResolvedTrial {
    spec: TrialSpec,
    parsed: ParsedPhase,
}

fn resolve_trial(t: &TrialArgs) -> Result<ResolvedTrial> {
    if t.n == 0 || t.n >= MAX_PHASE_BITS as usize {
        return Err(Error::Config(format!("--n must be in 1..{MAX_PHASE_BITS}, got {}", t.n)));
    }
    let precision = t.precision.unwrap_or((t.n as u32 + DEFAULT_GUARD_BITS).min(MAX_PHASE_BITS));
    let parsed = Phase::parse(&t.phi, precision)?;
    let m = t.m.unwrap_or(t.n.max(2));
    let spec = TrialSpec::new(t.n, m, parsed.phase, t.criterion.into())?;
    Ok(ResolvedTrial { spec, parsed })
}

fn phase_json(p: &ParsedPhase) -> serde_json::Value {
    json!({
        "decimal": p.phase.to_decimal_string(),
        "dyadic": p.phase.to_dyadic_string(),
        "rounded": p.rounded,
    })
}

fn phase_line(input: &str, p: &ParsedPhase) -> String {
    let note = if p.rounded { format!(" (rounded from {input} at {} bits)", p.phase.precision()) } else { String::new() };
    format!("phi={} dyadic={}{note}", p.phase.to_decimal_string(), p.phase.to_dyadic_string())
}

fn trial_cmd(t: &TrialArgs, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let ResolvedTrial { spec, parsed } = resolve_trial(t)?;
    let (x_hat, delta) = spec.nearest();
    let rows = bit_trials(&spec);
    let product: f64 = rows.iter().map(|r| r.probability).product();
    let qualifying = spec.qualifying_strings();
    let p = success_probability_exact(&spec);
    match format {
        OutputFormat::Json => {
            let v = json!({
                "n": spec.n(),
                "m": spec.m(),
                "criterion": spec.criterion(),
                "phi": phase_json(&parsed),
                "estimate": x_hat.to_string(),
                "delta": delta.to_dyadic_string(),
                "bits": rows,
                "product": product,
                "qualifying": qualifying.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "probability": p,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "p,bit,chi,delta_p,delta_p_decimal,cos2").map_err(io)?;
            for r in &rows {
                writeln!(out, "{},{},{},{},{},{}", r.p, r.bit, r.chi, r.delta, r.delta.to_f64(), prob(r.probability))
                    .map_err(io)?;
            }
            writeln!(out, "# product={} probability={}", prob(product), prob(p)).map_err(io)?;
        }
        OutputFormat::Text => {
            writeln!(out, "n={} m={} criterion={}", spec.n(), spec.m(), spec.criterion()).map_err(io)?;
            writeln!(out, "{}", phase_line(&t.phi, &parsed)).map_err(io)?;
            writeln!(
                out,
                "estimate={} ({}) delta={}",
                x_hat,
                phase_from_bits(&x_hat).to_decimal_string(),
                delta.to_dyadic_string()
            )
            .map_err(io)?;
            for r in &rows {
                writeln!(
                    out,
                    "p={} bit={} chi={} delta_p={} cos2={}",
                    r.p,
                    r.bit,
                    r.chi,
                    r.delta,
                    prob(r.probability)
                )
                .map_err(io)?;
            }
            writeln!(out, "product={}", prob(product)).map_err(io)?;
            let q: Vec<String> = qualifying.iter().map(|s| s.to_string()).collect();
            writeln!(out, "qualifying={}", q.join(",")).map_err(io)?;
            writeln!(out, "P={}", prob(p)).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn simulate(t: &TrialArgs, top: usize, dump_state: bool, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let ResolvedTrial { spec, parsed } = resolve_trial(t)?;
    if spec.n() > DEFAULT_QUBIT_CAP {
        return Err(Error::TooManyQubits { n: spec.n(), cap: DEFAULT_QUBIT_CAP });
    }
    if dump_state {
        let plan = build_aqft(spec.n(), spec.m())?.inverse();
        let state = plan.run(StateVector::prepare_phase_register(spec.phi(), spec.n())?)?;
        write!(out, "{}", state.to_debug_text()).map_err(io)?;
        return Ok(EXIT_OK);
    }
    let probs = unitary_distribution(spec.n(), spec.m(), spec.phi())?;
    let mut order: Vec<usize> = (0..probs.len()).collect();
    order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
    order.truncate(top);
    let success: f64 = spec.qualifying_strings().iter().map(|s| probs[s.value() as usize]).sum();
    let exact = success_probability_exact(&spec);
    let bits = |i: usize| BitString::from_value(i as u128, spec.n()).expect("index < 2^n").to_string();
    match format {
        OutputFormat::Json => {
            let rows: Vec<_> = order.iter().map(|&i| json!({"index": i, "bits": bits(i), "probability": probs[i]})).collect();
            let v = json!({
                "n": spec.n(), "m": spec.m(), "phi": phase_json(&parsed),
                "outcomes": rows, "success_statevector": success, "success_exact": exact,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
        }
        _ => {
            writeln!(out, "index,bits,probability").map_err(io)?;
            for &i in &order {
                writeln!(out, "{},{},{}", i, bits(i), prob(probs[i])).map_err(io)?;
            }
            writeln!(out, "# success_statevector={} success_exact={}", prob(success), prob(exact)).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn bounds_cmd(n: usize, m: usize, format: OutputFormat, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let r = bounds_report(n, m)?;
    if r.fixed_bound_n.is_none() {
        let _ = writeln!(err, "warning: fixed-bound column not applicable for n < 4 (marked NA)");
    }
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("json")).map_err(io)?,
        _ => writeln!(out, "{}\n{}", crate::bounds::BoundsReport::CSV_HEADER, r.csv_row()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            SweepConfig::from_kv_str(&text)?
        }
        None => SweepConfig::default(),
    };
    if let Some(n) = &args.n {
        cfg.n_values = n.clone();
    }
    if let Some(m) = args.m {
        cfg.m_rule = MRule::Fixed(m);
    }
    if let Some(k) = args.log_rule {
        cfg.m_rule = MRule::LogRule(k);
    }
    if let Some(c) = args.criterion {
        cfg.criterion = c.into();
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(g) = args.guard_bits {
        cfg.guard_bits = g;
    }
    if let Some(r) = &args.require {
        cfg.require = r.parse()?;
    }
    let mut grids = Vec::new();
    if let Some(k) = args.grid {
        grids.push(PhiGrid::Dyadic(k));
    }
    if args.worst_case {
        grids.push(PhiGrid::WorstCase);
    }
    if let Some(list) = &args.phi {
        let max_n = cfg.n_values.iter().copied().max().unwrap_or(1);
        let precision = (max_n as u32 + cfg.guard_bits).min(MAX_PHASE_BITS);
        let phis = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| Phase::parse(s, precision).map(|p| p.phase))
            .collect::<Result<Vec<_>>>()?;
        grids.push(PhiGrid::Explicit(phis));
    }
    if !grids.is_empty() {
        cfg.phi_grids = grids;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sweep_cmd(args: &SweepArgs, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let cfg = sweep_config(args)?;
    let result = sweep_exact(&cfg)?;
    match format {
        OutputFormat::Json => writeln!(out, "{}", result.to_json()).map_err(io)?,
        _ => write!(out, "{}", result.to_csv()).map_err(io)?,
    }
    Ok(if result.summary.violations == 0 { EXIT_OK } else { EXIT_PROPERTY })
}

fn montecarlo_cmd(
    t: &TrialArgs,
    samples: usize,
    seed: u64,
    workers: Option<usize>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let ResolvedTrial { spec, parsed } = resolve_trial(t)?;
    let est = match workers {
        Some(w) => monte_carlo_estimate_with_workers(&spec, samples, seed, w)?,
        None => monte_carlo_estimate(&spec, samples, seed)?,
    };
    let exact = success_probability_exact(&spec);
    // binomial spread at the exact value covers the p_hat in {0, 1} case
    let se_exact = (exact * (1.0 - exact) / samples as f64).sqrt();
    let tolerance = 4.0 * est.standard_error.max(se_exact);
    let agrees = (est.p_hat - exact).abs() <= tolerance;
    match format {
        OutputFormat::Json => {
            let v = json!({
                "n": spec.n(), "m": spec.m(), "criterion": spec.criterion(), "phi": phase_json(&parsed),
                "seed": seed, "samples": est.samples, "successes": est.successes,
                "p_hat": est.p_hat, "standard_error": est.standard_error,
                "exact_p": exact, "within_4se": agrees,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
        }
        _ => {
            writeln!(out, "n,m,phi,criterion,seed,samples,successes,p_hat,standard_error,exact_p,within_4se").map_err(io)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                spec.n(),
                spec.m(),
                parsed.phase.to_dyadic_string(),
                spec.criterion(),
                seed,
                est.samples,
                est.successes,
                prob(est.p_hat),
                prob(est.standard_error),
                prob(exact),
                agrees
            )
            .map_err(io)?;
        }
    }
    Ok(if agrees { EXIT_OK } else { EXIT_PROPERTY })
}

fn gatecount_cmd(
    n: &[usize],
    m: Option<usize>,
    log_rule: Option<usize>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let rule = match (m, log_rule) {
        (Some(m), _) => MRule::Fixed(m),
        (None, k) => MRule::LogRule(k.unwrap_or(2)),
    };
    let rows = gate_count_table(n, rule)?;
    match format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("json")).map_err(io)?,
        _ => {
            writeln!(out, "{}", GateCountRow::CSV_HEADER).map_err(io)?;
            for r in &rows {
                writeln!(out, "{}", r.csv_row()).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("aqft").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn emit_single_qubit() {
        let (code, out, _) = call(&["emit-circuit", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n=1 label=qft\nH 1\n");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["emit-circuit", "--n", "0"]).0, 2);
        assert_eq!(call(&["emit-circuit", "--n", "4", "--m", "5"]).0, 2);
        assert_eq!(call(&["emit-circuit", "--n", "4", "--bogus"]).0, 2);
        assert_eq!(call(&["trial", "--n", "4", "--phi", "0.x"]).0, 2);
        assert_eq!(call(&["montecarlo", "--n", "4", "--phi", "0.3", "--samples", "1000"]).0, 2);
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn trial_certain_phase() {
        let (code, out, _) = call(&["trial", "--n", "4", "--m", "4", "--phi", "0.0101b"]);
        assert_eq!(code, 0);
        assert!(out.contains("P=1.00000000000"), "{out}");
    }

    #[test]
    fn bounds_small_register_warns() {
        let (code, out, err) = call(&["bounds", "--n", "3", "--m", "2"]);
        assert_eq!(code, 0);
        assert!(err.contains("not applicable"));
        assert!(out.lines().nth(1).unwrap().split(',').nth(3) == Some("NA"));
    }
}
