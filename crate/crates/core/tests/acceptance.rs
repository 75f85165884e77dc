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


//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the report is always printed; exits non-zero if any
//! criterion fails.

use std::f64::consts::PI;
use std::cell::OnceCell;
use std::process::Command;
use std::time::Instant;

use aqft::bounds::{aqft_lower_bound, barenco_bound, cos_product_identity};
use aqft::circuits::{aqft_rotation_count, build_aqft, build_qft, qft_rotation_count};
use aqft::experiments::{
    gate_count_table, grid_points, monte_carlo_estimate_with_workers, sweep_exact, unitary_distribution, MRule,
    PhiGrid, SweepConfig,
};
use aqft::semiclassical::{full_distribution, path_probability, success_probability_exact, Criterion, TrialSpec};
use aqft::statevector::StateVector;
use aqft::{log_rule_threshold, BitString, Phase};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qft_oracle() -> Check {
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let plan = build_qft(n).map_err(|e| e.to_string())?;
        for j in 0..1usize << n {
            let input = StateVector::basis_state(n, j).unwrap();
            // circuit output = DFT output with qubit order reversed
            let want = input.dft_reference().unwrap().with_reversed_qubits();
            let got = plan.run(input).unwrap();
            worst = worst.max(got.max_abs_diff(&want).unwrap());
        }
    }
    ensure(worst <= 1e-12, || format!("max amplitude error {worst:e}"))?;
    Ok(format!("n<=10, all basis inputs, max error {worst:.1e}"))
}

fn full_threshold_is_qft() -> Check {
    for n in 1..=32 {
        let a = build_aqft(n, n.max(2)).map_err(|e| e.to_string())?;
        ensure(a == build_qft(n).unwrap(), || format!("n={n} differs"))?;
    }
    Ok("n<=32 gate-for-gate identical".into())
}

fn cos_identity() -> Check {
    let mut worst = 0.0f64;
    for k in 1..=314 {
        for n in 1..=40 {
            let (lhs, rhs) = cos_product_identity(0.01 * k as f64, n);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    ensure(worst <= 1e-11, || format!("max |lhs-rhs| {worst:e}"))?;
    Ok(format!("314 angles x n=1..40, max |lhs-rhs| {worst:.1e}"))
}

fn tie_probability() -> Check {
    let mut last = 0.0;
    for n in 2..=20usize {
        let phi = Phase::pow2_inv(n as u32 + 1).unwrap();
        let want = (1.0 / (2f64.powi(n as i32) * (PI / 2f64.powi(n as i32 + 1)).sin())).powi(2);
        let spec = TrialSpec::new(n, n, phi, Criterion::OneOfTwoNearest).unwrap();
        for x in [0u128, 1] {
            let got = path_probability(&spec, &BitString::from_value(x, n).unwrap()).unwrap();
            ensure((got - want).abs() <= 1e-12, || format!("n={n} candidate {x}: {got} vs {want}"))?;
        }
        last = want;
    }
    ensure((last - 0.4052847345693511).abs() <= 1e-9, || format!("n=20 value {last}"))?;
    Ok(format!("n=2..20 per-candidate, n=20 value {last:.16}"))
}

fn griffiths_niu() -> Check {
    let mut worst = 0.0f64;
    for n in 2..=8usize {
        let mut ms = vec![2, log_rule_threshold(n, 2), n];
        ms.sort_unstable();
        ms.dedup();
        for &m in &ms {
            for phi in grid_points(&PhiGrid::Dyadic(33), n, 32, 0) {
                let spec = TrialSpec::new(n, m, phi, Criterion::Nearest).unwrap();
                let semi = full_distribution(&spec).unwrap();
                let tv = semi.total_variation(&unitary_distribution(n, m, phi).unwrap()).unwrap();
                worst = worst.max(tv);
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max TV {worst:e}"))?;
    Ok(format!("n=2..8, 3 thresholds, 33 phases, max TV {worst:.1e}"))
}

fn headline_sweep() -> std::result::Result<aqft::experiments::SweepResult, String> {
    let config = SweepConfig {
        n_values: vec![4, 8, 16, 32, 64],
        m_rule: MRule::LogRule(2),
        phi_grids: vec![PhiGrid::Dyadic(4097), PhiGrid::WorstCase],
        ..SweepConfig::default()
    };
    sweep_exact(&config).map_err(|e| e.to_string())
}

fn bound_sweep(result: &aqft::experiments::SweepResult) -> Check {
    ensure(result.summary.violations == 0, || format!("{} violations", result.summary.violations))?;
    for r in &result.rows {
        let fixed = r.fixed_n.ok_or("missing fixed bound")?;
        ensure(r.exact_p >= r.aqft_bound && r.aqft_bound >= fixed && fixed >= 0.3427847, || {
            format!("chain broken at n={} phi={}", r.n, r.phi)
        })?;
    }
    Ok(format!(
        "{} rows, 0 violations, min P {:.6} (n={}, phi={})",
        result.rows.len(),
        result.summary.min_exact_p,
        result.summary.argmin_n,
        result.summary.argmin_phi
    ))
}

fn barenco(result: &aqft::experiments::SweepResult) -> Check {
    for r in result.rows.iter().filter(|r| r.n >= 8) {
        ensure(r.aqft_bound > r.barenco, || format!("n={} m={}", r.n, r.m))?;
    }
    let b = barenco_bound(4096, 14.0).map_err(|e| e.to_string())?;
    let a = aqft_lower_bound(4096, 14).map_err(|e| e.to_string())?;
    ensure(b < 0.008 && a > 0.40, || format!("n=4096 m=14: barenco {b}, aqft {a}"))?;
    Ok(format!("pointwise for n>=8; n=4096 m=14: barenco {b:.2e}, aqft {a:.5}"))
}

fn monte_carlo() -> Check {
    let phi = Phase::parse("0.3217", 40).unwrap().phase;
    let spec = TrialSpec::new(8, 5, phi, Criterion::Nearest).unwrap();
    let exact = success_probability_exact(&spec);
    let one = monte_carlo_estimate_with_workers(&spec, 100_000, 42, 1).map_err(|e| e.to_string())?;
    let many = monte_carlo_estimate_with_workers(&spec, 100_000, 42, 8).map_err(|e| e.to_string())?;
    let again = monte_carlo_estimate_with_workers(&spec, 100_000, 42, 8).map_err(|e| e.to_string())?;
    let z = (one.p_hat - exact).abs() / one.standard_error;
    ensure(z <= 4.0, || format!("|p_hat - exact| = {z:.2} se"))?;
    let bytes = |e| serde_json::to_string(e).unwrap();
    ensure(bytes(&one) == bytes(&many) && bytes(&many) == bytes(&again), || "outputs differ".into())?;
    Ok(format!("p_hat {:.5} vs exact {exact:.5} ({z:.2} se), 1 vs 8 workers identical", one.p_hat))
}

fn gate_counts() -> Check {
    for n in 1..=32 {
        ensure(build_qft(n).unwrap().gate_count().rotations == n * (n - 1) / 2, || format!("qft n={n}"))?;
        for m in 2..=n {
            let c = build_aqft(n, m).unwrap().gate_count().rotations;
            ensure(c == (m - 1) * (n - m + 1) + (m - 1) * (m - 2) / 2, || format!("aqft n={n} m={m}: {c}"))?;
        }
    }
    let row = &gate_count_table(&[1024], MRule::Fixed(12)).map_err(|e| e.to_string())?[0];
    ensure(row.qft_rotations == 523_776 && row.aqft_rotations == 11_198, || format!("{row:?}"))?;
    ensure(qft_rotation_count(1024) == 523_776 && aqft_rotation_count(1024, 12) == 11_198, || "closed form".into())?;
    Ok("n<=32 all thresholds; n=1024 m=12: 523776 vs 11198".into())
}

fn cli_contract() -> Check {
    let golden = |name: &str| {
        std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
    };
    let run = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_aqft")).args(args).env_remove("AQFT_FORMAT").output().unwrap();
        (o.status.code(), String::from_utf8(o.stdout).unwrap())
    };
    let cases: &[(&[&str], &str)] = &[
        (&["emit-circuit", "--n", "3"], "emit_n3.txt"),
        (&["emit-circuit", "--n", "5", "--m", "3"], "emit_n5_m3.txt"),
        (&["bounds", "--n", "4", "--m", "4"], "bounds_n4_m4.csv"),
        (&["bounds", "--n", "16", "--m", "6"], "bounds_n16_m6.csv"),
        (&["bounds", "--n", "3", "--m", "2"], "bounds_n3_m2.csv"),
        (&["sweep", "--n", "8", "--log-rule", "2", "--grid", "257", "--format", "csv"], "sweep_n8_g257.csv"),
    ];
    for (args, file) in cases {
        let (code, out) = run(args);
        ensure(code == Some(0) && out == golden(file), || format!("{args:?} vs {file}"))?;
    }
    let (code, _) = run(&["sweep", "--n", "8", "--m", "2", "--grid", "9", "--require", "fixed"]);
    ensure(code == Some(1), || format!("property failure exit {code:?}"))?;
    for args in [&["emit-circuit", "--n", "3", "--bogus"][..], &["montecarlo", "--n", "4", "--phi", "0.5", "--samples", "1000"]] {
        let (code, _) = run(args);
        ensure(code == Some(2), || format!("{args:?} exit {code:?}"))?;
    }
    Ok(format!("{} golden files, exit codes 0/1/2", cases.len()))
}

fn main() {
    let mut failures = 0;
    let mut report = |id: u32, name: &str, f: &dyn Fn() -> Check| {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.2}s]");
            }
        }
    };
    report(1, "QFT matches DFT reference", &qft_oracle);
    report(2, "AQFT_n equals QFT", &full_threshold_is_qft);
    report(3, "cos-product identity", &cos_identity);
    report(4, "worst-case full-QFT success", &tie_probability);
    report(5, "semiclassical equals unitary distribution", &griffiths_niu);
    // criteria 6 and 7 share one sweep; it is computed (and timed) under 6
    let sweep = OnceCell::new();
    let shared = || sweep.get_or_init(headline_sweep).as_ref().map_err(Clone::clone);
    report(6, "bound sweep, zero violations", &|| bound_sweep(shared()?));
    report(7, "AQFT bound beats Barenco bound", &|| barenco(shared()?));
    report(8, "Monte Carlo consistency", &monte_carlo);
    report(9, "gate counts", &gate_counts);
    report(10, "CLI contract", &cli_contract);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
