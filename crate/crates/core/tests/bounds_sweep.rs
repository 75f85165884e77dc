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


//! Bound evaluation and the exact sweep over structured phase grids.

use aqft::bounds::{
    aqft_lower_bound, barenco_bound, bounds_report, cos_product_identity, fixed_bound, fixed_bound_const,
    qft_baseline,
};
use aqft::experiments::{sweep_exact, MRule, PhiGrid, SweepConfig};
use aqft::semiclassical::{path_probability, success_probability_exact, Criterion, TrialSpec};
use aqft::{log_rule_threshold, BitString, Phase};
use std::f64::consts::PI;

#[test]
fn cos_product_identity_holds() {
    for k in 1..=314 {
        let theta = 0.01 * k as f64;
        for n in 1..=40 {
            let (lhs, rhs) = cos_product_identity(theta, n);
            assert!((lhs - rhs).abs() <= 1e-11, "theta={theta} n={n}");
        }
    }
}

#[test]
fn tie_probability_matches_closed_form() {
    for n in 2..=20usize {
        let phi = Phase::pow2_inv(n as u32 + 1).unwrap();
        let want = (1.0 / (2f64.powi(n as i32) * (PI / 2f64.powi(n as i32 + 1)).sin())).powi(2);
        let spec = TrialSpec::new(n, n, phi, Criterion::Nearest).unwrap();
        let up = BitString::from_value(1, n).unwrap();
        assert!((success_probability_exact(&spec) - want).abs() <= 1e-12);
        assert!((path_probability(&spec, &up).unwrap() - want).abs() <= 1e-12);
        let two = spec.with_criterion(Criterion::OneOfTwoNearest);
        assert!((success_probability_exact(&two) - 2.0 * want).abs() <= 1e-12);
        if n == 20 {
            assert!((want - 0.4052847345693511).abs() <= 1e-9);
        }
    }
}

#[test]
fn bound_chain_orders() {
    for n in 4..=512 {
        let m = log_rule_threshold(n, 2);
        let aqft = aqft_lower_bound(n, m).unwrap();
        let fixed = fixed_bound(n).unwrap();
        assert!(aqft >= fixed, "n={n}");
        assert!(fixed >= fixed_bound_const());
        assert!(aqft <= qft_baseline());
    }
    assert!(barenco_bound(4096, 14.0).unwrap() < 0.008);
    assert!(aqft_lower_bound(4096, 14).unwrap() > 0.40);
}

#[test]
fn report_rows() {
    let r = bounds_report(16, 6).unwrap();
    assert!(r.barenco_bound < r.aqft_bound);
    assert!(r.chain_holds && r.aqft_exceeds_barenco);
    let small = bounds_report(3, 2).unwrap();
    assert!(small.fixed_bound_n.is_none());
    assert!(small.csv_row().contains(",NA,"));
}

#[test]
fn sweep_has_no_violations() {
    let config = SweepConfig {
        n_values: vec![4, 8, 16, 32],
        m_rule: MRule::LogRule(2),
        phi_grids: vec![PhiGrid::Dyadic(513), PhiGrid::WorstCase],
        ..SweepConfig::default()
    };
    let result = sweep_exact(&config).unwrap();
    assert_eq!(result.summary.violations, 0);
    assert!(result.summary.min_margin >= 0.0);
    for row in &result.rows {
        assert!(row.exact_p >= row.aqft_bound);
        assert!(row.aqft_bound >= row.fixed_n.unwrap());
    }
}

#[test]
fn small_thresholds_can_break_the_fixed_bound_but_not_their_own() {
    // With m = 2 the AQFT bound is far below the fixed one, yet still holds.
    let config = SweepConfig {
        n_values: vec![6, 12],
        m_rule: MRule::Fixed(2),
        phi_grids: vec![PhiGrid::WorstCase],
        ..SweepConfig::default()
    };
    let result = sweep_exact(&config).unwrap();
    assert_eq!(result.summary.violations, 0);
    assert!(result.rows.iter().all(|r| r.aqft_bound < r.fixed_n.unwrap()));
}

#[test]
fn sweep_output_is_stable() {
    let config = SweepConfig { n_values: vec![8], phi_grids: vec![PhiGrid::Dyadic(65)], ..SweepConfig::default() };
    let a = sweep_exact(&config).unwrap();
    let b = sweep_exact(&config).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 65);
}
