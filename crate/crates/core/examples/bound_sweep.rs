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


//! Exact success probabilities over dyadic and worst-case phase grids,
//! checked row by row against the threshold bound.

use aqft::experiments::{sweep_exact, MRule, PhiGrid, SweepConfig};

fn main() -> aqft::Result<()> {
    let config = SweepConfig {
        n_values: vec![4, 8, 16, 32, 64],
        m_rule: MRule::LogRule(2),
        phi_grids: vec![PhiGrid::Dyadic(1025), PhiGrid::WorstCase],
        ..SweepConfig::default()
    };
    let result = sweep_exact(&config)?;
    for n in &config.n_values {
        let rows: Vec<_> = result.rows.iter().filter(|r| r.n == *n).collect();
        let worst = rows.iter().min_by(|a, b| a.exact_p.total_cmp(&b.exact_p)).expect("non-empty");
        println!(
            "n={n:<3} m={:<2} rows={:<5} min P={:.9} at {:<14} bound={:.9}",
            worst.m,
            rows.len(),
            worst.exact_p,
            worst.phi,
            worst.aqft_bound
        );
    }
    println!("violations: {}", result.summary.violations);
    Ok(())
}
