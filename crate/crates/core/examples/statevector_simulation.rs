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


//! Inverse AQFT on the phase register, simulated on the full statevector,
//! next to the semiclassical distribution.

use aqft::experiments::unitary_distribution;
use aqft::semiclassical::{full_distribution, Criterion, TrialSpec};
use aqft::Phase;

fn main() -> aqft::Result<()> {
    let (n, m) = (6, 3);
    let phi = Phase::parse("0.2718", 40)?.phase;
    let unitary = unitary_distribution(n, m, phi)?;
    let semi = full_distribution(&TrialSpec::new(n, m, phi, Criterion::Nearest)?)?;
    let mut top: Vec<usize> = (0..unitary.len()).collect();
    top.sort_by(|&a, &b| unitary[b].total_cmp(&unitary[a]));
    println!("outcome  statevector      semiclassical");
    for &x in top.iter().take(6) {
        println!("{x:06b}   {:.12}   {:.12}", unitary[x], semi.probabilities()[x]);
    }
    println!("total variation {:.2e}", semi.total_variation(&unitary)?);
    Ok(())
}
