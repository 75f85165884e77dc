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


//! The QFT circuit against the direct DFT. The circuit has no final swap
//! network, so its output is the DFT output with the qubit order reversed.

use aqft::circuits::build_qft;
use aqft::statevector::StateVector;

fn main() -> aqft::Result<()> {
    for n in 1..=8 {
        let plan = build_qft(n)?;
        let mut worst = 0.0f64;
        for j in 0..1usize << n {
            let input = StateVector::basis_state(n, j)?;
            let reference = input.dft_reference()?.with_reversed_qubits();
            worst = worst.max(plan.run(input)?.max_abs_diff(&reference)?);
        }
        println!("n={n}: {} gates, max amplitude error {worst:.2e}", plan.gates().len());
    }
    Ok(())
}
