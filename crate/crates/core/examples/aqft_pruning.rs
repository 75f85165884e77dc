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


//! Pruning small rotations: the AQFT_m gate lists for a 5-qubit register.

use aqft::circuits::{build_aqft, build_qft};

fn main() -> aqft::Result<()> {
    let n = 5;
    print!("{}", build_qft(n)?.to_text());
    for m in (2..n).rev() {
        let plan = build_aqft(n, m)?;
        let c = plan.gate_count();
        println!("\n# m={m}: {} H + {} CR", c.hadamards, c.rotations);
        print!("{}", plan.to_text());
    }
    println!("\n# inverse of m=3, as fed to phase estimation");
    print!("{}", build_aqft(n, 3)?.inverse().to_text());
    Ok(())
}
