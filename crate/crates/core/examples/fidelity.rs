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


//! How close AQFT_m output states are to the exact QFT, over all basis inputs.

use aqft::experiments::fidelity_sweep;

fn main() -> aqft::Result<()> {
    for n in [4, 6, 8] {
        let ms: Vec<usize> = (2..=n).collect();
        for row in fidelity_sweep(n, &ms)? {
            println!("n={} m={}  min fidelity {:.9}  mean {:.9}", row.n, row.m, row.min_fidelity, row.mean_fidelity);
        }
    }
    Ok(())
}
