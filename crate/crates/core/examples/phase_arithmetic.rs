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


//! Exact dyadic phases: parsing, printing, nearest n-bit estimates and the
//! truncated corrections chi_p.

use aqft::phase::{chi, nearest_estimate, phase_from_bits};
use aqft::Phase;

fn main() -> aqft::Result<()> {
    for input in ["0.3217", "5/2^4", "0.0101b", "31/32"] {
        let parsed = Phase::parse(input, 40)?;
        let phi = parsed.phase;
        println!(
            "{input:>8} -> {} = {} = {}{}",
            phi.to_dyadic_string(),
            phi.to_decimal_string(),
            phi.to_bit_string(),
            if parsed.rounded { "  (rounded)" } else { "" }
        );
    }

    // Ties between two estimates go to the lower one.
    for (phi, n) in [("31/32", 2), ("3/32", 4), ("0.3217", 8)] {
        let phi = Phase::parse(phi, 40)?.phase;
        let (x, delta) = nearest_estimate(phi, n);
        println!("n={n} phi={phi}: estimate {x} ({}) delta {}", phase_from_bits(&x), delta.to_dyadic_string());
    }

    let x = "1011".parse().expect("valid bits");
    for m in 2..=4 {
        let row: Vec<String> = (1..=4).map(|p| chi(&x, p, m).to_dyadic_string()).collect();
        println!("x=1011 m={m}: chi_1..chi_4 = {}", row.join(", "));
    }

    let a = Phase::parse("3/8", 3)?.phase;
    let b = Phase::parse("7/8", 3)?.phase;
    println!("3/8 + 7/8 = {} (mod 1), 3/8 - 7/8 = {}", a + b, a - b);
    Ok(())
}
