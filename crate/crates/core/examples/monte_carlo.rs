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


//! Seeded Monte Carlo estimates against the exact success probability.
//! Results depend only on the seed, not on the number of workers.

use aqft::experiments::monte_carlo_estimate_with_workers;
use aqft::semiclassical::{success_probability_exact, Criterion, TrialSpec};
use aqft::Phase;

fn main() -> aqft::Result<()> {
    let phi = Phase::parse("0.3217", 40)?.phase;
    for (n, m) in [(4, 2), (8, 3), (8, 5), (12, 6)] {
        let spec = TrialSpec::new(n, m, phi, Criterion::Nearest)?;
        let exact = success_probability_exact(&spec);
        let one = monte_carlo_estimate_with_workers(&spec, 100_000, 42, 1)?;
        let four = monte_carlo_estimate_with_workers(&spec, 100_000, 42, 4)?;
        assert_eq!(one, four);
        let z = (one.p_hat - exact) / one.standard_error;
        println!("n={n:<2} m={m}  p_hat={:.5} +- {:.5}  exact={exact:.5}  z={z:+.2}", one.p_hat, one.standard_error);
    }
    Ok(())
}
