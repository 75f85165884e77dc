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


//! One semiclassical phase-estimation trial in detail: per-bit residuals,
//! their cos^2 success factors, and a few sampled runs.

use aqft::semiclassical::{bit_trials, sample_run_seeded, success_probability_exact, Criterion, TrialSpec};
use aqft::Phase;

fn main() -> aqft::Result<()> {
    let phi = Phase::parse("0.3217", 40)?.phase;
    let spec = TrialSpec::new(8, 5, phi, Criterion::Nearest)?;
    let (x_hat, delta) = spec.nearest();
    println!("phi={} nearest estimate {x_hat}, delta {}", phi.to_decimal_string(), delta.to_dyadic_string());
    for t in bit_trials(&spec) {
        println!("  p={} bit={} chi={:<8} delta_p={:<18} cos^2={:.9}", t.p, t.bit, t.chi, t.delta, t.probability);
    }
    println!("P(success) = {:.12}", success_probability_exact(&spec));

    for i in 0..5 {
        let run = sample_run_seeded(&spec, 1, i);
        println!("  sample {i}: {} success={} path probability {:.6}", run.estimate, run.success, run.path_probability());
    }
    Ok(())
}
