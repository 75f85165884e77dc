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


//! Lower bounds on the success probability for the log-depth threshold,
//! against the older sin^2 bound that decays with n.

use aqft::bounds::{bounds_report, BoundsReport};
use aqft::log_rule_threshold;

fn main() -> aqft::Result<()> {
    println!("{}", BoundsReport::CSV_HEADER);
    for n in [4, 8, 16, 64, 256, 1024, 4096] {
        println!("{}", bounds_report(n, log_rule_threshold(n, 2))?.csv_row());
    }
    Ok(())
}
