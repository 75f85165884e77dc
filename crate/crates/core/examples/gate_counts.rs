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


//! Rotation counts of the full QFT against AQFT under the log-depth rule.

use aqft::experiments::{gate_count_table, GateCountRow, MRule};

fn main() -> aqft::Result<()> {
    println!("{}", GateCountRow::CSV_HEADER);
    for row in gate_count_table(&[4, 16, 64, 256, 1024, 4096], MRule::LogRule(2))? {
        println!("{}", row.csv_row());
    }
    Ok(())
}
