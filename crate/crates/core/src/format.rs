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

//! Locale-independent number formatting shared by the text outputs.

/// Significant digits used for every printed probability.
pub const PROBABILITY_DIGITS: usize = 12;

/// Fixed-notation rendering of `x` with `digits` significant digits.
///
/// Falls back to scientific notation below `1e-6` so tiny values keep their
/// significant digits instead of printing as long zero runs.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -6 {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may have carried into a new leading digit (9.99.. -> 10.0..)
    let carried = s.trim_start_matches('-').split('.').next().map(|i| i.trim_start_matches('0').len()).unwrap_or(0);
    if exp >= 0 && carried as i32 > exp + 1 && decimals > 0 {
        return format!("{x:.*}", decimals - 1);
    }
    s
}

/// [`sig`] at [`PROBABILITY_DIGITS`].
pub fn prob(x: f64) -> String {
    sig(x, PROBABILITY_DIGITS)
}
