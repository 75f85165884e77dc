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

//! Closed-form success-probability bounds for QFT and `AQFT_m` phase
//! estimation, and the cosine-product identity they rest on.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::prob;

/// Below this reduced angle `sin x` is replaced by `x (1 - x^2/6)`.
pub const SMALL_ANGLE_GUARD: f64 = 1e-8;

/// `4 / pi^2`, the full-QFT nearest-multiple success floor.
pub fn qft_baseline() -> f64 {
    4.0 / (PI * PI)
}

/// `4 / pi^2 - 1/16`, the register-independent floor at the log-depth rule.
pub fn fixed_bound_const() -> f64 {
    qft_baseline() - 1.0 / 16.0
}

fn guarded_sin(x: f64) -> f64 {
    if x.abs() < SMALL_ANGLE_GUARD {
        x * (1.0 - x * x / 6.0)
    } else {
        x.sin()
    }
}

/// Both sides of `prod_{p=1..n} cos^2(theta / 2^p) = (sin theta / (2^n sin(theta / 2^n)))^2`.
pub fn cos_product_identity(theta: f64, n: u32) -> (f64, f64) {
    let lhs = (1..=n).map(|p| (theta / 2f64.powi(p as i32)).cos().powi(2)).product();
    if theta == 0.0 {
        return (lhs, 1.0);
    }
    let scale = 2f64.powi(n as i32);
    let rhs = (theta.sin() / (scale * guarded_sin(theta / scale))).powi(2);
    (lhs, rhs)
}

/// `4/pi^2 * (cos^2(pi 2^-m))^(n-m)`; exactly `4/pi^2` at `m = n`.
pub fn aqft_lower_bound(n: usize, m: usize) -> Result<f64> {
    let m = crate::clamp_threshold(n, m)?;
    if m >= n {
        return Ok(qft_baseline());
    }
    let per_bit = (PI * (-(m as f64)).exp2()).cos().powi(2);
    Ok(qft_baseline() * per_bit.powf((n - m) as f64))
}

/// `4/pi^2 - 1/(4n)`, meaningful for `n >= 4`.
pub fn fixed_bound(n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::BoundDomain(n));
    }
    Ok(qft_baseline() - 0.25 / n as f64)
}

/// The earlier bound `8/pi^2 * sin^2(pi m / 4n)`. `m` may be fractional.
pub fn barenco_bound(n: usize, m: f64) -> Result<f64> {
    if n == 0 || !(1.0..=n as f64).contains(&m) {
        return Err(Error::Config(format!("barenco bound needs 1 <= m <= n, got n={n} m={m}")));
    }
    Ok(8.0 / (PI * PI) * (PI * m / (4.0 * n as f64)).sin().powi(2))
}

/// Both sides of `(1 - s)^c >= 1 - c s` with `s = sin^2(pi/4n)`, `c = n - m`.
pub fn bernoulli_step(n: usize, m: usize) -> (f64, f64) {
    let s = (PI / (4.0 * n as f64)).sin().powi(2);
    let c = n.saturating_sub(m) as f64;
    ((1.0 - s).powf(c), 1.0 - c * s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub m: usize,
    pub aqft_bound: f64,
    /// `None` when `n < 4`.
    pub fixed_bound_n: Option<f64>,
    pub fixed_bound_const: f64,
    pub barenco_bound: f64,
    pub qft_baseline: f64,
    /// `aqft_bound >= fixed_bound_n >= fixed_bound_const`, skipping the
    /// middle term when it is not applicable.
    pub chain_holds: bool,
    pub aqft_exceeds_barenco: bool,
}

impl BoundsReport {
    pub const CSV_HEADER: &'static str = "n,m,aqft_bound,fixed_n,fixed_const,barenco,baseline";

    pub fn csv_row(&self) -> String {
        let fixed = self.fixed_bound_n.map(prob).unwrap_or_else(|| "NA".to_string());
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.m,
            prob(self.aqft_bound),
            fixed,
            prob(self.fixed_bound_const),
            prob(self.barenco_bound),
            prob(self.qft_baseline)
        )
    }
}

/// All bounds for `(n, m)` with `m` clamped to `[2, n]`.
pub fn bounds_report(n: usize, m: usize) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    let m = crate::clamp_threshold(n, m)?;
    let aqft_bound = aqft_lower_bound(n, m)?;
    let fixed_bound_n = fixed_bound(n).ok();
    let fixed_bound_const = fixed_bound_const();
    let barenco = barenco_bound(n, m.min(n) as f64)?;
    let chain_holds = match fixed_bound_n {
        Some(f) => aqft_bound >= f && f >= fixed_bound_const,
        None => aqft_bound >= fixed_bound_const,
    };
    Ok(BoundsReport {
        n,
        m,
        aqft_bound,
        fixed_bound_n,
        fixed_bound_const,
        barenco_bound: barenco,
        qft_baseline: qft_baseline(),
        chain_holds,
        aqft_exceeds_barenco: aqft_bound > barenco,
    })
}
