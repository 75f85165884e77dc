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

//! Exact arithmetic on phases stored as binary fractions `k / 2^F` on the
//! unit circle.
//!
//! Nothing here touches floating point except [`Phase::to_f64`] and
//! [`SignedOffset::to_f64`], which are the single conversion points used when
//! an angle is finally evaluated.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::MAX_PHASE_BITS;

/// Guard bits added on top of the register size when a decimal phase is parsed.
pub const DEFAULT_GUARD_BITS: u32 = 32;

#[inline]
fn mask(bits: u32) -> u128 {
    debug_assert!(bits <= MAX_PHASE_BITS);
    (1u128 << bits) - 1
}

/// A point on the unit circle, `numerator / 2^precision` reduced mod 1.
///
/// Equality, ordering and hashing are by value, so `1/2` at 1 bit equals
/// `2/4` at 2 bits.
#[derive(Clone, Copy, Debug)]
pub struct Phase {
    num: u128,
    bits: u32,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, bits: 0 };

    pub fn new(numerator: u128, precision: u32) -> Result<Self> {
        if precision > MAX_PHASE_BITS {
            return Err(Error::PrecisionOutOfRange(precision));
        }
        Ok(Phase { num: numerator & mask(precision), bits: precision })
    }

    /// `2^-k`, the angle of the rotation `R_k`.
    pub fn pow2_inv(k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(Phase::ZERO);
        }
        Phase::new(1, k)
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn precision(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Same value at a wider precision. `None` if `bits` is narrower than
    /// the value needs or exceeds the supported maximum.
    pub fn at_precision(&self, bits: u32) -> Option<Phase> {
        if bits > MAX_PHASE_BITS {
            return None;
        }
        if bits >= self.bits {
            Some(Phase { num: self.num << (bits - self.bits), bits })
        } else {
            let drop = self.bits - bits;
            if self.num & mask(drop) != 0 {
                None
            } else {
                Some(Phase { num: self.num >> drop, bits })
            }
        }
    }

    /// Lowest-terms representation (odd numerator or zero).
    pub fn reduced(&self) -> Phase {
        if self.num == 0 {
            return Phase::ZERO;
        }
        let tz = self.num.trailing_zeros().min(self.bits);
        Phase { num: self.num >> tz, bits: self.bits - tz }
    }

    /// `2^k * self` mod 1.
    pub fn mul_pow2(&self, k: u32) -> Phase {
        if k >= self.bits {
            return Phase::ZERO;
        }
        Phase { num: (self.num << k) & mask(self.bits), bits: self.bits }
    }

    /// `r * self` mod 1 for an integer `r`, exact.
    pub fn mul_int(&self, r: u128) -> Phase {
        Phase { num: self.num.wrapping_mul(r) & mask(self.bits), bits: self.bits }
    }

    /// `self / 2^k`, exact. Panics if the result would need more than
    /// [`MAX_PHASE_BITS`] bits.
    pub fn div_pow2(&self, k: u32) -> Phase {
        let r = self.reduced();
        let bits = r.bits + k;
        assert!(bits <= MAX_PHASE_BITS, "div_pow2 needs {bits} bits");
        if r.num == 0 {
            return Phase::ZERO;
        }
        Phase { num: r.num, bits }
    }

    /// Bit `i` (1-based, `i = 1` is the `1/2` place).
    pub fn bit(&self, i: u32) -> u8 {
        if i == 0 || i > self.bits {
            0
        } else {
            ((self.num >> (self.bits - i)) & 1) as u8
        }
    }

    /// Nearest double. The numerator conversion rounds to nearest; the
    /// power-of-two scaling is exact.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 * (-(self.bits as f64)).exp2()
    }

    /// Exact decimal expansion, e.g. `0.3125`.
    pub fn to_decimal_string(&self) -> String {
        let r = self.reduced();
        if r.num == 0 {
            return "0".to_string();
        }
        // k / 2^F = k * 5^F / 10^F
        let scaled = BigUint::from(r.num) * BigUint::from(5u32).pow(r.bits);
        let digits = scaled.to_str_radix(10);
        let width = r.bits as usize;
        format!("0.{digits:0>width$}")
    }

    /// `k/2^F` in lowest terms.
    pub fn to_dyadic_string(&self) -> String {
        let r = self.reduced();
        if r.num == 0 {
            return "0".to_string();
        }
        format!("{}/2^{}", r.num, r.bits)
    }

    /// Binary fraction form, e.g. `0.0101b`.
    pub fn to_bit_string(&self) -> String {
        let r = self.reduced();
        if r.bits == 0 {
            return "0.0b".to_string();
        }
        let mut s = String::from("0.");
        for i in 1..=r.bits {
            s.push(if r.bit(i) == 1 { '1' } else { '0' });
        }
        s.push('b');
        s
    }

    /// Parse `0.3217` (decimal, rounded to `precision` bits), `5/2^4` or
    /// `5/16` (dyadic), or `0.0101b` (binary fraction). Values are reduced mod 1.
    pub fn parse(input: &str, precision: u32) -> Result<ParsedPhase> {
        let s = input.trim();
        let err = |reason: &str| Error::PhaseParse { input: input.to_string(), reason: reason.to_string() };
        if s.is_empty() {
            return Err(err("empty input"));
        }
        if let Some(body) = s.strip_suffix('b') {
            return parse_binary(body).map_err(|r| err(&r)).map(|phase| ParsedPhase { phase, rounded: false });
        }
        if let Some((k, den)) = s.split_once('/') {
            return parse_dyadic(k.trim(), den.trim())
                .map_err(|r| err(&r))
                .map(|phase| ParsedPhase { phase, rounded: false });
        }
        if precision > MAX_PHASE_BITS {
            return Err(Error::PrecisionOutOfRange(precision));
        }
        parse_decimal(s, precision).map_err(|r| err(&r))
    }

    fn align(a: &Phase, b: &Phase) -> (u128, u128, u32) {
        let w = a.bits.max(b.bits);
        (a.num << (w - a.bits), b.num << (w - b.bits), w)
    }
}

/// Result of [`Phase::parse`]; `rounded` records whether a decimal input
/// was not exactly representable at the requested precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsedPhase {
    pub phase: Phase,
    pub rounded: bool,
}

fn parse_binary(body: &str) -> std::result::Result<Phase, String> {
    let frac = body
        .strip_prefix("0.")
        .or_else(|| body.strip_prefix('.'))
        .ok_or_else(|| "binary fraction must start with `0.`".to_string())?;
    if frac.is_empty() {
        return Err("no bits after the point".into());
    }
    if frac.len() > MAX_PHASE_BITS as usize {
        return Err(format!("more than {MAX_PHASE_BITS} bits"));
    }
    let mut num = 0u128;
    for c in frac.chars() {
        num = (num << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(format!("invalid bit {c:?}")),
            };
    }
    Phase::new(num, frac.len() as u32).map_err(|e| e.to_string())
}

fn parse_dyadic(k: &str, den: &str) -> std::result::Result<Phase, String> {
    let bits: u32 = if let Some(exp) = den.strip_prefix("2^") {
        exp.parse().map_err(|_| format!("bad exponent {exp:?}"))?
    } else {
        let d: u128 = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
        if d == 0 || !d.is_power_of_two() {
            return Err(format!("denominator {d} is not a power of two"));
        }
        d.trailing_zeros()
    };
    if bits > MAX_PHASE_BITS {
        return Err(format!("precision {bits} exceeds {MAX_PHASE_BITS} bits"));
    }
    let k = BigUint::from_str(k).map_err(|_| format!("bad numerator {k:?}"))?;
    let reduced = k % (BigUint::one() << bits);
    let num = u128::try_from(reduced).map_err(|e| e.to_string())?;
    Phase::new(num, bits).map_err(|e| e.to_string())
}

fn parse_decimal(s: &str, precision: u32) -> std::result::Result<ParsedPhase, String> {
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    if int_part.is_empty() && frac.is_empty() {
        return Err("no digits".into());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err("expected digits and at most one `.`".into());
    }
    // the integer part vanishes mod 1
    if frac.is_empty() {
        return Ok(ParsedPhase { phase: Phase::new(0, precision).map_err(|e| e.to_string())?, rounded: false });
    }
    let digits = BigUint::from_str(frac).map_err(|e| e.to_string())?;
    let den = BigUint::from(10u32).pow(frac.len() as u32);
    let scaled = digits << precision;
    let mut q = &scaled / &den;
    let r = &scaled % &den;
    let rounded = !r.is_zero();
    if r * 2u32 >= den {
        q += 1u32;
    }
    let q = q % (BigUint::one() << precision);
    let num = u128::try_from(q).map_err(|e| e.to_string())?;
    Ok(ParsedPhase { phase: Phase::new(num, precision).map_err(|e| e.to_string())?, rounded })
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Phase::align(self, other);
        a == b
    }
}

impl Eq for Phase {}

impl Hash for Phase {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.num.hash(state);
        r.bits.hash(state);
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Phase::align(self, other);
        a.cmp(&b)
    }
}

impl Add for Phase {
    type Output = Phase;
    #[allow(clippy::suspicious_arithmetic_impl)] // the mask is the mod-1 reduction
    fn add(self, rhs: Phase) -> Phase {
        let (a, b, w) = Phase::align(&self, &rhs);
        Phase { num: a.wrapping_add(b) & mask(w), bits: w }
    }
}

impl Sub for Phase {
    type Output = Phase;
    #[allow(clippy::suspicious_arithmetic_impl)] // the mask is the mod-1 reduction
    fn sub(self, rhs: Phase) -> Phase {
        let (a, b, w) = Phase::align(&self, &rhs);
        Phase { num: a.wrapping_sub(b) & mask(w), bits: w }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase { num: self.num.wrapping_neg() & mask(self.bits), bits: self.bits }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dyadic_string())
    }
}

/// Measured estimate bits `x_1 ... x_n`, `x_1` most significant.
///
/// Stored as the integer `x = sum x_p 2^(n-p)`, which is also the
/// statevector basis index of `|x_1 ... x_n>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    value: u128,
}

impl BitString {
    pub fn from_value(value: u128, len: usize) -> Result<Self> {
        if len > MAX_PHASE_BITS as usize {
            return Err(Error::PrecisionOutOfRange(len as u32));
        }
        if len < 128 && value >> len != 0 {
            return Err(Error::BasisIndexOutOfRange { index: value as usize, n: len });
        }
        Ok(BitString { len, value })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_PHASE_BITS as usize {
            return Err(Error::PrecisionOutOfRange(bits.len() as u32));
        }
        let mut value = 0u128;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::PhaseParse { input: format!("{bits:?}"), reason: format!("bit {} is {b}", i + 1) });
            }
            value = (value << 1) | b as u128;
        }
        Ok(BitString { len: bits.len(), value })
    }

    pub fn zeros(len: usize) -> Self {
        BitString { len, value: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    /// Bit `x_p`, 1-based.
    pub fn bit(&self, p: usize) -> u8 {
        assert!(p >= 1 && p <= self.len, "bit index {p} out of 1..={}", self.len);
        ((self.value >> (self.len - p)) & 1) as u8
    }

    pub fn with_bit(&self, p: usize, b: u8) -> BitString {
        assert!(p >= 1 && p <= self.len, "bit index {p} out of 1..={}", self.len);
        let shift = self.len - p;
        let value = (self.value & !(1u128 << shift)) | ((b as u128 & 1) << shift);
        BitString { len: self.len, value }
    }

    /// Integer value of `x_(p+1) ... x_n` (the bits below position `p`).
    pub fn tail_value(&self, p: usize) -> u128 {
        let width = self.len - p;
        self.value & mask(width as u32)
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (1..=self.len).map(|p| self.bit(p)).collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 1..=self.len {
            f.write_str(if self.bit(p) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::PhaseParse { input: s.to_string(), reason: format!("invalid bit {c:?}") }),
            })
            .collect::<Result<_>>()?;
        BitString::from_bits(&bits)
    }
}

/// Exact dyadic offset in `[-1/2, 1/2)`: `numerator / 2^precision`.
#[derive(Clone, Copy, Debug)]
pub struct SignedOffset {
    num: i128,
    bits: u32,
}

impl SignedOffset {
    pub const ZERO: SignedOffset = SignedOffset { num: 0, bits: 0 };

    /// Representative of `p` mod 1 in `[-1/2, 1/2)`.
    pub fn wrap(p: Phase) -> SignedOffset {
        if p.bits == 0 {
            return SignedOffset::ZERO;
        }
        let half = 1u128 << (p.bits - 1);
        let num = if p.num >= half { p.num as i128 - (1i128 << p.bits) } else { p.num as i128 };
        SignedOffset { num, bits: p.bits }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn precision(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_phase(&self) -> Phase {
        Phase { num: (self.num as u128) & mask(self.bits), bits: self.bits }
    }

    pub fn abs(&self) -> Phase {
        Phase { num: self.num.unsigned_abs(), bits: self.bits }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * (-(self.bits as f64)).exp2()
    }

    /// `+-2^-k` (`k >= 1`).
    pub fn pow2_inv(k: u32, negative: bool) -> SignedOffset {
        SignedOffset { num: if negative { -1 } else { 1 }, bits: k }
    }

    pub fn to_dyadic_string(&self) -> String {
        let r = self.abs().reduced();
        if r.num == 0 {
            return "0".to_string();
        }
        let sign = if self.num < 0 { "-" } else { "" };
        format!("{sign}{}/2^{}", r.num, r.bits)
    }

    fn aligned(&self, other: &SignedOffset) -> (i128, i128) {
        let w = self.bits.max(other.bits);
        (self.num << (w - self.bits), other.num << (w - other.bits))
    }
}

impl PartialEq for SignedOffset {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for SignedOffset {}

impl PartialOrd for SignedOffset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedOffset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for SignedOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dyadic_string())
    }
}

/// `(0.x_1 x_2 ... x_n)`.
pub fn phase_from_bits(x: &BitString) -> Phase {
    Phase { num: x.value, bits: x.len as u32 }
}

/// Nearest multiple of `2^-n` to `phi` on the circle, with the offset
/// `delta = phi - (0.x)` wrapped into `(-2^-(n+1), 2^-(n+1)]`.
///
/// An exact tie resolves to the lower multiple, so `delta = +2^-(n+1)`.
///
/// # Panics
/// If `n` is 0 or exceeds [`MAX_PHASE_BITS`].
pub fn nearest_estimate(phi: Phase, n: usize) -> (BitString, SignedOffset) {
    assert!(n >= 1 && n <= MAX_PHASE_BITS as usize, "register size {n} out of range");
    let n_bits = n as u32;
    let w = phi.bits.max(n_bits);
    let num = phi.num << (w - phi.bits);
    let shift = w - n_bits;
    let mut q = num >> shift;
    if shift > 0 {
        let r = num & mask(shift);
        if r > 1u128 << (shift - 1) {
            q = (q + 1) & mask(n_bits);
        }
    }
    let x = BitString { len: n, value: q };
    let delta = SignedOffset::wrap(phi - phase_from_bits(&x));
    (x, delta)
}

/// The accumulated correction `chi_p = (0.0 x_(p+1) ... x_e)` with
/// `e = min(p + m - 1, n)`; zero for `p = n`.
///
/// # Panics
/// If `p` is outside `1..=x.len()` or `m < 2`.
pub fn chi(x: &BitString, p: usize, m: usize) -> Phase {
    let n = x.len;
    assert!(p >= 1 && p <= n, "bit index {p} out of 1..={n}");
    assert!(m >= 2, "threshold {m} < 2");
    let end = (p + m - 1).min(n);
    if end <= p {
        return Phase::ZERO;
    }
    let width = (end - p) as u32;
    let v = (x.value >> (n - end)) & mask(width);
    Phase { num: v, bits: width + 1 }
}

/// Circle distance `min(|a - b|, 1 - |a - b|)`, in `[0, 1/2]`.
pub fn wrapped_distance(a: Phase, b: Phase) -> Phase {
    let d = a - b;
    let e = -d;
    d.min(e)
}
