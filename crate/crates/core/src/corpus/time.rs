use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A time or duration in milliseconds, stored as whole microseconds.
///
/// Fixed-point storage keeps segment sums exact: `C1d + C2d == Cd` and
/// `V1d + Cd + V2d == Utd` hold bit-for-bit for contiguous segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Msec(i64);

impl Msec {
    pub const ZERO: Msec = Msec(0);

    pub const fn from_micros(us: i64) -> Self {
        Msec(us)
    }

    /// Rounds to the nearest microsecond, halves away from zero.
    pub fn from_ms(ms: f64) -> Self {
        Msec((ms * 1000.0).round() as i64)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    pub fn as_ms(self) -> f64 {
        self.0 as f64 / 1000.0
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl Add for Msec {
    type Output = Msec;
    fn add(self, rhs: Msec) -> Msec {
        Msec(self.0 + rhs.0)
    }
}

impl Sub for Msec {
    type Output = Msec;
    fn sub(self, rhs: Msec) -> Msec {
        Msec(self.0 - rhs.0)
    }
}

impl serde::Serialize for Msec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_ms())
    }
}

impl<'de> serde::Deserialize<'de> for Msec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ms = f64::deserialize(d)?;
        Ok(Msec::from_ms(ms))
    }
}

impl fmt::Display for Msec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let whole = abs / 1000;
        let frac = abs % 1000;
        if frac == 0 {
            write!(f, "{sign}{whole}")
        } else {
            let digits = format!("{frac:03}");
            write!(f, "{sign}{whole}.{}", digits.trim_end_matches('0'))
        }
    }
}

impl FromStr for Msec {
    type Err = Error;

    /// Parses a decimal millisecond value. Digits beyond the microsecond are
    /// rounded half away from zero; exponent notation goes through `f64`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Malformed(format!("not a millisecond value: `{s}`"));
        if text.is_empty() {
            return Err(bad());
        }
        if text.contains(['e', 'E']) {
            let v: f64 = text.parse().map_err(|_| bad())?;
            if !v.is_finite() {
                return Err(bad());
            }
            return Ok(Msec::from_ms(v));
        }
        let (negative, body) = match text.as_bytes()[0] {
            b'-' => (true, &text[1..]),
            b'+' => (false, &text[1..]),
            _ => (false, text),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let mut micros = 0i64;
        for (i, b) in frac_part.bytes().take(3).enumerate() {
            micros += i64::from(b - b'0') * 10i64.pow(2 - i as u32);
        }
        if let Some(&next) = frac_part.as_bytes().get(3) {
            if next >= b'5' {
                micros += 1;
            }
        }
        let total = whole.checked_mul(1000).and_then(|w| w.checked_add(micros)).ok_or_else(bad)?;
        Ok(Msec(if negative { -total } else { total }))
    }
}

/// Converts a time to a sample position, rounding half away from zero.
pub fn to_sample(t: Msec, sample_rate: u32) -> i64 {
    round_div(i128::from(t.micros()) * i128::from(sample_rate), 1_000_000)
}

/// Sample position of the midpoint of two times, rounded once.
pub fn midpoint_sample(a: Msec, b: Msec, sample_rate: u32) -> i64 {
    round_div((i128::from(a.micros()) + i128::from(b.micros())) * i128::from(sample_rate), 2_000_000)
}

/// Smallest sample count that covers `t`.
pub fn ceil_sample(t: Msec, sample_rate: u32) -> i64 {
    let num = i128::from(t.micros()) * i128::from(sample_rate);
    let q = num.div_euclid(1_000_000);
    let r = num.rem_euclid(1_000_000);
    (if r > 0 { q + 1 } else { q }) as i64
}

fn round_div(num: i128, den: i128) -> i64 {
    let q = (num.abs() * 2 + den) / (2 * den);
    (if num < 0 { -q } else { q }) as i64
}
