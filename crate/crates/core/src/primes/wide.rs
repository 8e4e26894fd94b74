use std::fmt;

use crate::error::{Error, Result};

/// Signed 128-bit integer holding a pair member `p^k + 2r`.
///
/// Arithmetic that would leave the 128-bit range is reported as
/// [`Error::Overflow`]; nothing wraps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WideInteger(i128);

impl WideInteger {
    pub const fn new(value: i128) -> Self {
        WideInteger(value)
    }

    pub const fn get(self) -> i128 {
        self.0
    }

    /// `p^k + two_r`, or an overflow error.
    pub fn pair_member(p: u64, k: u32, two_r: i64) -> Result<Self> {
        (p as i128)
            .checked_pow(k)
            .and_then(|v| v.checked_add(two_r as i128))
            .map(WideInteger)
            .ok_or_else(|| Error::Overflow(format!("{p}^{k} + {two_r} exceeds 127 bits")))
    }

    pub fn checked_add(self, rhs: WideInteger) -> Result<Self> {
        self.0
            .checked_add(rhs.0)
            .map(WideInteger)
            .ok_or_else(|| Error::Overflow(format!("{} + {}", self.0, rhs.0)))
    }

    pub fn checked_mul(self, rhs: WideInteger) -> Result<Self> {
        self.0
            .checked_mul(rhs.0)
            .map(WideInteger)
            .ok_or_else(|| Error::Overflow(format!("{} * {}", self.0, rhs.0)))
    }

    /// The value as `u64` when it lies in `[0, 2^64)`.
    pub fn to_u64(self) -> Option<u64> {
        u64::try_from(self.0).ok()
    }
}

impl From<i64> for WideInteger {
    fn from(v: i64) -> Self {
        WideInteger(v as i128)
    }
}

impl From<u64> for WideInteger {
    fn from(v: u64) -> Self {
        WideInteger(v as i128)
    }
}

impl From<i32> for WideInteger {
    fn from(v: i32) -> Self {
        WideInteger(v as i128)
    }
}

impl From<i128> for WideInteger {
    fn from(v: i128) -> Self {
        WideInteger(v)
    }
}

impl fmt::Display for WideInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
