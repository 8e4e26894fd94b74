//! Segmented sieve of Eratosthenes over odd numbers.

use crate::error::{Error, Result};

/// Largest accepted sieve bound.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 40;

/// Default segment size: one byte per odd number, sized for L2.
pub const DEFAULT_SEGMENT_BYTES: usize = 256 * 1024;

/// The primes up to `limit`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &u64> {
        self.primes.iter()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Primes `<= bound` as a prefix slice.
    pub fn up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    /// Odd primes `<= bound`.
    pub fn odd_up_to(&self, bound: u64) -> &[u64] {
        let s = self.up_to(bound);
        match s.first() {
            Some(2) => &s[1..],
            _ => s,
        }
    }
}

/// Returns every prime `<= limit`.
///
/// `limit` of 1 yields an empty table; 0 and anything above
/// [`MAX_SIEVE_LIMIT`] are argument errors.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with_segment(limit, DEFAULT_SEGMENT_BYTES)
}

pub fn sieve_primes_with_segment(limit: u64, segment_bytes: usize) -> Result<PrimeTable> {
    if limit == 0 || limit > MAX_SIEVE_LIMIT {
        return Err(Error::arg(format!(
            "sieve limit {limit} outside [1, 2^40]"
        )));
    }
    if segment_bytes == 0 {
        return Err(Error::arg("segment size must be positive"));
    }
    let mut primes = Vec::with_capacity(estimate_count(limit));
    for_each_prime_segment(2, limit + 1, segment_bytes, |_, _, seg| {
        primes.extend_from_slice(seg)
    });
    Ok(PrimeTable { limit, primes })
}

fn estimate_count(limit: u64) -> usize {
    if limit < 100 {
        return 32;
    }
    let x = limit as f64;
    (x / (x.ln() - 1.1)) as usize + 16
}

/// Plain (non-segmented) odd-only sieve. Used for base primes.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    // index i stands for 2i + 1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend(
        (1..half)
            .filter(|&i| !composite[i] && 2 * i + 1 <= n)
            .map(|i| (2 * i + 1) as u64),
    );
    out
}

/// Integer square root, floor.
pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = ((n as f64).sqrt() as u64).min(u32::MAX as u64);
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Sieves one window `[lo, hi)` with the given odd base primes (all base
/// primes up to `sqrt(hi - 1)` must be present). Appends primes to `out`.
pub(crate) fn sieve_window(lo: u64, hi: u64, base: &[u64], buf: &mut Vec<bool>, out: &mut Vec<u64>) {
    if hi <= lo {
        return;
    }
    if lo <= 2 && hi > 2 {
        out.push(2);
    }
    // odd numbers in [lo, hi): first odd >= max(lo, 3)
    let start = lo.max(3) | 1;
    if start >= hi {
        return;
    }
    let count = ((hi - start + 1) / 2) as usize;
    buf.clear();
    buf.resize(count, true);
    for &p in base {
        if p == 2 {
            continue;
        }
        let p2 = p * p;
        if p2 >= hi {
            break;
        }
        // first odd multiple of p that is >= max(start, p^2)
        let mut m = if p2 >= start {
            p2
        } else {
            start.div_ceil(p) * p
        };
        if m & 1 == 0 {
            m += p;
        }
        let mut idx = ((m - start) / 2) as usize;
        let step = p as usize;
        while idx < count {
            buf[idx] = false;
            idx += step;
        }
    }
    out.extend(
        buf.iter()
            .enumerate()
            .filter(|(_, &alive)| alive)
            .map(|(i, _)| start + 2 * i as u64)
            .filter(|&n| n > 1),
    );
}

/// Calls `f(seg_lo, seg_hi, primes)` for consecutive windows covering
/// `[lo, hi)`, with `primes` the primes in that window.
pub fn for_each_prime_segment<F>(lo: u64, hi: u64, segment_bytes: usize, mut f: F)
where
    F: FnMut(u64, u64, &[u64]),
{
    if hi <= lo {
        return;
    }
    let base = simple_sieve(isqrt(hi - 1));
    let span = 2 * segment_bytes.max(1) as u64;
    let mut buf = Vec::new();
    let mut out = Vec::new();
    let mut seg_lo = lo;
    while seg_lo < hi {
        let seg_hi = seg_lo.saturating_add(span).min(hi);
        out.clear();
        sieve_window(seg_lo, seg_hi, &base, &mut buf, &mut out);
        f(seg_lo, seg_hi, &out);
        seg_lo = seg_hi;
    }
}

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}
