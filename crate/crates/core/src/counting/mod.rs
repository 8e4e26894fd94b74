//! Counting prime pairs `(p, p^k + 2r)`.
//!
//! Work is split into fixed windows of `n`. Each window sieves its primes,
//! then runs a second sieve over the values `n^k + 2r`: for every small prime
//! `l` and every root `ρ` of `n^k + 2r ≡ 0 (mod l)`, positions `n ≡ ρ` are
//! struck out. Only surviving primes reach Miller–Rabin.

mod li;

pub use li::li;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::primes::{isqrt, pow_mod_u64, primality, simple_sieve, sieve_window};
use crate::residues::PairFamily;
use crate::summation::CompensatedSum;

/// Window length in `n`.
pub const COUNT_WINDOW: u64 = 1 << 19;

/// Largest prime used to pre-sieve the values `p^k + 2r`.
pub const VALUE_SIEVE_BOUND: u64 = 4096;

/// Pairs found in a range of `p`, with the weighted sum `Σ ln² p`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RangeTally {
    pub pairs: u64,
    theta: CompensatedSum,
}

impl RangeTally {
    pub fn theta(&self) -> f64 {
        self.theta.value()
    }

    pub fn merge(&mut self, other: &RangeTally) {
        self.pairs += other.pairs;
        self.theta.merge(&other.theta);
    }
}

/// One row of a counting table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountRecord {
    pub x: u64,
    pub pair_count: u64,
    pub theta: f64,
    pub li2: f64,
    /// `constant * li_2(x)`, rounded to an integer.
    pub predicted: f64,
    /// `pair_count / predicted` to 3 decimals; `None` when nothing is predicted.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PairCounter {
    family: PairFamily,
    exec: Exec,
    /// (l, roots of n^k + 2r mod l)
    value_sieve: Vec<(u64, Vec<u64>)>,
}

impl PairCounter {
    pub fn new(family: PairFamily) -> Self {
        let k = family.k() as u64;
        let value_sieve = simple_sieve(VALUE_SIEVE_BOUND)
            .into_iter()
            .map(|l| {
                let target = (-(family.two_r() as i128)).rem_euclid(l as i128) as u64;
                let roots = (0..l).filter(|&n| pow_mod_u64(n, k, l) == target).collect();
                (l, roots)
            })
            .filter(|(_, roots): &(u64, Vec<u64>)| !roots.is_empty())
            .collect();
        PairCounter { family, exec: Exec::default(), value_sieve }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn family(&self) -> PairFamily {
        self.family
    }

    /// Fails unless `p^k + 2r` fits 127 bits for every `p <= x`.
    pub fn check_range(&self, x: u64) -> Result<()> {
        (x as i128)
            .checked_pow(self.family.k())
            .and_then(|v| v.checked_add(self.family.two_r().unsigned_abs() as i128))
            .map(|_| ())
            .ok_or_else(|| {
                Error::Overflow(format!(
                    "p^{} + {} exceeds 127 bits for p near {x}",
                    self.family.k(),
                    self.family.two_r()
                ))
            })
    }

    /// Pairs with `p` in `[lo, hi)`.
    pub fn tally(&self, lo: u64, hi: u64) -> Result<RangeTally> {
        if hi <= lo {
            return Ok(RangeTally::default());
        }
        self.check_range(hi - 1)?;
        let base = simple_sieve(isqrt(hi - 1));
        let first = lo / COUNT_WINDOW;
        let last = (hi - 1) / COUNT_WINDOW;
        let parts = self.exec.map_blocks((last - first + 1) as usize, |i| {
            let b = first + i as u64;
            let wlo = lo.max(b * COUNT_WINDOW);
            let whi = hi.min((b + 1) * COUNT_WINDOW);
            self.tally_window(wlo, whi, &base)
        });
        let mut total = RangeTally::default();
        for part in &parts {
            total.merge(part);
        }
        Ok(total)
    }

    fn tally_window(&self, lo: u64, hi: u64, base: &[u64]) -> RangeTally {
        let mut buf = Vec::new();
        let mut primes = Vec::new();
        sieve_window(lo, hi, base, &mut buf, &mut primes);
        let mut struck = vec![false; (hi - lo) as usize];
        for (l, roots) in &self.value_sieve {
            let l = *l;
            for &rho in roots {
                let offset = (rho + l - lo % l) % l;
                let mut i = offset as usize;
                while i < struck.len() {
                    struck[i] = true;
                    i += l as usize;
                }
            }
        }
        let k = self.family.k();
        let two_r = self.family.two_r() as i128;
        let mut tally = RangeTally::default();
        for &p in &primes {
            let member = (p as i128).pow(k) + two_r;
            let hit = if member < 2 {
                false
            } else if member <= VALUE_SIEVE_BOUND as i128 {
                primality(member).is_prime
            } else {
                !struck[(p - lo) as usize] && primality(member).is_prime
            };
            if hit {
                tally.pairs += 1;
                let lp = (p as f64).ln();
                tally.theta.add(lp * lp);
            }
        }
        tally
    }

    /// `π^k_{2r}(x)`.
    pub fn count(&self, x: u64) -> Result<u64> {
        Ok(self.tally(2, x.saturating_add(1))?.pairs)
    }

    /// `θ^k_{2r}(x) = Σ ln² p` over the counted pairs.
    pub fn theta(&self, x: u64) -> Result<f64> {
        Ok(self.tally(2, x.saturating_add(1))?.theta())
    }

    /// Counting rows for ascending `xs`, comparing against `constant * li_2(x)`.
    pub fn table(&self, xs: &[u64], constant: f64) -> Result<Vec<CountRecord>> {
        if xs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::arg("x values must be ascending"));
        }
        if let Some(&last) = xs.last() {
            self.check_range(last)?;
        }
        let mut running = RangeTally::default();
        let mut from = 2u64;
        let mut out = Vec::with_capacity(xs.len());
        for &x in xs {
            if x == 0 {
                return Err(Error::arg("x must be positive"));
            }
            let to = x + 1;
            if to > from {
                running.merge(&self.tally(from, to)?);
                from = to;
            }
            out.push(make_record(x, &running, constant)?);
        }
        Ok(out)
    }
}

fn make_record(x: u64, tally: &RangeTally, constant: f64) -> Result<CountRecord> {
    let li2 = if x >= 2 { li(2, x as f64)? } else { 0.0 };
    let predicted = (constant * li2).round();
    let ratio = (predicted > 0.0)
        .then(|| (tally.pairs as f64 / predicted * 1000.0).round() / 1000.0);
    Ok(CountRecord { x, pair_count: tally.pairs, theta: tally.theta(), li2, predicted, ratio })
}

pub fn count_pairs(f: PairFamily, x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::arg("x must be positive"));
    }
    PairCounter::new(f).count(x)
}

pub fn theta(f: PairFamily, x: u64) -> Result<f64> {
    if x == 0 {
        return Err(Error::arg("x must be positive"));
    }
    PairCounter::new(f).theta(x)
}

pub fn table_report(f: PairFamily, xs: &[u64], constant: f64) -> Result<Vec<CountRecord>> {
    PairCounter::new(f).table(xs, constant)
}
