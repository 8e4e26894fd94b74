//! Truncated Euler products for prime-pair constants.
//!
//! All products run over odd primes `p <= P` in increasing order and are
//! accumulated as compensated sums of logarithms. The `γ` and `C^k` products
//! converge only conditionally for `k >= 2`, so the ordering is part of the
//! definition of the truncated value.
//!
//! Two kinds of zero are kept apart: a *reducible* zero (the polynomial
//! `n^k + q` factors, so the constant is defined to be 0) and a *vanished*
//! zero (some local factor `(p - N(p))/p` is exactly 0).

mod product;
mod reducible;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use reducible::is_reducible;

use crate::cache::{CacheKey, CachedValue, ConstantCache, ConstantKind};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::primes::{sieve_primes, PrimeTable};
use crate::residues::{OffsetPolynomial, PairFamily};
use product::{
    euler_log_sums, GammaFactors, LogSum, NuBatch, PairFactors, RatioFactors, TwinFactors,
};

/// Default truncation bound `P`.
pub const DEFAULT_BOUND: u64 = 1_000_000;

/// A truncated Euler product with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProductEstimate {
    pub value: f64,
    /// Largest prime that may appear in the product.
    pub truncation_bound: u64,
    /// Number of local factors multiplied in.
    pub factors_used: u64,
    /// Some local factor was exactly zero.
    pub vanished: bool,
    /// The constant is zero by definition because the polynomial factors.
    pub reducible: bool,
}

/// Evaluates constants against one truncation bound, reusing the sieve.
#[derive(Debug)]
pub struct ConstantEngine {
    bound: u64,
    table: Arc<PrimeTable>,
    exec: Exec,
    cache: Option<Arc<ConstantCache>>,
    twin: OnceLock<f64>,
}

impl ConstantEngine {
    pub fn new(bound: u64) -> Result<Self> {
        if bound < 3 {
            return Err(Error::arg(format!("truncation bound P = {bound} must be at least 3")));
        }
        let table = Arc::new(sieve_primes(bound)?);
        Ok(Self::with_table(table, bound))
    }

    /// Uses an existing table, which must reach at least `bound`.
    pub fn with_table(table: Arc<PrimeTable>, bound: u64) -> Self {
        assert!(table.limit() >= bound, "prime table shorter than the truncation bound");
        ConstantEngine { bound, table, exec: Exec::default(), cache: None, twin: OnceLock::new() }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_cache(mut self, cache: Arc<ConstantCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    fn odd_primes(&self) -> &[u64] {
        self.table.odd_up_to(self.bound)
    }

    fn estimate(&self, value: f64, vanished: bool, reducible: bool) -> EulerProductEstimate {
        EulerProductEstimate {
            value,
            truncation_bound: self.bound,
            factors_used: if reducible { 0 } else { self.odd_primes().len() as u64 },
            vanished,
            reducible,
        }
    }

    fn key(&self, kind: ConstantKind, k: u32, q: i64) -> CacheKey {
        CacheKey { kind, k, q, bound: self.bound }
    }

    /// Looks each item up in the cache and computes the misses in one batch.
    fn cached_batch<F>(
        &self,
        kind: ConstantKind,
        k: u32,
        qs: &[i64],
        compute: F,
    ) -> Result<Vec<EulerProductEstimate>>
    where
        F: FnOnce(&[i64]) -> Vec<EulerProductEstimate>,
    {
        let mut out: Vec<Option<EulerProductEstimate>> = qs
            .iter()
            .map(|&q| {
                let c = self.cache.as_ref()?.get(&self.key(kind, k, q))?;
                Some(self.estimate(c.value, c.vanished, c.reducible))
            })
            .collect();
        let missing: Vec<i64> =
            qs.iter().zip(&out).filter(|(_, o)| o.is_none()).map(|(&q, _)| q).collect();
        if !missing.is_empty() {
            let fresh = compute(&missing);
            let mut it = fresh.into_iter();
            for (slot, &q) in out.iter_mut().zip(qs) {
                if slot.is_none() {
                    let e = it.next().expect("one result per missing item");
                    if let Some(cache) = &self.cache {
                        cache.insert(
                            self.key(kind, k, q),
                            CachedValue { value: e.value, vanished: e.vanished, reducible: e.reducible },
                        )?;
                    }
                    *slot = Some(e);
                }
            }
        }
        Ok(out.into_iter().map(|o| o.unwrap()).collect())
    }

    /// The twin-prime constant `C_2 = ∏_{2 < p <= P} (1 - 1/(p-1)^2)`.
    pub fn twin_prime_constant(&self) -> f64 {
        *self.twin.get_or_init(|| {
            euler_log_sums(self.odd_primes(), &TwinFactors, self.exec)[0].product()
        })
    }

    /// `C_{2r} = C_2 ∏_{p | r, p > 2} (p-1)/(p-2)`.
    pub fn hl_constant(&self, two_r: i64) -> Result<EulerProductEstimate> {
        if two_r == 0 || two_r % 2 != 0 {
            return Err(Error::arg(format!("2r = {two_r} must be even and nonzero")));
        }
        let v = self.cached_batch(ConstantKind::HardyLittlewood, 1, &[two_r], |qs| {
            qs.iter()
                .map(|&q| {
                    let value = self.twin_prime_constant() * hl_ratio((q / 2).unsigned_abs());
                    self.estimate(value, false, false)
                })
                .collect()
        })?;
        Ok(v[0])
    }

    /// `γ^k_q = ∏ (p/(p-1)) (p - ν(p))/p`, or a reducible zero.
    pub fn gamma(&self, g: OffsetPolynomial) -> Result<EulerProductEstimate> {
        Ok(self.gamma_batch(g.k(), &[g.q()])?[0])
    }

    pub fn gamma_batch(&self, k: u32, qs: &[i64]) -> Result<Vec<EulerProductEstimate>> {
        for &q in qs {
            OffsetPolynomial::new(k, q)?;
        }
        self.cached_batch(ConstantKind::Gamma, k, qs, |missing| {
            self.product_batch(k, missing, &polys_reducible(k, missing), |nus| {
                euler_log_sums(self.odd_primes(), &GammaFactors { nus }, self.exec)
            })
        })
    }

    /// `C^k_{2r} = ∏ (p/(p-1))^2 (p - N(p))/p`, or a reducible zero.
    pub fn c_constant(&self, f: PairFamily) -> Result<EulerProductEstimate> {
        Ok(self.c_batch(f.k(), &[f.two_r()])?[0])
    }

    pub fn c_batch(&self, k: u32, two_rs: &[i64]) -> Result<Vec<EulerProductEstimate>> {
        for &t in two_rs {
            PairFamily::new(k, t)?;
        }
        self.cached_batch(ConstantKind::Pair, k, two_rs, |missing| {
            self.product_batch(k, missing, &polys_reducible(k, missing), |nus| {
                euler_log_sums(self.odd_primes(), &PairFactors { nus }, self.exec)
            })
        })
    }

    fn product_batch<F>(
        &self,
        k: u32,
        qs: &[i64],
        reducible: &[bool],
        run: F,
    ) -> Vec<EulerProductEstimate>
    where
        F: FnOnce(NuBatch) -> Vec<LogSum>,
    {
        let live: Vec<i64> =
            qs.iter().zip(reducible).filter(|(_, &r)| !r).map(|(&q, _)| q).collect();
        let sums = if live.is_empty() { Vec::new() } else { run(NuBatch::new(k, live)) };
        let mut it = sums.into_iter();
        reducible
            .iter()
            .map(|&r| {
                if r {
                    self.estimate(0.0, false, true)
                } else {
                    let s = it.next().unwrap();
                    self.estimate(s.product(), s.vanished, false)
                }
            })
            .collect()
    }

    /// Truncated `C^k_{2r} / γ^k_{2r}` as its own product.
    pub fn c_over_gamma(&self, f: PairFamily) -> Result<f64> {
        let gamma = self.gamma(f.second())?;
        if gamma.value == 0.0 {
            return Err(Error::UndefinedRatio(format!(
                "gamma of {} is zero at P = {}",
                f.second(),
                self.bound
            )));
        }
        let sums = euler_log_sums(
            self.odd_primes(),
            &RatioFactors { nus: NuBatch::new(f.k(), vec![f.two_r()]) },
            self.exec,
        );
        Ok(sums[0].product())
    }

    /// Bateman–Horn constant `(2/k) C^k_{2r}`.
    pub fn bh_constant(&self, f: PairFamily) -> Result<f64> {
        Ok(2.0 / f.k() as f64 * self.c_constant(f)?.value)
    }
}

fn polys_reducible(k: u32, qs: &[i64]) -> Vec<bool> {
    qs.iter()
        .map(|&q| is_reducible(OffsetPolynomial::new(k, q).expect("validated offset")))
        .collect()
}

/// `∏_{p | r, p > 2} (p-1)/(p-2)`, primes in increasing order.
pub(crate) fn hl_ratio(mut r: u64) -> f64 {
    let mut acc = 1.0;
    while r % 2 == 0 && r > 0 {
        r /= 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= r {
        if r % d == 0 {
            acc *= (d - 1) as f64 / (d - 2) as f64;
            while r % d == 0 {
                r /= d;
            }
        }
        d += 2;
    }
    if r > 1 {
        acc *= (r - 1) as f64 / (r - 2) as f64;
    }
    acc
}

/// [`hl_ratio`] driven by a smallest-prime-factor table.
pub(crate) fn hl_ratio_spf(mut r: usize, spf: &[u32]) -> f64 {
    let mut acc = 1.0;
    while r > 1 {
        let p = spf[r] as usize;
        if p > 2 {
            acc *= (p - 1) as f64 / (p - 2) as f64;
        }
        while r % p == 0 {
            r /= p;
        }
    }
    acc
}

pub fn hl_constant(two_r: i64, bound: u64) -> Result<EulerProductEstimate> {
    ConstantEngine::new(bound)?.hl_constant(two_r)
}

pub fn gamma_constant(g: OffsetPolynomial, bound: u64) -> Result<EulerProductEstimate> {
    ConstantEngine::new(bound)?.gamma(g)
}

pub fn c_constant(f: PairFamily, bound: u64) -> Result<EulerProductEstimate> {
    ConstantEngine::new(bound)?.c_constant(f)
}

pub fn c_over_gamma(f: PairFamily, bound: u64) -> Result<f64> {
    ConstantEngine::new(bound)?.c_over_gamma(f)
}

pub fn bh_constant(f: PairFamily, bound: u64) -> Result<f64> {
    ConstantEngine::new(bound)?.bh_constant(f)
}
