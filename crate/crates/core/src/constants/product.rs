//! Blocked log-space evaluation of truncated Euler products.

use crate::par::Exec;
use crate::primes::{gcd, jacobi, mul_mod, pow_mod_u64};
use crate::residues::nu_from_residue;
use crate::summation::CompensatedSum;

/// Primes per block. Fixed so the merge order never depends on threads.
pub(crate) const PRIME_BLOCK: usize = 4096;

/// Accumulated `Σ ln(factor)` for one product.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct LogSum {
    pub sum: CompensatedSum,
    /// Some local factor was exactly zero.
    pub vanished: bool,
}

impl LogSum {
    pub fn product(&self) -> f64 {
        if self.vanished {
            0.0
        } else {
            self.sum.value().exp()
        }
    }
}

/// Local factors of a batch of Euler products.
pub(crate) trait LocalFactors: Sync {
    type Scratch: Default;

    fn len(&self) -> usize;

    /// Writes `ln(factor_i(p))` into `out[i]`, or `None` when the factor is 0.
    fn fill(&self, p: u64, scratch: &mut Self::Scratch, out: &mut [Option<f64>]);
}

pub(crate) fn euler_log_sums<F: LocalFactors>(primes: &[u64], factors: &F, exec: Exec) -> Vec<LogSum> {
    let m = factors.len();
    let blocks = primes.len().div_ceil(PRIME_BLOCK);
    let partials = exec.map_blocks(blocks, |b| {
        let chunk = &primes[b * PRIME_BLOCK..((b + 1) * PRIME_BLOCK).min(primes.len())];
        let mut acc = vec![LogSum::default(); m];
        let mut buf = vec![None; m];
        let mut scratch = F::Scratch::default();
        for &p in chunk {
            factors.fill(p, &mut scratch, &mut buf);
            for (a, v) in acc.iter_mut().zip(&buf) {
                match v {
                    Some(l) => a.sum.add(*l),
                    None => a.vanished = true,
                }
            }
        }
        acc
    });
    let mut total = vec![LogSum::default(); m];
    for block in &partials {
        for (t, b) in total.iter_mut().zip(block) {
            t.sum.merge(&b.sum);
            t.vanished |= b.vanished;
        }
    }
    total
}

/// Items below this size compute `ν` one power at a time.
const CHARACTER_TABLE_MIN_ITEMS: usize = 16;

/// Root counts `ν(p)` of `n^k + q_i` for a batch of offsets.
///
/// Large batches use multiplicativity of `a ↦ a^((p-1)/g) mod p`: the
/// character is evaluated once per small prime dividing some `q_i`, then
/// combined per item.
pub(crate) struct NuBatch {
    k: u32,
    qs: Vec<i64>,
    table: Option<CharacterPlan>,
}

struct CharacterPlan {
    ells: Vec<u64>,
    /// per item: (index into `ells`, exponent)
    factors: Vec<Vec<(usize, u32)>>,
}

impl NuBatch {
    pub fn new(k: u32, qs: Vec<i64>) -> Self {
        let table = (qs.len() >= CHARACTER_TABLE_MIN_ITEMS && k >= 2).then(|| plan(&qs));
        NuBatch { k, qs, table }
    }

    pub fn len(&self) -> usize {
        self.qs.len()
    }

    pub fn qs(&self) -> &[i64] {
        &self.qs
    }

    pub fn fill(&self, p: u64, chi: &mut Vec<u64>, out: &mut [u64]) {
        let Some(plan) = &self.table else {
            for (o, &q) in out.iter_mut().zip(&self.qs) {
                let r = (q as i128).rem_euclid(p as i128) as u64;
                *o = nu_from_residue(self.k, r, p);
            }
            return;
        };
        let g = gcd(self.k as u64, p - 1);
        if g == 1 {
            out.iter_mut().for_each(|o| *o = 1);
            return;
        }
        let e = (p - 1) / g;
        let character = |a: u64| -> u64 {
            if g == 2 {
                if jacobi(a as i128, p) == 1 {
                    1
                } else {
                    p - 1
                }
            } else {
                pow_mod_u64(a, e, p)
            }
        };
        chi.clear();
        chi.extend(plan.ells.iter().map(|&l| {
            let r = l % p;
            if r == 0 {
                0
            } else {
                character(r)
            }
        }));
        let chi_minus_one = character(p - 1);
        for ((o, &q), fs) in out.iter_mut().zip(&self.qs).zip(&plan.factors) {
            if q.unsigned_abs() % p == 0 {
                *o = 1;
                continue;
            }
            // -q = (-1)^[q > 0] |q|
            let mut c = if q > 0 { chi_minus_one } else { 1 };
            for &(i, exp) in fs {
                for _ in 0..exp {
                    c = mul_mod(c, chi[i], p);
                }
            }
            *o = if c == 1 { g } else { 0 };
        }
    }
}

fn plan(qs: &[i64]) -> CharacterPlan {
    let mut ells: Vec<u64> = Vec::new();
    let mut factors = Vec::with_capacity(qs.len());
    for &q in qs {
        let mut n = q.unsigned_abs();
        let mut fs = Vec::new();
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                fs.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            fs.push((n, 1));
        }
        let idx = fs
            .into_iter()
            .map(|(l, e)| {
                let i = match ells.iter().position(|&x| x == l) {
                    Some(i) => i,
                    None => {
                        ells.push(l);
                        ells.len() - 1
                    }
                };
                (i, e)
            })
            .collect();
        factors.push(idx);
    }
    CharacterPlan { ells, factors }
}

#[derive(Default)]
pub(crate) struct NuScratch {
    chi: Vec<u64>,
    nu: Vec<u64>,
    ln_table: Vec<f64>,
}

/// `ln((p - j) / p)` for small `j`, memoized per prime.
fn ln_one_minus(table: &mut Vec<f64>, p: u64, j: u64) -> f64 {
    let j = j as usize;
    if table.len() <= j {
        table.resize(j + 1, f64::NAN);
    }
    if table[j].is_nan() {
        table[j] = (-(j as f64) / p as f64).ln_1p();
    }
    table[j]
}

/// `C^k_{2r}` factors: `(p/(p-1))^2 (p - N(p))/p`.
pub(crate) struct PairFactors {
    pub nus: NuBatch,
}

impl LocalFactors for PairFactors {
    type Scratch = NuScratch;

    fn len(&self) -> usize {
        self.nus.len()
    }

    fn fill(&self, p: u64, s: &mut NuScratch, out: &mut [Option<f64>]) {
        s.nu.resize(self.nus.len(), 0);
        self.nus.fill(p, &mut s.chi, &mut s.nu);
        s.ln_table.clear();
        let lift = -2.0 * (-1.0 / p as f64).ln_1p();
        for ((o, &nu), &two_r) in out.iter_mut().zip(&s.nu).zip(self.nus.qs()) {
            let big_n = if two_r.unsigned_abs() % p == 0 { nu } else { nu + 1 };
            *o = (big_n < p).then(|| lift + ln_one_minus(&mut s.ln_table, p, big_n));
        }
    }
}

/// `γ^k_q` factors: `(p/(p-1)) (p - ν(p))/p`.
pub(crate) struct GammaFactors {
    pub nus: NuBatch,
}

impl LocalFactors for GammaFactors {
    type Scratch = NuScratch;

    fn len(&self) -> usize {
        self.nus.len()
    }

    fn fill(&self, p: u64, s: &mut NuScratch, out: &mut [Option<f64>]) {
        s.nu.resize(self.nus.len(), 0);
        self.nus.fill(p, &mut s.chi, &mut s.nu);
        s.ln_table.clear();
        let lift = -(-1.0 / p as f64).ln_1p();
        for (o, &nu) in out.iter_mut().zip(&s.nu) {
            *o = (nu < p).then(|| lift + ln_one_minus(&mut s.ln_table, p, nu));
        }
    }
}

/// Factors of `C/γ`: `p/(p-1)` for `p | 2r`, else
/// `(p/(p-1)) (p - ν - 1)/(p - ν)`.
pub(crate) struct RatioFactors {
    pub nus: NuBatch,
}

impl LocalFactors for RatioFactors {
    type Scratch = NuScratch;

    fn len(&self) -> usize {
        self.nus.len()
    }

    fn fill(&self, p: u64, s: &mut NuScratch, out: &mut [Option<f64>]) {
        s.nu.resize(self.nus.len(), 0);
        self.nus.fill(p, &mut s.chi, &mut s.nu);
        let lift = -(-1.0 / p as f64).ln_1p();
        for ((o, &nu), &two_r) in out.iter_mut().zip(&s.nu).zip(self.nus.qs()) {
            *o = if two_r.unsigned_abs() % p == 0 {
                Some(lift)
            } else if nu + 1 >= p {
                None
            } else {
                Some(lift + (-1.0 / (p - nu) as f64).ln_1p())
            };
        }
    }
}

/// Twin-prime constant factors `1 - 1/(p-1)^2`.
pub(crate) struct TwinFactors;

impl LocalFactors for TwinFactors {
    type Scratch = ();

    fn len(&self) -> usize {
        1
    }

    fn fill(&self, p: u64, _: &mut (), out: &mut [Option<f64>]) {
        let d = (p - 1) as f64;
        out[0] = Some((-1.0 / (d * d)).ln_1p());
    }
}
