//! Mean-value sums of the pair constants.
//!
//! `S^k_λ = Σ_{0 < |2r| <= λ} C^k_{2r}` should grow like `λ`. The windowed
//! variant weights each term by a sieving kernel `E(2r/λ)` and compares with
//! `λ A^E`; the difference, scaled by `1/k`, is the residual `R_k(λ)`.

mod kernel;

pub use kernel::{
    area_by_quadrature, kernel_area, kernel_eval, CubicKernel, KernelShape, SievingKernel,
};

use serde::Serialize;

use crate::constants::{hl_ratio_spf, ConstantEngine};
use crate::error::{Error, Result};
use crate::primes::smallest_prime_factors;
use crate::summation::CompensatedSum;

/// Which offsets enter a mean-value sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    /// `0 < |2r| <= λ`, both signs; the mean is `sum / λ`.
    Both,
    /// `0 < 2r <= λ`; the mean is `sum / (λ/2)`.
    Positive,
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Window::Both => "both",
            Window::Positive => "positive",
        })
    }
}

impl std::str::FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Window::Both),
            "positive" => Ok(Window::Positive),
            other => Err(Error::arg(format!("unknown window '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValueReport {
    pub k: u32,
    pub lambda: u64,
    pub window: Window,
    pub truncation_bound: u64,
    pub sum: f64,
    pub mean: f64,
    /// `R_k(λ)` with the default cubic kernel, over both signs.
    pub residual: f64,
    pub terms: u64,
}

/// Offsets `2r` with `0 < |2r| <= λ`, `r` increasing.
fn offsets(lambda: u64, window: Window) -> Vec<i64> {
    let half = (lambda / 2) as i64;
    let negative = match window {
        Window::Both => (-half..0).map(|r| 2 * r).collect(),
        Window::Positive => Vec::new(),
    };
    negative.into_iter().chain((1..=half).map(|r| 2 * r)).collect()
}

/// `S^k_λ`, its mean and the residual, reusing `engine`'s sieve and cache.
pub fn mean_value(engine: &ConstantEngine, k: u32, lambda: u64, window: Window) -> Result<MeanValueReport> {
    if lambda < 2 {
        return Err(Error::arg(format!("window λ = {lambda} must be at least 2")));
    }
    let all = offsets(lambda, Window::Both);
    let consts = engine.c_batch(k, &all)?;
    let selected = offsets(lambda, window);
    let sum = CompensatedSum::sum_iter(
        all.iter().zip(&consts).filter(|(t, _)| window == Window::Both || **t > 0).map(|(_, c)| c.value),
    );
    let mean = match window {
        Window::Both => sum / lambda as f64,
        Window::Positive => sum / (lambda as f64 / 2.0),
    };
    let residual = residual_from(k, lambda, |i| consts[i].value, &all, &CubicKernel);
    Ok(MeanValueReport {
        k,
        lambda,
        window,
        truncation_bound: engine.bound(),
        sum,
        mean,
        residual,
        terms: selected.len() as u64,
    })
}

pub fn mean_s(k: u32, lambda: u64, window: Window, bound: u64) -> Result<MeanValueReport> {
    mean_value(&ConstantEngine::new(bound)?, k, lambda, window)
}

/// `R_k(λ) = k Σ E(2r/λ) BH(f_{2r})/(2k) - (λ/k) A^E` with
/// `BH = (2/k) C^k_{2r}` taken from `constant(i)` for `offsets[i]`.
pub fn residual_from<F, S>(k: u32, lambda: u64, constant: F, offsets: &[i64], shape: &S) -> f64
where
    F: Fn(usize) -> f64,
    S: KernelShape + ?Sized,
{
    let kf = k as f64;
    let lam = lambda as f64;
    let weighted = CompensatedSum::sum_iter(offsets.iter().enumerate().map(|(i, &t)| {
        let bh = 2.0 / kf * constant(i);
        shape.unit((t as f64 / lam).abs()) * bh / (2.0 * kf)
    }));
    kf * weighted - lam / kf * shape.area()
}

pub fn residual_with<S: KernelShape>(
    engine: &ConstantEngine,
    k: u32,
    lambda: u64,
    shape: &S,
) -> Result<f64> {
    if lambda < 2 {
        return Err(Error::arg(format!("window λ = {lambda} must be at least 2")));
    }
    let all = offsets(lambda, Window::Both);
    let consts = engine.c_batch(k, &all)?;
    Ok(residual_from(k, lambda, |i| consts[i].value, &all, shape))
}

pub fn residual_r<S: KernelShape>(k: u32, lambda: u64, bound: u64, shape: &S) -> Result<f64> {
    residual_with(&ConstantEngine::new(bound)?, k, lambda, shape)
}

/// `S_m = Σ_{1 <= r <= m} C_{2r}`.
pub fn s_m_with(engine: &ConstantEngine, m: u64) -> Result<f64> {
    Ok(hl_mean_terms(engine, 1, m)?.0)
}

pub fn s_m(m: u64, bound: u64) -> Result<f64> {
    s_m_with(&ConstantEngine::new(bound)?, m)
}

/// `(S_m - m + ln(m)/2) / ln(m)^(2/3)`.
pub fn s_m_deviation_with(engine: &ConstantEngine, m: u64) -> Result<f64> {
    if m < 10 {
        return Err(Error::arg(format!("m = {m} must be at least 10")));
    }
    let s = s_m_with(engine, m)?;
    let mf = m as f64;
    let l = mf.ln();
    Ok((s - mf + 0.5 * l) / l.powf(2.0 / 3.0))
}

pub fn s_m_deviation(m: u64, bound: u64) -> Result<f64> {
    s_m_deviation_with(&ConstantEngine::new(bound)?, m)
}

/// `(1/count) Σ_{r=1..count} C_{2hr}`.
pub fn subsequence_mean_with(engine: &ConstantEngine, h: u64, count: u64) -> Result<f64> {
    if h == 0 || count == 0 {
        return Err(Error::arg("h and count must be positive"));
    }
    Ok(hl_mean_terms(engine, h, count)?.0 / count as f64)
}

pub fn subsequence_mean(h: u64, count: u64, bound: u64) -> Result<f64> {
    subsequence_mean_with(&ConstantEngine::new(bound)?, h, count)
}

/// `(Σ_{r=1..count} C_{2hr}, count)`, summed in increasing `r`.
fn hl_mean_terms(engine: &ConstantEngine, h: u64, count: u64) -> Result<(f64, u64)> {
    let top = h
        .checked_mul(count)
        .filter(|&t| t <= 1 << 32)
        .ok_or_else(|| Error::arg("h * count too large"))? as usize;
    let spf = smallest_prime_factors(top);
    let c2 = engine.twin_prime_constant();
    let sum = CompensatedSum::sum_iter(
        (1..=count as usize).map(|r| c2 * hl_ratio_spf(r * h as usize, &spf)),
    );
    Ok((sum, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Flat;

    impl KernelShape for Flat {
        fn unit(&self, t: f64) -> f64 {
            if t.abs() <= 1.0 {
                1.0
            } else {
                0.0
            }
        }
    }

    #[test]
    fn offsets_cover_window() {
        assert_eq!(offsets(6, Window::Both), vec![-6, -4, -2, 2, 4, 6]);
        assert_eq!(offsets(6, Window::Positive), vec![2, 4, 6]);
        assert_eq!(offsets(7, Window::Both).len(), 6);
    }

    #[test]
    fn report_bookkeeping() {
        let e = ConstantEngine::new(10_000).unwrap();
        let r = mean_value(&e, 2, 30, Window::Both).unwrap();
        assert_eq!(r.terms, 30);
        assert_eq!(r.mean, r.sum / 30.0);
        let p = mean_value(&e, 2, 30, Window::Positive).unwrap();
        assert_eq!(p.terms, 15);
        assert_eq!(p.mean, p.sum / 15.0);
        assert_eq!(p.residual, r.residual);
        assert!(mean_value(&e, 2, 1, Window::Both).is_err());
    }

    #[test]
    fn summands_from_cache_match_batch() {
        let e = ConstantEngine::new(20_000).unwrap();
        let r = mean_value(&e, 2, 60, Window::Both).unwrap();
        let singles = CompensatedSum::sum_iter(offsets(60, Window::Both).into_iter().map(|t| {
            e.c_constant(crate::residues::PairFamily::new(2, t).unwrap()).unwrap().value
        }));
        assert_eq!(singles.to_bits(), r.sum.to_bits());
    }

    #[test]
    fn residual_hand_evaluation() {
        // k = 1, λ = 4: only 2r = ±2 carry weight E(1/2) = 1/4
        let e = ConstantEngine::new(1_000_000).unwrap();
        let c2 = e.hl_constant(2).unwrap().value;
        let r = residual_with(&e, 1, 4, &CubicKernel).unwrap();
        let want = 2.0 * 0.25 * c2 - 4.0 * 0.375;
        assert!((r - want).abs() < 1e-9, "{r} vs {want}");
        assert!((r + 1.170).abs() < 1e-3);
    }

    #[test]
    fn residual_of_unit_constants_is_riemann_error() {
        for k in 1..=3 {
            for lambda in [100u64, 1000, 10_000] {
                let offs = offsets(lambda, Window::Both);
                let r = residual_from(k, lambda, |_| 1.0, &offs, &CubicKernel);
                // the sum omits r = 0, where E = 1: trapezoid rule minus 1
                assert!((r + 1.0 / k as f64).abs() < 1e-3, "k={k} λ={lambda} r={r}");
                let weight: f64 = offs.iter().map(|&t| CubicKernel.unit(t as f64 / lambda as f64)).sum();
                if lambda >= 1000 {
                    assert!((weight / (lambda as f64 * 0.375) - 1.0).abs() < 0.02);
                }
            }
        }
        let offs = offsets(100, Window::Both);
        let flat = residual_from(1, 100, |_| 1.0, &offs, &Flat);
        assert!(flat.abs() < 1e-6);
    }

    #[test]
    fn s_m_small() {
        let e = ConstantEngine::new(100_000).unwrap();
        let direct: f64 = (1..=10).map(|r| e.hl_constant(2 * r).unwrap().value).sum();
        let s = s_m_with(&e, 10).unwrap();
        assert!((s - direct).abs() < 1e-12);
        assert!(s_m_deviation_with(&e, 10).unwrap().is_finite());
        assert!(s_m_deviation_with(&e, 9).is_err());
    }

    #[test]
    fn subsequence_small() {
        let e = ConstantEngine::new(100_000).unwrap();
        let direct: f64 = (1..=50).map(|r| e.hl_constant(6 * r).unwrap().value).sum::<f64>() / 50.0;
        assert!((subsequence_mean_with(&e, 3, 50).unwrap() - direct).abs() < 1e-12);
        assert!(subsequence_mean_with(&e, 0, 5).is_err());
    }

    #[test]
    fn window_parses() {
        assert_eq!("both".parse::<Window>().unwrap(), Window::Both);
        assert_eq!("positive".parse::<Window>().unwrap(), Window::Positive);
        assert!("left".parse::<Window>().is_err());
    }
}
