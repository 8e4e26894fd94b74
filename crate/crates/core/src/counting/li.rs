//! `li_m(x) = ∫_2^x dt / ln^m t` by adaptive Gauss–Kronrod quadrature.

use crate::error::{Error, Result};
use crate::quad;
use crate::summation::CompensatedSum;

/// `∫_2^x dt / ln^m t` for `x >= 2`, `m >= 1`.
///
/// Integrates `e^u / u^m` over `u ∈ [ln 2, ln x]` in panels of width at most
/// 1/2, i.e. log-spaced panels in `t`.
pub fn li(m: u32, x: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::arg("li_m needs m >= 1"));
    }
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::arg(format!("li_m(x) needs finite x >= 2, got {x}")));
    }
    let lo = 2f64.ln();
    let hi = x.ln();
    if hi <= lo {
        return Ok(0.0);
    }
    let integrand = |u: f64| (u.exp()) / u.powi(m as i32);
    let panels = ((hi - lo) / 0.5).ceil().max(1.0) as usize;
    let width = (hi - lo) / panels as f64;
    let mut acc = CompensatedSum::new();
    for i in 0..panels {
        let a = lo + width * i as f64;
        let b = if i + 1 == panels { hi } else { a + width };
        quad::adaptive(&integrand, a, b, 1e-14, 40, &mut acc);
    }
    Ok(acc.value())
}
