//! Prime-pair constants for the polynomial pairs `{n, n^k + 2r}`.
//!
//! The crate covers four layers:
//!
//! - [`primes`]: segmented sieving, modular exponentiation and deterministic
//!   primality for the large pair member `p^k + 2r`.
//! - [`residues`]: local root counts `ν(p)` and `N(p)` modulo a prime, Legendre
//!   symbols and the cubic 0/1/3-prime classification.
//! - [`constants`]: truncated Euler products for the Hardy–Littlewood
//!   constants `C_{2r}`, the adjusted constants `C^k_{2r}`, the single-polynomial
//!   constants `γ^k_q` and the Bateman–Horn constants `(2/k) C^k_{2r}`.
//! - [`counting`] and [`meanvalue`]: exact pair counts, the weighted sum
//!   `θ(x)`, the comparison integral `li_m(x)`, and the mean-value sums.
//!
//! ```
//! use primepair::{count_pairs, PairFamily};
//!
//! let f = PairFamily::new(2, -2).unwrap();
//! assert_eq!(count_pairs(f, 10_000).unwrap(), 259);
//! ```
//!
//! Inner loops run on rayon when the `parallel` feature is enabled (the
//! default). Every reduction merges fixed-size blocks in index order, so
//! results are bit-identical to the sequential path.

pub mod cache;
pub mod constants;
pub mod counting;
pub mod error;
pub mod meanvalue;
pub mod par;
pub mod primes;
pub mod quad;
pub mod residues;
pub mod summation;

pub use cache::{CacheKey, ConstantCache, ConstantKind};
pub use constants::{
    bh_constant, c_constant, c_over_gamma, gamma_constant, hl_constant, is_reducible,
    ConstantEngine, EulerProductEstimate,
};
pub use counting::{
    count_pairs, li, table_report, theta, CountRecord, PairCounter, RangeTally,
};
pub use error::{Error, Result};
pub use par::Exec;
pub use primes::{
    is_prime, pow_mod, primality, sieve_primes, Primality, PrimeTable, WideInteger,
};
pub use residues::{
    big_n_count, cubic_classify, cubic_class, legendre_symbol, local_data, nu_count,
    three_primes_below, CubicClass, LocalData, OffsetPolynomial, PairFamily,
};
pub use meanvalue::{
    kernel_area, kernel_eval, mean_s, mean_value, residual_r, s_m, s_m_deviation,
    subsequence_mean, CubicKernel, KernelShape, MeanValueReport, SievingKernel, Window,
};
