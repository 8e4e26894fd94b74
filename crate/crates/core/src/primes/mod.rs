//! Prime generation and primality testing.

mod modular;
mod primality;
mod sieve;
mod wide;

pub use modular::{gcd, jacobi, mul_mod, pow_mod, pow_mod_u64};
pub use primality::{is_prime, is_prime_u64, primality, Primality};
pub(crate) use sieve::{isqrt, sieve_window};
pub use sieve::{
    for_each_prime_segment, sieve_primes, simple_sieve, smallest_prime_factors, PrimeTable,
    DEFAULT_SEGMENT_BYTES, MAX_SIEVE_LIMIT,
};
pub use wide::WideInteger;
