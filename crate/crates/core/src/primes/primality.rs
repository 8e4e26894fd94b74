//! Primality: deterministic Miller–Rabin below 2^64, Baillie–PSW above.

use super::modular::{jacobi, Montgomery};
use super::wide::WideInteger;

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primality {
    pub is_prime: bool,
    /// `false` when the answer came from Baillie–PSW (inputs `>= 2^64`),
    /// which has no known counterexample but no proof either.
    pub deterministic: bool,
}

/// Witness set that is exact for every `n < 2^64`.
const WITNESSES_64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn is_prime(n: impl Into<WideInteger>) -> bool {
    primality(n).is_prime
}

pub fn primality(n: impl Into<WideInteger>) -> Primality {
    let v = n.into().get();
    if v < 2 {
        return Primality { is_prime: false, deterministic: true };
    }
    match u64::try_from(v) {
        Ok(small) => Primality { is_prime: is_prime_u64(small), deterministic: true },
        Err(_) => Primality { is_prime: baillie_psw(v as u128), deterministic: false },
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 53 * 53 {
        return true;
    }
    let mont = Montgomery::new(n);
    let d_shift = (n - 1).trailing_zeros();
    let d = (n - 1) >> d_shift;
    let one = mont.one();
    let minus_one = mont.to_mont(n - 1);
    'witness: for &a in &WITNESSES_64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = mont.pow(mont.to_mont(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..d_shift {
            x = mont.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---- 128-bit arithmetic (moduli below 2^127) ----

#[inline]
fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m < 2^127 so a + b cannot overflow
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
fn sub_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    // shift-and-add; only reached for moduli above 2^64
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod_u128(acc, a, m);
        }
        a = add_mod_u128(a, a, m);
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn half_mod(x: u128, m: u128) -> u128 {
    // m odd
    if x & 1 == 0 {
        x / 2
    } else {
        (x + m) / 2
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

fn jacobi_u128(a: i128, n: u128) -> i8 {
    if let Ok(small) = u64::try_from(n) {
        return jacobi(a, small);
    }
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz & 1 == 1 && matches!(n & 7, 3 | 5) {
            sign = -sign;
        }
        if a & 3 == 3 && n & 3 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

fn strong_probable_prime_base2(n: u128) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod_u128(2, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod_u128(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Strong Lucas test with Selfridge parameters (P = 1, Q = (1 - D)/4).
fn strong_lucas(n: u128) -> bool {
    let root = isqrt_u128(n);
    if root * root == n {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        match jacobi_u128(d, n) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q: i128 = (1 - d) / 4;
    let dm = d.rem_euclid(n as i128) as u128;
    let qm = q.rem_euclid(n as i128) as u128;

    let s = (n + 1).trailing_zeros();
    let k = (n + 1) >> s;

    // U_1 = 1, V_1 = P = 1, Q^1
    let mut u = 1u128;
    let mut v = 1u128;
    let mut qk = qm;
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        // doubling
        u = mul_mod_u128(u, v, n);
        v = sub_mod_u128(mul_mod_u128(v, v, n), add_mod_u128(qk, qk, n), n);
        qk = mul_mod_u128(qk, qk, n);
        if (k >> i) & 1 == 1 {
            let nu = half_mod(add_mod_u128(u, v, n), n);
            let nv = half_mod(add_mod_u128(mul_mod_u128(dm, u, n), v, n), n);
            u = nu;
            v = nv;
            qk = mul_mod_u128(qk, qm, n);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = sub_mod_u128(mul_mod_u128(v, v, n), add_mod_u128(qk, qk, n), n);
        qk = mul_mod_u128(qk, qk, n);
        if v == 0 {
            return true;
        }
    }
    false
}

pub(crate) fn baillie_psw(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p as u128 {
            return true;
        }
        if n % p as u128 == 0 {
            return false;
        }
    }
    strong_probable_prime_base2(n) && strong_lucas(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn basic_examples() {
        assert!(is_prime(47i64));
        assert!(!is_prime(9998i64));
        assert!(!is_prime(1i64));
        assert!(!is_prime(0i64));
        assert!(!is_prime(-7i64));
        assert!(is_prime(2i64));
    }

    #[test]
    fn agrees_with_trial_division_below_100k() {
        for n in 0..100_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n={n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // strong pseudoprimes to several small bases
        for n in [2047u64, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
            341550071728321, 3825123056546413051]
        {
            assert!(!is_prime_u64(n), "{n}");
            assert!(!baillie_psw(n as u128), "{n}");
        }
    }

    #[test]
    fn baillie_psw_agrees_with_miller_rabin() {
        for n in 0..50_000u64 {
            assert_eq!(baillie_psw(n as u128), is_prime_u64(n), "n={n}");
        }
        // Carmichael numbers and Lucas pseudoprimes
        for n in [561u64, 1105, 1729, 5459, 5777, 10877, 16109, 18971, 22499] {
            assert!(!baillie_psw(n as u128), "{n}");
        }
        for n in [u64::MAX - 58, (1 << 61) - 1, 1_000_000_007] {
            assert!(baillie_psw(n as u128));
        }
    }

    #[test]
    fn wide_values() {
        let m89 = (1i128 << 89) - 1;
        let m107 = (1i128 << 107) - 1;
        let m127 = i128::MAX;
        for m in [m89, m107, m127] {
            let r = primality(m);
            assert!(r.is_prime);
            assert!(!r.deterministic);
        }
        let composite = ((1i128 << 61) - 1) * ((1i128 << 31) - 1);
        assert!(!is_prime(composite));
        assert!(!is_prime((1i128 << 67) - 1)); // 193707721 * 761838257287
        assert!(!is_prime(m89 * 3));
    }

    #[test]
    fn deterministic_flag_below_2_64() {
        let r = primality(u64::MAX - 58);
        assert!(r.is_prime && r.deterministic);
    }
}
