/// `a * b mod m` through a 128-bit intermediate.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` for an already reduced base.
#[inline]
pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    if m <= u32::MAX as u64 {
        // Products stay below 2^64.
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
    } else {
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, m);
            }
            base = mul_mod(base, base, m);
            exp >>= 1;
        }
    }
    acc
}

/// `a^e mod m` in `[0, m)` for any signed `a`. Returns `1 mod m` when `e = 0`.
///
/// Panics if `m == 0`.
pub fn pow_mod(a: i128, e: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    let base = a.rem_euclid(m as i128) as u64;
    pow_mod_u64(base, e, m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`.
///
/// Panics if `n` is even.
pub fn jacobi(a: i128, n: u64) -> i8 {
    assert!(n & 1 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        // (2/n) = -1 iff n = 3, 5 mod 8
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

/// Montgomery arithmetic for a fixed odd modulus below 2^64.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Montgomery {
    n: u64,
    n_inv: u64, // -n^{-1} mod 2^64
    r2: u64,    // 2^128 mod n
}

impl Montgomery {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!(n & 1 == 1);
        // Newton iteration for n^{-1} mod 2^64.
        let mut inv = n;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r2 = ((u128::MAX % n as u128 + 1) % n as u128) as u64;
        Montgomery {
            n,
            n_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_inv);
        let (sum, carry) = t.overflowing_add(m as u128 * self.n as u128);
        let mut r = (sum >> 64) as u64;
        if carry {
            // true quotient is r + 2^64, always in [n, 2n)
            return r.wrapping_add(self.n.wrapping_neg());
        }
        if r >= self.n {
            r -= self.n;
        }
        r
    }

    #[inline]
    pub(crate) fn to_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128 * self.r2 as u128)
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub(crate) fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_pow(a: u64, e: u64, m: u64) -> u64 {
        let mut acc = 1 % m;
        for _ in 0..e {
            acc = acc * (a % m) % m;
        }
        acc
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(5, 0, 7), 1);
        assert_eq!(pow_mod(5, 0, 1), 0);
        assert_eq!(pow_mod(10, 12, 37), 1);
        assert_eq!(pow_mod(-1, 3, 7), 6);
    }

    #[test]
    fn pow_mod_exhaustive_below_200() {
        for m in 1..200u64 {
            for a in 0..200u64 {
                for e in 0..200u64 {
                    assert_eq!(pow_mod(a as i128, e, m), naive_pow(a, e, m), "{a}^{e} mod {m}");
                }
            }
        }
    }

    #[test]
    fn pow_mod_large_modulus() {
        // 2^64 - 59 is prime, so Fermat holds.
        let p = u64::MAX - 58;
        assert_eq!(pow_mod(3, p - 1, p), 1);
        assert_eq!(pow_mod_u64(u64::MAX, 2, p), mul_mod(58, 58, p));
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            for a in -50i128..50 {
                let e = pow_mod(a, (p - 1) / 2, p);
                let expect = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(jacobi(a, p), expect, "({a}/{p})");
            }
        }
        assert_eq!(jacobi(2, 15), 1);
        assert_eq!(jacobi(7, 15), -1);
        assert_eq!(jacobi(5, 15), 0);
    }

    #[test]
    fn montgomery_matches_mul_mod() {
        for n in [3u64, 101, 1_000_000_007, (1 << 61) - 1, u64::MAX - 58, u64::MAX] {
            let mont = Montgomery::new(n);
            for (a, b) in [(2u64, 3u64), (n - 1, n - 1), (n / 2, n / 3 + 1), (12345, 67890)] {
                let (a, b) = (a % n, b % n);
                let got = mont.mul(mont.to_mont(a), mont.to_mont(b));
                let want = mont.to_mont(mul_mod(a, b, n));
                assert_eq!(got, want, "n={n} a={a} b={b}");
            }
            let base = mont.to_mont(5 % n);
            assert_eq!(mont.pow(base, 1000), mont.to_mont(pow_mod_u64(5, 1000, n)));
        }
    }
}
