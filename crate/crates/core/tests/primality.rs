use primepair::primes::simple_sieve;
use primepair::{is_prime, primality, sieve_primes, WideInteger};

fn trial_division(n: u64, primes: &[u64]) -> bool {
    if n < 2 {
        return false;
    }
    for &p in primes {
        if p * p > n {
            return true;
        }
        if n % p == 0 {
            return n == p;
        }
    }
    panic!("divisor table too short for {n}");
}

#[test]
fn agrees_with_sieve_below_a_million() {
    let table = sieve_primes(1_000_000).unwrap();
    for n in 0..1_000_000u64 {
        assert_eq!(is_prime(n), table.contains(n), "{n}");
    }
}

#[test]
fn pair_scale_values_against_trial_division() {
    // p^2 + 2r for p near 10^8 lands just below 10^16
    let divisors = simple_sieve(100_100_000);
    let base = 9_999_999_000_000_000u64;
    let mut primes_seen = 0;
    for n in base..base + 400 {
        let want = trial_division(n, &divisors);
        let got = primality(n);
        assert_eq!(got.is_prime, want, "{n}");
        assert!(got.deterministic);
        primes_seen += want as u32;
    }
    assert!(primes_seen > 0);
}

#[test]
fn pair_members_of_large_primes() {
    let divisors = simple_sieve(100_100_000);
    for p in [99_999_989u64, 99_999_971, 99_999_959, 99_999_941] {
        for two_r in [-2i64, 2, -30, 12] {
            let m = WideInteger::pair_member(p, 2, two_r).unwrap();
            let m64 = m.to_u64().unwrap();
            assert_eq!(is_prime(m), trial_division(m64, &divisors), "{p}^2 + {two_r}");
        }
    }
}

#[test]
fn above_two_to_the_64() {
    let m89 = (1i128 << 89) - 1;
    let r = primality(m89);
    assert!(r.is_prime && !r.deterministic);
    // 2^67 - 1 = 193707721 * 761838257287
    let r = primality((1i128 << 67) - 1);
    assert!(!r.is_prime && !r.deterministic);
    assert!(!is_prime(m89 * 3));
}
