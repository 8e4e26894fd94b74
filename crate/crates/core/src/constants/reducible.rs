//! Reducibility of binomials `x^k + q` over the integers (Capelli).

use crate::residues::OffsetPolynomial;

/// Whether `x^k + q` factors over the integers.
///
/// With `a = -q`, the binomial `x^k - a` is reducible iff `a = b^m` for some
/// prime `m | k`, or `4 | k` and `a = -4 b^4`.
pub fn is_reducible(g: OffsetPolynomial) -> bool {
    let k = g.k();
    if k == 1 {
        return false;
    }
    let a = -(g.q() as i128);
    if prime_divisors(k).into_iter().any(|m| is_perfect_power(a, m)) {
        return true;
    }
    let q = g.q() as i128;
    k % 4 == 0 && q > 0 && q % 4 == 0 && is_perfect_power(q / 4, 4)
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `a = b^m` for some integer `b`.
fn is_perfect_power(a: i128, m: u32) -> bool {
    if a < 0 {
        return m % 2 == 1 && is_perfect_power(-a, m);
    }
    if a <= 1 {
        return true;
    }
    let a = a as u128;
    let mut r = (a as f64).powf(1.0 / m as f64).round() as u128;
    r = r.saturating_sub(1);
    for cand in r..=r + 2 {
        match cand.checked_pow(m) {
            Some(v) if v == a => return true,
            Some(v) if v > a => return false,
            None => return false,
            _ => {}
        }
    }
    false
}
