//! Integer utilities: primality, factorization backends, modular arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Deterministic Miller–Rabin for u64 (the standard 7-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mod_mul_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul_u64(acc, base, m);
        }
        base = mod_mul_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn mod_inv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Square root mod an odd prime p via Tonelli–Shanks.  Returns a root in
/// 0..p, or None for non-residues.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if mod_pow_u64(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow_u64(a, (p + 1) / 4, p));
    }
    // Tonelli–Shanks
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while mod_pow_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow_u64(z, q, p);
    let mut t = mod_pow_u64(a, q, p);
    let mut r = mod_pow_u64(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mod_mul_u64(tt, tt, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = mod_pow_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul_u64(b, b, p);
        t = mod_mul_u64(t, c, p);
        r = mod_mul_u64(r, b, p);
    }
    Some(r)
}

/// Integer square root of a nonnegative BigInt.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square test for BigInt; returns the root when `n` is a perfect square.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Pollard's rho (Brent variant) for u64; `n` must be composite, > 1, odd.
fn pollard_rho(n: u64, seed: u64) -> u64 {
    let mut c = seed;
    loop {
        let f = |x: u64| (mod_mul_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Full factorization of a positive u64: trial division to 10^6, then
/// Pollard rho on what remains.  Returns (prime, exponent) pairs sorted.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d <= 1_000_000 && d * d <= n {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += inc[i % 8];
        i += 1;
    }
    // What remains is 1, a prime, or a composite with no factor < 10^6.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m, 1);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// Iterator over primes starting from `start` (inclusive).
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    let mut n = start.max(2);
    std::iter::from_fn(move || {
        while !is_prime_u64(n) {
            n += 1;
        }
        let p = n;
        n += 1;
        Some(p)
    })
}

/// v_p(n) and the cofactor n / p^v for a nonzero BigInt.
pub fn split_valuation(n: &BigInt, p: u64) -> (u64, BigInt) {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0u64;
    let mut m = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return (v, m);
        }
    }
}

/// p^k as BigInt.
pub fn big_pow(p: u64, k: u64) -> BigInt {
    BigInt::from(p).pow(k as u32)
}

/// Extended gcd over BigInt: returns (g, x, y) with a x + b y = g ≥ 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), r0 - &q * r1);
        (s0, s1) = (s1.clone(), s0 - &q * s1);
        (t0, t1) = (t1.clone(), t0 - &q * t1);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn factor_mixed() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(36), vec![(2, 2), (3, 2)]);
        assert_eq!(factor_u64(2 * 3 * 1_000_003), vec![(2, 1), (3, 1), (1_000_003, 1)]);
        // beyond trial bound: product of two 7-digit primes
        let a = 10_000_019u64;
        let b = 10_000_079u64;
        assert_eq!(factor_u64(a * b), vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn sqrt_mod() {
        assert_eq!(sqrt_mod_p(2, 7).map(|r| mod_mul_u64(r, r, 7)), Some(2));
        assert_eq!(sqrt_mod_p(3, 7), None);
        let r = sqrt_mod_p(5, 41).unwrap();
        assert_eq!(mod_mul_u64(r, r, 41), 5);
    }
}
