//! Small machine-integer number theory used throughout the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in prime_factors(n) {
        result = result / p * (p - 1);
    }
    result
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Order of `a` in `(Z/m)^×`, found by direct powering. `None` when `gcd(a, m) != 1`.
///
/// For `m <= 2` the unit group is trivial and the order is 1.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m <= 2 {
        return if m == 2 && a.is_multiple_of(2) { None } else { Some(1) };
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let a = a % m;
    let mut x = a;
    let mut k = 1u64;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Units of `Z/m` in increasing order; `[1]` for `m <= 2`.
pub fn units(m: u64) -> Vec<u64> {
    if m <= 2 {
        return vec![1];
    }
    (1..m).filter(|&t| gcd(t, m) == 1).collect()
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `Some((p, f))` when `q = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut f = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        f += 1;
    }
    Some((p, f))
}

/// Smallest prime power `q` with `m | q - 1`.
pub fn smallest_field_for(m: u32) -> (u64, u32) {
    (2u64..)
        .filter(|q| (q - 1) % m as u64 == 0)
        .find_map(prime_power)
        .expect("Dirichlet")
}
