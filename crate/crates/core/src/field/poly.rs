//! Dense polynomials over GF(p), little-endian coefficient vectors.
//!
//! Only what the field builder needs: multiplication, remainder, gcd and
//! modular powering, plus the Ben-Or irreducibility test.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    trim(&mut out);
    out
}

fn inv(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Remainder of `a` modulo `m` (leading coefficient of `m` nonzero).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &mc) in m[..=dm].iter().enumerate() {
            let sub = c * mc % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or: a monic `f` of degree `n` is irreducible iff
/// `gcd(x^(p^k) - x, f) = 1` for every `1 <= k <= n/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=n / 2 {
        h = pow_mod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&diff, f, p);
        if degree(&g).unwrap_or(0) > 0 || g.is_empty() {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `f` whose lower coefficients
/// `c_0 + c_1 p + ... + c_{f-1} p^(f-1)` form the smallest integer.
pub(crate) fn smallest_irreducible(p: u64, f: u32) -> Option<Poly> {
    let count = p.checked_pow(f)?;
    (0..count).find_map(|code| {
        let mut poly = digits(code, p, f as usize);
        poly.push(1);
        is_irreducible(&poly, p).then_some(poly)
    })
}

pub(crate) fn digits(mut code: u64, p: u64, len: usize) -> Poly {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}
