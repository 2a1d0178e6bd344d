//! Cyclotomic polynomials, cached per level.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith;

type PhiCache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Phi_m`, little-endian, monic of degree `phi(m)`.
///
/// Computed by exact division of `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    assert!(m > 0, "cyclotomic level must be positive");
    if let Some(hit) = cache().read().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let poly = Arc::new(compute(m));
    cache()
        .write()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn compute(m: u32) -> Vec<i64> {
    let mut acc = vec![0i64; m as usize + 1];
    acc[0] = -1;
    acc[m as usize] = 1;
    for d in arith::divisors(m as u64) {
        let d = d as u32;
        if d == m {
            continue;
        }
        acc = exact_div_monic(&acc, &cyclotomic_poly(d));
    }
    acc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(c.checked_mul(b).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}
