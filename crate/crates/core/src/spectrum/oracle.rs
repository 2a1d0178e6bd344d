//! Exhaustive point counting, independent of the logarithm tables.
//!
//! Values `a x^m` are computed with polynomial multiplication in the
//! extension field; the only shared code with the spectral side is field
//! addition.

use num_bigint::BigInt;
use num_traits::One;

use super::Factor;
use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};

fn pow_direct(t: &FieldTable, x: Elem, mut e: u64) -> Elem {
    let mut acc = t.one();
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = t.mul_direct(acc, base);
        }
        e >>= 1;
        base = t.mul_direct(base, base);
    }
    acc
}

/// Number of projective points of `sum a_i x_i^m = 0` over the field of `t`,
/// with coefficients already in that field.
pub fn hypersurface_count(t: &FieldTable, m: u32, coeffs: &[Elem], budget: &Budget) -> Result<BigInt> {
    if coeffs.len() < 2 {
        return Err(Error::domain("a hypersurface needs at least two coefficients"));
    }
    let q = t.q();
    let vars = coeffs.len() as u32;
    budget.check_enumeration("brute-force count", saturating_pow(q, vars - 1))?;
    let powers: Vec<Elem> = (0..q as Elem).map(|x| pow_direct(t, x, m as u64)).collect();
    let values: Vec<Vec<Elem>> = coeffs
        .iter()
        .map(|&a| powers.iter().map(|&y| t.mul_direct(a, y)).collect())
        .collect();
    let (last, rest) = values.split_last().expect("at least two variables");
    let mut hist = vec![0u64; q as usize];
    for &v in last {
        hist[v as usize] += 1;
    }
    let mut affine: u64 = 0;
    let mut stack: Vec<(usize, Elem)> = vec![(0, 0)];
    while let Some((idx, partial)) = stack.pop() {
        if idx == rest.len() {
            affine += hist[t.neg(partial) as usize];
            continue;
        }
        for &v in &rest[idx] {
            stack.push((idx + 1, t.add(partial, v)));
        }
    }
    // remove the origin and divide out scalars
    Ok(BigInt::from((affine - 1) / (q - 1)))
}

/// Points of the product of `factors` over `F_{q^n}`, `q` the size of `t`,
/// by exhaustive enumeration of every factor over the degree-`n` extension.
pub fn brute_force_count(factors: &[Factor], t: &FieldTable, n: u32, budget: &Budget) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("extension degree must be at least 1"));
    }
    if factors.is_empty() {
        return Ok(BigInt::one());
    }
    let spec = t.spec();
    let f = spec.f.checked_mul(n).ok_or_else(|| Error::domain("extension degree overflow"))?;
    let ext;
    let (big, image): (&FieldTable, Vec<Elem>) = if n == 1 {
        (t, (0..t.q() as Elem).collect())
    } else {
        ext = FieldTable::new(spec.p, f, budget)?;
        let image = ext.embedding_from(t)?;
        (&ext, image)
    };
    let mut total = BigInt::one();
    for factor in factors {
        let coeffs: Vec<Elem> = factor
            .coeffs
            .as_slice()
            .iter()
            .map(|&a| {
                image
                    .get(a as usize)
                    .copied()
                    .ok_or_else(|| Error::domain(format!("coefficient {a} outside GF({})", t.q())))
            })
            .collect::<Result<_>>()?;
        total *= hypersurface_count(big, factor.m, &coeffs, budget)?;
    }
    Ok(total)
}
