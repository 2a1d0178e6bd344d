//! Zeta functions in factored form `Z(T) = prod_i P_i(T)^((-1)^(i+1))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde_json::{json, Map, Value};

use super::{bigint_json, Eigenvalue, Spectrum};
use crate::arith;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

/// `P_i(T) = prod_{alpha in H^i} (1 - alpha T)` for every degree, with integer
/// coefficients listed from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaFunction {
    q: u64,
    dim: u32,
    polys: Vec<Vec<BigInt>>,
}

impl ZetaFunction {
    pub fn from_spectrum(s: &Spectrum) -> Result<Self> {
        let polys = s
            .degrees()
            .map(|(_, entries)| characteristic_poly(entries, s.q()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZetaFunction {
            q: s.q(),
            dim: s.dim(),
            polys,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `P_i`, coefficients of `T^0, T^1, ...`.
    pub fn p(&self, i: u32) -> &[BigInt] {
        &self.polys[i as usize]
    }

    /// Sign exponent `(-1)^(i+1)` of `P_i` in `Z(T)`.
    pub fn sign(i: u32) -> i32 {
        if i % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Coefficients of the power series `Z(T)` up to `T^terms`, exclusive.
    pub fn series(&self, terms: usize) -> Vec<BigInt> {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (i, p) in self.polys.iter().enumerate() {
            if i % 2 == 1 {
                num = poly_mul(&num, p);
            } else {
                den = poly_mul(&den, p);
            }
        }
        // den(0) = 1, so division is exact over Z
        let mut out = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut c = num.get(k).cloned().unwrap_or_default();
            for j in 1..=k.min(den.len() - 1) {
                c -= &den[j] * &out[k - j];
            }
            out.push(c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut p = Map::new();
        for (i, poly) in self.polys.iter().enumerate() {
            p.insert(i.to_string(), Value::Array(poly.iter().map(bigint_json).collect()));
        }
        json!({ "q": self.q, "dim": self.dim, "P": p })
    }
}

fn render_poly(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let body = match k {
            0 => abs.to_string(),
            1 if abs.is_one() => "T".to_string(),
            1 => format!("{abs}T"),
            _ if abs.is_one() => format!("T^{k}"),
            _ => format!("{abs}T^{k}"),
        };
        out.push_str(&body);
    }
    out
}

impl std::fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let group = |odd: bool| -> Vec<String> {
            self.polys
                .iter()
                .enumerate()
                .filter(|(i, p)| (i % 2 == 1) == odd && p.len() > 1)
                .map(|(_, p)| format!("({})", render_poly(p)))
                .collect()
        };
        let num = group(true);
        let den = group(false);
        let num = if num.is_empty() { "1".to_string() } else { num.concat() };
        if den.is_empty() {
            write!(f, "Z(T) = {num}")
        } else {
            write!(f, "Z(T) = {num} / ({})", den.concat())
        }
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `prod (1 - alpha T)` over a Galois-stable multiset.
///
/// Entries are consumed one Galois orbit at a time: the product over an orbit
/// is the reversed minimal polynomial of its members and has integer
/// coefficients, which keeps the cyclotomic work proportional to the orbit size.
fn characteristic_poly(entries: &[Eigenvalue], q: u64) -> Result<Vec<BigInt>> {
    let mut poly = vec![BigInt::one()];
    let mut pending: BTreeMap<&CycInt, usize> = BTreeMap::new();
    for e in entries {
        match e {
            Eigenvalue::QPow(k) => {
                poly = poly_mul(&poly, &[BigInt::one(), -Pow::pow(BigInt::from(q), *k)]);
            }
            Eigenvalue::Cyc(c) => *pending.entry(c).or_default() += 1,
        }
    }
    let mut owned: BTreeMap<CycInt, usize> =
        pending.into_iter().map(|(c, n)| (c.clone(), n)).collect();
    while let Some(alpha) = owned.keys().next().cloned() {
        let level = alpha.level();
        let mut orbit: Vec<CycInt> = arith::units(level as u64)
            .into_iter()
            .map(|t| alpha.galois(t))
            .collect::<Result<_>>()?;
        orbit.sort();
        orbit.dedup();
        let mut factor = vec![CycInt::one(level)];
        for beta in &orbit {
            match owned.get_mut(beta) {
                Some(n) if *n > 1 => *n -= 1,
                Some(_) => {
                    owned.remove(beta);
                }
                None => {
                    return Err(Error::Internal(format!(
                        "eigenvalue multiset is not Galois stable: {beta} missing"
                    )))
                }
            }
            let mut next = vec![CycInt::zero(level); factor.len() + 1];
            for (k, c) in factor.iter().enumerate() {
                next[k] = &next[k] + c;
                next[k + 1] = &next[k + 1] - &(c * beta);
            }
            factor = next;
        }
        let factor = factor
            .iter()
            .map(|c| {
                c.as_rational_integer().ok_or_else(|| {
                    Error::Internal(format!("non-integral zeta coefficient {c}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        poly = poly_mul(&poly, &factor);
    }
    Ok(poly)
}
