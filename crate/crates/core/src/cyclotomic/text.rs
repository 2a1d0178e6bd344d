//! `c0 + c1*z + c2*z^2@m` rendering and parsing.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CycInt;
use crate::error::{Error, Result};

pub(super) fn render(a: &CycInt) -> String {
    let mut out = String::new();
    for (j, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        match j {
            0 => out.push_str(&abs.to_string()),
            _ => {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push('z');
                if j > 1 {
                    out.push('^');
                    out.push_str(&j.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push('@');
    out.push_str(&a.level.to_string());
    out
}

pub(super) fn parse(s: &str) -> Result<CycInt> {
    let err = || Error::Parse(format!("malformed cyclotomic integer {s:?}"));
    let (body, level) = s.rsplit_once('@').ok_or_else(err)?;
    let level: u32 = level.trim().parse().map_err(|_| err())?;
    if level == 0 {
        return Err(err());
    }
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut poly: Vec<BigInt> = Vec::new();
    for term in terms {
        let (sign, rest) = match term.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if rest.is_empty() {
            return Err(err());
        }
        let (coef, power) = match rest.find('z') {
            None => (rest.parse::<BigInt>().map_err(|_| err())?, 0usize),
            Some(pos) => {
                let coef = match rest[..pos].strip_suffix('*') {
                    Some(c) => c.parse::<BigInt>().map_err(|_| err())?,
                    None if pos == 0 => BigInt::one(),
                    None => return Err(err()),
                };
                let tail = &rest[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .ok_or_else(err)?
                        .parse::<usize>()
                        .map_err(|_| err())?
                };
                (coef, power)
            }
        };
        if poly.len() <= power {
            poly.resize(power + 1, BigInt::zero());
        }
        poly[power] += coef * sign;
    }
    Ok(CycInt::from_poly(level, poly))
}
