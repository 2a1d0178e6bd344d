//! Jacobi sums and the Frobenius eigenvalues of diagonal hypersurfaces.
//!
//! For `gamma = (g_0, ..., g_{r+1})` with nonzero entries summing to zero mod `m`,
//!
//! ```text
//! j(gamma) = sum over v_1 + ... + v_{r+1} = -1, v_i != 0, of chi(v_1)^g_1 ... chi(v_{r+1})^g_{r+1}
//! ```
//!
//! and the middle-degree eigenvalue of `a_0 x_0^m + ... + a_{r+1} x_{r+1}^m = 0`
//! attached to `gamma` is `(-1)^r chibar(a_0)^g_0 ... chibar(a_{r+1})^g_{r+1} j(gamma)`.

use rayon::prelude::*;

use crate::budget::{saturating_pow, Budget};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};

/// An element of `D_{m,r}`: `r + 2` nonzero residues mod `m` summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTuple {
    m: u32,
    entries: Vec<u32>,
}

impl ExponentTuple {
    pub fn new(m: u32, entries: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        if entries.len() < 2 {
            return Err(Error::domain("an exponent tuple has at least two entries"));
        }
        if let Some(bad) = entries.iter().find(|&&g| g == 0 || g >= m) {
            return Err(Error::domain(format!(
                "entry {bad} is not a nonzero residue mod {m}"
            )));
        }
        let sum: u64 = entries.iter().map(|&g| g as u64).sum();
        if !sum.is_multiple_of(m as u64) {
            return Err(Error::domain(format!(
                "entries of {entries:?} do not sum to 0 mod {m}"
            )));
        }
        Ok(ExponentTuple { m, entries })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Dimension `r` of the hypersurface this tuple indexes.
    pub fn r(&self) -> u32 {
        self.entries.len() as u32 - 2
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `t * gamma`, entrywise mod `m`; `t` must be a unit.
    pub fn scale(&self, t: u64) -> Result<Self> {
        let m = self.m as u64;
        if crate::arith::gcd(t % m, m) != 1 {
            return Err(Error::NotCoprime { a: t, b: m });
        }
        Ok(ExponentTuple {
            m: self.m,
            entries: self
                .entries
                .iter()
                .map(|&g| ((g as u64 * t) % m) as u32)
                .collect(),
        })
    }

    /// `-gamma`.
    pub fn neg(&self) -> Self {
        ExponentTuple {
            m: self.m,
            entries: self.entries.iter().map(|&g| self.m - g).collect(),
        }
    }
}

impl serde::Serialize for ExponentTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl std::fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Diagonal coefficients `a_0, ..., a_{r+1}`, all nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficients(Vec<Elem>);

impl Coefficients {
    pub fn new(table: &FieldTable, entries: Vec<Elem>) -> Result<Self> {
        if let Some(&bad) = entries
            .iter()
            .find(|&&a| a == 0 || !table.contains(a as u64))
        {
            return Err(Error::domain(format!(
                "coefficient {bad} is not a nonzero element of GF({})",
                table.q()
            )));
        }
        Ok(Coefficients(entries))
    }

    /// The Fermat coefficients `(1, ..., 1)` for dimension `r`.
    pub fn ones(r: u32) -> Self {
        Coefficients(vec![1; r as usize + 2])
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn r(&self) -> Option<u32> {
        self.0.len().checked_sub(2).map(|r| r as u32)
    }

    pub fn is_fermat(&self) -> bool {
        self.0.iter().all(|&a| a == 1)
    }
}

/// Lexicographic stream over `D_{m,r}`.
#[derive(Debug, Clone)]
pub struct ExponentTuples {
    m: u32,
    prefix: Vec<u32>,
    done: bool,
}

impl Iterator for ExponentTuples {
    type Item = ExponentTuple;

    fn next(&mut self) -> Option<ExponentTuple> {
        let m = self.m;
        while !self.done {
            let sum: u64 = self.prefix.iter().map(|&g| g as u64).sum();
            let last = ((m as u64 - sum % m as u64) % m as u64) as u32;
            let current = self.prefix.clone();
            // advance the odometer (last position fastest)
            let mut i = self.prefix.len();
            loop {
                if i == 0 {
                    self.done = true;
                    break;
                }
                i -= 1;
                if self.prefix[i] + 1 < m {
                    self.prefix[i] += 1;
                    break;
                }
                self.prefix[i] = 1;
            }
            if last != 0 {
                let mut entries = current;
                entries.push(last);
                return Some(ExponentTuple { m, entries });
            }
        }
        None
    }
}

/// `D_{m,r}` in lexicographic order, refusing enumerations beyond the budget.
pub fn exponent_tuples(m: u32, r: u32, budget: &Budget) -> Result<ExponentTuples> {
    if m == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    budget.check_enumeration(
        "exponent tuples",
        saturating_pow(m.saturating_sub(1) as u64, r + 1),
    )?;
    Ok(ExponentTuples {
        m,
        prefix: vec![1; r as usize + 1],
        done: m < 2,
    })
}

/// `#D_{m,r}` computed by the recurrence on the number of admissible prefixes.
pub fn exponent_tuple_count(m: u32, r: u32) -> u128 {
    if m < 2 {
        return 0;
    }
    // count[s] = number of prefixes with sum = s mod m
    let mut count = vec![0u128; m as usize];
    count[0] = 1;
    for _ in 0..r + 1 {
        let mut next = vec![0u128; m as usize];
        for (s, &c) in count.iter().enumerate() {
            for g in 1..m as usize {
                next[(s + g) % m as usize] += c;
            }
        }
        count = next;
    }
    // last entry -(sum) must be nonzero
    count.iter().skip(1).sum()
}

fn check_tuple(table: &FieldTable, gamma: &ExponentTuple) -> Result<()> {
    table.check_character_order(gamma.m)
}

/// Exponent of `chi(-1)`.
fn neg_one_exponent(table: &FieldTable, m: u32) -> u64 {
    table.chi(m, table.neg_one()) as u64
}

/// `sum over v_1 + ... + v_n = -1 (v_i != 0)` of `prod chi(v_i)^exps[i]`, by enumeration.
fn direct_sum(table: &FieldTable, m: u32, exps: &[u32], budget: &Budget) -> Result<CycInt> {
    let n = exps.len();
    budget.check_enumeration("jacobi sum", saturating_pow(table.q() - 1, n as u32 - 1))?;
    let mut counts = vec![0i64; m as usize];
    let target = table.neg_one();
    direct_rec(table, m as u64, exps, 0, 0, 0, target, &mut counts);
    Ok(CycInt::from_exponent_counts(m, &counts))
}

#[allow(clippy::too_many_arguments)]
fn direct_rec(
    table: &FieldTable,
    m: u64,
    exps: &[u32],
    idx: usize,
    partial: Elem,
    exponent: u64,
    target: Elem,
    counts: &mut [i64],
) {
    let g = exps[idx] as u64;
    if idx + 1 == exps.len() {
        let v = table.sub(target, partial);
        if v != 0 {
            counts[((exponent + g * table.chi(m as u32, v) as u64) % m) as usize] += 1;
        }
        return;
    }
    for v in table.nonzero() {
        let e = (exponent + g * table.chi(m as u32, v) as u64) % m;
        direct_rec(table, m, exps, idx + 1, table.add(partial, v), e, target, counts);
    }
}

/// `j(gamma)` by direct summation over all admissible `(v_1, ..., v_{r+1})`.
pub fn jacobi_direct(table: &FieldTable, gamma: &ExponentTuple, budget: &Budget) -> Result<CycInt> {
    check_tuple(table, gamma)?;
    direct_sum(table, gamma.m, &gamma.entries[1..], budget)
}

/// `j(gamma)` through [`JacobiSums`]. For `r = 1` this is [`jacobi_direct`].
pub fn jacobi_fast(table: &FieldTable, gamma: &ExponentTuple, budget: &Budget) -> Result<CycInt> {
    check_tuple(table, gamma)?;
    if gamma.r() <= 1 {
        return jacobi_direct(table, gamma, budget);
    }
    JacobiSums::new(table, gamma.m)?.jacobi(gamma, budget)
}

/// Jacobi sums for one `(field, m)`, sharing the cyclotomic numbers
/// `E[a][b] = #{ v : v != 0, -1 - v != 0, log v = a, log(-1 - v) = b (mod m) }`.
///
/// Two-variable sums come from `E` in `O(m^2)`. Longer sums use
///
/// ```text
/// j(g_1..g_n) = chi(-1)^s * j(g_1..g_{n-1}) * j(s, g_n),   s = g_1 + ... + g_{n-1} != 0
/// ```
///
/// and fall back to direct summation for a prefix whose exponent sum vanishes.
#[derive(Debug, Clone)]
pub struct JacobiSums<'a> {
    table: &'a FieldTable,
    m: u32,
    cyclotomic_numbers: Vec<u64>,
    neg_one: u64,
}

impl<'a> JacobiSums<'a> {
    pub fn new(table: &'a FieldTable, m: u32) -> Result<Self> {
        table.check_character_order(m)?;
        let mu = m as usize;
        let mut e = vec![0u64; mu * mu];
        let neg_one = table.neg_one();
        for v in table.nonzero() {
            let w = table.sub(neg_one, v);
            if w != 0 {
                e[table.chi(m, v) as usize * mu + table.chi(m, w) as usize] += 1;
            }
        }
        Ok(JacobiSums {
            table,
            m,
            cyclotomic_numbers: e,
            neg_one: neg_one_exponent(table, m),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn table(&self) -> &FieldTable {
        self.table
    }

    /// `sum_{v + w = -1} chi^a(v) chi^b(w)`.
    pub fn pair_sum(&self, a: u32, b: u32) -> CycInt {
        let mu = self.m as usize;
        let mut counts = vec![0i64; mu];
        for x in 0..mu {
            for y in 0..mu {
                let c = self.cyclotomic_numbers[x * mu + y];
                if c != 0 {
                    counts[(a as usize * x + b as usize * y) % mu] += c as i64;
                }
            }
        }
        CycInt::from_exponent_counts(self.m, &counts)
    }

    pub fn jacobi(&self, gamma: &ExponentTuple, budget: &Budget) -> Result<CycInt> {
        if gamma.m != self.m {
            return Err(Error::domain(format!(
                "tuple modulus {} differs from {}",
                gamma.m, self.m
            )));
        }
        let exps = &gamma.entries[1..];
        let m = self.m as u64;
        let mut acc = CycInt::root(self.m, ((exps[0] as u64 * self.neg_one) % m) as i64);
        let mut sigma = exps[0] as u64 % m;
        for k in 1..exps.len() {
            if sigma == 0 {
                acc = direct_sum(self.table, self.m, &exps[..=k], budget)?;
            } else {
                let sign = CycInt::root(self.m, ((sigma * self.neg_one) % m) as i64);
                acc = &(&sign * &acc) * &self.pair_sum(sigma as u32, exps[k]);
            }
            sigma = (sigma + exps[k] as u64) % m;
        }
        Ok(acc)
    }

    /// `(-1)^r chibar(a_0)^g_0 ... chibar(a_{r+1})^g_{r+1} j(gamma)`.
    pub fn weil_number(
        &self,
        gamma: &ExponentTuple,
        coeffs: &Coefficients,
        budget: &Budget,
    ) -> Result<CycInt> {
        let j = self.jacobi(gamma, budget)?;
        twist(self.table, gamma, coeffs, j)
    }
}

fn twist(
    table: &FieldTable,
    gamma: &ExponentTuple,
    coeffs: &Coefficients,
    j: CycInt,
) -> Result<CycInt> {
    if coeffs.0.len() != gamma.entries.len() {
        return Err(Error::domain(format!(
            "{} coefficients for a tuple of length {}",
            coeffs.0.len(),
            gamma.entries.len()
        )));
    }
    let m = gamma.m as u64;
    let mut exponent = 0u64;
    for (&g, &a) in gamma.entries.iter().zip(&coeffs.0) {
        exponent += g as u64 * table.chi(gamma.m, a) as u64;
    }
    // chibar = chi^{-1}
    let rotation = CycInt::root(gamma.m, -((exponent % m) as i64));
    let value = &rotation * &j;
    Ok(if gamma.r() % 2 == 1 { -value } else { value })
}

/// Weil number of weight `r` attached to `gamma` for the coefficients `coeffs`.
pub fn weil_number(
    table: &FieldTable,
    gamma: &ExponentTuple,
    coeffs: &Coefficients,
    budget: &Budget,
) -> Result<CycInt> {
    check_tuple(table, gamma)?;
    Coefficients::new(table, coeffs.0.clone())?;
    let j = jacobi_fast(table, gamma, budget)?;
    twist(table, gamma, coeffs, j)
}

/// All middle-degree Weil numbers, in the lexicographic order of `D_{m,r}`,
/// computed in parallel.
pub fn weil_numbers(
    table: &FieldTable,
    m: u32,
    r: u32,
    coeffs: &Coefficients,
    budget: &Budget,
) -> Result<Vec<(ExponentTuple, CycInt)>> {
    table.check_character_order(m)?;
    Coefficients::new(table, coeffs.0.clone())?;
    if coeffs.r() != Some(r) {
        return Err(Error::domain(format!(
            "expected {} coefficients, got {}",
            r + 2,
            coeffs.0.len()
        )));
    }
    let tuples: Vec<ExponentTuple> = exponent_tuples(m, r, budget)?.collect();
    let engine = JacobiSums::new(table, m)?;
    tuples
        .into_par_iter()
        .map(|gamma| {
            let alpha = engine.weil_number(&gamma, coeffs, budget)?;
            Ok((gamma, alpha))
        })
        .collect()
}
