//! Frobenius spectra of diagonal hypersurfaces and their products.
//!
//! A [`Spectrum`] stores, for every degree `i` in `0..=2 dim`, the multiset of
//! eigenvalues of geometric Frobenius on `H^i`. Point counts come from the
//! Lefschetz trace formula, zeta functions from the characteristic polynomials.

mod oracle;
mod zeta;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::budget::Budget;
use crate::cyclotomic::{common_level, CycInt};
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::weil::{weil_numbers, Coefficients};

pub use oracle::{brute_force_count, hypersurface_count};
pub use zeta::ZetaFunction;

/// One Frobenius eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenvalue {
    /// Exactly `q^k`.
    QPow(u32),
    /// An algebraic integer of `Z[zeta_level]`.
    Cyc(CycInt),
}

impl Eigenvalue {
    /// Canonical form of `value` as an eigenvalue on `H^degree`: rational
    /// values equal to `q^(degree/2)` become [`Eigenvalue::QPow`].
    pub fn normalize(value: CycInt, q: u64, degree: u32) -> Self {
        if degree.is_multiple_of(2) {
            if let Some(c) = value.as_rational_integer() {
                if c == Pow::pow(BigInt::from(q), degree / 2) {
                    return Eigenvalue::QPow(degree / 2);
                }
            }
        }
        Eigenvalue::Cyc(value)
    }

    pub fn level(&self) -> u32 {
        match self {
            Eigenvalue::QPow(_) => 1,
            Eigenvalue::Cyc(c) => c.level(),
        }
    }

    /// The value as a cyclotomic integer at `level` (a multiple of [`Self::level`]).
    pub fn to_cyc(&self, q: u64, level: u32) -> Result<CycInt> {
        match self {
            Eigenvalue::QPow(k) => Ok(CycInt::from_int(level, Pow::pow(BigInt::from(q), *k))),
            Eigenvalue::Cyc(c) => c.lift(level),
        }
    }

    /// `Some(k)` when the value is exactly `q^k`.
    pub fn as_q_power(&self, q: u64) -> Option<u32> {
        match self {
            Eigenvalue::QPow(k) => Some(*k),
            Eigenvalue::Cyc(c) => {
                let v = c.as_rational_integer()?;
                let q = BigInt::from(q);
                let mut acc = BigInt::one();
                let mut k = 0;
                while acc < v {
                    acc *= &q;
                    k += 1;
                }
                (acc == v).then_some(k)
            }
        }
    }

    /// `self * other` as an eigenvalue on `H^degree`.
    pub fn mul(&self, other: &Eigenvalue, q: u64, degree: u32) -> Result<Eigenvalue> {
        Ok(match (self, other) {
            (Eigenvalue::QPow(a), Eigenvalue::QPow(b)) => Eigenvalue::QPow(a + b),
            (Eigenvalue::QPow(k), Eigenvalue::Cyc(c)) | (Eigenvalue::Cyc(c), Eigenvalue::QPow(k)) => {
                Eigenvalue::normalize(c.scale(&Pow::pow(BigInt::from(q), *k)), q, degree)
            }
            (Eigenvalue::Cyc(a), Eigenvalue::Cyc(b)) => {
                let level = common_level([a.level(), b.level()]);
                Eigenvalue::normalize(&a.lift(level)? * &b.lift(level)?, q, degree)
            }
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Eigenvalue::QPow(k) => json!({ "qpow": k }),
            Eigenvalue::Cyc(c) => Value::String(c.render()),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Ok(Eigenvalue::Cyc(CycInt::parse(s)?)),
            Value::Object(o) => o
                .get("qpow")
                .and_then(Value::as_u64)
                .map(|k| Eigenvalue::QPow(k as u32))
                .ok_or_else(|| Error::Parse(format!("bad eigenvalue {v}"))),
            _ => Err(Error::Parse(format!("bad eigenvalue {v}"))),
        }
    }
}

impl std::fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Eigenvalue::QPow(0) => f.write_str("1"),
            Eigenvalue::QPow(1) => f.write_str("q"),
            Eigenvalue::QPow(k) => write!(f, "q^{k}"),
            Eigenvalue::Cyc(c) => write!(f, "{c}"),
        }
    }
}

/// One factor `a_0 x_0^m + ... + a_{r+1} x_{r+1}^m = 0` of a product variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    pub m: u32,
    pub coeffs: Coefficients,
}

impl Factor {
    pub fn new(m: u32, coeffs: Coefficients) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("degree must be positive"));
        }
        if coeffs.r().is_none() {
            return Err(Error::domain("a hypersurface needs at least two coefficients"));
        }
        Ok(Factor { m, coeffs })
    }

    /// The Fermat variety `V_m^r`.
    pub fn fermat(m: u32, r: u32) -> Self {
        Factor {
            m,
            coeffs: Coefficients::ones(r),
        }
    }

    pub fn r(&self) -> u32 {
        self.coeffs.r().expect("validated on construction")
    }
}

/// Per-degree eigenvalue multisets of a smooth projective variety over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    dim: u32,
    q: u64,
    degrees: Vec<Vec<Eigenvalue>>,
}

impl Spectrum {
    /// Builds a spectrum, sorting each degree into canonical order.
    pub fn new(dim: u32, q: u64, mut degrees: Vec<Vec<Eigenvalue>>) -> Result<Self> {
        if degrees.len() != 2 * dim as usize + 1 {
            return Err(Error::domain(format!(
                "a variety of dimension {dim} has {} cohomology degrees, got {}",
                2 * dim + 1,
                degrees.len()
            )));
        }
        for d in &mut degrees {
            d.sort();
        }
        Ok(Spectrum { dim, q, degrees })
    }

    /// `Spec F_q`.
    pub fn point(q: u64) -> Self {
        Spectrum {
            dim: 0,
            q,
            degrees: vec![vec![Eigenvalue::QPow(0)]],
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Eigenvalues on `H^i`; empty outside `0..=2 dim`.
    pub fn h(&self, i: u32) -> &[Eigenvalue] {
        self.degrees.get(i as usize).map_or(&[], Vec::as_slice)
    }

    pub fn betti(&self, i: u32) -> usize {
        self.h(i).len()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (u32, &[Eigenvalue])> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, d)| (i as u32, d.as_slice()))
    }

    /// Least common level of the cyclotomic entries.
    pub fn level(&self) -> u32 {
        common_level(self.degrees.iter().flatten().map(Eigenvalue::level))
    }

    /// Checks weights, Poincare symmetry and the placement of powers of `q`.
    pub fn validate(&self) -> Result<()> {
        let top = 2 * self.dim;
        for i in 0..=top {
            if self.betti(i) != self.betti(top - i) {
                return Err(Error::Internal(format!(
                    "Betti numbers b{i} = {} and b{} = {} differ",
                    self.betti(i),
                    top - i,
                    self.betti(top - i)
                )));
            }
        }
        let q = BigInt::from(self.q);
        for (i, entries) in self.degrees() {
            for e in entries {
                match e {
                    Eigenvalue::QPow(k) if 2 * k != i => {
                        return Err(Error::Internal(format!("q^{k} placed in degree {i}")))
                    }
                    Eigenvalue::Cyc(c) => {
                        let expected = CycInt::from_int(c.level(), Pow::pow(&q, i));
                        if c.norm_sq() != expected {
                            return Err(Error::Internal(format!(
                                "{c} in degree {i} is not a Weil number of weight {i}"
                            )));
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Lefschetz trace `sum_i (-1)^i sum_{alpha in H^i} alpha^n`: the number of
    /// points over `F_{q^n}`.
    pub fn point_count(&self, n: u32, budget: &Budget) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::domain("extension degree must be at least 1"));
        }
        budget.check("power", n as u128, budget.max_power as u64)?;
        let level = self.level();
        let q = BigInt::from(self.q);
        let mut rational = BigInt::zero();
        let mut total = CycInt::zero(level);
        for (i, entries) in self.degrees() {
            let (qpows, cycs): (Vec<_>, Vec<_>) =
                entries.iter().partition(|e| matches!(e, Eigenvalue::QPow(_)));
            let mut degree_sum = BigInt::zero();
            for e in qpows {
                if let Eigenvalue::QPow(k) = e {
                    degree_sum += Pow::pow(&q, k * n);
                }
            }
            let cyc_sum = cycs
                .par_iter()
                .map(|e| match e {
                    Eigenvalue::Cyc(c) => c.power(n as u64).lift(level),
                    Eigenvalue::QPow(_) => unreachable!(),
                })
                .try_reduce(|| CycInt::zero(level), |a, b| Ok(&a + &b))?;
            if i % 2 == 0 {
                rational += degree_sum;
                total = &total + &cyc_sum;
            } else {
                rational -= degree_sum;
                total = &total - &cyc_sum;
            }
        }
        let trace = total.as_rational_integer().ok_or_else(|| {
            Error::Internal(format!("Lefschetz trace {total} is not a rational integer"))
        })?;
        Ok(rational + trace)
    }

    /// Order of the zeta function at `s = a/2`, counted as
    /// `rho = sum_i (-1)^(i+1) mult(q^(a/2) in H^i)`. Zero for odd `a`.
    pub fn zeta_order(&self, a: u32) -> i64 {
        if a % 2 == 1 {
            return 0;
        }
        let mult = self
            .h(a)
            .iter()
            .filter(|e| e.as_q_power(self.q) == Some(a / 2))
            .count() as i64;
        -mult
    }

    /// `S(2) = sum_{a > 4} rho_{a/2}`.
    pub fn s2(&self) -> i64 {
        (5..=2 * self.dim).map(|a| self.zeta_order(a)).sum()
    }

    pub fn zeta(&self) -> Result<ZetaFunction> {
        ZetaFunction::from_spectrum(self)
    }

    pub fn to_json(&self) -> Value {
        let mut h = Map::new();
        for (i, entries) in self.degrees() {
            h.insert(
                i.to_string(),
                Value::Array(entries.iter().map(Eigenvalue::to_json).collect()),
            );
        }
        json!({ "q": self.q, "dim": self.dim, "H": h })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("spectrum JSON: {what}"));
        let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("missing q"))?;
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as u32;
        let h = v.get("H").and_then(Value::as_object).ok_or_else(|| bad("missing H"))?;
        let mut degrees = vec![Vec::new(); 2 * dim as usize + 1];
        for (k, entries) in h {
            let i: usize = k.parse().map_err(|_| bad("degree key"))?;
            let slot = degrees.get_mut(i).ok_or_else(|| bad("degree out of range"))?;
            for e in entries.as_array().ok_or_else(|| bad("degree list"))? {
                slot.push(Eigenvalue::from_json(e)?);
            }
        }
        Spectrum::new(dim, q, degrees)
    }
}

/// Spectrum of `a_0 x_0^m + ... + a_{r+1} x_{r+1}^m = 0` over the field of `table`.
///
/// `H^i` is empty for odd `i != r` and `{q^(i/2)}` for even `i != r`; `H^r`
/// holds the Weil numbers of all `gamma` in `D_{m,r}`, plus `q^(r/2)` when `r` is even.
pub fn hypersurface_spectrum(
    m: u32,
    r: u32,
    coeffs: &Coefficients,
    table: &FieldTable,
    budget: &Budget,
) -> Result<Spectrum> {
    let q = table.q();
    let middle = weil_numbers(table, m, r, coeffs, budget)?;
    let mut degrees = vec![Vec::new(); 2 * r as usize + 1];
    for (i, slot) in degrees.iter_mut().enumerate() {
        if i % 2 == 0 && i as u32 != r {
            slot.push(Eigenvalue::QPow(i as u32 / 2));
        }
    }
    let h_r = &mut degrees[r as usize];
    if r.is_multiple_of(2) {
        h_r.push(Eigenvalue::QPow(r / 2));
    }
    h_r.extend(
        middle
            .into_iter()
            .map(|(_, alpha)| Eigenvalue::normalize(alpha, q, r)),
    );
    Spectrum::new(r, q, degrees)
}

/// Spectrum of one [`Factor`].
pub fn factor_spectrum(factor: &Factor, table: &FieldTable, budget: &Budget) -> Result<Spectrum> {
    Coefficients::new(table, factor.coeffs.as_slice().to_vec())?;
    hypersurface_spectrum(factor.m, factor.r(), &factor.coeffs, table, budget)
}

/// Kunneth product: `H^n = union over i_1 + ... + i_d = n` of entrywise products.
pub fn product_spectrum(specs: &[Spectrum]) -> Result<Spectrum> {
    let (first, rest) = specs
        .split_first()
        .ok_or_else(|| Error::domain("product of an empty list of spectra"))?;
    let mut acc = first.clone();
    for s in rest {
        acc = product_pair(&acc, s)?;
    }
    Ok(acc)
}

fn product_pair(a: &Spectrum, b: &Spectrum) -> Result<Spectrum> {
    if a.q != b.q {
        return Err(Error::domain(format!(
            "cannot multiply spectra over F_{} and F_{}",
            a.q, b.q
        )));
    }
    let q = a.q;
    let dim = a.dim + b.dim;
    let mut jobs = Vec::new();
    for (i, ea) in a.degrees() {
        for (j, eb) in b.degrees() {
            for x in ea {
                jobs.push((i + j, x, eb));
            }
        }
    }
    let pieces: Vec<(u32, Vec<Eigenvalue>)> = jobs
        .into_par_iter()
        .map(|(n, x, eb)| {
            let row = eb
                .iter()
                .map(|y| x.mul(y, q, n))
                .collect::<Result<Vec<_>>>()?;
            Ok((n, row))
        })
        .collect::<Result<_>>()?;
    let mut degrees = vec![Vec::new(); 2 * dim as usize + 1];
    for (n, row) in pieces {
        degrees[n as usize].extend(row);
    }
    Spectrum::new(dim, q, degrees)
}

/// Spectrum of the product of the given factors over the field of `table`.
pub fn variety_spectrum(factors: &[Factor], table: &FieldTable, budget: &Budget) -> Result<Spectrum> {
    if factors.is_empty() {
        return Ok(Spectrum::point(table.q()));
    }
    let specs = factors
        .iter()
        .map(|f| factor_spectrum(f, table, budget))
        .collect::<Result<Vec<_>>>()?;
    product_spectrum(&specs)
}

/// Degree-indexed integer table as a `{"i": value}` JSON map.
pub fn table_json<T: Into<Value> + Clone>(rows: &BTreeMap<u32, T>) -> Value {
    Value::Object(
        rows.iter()
            .map(|(i, v)| (i.to_string(), v.clone().into()))
            .collect(),
    )
}

/// Exact integer as a JSON number.
pub fn bigint_json(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse().expect("integers are valid JSON numbers"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, f: u32) -> FieldTable {
        FieldTable::new(p, f, &Budget::default()).unwrap()
    }

    fn fermat(m: u32, r: u32, t: &FieldTable) -> Spectrum {
        hypersurface_spectrum(m, r, &Coefficients::ones(r), t, &Budget::default()).unwrap()
    }

    #[test]
    fn conic() {
        let t = field(5, 1);
        let s = fermat(2, 1, &t);
        assert_eq!(s.h(0), &[Eigenvalue::QPow(0)]);
        assert!(s.h(1).is_empty());
        assert_eq!(s.h(2), &[Eigenvalue::QPow(1)]);
        for n in 1..4 {
            assert_eq!(s.point_count(n, &Budget::default()).unwrap(), BigInt::from(5u64.pow(n) + 1));
        }
        assert_eq!(s.zeta_order(2), -1);
    }

    #[test]
    fn fermat_cubic_over_f7() {
        let t = field(7, 1);
        let s = fermat(3, 1, &t);
        s.validate().unwrap();
        assert_eq!(s.betti_numbers(), vec![1, 2, 1]);
        let a = CycInt::parse("2 + 3*z@3").unwrap();
        let mut expected = vec![Eigenvalue::Cyc(-&a), Eigenvalue::Cyc(-&a.conj())];
        expected.sort();
        assert_eq!(s.h(1), expected.as_slice());
        assert_eq!(s.point_count(1, &Budget::default()).unwrap(), BigInt::from(9));
    }

    #[test]
    fn quadric_surface_over_f3() {
        let t = field(3, 1);
        let s = fermat(2, 2, &t);
        assert_eq!(s.h(2), &[Eigenvalue::QPow(1), Eigenvalue::QPow(1)]);
        assert_eq!(s.point_count(1, &Budget::default()).unwrap(), BigInt::from(16));
        assert_eq!(s.zeta_order(2), -2);
        assert_eq!(s.zeta_order(3), 0);
    }

    #[test]
    fn products() {
        let t = field(7, 1);
        let conic = fermat(2, 1, &t);
        assert_eq!(product_spectrum(&[conic.clone(), Spectrum::point(7)]).unwrap(), conic);
        let cc = product_spectrum(&[conic.clone(), conic.clone()]).unwrap();
        assert_eq!(cc.h(2), &[Eigenvalue::QPow(1), Eigenvalue::QPow(1)]);
        assert_eq!(cc.h(4), &[Eigenvalue::QPow(2)]);
        let cubic = fermat(3, 1, &t);
        let ee = product_spectrum(&[cubic.clone(), cubic]).unwrap();
        ee.validate().unwrap();
        assert_eq!(ee.betti_numbers(), vec![1, 4, 6, 4, 1]);
        assert_eq!(ee.h(2).iter().filter(|e| **e == Eigenvalue::QPow(1)).count(), 4);
        assert_eq!(ee.point_count(1, &Budget::default()).unwrap(), BigInt::from(81));
    }

    #[test]
    fn twisted_cubic_matches_enumeration() {
        let t = field(7, 1);
        let b = Budget::default();
        for coeffs in [vec![1, 1, 2], vec![3, 1, 1], vec![1, 5, 6], vec![2, 4, 3]] {
            let factor = Factor::new(3, Coefficients::new(&t, coeffs).unwrap()).unwrap();
            let s = factor_spectrum(&factor, &t, &b).unwrap();
            for n in 1..=2 {
                assert_eq!(
                    s.point_count(n, &b).unwrap(),
                    brute_force_count(std::slice::from_ref(&factor), &t, n, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn mismatched_fields() {
        assert!(product_spectrum(&[Spectrum::point(3), Spectrum::point(5)]).is_err());
        assert!(product_spectrum(&[]).is_err());
    }

    #[test]
    fn character_order_refused() {
        let t = field(5, 1);
        assert!(matches!(
            hypersurface_spectrum(3, 1, &Coefficients::ones(1), &t, &Budget::default()),
            Err(Error::CharacterOrder { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = field(7, 1);
        let s = product_spectrum(&[fermat(3, 1, &t), fermat(2, 2, &t)]).unwrap();
        let v = s.to_json();
        assert_eq!(Spectrum::from_json(&v).unwrap(), s);
        assert_eq!(v["H"]["0"], json!([{ "qpow": 0 }]));
    }

    #[test]
    fn q_power_detection() {
        assert_eq!(Eigenvalue::Cyc(CycInt::from_int(3, 49)).as_q_power(7), Some(2));
        assert_eq!(Eigenvalue::Cyc(CycInt::from_int(3, -7)).as_q_power(7), None);
        assert_eq!(Eigenvalue::Cyc(CycInt::from_int(3, 1)).as_q_power(7), Some(0));
        assert_eq!(Eigenvalue::normalize(CycInt::from_int(5, 11), 11, 2), Eigenvalue::QPow(1));
        assert_eq!(
            Eigenvalue::normalize(CycInt::from_int(5, 11), 11, 1),
            Eigenvalue::Cyc(CycInt::from_int(5, 11))
        );
    }
}
