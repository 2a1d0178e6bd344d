//! Tate classes of products of diagonal hypersurfaces.
//!
//! Exact dimensions count eigenvalues equal to `q^i`; stable dimensions count
//! eigenvalues some power of which is a power of `q`. The dimension formulas
//! and the combinatorial criterion for stable middle classes are computed
//! independently of the spectra so the two sides can be compared.

mod hypothesis;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::budget::{saturating_pow, Budget};
use crate::cyclotomic::{common_level, CycInt};
use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::spectrum::{Eigenvalue, Spectrum};
use crate::weil::{exponent_tuples, weil_numbers, Coefficients, ExponentTuple, JacobiSums};

pub use hypothesis::{
    hypothesis_check, CaseOutcome, CaseReport, Case1b, Case2, Case3, Case4, FactorInfo,
    MiddleAssumption, SouleRow,
};

/// Number of `alpha` in `H^{2i}` equal to `q^i`.
pub fn tate_dim_exact(s: &Spectrum, i: u32) -> usize {
    s.h(2 * i)
        .iter()
        .filter(|e| e.as_q_power(s.q()) == Some(i))
        .count()
}

/// Number of `alpha` in `H^{2i}` with `alpha^N = q^{iN}` for some `N`, and the
/// lcm of the least such `N`: the Tate dimension over every extension of
/// degree divisible by it.
pub fn tate_dim_stable(s: &Spectrum, i: u32) -> Result<(usize, u64)> {
    let q = BigInt::from(s.q());
    let witnesses = s
        .h(2 * i)
        .par_iter()
        .map(|e| match e {
            Eigenvalue::QPow(_) => Ok(Some(1)),
            Eigenvalue::Cyc(c) => c.power_rationality(2 * i, &q),
        })
        .collect::<Result<Vec<_>>>()?;
    let hits: Vec<u64> = witnesses.into_iter().flatten().collect();
    let n = hits.iter().fold(1, |acc, &w| arith::lcm(acc, w));
    Ok((hits.len(), n))
}

fn check_formula_shape(ms: &[u32], rs: &[u32], budget: &Budget) -> Result<()> {
    if ms.len() != rs.len() {
        return Err(Error::domain(format!(
            "{} degrees but {} dimensions",
            ms.len(),
            rs.len()
        )));
    }
    budget.check(
        "formula factors",
        ms.len() as u128,
        budget.max_formula_factors as u64,
    )
}

/// Visits every `(i_1, ..., i_d)` with `sum = i` and `0 <= i_j <= min(r_j, i)`.
fn for_each_split(rs: &[u32], i: u32, budget: &Budget, visit: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
    let size = rs
        .iter()
        .fold(1u128, |acc, &r| acc.saturating_mul(r.min(i) as u128 + 1));
    budget.check_enumeration("dimension formula", size)?;
    fn rec(
        rs: &[u32],
        left: u32,
        current: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        let j = current.len();
        if j == rs.len() {
            return if left == 0 { visit(current) } else { Ok(()) };
        }
        let room: u32 = rs[j + 1..].iter().sum();
        for ij in 0..=rs[j].min(left) {
            if left - ij > room {
                continue;
            }
            current.push(ij);
            rec(rs, left - ij, current, visit)?;
            current.pop();
        }
        Ok(())
    }
    rec(rs, i, &mut Vec::with_capacity(rs.len()), visit)
}

/// `#I(i)`: the stable Tate dimension in degree `2i` of a product of
/// odd-dimensional diagonal hypersurfaces under the order hypotheses.
///
/// Even `r_j` are refused unless `allow_even` is set.
pub fn dim_case2(ms: &[u32], rs: &[u32], i: u32, allow_even: bool, budget: &Budget) -> Result<u64> {
    check_formula_shape(ms, rs, budget)?;
    if !allow_even {
        if let Some(r) = rs.iter().find(|&&r| r % 2 == 0) {
            return Err(Error::domain(format!(
                "the odd-dimension formula needs every r_j odd, got {r}"
            )));
        }
    }
    let mut count = 0u64;
    for_each_split(rs, i, budget, &mut |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// `#I'(i) + sum over I''(i) of prod_{2 i_j = r_j} middle_dims[j]`, for
/// products of even-dimensional hypersurfaces. `middle_dims` is keyed by the
/// 0-based factor index.
pub fn dim_case3(
    ms: &[u32],
    rs: &[u32],
    i: u32,
    middle_dims: &BTreeMap<usize, u64>,
    budget: &Budget,
) -> Result<u64> {
    check_formula_shape(ms, rs, budget)?;
    if let Some(r) = rs.iter().find(|&&r| r % 2 == 1) {
        return Err(Error::domain(format!(
            "the even-dimension formula needs every r_j even, got {r}"
        )));
    }
    let mut total = 0u64;
    for_each_split(rs, i, budget, &mut |split| {
        let mut term = 1u64;
        for (j, (&ij, &r)) in split.iter().zip(rs).enumerate() {
            if 2 * ij == r {
                let d = middle_dims.get(&j).ok_or_else(|| {
                    Error::domain(format!("missing middle Tate dimension for factor {j}"))
                })?;
                term *= d;
            }
        }
        total += term;
        Ok(())
    })?;
    Ok(total)
}

/// `1 + #{gamma in D_{m,r} : weil_number(gamma, a) = q^(r/2)}`.
pub fn middle_tate_dim_exact(
    m: u32,
    r: u32,
    coeffs: &Coefficients,
    table: &FieldTable,
    budget: &Budget,
) -> Result<u64> {
    Ok(1 + exact_b(m, r, coeffs, table, budget)?.len() as u64)
}

/// The `gamma` whose Weil number is exactly `q^(r/2)`.
pub fn exact_b(
    m: u32,
    r: u32,
    coeffs: &Coefficients,
    table: &FieldTable,
    budget: &Budget,
) -> Result<Vec<ExponentTuple>> {
    if r % 2 == 1 {
        return Err(Error::domain(format!("middle Tate classes need even r, got {r}")));
    }
    let target: BigInt = Pow::pow(BigInt::from(table.q()), r / 2);
    Ok(weil_numbers(table, m, r, coeffs, budget)?
        .into_iter()
        .filter(|(_, alpha)| alpha.as_rational_integer().as_ref() == Some(&target))
        .map(|(g, _)| g)
        .collect())
}

/// Which indices enter `||gamma||`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormConvention {
    /// `sum_{i=0}^{r+1} <gamma_i/m> - 1`, an integer in `[0, r]`.
    AllIndices,
    /// `sum_{i=1}^{r+1} <gamma_i/m> - 1`, which can be fractional.
    TailIndices,
}

/// `||gamma||` as the fraction `numerator / m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GammaNorm {
    pub numerator: i64,
    pub m: u32,
}

impl GammaNorm {
    pub fn as_integer(&self) -> Option<i64> {
        (self.numerator % self.m as i64 == 0).then(|| self.numerator / self.m as i64)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.m as f64
    }
}

impl std::fmt::Display for GammaNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => {
                let g = arith::gcd(self.numerator.unsigned_abs(), self.m as u64) as i64;
                write!(f, "{}/{}", self.numerator / g, self.m as i64 / g)
            }
        }
    }
}

pub fn gamma_norm(gamma: &ExponentTuple) -> GammaNorm {
    gamma_norm_with(gamma, NormConvention::AllIndices)
}

pub fn gamma_norm_with(gamma: &ExponentTuple, convention: NormConvention) -> GammaNorm {
    let skip = match convention {
        NormConvention::AllIndices => 0,
        NormConvention::TailIndices => 1,
    };
    let sum: i64 = gamma.entries()[skip..].iter().map(|&g| g as i64).sum();
    GammaNorm {
        numerator: sum - gamma.m() as i64,
        m: gamma.m(),
    }
}

/// `H = <p>` inside `(Z/m)^x`, sorted.
pub fn frobenius_subgroup(p: u64, m: u32) -> Result<Vec<u64>> {
    let m64 = m as u64;
    if arith::gcd(p % m64.max(1), m64) != 1 && m > 1 {
        return Err(Error::NotCoprime { a: p, b: m64 });
    }
    if m <= 2 {
        return Ok(vec![1]);
    }
    let mut h = vec![1u64];
    let mut x = p % m64;
    while x != 1 {
        h.push(x);
        x = x * p % m64;
    }
    h.sort_unstable();
    Ok(h)
}

/// `sum_{h in H} ||h t gamma|| = r f / 2` for every unit `t`.
fn stable_criterion(gamma: &ExponentTuple, h: &[u64], units: &[u64]) -> bool {
    let m = gamma.m() as u64;
    let f = h.len() as u64;
    let target = gamma.r() as u64 * f;
    units.iter().all(|&t| {
        let twice: u64 = h
            .iter()
            .map(|&hh| {
                let s: u64 = gamma.entries().iter().map(|&g| g as u64 * hh % m * t % m).sum();
                2 * (s / m - 1)
            })
            .sum();
        twice == target
    })
}

/// Data of the stable criterion for `(m, r, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableB {
    pub m: u32,
    pub r: u32,
    pub p: u64,
    /// `<p>` in `(Z/m)^x`.
    pub h: Vec<u64>,
    /// `|H|`, also the degree of the smallest field `F_{p^f}` containing the `m`-th roots of unity.
    pub f: u32,
    pub tuples: Vec<ExponentTuple>,
}

/// The `gamma` in `D_{m,r}` satisfying the stable criterion, `r` even.
pub fn stable_b(m: u32, r: u32, p: u64, budget: &Budget) -> Result<StableB> {
    if r % 2 == 1 {
        return Err(Error::domain(format!("the stable criterion needs even r, got {r}")));
    }
    stable_set(m, r, p, budget)
}

fn stable_set(m: u32, r: u32, p: u64, budget: &Budget) -> Result<StableB> {
    let h = frobenius_subgroup(p, m)?;
    let units = arith::units(m as u64);
    let tuples = exponent_tuples(m, r, budget)?
        .filter(|g| stable_criterion(g, &h, &units))
        .collect();
    Ok(StableB {
        m,
        r,
        p,
        f: h.len() as u32,
        h,
        tuples,
    })
}

/// Smallest field `F_{p^f}` with `m | p^f - 1`.
pub fn splitting_field(p: u64, m: u32, budget: &Budget) -> Result<FieldTable> {
    let f = arith::multiplicative_order(p, m as u64).ok_or(Error::NotCoprime { a: p, b: m as u64 })?;
    let f = u32::try_from(f).map_err(|_| Error::domain("order too large"))?;
    budget.check("field size", saturating_pow(p, f), budget.max_field)?;
    FieldTable::new(p, f, budget)
}

/// Both sides of the Shioda-Katsura equivalence for one `gamma`:
/// `(some power of the Weil number over F_{p^f} is a power of p, gamma satisfies the stable criterion)`.
pub fn sk_equivalence(gamma: &ExponentTuple, p: u64, budget: &Budget) -> Result<(bool, bool)> {
    let table = splitting_field(p, gamma.m(), budget)?;
    let engine = JacobiSums::new(&table, gamma.m())?;
    sk_with(&engine, gamma, p, budget)
}

fn sk_with(engine: &JacobiSums<'_>, gamma: &ExponentTuple, p: u64, budget: &Budget) -> Result<(bool, bool)> {
    let table = engine.table();
    let alpha = engine.weil_number(gamma, &Coefficients::ones(gamma.r()), budget)?;
    let pred_i = alpha
        .power_rationality(gamma.r(), &BigInt::from(table.q()))?
        .is_some();
    let h = frobenius_subgroup(p, gamma.m())?;
    let pred_ii = stable_criterion(gamma, &h, &arith::units(gamma.m() as u64));
    Ok((pred_i, pred_ii))
}

/// [`sk_equivalence`] for every `gamma` in `D_{m,r}`, sharing one field.
pub fn sk_table(m: u32, r: u32, p: u64, budget: &Budget) -> Result<Vec<(ExponentTuple, bool, bool)>> {
    let table = splitting_field(p, m, budget)?;
    let engine = JacobiSums::new(&table, m)?;
    let tuples: Vec<_> = exponent_tuples(m, r, budget)?.collect();
    tuples
        .into_par_iter()
        .map(|g| {
            let (a, b) = sk_with(&engine, &g, p, budget)?;
            Ok((g, a, b))
        })
        .collect()
}

/// For a product `P` of the given numbers, the least `N` with `P^N` rational,
/// together with `P^N`.
pub fn product_rationality(alphas: &[CycInt]) -> Option<(BigInt, u64)> {
    let level = common_level(alphas.iter().map(CycInt::level));
    let mut prod = CycInt::one(level);
    for a in alphas {
        prod = &prod * &a.lift(level).expect("level divides the lcm");
    }
    if prod.is_zero() {
        return None;
    }
    // P^N rational iff (P / conj P)^N = 1; with n = P conj(P) rational,
    // P / conj P = P^2 / n must be a root of unity.
    if let Some(n) = prod.norm_sq().as_rational_integer() {
        let order = (&prod * &prod).div_exact(&n)?.root_of_unity_order()?;
        let value = prod.power(order).as_rational_integer()?;
        return Some((value, order));
    }
    let bound = arith::lcm(2, level as u64);
    arith::divisors(bound).into_iter().find_map(|n| {
        prod.power(n).as_rational_integer().map(|v| (v, n))
    })
}

/// A perfect matching of the factors whose pair products are stably `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingWitness {
    pub pairs: Vec<(usize, usize)>,
    /// Per-pair least `N` with `(alpha_a alpha_b)^N = q^N`.
    pub pair_orders: Vec<u64>,
    /// lcm of `pair_orders`.
    pub n: u64,
}

/// Searches the perfect matchings of `alphas` (weight one, product `q^i`) in
/// lexicographic order for one whose pairs all become `q` after a power.
pub fn pairing_witness(alphas: &[CycInt], q: u64, i: u32) -> Result<Option<PairingWitness>> {
    if alphas.len() != 2 * i as usize {
        return Err(Error::domain(format!(
            "expected {} Weil numbers, got {}",
            2 * i,
            alphas.len()
        )));
    }
    let qb = BigInt::from(q);
    for a in alphas {
        if a.norm_sq() != CycInt::from_int(a.level(), qb.clone()) {
            return Err(Error::WeightContract { weight: 1 });
        }
    }
    let level = common_level(alphas.iter().map(CycInt::level));
    let lifted: Vec<CycInt> = alphas
        .iter()
        .map(|a| a.lift(level))
        .collect::<Result<_>>()?;
    let mut prod = CycInt::one(level);
    for a in &lifted {
        prod = &prod * a;
    }
    if prod.as_rational_integer() != Some(Pow::pow(&qb, i)) {
        return Err(Error::domain(format!("the product is not q^{i}")));
    }
    let n = lifted.len();
    let mut pair_order = vec![None; n * n];
    for a in 0..n {
        for b in a + 1..n {
            pair_order[a * n + b] = (&lifted[a] * &lifted[b]).power_rationality(2, &qb)?;
        }
    }
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    let mut orders = Vec::new();
    if search_matching(n, &pair_order, &mut used, &mut pairs, &mut orders) {
        let lcm = orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));
        return Ok(Some(PairingWitness {
            pairs,
            pair_orders: orders,
            n: lcm,
        }));
    }
    Ok(None)
}

fn search_matching(
    n: usize,
    pair_order: &[Option<u64>],
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    orders: &mut Vec<u64>,
) -> bool {
    let Some(a) = used.iter().position(|u| !u) else {
        return true;
    };
    used[a] = true;
    for b in a + 1..n {
        if used[b] {
            continue;
        }
        if let Some(o) = pair_order[a * n + b] {
            used[b] = true;
            pairs.push((a, b));
            orders.push(o);
            if search_matching(n, pair_order, used, pairs, orders) {
                return true;
            }
            pairs.pop();
            orders.pop();
            used[b] = false;
        }
    }
    used[a] = false;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{hypersurface_spectrum, product_spectrum};

    fn field(p: u64, f: u32) -> FieldTable {
        FieldTable::new(p, f, &Budget::default()).unwrap()
    }

    fn fermat(m: u32, r: u32, t: &FieldTable) -> Spectrum {
        hypersurface_spectrum(m, r, &Coefficients::ones(r), t, &Budget::default()).unwrap()
    }

    fn tuple(m: u32, e: &[u32]) -> ExponentTuple {
        ExponentTuple::new(m, e.to_vec()).unwrap()
    }

    #[test]
    fn exact_dims() {
        let t7 = field(7, 1);
        let t3 = field(3, 1);
        assert_eq!(tate_dim_exact(&fermat(3, 1, &t7), 0), 1);
        assert_eq!(tate_dim_exact(&fermat(2, 2, &t3), 1), 2);
        let ee = product_spectrum(&[fermat(3, 1, &t7), fermat(3, 1, &t7)]).unwrap();
        assert_eq!(tate_dim_exact(&ee, 1), 4);
        assert_eq!(tate_dim_stable(&ee, 1).unwrap(), (4, 1));
    }

    #[test]
    fn stable_dim_witness_two() {
        let s = Spectrum::new(1, 5, vec![
            vec![Eigenvalue::QPow(0)],
            vec![],
            vec![Eigenvalue::Cyc(CycInt::from_int(2, -5))],
        ])
        .unwrap();
        assert_eq!(tate_dim_exact(&s, 1), 0);
        assert_eq!(tate_dim_stable(&s, 1).unwrap(), (1, 2));
    }

    #[test]
    fn case2_formula() {
        let b = Budget::default();
        assert_eq!(dim_case2(&[5], &[1], 0, false, &b).unwrap(), 1);
        assert_eq!(dim_case2(&[5], &[1], 1, false, &b).unwrap(), 1);
        assert_eq!(dim_case2(&[3, 5], &[1, 1], 1, false, &b).unwrap(), 2);
        // i_1 = 0: (0,3) (1,2) (2,1) (3,0); i_1 = 1: (0,2) (1,1) (2,0)
        assert_eq!(dim_case2(&[3, 5, 7], &[1, 3, 3], 3, false, &b).unwrap(), 7);
        assert!(dim_case2(&[3, 5], &[1, 2], 1, false, &b).is_err());
        assert_eq!(dim_case2(&[3, 5], &[1, 2], 1, true, &b).unwrap(), 2);
        let many = vec![3u32; 13];
        assert!(matches!(
            dim_case2(&many, &[1; 13], 2, false, &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn case3_formula() {
        let b = Budget::default();
        let single: BTreeMap<usize, u64> = [(0, 5)].into();
        assert_eq!(dim_case3(&[3], &[2], 1, &single, &b).unwrap(), 5);
        let two: BTreeMap<usize, u64> = [(0, 2), (1, 2)].into();
        let dims: Vec<u64> = (0..=4)
            .map(|i| dim_case3(&[2, 2], &[2, 2], i, &two, &b).unwrap())
            .collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
        let missing: BTreeMap<usize, u64> = [(0, 2)].into();
        assert!(dim_case3(&[2, 2], &[2, 2], 1, &missing, &b).is_err());
        // i = 0 never reaches a middle degree
        assert_eq!(dim_case3(&[2, 2], &[2, 2], 0, &BTreeMap::new(), &b).unwrap(), 1);
    }

    #[test]
    fn middle_dims() {
        let b = Budget::default();
        let t3 = field(3, 1);
        assert_eq!(middle_tate_dim_exact(2, 2, &Coefficients::ones(2), &t3, &b).unwrap(), 2);
        assert_eq!(middle_tate_dim_exact(1, 2, &Coefficients::ones(2), &t3, &b).unwrap(), 1);
        assert!(middle_tate_dim_exact(2, 1, &Coefficients::ones(1), &t3, &b).is_err());
        let t7 = field(7, 1);
        let d = middle_tate_dim_exact(3, 2, &Coefficients::ones(2), &t7, &b).unwrap();
        assert_eq!(exponent_tuples(3, 2, &b).unwrap().count(), 6);
        assert!((1..=7).contains(&d));
    }

    #[test]
    fn norms() {
        assert_eq!(gamma_norm(&tuple(2, &[1, 1, 1, 1])).as_integer(), Some(1));
        assert_eq!(gamma_norm(&tuple(3, &[1, 1, 1])).as_integer(), Some(0));
        assert_eq!(gamma_norm(&tuple(3, &[2, 2, 2])).as_integer(), Some(1));
        let tail = gamma_norm_with(&tuple(2, &[1, 1, 1, 1]), NormConvention::TailIndices);
        assert_eq!(tail.as_integer(), None);
        assert_eq!(tail.to_string(), "1/2");
    }

    #[test]
    fn norm_range() {
        let b = Budget::default();
        for (m, r) in [(5u32, 2u32), (6, 3), (7, 1)] {
            for g in exponent_tuples(m, r, &b).unwrap() {
                let n = gamma_norm(&g).as_integer().unwrap();
                assert!((0..=r as i64).contains(&n));
            }
        }
    }

    #[test]
    fn frobenius_subgroups() {
        assert_eq!(frobenius_subgroup(2, 3).unwrap(), vec![1, 2]);
        assert_eq!(frobenius_subgroup(11, 5).unwrap(), vec![1]);
        assert_eq!(frobenius_subgroup(2, 7).unwrap(), vec![1, 2, 4]);
        assert!(frobenius_subgroup(3, 6).is_err());
    }

    #[test]
    fn stable_b_examples() {
        let b = Budget::default();
        let s = stable_b(2, 2, 3, &b).unwrap();
        assert_eq!(s.tuples, vec![tuple(2, &[1, 1, 1, 1])]);
        assert_eq!(s.f, 1);
        assert_eq!(stable_b(3, 2, 2, &b).unwrap().f, 2);
        assert!(stable_b(3, 1, 2, &b).is_err());
        assert!(stable_b(4, 2, 2, &b).is_err());
    }

    #[test]
    fn sk_examples() {
        let b = Budget::default();
        assert_eq!(sk_equivalence(&tuple(2, &[1, 1, 1, 1]), 3, &b).unwrap(), (true, true));
        for (_, a, c) in sk_table(5, 2, 11, &b).unwrap() {
            assert_eq!(a, c);
        }
        // f = 3 and r = 1: r f / 2 is not an integer
        for (g, a, c) in sk_table(7, 1, 2, &b).unwrap() {
            assert!(!a && !c, "{g}");
        }
    }

    #[test]
    fn rationality_of_products() {
        let q = CycInt::from_int(1, 7);
        assert_eq!(product_rationality(&[q]), Some((BigInt::from(7), 1)));
        let z = [CycInt::root(3, 1), CycInt::root(3, 2)];
        assert_eq!(product_rationality(&z), Some((BigInt::from(1), 1)));
        let a = -&CycInt::parse("2 + 3*z@3").unwrap();
        assert_eq!(product_rationality(std::slice::from_ref(&a)), None);
        assert_eq!(product_rationality(&[a.clone(), a.conj()]), Some((BigInt::from(7), 1)));
        // zeta_3 * 7: cube is 343
        let b = CycInt::root(3, 1).scale(&BigInt::from(7));
        assert_eq!(product_rationality(&[b]), Some((BigInt::from(343), 3)));
        let i = CycInt::root(4, 1);
        assert_eq!(product_rationality(&[i]), Some((BigInt::from(-1), 2)));
    }

    #[test]
    fn rationality_agrees_with_divisor_sweep() {
        let t = field(31, 1);
        let b = Budget::default();
        let e3 = weil_numbers(&t, 3, 1, &Coefficients::ones(1), &b).unwrap();
        let e5 = weil_numbers(&t, 5, 1, &Coefficients::ones(1), &b).unwrap();
        for (_, x) in &e3 {
            for (_, y) in &e5 {
                let level = 15;
                let p = &x.lift(level).unwrap() * &y.lift(level).unwrap();
                let sweep = arith::divisors(30)
                    .into_iter()
                    .find_map(|n| p.power(n).as_rational_integer().map(|v| (v, n)));
                assert_eq!(product_rationality(&[x.clone(), y.clone()]), sweep);
            }
        }
    }

    #[test]
    fn pairings() {
        let a = -&CycInt::parse("2 + 3*z@3").unwrap();
        let w = pairing_witness(&[a.clone(), a.conj()], 7, 1).unwrap().unwrap();
        assert_eq!(w.pairs, vec![(0, 1)]);
        assert_eq!(w.n, 1);
        assert!(pairing_witness(&[a.clone(), a.clone()], 7, 1).is_err());

        let t = field(31, 1);
        let b = Budget::default();
        let x = weil_numbers(&t, 3, 1, &Coefficients::ones(1), &b).unwrap()[0].1.clone();
        let y = weil_numbers(&t, 5, 1, &Coefficients::ones(1), &b).unwrap()[0].1.clone();
        let four = [x.clone(), y.clone(), x.conj(), y.conj()];
        let w = pairing_witness(&four, 31, 2).unwrap().unwrap();
        assert_eq!(w.pairs, vec![(0, 2), (1, 3)]);
        assert_eq!(w.n, 1);
    }
}
