//! Decidable hypotheses on `(p, [(m_j, r_j)])` for the Tate conjecture on
//! products of diagonal hypersurfaces.
//!
//! * (1a) all `r_j = 1`; every `j` has at most one `j'` with `gcd(m_j, m_j') > 2`.
//! * (1b) all `r_j = 1`; every subset of even size `4 <= j <= d` has a member
//!   coprime (up to 2) to the others with odd order of `p`.
//! * (2) all `r_j` odd; pairwise gcds at most 2 and odd orders.
//! * (3) all `r_j` even; pairwise gcds at most 2, plus a Tate assumption on each
//!   factor's middle degree.
//! * (4) pairwise gcds at most 2, odd orders for odd `r_j`, the Tate
//!   assumption for even `r_j`.
//!
//! `holds` reports the decidable part only. Middle-degree assumptions are
//! listed, with exact and stable data over the smallest field containing the
//! `m_j`-th roots of unity when the budget allows.

use serde::Serialize;
use serde_json::{json, Value};

use super::{middle_tate_dim_exact, splitting_field, stable_b};
use crate::arith;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::weil::Coefficients;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorInfo {
    pub index: usize,
    pub m: u32,
    pub r: u32,
    /// Order of `p` in `(Z/m)^x`.
    pub order: u64,
    pub order_odd: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub applicable: bool,
    pub holds: bool,
    /// Present exactly when `holds` is false.
    pub evidence: Option<Value>,
}

impl CaseOutcome {
    fn from_failures(applicable: bool, reason: &str, failures: serde_json::Map<String, Value>) -> Self {
        if !applicable {
            return CaseOutcome {
                applicable,
                holds: false,
                evidence: Some(json!({ "not_applicable": reason })),
            };
        }
        let holds = failures.is_empty();
        CaseOutcome {
            applicable,
            holds,
            evidence: (!holds).then(|| Value::Object(failures)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SouleRow {
    pub i: u32,
    pub holds: bool,
    pub evidence: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case1b {
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    /// The same test with `j` restricted to `4 <= j <= min(2i, 2d - 2i)`, per degree `i`.
    pub soule: Vec<SouleRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case2 {
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    pub gcd_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MiddleAssumption {
    pub factor: usize,
    pub m: u32,
    pub r: u32,
    /// Size of the smallest field containing the `m`-th roots of unity.
    pub q: Option<u64>,
    /// `1 + #B` over that field, Fermat coefficients.
    pub middle_tate_dim: Option<u64>,
    /// `1 + #stable_B`.
    pub stable_middle_dim: Option<u64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case3 {
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    pub gcd_ok: bool,
    pub external_assumption_needed: Vec<MiddleAssumption>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case4 {
    #[serde(flatten)]
    pub outcome: CaseOutcome,
    pub gcd_ok: bool,
    pub external_assumption_needed: Vec<MiddleAssumption>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub p: u64,
    pub factors: Vec<FactorInfo>,
    pub case1a: CaseOutcome,
    pub case1b: Case1b,
    pub case2: Case2,
    pub case3: Case3,
    pub case4: Case4,
}

impl CaseReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn first_gcd_conflict(factors: &[FactorInfo]) -> Option<Value> {
    for a in factors {
        for b in &factors[a.index + 1..] {
            let g = arith::gcd(a.m as u64, b.m as u64);
            if g > 2 {
                return Some(json!({
                    "factors": [a.index, b.index],
                    "m": [a.m, b.m],
                    "gcd": g,
                }));
            }
        }
    }
    None
}

fn even_orders<'a>(factors: impl Iterator<Item = &'a FactorInfo>) -> Vec<Value> {
    factors
        .filter(|f| !f.order_odd)
        .map(|f| json!({ "factor": f.index, "m": f.m, "order": f.order }))
        .collect()
}

fn case1a(factors: &[FactorInfo], applicable: bool) -> CaseOutcome {
    let mut failures = serde_json::Map::new();
    if applicable {
        for a in factors {
            let partners: Vec<Value> = factors
                .iter()
                .filter(|b| b.index != a.index)
                .filter_map(|b| {
                    let g = arith::gcd(a.m as u64, b.m as u64);
                    (g > 2).then(|| json!({ "factor": b.index, "m": b.m, "gcd": g }))
                })
                .collect();
            if partners.len() > 1 {
                failures.insert("factor".into(), json!(a.index));
                failures.insert("m".into(), json!(a.m));
                failures.insert("conflicts".into(), Value::Array(partners));
                break;
            }
        }
    }
    CaseOutcome::from_failures(applicable, "case 1 needs every r_j = 1", failures)
}

/// Lexicographic `k`-subsets of `0..d`.
fn combinations(d: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > d {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < d - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First `(j, subset)` violating the (1b) condition with `4 <= j <= max_j`.
fn first_1b_failure(factors: &[FactorInfo], max_j: usize) -> Option<Value> {
    let d = factors.len();
    let mut j = 4;
    while j <= max_j.min(d) {
        let mut failure = None;
        combinations(d, j, |subset| {
            let good = subset.iter().any(|&a| {
                factors[a].order_odd
                    && subset
                        .iter()
                        .filter(|&&b| b != a)
                        .all(|&b| arith::gcd(factors[a].m as u64, factors[b].m as u64) <= 2)
            });
            if !good {
                failure = Some(json!({ "j": j, "subset": subset }));
            }
            good
        });
        if failure.is_some() {
            return failure;
        }
        j += 2;
    }
    None
}

fn middle_assumption(index: usize, m: u32, r: u32, p: u64, budget: &Budget) -> MiddleAssumption {
    let mut out = MiddleAssumption {
        factor: index,
        m,
        r,
        q: None,
        middle_tate_dim: None,
        stable_middle_dim: None,
        note: None,
    };
    if let Ok(s) = stable_b(m, r, p, budget) {
        out.stable_middle_dim = Some(1 + s.tuples.len() as u64);
    }
    match splitting_field(p, m, budget) {
        Ok(table) => {
            out.q = Some(table.q());
            match middle_tate_dim_exact(m, r, &Coefficients::ones(r), &table, budget) {
                Ok(d) => out.middle_tate_dim = Some(d),
                Err(e) => out.note = Some(e.to_string()),
            }
        }
        Err(e) => out.note = Some(e.to_string()),
    }
    out
}

/// Evaluates every decidable hypothesis for `p` and the factors `(m_j, r_j)`.
pub fn hypothesis_check(p: u64, factors: &[(u32, u32)], budget: &Budget) -> Result<CaseReport> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut info = Vec::with_capacity(factors.len());
    for (index, &(m, r)) in factors.iter().enumerate() {
        if m == 0 {
            return Err(Error::domain("degrees must be positive"));
        }
        if r == 0 {
            return Err(Error::domain("dimensions must be positive"));
        }
        let order = arith::multiplicative_order(p, m as u64)
            .ok_or(Error::NotCoprime { a: p, b: m as u64 })?;
        info.push(FactorInfo {
            index,
            m,
            r,
            order,
            order_odd: order % 2 == 1,
        });
    }
    let d = info.len();
    let all_curves = info.iter().all(|f| f.r == 1);
    let all_odd = info.iter().all(|f| f.r % 2 == 1);
    let all_even = info.iter().all(|f| f.r % 2 == 0);
    if all_curves {
        budget.check("hypothesis subsets", d as u128, budget.max_subset_factors as u64)?;
    }
    let gcd_conflict = first_gcd_conflict(&info);
    let gcd_ok = gcd_conflict.is_none();

    let case1a = case1a(&info, all_curves);

    let mut failures = serde_json::Map::new();
    let mut soule = Vec::new();
    if all_curves {
        if let Some(e) = first_1b_failure(&info, d) {
            failures.insert("failure".into(), e);
        }
        for i in 0..=d as u32 {
            let max_j = (2 * i).min(2 * d as u32 - 2 * i) as usize;
            let failure = first_1b_failure(&info, max_j);
            soule.push(SouleRow {
                i,
                holds: failure.is_none(),
                evidence: failure,
            });
        }
    }
    let case1b = Case1b {
        outcome: CaseOutcome::from_failures(all_curves, "case 1 needs every r_j = 1", failures),
        soule,
    };

    let mut failures = serde_json::Map::new();
    if let Some(c) = &gcd_conflict {
        failures.insert("gcd_pair".into(), c.clone());
    }
    let even = even_orders(info.iter());
    if !even.is_empty() {
        failures.insert("even_order".into(), Value::Array(even));
    }
    let case2 = Case2 {
        outcome: CaseOutcome::from_failures(all_odd, "case 2 needs every r_j odd", failures),
        gcd_ok,
    };

    let assumptions: Vec<MiddleAssumption> = info
        .iter()
        .filter(|f| f.r % 2 == 0)
        .map(|f| middle_assumption(f.index, f.m, f.r, p, budget))
        .collect();

    let mut failures = serde_json::Map::new();
    if let Some(c) = &gcd_conflict {
        failures.insert("gcd_pair".into(), c.clone());
    }
    let case3 = Case3 {
        outcome: CaseOutcome::from_failures(all_even, "case 3 needs every r_j even", failures),
        gcd_ok,
        external_assumption_needed: if all_even { assumptions.clone() } else { Vec::new() },
    };

    let mut failures = serde_json::Map::new();
    if let Some(c) = &gcd_conflict {
        failures.insert("gcd_pair".into(), c.clone());
    }
    let even = even_orders(info.iter().filter(|f| f.r % 2 == 1));
    if !even.is_empty() {
        failures.insert("even_order".into(), Value::Array(even));
    }
    let case4 = Case4 {
        outcome: CaseOutcome::from_failures(true, "", failures),
        gcd_ok,
        external_assumption_needed: assumptions,
    };

    Ok(CaseReport {
        p,
        factors: info,
        case1a,
        case1b,
        case2,
        case3,
        case4,
    })
}
