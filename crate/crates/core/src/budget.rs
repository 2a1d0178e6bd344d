use crate::error::{Error, Result};

/// Resource limits shared by every enumeration in the crate.
///
/// Operations refuse work beyond these limits with [`Error::BudgetExceeded`]
/// instead of silently sampling or running for hours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest field size `q` for which a dense discrete-log table is built.
    pub max_field: u64,
    /// Largest number of items any single enumeration may visit.
    pub max_enumeration: u64,
    /// Largest number of factors for the subset loops of the hypothesis checker.
    pub max_subset_factors: usize,
    /// Largest number of factors for the dimension formulas.
    pub max_formula_factors: usize,
    /// Largest exponent for point counts over extensions.
    pub max_power: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_field: 1 << 24,
            max_enumeration: 1 << 27,
            max_subset_factors: 16,
            max_formula_factors: 12,
            max_power: 4096,
        }
    }
}

impl Budget {
    pub(crate) fn check(&self, what: &'static str, needed: u128, limit: u64) -> Result<()> {
        if needed > limit as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                limit: limit as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_enumeration(&self, what: &'static str, needed: u128) -> Result<()> {
        self.check(what, needed, self.max_enumeration)
    }
}

/// `base^exp` saturating at `u128::MAX`, for budget estimates.
pub(crate) fn saturating_pow(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
