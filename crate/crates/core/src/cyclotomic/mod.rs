//! Exact arithmetic in `Z[zeta_m]`.
//!
//! A [`CycInt`] stores the coefficient vector of its representative of degree
//! `< phi(m)` in the power basis `1, z, ..., z^(phi(m)-1)`, i.e. the remainder
//! modulo the cyclotomic polynomial `Phi_m`. Equality of values at the same
//! level is therefore equality of vectors.

mod phi;
mod text;

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub use phi::cyclotomic_poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    level: u32,
    coeffs: Vec<BigInt>,
}

fn degree_of(level: u32) -> usize {
    cyclotomic_poly(level).len() - 1
}

/// Reduces an arbitrary-length polynomial in `z` modulo `Phi_level`.
fn reduce(level: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_poly(level);
    let d = phi.len() - 1;
    for k in (d..poly.len()).rev() {
        let c = std::mem::take(&mut poly[k]);
        if c.is_zero() {
            continue;
        }
        for (i, &ph) in phi[..d].iter().enumerate() {
            if ph != 0 {
                poly[k - d + i] -= &c * ph;
            }
        }
    }
    poly.resize(d, BigInt::zero());
    poly
}

impl CycInt {
    pub fn zero(level: u32) -> Self {
        assert!(level > 0, "cyclotomic level must be positive");
        CycInt {
            level,
            coeffs: vec![BigInt::zero(); degree_of(level)],
        }
    }

    pub fn from_int(level: u32, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = n.into();
        out
    }

    pub fn one(level: u32) -> Self {
        Self::from_int(level, 1)
    }

    /// `zeta_level^k`; negative `k` allowed.
    pub fn root(level: u32, k: i64) -> Self {
        let k = k.rem_euclid(level as i64) as usize;
        let mut poly = vec![BigInt::zero(); k + 1];
        poly[k] = BigInt::one();
        Self::from_poly(level, poly)
    }

    /// Canonical form of `sum_j poly[j] z^j` for any length.
    pub fn from_poly(level: u32, poly: Vec<BigInt>) -> Self {
        assert!(level > 0, "cyclotomic level must be positive");
        CycInt {
            level,
            coeffs: reduce(level, poly),
        }
    }

    /// `sum_e counts[e] * zeta^e` with `counts` indexed by exponents mod `level`.
    pub fn from_exponent_counts(level: u32, counts: &[i64]) -> Self {
        let mut poly = vec![BigInt::zero(); level as usize];
        for (e, &c) in counts.iter().enumerate() {
            poly[e % level as usize] += c;
        }
        Self::from_poly(level, poly)
    }

    /// Builds from canonical coefficients; the length must be `phi(level)`.
    pub fn from_coeffs(level: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if level == 0 || coeffs.len() != degree_of(level) {
            return Err(Error::domain(format!(
                "level {level} needs {} coefficients",
                if level == 0 { 0 } else { degree_of(level) }
            )));
        }
        Ok(CycInt { level, coeffs })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(CycInt {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(CycInt {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycInt {
            level: self.level,
            coeffs: reduce(self.level, prod),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division by a rational integer, when every coefficient is divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quot, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            coeffs.push(quot);
        }
        Some(CycInt {
            level: self.level,
            coeffs,
        })
    }

    pub fn power(&self, mut n: u64) -> Self {
        let mut acc = Self::one(self.level);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn permute_exponents(&self, t: u64) -> Self {
        let m = self.level as u64;
        let mut poly = vec![BigInt::zero(); self.level as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[((j as u64 * t) % m) as usize] += c;
            }
        }
        Self::from_poly(self.level, poly)
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        self.permute_exponents(self.level as u64 - 1)
    }

    /// The automorphism `zeta -> zeta^t`.
    pub fn galois(&self, t: u64) -> Result<Self> {
        let m = self.level as u64;
        if arith::gcd(t % m, m) != 1 && m > 1 {
            return Err(Error::NotCoprime { a: t, b: m });
        }
        Ok(self.permute_exponents(t % m))
    }

    /// Image under `Z[zeta_m] -> Z[zeta_M]`, `zeta_m -> zeta_M^(M/m)`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(Error::domain(format!(
                "level {} does not divide {}",
                self.level, target
            )));
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let step = (target / self.level) as usize;
        let mut poly = vec![BigInt::zero(); step * self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    /// `Some(c)` iff the value is the rational integer `c`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Values under all embeddings `zeta -> exp(2 pi i k / m)`, `gcd(k, m) = 1`,
    /// in increasing order of `k`.
    pub fn embeddings(&self) -> Vec<Complex64> {
        let m = self.level as f64;
        let coeffs: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        arith::units(self.level as u64)
            .into_iter()
            .map(|k| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| {
                        let angle = 2.0 * std::f64::consts::PI * ((j as u64 * k) % self.level as u64) as f64 / m;
                        Complex64::from_polar(c, angle)
                    })
                    .sum()
            })
            .collect()
    }

    /// `self * conj(self)`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Decides whether `self^N = q^(N w / 2)` for some `N >= 1` with `N w` even,
    /// returning the least such `N`.
    ///
    /// Requires `self * conj(self) = q^w`. Any such `N` makes `self^2 / q^w` a
    /// root of unity of `Q(zeta_m)`, i.e. an element of `mu_lcm(2, m)`, so one
    /// divisibility test and one table lookup decide the question.
    pub fn power_rationality(&self, weight: u32, q: &BigInt) -> Result<Option<u64>> {
        let q_w: BigInt = Pow::pow(q, weight);
        if self.norm_sq() != Self::from_int(self.level, q_w.clone()) {
            return Err(Error::WeightContract { weight });
        }
        let roots = roots_of_unity(self.level);
        if weight.is_multiple_of(2) {
            let half: BigInt = Pow::pow(q, weight / 2);
            Ok(self
                .div_exact(&half)
                .and_then(|u| roots.get(&u.coeffs).copied()))
        } else {
            let sq = self * self;
            Ok(sq
                .div_exact(&q_w)
                .and_then(|u| roots.get(&u.coeffs).map(|&ord| 2 * ord)))
        }
    }

    /// Order of `self` as a root of unity, if it is one.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        roots_of_unity(self.level).get(&self.coeffs).copied()
    }

    /// Canonical text form, e.g. `2 + 3*z@3`.
    pub fn render(&self) -> String {
        text::render(self)
    }

    pub fn parse(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

type RootTable = Arc<HashMap<Vec<BigInt>, u64>>;

/// All roots of unity in `Q(zeta_m)` (the group `mu_lcm(2, m)`), keyed by
/// canonical coefficients, with their orders.
fn roots_of_unity(level: u32) -> RootTable {
    static CACHE: OnceLock<RwLock<HashMap<u32, RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = cache.read().unwrap().get(&level) {
        return Arc::clone(hit);
    }
    let m = level as u64;
    let mut table = HashMap::new();
    for k in 0..m {
        let base = CycInt::root(level, k as i64);
        let ord = m / arith::gcd(k, m);
        if m % 2 == 1 {
            table.insert((-&base).coeffs, 2 * ord);
        }
        table.insert(base.coeffs, ord);
    }
    let table = Arc::new(table);
    cache
        .write()
        .unwrap()
        .entry(level)
        .or_insert_with(|| Arc::clone(&table));
    table
}

impl Add for &CycInt {
    type Output = CycInt;
    /// Panics on a level mismatch; use [`CycInt::try_add`] to get an error instead.
    fn add(self, rhs: Self) -> CycInt {
        self.try_add(rhs).expect("CycInt addition")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: Self) -> CycInt {
        self.try_sub(rhs).expect("CycInt subtraction")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: Self) -> CycInt {
        self.try_mul(rhs).expect("CycInt multiplication")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for CycInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Smallest common level for a set of levels.
pub fn common_level<I: IntoIterator<Item = u32>>(levels: I) -> u32 {
    levels
        .into_iter()
        .fold(1u64, |acc, l| arith::lcm(acc, l as u64)) as u32
}

/// Largest absolute coefficient, handy for diagnostics.
pub fn height(a: &CycInt) -> BigInt {
    a.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(level: u32, coeffs: &[i64]) -> CycInt {
        CycInt::from_poly(level, coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn vanishing_sum_of_cube_roots() {
        let s = &CycInt::root(3, 1) + &CycInt::root(3, 2);
        assert_eq!(s, CycInt::from_int(3, -1));
        assert_eq!(s.as_rational_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn i_squared() {
        let i = CycInt::root(4, 1);
        assert_eq!(&i * &i, CycInt::from_int(4, -1));
    }

    #[test]
    fn fifth_root_order() {
        assert_eq!(CycInt::root(5, 2).power(5), CycInt::one(5));
        assert_eq!(CycInt::root(5, 2).root_of_unity_order(), Some(5));
        assert_eq!(CycInt::from_int(5, -1).root_of_unity_order(), Some(2));
        assert_eq!(CycInt::root(5, 1).scale(&BigInt::from(2)).root_of_unity_order(), None);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(CycInt::root(3, 1).conj(), CycInt::root(3, 2));
        assert_eq!(CycInt::from_int(3, 5).conj(), CycInt::from_int(3, 5));
        let a = c(3, &[2, 3]);
        assert_eq!(a.conj(), c(3, &[-1, -3]));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(CycInt::root(5, 1).galois(2).unwrap(), CycInt::root(5, 2));
        let a = c(3, &[2, 3]);
        assert_eq!(a.galois(2).unwrap(), a.conj());
        assert_eq!(a.galois(1).unwrap(), a);
        assert!(matches!(CycInt::root(6, 1).galois(3), Err(Error::NotCoprime { .. })));
        let b = c(12, &[1, -2, 0, 5]);
        assert_eq!(b.galois(11).unwrap(), b.conj());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(CycInt::root(2, 1).lift(6).unwrap(), CycInt::root(6, 3));
        assert_eq!(CycInt::from_int(1, 7).lift(15).unwrap(), CycInt::from_int(15, 7));
        let a = &CycInt::one(3) + &CycInt::root(3, 1);
        assert_eq!(a.lift(12).unwrap(), &CycInt::one(12) + &CycInt::root(12, 4));
        assert!(a.lift(10).is_err());
    }

    #[test]
    fn rationality_examples() {
        assert_eq!(CycInt::from_int(7, 5).as_rational_integer(), Some(BigInt::from(5)));
        assert_eq!(CycInt::root(3, 1).as_rational_integer(), None);
    }

    #[test]
    fn embedding_examples() {
        for z in CycInt::one(7).embeddings() {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let a = c(3, &[2, 3]);
        assert_eq!(a.norm_sq(), CycInt::from_int(3, 7));
        for z in a.embeddings() {
            assert!((z.norm() - 7f64.sqrt()).abs() < 1e-9);
        }
        let e = CycInt::root(4, 1).embeddings();
        assert_eq!(e.len(), 2);
        assert!((e[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((e[1] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn level_mismatch_is_an_error() {
        assert!(matches!(
            CycInt::one(3).try_add(&CycInt::one(5)),
            Err(Error::LevelMismatch(3, 5))
        ));
    }

    #[test]
    fn power_rationality_examples() {
        let q = BigInt::from(7);
        assert_eq!(CycInt::from_int(3, 7).power_rationality(2, &q).unwrap(), Some(1));
        assert_eq!(CycInt::from_int(3, -7).power_rationality(2, &q).unwrap(), Some(2));
        assert_eq!(c(3, &[2, 3]).power_rationality(1, &q).unwrap(), None);
        assert!(matches!(
            c(3, &[2, 2]).power_rationality(1, &q),
            Err(Error::WeightContract { .. })
        ));
        // 7 * zeta_3 has weight 2 and becomes rational after cubing
        let a = CycInt::root(3, 1).scale(&q);
        assert_eq!(a.power_rationality(2, &q).unwrap(), Some(3));
        // (1 + i)^2 = 2i and (1 + i)^4 = -4, so the first hit is (1 + i)^8 = 16
        let b = c(4, &[1, 1]);
        assert_eq!(b.power_rationality(1, &BigInt::from(2)).unwrap(), Some(8));
    }

    #[test]
    fn power_rationality_exhaustive_against_direct_powering() {
        // every element of small height whose norm is a power of a small q
        let q = BigInt::from(3);
        for level in [3u32, 4, 6, 12] {
            let d = degree_of(level);
            let n_vec = 7usize.pow(d as u32);
            for code in 0..n_vec {
                let mut x = code;
                let coeffs: Vec<BigInt> = (0..d)
                    .map(|_| {
                        let v = (x % 7) as i64 - 3;
                        x /= 7;
                        BigInt::from(v)
                    })
                    .collect();
                let a = CycInt::from_coeffs(level, coeffs).unwrap();
                for w in 0..=2u32 {
                    if a.norm_sq() != CycInt::from_int(level, Pow::pow(&q, w)) {
                        continue;
                    }
                    let got = a.power_rationality(w, &q).unwrap();
                    let bound = 2 * arith::lcm(2, level as u64);
                    let naive = (1..=bound).find(|&n| {
                        (n * w as u64).is_multiple_of(2)
                            && a.power(n) == CycInt::from_int(level, Pow::pow(&q, (n * w as u64 / 2) as u32))
                    });
                    assert_eq!(got, naive, "{a} weight {w}");
                }
            }
        }
    }
}
