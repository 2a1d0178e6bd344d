//! Finite fields `GF(p^f)` with a dense discrete-logarithm table, and the
//! multiplicative characters of order `m` built on top of it.
//!
//! Elements are encoded as integers in `0..q`. For `f = 1` the encoding is
//! the residue itself. For `f > 1` an element `c_0 + c_1 x + ... + c_{f-1} x^(f-1)`
//! of `GF(p)[x] / (P)` is encoded as `c_0 + c_1 p + ... + c_{f-1} p^(f-1)`,
//! where `P` is the smallest monic irreducible of degree `f` in the same
//! little-endian ordering. This encoding order is also the "element order"
//! used for generator search and for the on-disk cache.

pub mod cache;
pub(crate) mod poly;

use std::path::Path;

use crate::arith;
use crate::budget::{saturating_pow, Budget};
use crate::error::{Error, Result};

/// Encoded field element.
pub type Elem = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    pub p: u64,
    pub f: u32,
    pub q: u64,
}

impl FieldSpec {
    pub fn new(p: u64, f: u32, budget: &Budget) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        let q = saturating_pow(p, f);
        budget.check("field size", q, budget.max_field)?;
        // the encoding is u32
        budget.check("field size", q, u32::MAX as u64)?;
        Ok(FieldSpec { p, f, q: q as u64 })
    }
}

/// An immutable finite field with generator, exponential and discrete-log tables.
#[derive(Debug, Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    /// Monic irreducible modulus, little-endian with the leading 1 (empty for `f = 1`).
    modulus: Vec<u64>,
    generator: Elem,
    exp: Vec<Elem>,
    dlog: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl FieldTable {
    /// Builds `GF(p^f)` with the smallest generator in element order.
    pub fn new(p: u64, f: u32, budget: &Budget) -> Result<Self> {
        let spec = FieldSpec::new(p, f, budget)?;
        let modulus = modulus_for(&spec)?;
        let generator = smallest_generator(&spec, &modulus);
        Ok(Self::from_generator(spec, modulus, generator))
    }

    /// Builds `GF(p^f)` with a caller-chosen primitive element.
    pub fn with_generator(p: u64, f: u32, generator: Elem, budget: &Budget) -> Result<Self> {
        let spec = FieldSpec::new(p, f, budget)?;
        let modulus = modulus_for(&spec)?;
        if generator == 0 || generator as u64 >= spec.q || !is_primitive(&spec, &modulus, generator)
        {
            return Err(Error::domain(format!(
                "{generator} is not a primitive element of GF({}^{})",
                p, f
            )));
        }
        Ok(Self::from_generator(spec, modulus, generator))
    }

    /// Like [`FieldTable::new`], but reads and writes the binary table cache in `dir`.
    ///
    /// A missing, unreadable or inconsistent cache file is rebuilt; the result is
    /// identical to an uncached build.
    pub fn new_cached(p: u64, f: u32, budget: &Budget, dir: Option<&Path>) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::new(p, f, budget);
        };
        let spec = FieldSpec::new(p, f, budget)?;
        if let Ok(Some(dlog)) = cache::load(dir, &spec) {
            if let Some(table) = Self::from_cached_dlog(spec, dlog) {
                return Ok(table);
            }
        }
        let table = Self::new(p, f, budget)?;
        cache::store(dir, &table)?;
        Ok(table)
    }

    fn from_cached_dlog(spec: FieldSpec, entries: Vec<u64>) -> Option<Self> {
        let q = spec.q as usize;
        if entries.len() != q - 1 {
            return None;
        }
        let modulus = modulus_for(&spec).ok()?;
        let order = spec.q - 1;
        let mut dlog = vec![NO_LOG; q];
        let mut exp = vec![NO_LOG; q - 1];
        for (i, &e) in entries.iter().enumerate() {
            if e >= order || exp[e as usize] != NO_LOG {
                return None;
            }
            let x = (i + 1) as u32;
            dlog[x as usize] = e as u32;
            exp[e as usize] = x;
        }
        let generator = if q == 2 { 1 } else { exp[1] };
        if generator != smallest_generator(&spec, &modulus) {
            return None;
        }
        let table = FieldTable {
            spec,
            modulus,
            generator,
            exp,
            dlog,
        };
        // spot-check the multiplicative structure against polynomial arithmetic
        let step = (q / 97).max(1);
        for x in (1..q).step_by(step) {
            let x = x as Elem;
            let lhs = table.mul_direct(x, generator);
            let rhs = table.exp[((table.dlog[x as usize] as u64 + 1) % order) as usize];
            if lhs != rhs {
                return None;
            }
        }
        Some(table)
    }

    fn from_generator(spec: FieldSpec, modulus: Vec<u64>, generator: Elem) -> Self {
        let q = spec.q as usize;
        let mut exp = Vec::with_capacity(q - 1);
        let mut dlog = vec![NO_LOG; q];
        let g_digits = elem_digits(&spec, generator);
        let mut cur = vec![0u64; spec.f as usize];
        cur[0] = 1;
        for e in 0..q - 1 {
            let x = encode(&spec, &cur);
            exp.push(x);
            dlog[x as usize] = e as u32;
            cur = mul_digits(&spec, &modulus, &cur, &g_digits);
        }
        FieldTable {
            spec,
            modulus,
            generator,
            exp,
            dlog,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// The defining polynomial (little-endian, monic); empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Element `-1`.
    pub fn neg_one(&self) -> Elem {
        self.neg(1)
    }

    /// Iterator over all nonzero elements in element order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.spec.q as Elem
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.spec.q
    }

    /// Discrete logarithm to the base of the generator, in `0..q-1`.
    pub fn dlog(&self, x: Elem) -> Result<u64> {
        if x == 0 {
            return Err(Error::domain("discrete log of zero"));
        }
        match self.dlog.get(x as usize) {
            Some(&e) if e != NO_LOG => Ok(e as u64),
            _ => Err(Error::domain(format!("{x} is not an element of GF({})", self.spec.q))),
        }
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> Elem {
        self.exp[(e % (self.spec.q - 1)) as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.f == 1 {
            return ((a as u64 + b as u64) % p) as Elem;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.f {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.f == 1 {
            return ((p - a as u64) % p) as Elem;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.f {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplication through the log tables.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.spec.q - 1;
        let e = (self.dlog[a as usize] as u64 + self.dlog[b as usize] as u64) % order;
        self.exp[e as usize]
    }

    /// Multiplication by polynomial arithmetic, without the log tables.
    pub fn mul_direct(&self, a: Elem, b: Elem) -> Elem {
        let x = elem_digits(&self.spec, a);
        let y = elem_digits(&self.spec, b);
        encode(&self.spec, &mul_digits(&self.spec, &self.modulus, &x, &y))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let order = self.spec.q - 1;
        let e = (self.dlog[a as usize] as u128 * n as u128 % order as u128) as u64;
        self.exp[e as usize]
    }

    /// Coefficient digits of an element (length `f`, little-endian).
    pub fn digits(&self, a: Elem) -> Vec<u64> {
        elem_digits(&self.spec, a)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        encode(&self.spec, digits)
    }

    /// Exponent `e` with `chi^a(x) = zeta_m^e`, where `chi(generator) = zeta_m`.
    pub fn char_exponent(&self, c: CharacterIndex, x: Elem) -> Result<u32> {
        c.check(self)?;
        let e = self.dlog(x)?;
        Ok(((c.a as u64 * (e % c.m as u64)) % c.m as u64) as u32)
    }

    /// `chi(x)` exponent for `chi` of exact order `m` (no validation).
    #[inline]
    pub(crate) fn chi(&self, m: u32, x: Elem) -> u32 {
        self.dlog[x as usize] % m
    }

    /// Checks `m | q - 1`.
    pub fn check_character_order(&self, m: u32) -> Result<()> {
        if m == 0 || !(self.spec.q - 1).is_multiple_of(m as u64) {
            return Err(Error::CharacterOrder {
                m,
                q_minus_one: self.spec.q - 1,
            });
        }
        Ok(())
    }

    /// Embedding of `GF(p^f)` into this field, as images of encoded elements.
    ///
    /// The image of `x` (a root of the small field's modulus) is the smallest
    /// root of that modulus here. Any two embeddings differ by a Frobenius
    /// power, which leaves point counts unchanged.
    pub fn embedding_from(&self, small: &FieldTable) -> Result<Vec<Elem>> {
        if small.spec.p != self.spec.p || !self.spec.f.is_multiple_of(small.spec.f) {
            return Err(Error::domain(format!(
                "GF({}) is not a subfield of GF({})",
                small.spec.q, self.spec.q
            )));
        }
        let p = self.spec.p;
        if small.spec.f == 1 {
            return Ok((0..p as Elem).collect());
        }
        let root = (0..self.spec.q as Elem)
            .find(|&beta| self.eval_prime_poly(&small.modulus, beta) == 0)
            .ok_or_else(|| Error::Internal("no root of subfield modulus".into()))?;
        let mut powers = vec![1 as Elem];
        for _ in 1..small.spec.f {
            let last = *powers.last().unwrap();
            powers.push(self.mul_direct(last, root));
        }
        Ok((0..small.spec.q as Elem)
            .map(|x| {
                small
                    .digits(x)
                    .iter()
                    .zip(&powers)
                    .fold(0, |acc, (&c, &pw)| {
                        self.add(acc, self.mul_direct(c as Elem, pw))
                    })
            })
            .collect())
    }

    fn eval_prime_poly(&self, coeffs: &[u64], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul_direct(acc, x), c as Elem))
    }

    pub(crate) fn raw_dlog_entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.dlog[1..].iter().map(|&e| e as u64)
    }
}

/// A power `chi^a` of the fixed character `chi` of order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterIndex {
    pub m: u32,
    pub a: u32,
}

impl CharacterIndex {
    pub fn new(m: u32, a: u32) -> Self {
        CharacterIndex { m, a: if m == 0 { 0 } else { a % m } }
    }

    /// Exact order of `chi^a`.
    pub fn order(&self) -> u32 {
        self.m / arith::gcd(self.a as u64, self.m as u64).max(1) as u32
    }

    fn check(&self, t: &FieldTable) -> Result<()> {
        t.check_character_order(self.m)
    }
}

fn modulus_for(spec: &FieldSpec) -> Result<Vec<u64>> {
    if spec.f == 1 {
        return Ok(Vec::new());
    }
    poly::smallest_irreducible(spec.p, spec.f)
        .ok_or_else(|| Error::Internal(format!("no irreducible of degree {} over GF({})", spec.f, spec.p)))
}

fn elem_digits(spec: &FieldSpec, a: Elem) -> Vec<u64> {
    poly::digits(a as u64, spec.p, spec.f as usize)
}

fn encode(spec: &FieldSpec, digits: &[u64]) -> Elem {
    digits
        .iter()
        .take(spec.f as usize)
        .rev()
        .fold(0u64, |acc, &d| acc * spec.p + d) as Elem
}

fn mul_digits(spec: &FieldSpec, modulus: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = spec.p;
    if spec.f == 1 {
        return vec![a[0] * b[0] % p];
    }
    let prod = poly::mul(a, b, p);
    let mut r = poly::rem(&prod, modulus, p);
    r.resize(spec.f as usize, 0);
    r
}

fn is_primitive(spec: &FieldSpec, modulus: &[u64], g: Elem) -> bool {
    let order = spec.q - 1;
    let digits = elem_digits(spec, g);
    let pow = |e: u64| -> Vec<u64> {
        if spec.f == 1 {
            vec![arith::pow_mod(digits[0], e, spec.p)]
        } else {
            let mut r = poly::pow_mod(&digits, e, modulus, spec.p);
            r.resize(spec.f as usize, 0);
            r
        }
    };
    let one = {
        let mut v = vec![0u64; spec.f as usize];
        v[0] = 1;
        v
    };
    if pow(order) != one {
        return false;
    }
    arith::prime_factors(order)
        .into_iter()
        .all(|l| pow(order / l) != one)
}

fn smallest_generator(spec: &FieldSpec, modulus: &[u64]) -> Elem {
    (1..spec.q as Elem)
        .find(|&g| is_primitive(spec, modulus, g))
        .expect("a finite field has a primitive element")
}
