//! Randomized and exhaustive invariants across the whole pipeline.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fermat_weil::arith::{divisors, gcd, inverse_mod, lcm, units};
use fermat_weil::spectrum::{brute_force_count, variety_spectrum, Factor, Spectrum};
use fermat_weil::tate::{middle_tate_dim_exact, product_rationality, splitting_field, stable_b};
use fermat_weil::weil::{exponent_tuple_count, exponent_tuples, jacobi_direct, jacobi_fast, weil_number, weil_numbers};
use fermat_weil::{Budget, Coefficients, CycInt, Eigenvalue, ExponentTuple, FieldTable};

const LEVELS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15];

fn cyc(level: u32, coeffs: &[i64]) -> CycInt {
    CycInt::from_poly(level, coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

prop_compose! {
    fn three_cycs()(level in proptest::sample::select(LEVELS))
        (a in proptest::collection::vec(-60i64..60, level as usize),
         b in proptest::collection::vec(-60i64..60, level as usize),
         c in proptest::collection::vec(-60i64..60, level as usize),
         level in Just(level)) -> (CycInt, CycInt, CycInt)
    {
        (cyc(level, &a), cyc(level, &b), cyc(level, &c))
    }
}

/// Fields small enough to rebuild per case, with several character orders each.
const FIELDS: &[(u64, u32)] = &[(7, 1), (13, 1), (2, 4), (5, 2), (31, 1), (3, 3), (37, 1)];

fn table(i: usize) -> FieldTable {
    let (p, f) = FIELDS[i];
    FieldTable::new(p, f, &Budget::default()).unwrap()
}

fn orders(t: &FieldTable) -> Vec<u32> {
    divisors(t.q() - 1).into_iter().filter(|&d| d > 1).map(|d| d as u32).collect()
}

/// A tuple in `D_{m,r}` built from free entries; `None` when the last entry would be 0.
fn tuple_from(m: u32, free: &[u32]) -> Option<ExponentTuple> {
    let entries: Vec<u32> = free.iter().map(|e| 1 + e % (m - 1)).collect();
    let s: u32 = entries.iter().map(|e| e % m).sum();
    let last = (m - s % m) % m;
    if last == 0 {
        return None;
    }
    let mut all = entries;
    all.push(last);
    Some(ExponentTuple::new(m, all).unwrap())
}

fn random_coeffs(t: &FieldTable, r: u32, seeds: &[u64]) -> Coefficients {
    let elems = (0..r as usize + 2)
        .map(|i| t.exp(seeds[i % seeds.len()].wrapping_add(i as u64 * 7) % (t.q() - 1)))
        .collect();
    Coefficients::new(t, elems).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws((a, b, c) in three_cycs()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CycInt::one(a.level()), a.clone());
    }

    #[test]
    fn galois_is_a_ring_map_permuting_embeddings((a, b, _) in three_cycs(), pick in 0usize..64) {
        let m = a.level();
        let us = units(m as u64);
        let t = us[pick % us.len()];
        let ga = a.galois(t).unwrap();
        prop_assert_eq!((&a * &b).galois(t).unwrap(), &ga * &b.galois(t).unwrap());
        prop_assert_eq!((&a + &b).galois(t).unwrap(), &ga + &b.galois(t).unwrap());
        let mut pool = ga.embeddings();
        for x in a.embeddings() {
            let (k, d) = pool
                .iter()
                .enumerate()
                .map(|(k, y)| (k, (x - y).norm()))
                .min_by(|u, v| u.1.partial_cmp(&v.1).unwrap())
                .unwrap();
            prop_assert!(d < 1e-9 * (1.0 + x.norm()));
            pool.swap_remove(k);
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.conj(), a.galois(m as u64 - 1).unwrap());
    }

    #[test]
    fn render_parse_round_trip((a, _, _) in three_cycs()) {
        prop_assert_eq!(CycInt::parse(&a.render()).unwrap(), a);
    }

    #[test]
    fn weight_of_weil_numbers(
        fi in 0usize..FIELDS.len(), mi in 0usize..16, r in 0u32..=3,
        free in proptest::collection::vec(0u32..1000, 4), seeds in proptest::collection::vec(any::<u64>(), 5),
    ) {
        let t = table(fi);
        let ms = orders(&t);
        let m = ms[mi % ms.len()];
        let g = tuple_from(m, &free[..r as usize + 1]);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let a = random_coeffs(&t, r, &seeds);
        let b = Budget::default();
        let alpha = weil_number(&t, &g, &a, &b).unwrap();
        let q = BigInt::from(t.q());
        prop_assert_eq!(alpha.norm_sq(), CycInt::from_int(m, Pow::pow(&q, r)));
        let target = (t.q() as f64).powf(r as f64 / 2.0);
        for z in alpha.embeddings() {
            prop_assert!((z.norm() - target).abs() < 1e-9 * target);
        }
    }

    #[test]
    fn conjugate_tuple_gives_conjugate_sum(
        fi in 0usize..FIELDS.len(), mi in 0usize..16, r in 0u32..=3,
        free in proptest::collection::vec(0u32..1000, 4),
    ) {
        let t = table(fi);
        let ms = orders(&t);
        let m = ms[mi % ms.len()];
        let g = tuple_from(m, &free[..r as usize + 1]);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let b = Budget::default();
        prop_assert_eq!(jacobi_direct(&t, &g.neg(), &b).unwrap(), jacobi_direct(&t, &g, &b).unwrap().conj());
    }

    #[test]
    fn fast_equals_direct(
        fi in 0usize..FIELDS.len(), mi in 0usize..16, r in 0u32..=3,
        free in proptest::collection::vec(0u32..1000, 4),
    ) {
        let t = table(fi);
        let ms = orders(&t);
        let m = ms[mi % ms.len()];
        let g = tuple_from(m, &free[..r as usize + 1]);
        prop_assume!(g.is_some());
        let g = g.unwrap();
        let b = Budget::default();
        prop_assert_eq!(jacobi_fast(&t, &g, &b).unwrap(), jacobi_direct(&t, &g, &b).unwrap());
    }

    #[test]
    fn changing_the_generator_conjugates(
        pi in 0usize..3, upick in 0usize..64, mi in 0usize..16, r in 1u32..=2,
    ) {
        let p = [13u64, 31, 37][pi];
        let b = Budget::default();
        let t = FieldTable::new(p, 1, &b).unwrap();
        let us = units(p - 1);
        let u = us[upick % us.len()];
        let t2 = FieldTable::with_generator(p, 1, t.exp(u) as _, &b).unwrap();
        let ms = orders(&t);
        let m = ms[mi % ms.len()];
        let sigma = inverse_mod(u % m as u64, m as u64).unwrap_or(1);
        let mut before = Vec::new();
        let mut after = Vec::new();
        for g in exponent_tuples(m, r, &b).unwrap() {
            let j = jacobi_direct(&t, &g, &b).unwrap();
            let j2 = jacobi_direct(&t2, &g, &b).unwrap();
            prop_assert_eq!(&j.galois(sigma).unwrap(), &j2);
            before.push(j);
            after.push(j2);
        }
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn spectrum_shape(
        picks in proptest::collection::vec((0usize..4, 1u32..=2), 1..=2),
        seeds in proptest::collection::vec(any::<u64>(), 4),
    ) {
        let b = Budget::default();
        let t = FieldTable::new(13, 1, &b).unwrap();
        let factors: Vec<Factor> = picks
            .iter()
            .map(|&(mi, r)| Factor::new([2, 3, 4, 6][mi], random_coeffs(&t, r, &seeds)).unwrap())
            .collect();
        let s = variety_spectrum(&factors, &t, &b).unwrap();
        check_functional_equation(&s)?;
        check_purity(&s)?;
        if let [f] = factors.as_slice() {
            let r = f.r();
            let extra = u128::from(r % 2 == 0);
            prop_assert_eq!(s.betti(r) as u128, exponent_tuple_count(f.m, r) + extra);
        }
    }

    #[test]
    fn stable_b_is_galois_closed(m in 3u32..=16, pi in 0usize..6, r in proptest::sample::select(vec![2u32, 4])) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        prop_assume!(gcd(p, m as u64) == 1);
        prop_assume!(exponent_tuple_count(m, r) <= 200_000);
        let b = Budget::default();
        let s = stable_b(m, r, p, &b).unwrap();
        let set: std::collections::BTreeSet<_> = s.tuples.iter().cloned().collect();
        for g in &s.tuples {
            for t in units(m as u64).into_iter().chain([p % m as u64]) {
                prop_assert!(set.contains(&g.scale(t).unwrap()), "{} scaled by {}", g, t);
            }
        }
    }
}

fn cyc_at(s: &Spectrum, e: &Eigenvalue) -> CycInt {
    e.to_cyc(s.q(), s.level()).unwrap()
}

/// `H^(2d-i) = { q^d / alpha : alpha in H^i }` as multisets.
fn check_functional_equation(s: &Spectrum) -> std::result::Result<(), TestCaseError> {
    let d = s.dim();
    let q = BigInt::from(s.q());
    for i in 0..=2 * d {
        let mut dual: Vec<CycInt> = s
            .h(i)
            .iter()
            .map(|e| cyc_at(s, e).conj().scale(&Pow::pow(&q, d - i.min(d))))
            .collect();
        if i > d {
            // q^d / alpha = conj(alpha) / q^(i-d)
            dual = s
                .h(i)
                .iter()
                .map(|e| cyc_at(s, e).conj().div_exact(&Pow::pow(&q, i - d)).unwrap())
                .collect();
        }
        let mut mirror: Vec<CycInt> = s.h(2 * d - i).iter().map(|e| cyc_at(s, e)).collect();
        dual.sort();
        mirror.sort();
        prop_assert_eq!(dual, mirror, "degree {}", i);
    }
    Ok(())
}

fn check_purity(s: &Spectrum) -> std::result::Result<(), TestCaseError> {
    let q = BigInt::from(s.q());
    for (i, es) in s.degrees() {
        for e in es {
            let c = cyc_at(s, e);
            prop_assert_eq!(c.norm_sq(), CycInt::from_int(s.level(), Pow::pow(&q, i)));
        }
    }
    Ok(())
}

#[test]
fn twisted_counts_match_enumeration() {
    let b = Budget::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for &(p, f, ms) in &[(7u64, 1u32, &[2u32, 3, 6][..]), (13, 1, &[3, 4, 6]), (2, 2, &[3]), (3, 2, &[4, 8])] {
        let t = FieldTable::new(p, f, &b).unwrap();
        for _ in 0..6 {
            let nf = rng.gen_range(1..=2);
            let factors: Vec<Factor> = (0..nf)
                .map(|_| {
                    let m = ms[rng.gen_range(0..ms.len())];
                    let r = if nf == 1 { rng.gen_range(1..=2) } else { 1 };
                    let elems = (0..r + 2).map(|_| t.exp(rng.gen_range(0..t.q() - 1))).collect();
                    Factor::new(m, Coefficients::new(&t, elems).unwrap()).unwrap()
                })
                .collect();
            let s = variety_spectrum(&factors, &t, &b).unwrap();
            for n in 1..=2 {
                assert_eq!(
                    s.point_count(n, &b).unwrap(),
                    brute_force_count(&factors, &t, n, &b).unwrap(),
                    "{factors:?} over GF({}^{f}), n={n}",
                    p
                );
            }
        }
    }
}

/// Over the splitting field the stable tuples are those whose Weil number has
/// a rational power; over the extension killing those roots of unity the exact
/// middle Tate dimension is one more than the number of stable tuples.
#[test]
fn exact_middle_dimension_matches_stable_criterion() {
    let b = Budget::default();
    let mut strict = 0;
    let mut extended = 0;
    for (m, p) in [(3u32, 2u64), (3, 5), (4, 3), (5, 2), (5, 11), (6, 5), (7, 2), (8, 3), (8, 5), (9, 2), (10, 3), (12, 5), (12, 7), (13, 3)] {
        let t = splitting_field(p, m, &b).unwrap();
        let q = BigInt::from(t.q());
        let stable: Vec<ExponentTuple> = stable_b(m, 2, p, &b).unwrap().tuples;
        let mut rational = Vec::new();
        let mut k = 1u64;
        for (g, alpha) in weil_numbers(&t, m, 2, &Coefficients::ones(2), &b).unwrap() {
            if let Some(n) = alpha.power_rationality(2, &q).unwrap() {
                rational.push(g);
                k = lcm(k, n);
            }
        }
        assert_eq!(rational, stable, "m={m} p={p}");
        let exact = middle_tate_dim_exact(m, 2, &Coefficients::ones(2), &t, &b).unwrap();
        assert!(exact <= 1 + stable.len() as u64);
        let (p0, f0) = (t.p(), t.spec().f);
        if (f0 as u64 * k) <= 24 && p0.pow(f0 * k as u32) <= 10_000 {
            let big = FieldTable::new(p0, f0 * k as u32, &b).unwrap();
            let exact = middle_tate_dim_exact(m, 2, &Coefficients::ones(2), &big, &b).unwrap();
            assert_eq!(exact, 1 + stable.len() as u64, "m={m} p={p} q={}", big.q());
            extended += 1;
        }
        if exact < 1 + stable.len() as u64 {
            strict += 1;
        }
    }
    // m=8, p=3 over F_9 is one configuration where the roots of unity survive
    assert!(strict > 0);
    assert!(extended >= 10, "{extended}");
}

/// Under the case-2 hypotheses no power of a product of odd-weight middle
/// eigenvalues is rational.
#[test]
fn no_rational_powers_in_the_mixed_part_at_p67() {
    let b = Budget::default();
    let t = FieldTable::new(67, 3, &b).unwrap();
    let e7 = variety_spectrum(&[Factor::fermat(7, 1)], &t, &b).unwrap();
    let e9 = variety_spectrum(&[Factor::fermat(9, 1)], &t, &b).unwrap();
    let h1 = |s: &Spectrum| -> Vec<CycInt> { s.h(1).iter().map(|e| e.to_cyc(s.q(), 63).unwrap()).collect() };
    let (a7, a9) = (h1(&e7), h1(&e9));
    assert_eq!((a7.len(), a9.len()), (30, 56));
    let mut checked = 0;
    for x in &a7 {
        for y in &a9 {
            assert_eq!(product_rationality(&[x.clone(), y.clone()]), None, "{x} * {y}");
            checked += 1;
        }
    }
    assert_eq!(checked, 1680);

    let product = variety_spectrum(&[Factor::fermat(7, 1), Factor::fermat(9, 1)], &t, &b).unwrap();
    for i in [2, 4] {
        let cyc: Vec<&Eigenvalue> = product.h(i).iter().filter(|e| matches!(e, Eigenvalue::Cyc(_))).collect();
        for e in &cyc {
            let c = e.to_cyc(product.q(), product.level()).unwrap();
            assert_eq!(product_rationality(&[c]), None);
        }
        let rational = product.h(i).len() - cyc.len();
        assert_eq!(rational, if i == 2 { 2 } else { 1 });
    }
    assert_eq!((product.h(1).len(), product.h(3).len()), (86, 86));
}

#[test]
fn zero_is_excluded_from_tuples() {
    let b = Budget::default();
    for m in 2..=6 {
        for r in 0..=3 {
            for g in exponent_tuples(m, r, &b).unwrap() {
                assert!(g.entries().iter().all(|&e| e != 0 && e < m));
                assert!((g.entries().iter().sum::<u32>() % m).is_zero());
            }
        }
    }
}
