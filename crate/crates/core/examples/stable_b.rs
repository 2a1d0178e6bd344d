//! The stable Tate criterion on exponent tuples, compared with exact Jacobi
//! sums over the splitting field.
//!
//! cargo run --example stable_b -- 5 2 11

use fermat_weil::tate::{exact_b, gamma_norm, sk_table, splitting_field, stable_b};
use fermat_weil::{Budget, Coefficients};

fn main() -> fermat_weil::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (m, r, p) = match args.as_slice() {
        [m, r, p, ..] => (*m as u32, *r as u32, *p),
        _ => (5, 2, 11),
    };
    let b = Budget::default();
    let s = stable_b(m, r, p, &b)?;
    println!("m={m} r={r} p={p}: H = {:?}, f = {}, {} stable tuples", s.h, s.f, s.tuples.len());
    for g in s.tuples.iter().take(8) {
        println!("  {g} |gamma| = {}", gamma_norm(g));
    }
    let t = splitting_field(p, m, &b)?;
    let exact = exact_b(m, r, &Coefficients::ones(r), &t, &b)?;
    println!("over GF({}): {} tuples with j = q^(r/2)", t.q(), exact.len());
    let disagree = sk_table(m, r, p, &b)?.into_iter().filter(|(_, a, c)| a != c).count();
    println!("tuples where the two criteria disagree: {disagree}");
    Ok(())
}
