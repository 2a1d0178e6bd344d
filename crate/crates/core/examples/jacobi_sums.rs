//! Jacobi sums and Weil numbers of diagonal hypersurfaces, with the direct
//! and cyclotomic-number engines side by side.
//!
//! cargo run --release --example jacobi_sums -- 13 4 2

use std::time::Instant;

use fermat_weil::weil::{exponent_tuples, jacobi_direct, JacobiSums};
use fermat_weil::{Budget, Coefficients, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, m, r) = match args.as_slice() {
        [p, m, r, ..] => (*p, *m as u32, *r as u32),
        _ => (13, 4, 2),
    };
    let b = Budget::default();
    let t = FieldTable::new(p, 1, &b)?;
    let engine = JacobiSums::new(&t, m)?;
    let ones = Coefficients::ones(r);

    let start = Instant::now();
    let mut rows = Vec::new();
    for g in exponent_tuples(m, r, &b)? {
        let j = engine.jacobi(&g, &b)?;
        rows.push((g.clone(), j, engine.weil_number(&g, &ones, &b)?));
    }
    let fast = start.elapsed();
    let start = Instant::now();
    for (g, j, _) in &rows {
        assert_eq!(&jacobi_direct(&t, g, &b)?, j);
    }
    let direct = start.elapsed();

    for (g, j, w) in &rows {
        println!("{g:<16} j = {j:<28} weil = {w}");
    }
    println!("{} tuples; engine {fast:?}, direct {direct:?}", rows.len());
    Ok(())
}
