//! Fermat curves of degree 7 and 9 over F_{67^3}: the product spectrum, its
//! stable Tate dimensions and the odd-dimensional formula.
//!
//! cargo run --release --example curve_product_tate

use std::time::Instant;

use fermat_weil::spectrum::{variety_spectrum, Factor};
use fermat_weil::tate::{dim_case2, hypothesis_check, tate_dim_exact, tate_dim_stable};
use fermat_weil::{Budget, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let b = Budget::default();
    let start = Instant::now();
    let t = FieldTable::new(67, 3, &b)?;
    println!("GF(67^3) built in {:?}", start.elapsed());

    let start = Instant::now();
    let s = variety_spectrum(&[Factor::fermat(7, 1), Factor::fermat(9, 1)], &t, &b)?;
    println!("spectrum with betti {:?} in {:?}", s.betti_numbers(), start.elapsed());

    for i in 0..=2 {
        let (stable, n) = tate_dim_stable(&s, i)?;
        println!(
            "i={i}: exact {}, stable {stable} (over degree-{n} extension), formula {}",
            tate_dim_exact(&s, i),
            dim_case2(&[7, 9], &[1, 1], i, false, &b)?
        );
    }
    let report = hypothesis_check(67, &[(7, 1), (9, 1)], &b)?;
    println!("case 2 hypotheses hold: {}", report.case2.outcome.holds);
    Ok(())
}
