//! The Fermat cubic curve over F_7: eigenvalues, point counts, zeta function
//! and a check against exhaustive enumeration.

use fermat_weil::spectrum::{brute_force_count, factor_spectrum, Factor};
use fermat_weil::{Budget, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let b = Budget::default();
    let t = FieldTable::new(7, 1, &b)?;
    let cubic = Factor::fermat(3, 1);
    let s = factor_spectrum(&cubic, &t, &b)?;
    for (i, h) in s.degrees() {
        let list: Vec<String> = h.iter().map(ToString::to_string).collect();
        println!("H^{i}: {}", list.join(", "));
    }
    for n in 1..=4 {
        let trace = s.point_count(n, &b)?;
        let oracle = brute_force_count(std::slice::from_ref(&cubic), &t, n, &b)?;
        println!("#X(F_7^{n}) = {trace} (enumeration {oracle})");
    }
    let z = s.zeta()?;
    println!("{z}");
    println!("series: {:?}", z.series(6));
    Ok(())
}
