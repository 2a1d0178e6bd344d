//! Products of quadric surfaces over F_3: Kunneth spectra and the
//! even-dimensional dimension formula against exact Tate dimensions.

use std::collections::BTreeMap;

use fermat_weil::spectrum::{product_spectrum, variety_spectrum, Factor};
use fermat_weil::tate::{dim_case3, middle_tate_dim_exact, tate_dim_exact};
use fermat_weil::{Budget, Coefficients, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let b = Budget::default();
    let t = FieldTable::new(3, 1, &b)?;
    let quadric = variety_spectrum(&[Factor::fermat(2, 2)], &t, &b)?;
    let md = middle_tate_dim_exact(2, 2, &Coefficients::ones(2), &t, &b)?;
    println!("quadric: betti {:?}, middle Tate dimension {md}", quadric.betti_numbers());
    println!("{}", quadric.zeta()?);

    let mut spec = quadric.clone();
    for k in 2..=3usize {
        spec = product_spectrum(&[spec, quadric.clone()])?;
        let ms = vec![2; k];
        let rs = vec![2; k];
        let middle: BTreeMap<usize, u64> = (0..k).map(|j| (j, md)).collect();
        let exact: Vec<usize> = (0..=spec.dim()).map(|i| tate_dim_exact(&spec, i)).collect();
        let formula = (0..=spec.dim())
            .map(|i| dim_case3(&ms, &rs, i, &middle, &b))
            .collect::<fermat_weil::Result<Vec<_>>>()?;
        println!("{k} quadrics: exact {exact:?}, formula {formula:?}, #X(F_3) = {}", spec.point_count(1, &b)?);
    }
    Ok(())
}
