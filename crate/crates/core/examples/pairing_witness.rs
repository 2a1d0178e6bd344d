//! Rational powers of products of Weil numbers and the pairing structure of
//! a Tate class on a product of curves over F_31.

use fermat_weil::spectrum::{factor_spectrum, Factor};
use fermat_weil::tate::{pairing_witness, product_rationality};
use fermat_weil::{Budget, CycInt, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let b = Budget::default();
    let t = FieldTable::new(31, 1, &b)?;
    let level = 15;
    let h1 = |m: u32| -> fermat_weil::Result<Vec<CycInt>> {
        let s = factor_spectrum(&Factor::fermat(m, 1), &t, &b)?;
        s.h(1).iter().map(|e| e.to_cyc(31, level)).collect()
    };
    let (a3, a5) = (h1(3)?, h1(5)?);

    let alpha = &a3[0];
    println!("alpha = {alpha}");
    println!("alpha * conj(alpha): {:?}", product_rationality(&[alpha.clone(), alpha.conj()]));
    println!("alpha * alpha: {:?}", product_rationality(&[alpha.clone(), alpha.clone()]));

    let beta = &a5[1];
    let four = [alpha.clone(), beta.clone(), alpha.conj(), beta.conj()];
    match pairing_witness(&four, 31, 2)? {
        Some(w) => println!("pairs {:?}, orders {:?}, N = {}", w.pairs, w.pair_orders, w.n),
        None => println!("no pairing"),
    }
    let mixed = [alpha.clone(), beta.clone()];
    println!("alpha * beta rational power: {:?}", product_rationality(&mixed));
    Ok(())
}
