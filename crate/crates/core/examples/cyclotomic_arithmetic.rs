//! Exact arithmetic in Z[zeta_m]: products, Galois conjugates, embeddings and
//! rationality of powers.

use fermat_weil::CycInt;
use num_bigint::BigInt;

fn main() -> fermat_weil::Result<()> {
    let z = CycInt::root(3, 1);
    let alpha = CycInt::parse("-2 - 3*z@3")?;
    println!("zeta_3^2 + zeta_3 + 1 = {}", &(&z * &z) + &(&z + &CycInt::one(3)));
    println!("alpha = {alpha}, conj = {}, alpha*conj = {}", alpha.conj(), alpha.norm_sq());
    for e in alpha.embeddings() {
        println!("  embedding {:.6} {:+.6}i, |.| = {:.6}", e.re, e.im, e.norm());
    }
    println!("alpha^6 = {}", alpha.power(6));
    println!("some power of alpha rational? {:?}", alpha.power_rationality(1, &BigInt::from(7))?);

    // 4i has weight 2 over F_4: (4i)^4 = 4^4
    let beta = CycInt::parse("4*z@4")?;
    println!("beta = {beta}: least N with beta^N rational: {:?}", beta.power_rationality(2, &BigInt::from(4))?);
    println!("beta lifted to level 8: {}", beta.lift(8)?);
    println!("sigma_3(zeta_5 + 2) = {}", CycInt::parse("2 + z@5")?.galois(3)?);
    Ok(())
}
