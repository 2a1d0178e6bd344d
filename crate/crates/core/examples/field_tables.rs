//! Build GF(p^f), inspect its modulus and generator, and evaluate characters.
//!
//! cargo run --example field_tables -- 3 2

use fermat_weil::{Budget, CharacterIndex, FieldTable};

fn main() -> fermat_weil::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, f) = match args.as_slice() {
        [p, f, ..] => (*p, *f as u32),
        [p] => (*p, 1),
        _ => (3, 2),
    };
    let t = FieldTable::new(p, f, &Budget::default())?;
    println!("GF({p}^{f}): q = {}, modulus (low to high) {:?}, generator {}", t.q(), t.modulus(), t.generator());

    for x in t.nonzero().take(12) {
        println!("  {x:>4} digits {:?} dlog {}", t.digits(x), t.dlog(x)?);
    }

    let m = (t.q() - 1) as u32;
    let chi = CharacterIndex::new(m, 1);
    let g = t.generator();
    let h = t.mul(g, t.add(g, t.one()));
    println!(
        "chi_{m}(g) = z^{}, chi_{m}(g(g+1)) = z^{} = z^{} * z^{}",
        t.char_exponent(chi, g)?,
        t.char_exponent(chi, h)?,
        t.char_exponent(chi, g)?,
        t.char_exponent(chi, t.add(g, t.one()))?
    );
    Ok(())
}
