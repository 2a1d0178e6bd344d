//! The hypothesis checker on a few products of Fermat varieties, printed as JSON.
//!
//! cargo run --example hypothesis_check -- 2 7:1 23:1

use fermat_weil::tate::hypothesis_check;
use fermat_weil::Budget;

fn main() -> fermat_weil::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let configs: Vec<(u64, Vec<(u32, u32)>)> = if args.len() >= 2 {
        let p = args[0].parse().expect("characteristic");
        let factors = args[1..]
            .iter()
            .map(|s| {
                let (m, r) = s.split_once(':').expect("m:r");
                (m.parse().expect("m"), r.parse().expect("r"))
            })
            .collect();
        vec![(p, factors)]
    } else {
        vec![
            (2, vec![(7, 1), (23, 1)]),
            (2, vec![(7, 1), (9, 1)]),
            (3, vec![(2, 2), (4, 2)]),
            (2, vec![(3, 1), (5, 2)]),
        ]
    };
    for (p, factors) in configs {
        let report = hypothesis_check(p, &factors, &Budget::default())?;
        println!("p={p} {factors:?}");
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
    }
    Ok(())
}
