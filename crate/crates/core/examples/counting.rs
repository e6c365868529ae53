//! Count structures through generating functions and confirm small values by
//! brute force.
//!
//! Run with `cargo run --release --example counting`.

use rna_topology::genfun::{counts, GFParams};
use rna_topology::oracle::{count_table, DEFAULT_CEILING};

fn main() -> rna_topology::Result<()> {
    for (lambda, r) in [(1, 1), (2, 1), (2, 2)] {
        println!("lambda = {lambda}, r = {r}");
        let oracle = count_table(12, lambda as usize, r as usize, DEFAULT_CEILING)?;
        for g in 0..=2 {
            let c = counts(&GFParams::new(lambda, r, g, 41)?)?;
            for n in 0..=12 {
                assert_eq!(c[n], oracle.total(g, n).into(), "g={g} n={n}");
            }
            let shown: Vec<String> = c.iter().skip(4 * g as usize).take(8).map(ToString::to_string).collect();
            println!("  genus {g}: {} ... d({}) = {}", shown.join(", "), 40, c[40]);
        }
    }
    println!("series agree with enumeration for n <= 12");
    Ok(())
}
