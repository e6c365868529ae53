//! Expected numbers of loops of each kind, from marked generating functions.
//!
//! Run with `cargo run --release --example loop_statistics`.

use num_traits::ToPrimitive;
use rna_topology::genfun::{loop_marked_dg, GFParams, LoopKind, MultiLoopRule};

fn main() -> rna_topology::Result<()> {
    let n = 100;
    for g in 0..=2 {
        let p = GFParams::new(1, 1, g, n + 1)?;
        print!("genus {g}, n = {n}:");
        for kind in LoopKind::ALL {
            let jet = loop_marked_dg(kind, &p, MultiLoopRule::default())?;
            let mean = (jet.d1.coeff(n) / jet.value.coeff(n)).to_f64().unwrap_or(f64::NAN);
            print!("  {kind} {mean:.3}");
        }
        println!();
    }
    Ok(())
}
