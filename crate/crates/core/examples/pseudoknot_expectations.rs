//! Exact expected numbers of H-types, kissing hairpins, 3-knots and 4-knots in
//! genus one, next to their leading-term approximations.
//!
//! Run with `cargo run --release --example pseudoknot_expectations`.

use num_traits::ToPrimitive;
use rna_topology::asymptotics::pk_expectation_asymptotic;
use rna_topology::diagram::PkClass;
use rna_topology::genfun::{pk_marked_dg, GFParams};
use rna_topology::recursions::IrreducibleTable;

fn main() -> rna_topology::Result<()> {
    let top = 500;
    let table = IrreducibleTable::builtin();
    let p = GFParams::new(1, 1, 1, top + 1)?;
    let jets: Vec<_> = PkClass::GENUS_ONE
        .iter()
        .map(|&c| pk_marked_dg(&p, c, &table).map(|j| (c, j)))
        .collect::<Result<_, _>>()?;
    println!("{:>5} {:>6} {:>10} {:>10}", "n", "class", "exact", "leading");
    for n in [50, 100, 200, 400, 500] {
        for (c, jet) in &jets {
            let exact = (jet.d1.coeff(n) / jet.value.coeff(n)).to_f64().unwrap_or(f64::NAN);
            let lead = pk_expectation_asymptotic(*c, n)?;
            println!("{n:>5} {c:>6} {exact:>10.5} {lead:>10.5}");
        }
    }

    // blocks expected in a sample at n = 500, scaled two ways
    println!("\nexpected blocks at n = 500:");
    for c in PkClass::GENUS_ONE {
        let v = pk_expectation_asymptotic(c, 500)?;
        println!("  {c}: {:.1} per 10^4 structures, {:.1} per 10^5 structures", v * 1e4, v * 1e5);
    }
    Ok(())
}
