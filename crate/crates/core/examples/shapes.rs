//! Shape and irreducible-shadow polynomials, plain and marked.
//!
//! Run with `cargo run --release --example shapes`.

use rna_topology::diagram::PkClass;
use rna_topology::oracle::enumerate_shapes;
use rna_topology::recursions::{kappa, marked_shape_poly, shape_poly, IrreducibleTable};

fn main() -> rna_topology::Result<()> {
    for g in 1..=3 {
        println!("kappa_{g}(x) = {}", kappa(g));
        println!("S_{g}(x) = {}", shape_poly(g));
    }

    let table = IrreducibleTable::builtin().with_fallback(3)?;
    for g in 1..=3 {
        println!("I_{g}(x) = {}  ({:?})", table.get(g)?, table.source(g).expect("present"));
    }

    for class in PkClass::GENUS_ONE {
        println!("S^{class}_1(x, y) = {}", marked_shape_poly(1, class, &table)?);
    }

    println!("\ngenus-1 shapes with 4 arcs:");
    for s in enumerate_shapes(1, 4)? {
        println!("  {s}");
    }
    Ok(())
}
