//! Parse structures and inspect their topology.
//!
//! Run with `cargo run --example structures`.

use rna_topology::diagram::Diagram;

fn main() -> rna_topology::Result<()> {
    let inputs = ["((..))", "([)]", "(([[..))]]", "([{)]}", "(.[.<.).].>", "((.[[.))..]]"];
    for text in inputs {
        let d: Diagram = text.parse()?;
        let g = d.genus();
        let classes: Vec<String> = d
            .arc_components()
            .iter()
            .filter(|c| c.len() >= 2)
            .map(|c| d.classify_component(c).map(|k| k.to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "{text:<14} genus {} boundaries {} shape {} pseudoknots [{}]",
            g.genus,
            g.boundary_count,
            d.project_shape(),
            classes.join(", ")
        );
        let loops = d.loop_census();
        println!(
            "{:14} stacks {} hairpins {} bulges {} interior {} multi {}",
            "", loops.stack, loops.hairpin, loops.bulge, loops.interior, loops.multi
        );
    }

    let d: Diagram = "((.[[.))..]]".parse()?;
    println!("\nblocks of {d}:");
    println!("{}", serde_json::to_string_pretty(&d.block_decomposition())?);
    Ok(())
}
