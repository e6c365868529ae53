//! Uniform random structures and their statistics.
//!
//! Run with `cargo run --release --example sampling`.

use rna_topology::genfun::{moments, GFParams};
use rna_topology::sampler::{empirical_stats, sample_grammar, GrammarSampler, SampleSpec, GENERATOR_ID};

fn main() -> rna_topology::Result<()> {
    let spec = SampleSpec::new(80, 1, 2, 2).count(5).seed(11);
    println!("# {GENERATOR_ID}");
    for d in sample_grammar(&spec)? {
        println!("{d}");
    }

    let spec = SampleSpec::new(60, 1, 1, 1).count(20_000).seed(12);
    let sampler = GrammarSampler::new(&spec, 200)?;
    println!("\nfamily size d_1(60) = {}", sampler.family_size());
    let report = empirical_stats(&sampler.sample(&spec)?);
    let (mean, var) = moments(&GFParams::new(1, 1, 1, 61)?, 60)?;
    println!(
        "mean arcs {:.4} (exact {:.4}), variance {:.3} (exact {:.3})",
        report.mean_arcs,
        num_traits::ToPrimitive::to_f64(&mean).unwrap_or(f64::NAN),
        report.arc_variance(),
        num_traits::ToPrimitive::to_f64(&var).unwrap_or(f64::NAN),
    );
    println!("pseudoknot blocks per structure: {:?}", report.pk_means);
    println!("loops per structure: {:?}", report.loop_means);
    Ok(())
}
