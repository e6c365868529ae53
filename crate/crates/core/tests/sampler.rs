//! Sampler statistics against exact values.

use num_traits::ToPrimitive;

use rna_topology::diagram::PkClass;
use rna_topology::genfun::{pk_marked_dg, GFParams};
use rna_topology::oracle::{enumerate_diagrams, EnumFilter, DEFAULT_CEILING};
use rna_topology::recursions::IrreducibleTable;
use rna_topology::sampler::{chi_square_uniform, empirical_stats, sample_enumerative, sample_grammar, SampleSpec};

#[test]
fn h_type_mean_matches_exact_expectation() {
    let n = 18;
    let draws = 50_000;
    let spec = SampleSpec::new(n, 1, 1, 1).count(draws).seed(2024);
    let samples = sample_grammar(&spec).unwrap();
    let report = empirical_stats(&samples);

    let jet = pk_marked_dg(&GFParams::new(1, 1, 1, n + 1).unwrap(), PkClass::H, &IrreducibleTable::builtin()).unwrap();
    let total = jet.value.coeff(n);
    let mean = (jet.d1.coeff(n) / &total).to_f64().unwrap();
    // second factorial moment gives the variance
    let second = (jet.d2.coeff(n) / &total).to_f64().unwrap();
    let var = second + mean - mean * mean;
    let se = (var / draws as f64).sqrt();
    let seen = report.pk_means["H"];
    assert!((seen - mean).abs() <= 4.0 * se, "empirical {seen} exact {mean} se {se}");
}

#[test]
fn grammar_and_enumeration_agree_outside_genus_one() {
    for (n, g, l, r) in [(11, 0, 2, 1), (12, 2, 1, 1), (14, 1, 2, 2)] {
        let family = enumerate_diagrams(n, &EnumFilter::new(l, r).genus(g), DEFAULT_CEILING).unwrap();
        let draws = 20 * family.len();
        let spec = SampleSpec::new(n, g, l, r).count(draws).seed(77);
        let grammar = chi_square_uniform(&sample_grammar(&spec).unwrap(), &family).unwrap();
        let enumerative = chi_square_uniform(&sample_enumerative(&spec, DEFAULT_CEILING).unwrap(), &family).unwrap();
        assert!(grammar.p_value > 1e-3, "grammar n={n} g={g}: {grammar:?}");
        assert!(enumerative.p_value > 1e-3, "enumerative n={n} g={g}: {enumerative:?}");
    }
}

#[test]
fn large_genus_two_draws() {
    let spec = SampleSpec::new(120, 2, 2, 1).count(20).seed(3);
    for d in sample_grammar(&spec).unwrap() {
        assert_eq!(d.genus().genus, 2);
        assert!(d.validate_constraints(2, 1));
    }
}
