//! Invariants over random parameters.

use num_rational::BigRational;
use proptest::prelude::*;

use rna_topology::diagram::PkClass;
use rna_topology::genfun::{counts, d0_residual, d0_series, dg_series, loop_marked_dg, pk_marked_dg, GFParams, LoopKind, MultiLoopRule};
use rna_topology::recursions::IrreducibleTable;
use rna_topology::sampler::{GrammarSampler, SampleSpec};

/// `(lambda, r)` with `lambda <= r + 1`.
fn family() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=4).prop_flat_map(|r| (1..=r + 1, Just(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampled_structures_satisfy_their_family(
        (l, r) in family(),
        g in 0u32..=2,
        n in 0usize..60,
        seed in any::<u64>(),
    ) {
        let spec = SampleSpec::new(n, g, l as usize, r as usize).count(5).seed(seed);
        match GrammarSampler::new(&spec, 200) {
            Ok(s) => {
                let a = s.sample(&spec).unwrap();
                prop_assert_eq!(&a, &s.sample(&spec).unwrap());
                for d in a {
                    prop_assert_eq!(d.len(), n);
                    prop_assert_eq!(d.genus().genus, g);
                    prop_assert!(d.validate_constraints(l as usize, r as usize));
                }
            }
            Err(rna_topology::Error::EmptyFamily { .. }) => {
                let c = counts(&GFParams::new(l, r, g, n + 1).unwrap()).unwrap();
                prop_assert_eq!(c[n].clone(), 0.into());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn markers_vanish_at_y_one((l, r) in family(), g in 1u32..=2, kind in 0usize..6, class in 0usize..4) {
        let p = GFParams::new(l, r, g, 24).unwrap();
        let plain = dg_series(&p).unwrap().value;
        let k = LoopKind::ALL[kind];
        prop_assert_eq!(&loop_marked_dg(k, &p, MultiLoopRule::default()).unwrap().value, &plain);
        let c = PkClass::GENUS_ONE[class];
        prop_assert_eq!(&pk_marked_dg(&p, c, &IrreducibleTable::builtin()).unwrap().value, &plain);
    }

    #[test]
    fn genus_zero_equation_holds(l in 1u32..=8, r in 1u32..=5) {
        let d = d0_series(l, r, 30).unwrap();
        prop_assert!(d0_residual(&d, l, r).unwrap().value.is_zero());
        // every coefficient counts structures, so it is a nonnegative integer
        for c in d.value.coeffs() {
            prop_assert!(c.is_integer() && c >= &BigRational::from_integer(0.into()));
        }
    }
}
