//! Brute-force enumeration: the ground truth every counting formula is
//! checked against.

mod enumerate;
mod shadows;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::diagram::{Diagram, LoopCensus, PkClass};
use crate::Result;

pub use enumerate::{enumerate_diagrams, fold_diagrams, for_each_diagram};
pub use shadows::{enumerate_shadows, enumerate_shapes, ShadowInfo};

/// Default largest backbone length for diagram enumeration.
pub const DEFAULT_CEILING: usize = 18;
/// Hard limit regardless of configuration.
pub const MAX_CEILING: usize = 24;
/// Default largest arc count for shadow enumeration.
pub const DEFAULT_SHADOW_CEILING: usize = 7;

/// Which diagrams to keep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumFilter {
    pub lambda: usize,
    pub r: usize,
    /// Allowed genera; `None` keeps all.
    pub genus: Option<Vec<u32>>,
    /// Allowed arc counts; `None` keeps all.
    pub arcs: Option<RangeInclusive<usize>>,
}

impl EnumFilter {
    pub fn new(lambda: usize, r: usize) -> Self {
        Self {
            lambda,
            r,
            genus: None,
            arcs: None,
        }
    }

    pub fn genus(mut self, g: u32) -> Self {
        self.genus = Some(vec![g]);
        self
    }

    pub fn genera(mut self, gs: impl IntoIterator<Item = u32>) -> Self {
        self.genus = Some(gs.into_iter().collect());
        self
    }

    pub fn arcs(mut self, range: RangeInclusive<usize>) -> Self {
        self.arcs = Some(range);
        self
    }

    pub(crate) fn max_genus(&self) -> Option<u32> {
        self.genus.as_ref().and_then(|gs| gs.iter().copied().max())
    }

    pub(crate) fn keeps_genus(&self, g: u32) -> bool {
        self.genus.as_ref().is_none_or(|gs| gs.contains(&g))
    }
}

/// Exact counts `d_g(n, l)` keyed by `(genus, n, arcs)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub entries: BTreeMap<(u32, usize, usize), u64>,
}

impl CountTable {
    pub fn get(&self, g: u32, n: usize, l: usize) -> u64 {
        self.entries.get(&(g, n, l)).copied().unwrap_or(0)
    }

    /// `d_g(n)`, summed over arc counts.
    pub fn total(&self, g: u32, n: usize) -> u64 {
        self.entries
            .range((g, n, 0)..=(g, n, usize::MAX))
            .map(|(_, c)| c)
            .sum()
    }

    /// Sum of `l * d_g(n, l)`.
    pub fn arc_moment(&self, g: u32, n: usize) -> u64 {
        self.entries
            .range((g, n, 0)..=(g, n, usize::MAX))
            .map(|(&(_, _, l), c)| l as u64 * c)
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("genus,n,arcs,count\n");
        for (&(g, n, l), c) in &self.entries {
            let _ = writeln!(s, "{g},{n},{l},{c}");
        }
        s
    }
}

/// Tabulates `d_g(n, l)` for every `n <= n_max`.
pub fn count_table(n_max: usize, lambda: usize, r: usize, ceiling: usize) -> Result<CountTable> {
    let mut table = CountTable::default();
    for n in 0..=n_max {
        let filter = EnumFilter::new(lambda, r);
        let part = fold_diagrams(
            n,
            &filter,
            ceiling,
            BTreeMap::<(u32, usize), u64>::new,
            |acc, d, g| *acc.entry((g, d.arc_count())).or_default() += 1,
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            },
        )?;
        for ((g, l), c) in part {
            table.entries.insert((g, n, l), c);
        }
    }
    Ok(table)
}

/// Feature totals over all structures with fixed `(n, lambda, r, g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FeatureCensus {
    pub structures: u64,
    pub arcs: u64,
    pub loops: LoopCensus,
    /// Numbers of irreducible blocks by class, summed over structures.
    pub pk: BTreeMap<PkClass, u64>,
}

impl FeatureCensus {
    fn merge(mut self, o: Self) -> Self {
        self.structures += o.structures;
        self.arcs += o.arcs;
        self.loops += o.loops;
        for (k, v) in o.pk {
            *self.pk.entry(k).or_default() += v;
        }
        self
    }

    pub fn pk_count(&self, class: PkClass) -> u64 {
        self.pk.get(&class).copied().unwrap_or(0)
    }

    /// Adds one structure's features.
    pub fn record(&mut self, d: &Diagram) -> Result<()> {
        self.structures += 1;
        self.arcs += d.arc_count() as u64;
        self.loops += d.loop_census();
        for comp in d.arc_components() {
            if comp.len() >= 2 {
                *self.pk.entry(d.classify_component(&comp)?).or_default() += 1;
            }
        }
        Ok(())
    }
}

/// Loop and pseudoknot censuses over every structure of length `n` and genus `g`.
pub fn census_features(
    n: usize,
    lambda: usize,
    r: usize,
    g: u32,
    ceiling: usize,
) -> Result<FeatureCensus> {
    let filter = EnumFilter::new(lambda, r).genus(g);
    let result = fold_diagrams(
        n,
        &filter,
        ceiling,
        || Ok(FeatureCensus::default()),
        |acc: &mut Result<FeatureCensus>, d, _| {
            if let Ok(c) = acc {
                if let Err(e) = c.record(d) {
                    *acc = Err(e);
                }
            }
        },
        |a, b| Ok(a?.merge(b?)),
    )?;
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let t = count_table(6, 2, 1, DEFAULT_CEILING).unwrap();
        assert_eq!(t.get(0, 4, 0), 1);
        assert_eq!(t.get(0, 4, 1), 3);
        assert_eq!(t.total(0, 3), 2);
        let t = count_table(6, 1, 1, DEFAULT_CEILING).unwrap();
        assert_eq!(t.total(1, 5), 5);
        assert_eq!(t.total(1, 4), 1);
        let motzkin = [1, 1, 2, 4, 9, 21, 51];
        for (n, m) in motzkin.iter().enumerate() {
            assert_eq!(t.total(0, n), *m);
        }
        assert!(t.to_csv().starts_with("genus,n,arcs,count\n0,0,0,1\n"));
    }

    #[test]
    fn feature_examples() {
        let c = census_features(3, 2, 1, 0, DEFAULT_CEILING).unwrap();
        assert_eq!((c.structures, c.loops.hairpin), (2, 1));
        let c = census_features(4, 1, 1, 1, DEFAULT_CEILING).unwrap();
        assert_eq!(c.pk_count(PkClass::H), 1);
        assert_eq!(c.pk_count(PkClass::K) + c.pk_count(PkClass::L) + c.pk_count(PkClass::M), 0);
        for n in 0..8 {
            let c = census_features(n, 2, 1, 0, DEFAULT_CEILING).unwrap();
            assert_eq!(c.loops.multi, 0, "n = {n}");
        }
        assert!(census_features(8, 2, 1, 0, DEFAULT_CEILING).unwrap().loops.multi > 0);
    }
}
