//! Exact uniform generation of structures with fixed `(n, g, lambda, r)`.
//!
//! Two samplers share one contract. [`sample_enumerative`] draws from the
//! brute-force family and is the ground truth at small `n`;
//! [`sample_grammar`] inflates a random shape, choosing every size split with
//! exact integer weights, and reaches `n` in the hundreds.
//!
//! Draw `i` of a run uses a ChaCha20 generator seeded from the run seed with
//! stream `i`, so results do not depend on the thread count.

mod tables;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, RandBigInt};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::diagram::{Diagram, LoopCensus, PkClass};
use crate::oracle::{enumerate_diagrams, enumerate_shapes, EnumFilter};
use crate::{Error, Result};

pub use tables::Tables;
use tables::{component_kinds, suffix_products, Part};

/// Recorded in sample metadata so a run can be reproduced.
pub const GENERATOR_ID: &str = "chacha20/rand_chacha-0.3/seed_from_u64+stream=index";

/// Largest `n` the grammar sampler accepts by default.
pub const DEFAULT_GRAMMAR_CAP: usize = 200;

/// What to sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub n: usize,
    pub genus: u32,
    pub lambda: usize,
    pub r: usize,
    pub count: usize,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(n: usize, genus: u32, lambda: usize, r: usize) -> Self {
        Self {
            n,
            genus,
            lambda,
            r,
            count: 1,
            seed: 0,
        }
    }

    pub fn count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.lambda == 0 || self.r == 0 {
            return Err(Error::InvalidParams("lambda and r must be at least 1".into()));
        }
        if self.genus >= 1 && self.lambda > self.r + 1 {
            return Err(Error::InvalidParams(format!(
                "lambda = {} exceeds r + 1 = {} in genus {}",
                self.lambda,
                self.r + 1,
                self.genus
            )));
        }
        Ok(())
    }

    fn rng(&self, index: usize) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Uniform index below `total`.
fn below<R: Rng>(rng: &mut R, total: &BigInt) -> BigInt {
    rng.gen_bigint_range(&BigInt::zero(), total)
}

/// Picks the position of the first weight whose cumulative sum exceeds a
/// uniform draw below the weights' total, which must equal `total`.
fn choose<R: Rng>(rng: &mut R, total: &BigInt, weights: impl Iterator<Item = (usize, BigInt)>) -> usize {
    let mut u = below(rng, total);
    let mut last = None;
    for (i, w) in weights {
        if w.is_zero() {
            continue;
        }
        if u < w {
            return i;
        }
        u -= w;
        last = Some(i);
    }
    // only reachable when the weights undershoot the total
    last.expect("weights sum to the total")
}

/// I.i.d. uniform draws from the enumerated family.
pub fn sample_enumerative(spec: &SampleSpec, ceiling: usize) -> Result<Vec<Diagram>> {
    spec.validate()?;
    let filter = EnumFilter::new(spec.lambda, spec.r).genus(spec.genus);
    let family = enumerate_diagrams(spec.n, &filter, ceiling)?;
    if family.is_empty() {
        return Err(Error::EmptyFamily {
            n: spec.n,
            genus: spec.genus,
        });
    }
    Ok((0..spec.count)
        .into_par_iter()
        .map(|i| family[spec.rng(i).gen_range(0..family.len())].clone())
        .collect())
}

/// Uniform draws through the shape grammar, with the default size cap.
pub fn sample_grammar(spec: &SampleSpec) -> Result<Vec<Diagram>> {
    GrammarSampler::new(spec, DEFAULT_GRAMMAR_CAP)?.sample(spec)
}

type ShapeCache = Mutex<HashMap<(u32, usize), Arc<Vec<Diagram>>>>;

fn shapes(g: u32, k: usize) -> Result<Arc<Vec<Diagram>>> {
    static CACHE: OnceLock<ShapeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("shape cache").get(&(g, k)) {
        return Ok(s.clone());
    }
    let list = Arc::new(enumerate_shapes(g, k)?);
    cache.lock().expect("shape cache").insert((g, k), list.clone());
    Ok(list)
}

struct ShapeClass {
    shapes: Arc<Vec<Diagram>>,
    /// Fillings of `D (M D^2)^k` by total length, per suffix of components.
    suffix: Vec<Vec<BigInt>>,
    weight: BigInt,
}

/// Counting tables and shape inventory for one `(n, g, lambda, r)`.
pub struct GrammarSampler {
    n: usize,
    genus: u32,
    tables: Tables,
    classes: Vec<ShapeClass>,
    total: BigInt,
}

/// A stem's stacks and the genus-0 pairs between consecutive stacks, outer first.
struct Stem {
    stacks: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl GrammarSampler {
    pub fn new(spec: &SampleSpec, cap: usize) -> Result<Self> {
        spec.validate()?;
        if spec.n > cap {
            return Err(Error::CeilingExceeded {
                what: "grammar sampler length",
                requested: spec.n,
                ceiling: cap,
            });
        }
        if spec.genus > 2 {
            return Err(Error::Unsupported(format!(
                "the shape inventory covers genus at most 2, not {}",
                spec.genus
            )));
        }
        let tables = Tables::new(spec.n, spec.lambda, spec.r);
        let mut classes = Vec::new();
        let mut total = BigInt::zero();
        if spec.genus == 0 {
            total = tables.d[spec.n].clone();
        } else {
            let g = spec.genus as usize;
            for k in 2 * g..=6 * g - 1 {
                // a k-arc shape needs at least 2rk vertices
                if 2 * spec.r * k > spec.n {
                    break;
                }
                let suffix = suffix_products(&tables, k);
                let shapes = shapes(spec.genus, k)?;
                let weight = BigInt::from(shapes.len()) * &suffix[0][spec.n];
                total += &weight;
                classes.push(ShapeClass { shapes, suffix, weight });
            }
        }
        if total.is_zero() {
            return Err(Error::EmptyFamily {
                n: spec.n,
                genus: spec.genus,
            });
        }
        Ok(Self {
            n: spec.n,
            genus: spec.genus,
            tables,
            classes,
            total,
        })
    }

    /// `d_g(n)`, the size of the family being sampled.
    pub fn family_size(&self) -> &BigInt {
        &self.total
    }

    /// `spec.count` draws, draw `i` from stream `i`.
    pub fn sample(&self, spec: &SampleSpec) -> Result<Vec<Diagram>> {
        if (spec.n, spec.genus) != (self.n, self.genus)
            || (spec.lambda, spec.r) != (self.tables.lambda, self.tables.r)
        {
            return Err(Error::InvalidParams("spec does not match the sampler's tables".into()));
        }
        Ok((0..spec.count)
            .into_par_iter()
            .map(|i| self.draw(&mut spec.rng(i)))
            .collect())
    }

    /// One uniform structure.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> Diagram {
        let mut partner = vec![0usize; self.n + 1];
        if self.genus == 0 {
            self.fill(rng, self.n, 1, &mut partner);
            return Diagram::from_partner(partner);
        }
        let c = choose(rng, &self.total, self.classes.iter().map(|c| c.weight.clone()).enumerate());
        let class = &self.classes[c];
        let shape = &class.shapes[rng.gen_range(0..class.shapes.len())];
        let k = shape.arc_count();
        let kinds = component_kinds(k);

        // split n over the components
        let mut sizes = Vec::with_capacity(kinds.len());
        let mut rem = self.n;
        for (c, kind) in kinds.iter().enumerate() {
            let series = match kind {
                Part::Gap => &self.tables.d,
                Part::Stem => &self.tables.m,
            };
            let next = &class.suffix[c + 1];
            let total = &class.suffix[c][rem];
            let a = choose(rng, total, (0..=rem).map(|a| (a, &series[a] * &next[rem - a])));
            sizes.push(a);
            rem -= a;
        }

        let mut gaps = vec![0; 2 * k + 1];
        gaps[0] = sizes[0];
        let mut stems = Vec::with_capacity(k);
        for a in 0..k {
            stems.push(self.stem(rng, sizes[1 + 3 * a]));
            gaps[2 * a + 1] = sizes[2 + 3 * a];
            gaps[2 * a + 2] = sizes[3 + 3 * a];
        }

        // lay out: gap, then at each shape endpoint the stem half, then a gap
        let arc_of: HashMap<usize, usize> = shape
            .arcs()
            .iter()
            .enumerate()
            .flat_map(|(a, &(i, j))| [(i, a), (j, a)])
            .collect();
        let mut lefts: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut pos = 1;
        self.fill(rng, gaps[0], pos, &mut partner);
        pos += gaps[0];
        for p in 1..=2 * k {
            let a = arc_of[&p];
            let stem = &stems[a];
            if shape.arcs()[a].0 == p {
                for (s, &t) in stem.stacks.iter().enumerate() {
                    if s > 0 {
                        let len = stem.pairs[s - 1].0;
                        self.fill(rng, len, pos, &mut partner);
                        pos += len;
                    }
                    lefts[a].extend(pos..pos + t);
                    pos += t;
                }
            } else {
                let opens = &mut lefts[a];
                for (s, &t) in stem.stacks.iter().enumerate().rev() {
                    for _ in 0..t {
                        let i = opens.pop().expect("stem arcs balance");
                        partner[i] = pos;
                        partner[pos] = i;
                        pos += 1;
                    }
                    if s > 0 {
                        let len = stem.pairs[s - 1].1;
                        self.fill(rng, len, pos, &mut partner);
                        pos += len;
                    }
                }
            }
            self.fill(rng, gaps[p], pos, &mut partner);
            pos += gaps[p];
        }
        debug_assert_eq!(pos, self.n + 1);
        Diagram::from_partner(partner)
    }

    fn stem<R: Rng>(&self, rng: &mut R, mut m: usize) -> Stem {
        let t = &self.tables;
        let mut stem = Stem {
            stacks: Vec::new(),
            pairs: Vec::new(),
        };
        loop {
            // 0 ends the stem with one stack of length m, c > 0 continues
            let c = choose(
                rng,
                &t.m[m],
                (0..=m).map(|c| (c, if c == 0 { t.k[m].clone() } else { &t.kq[c] * &t.m[m - c] })),
            );
            if c == 0 {
                stem.stacks.push(m / 2);
                return stem;
            }
            let a = choose(rng, &t.kq[c], (0..=c).map(|a| (a, &t.k[a] * &t.q[c - a])));
            let s = c - a;
            let left = choose(rng, &t.q[s], (0..=s).map(|l| (l, &t.d[l] * &t.d[s - l])));
            stem.stacks.push(a / 2);
            stem.pairs.push((left, s - left));
            m -= c;
        }
    }

    /// A uniform genus-0 structure on `start..start + m`.
    fn fill<R: Rng>(&self, rng: &mut R, m: usize, start: usize, partner: &mut [usize]) {
        self.fill_from(rng, m, start, partner, false);
    }

    /// With `interior`, the whole range may not be a single unit, and the
    /// first choice is weighted by the interior count instead.
    fn fill_from<R: Rng>(&self, rng: &mut R, m: usize, start: usize, partner: &mut [usize], interior: bool) {
        let t = &self.tables;
        let (mut pos, mut rem, mut first) = (start, m, interior);
        while rem > 0 {
            let total = if first { &t.i[rem] } else { &t.d[rem] };
            let limit = if first { rem - 1 } else { rem };
            let s = choose(
                rng,
                total,
                (0..=limit).map(|s| (s, if s == 0 { t.d[rem - 1].clone() } else { &t.t[s] * &t.d[rem - s] })),
            );
            first = false;
            if s == 0 {
                pos += 1;
                rem -= 1;
            } else {
                self.unit(rng, s, pos, partner);
                pos += s;
                rem -= s;
            }
        }
    }

    fn unit<R: Rng>(&self, rng: &mut R, m: usize, start: usize, partner: &mut [usize]) {
        let t = &self.tables;
        let steps = (t.r..=m / 2).map(|arcs| (arcs, t.i[m - 2 * arcs].clone()));
        let arcs = choose(rng, &t.t[m], steps);
        for a in 0..arcs {
            let (i, j) = (start + a, start + m - 1 - a);
            partner[i] = j;
            partner[j] = i;
        }
        self.fill_from(rng, m - 2 * arcs, start + arcs, partner, true);
    }
}

/// Counts and frequencies over a list of samples.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SampleReport {
    pub samples: u64,
    /// Samples by arc count.
    pub arc_histogram: BTreeMap<usize, u64>,
    pub arc_frequencies: BTreeMap<usize, f64>,
    pub mean_arcs: f64,
    /// Loop totals over all samples.
    pub loops: LoopCensus,
    pub loop_means: BTreeMap<String, f64>,
    /// Irreducible blocks by class, over all samples.
    pub pk: BTreeMap<String, u64>,
    pub pk_means: BTreeMap<String, f64>,
}

impl SampleReport {
    fn add(&mut self, d: &Diagram) {
        self.samples += 1;
        *self.arc_histogram.entry(d.arc_count()).or_default() += 1;
        self.loops += d.loop_census();
        for comp in d.arc_components() {
            if comp.len() >= 2 {
                // components of a valid diagram always classify
                if let Ok(class) = d.classify_component(&comp) {
                    *self.pk.entry(class.to_string()).or_default() += 1;
                }
            }
        }
    }

    /// Adds another report's counts; frequencies are recomputed.
    pub fn merge(mut self, o: Self) -> Self {
        self.samples += o.samples;
        for (k, v) in o.arc_histogram {
            *self.arc_histogram.entry(k).or_default() += v;
        }
        self.loops += o.loops;
        for (k, v) in o.pk {
            *self.pk.entry(k).or_default() += v;
        }
        self.finish();
        self
    }

    fn finish(&mut self) {
        for c in PkClass::GENUS_ONE {
            self.pk.entry(c.to_string()).or_default();
        }
        let n = self.samples.max(1) as f64;
        self.arc_frequencies = self.arc_histogram.iter().map(|(&k, &v)| (k, v as f64 / n)).collect();
        self.mean_arcs = self.arc_histogram.iter().map(|(&k, &v)| (k as u64 * v) as f64).sum::<f64>() / n;
        let l = &self.loops;
        self.loop_means = [
            ("stack", l.stack),
            ("stem", l.stem),
            ("hairpin", l.hairpin),
            ("bulge", l.bulge),
            ("interior", l.interior),
            ("multi", l.multi),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v as f64 / n))
        .collect();
        self.pk_means = self.pk.iter().map(|(k, &v)| (k.clone(), v as f64 / n)).collect();
    }

    /// Sample variance of the arc count.
    pub fn arc_variance(&self) -> f64 {
        let n = self.samples as f64;
        if n < 2.0 {
            return 0.0;
        }
        let m = self.mean_arcs;
        self.arc_histogram
            .iter()
            .map(|(&k, &v)| v as f64 * (k as f64 - m).powi(2))
            .sum::<f64>()
            / (n - 1.0)
    }
}

/// Arc histogram, loop census and pseudoknot classes of `samples`.
pub fn empirical_stats(samples: &[Diagram]) -> SampleReport {
    let mut report = samples
        .par_iter()
        .fold(SampleReport::default, |mut r, d| {
            r.add(d);
            r
        })
        .reduce(SampleReport::default, SampleReport::merge);
    report.finish();
    report
}

/// Pearson goodness of fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: f64,
    pub p_value: f64,
}

/// Tests observed counts against a distribution given by `probabilities`.
pub fn chi_square(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquare> {
    if observed.len() != probabilities.len() || observed.len() < 2 {
        return Err(Error::InvalidParams("need at least two matching cells".into()));
    }
    let total: u64 = observed.iter().sum();
    let statistic = observed
        .iter()
        .zip(probabilities)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (observed.len() - 1) as f64;
    let dist = ChiSquared::new(dof).map_err(|e| Error::InvalidParams(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}

/// Chi-square of `samples` against the uniform law on `family`. Samples
/// outside the family are an error.
pub fn chi_square_uniform(samples: &[Diagram], family: &[Diagram]) -> Result<ChiSquare> {
    let index: HashMap<&Diagram, usize> = family.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut counts = vec![0u64; family.len()];
    for s in samples {
        let i = index
            .get(s)
            .ok_or_else(|| Error::InvalidParams("sample outside the family".into()))?;
        counts[*i] += 1;
    }
    chi_square(&counts, &vec![1.0 / family.len() as f64; family.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{arc_distribution, counts, GFParams};
    use crate::oracle::DEFAULT_CEILING;
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn single_member_family() {
        let spec = SampleSpec::new(4, 1, 1, 1).count(20).seed(3);
        let h: Diagram = "([)]".parse().unwrap();
        for d in sample_enumerative(&spec, DEFAULT_CEILING).unwrap() {
            assert_eq!(d, h);
        }
        for d in sample_grammar(&spec).unwrap() {
            assert_eq!(d, h);
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let spec = SampleSpec::new(30, 1, 2, 1).count(50).seed(42);
        assert_eq!(sample_grammar(&spec).unwrap(), sample_grammar(&spec).unwrap());
        let other = sample_grammar(&spec.clone().seed(43)).unwrap();
        assert_ne!(sample_grammar(&spec).unwrap(), other);
        let spec = SampleSpec::new(9, 1, 1, 1).count(50).seed(42);
        assert_eq!(
            sample_enumerative(&spec, DEFAULT_CEILING).unwrap(),
            sample_enumerative(&spec, DEFAULT_CEILING).unwrap()
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            sample_enumerative(&SampleSpec::new(30, 1, 1, 1), DEFAULT_CEILING),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(matches!(
            sample_enumerative(&SampleSpec::new(3, 1, 1, 1), DEFAULT_CEILING),
            Err(Error::EmptyFamily { .. })
        ));
        assert!(matches!(sample_grammar(&SampleSpec::new(3, 1, 1, 1)), Err(Error::EmptyFamily { .. })));
        assert!(matches!(sample_grammar(&SampleSpec::new(20, 1, 3, 1)), Err(Error::InvalidParams(_))));
        assert!(matches!(sample_grammar(&SampleSpec::new(201, 1, 1, 1)), Err(Error::CeilingExceeded { .. })));
    }

    #[test]
    fn family_size_matches_series() {
        for (l, r) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            for g in 0..=2 {
                let n = 30;
                let sampler = GrammarSampler::new(&SampleSpec::new(n, g, l, r), 200).unwrap();
                let c = counts(&GFParams::new(l as u32, r as u32, g, n + 1).unwrap()).unwrap();
                assert_eq!(sampler.family_size(), &c[n]);
            }
        }
    }

    #[test]
    fn draws_are_valid() {
        for (l, r, g) in [(1, 1, 0), (4, 1, 0), (2, 1, 1), (3, 2, 1), (1, 1, 2), (2, 2, 2)] {
            let spec = SampleSpec::new(40, g, l, r).count(200).seed(7);
            for d in sample_grammar(&spec).unwrap() {
                assert_eq!(d.len(), 40);
                assert_eq!(d.genus().genus, g);
                assert!(d.validate_constraints(l, r), "{}", d.to_dot_bracket().unwrap());
            }
        }
    }

    #[test]
    fn grammar_covers_the_whole_family() {
        // with enough draws every member of a small family appears
        for (n, g, l, r) in [(8, 1, 1, 1), (10, 0, 2, 1), (10, 2, 1, 1), (12, 1, 2, 2)] {
            let spec = SampleSpec::new(n, g, l, r).count(20_000).seed(1);
            let family = enumerate_diagrams(n, &EnumFilter::new(l, r).genus(g), DEFAULT_CEILING).unwrap();
            let seen: HashSet<Diagram> = sample_grammar(&spec).unwrap().into_iter().collect();
            assert_eq!(seen, family.into_iter().collect::<HashSet<_>>(), "n={n} g={g}");
        }
    }

    #[test]
    fn enumerative_frequencies_are_uniform() {
        let spec = SampleSpec::new(8, 1, 1, 1).count(100_000).seed(11);
        let family = enumerate_diagrams(8, &EnumFilter::new(1, 1).genus(1), DEFAULT_CEILING).unwrap();
        let samples = sample_enumerative(&spec, DEFAULT_CEILING).unwrap();
        let mut freq: HashMap<&Diagram, u64> = HashMap::new();
        for s in &samples {
            *freq.entry(s).or_default() += 1;
        }
        let p = 1.0 / family.len() as f64;
        let sd = (spec.count as f64 * p * (1.0 - p)).sqrt();
        for d in &family {
            let c = freq.get(d).copied().unwrap_or(0) as f64;
            assert!((c - spec.count as f64 * p).abs() < 4.0 * sd);
        }
    }

    #[test]
    fn grammar_passes_chi_square() {
        let spec = SampleSpec::new(10, 1, 1, 1).count(40_000).seed(5);
        let family = enumerate_diagrams(10, &EnumFilter::new(1, 1).genus(1), DEFAULT_CEILING).unwrap();
        let chi = chi_square_uniform(&sample_grammar(&spec).unwrap(), &family).unwrap();
        assert!(chi.p_value > 1e-3, "{chi:?}");
    }

    #[test]
    fn arc_histogram_matches_exact_distribution() {
        let spec = SampleSpec::new(16, 1, 1, 1).count(20_000).seed(9);
        let report = empirical_stats(&sample_grammar(&spec).unwrap());
        assert_eq!(report.arc_histogram.values().sum::<u64>(), 20_000);
        let exact = arc_distribution(&GFParams::new(1, 1, 1, 17).unwrap(), 16).unwrap();
        let n = spec.count as f64;
        for (l, p) in exact.iter().enumerate() {
            let p = p.to_f64().unwrap();
            let seen = report.arc_histogram.get(&l).copied().unwrap_or(0) as f64;
            let sd = (n * p * (1.0 - p)).sqrt();
            assert!((seen - n * p).abs() <= 4.0 * sd + 1e-9, "l={l}");
        }
    }

    #[test]
    fn report_for_h_family() {
        let spec = SampleSpec::new(4, 1, 1, 1).count(10);
        let r = empirical_stats(&sample_enumerative(&spec, DEFAULT_CEILING).unwrap());
        assert_eq!(r.pk["H"], 10);
        for c in ["K", "L", "M"] {
            assert_eq!(r.pk[c], 0);
        }
        assert_eq!(r.arc_histogram[&2], 10);
        assert_eq!(r.mean_arcs, 2.0);
    }

    #[test]
    fn chi_square_rejects_skew() {
        let c = chi_square(&[900, 100], &[0.5, 0.5]).unwrap();
        assert!(c.p_value < 1e-6);
        let c = chi_square(&[505, 495], &[0.5, 0.5]).unwrap();
        assert!(c.p_value > 0.5);
    }
}
