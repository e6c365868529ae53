use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::check_ceiling;
use crate::diagram::{matching_genus, Diagram};
use crate::Result;

/// Shadows with more arcs than this cannot be enumerated at all.
const SHADOW_HARD_LIMIT: usize = 11;
/// Shapes of genus `g` have at most `6g - 1` arcs; genus 2 is the last one
/// that is enumerable in practice.
const SHAPE_GENUS_LIMIT: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowInfo {
    pub diagram: Diagram,
    pub genus: u32,
    /// Crossing graph connected.
    pub irreducible: bool,
}

/// Perfect matchings on `0..2k` without 1-arcs or parallel pairs, found by
/// pairing the lowest free point first. Optionally prunes on the genus of
/// the arcs placed so far, which can only grow.
struct MatchingSearch<F> {
    m: usize,
    partner: Vec<usize>,
    max_genus: Option<u32>,
    seen: Vec<bool>,
    visit: F,
}

const FREE: usize = usize::MAX;

impl<F: FnMut(&[usize])> MatchingSearch<F> {
    /// Lower bound on the genus of any completion of the current partial
    /// matching. Walk the boundary with free points passed over; a boundary
    /// cycle through an odd number of free points needs an arc to another
    /// cycle, and each such arc merges two cycles and adds one to the genus.
    fn genus_bound(&mut self) -> u32 {
        let m = self.m;
        self.seen.clear();
        self.seen.resize(m, false);
        let (mut cycles, mut odd, mut arcs2) = (0u32, 0u32, 0u32);
        for start in 0..m {
            if self.seen[start] {
                continue;
            }
            cycles += 1;
            let mut free = 0u32;
            let mut x = start;
            while !self.seen[x] {
                self.seen[x] = true;
                x = if self.partner[x] == FREE {
                    free += 1;
                    x + 1
                } else {
                    arcs2 += 1;
                    self.partner[x] + 1
                } % m;
            }
            odd += free % 2;
        }
        // placed arcs a: genus (a + 1 - cycles) / 2
        let a = arcs2 / 2;
        (a + 1 - cycles) / 2 + odd / 2
    }

    fn pair(&mut self, v: usize, w: usize) {
        if v >= 1 && self.partner[v - 1] == w + 1 {
            return; // would stack on (v-1, w+1)
        }
        self.partner[v] = w;
        self.partner[w] = v;
        if self.max_genus.is_none_or(|g| self.genus_bound() <= g) {
            self.step(v + 1);
        }
        self.partner[v] = FREE;
        self.partner[w] = FREE;
    }

    fn step(&mut self, from: usize) {
        let Some(v) = (from..self.m).find(|&v| self.partner[v] == FREE) else {
            (self.visit)(&self.partner);
            return;
        };
        for w in v + 2..self.m {
            if self.partner[w] == FREE {
                self.pair(v, w);
            }
        }
    }
}

fn search_parallel<T: Send>(
    arcs: usize,
    max_genus: Option<u32>,
    keep: impl Fn(&[usize]) -> Option<T> + Sync,
) -> Vec<T> {
    let m = 2 * arcs;
    if m == 0 {
        return keep(&[]).into_iter().collect();
    }
    (2..m)
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            let mut s = MatchingSearch {
                m,
                partner: vec![FREE; m],
                max_genus,
                seen: Vec::new(),
                visit: |p: &[usize]| out.extend(keep(p)),
            };
            s.pair(0, w);
            drop(s);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn to_diagram(p: &[usize]) -> Diagram {
    Diagram::new(p.len(), (0..p.len()).filter(|&i| p[i] > i).map(|i| (i + 1, p[i] + 1)))
        .expect("perfect matching")
}

/// All shadows with `arc_count` arcs: no 1-arcs, no stacks and every arc
/// crossing another, with genus and irreducibility.
pub fn enumerate_shadows(arc_count: usize, ceiling: usize) -> Result<Vec<ShadowInfo>> {
    check_ceiling("shadow arc count", arc_count, ceiling, SHADOW_HARD_LIMIT)?;
    Ok(search_parallel(arc_count, None, |p| {
        let d = to_diagram(p);
        let arcs = d.arcs();
        let all_cross = arcs
            .iter()
            .all(|&a| arcs.iter().any(|&b| Diagram::crossing(a, b)));
        all_cross.then(|| ShadowInfo {
            genus: matching_genus(p),
            irreducible: d.arc_components().len() == 1,
            diagram: d,
        })
    }))
}

/// All shapes of genus `g` (`1 <= g <= 2`) with `arcs` arcs.
pub fn enumerate_shapes(g: u32, arcs: usize) -> Result<Vec<Diagram>> {
    if g == 0 || g > SHAPE_GENUS_LIMIT {
        return Err(crate::Error::Unsupported(format!(
            "shape enumeration is available for genus 1 and 2, not {g}"
        )));
    }
    Ok(search_parallel(arcs, Some(g), |p| {
        (matching_genus(p) == g).then(|| to_diagram(p))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_SHADOW_CEILING;

    fn irreducible(arcs: usize, g: u32) -> Vec<Diagram> {
        enumerate_shadows(arcs, DEFAULT_SHADOW_CEILING)
            .unwrap()
            .into_iter()
            .filter(|s| s.irreducible && s.genus == g)
            .map(|s| s.diagram)
            .collect()
    }

    #[test]
    fn genus_one_irreducibles() {
        assert_eq!(irreducible(2, 1), ["([)]".parse::<Diagram>().unwrap()]);
        assert_eq!(irreducible(3, 1).len(), 2);
        assert_eq!(irreducible(4, 1).len(), 1);
        assert_eq!(irreducible(5, 1).len(), 0);
        assert_eq!(enumerate_shadows(2, DEFAULT_SHADOW_CEILING).unwrap().len(), 1);
    }

    #[test]
    fn genus_two_at_four_arcs() {
        assert_eq!(irreducible(4, 2).len(), 17);
    }

    #[test]
    fn genus_one_shapes_match_shape_polynomial() {
        // S_1 = x^2 (1+x)^3
        let counts: Vec<usize> = (2..=6).map(|k| enumerate_shapes(1, k).unwrap().len()).collect();
        assert_eq!(counts, [1, 3, 3, 1, 0]);
    }

    #[test]
    fn ceilings() {
        assert!(enumerate_shadows(8, DEFAULT_SHADOW_CEILING).is_err());
        assert!(enumerate_shadows(3, 12).is_err());
        assert!(enumerate_shapes(3, 6).is_err());
    }
}
