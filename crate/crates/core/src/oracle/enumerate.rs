use rayon::prelude::*;

use super::{EnumFilter, MAX_CEILING};
use crate::diagram::{matching_genus, Diagram};
use crate::{Error, Result};

pub(crate) fn check_ceiling(what: &'static str, requested: usize, ceiling: usize, hard: usize) -> Result<()> {
    if ceiling > hard {
        return Err(Error::CeilingExceeded {
            what: "configured ceiling",
            requested: ceiling,
            ceiling: hard,
        });
    }
    if requested > ceiling {
        return Err(Error::CeilingExceeded {
            what,
            requested,
            ceiling,
        });
    }
    Ok(())
}

/// Depth-first search over partner tables.
///
/// Vertices are decided left to right. At each free vertex the choices are
/// "unpaired" followed by partners in increasing order, so leaves come out in
/// lexicographic order of the partner table (unpaired read as 0).
struct Search<'f, F> {
    n: usize,
    lambda: usize,
    r: usize,
    max_genus: Option<u32>,
    max_arcs: usize,
    filter: &'f EnumFilter,
    partner: Vec<usize>,
    run: Vec<usize>,
    arcs: usize,
    visit: F,
}

impl<F: FnMut(&Diagram, u32)> Search<'_, F> {
    fn new<'a>(n: usize, filter: &'a EnumFilter, visit: F) -> Search<'a, F> {
        Search {
            n,
            lambda: filter.lambda.max(1),
            r: filter.r.max(1),
            max_genus: filter.max_genus(),
            max_arcs: filter.arcs.as_ref().map_or(usize::MAX, |a| *a.end()),
            filter,
            partner: vec![0; n + 2],
            run: vec![0; n + 2],
            arcs: 0,
            visit,
        }
    }

    fn genus_so_far(&self, upto: usize) -> u32 {
        // arcs whose left end is at most `upto`; their right ends are fixed
        let ends: Vec<usize> = (1..=self.n)
            .filter(|&v| {
                let p = self.partner[v];
                p != 0 && v.min(p) <= upto
            })
            .collect();
        let idx = |v: usize| ends.binary_search(&v).expect("endpoint");
        let m: Vec<usize> = ends.iter().map(|&v| idx(self.partner[v])).collect();
        matching_genus(&m)
    }

    fn add_arc(&mut self, v: usize, w: usize) -> bool {
        self.partner[v] = w;
        self.partner[w] = v;
        self.arcs += 1;
        self.run[v] = if v >= 2 && self.partner[v - 1] == w + 1 {
            self.run[v - 1] + 1
        } else {
            1
        };
        if self.arcs > self.max_arcs {
            return false;
        }
        match self.max_genus {
            Some(gmax) => self.genus_so_far(v) <= gmax,
            None => true,
        }
    }

    fn remove_arc(&mut self, v: usize, w: usize) {
        self.partner[v] = 0;
        self.partner[w] = 0;
        self.arcs -= 1;
    }

    fn try_pair(&mut self, v: usize, w: usize) {
        if self.add_arc(v, w) {
            self.step(v + 1);
        }
        self.remove_arc(v, w);
    }

    fn leaf(&mut self) {
        if let Some(range) = &self.filter.arcs {
            if !range.contains(&self.arcs) {
                return;
            }
        }
        let g = self.genus_so_far(self.n);
        if !self.filter.keeps_genus(g) {
            return;
        }
        let mut partner = self.partner[..=self.n].to_vec();
        partner[0] = 0;
        let d = Diagram::from_partner(partner);
        (self.visit)(&d, g);
    }

    /// Forced partner of `v` when the stack ending at `v - 1` is too short:
    /// `Err(())` means the branch is dead.
    fn forced(&self, v: usize) -> Result<Option<usize>, ()> {
        if v < 2 {
            return Ok(None);
        }
        let p = self.partner[v - 1];
        if p <= v - 1 || self.run[v - 1] >= self.r {
            return Ok(None);
        }
        let w = p - 1;
        if self.partner[v] != 0 || w <= v || self.partner[w] != 0 || w - v < self.lambda {
            return Err(());
        }
        Ok(Some(w))
    }

    fn step(&mut self, v: usize) {
        if v > self.n {
            self.leaf();
            return;
        }
        let forced = match self.forced(v) {
            Err(()) => return,
            Ok(f) => f,
        };
        if let Some(w) = forced {
            self.try_pair(v, w);
            return;
        }
        if self.partner[v] != 0 {
            self.step(v + 1);
            return;
        }
        self.step(v + 1);
        for w in v + self.lambda..=self.n {
            if self.partner[w] == 0 {
                self.try_pair(v, w);
            }
        }
    }

    /// Runs the subtree where vertex 1 takes `choice` (0 for unpaired).
    fn run_from(&mut self, choice: usize) {
        if self.n == 0 {
            self.leaf();
        } else if choice == 0 {
            self.step(2);
        } else {
            self.try_pair(1, choice);
        }
    }
}

fn first_choices(n: usize, filter: &EnumFilter) -> Vec<usize> {
    if n == 0 {
        return vec![0];
    }
    std::iter::once(0)
        .chain((1 + filter.lambda.max(1))..=n)
        .collect()
}

/// Folds over every diagram on `n` vertices passing `filter`, in parallel.
///
/// The search is split by the choice made at vertex 1. Each part folds into
/// its own accumulator; the parts are then merged in a fixed order, so the
/// result does not depend on scheduling.
pub fn fold_diagrams<A, I, F, M>(
    n: usize,
    filter: &EnumFilter,
    ceiling: usize,
    init: I,
    fold: F,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &Diagram, u32) + Sync,
    M: Fn(A, A) -> A,
{
    check_ceiling("backbone length", n, ceiling, MAX_CEILING)?;
    let parts: Vec<A> = first_choices(n, filter)
        .into_par_iter()
        .map(|choice| {
            let mut acc = init();
            let mut s = Search::new(n, filter, |d: &Diagram, g| fold(&mut acc, d, g));
            s.run_from(choice);
            drop(s);
            acc
        })
        .collect();
    Ok(parts.into_iter().reduce(merge).unwrap_or_else(init))
}

/// Every diagram on `n` vertices passing `filter`, each exactly once, in
/// lexicographic order of partner tables.
pub fn enumerate_diagrams(n: usize, filter: &EnumFilter, ceiling: usize) -> Result<Vec<Diagram>> {
    fold_diagrams(
        n,
        filter,
        ceiling,
        Vec::new,
        |v, d, _| v.push(d.clone()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

/// Sequential walk over all partial matchings on `n` vertices.
pub fn for_each_diagram(n: usize, mut f: impl FnMut(&Diagram)) {
    let filter = EnumFilter::new(1, 1);
    for choice in first_choices(n, &filter) {
        let mut s = Search::new(n, &filter, |d: &Diagram, _| f(d));
        s.run_from(choice);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_CEILING;

    fn count(n: usize, filter: &EnumFilter) -> usize {
        enumerate_diagrams(n, filter, DEFAULT_CEILING).unwrap().len()
    }

    #[test]
    fn examples() {
        let ds = enumerate_diagrams(3, &EnumFilter::new(2, 1).genus(0), DEFAULT_CEILING).unwrap();
        assert_eq!(ds, [Diagram::empty(3), Diagram::new(3, [(1, 3)]).unwrap()]);
        let ds = enumerate_diagrams(4, &EnumFilter::new(1, 1).genus(1), DEFAULT_CEILING).unwrap();
        assert_eq!(ds, [Diagram::new(4, [(1, 3), (2, 4)]).unwrap()]);
        assert_eq!(count(6, &EnumFilter::new(1, 1).arcs(3..=3)), 15);
    }

    #[test]
    fn telephone_numbers_and_order() {
        // all partial matchings: 1, 1, 2, 4, 10, 26, 76, 232, 764
        let tel = [1, 1, 2, 4, 10, 26, 76, 232, 764];
        for (n, t) in tel.iter().enumerate() {
            let ds = enumerate_diagrams(n, &EnumFilter::new(1, 1), DEFAULT_CEILING).unwrap();
            assert_eq!(ds.len(), *t);
            let keys: Vec<Vec<usize>> = ds
                .iter()
                .map(|d| (1..=n).map(|v| d.partner(v).unwrap_or(0)).collect())
                .collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn filters_agree_with_post_filtering() {
        for n in 0..=10 {
            let mut all = Vec::new();
            for_each_diagram(n, |d| all.push(d.clone()));
            for (lambda, r) in [(1, 1), (2, 1), (2, 2), (3, 2), (1, 3)] {
                for g in 0..=2 {
                    let filter = EnumFilter::new(lambda, r).genus(g);
                    let expected: Vec<Diagram> = all
                        .iter()
                        .filter(|d| d.validate_constraints(lambda, r) && d.genus().genus == g)
                        .cloned()
                        .collect();
                    let got = enumerate_diagrams(n, &filter, DEFAULT_CEILING).unwrap();
                    assert_eq!(got, expected, "n={n} lambda={lambda} r={r} g={g}");
                }
            }
        }
    }

    #[test]
    fn ceiling() {
        assert!(matches!(
            enumerate_diagrams(19, &EnumFilter::new(1, 1), DEFAULT_CEILING),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(enumerate_diagrams(3, &EnumFilter::new(1, 1), 30).is_err());
    }
}
