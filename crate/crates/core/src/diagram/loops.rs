use std::ops::AddAssign;

use serde::Serialize;

use super::Diagram;

/// Numbers of loops of each kind in one structure (or summed over many).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoopCensus {
    pub stack: u64,
    /// Arcs of the shape projection.
    pub stem: u64,
    pub hairpin: u64,
    pub bulge: u64,
    pub interior: u64,
    pub multi: u64,
}

impl AddAssign for LoopCensus {
    fn add_assign(&mut self, o: Self) {
        self.stack += o.stack;
        self.stem += o.stem;
        self.hairpin += o.hairpin;
        self.bulge += o.bulge;
        self.interior += o.interior;
        self.multi += o.multi;
    }
}

enum Closing {
    NotALoop,
    Hairpin,
    Stacked,
    Bulge,
    Interior,
    Multi,
}

/// What the region under arc `(i, j)` looks like at its top level.
///
/// The region is a loop only if it splits into unpaired vertices and arcs
/// lying entirely inside `(i, j)`, side by side.
fn closing(d: &Diagram, i: usize, j: usize) -> Closing {
    let mut inner: Vec<(usize, usize)> = Vec::new();
    let mut k = i + 1;
    while k < j {
        match d.partner(k) {
            None => k += 1,
            Some(p) if p > k && p < j => {
                inner.push((k, p));
                k = p + 1;
            }
            Some(_) => return Closing::NotALoop,
        }
    }
    match inner.as_slice() {
        [] => Closing::Hairpin,
        [(a, b)] => match (a - i - 1, j - b - 1) {
            (0, 0) => Closing::Stacked,
            (0, _) | (_, 0) => Closing::Bulge,
            _ => Closing::Interior,
        },
        _ => Closing::Multi,
    }
}

pub(super) fn census(d: &Diagram) -> LoopCensus {
    let mut c = LoopCensus {
        stack: d.stack_lengths().len() as u64,
        stem: d.project_shape().arc_count() as u64,
        ..LoopCensus::default()
    };
    for &(i, j) in d.arcs() {
        match closing(d, i, j) {
            Closing::Hairpin => c.hairpin += 1,
            Closing::Bulge => c.bulge += 1,
            Closing::Interior => c.interior += 1,
            Closing::Multi => c.multi += 1,
            Closing::Stacked | Closing::NotALoop => {}
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census_of(s: &str) -> LoopCensus {
        s.parse::<Diagram>().unwrap().loop_census()
    }

    #[test]
    fn secondary_loops() {
        let c = census_of("((.((..))..((...)).))");
        assert_eq!(c.multi, 1);
        assert_eq!(c.hairpin, 2);
        assert_eq!(c.stack, 3);
        assert_eq!(c.bulge, 0);
        assert_eq!(c.interior, 0);
        assert_eq!(c.stem, 0);
        let c = census_of("(.((...)))");
        assert_eq!((c.bulge, c.stack, c.hairpin), (1, 2, 1));
        let c = census_of("(.(...).)");
        assert_eq!((c.interior, c.stack, c.hairpin), (1, 2, 1));
        assert_eq!(census_of("(.)").hairpin, 1);
        assert_eq!(census_of("()").hairpin, 1);
    }

    #[test]
    fn pseudoknot_regions_are_not_loops() {
        let c = census_of("([)]");
        assert_eq!((c.hairpin, c.stack, c.stem), (0, 2, 2));
        // hairpin nested inside an H arc still counts
        let c = census_of("(.[.(..).).]");
        assert_eq!(c.hairpin, 1);
        assert_eq!(c.multi, 0);
    }
}
