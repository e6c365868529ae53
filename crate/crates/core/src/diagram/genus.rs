use serde::Serialize;

use super::Diagram;

/// Topological data of the fattened diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub genus: u32,
    /// Number of boundary components.
    pub boundary_count: usize,
    /// Euler characteristic `v - e + r`.
    pub euler: i64,
}

// Half-edge slots per vertex: backbone-left, arc, backbone-right.
const LEFT: usize = 0;
const ARC: usize = 1;
const RIGHT: usize = 2;

/// Counts boundary components by walking the fatgraph.
///
/// Half-edges are `3 * (v - 1) + slot`. The rotation at a vertex is the
/// counter-clockwise order of the upper half-plane drawing (right backbone,
/// arc, left backbone), skipping absent half-edges; a boundary walk steps
/// `h -> rotation(opposite(h))`.
pub(super) fn genus(d: &Diagram) -> GenusResult {
    let n = d.len();
    let v = n as i64;
    let e = n.saturating_sub(1) as i64 + d.arc_count() as i64;
    if n == 0 {
        // the empty backbone is treated as a single point
        return GenusResult {
            genus: 0,
            boundary_count: 1,
            euler: 2,
        };
    }
    let present = |h: usize| -> bool {
        let (vert, slot) = (h / 3 + 1, h % 3);
        match slot {
            LEFT => vert > 1,
            ARC => d.partner(vert).is_some(),
            _ => vert < n,
        }
    };
    let opposite = |h: usize| -> usize {
        let (vert, slot) = (h / 3 + 1, h % 3);
        match slot {
            LEFT => 3 * (vert - 2) + RIGHT,
            RIGHT => 3 * vert + LEFT,
            _ => 3 * (d.partner(vert).expect("arc half-edge") - 1) + ARC,
        }
    };
    let rotate = |h: usize| -> usize {
        // next counter-clockwise: RIGHT -> ARC -> LEFT -> RIGHT
        let base = h - h % 3;
        let mut slot = h % 3;
        loop {
            slot = match slot {
                RIGHT => ARC,
                ARC => LEFT,
                _ => RIGHT,
            };
            if present(base + slot) {
                return base + slot;
            }
        }
    };
    let total = 3 * n;
    let mut seen = vec![false; total];
    let mut r = 0usize;
    for start in 0..total {
        if seen[start] || !present(start) {
            continue;
        }
        r += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = rotate(opposite(h));
        }
    }
    // An isolated vertex (n = 1) has no half-edges but one boundary.
    let r = r.max(1);
    let euler = v - e + r as i64;
    GenusResult {
        genus: ((2 - euler) / 2) as u32,
        boundary_count: r,
        euler,
    }
}

/// Genus from a partner table of a perfect matching on `0..m`, after the
/// backbone is contracted to a point: the boundary count is the number of
/// cycles of `x -> partner(x) + 1 (mod m)`.
pub fn matching_genus(partner: &[usize]) -> u32 {
    let m = partner.len();
    if m == 0 {
        return 0;
    }
    let mut seen = vec![false; m];
    let mut cycles = 0;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = (partner[x] + 1) % m;
        }
    }
    ((m / 2 + 1 - cycles) / 2) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::testing::arb_diagram;
    use proptest::prelude::*;

    /// Same as [`matching_genus`] but for a diagram, ignoring unpaired vertices.
    fn fast_genus(d: &Diagram) -> u32 {
        let ends: Vec<usize> = (1..=d.len()).filter(|&v| d.partner(v).is_some()).collect();
        let index = |v: usize| ends.binary_search(&v).expect("endpoint");
        let partner: Vec<usize> = ends
            .iter()
            .map(|&v| index(d.partner(v).expect("paired")))
            .collect();
        matching_genus(&partner)
    }

    fn g(n: usize, arcs: &[(usize, usize)]) -> GenusResult {
        Diagram::new(n, arcs.iter().copied()).unwrap().genus()
    }

    #[test]
    fn small_cases() {
        assert_eq!(g(4, &[(1, 3), (2, 4)]).genus, 1);
        assert_eq!(g(4, &[(1, 3), (2, 4)]).boundary_count, 1);
        assert_eq!(g(4, &[(1, 4), (2, 3)]).genus, 0);
        let empty = g(3, &[]);
        assert_eq!((empty.genus, empty.boundary_count, empty.euler), (0, 1, 2));
        assert_eq!(g(6, &[(1, 4), (2, 5), (3, 6)]).genus, 1);
        assert_eq!(g(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]).genus, 2);
    }

    #[test]
    fn genus_zero_iff_noncrossing_exhaustive() {
        for n in 0..=10 {
            crate::oracle::for_each_diagram(n, |d| {
                assert_eq!(d.genus().genus == 0, !d.has_crossing(), "{d:?}");
            });
        }
    }

    proptest! {
        #[test]
        fn traversal_agrees_with_permutation(d in arb_diagram(22)) {
            let res = d.genus();
            prop_assert_eq!(res.genus, fast_genus(&d));
            prop_assert_eq!(res.euler, 2 - 2 * res.genus as i64);
        }
    }
}
