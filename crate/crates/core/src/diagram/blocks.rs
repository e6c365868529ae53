use serde::Serialize;

use super::Diagram;

/// An arc-component together with its immediately interior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub arcs: Vec<(usize, usize)>,
    pub interior: Vec<usize>,
    pub children: Vec<Block>,
}

impl Block {
    /// Leftmost and rightmost endpoints.
    pub fn span(&self) -> (usize, usize) {
        span(&self.arcs)
    }

    /// Trivial blocks carry a single arc.
    pub fn is_trivial(&self) -> bool {
        self.arcs.len() == 1
    }

    fn visit<'a>(&'a self, out: &mut Vec<&'a Block>) {
        out.push(self);
        for c in &self.children {
            c.visit(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub exterior: Vec<usize>,
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// All blocks in depth-first order.
    pub fn flatten(&self) -> Vec<&Block> {
        let mut out = Vec::new();
        for b in &self.blocks {
            b.visit(&mut out);
        }
        out
    }
}

fn span(arcs: &[(usize, usize)]) -> (usize, usize) {
    let lo = arcs.iter().map(|a| a.0).min().expect("nonempty component");
    let hi = arcs.iter().map(|a| a.1).max().expect("nonempty component");
    (lo, hi)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

pub(super) fn components(d: &Diagram) -> Vec<Vec<(usize, usize)>> {
    let arcs = d.arcs();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    for a in 0..arcs.len() {
        for b in a + 1..arcs.len() {
            if arcs[b].0 > arcs[a].1 {
                break;
            }
            if Diagram::crossing(arcs[a], arcs[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arcs.len()];
    for a in 0..arcs.len() {
        let r = find(&mut parent, a);
        groups[r].push(arcs[a]);
    }
    // roots are the smallest index, i.e. leftmost arc, so order is preserved
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}

pub(super) fn decompose(d: &Diagram) -> BlockDecomposition {
    let comps = components(d);
    let spans: Vec<(usize, usize)> = comps.iter().map(|c| span(c)).collect();
    // Innermost component whose span strictly contains a point or another span.
    let innermost = |inside: &dyn Fn(usize) -> bool| -> Option<usize> {
        (0..comps.len())
            .filter(|&k| inside(k))
            .min_by_key(|&k| spans[k].1 - spans[k].0)
    };
    let parent: Vec<Option<usize>> = (0..comps.len())
        .map(|c| {
            let (lo, hi) = spans[c];
            innermost(&|k| k != c && spans[k].0 < lo && hi < spans[k].1)
        })
        .collect();
    let mut interior: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    let mut exterior = Vec::new();
    for v in d.unpaired() {
        match innermost(&|k| spans[k].0 < v && v < spans[k].1) {
            Some(k) => interior[k].push(v),
            None => exterior.push(v),
        }
    }
    fn build(
        c: usize,
        comps: &[Vec<(usize, usize)>],
        interior: &[Vec<usize>],
        parent: &[Option<usize>],
    ) -> Block {
        Block {
            arcs: comps[c].clone(),
            interior: interior[c].clone(),
            children: (0..comps.len())
                .filter(|&k| parent[k] == Some(c))
                .map(|k| build(k, comps, interior, parent))
                .collect(),
        }
    }
    let blocks = (0..comps.len())
        .filter(|&c| parent[c].is_none())
        .map(|c| build(c, &comps, &interior, &parent))
        .collect();
    BlockDecomposition { exterior, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::testing::arb_diagram;
    use proptest::prelude::*;

    fn example() -> Diagram {
        Diagram::new(9, [(1, 4), (2, 9), (5, 8), (6, 7)]).unwrap()
    }

    #[test]
    fn components_by_crossing() {
        assert_eq!(
            example().arc_components(),
            vec![vec![(1, 4), (2, 9)], vec![(5, 8)], vec![(6, 7)]]
        );
        let knot = Diagram::new(6, [(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(knot.arc_components().len(), 1);
        let sec: Diagram = "((.)).()".parse().unwrap();
        assert!(sec.arc_components().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn nested_blocks() {
        let bd = example().block_decomposition();
        assert!(bd.exterior.is_empty());
        assert_eq!(bd.blocks.len(), 1);
        let b1 = &bd.blocks[0];
        assert_eq!(b1.arcs, [(1, 4), (2, 9)]);
        assert_eq!(b1.interior, [3]);
        let b2 = &b1.children[0];
        assert_eq!((b2.arcs.as_slice(), b2.interior.as_slice()), (&[(5, 8)][..], &[][..]));
        assert_eq!(b2.children[0].arcs, [(6, 7)]);
    }

    #[test]
    fn stacked_pair_gives_two_nested_trivial_blocks() {
        let bd = "((..))".parse::<Diagram>().unwrap().block_decomposition();
        assert!(bd.exterior.is_empty());
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.blocks[0].is_trivial() && bd.blocks[0].interior.is_empty());
        assert_eq!(bd.blocks[0].children[0].interior, [3, 4]);
    }

    proptest! {
        #[test]
        fn vertex_partition(d in arb_diagram(24)) {
            let bd = d.block_decomposition();
            let mut seen = vec![0u32; d.len() + 1];
            for v in &bd.exterior { seen[*v] += 1; }
            for b in bd.flatten() {
                for &(i, j) in &b.arcs { seen[i] += 1; seen[j] += 1; }
                for v in &b.interior { seen[*v] += 1; }
                // children sit inside their parent's span
                let (lo, hi) = b.span();
                for c in &b.children {
                    let (clo, chi) = c.span();
                    prop_assert!(lo < clo && chi < hi);
                }
            }
            prop_assert!(seen[1..].iter().all(|&c| c == 1));
        }

        #[test]
        fn secondary_forest_mirrors_nesting(d in arb_diagram(20)) {
            prop_assume!(!d.has_crossing());
            let bd = d.block_decomposition();
            prop_assert_eq!(bd.flatten().len(), d.arc_count());
            prop_assert!(bd.flatten().iter().all(|b| b.is_trivial()));
        }
    }
}
