use std::fmt;

use serde::Serialize;

use super::Diagram;
use crate::{Error, Result};

/// Pseudoknot class of an arc-component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PkClass {
    /// H-type pseudoknot, 2 arcs.
    H,
    /// Kissing hairpin, 3 arcs.
    K,
    /// 3-knot, 3 mutually crossing arcs.
    L,
    /// 4-knot, 4 arcs.
    M,
    HigherGenus(u32),
    SecondaryTrivial,
}

impl PkClass {
    pub const GENUS_ONE: [PkClass; 4] = [PkClass::H, PkClass::K, PkClass::L, PkClass::M];

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H" => Some(Self::H),
            "K" => Some(Self::K),
            "L" => Some(Self::L),
            "M" => Some(Self::M),
            _ => None,
        }
    }
}

impl fmt::Display for PkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::H => write!(f, "H"),
            Self::K => write!(f, "K"),
            Self::L => write!(f, "L"),
            Self::M => write!(f, "M"),
            Self::HigherGenus(g) => write!(f, "genus-{g}"),
            Self::SecondaryTrivial => write!(f, "trivial"),
        }
    }
}

/// The four irreducible shadows of genus one, as arc lists on `2k` points.
///
/// The two three-arc entries are told apart only here: `L` is the one whose
/// arcs pairwise cross. Swapping the arc lists of `K` and `L` relabels every
/// downstream count.
pub const GENUS_ONE_CATALOG: [(PkClass, &[(usize, usize)]); 4] = [
    (PkClass::H, &[(1, 3), (2, 4)]),
    (PkClass::K, &[(1, 3), (2, 5), (4, 6)]),
    (PkClass::L, &[(1, 4), (2, 5), (3, 6)]),
    (PkClass::M, &[(1, 4), (2, 6), (3, 7), (5, 8)]),
];

/// Catalog entry of a genus-one class as a diagram.
pub fn catalog(class: PkClass) -> Option<Diagram> {
    GENUS_ONE_CATALOG
        .iter()
        .find(|(c, _)| *c == class)
        .map(|(_, arcs)| Diagram::new(2 * arcs.len(), arcs.iter().copied()).expect("valid catalog"))
}

pub(super) fn classify(d: &Diagram, component: &[(usize, usize)]) -> Result<PkClass> {
    if component.is_empty() || component.iter().any(|&(i, j)| !d.has_arc(i, j)) {
        return Err(Error::InvalidParams(
            "component must be a nonempty set of arcs of the diagram".into(),
        ));
    }
    if component.len() == 1 {
        return Ok(PkClass::SecondaryTrivial);
    }
    // Everything else inside the block (nested blocks, interior vertices)
    // disappears when only the component's own arcs are kept; collapsing
    // stacks then yields the shadow.
    let shadow = d.induced(component).project_shadow();
    let genus = shadow.genus().genus;
    if shadow.arc_components().len() != 1 || shadow.arc_count() < 2 {
        return Err(Error::NotIrreducible(format!("{component:?}")));
    }
    if genus >= 2 {
        return Ok(PkClass::HigherGenus(genus));
    }
    GENUS_ONE_CATALOG
        .iter()
        .find(|(_, arcs)| shadow.arcs() == *arcs)
        .map(|(c, _)| *c)
        .ok_or_else(|| Error::NotIrreducible(format!("{component:?}")))
}
