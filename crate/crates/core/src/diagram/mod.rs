//! Diagrams: vertices `1..=n` on a backbone with non-incident arcs drawn in
//! the upper half-plane.

mod blocks;
mod classify;
mod genus;
mod loops;
pub mod notation;
mod projection;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use blocks::{Block, BlockDecomposition};
pub use classify::{catalog, PkClass, GENUS_ONE_CATALOG};
pub use genus::{matching_genus, GenusResult};
pub use loops::LoopCensus;
pub use notation::NotationError;

/// A partial matching on the backbone `1..=n`.
///
/// Arcs are stored sorted by left endpoint; `partner[v]` is the other end of
/// the arc at `v`, or 0 when `v` is unpaired.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct Diagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
    partner: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = NotationError;
    fn try_from(j: DiagramJson) -> Result<Self, Self::Error> {
        Diagram::new(j.n, j.arcs.into_iter().map(|[i, k]| (i, k)))
    }
}

impl From<Diagram> for DiagramJson {
    fn from(d: Diagram) -> Self {
        DiagramJson {
            n: d.n,
            arcs: d.arcs.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl Diagram {
    /// Validates and builds a diagram. Pairs may be given in either order.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, NotationError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut partner = vec![0; n + 1];
        let mut list = Vec::new();
        for (a, b) in arcs {
            let (i, j) = (a.min(b), a.max(b));
            if i == 0 || j > n || i == j {
                return Err(NotationError::Invalid(format!(
                    "arc ({a}, {b}) is not a pair of distinct vertices in 1..={n}"
                )));
            }
            if partner[i] != 0 || partner[j] != 0 {
                return Err(NotationError::Invalid(format!(
                    "arc ({i}, {j}) shares an endpoint with another arc"
                )));
            }
            partner[i] = j;
            partner[j] = i;
            list.push((i, j));
        }
        list.sort_unstable();
        Ok(Self {
            n,
            arcs: list,
            partner,
        })
    }

    /// Builds from a partner table (`partner[v] = 0` for unpaired, index 0
    /// ignored) that is already known to be a valid involution.
    pub(crate) fn from_partner(partner: Vec<usize>) -> Self {
        let n = partner.len() - 1;
        let arcs = (1..=n)
            .filter(|&v| partner[v] > v)
            .map(|v| (v, partner[v]))
            .collect();
        Self { n, arcs, partner }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_partner(vec![0; n + 1])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Partner of vertex `v` (1-based), if paired.
    pub fn partner(&self, v: usize) -> Option<usize> {
        match self.partner.get(v) {
            Some(&p) if p != 0 => Some(p),
            _ => None,
        }
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && self.partner[i] == j && j != 0
    }

    pub fn unpaired(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|&v| self.partner[v] == 0)
    }

    pub fn genus(&self) -> GenusResult {
        genus::genus(self)
    }

    /// Is `(i1, j1)` crossing `(i2, j2)` in either order?
    pub fn crossing(a: (usize, usize), b: (usize, usize)) -> bool {
        let (a, b) = if a.0 < b.0 { (a, b) } else { (b, a) };
        a.0 < b.0 && b.0 < a.1 && a.1 < b.1
    }

    pub fn has_crossing(&self) -> bool {
        self.arcs
            .iter()
            .enumerate()
            .any(|(k, &a)| self.arcs[k + 1..].iter().any(|&b| Self::crossing(a, b)))
    }

    /// Lengths of the maximal stacks, one entry per stack.
    pub fn stack_lengths(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|&&(i, j)| !(i > 1 && self.has_arc(i - 1, j + 1)))
            .map(|&(i, j)| {
                let mut len = 1;
                while i + len < j - len && self.has_arc(i + len, j - len) {
                    len += 1;
                }
                len
            })
            .collect()
    }

    /// Every arc has length at least `lambda` and every stack at least `r` arcs.
    pub fn validate_constraints(&self, lambda: usize, r: usize) -> bool {
        self.arcs.iter().all(|&(i, j)| j - i >= lambda)
            && self.stack_lengths().into_iter().all(|len| len >= r)
    }

    /// Diagram spanned by a subset of arcs, relabelled onto its endpoints only.
    pub fn induced(&self, arcs: &[(usize, usize)]) -> Diagram {
        let mut ends: Vec<usize> = arcs.iter().flat_map(|&(i, j)| [i, j]).collect();
        ends.sort_unstable();
        let pos = |v: usize| ends.binary_search(&v).expect("endpoint") + 1;
        Diagram::new(ends.len(), arcs.iter().map(|&(i, j)| (pos(i), pos(j))))
            .expect("subset of a valid matching")
    }

    pub fn project_shape(&self) -> Diagram {
        projection::shape(self)
    }

    pub fn project_shadow(&self) -> Diagram {
        projection::shadow(self)
    }

    /// Connected components of the crossing graph, each sorted, ordered by
    /// leftmost endpoint.
    pub fn arc_components(&self) -> Vec<Vec<(usize, usize)>> {
        blocks::components(self)
    }

    pub fn block_decomposition(&self) -> BlockDecomposition {
        blocks::decompose(self)
    }

    /// Pseudoknot class of an arc-component of this diagram.
    pub fn classify_component(&self, component: &[(usize, usize)]) -> crate::Result<PkClass> {
        classify::classify(self, component)
    }

    /// Classes of every arc-component, in component order.
    pub fn classify_all(&self) -> crate::Result<Vec<PkClass>> {
        self.arc_components()
            .iter()
            .map(|c| self.classify_component(c))
            .collect()
    }

    pub fn loop_census(&self) -> LoopCensus {
        loops::census(self)
    }

    /// Extended dot-bracket rendering.
    pub fn to_dot_bracket(&self) -> Result<String, NotationError> {
        notation::emit(self)
    }
}

impl FromStr for Diagram {
    type Err = NotationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        notation::parse(s)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, arcs={:?})", self.n, self.arcs)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_dot_bracket() {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{self:?}"),
        }
    }
}
