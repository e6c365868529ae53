use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::{marked::solve_for_irreducible, shape_poly};
use crate::oracle::enumerate_shadows;
use crate::series::Polynomial;
use crate::{Error, Result};

/// Where an irreducible-shadow polynomial came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IrreducibleSource {
    BuiltIn,
    User,
    /// Solved from the shape recursion using `S_g` and lower `I_j`.
    Derived,
}

/// Irreducible-shadow polynomials `I_g(x)` by genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleTable {
    polys: BTreeMap<u32, (Polynomial, IrreducibleSource)>,
}

impl Default for IrreducibleTable {
    fn default() -> Self {
        Self::builtin()
    }
}

impl IrreducibleTable {
    /// `I_1 = x^2 (1+x)^2` and `I_2 = x^4 (1+x)^4 (17 + 92x + 96x^2)`.
    pub fn builtin() -> Self {
        let x = |k: usize| Polynomial::monomial(k, BigRational::from_integer(1.into()));
        let i1 = &x(2) * &Polynomial::one_plus_x_pow(2);
        let i2 = &(&x(4) * &Polynomial::one_plus_x_pow(4)) * &Polynomial::from_integers([17, 92, 96]);
        let mut polys = BTreeMap::new();
        polys.insert(1, (i1, IrreducibleSource::BuiltIn));
        polys.insert(2, (i2, IrreducibleSource::BuiltIn));
        Self { polys }
    }

    /// Installs a user-supplied `I_g`, replacing any existing entry.
    pub fn with_user(mut self, g: u32, p: Polynomial) -> Self {
        self.polys.insert(g, (p, IrreducibleSource::User));
        self
    }

    /// Fills every missing genus up to `g_max` by solving the shape recursion.
    pub fn with_fallback(mut self, g_max: u32) -> Result<Self> {
        for g in 1..=g_max {
            if self.polys.contains_key(&g) {
                continue;
            }
            let shapes: Vec<Polynomial> = std::iter::once(Polynomial::one())
                .chain((1..=g).map(shape_poly))
                .collect();
            let lower: Vec<Polynomial> = (1..g).map(|j| self.get(j)).collect::<Result<_>>()?;
            let p = solve_for_irreducible(&shapes, &lower, g as usize)?;
            self.polys.insert(g, (p, IrreducibleSource::Derived));
        }
        Ok(self)
    }

    pub fn get(&self, g: u32) -> Result<Polynomial> {
        self.polys
            .get(&g)
            .map(|(p, _)| p.clone())
            .ok_or(Error::MissingIrreducible { genus: g })
    }

    pub fn source(&self, g: u32) -> Option<IrreducibleSource> {
        self.polys.get(&g).map(|(_, s)| *s)
    }

    pub fn genera(&self) -> impl Iterator<Item = u32> + '_ {
        self.polys.keys().copied()
    }
}

/// Coefficients `i_g(k)` for `k` in `arcs`, counted by shadow enumeration.
pub fn enumerated_irreducible_counts(
    g: u32,
    arcs: std::ops::RangeInclusive<usize>,
    ceiling: usize,
) -> Result<Vec<(usize, u64)>> {
    arcs.map(|k| {
        let count = enumerate_shadows(k, ceiling)?
            .into_iter()
            .filter(|s| s.irreducible && s.genus == g)
            .count() as u64;
        Ok((k, count))
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_SHADOW_CEILING;

    fn coeff(p: &Polynomial, k: usize) -> u64 {
        u64::try_from(p.coeff(k).to_integer()).unwrap()
    }

    #[test]
    fn builtin_coefficients() {
        let t = IrreducibleTable::builtin();
        let i1 = t.get(1).unwrap();
        assert_eq!([coeff(&i1, 2), coeff(&i1, 3), coeff(&i1, 4)], [1, 2, 1]);
        let i2 = t.get(2).unwrap();
        let row: Vec<u64> = (4..=10).map(|k| coeff(&i2, k)).collect();
        assert_eq!(row, [17, 160, 566, 1004, 961, 476, 96]);
        assert!(matches!(t.get(3), Err(Error::MissingIrreducible { genus: 3 })));
    }

    #[test]
    fn derivation_reproduces_builtin_genus_two() {
        let only_one = IrreducibleTable {
            polys: IrreducibleTable::builtin().polys.into_iter().filter(|(g, _)| *g == 1).collect(),
        };
        let t = only_one.with_fallback(2).unwrap();
        assert_eq!(t.get(2).unwrap(), IrreducibleTable::builtin().get(2).unwrap());
        assert_eq!(t.source(2), Some(IrreducibleSource::Derived));
    }

    #[test]
    fn derived_genus_three_matches_enumeration() {
        let t = IrreducibleTable::builtin().with_fallback(3).unwrap();
        let i3 = t.get(3).unwrap();
        assert_eq!(i3.lowest_degree(), Some(6));
        assert_eq!(i3.degree(), Some(16));
        for (k, c) in enumerated_irreducible_counts(3, 6..=7, DEFAULT_SHADOW_CEILING).unwrap() {
            assert_eq!(coeff(&i3, k), c, "arcs = {k}");
        }
    }

    #[test]
    fn enumeration_matches_builtin() {
        let t = IrreducibleTable::builtin();
        for g in 1..=2 {
            let p = t.get(g).unwrap();
            for (k, c) in enumerated_irreducible_counts(g, 2..=7, DEFAULT_SHADOW_CEILING).unwrap() {
                assert_eq!(coeff(&p, k), c, "g={g} arcs={k}");
            }
        }
    }
}
