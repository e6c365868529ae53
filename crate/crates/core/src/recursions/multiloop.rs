//! Shapes with their own multi-loops marked.
//!
//! A shape arc whose interior holds two or more top-level shape arcs, with no
//! arc leaving the interior, closes a multi-loop in every structure projecting
//! to that shape, however the shape is inflated. Those loops are invisible to
//! the stem-level marker, so the multi-loop series needs this refinement of
//! `S_g`. The tables were produced by [`enumerate_multiloop_shape_poly`] and
//! are checked against it in the tests.

use crate::oracle::enumerate_shapes;
use crate::series::BiPolynomial;
use crate::{Error, Result};

/// `(arcs, multi-loops, count)`.
const GENUS_ONE: &[(usize, usize, i64)] = &[(2, 0, 1), (3, 0, 3), (4, 0, 2), (4, 1, 1), (5, 1, 1)];

const GENUS_TWO: &[(usize, usize, i64)] = &[
    (4, 0, 21),
    (5, 0, 196),
    (5, 1, 14),
    (6, 0, 633),
    (6, 1, 206),
    (6, 2, 1),
    (7, 0, 837),
    (7, 1, 892),
    (7, 2, 56),
    (8, 0, 387),
    (8, 1, 1416),
    (8, 2, 400),
    (8, 3, 2),
    (9, 1, 739),
    (9, 2, 801),
    (9, 3, 56),
    (10, 2, 478),
    (10, 3, 152),
    (11, 3, 105),
];

/// `S^ml_g(x, y)`: genus-`g` shapes by arcs (`x`) and shape multi-loops (`y`).
/// Available for genus 1 and 2.
pub fn multiloop_shape_poly(g: u32) -> Result<BiPolynomial> {
    match g {
        0 => Ok(BiPolynomial::one()),
        1 => Ok(BiPolynomial::from_triples(GENUS_ONE.iter().copied())),
        2 => Ok(BiPolynomial::from_triples(GENUS_TWO.iter().copied())),
        _ => Err(Error::Unsupported(format!(
            "multi-loop marked shapes are tabulated for genus at most 2, not {g}"
        ))),
    }
}

/// Builds `S^ml_g` restricted to shapes with at most `max_arcs` arcs by
/// enumerating them.
pub fn enumerate_multiloop_shape_poly(g: u32, max_arcs: usize) -> Result<BiPolynomial> {
    let mut p = BiPolynomial::zero();
    for k in 2 * g as usize..=max_arcs.min(6 * g as usize - 1) {
        for d in enumerate_shapes(g, k)? {
            p.add_term(k, d.loop_census().multi as usize, 1.into());
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursions::shape_poly;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn tables_unmark_to_shape_polynomials() {
        for g in 1..=2 {
            let p = multiloop_shape_poly(g).unwrap();
            assert_eq!(p.at_y(&BigRational::one()), shape_poly(g));
        }
        assert!(multiloop_shape_poly(3).is_err());
    }

    #[test]
    fn genus_one_table_matches_enumeration() {
        assert_eq!(enumerate_multiloop_shape_poly(1, 5).unwrap(), multiloop_shape_poly(1).unwrap());
    }

    #[test]
    fn genus_two_table_matches_enumeration() {
        let full = multiloop_shape_poly(2).unwrap();
        assert_eq!(enumerate_multiloop_shape_poly(2, 11).unwrap(), full);
    }
}
