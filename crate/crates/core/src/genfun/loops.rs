//! Loop-marked generating functions.
//!
//! Genus 0 uses the grammar "a structure is a sequence of unpaired vertices
//! and units; a unit is a maximal stack closing one loop". With `u = 1/(1-x)`,
//! `K = s x^(2r) / (1 - x^2)` for the stack and loop markers `s, h, b, i, m`,
//! a unit is `T = K (h x^(lambda-1) u + T (2 b x u + i x^2 u^2) + m (D - u - T u^2))`
//! and `D = u / (1 - T u)`. Eliminating `T` leaves the quadratic
//! `K m D^2 + beta D + c = 0` with `c = 1 - K W`, `W = 2bxu + ix^2u^2 - mu^2` and
//! `beta = K u (h x^(lambda-1) - m) - (1 - x) c`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::{d0_unmarked, GFParams};
use crate::recursions::{multiloop_shape_poly, shape_poly};
use crate::series::{BiPolynomial, Polynomial, TruncatedSeries, YJet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    /// Maximal stacks.
    Stack,
    /// Arcs of the shape, each the spine of one stem.
    Stem,
    Hairpin,
    Bulge,
    Interior,
    Multi,
}

impl LoopKind {
    pub const ALL: [LoopKind; 6] = [
        LoopKind::Stack,
        LoopKind::Stem,
        LoopKind::Hairpin,
        LoopKind::Bulge,
        LoopKind::Interior,
        LoopKind::Multi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LoopKind::Stack => "stack",
            LoopKind::Stem => "stem",
            LoopKind::Hairpin => "hairpin",
            LoopKind::Bulge => "bulge",
            LoopKind::Interior => "interior",
            LoopKind::Multi => "multi",
        }
    }

    /// This kind's total in a loop census.
    pub fn count_in(self, c: &crate::diagram::LoopCensus) -> u64 {
        match self {
            LoopKind::Stack => c.stack,
            LoopKind::Stem => c.stem,
            LoopKind::Hairpin => c.hairpin,
            LoopKind::Bulge => c.bulge,
            LoopKind::Interior => c.interior,
            LoopKind::Multi => c.multi,
        }
    }
}

impl fmt::Display for LoopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LoopKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LoopKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown loop kind {s:?}")))
    }
}

/// How shapes contribute to the multi-loop series in genus `g >= 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum MultiLoopRule {
    /// Also mark multi-loops closed by shape arcs themselves (genus <= 2).
    #[default]
    WithShapeLoops,
    /// Mark only loops inside stems and genus-0 fillings. Undercounts from
    /// length 8 on in genus 1.
    StemsOnly,
}

fn c(v: i64, n: usize) -> YJet {
    YJet::constant(TruncatedSeries::constant(BigRational::from_integer(v.into()), n))
}

fn poly(coeffs: &[i64], n: usize) -> YJet {
    YJet::constant(TruncatedSeries::from_polynomial(&Polynomial::from_integers(coeffs.iter().copied()), n))
}

/// `x^k`.
fn xp(k: usize, n: usize) -> YJet {
    YJet::monomial(k, n)
}

/// `1 / (1 - x)`.
fn seq(n: usize) -> YJet {
    YJet::constant(TruncatedSeries::geometric(n))
}

/// `D^i_0(x, y)` with `y` marking loops of kind `kind`, as a jet at `y = 1`.
pub fn loop_marked_d0(kind: LoopKind, lambda: u32, r: u32, order: usize) -> Result<YJet> {
    let p = GFParams::new(lambda, r, 0, order)?;
    if kind == LoopKind::Stem {
        // genus-0 structures have the empty shape
        return Ok(YJet::constant(d0_unmarked(lambda, r, order)?));
    }
    let two_r = p.two_r();
    let n = order + two_r;
    let y = YJet::y(n);
    let one = c(1, n);
    let mark = |k: LoopKind| if k == kind { y.clone() } else { one.clone() };
    let (s, h, b, i, m) = (
        mark(LoopKind::Stack),
        mark(LoopKind::Hairpin),
        mark(LoopKind::Bulge),
        mark(LoopKind::Interior),
        mark(LoopKind::Multi),
    );
    let u = seq(n);
    let u2 = u.square();
    let x = xp(1, n);
    // K / x^(2r) = s / (1 - x^2)
    let k_red = s.div(&poly(&[1, 0, -1], n))?;
    let k = k_red.shift_up(two_r);
    let w = b
        .mul(&x.mul(&u)?)?
        .scale_int(2)
        .add(&i.mul(&xp(2, n).mul(&u2)?)?)?
        .sub(&m.mul(&u2)?)?;
    let cc = one.sub(&k.mul(&w)?)?;
    let beta = k
        .mul(&u)?
        .mul(&h.mul(&xp(lambda as usize - 1, n))?.sub(&m)?)?
        .sub(&poly(&[1, -1], n).mul(&cc)?)?;
    let a_red = k_red.mul(&m)?;
    let a = a_red.shift_up(two_r);
    let disc = beta.square().sub(&a.mul(&cc)?.scale_int(4))?;
    let num = beta.neg().sub(&disc.sqrt()?)?;
    let d = num.shift_down(two_r)?.div(&a_red.truncate(order).scale_int(2))?;
    Ok(d)
}

/// `D^i_g(x, y)` for `g >= 1`: `D^i_0 S_g(h^i)` with the stem argument `h^i`
/// specialised to the kind. Multi-loops follow `rule`.
pub fn loop_marked_dg(kind: LoopKind, p: &GFParams, rule: MultiLoopRule) -> Result<YJet> {
    p.check_shape_range()?;
    if p.genus == 0 {
        return loop_marked_d0(kind, p.lambda, p.r, p.order);
    }
    let n = p.order;
    let z = loop_marked_d0(kind, p.lambda, p.r, n)?;
    let y = YJet::y(n);
    let one = c(1, n);
    let one_minus_y = one.sub(&y)?;
    let x2r = xp(p.two_r(), n);
    let z2m1 = z.square().sub(&one)?;
    let u = seq(n);
    // the term subtracted from 1 - x^2 in the denominator, over x^(2r)
    let (num, inner) = match kind {
        LoopKind::Stack => (y.mul(&z.square())?, y.mul(&z2m1)?),
        LoopKind::Stem | LoopKind::Hairpin => (z.square(), z2m1.clone()),
        LoopKind::Bulge => {
            let t = xp(1, n).mul(&u)?.scale_int(2).mul(&one_minus_y)?;
            (z.square(), z2m1.sub(&t)?)
        }
        LoopKind::Interior => {
            let t = xp(1, n).mul(&u)?.square().mul(&one_minus_y)?;
            (z.square(), z2m1.sub(&t)?)
        }
        LoopKind::Multi => {
            let t = poly(&[0, 2, -1], n).mul(&u.square())?.mul(&one_minus_y)?;
            (z.square(), y.mul(&z2m1)?.add(&t)?)
        }
    };
    let den = one.sub(&xp(2, n))?.sub(&x2r.mul(&inner)?)?;
    let mut h = x2r.mul(&num)?.div(&den)?;
    let shapes = match (kind, rule) {
        (LoopKind::Stem, _) => {
            h = y.mul(&h)?;
            BiPolynomial::from_x_polynomial(&shape_poly(p.genus))
        }
        (LoopKind::Multi, MultiLoopRule::WithShapeLoops) => multiloop_shape_poly(p.genus)?,
        _ => BiPolynomial::from_x_polynomial(&shape_poly(p.genus)),
    };
    Ok(z.mul(&YJet::compose_bipoly(&shapes, &h))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::dg_series;
    use crate::oracle::{census_features, DEFAULT_CEILING};

    fn int(v: u64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn parse_kinds() {
        for k in LoopKind::ALL {
            assert_eq!(k.name().parse::<LoopKind>().unwrap(), k);
        }
        assert!("pseudo".parse::<LoopKind>().is_err());
    }

    #[test]
    fn hairpin_example() {
        let d = loop_marked_d0(LoopKind::Hairpin, 2, 1, 4).unwrap();
        assert_eq!(d.d1.coeff(3), int(1));
    }

    #[test]
    fn genus_zero_unmarks_and_matches_census() {
        for (l, r) in [(1u32, 1u32), (2, 1), (2, 2), (3, 2)] {
            let base = d0_unmarked(l, r, 12).unwrap();
            for kind in LoopKind::ALL {
                let d = loop_marked_d0(kind, l, r, 12).unwrap();
                assert_eq!(d.value, base, "{kind} {l} {r}");
                for n in 0..12 {
                    let c = census_features(n, l as usize, r as usize, 0, DEFAULT_CEILING).unwrap();
                    assert_eq!(d.d1.coeff(n), int(kind.count_in(&c.loops)), "{kind} {l} {r} n={n}");
                }
            }
        }
    }

    #[test]
    fn higher_genus_matches_census() {
        for (l, r) in [(1u32, 1u32), (2, 1), (2, 2)] {
            for g in 1..=2u32 {
                let p = GFParams::new(l, r, g, 12).unwrap();
                let base = dg_series(&p).unwrap().value;
                let censuses: Vec<_> = (0..12)
                    .map(|n| census_features(n, l as usize, r as usize, g, DEFAULT_CEILING).unwrap())
                    .collect();
                for kind in LoopKind::ALL {
                    let d = loop_marked_dg(kind, &p, MultiLoopRule::default()).unwrap();
                    assert_eq!(d.value, base, "{kind}");
                    for (n, c) in censuses.iter().enumerate() {
                        assert_eq!(d.d1.coeff(n), int(kind.count_in(&c.loops)), "{kind} g={g} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn stems_only_rule_misses_shape_multiloops() {
        let p = GFParams::new(1, 1, 1, 10).unwrap();
        let stems = loop_marked_dg(LoopKind::Multi, &p, MultiLoopRule::StemsOnly).unwrap();
        let full = loop_marked_dg(LoopKind::Multi, &p, MultiLoopRule::WithShapeLoops).unwrap();
        assert_eq!(stems.value, full.value);
        for n in 0..8 {
            assert_eq!(stems.d1.coeff(n), full.d1.coeff(n));
        }
        // the first shape multi-loop needs 4 shape arcs and 8 vertices
        assert!(stems.d1.coeff(8) < full.d1.coeff(8));
    }

    #[test]
    fn stack_argument_reduces_to_unmarked() {
        let p = GFParams::new(2, 2, 1, 20).unwrap();
        let s = loop_marked_dg(LoopKind::Stack, &p, MultiLoopRule::default()).unwrap();
        assert_eq!(s.value, dg_series(&p).unwrap().value);
    }
}
