//! Exact counting tables behind the grammar sampler.
//!
//! Genus 0: a structure is a sequence of unpaired vertices and units, a unit
//! is a maximal stack of `t >= r` arcs around an interior, and an interior is
//! any structure that is not itself a single unit (that would extend the
//! stack) and is at least `lambda - 1` long when it has no arcs.
//!
//! Genus `g`: a shape with `k` arcs, a stem per shape arc and `2k + 1`
//! genus-0 gaps. A stem is a stack, optionally followed by a nonempty pair of
//! genus-0 fillings and another stem: `M = K + K Q M` with `Q = D^2 - 1`.

use num_bigint::BigInt;
use num_traits::Zero;

/// Coefficient lists indexed by length.
#[derive(Clone, Debug)]
pub struct Tables {
    pub lambda: usize,
    pub r: usize,
    /// Genus-0 structures.
    pub d: Vec<BigInt>,
    /// Units: a maximal stack with its interior.
    pub t: Vec<BigInt>,
    /// Interiors of the innermost arc of a unit.
    pub i: Vec<BigInt>,
    /// Stacks of at least `r` arcs: 1 at even lengths `>= 2r`.
    pub k: Vec<BigInt>,
    /// `D^2 - 1`.
    pub q: Vec<BigInt>,
    /// `K * Q`.
    pub kq: Vec<BigInt>,
    /// Stems.
    pub m: Vec<BigInt>,
}

pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Tables {
    /// Tables for lengths `0..=n`.
    pub fn new(n: usize, lambda: usize, r: usize) -> Self {
        let len = n + 1;
        let mut d = vec![BigInt::zero(); len];
        let mut t = vec![BigInt::zero(); len];
        let mut i = vec![BigInt::zero(); len];
        for m in 0..len {
            // units need 2r closing vertices around an interior
            let mut tm = BigInt::zero();
            let mut s = 2 * r;
            while s <= m {
                tm += &i[m - s];
                s += 2;
            }
            t[m] = tm;
            let mut dm = if m == 0 { BigInt::from(1) } else { d[m - 1].clone() };
            for s in 1..=m {
                if !t[s].is_zero() {
                    dm += &t[s] * &d[m - s];
                }
            }
            d[m] = dm;
            if m + 1 >= lambda {
                i[m] = &d[m] - &t[m];
            }
        }
        let k: Vec<BigInt> = (0..len)
            .map(|m| BigInt::from(u8::from(m % 2 == 0 && m >= 2 * r)))
            .collect();
        let mut q = convolve(&d, &d, len);
        q[0] -= 1;
        let kq = convolve(&k, &q, len);
        let mut stem = vec![BigInt::zero(); len];
        for m in 0..len {
            let mut v = k[m].clone();
            for c in 1..=m {
                if !kq[c].is_zero() {
                    v += &kq[c] * &stem[m - c];
                }
            }
            stem[m] = v;
        }
        Self {
            lambda,
            r,
            d,
            t,
            i,
            k,
            q,
            kq,
            m: stem,
        }
    }

    pub fn max_len(&self) -> usize {
        self.d.len() - 1
    }
}

/// Suffix products for the component sequence `D, (M, D, D)^k`:
/// `suffix[c][m]` counts fillings of components `c..` with total length `m`.
pub(crate) fn suffix_products(tables: &Tables, k: usize) -> Vec<Vec<BigInt>> {
    let len = tables.d.len();
    let parts = component_kinds(k);
    let mut suffix = vec![Vec::new(); parts.len() + 1];
    let mut one = vec![BigInt::zero(); len];
    one[0] = BigInt::from(1);
    suffix[parts.len()] = one;
    for c in (0..parts.len()).rev() {
        let series = match parts[c] {
            Part::Gap => &tables.d,
            Part::Stem => &tables.m,
        };
        suffix[c] = convolve(series, &suffix[c + 1], len);
    }
    suffix
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Part {
    Gap,
    Stem,
}

/// Gap before the first endpoint, then per shape arc its stem and two gaps.
pub(crate) fn component_kinds(k: usize) -> Vec<Part> {
    std::iter::once(Part::Gap)
        .chain((0..k).flat_map(|_| [Part::Stem, Part::Gap, Part::Gap]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{d0_unmarked, dg_series, GFParams};
    use crate::recursions::shape_poly;
    use num_rational::BigRational;

    #[test]
    fn genus_zero_counts_match_series() {
        for (l, r) in [(1, 1), (2, 1), (2, 2), (3, 2), (5, 1), (1, 3)] {
            let t = Tables::new(30, l, r);
            let s = d0_unmarked(l as u32, r as u32, 31).unwrap();
            for m in 0..=30 {
                assert_eq!(BigRational::from_integer(t.d[m].clone()), s.coeff(m), "{l} {r} {m}");
            }
        }
    }

    #[test]
    fn genus_g_counts_match_series() {
        for (l, r) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            let n = 24;
            let t = Tables::new(n, l, r);
            for g in 1..=2u32 {
                let s = shape_poly(g);
                let series = dg_series(&GFParams::new(l as u32, r as u32, g, n + 1).unwrap()).unwrap();
                for m in 0..=n {
                    let total: BigInt = (2 * g as usize..=6 * g as usize - 1)
                        .map(|k| {
                            let sk = s.coeff(k).to_integer();
                            sk * &suffix_products(&t, k)[0][m]
                        })
                        .sum();
                    assert_eq!(BigRational::from_integer(total), series.value.coeff(m), "g={g} m={m}");
                }
            }
        }
    }
}
