//! Exact tables: chord-diagram counts by genus, shape polynomials,
//! irreducible-shadow polynomials and their pseudoknot-marked refinements.

mod irreducible;
mod marked;
mod multiloop;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::series::{puiseux_expand, BiPolynomial, Polynomial, TruncatedSeries};
use crate::Result;

pub use irreducible::{enumerated_irreducible_counts, IrreducibleSource, IrreducibleTable};
pub use marked::{marked_shape_poly, shape_poly_from_irreducibles, tseries_compose};
pub use multiloop::{enumerate_multiloop_shape_poly, multiloop_shape_poly};

/// Exact non-negative integers indexed by `(genus, index)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoefficientTable {
    pub entries: BTreeMap<(u32, usize), BigInt>,
}

impl CoefficientTable {
    pub fn get(&self, g: u32, n: usize) -> BigInt {
        self.entries.get(&(g, n)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_csv(&self, index_name: &str) -> String {
        let mut s = format!("genus,{index_name},count\n");
        for ((g, n), c) in &self.entries {
            let _ = writeln!(s, "{g},{n},{c}");
        }
        s
    }
}

/// `c_g(n)`, the number of genus-`g` matchings with `n` arcs, for all
/// `g <= g_max` and `n <= n_max`, from
/// `(n+1) c_g(n) = 2(2n-1) c_g(n-1) + (n-1)(2n-1)(2n-3) c_{g-1}(n-2)`.
pub fn chord_counts(g_max: u32, n_max: usize) -> CoefficientTable {
    let mut t = CoefficientTable::default();
    for g in 0..=g_max {
        for n in 0..=n_max {
            let c = if n == 0 {
                BigInt::from(u32::from(g == 0))
            } else {
                let nn = BigInt::from(n);
                let a = BigInt::from(2 * (2 * n - 1)) * t.get(g, n - 1);
                let b = if g >= 1 && n >= 2 {
                    BigInt::from((n - 1) * (2 * n - 1)) * BigInt::from(2 * n - 3) * t.get(g - 1, n - 2)
                } else {
                    BigInt::zero()
                };
                let num = a + b;
                debug_assert!((&num % (&nn + 1u32)).is_zero());
                num / (nn + 1u32)
            };
            t.entries.insert((g, n), c);
        }
    }
    t
}

/// `kappa_g(n)` as the coefficients of a polynomial in `x`, nonzero exactly
/// for `2g <= n <= 3g-1`.
///
/// `(n+1) k_g(n) = (n-1)(2n-1)(2n-3) k_{g-1}(n-2) + 2(2n-1)(2n-3)(2n-5) k_{g-1}(n-3)`
/// with `k_1(2) = 1`.
pub fn kappa(g: u32) -> Polynomial {
    assert!(g >= 1, "kappa is defined for genus at least 1");
    let mut prev: Vec<BigInt> = vec![BigInt::zero(), BigInt::zero(), BigInt::one()];
    for gg in 2..=g as usize {
        let top = 3 * gg - 1;
        let mut cur = vec![BigInt::zero(); top + 1];
        let at = |v: &Vec<BigInt>, k: usize| v.get(k).cloned().unwrap_or_else(BigInt::zero);
        for n in 2 * gg..=top {
            let n_i = n as i64;
            let a = BigInt::from((n_i - 1) * (2 * n_i - 1) * (2 * n_i - 3)) * at(&prev, n - 2);
            let b = BigInt::from(2 * (2 * n_i - 1) * (2 * n_i - 3) * (2 * n_i - 5)) * at(&prev, n - 3);
            let num = a + b;
            debug_assert!((&num % BigInt::from(n + 1)).is_zero());
            cur[n] = num / BigInt::from(n + 1);
        }
        prev = cur;
    }
    Polynomial::from_integers(prev)
}

/// Generating polynomial of genus-`g` shapes by arc count:
/// `S_g(x) = sum_n kappa_g(n) x^n (1+x)^(n+1)`.
pub fn shape_poly(g: u32) -> Polynomial {
    let k = kappa(g);
    let mut s = Polynomial::zero();
    for (n, c) in k.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let term = &Polynomial::monomial(n, c.clone()) * &Polynomial::one_plus_x_pow(n + 1);
            s = &s + &term;
        }
    }
    s
}

/// `C_0(x)`, the Catalan series, to `order`.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let f = TruncatedSeries::from_integers([1, -4], order + 1);
    let num = TruncatedSeries::one(order + 1)
        .sub(&f.sqrt().expect("constant term 1"))
        .expect("same order");
    num.shift_down(1)
        .expect("vanishes at 0")
        .scale(&BigRational::new(1.into(), 2.into()))
}

/// Which construction to use for `C_g(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CgRoute {
    /// The three-term recursion in `n` and `g`.
    Recursion,
    /// `C_0 S_g(x C_0^2 / (1 - x C_0^2))`.
    ShapeInflation,
    /// `sum kappa_g(n) x^n (1-4x)^-(n+1/2)`.
    ClosedForm,
}

/// `C_g(x)` to `order` by the chosen route.
pub fn cg_series(g: u32, order: usize, route: CgRoute) -> TruncatedSeries {
    match route {
        CgRoute::Recursion => {
            let t = chord_counts(g, order.saturating_sub(1));
            TruncatedSeries::from_coeffs(
                (0..order).map(|n| BigRational::from_integer(t.get(g, n))).collect(),
                order,
            )
        }
        CgRoute::ShapeInflation => {
            let c0 = catalan_series(order);
            if g == 0 {
                return c0;
            }
            let x = TruncatedSeries::monomial(1, order);
            let xc2 = x.mul(&c0.square()).expect("same order");
            let u = xc2
                .div(&TruncatedSeries::one(order).sub(&xc2).expect("same order"))
                .expect("unit constant term");
            c0.mul(&u.compose_poly(&shape_poly(g))).expect("same order")
        }
        CgRoute::ClosedForm => {
            if g == 0 {
                return catalan_series(order);
            }
            let k = kappa(g);
            let mut acc = TruncatedSeries::zero(order);
            for (n, c) in k.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let term = puiseux_expand(n, order).shift_up(n).scale(c);
                    acc = acc.add(&term).expect("same order");
                }
            }
            acc
        }
    }
}

/// Polynomial in `x` as a sorted `[exponent, "coefficient"]` list.
pub fn poly_to_json(p: &Polynomial) -> serde_json::Value {
    serde_json::Value::Array(
        p.to_terms()
            .into_iter()
            .map(|(e, c)| serde_json::json!([e, c]))
            .collect(),
    )
}

/// Bivariate polynomial as a sorted `[[x exp, y exp], "coefficient"]` list.
pub fn bipoly_to_json(p: &BiPolynomial) -> serde_json::Value {
    serde_json::Value::Array(
        p.to_terms()
            .into_iter()
            .map(|((i, j), c)| serde_json::json!([[i, j], c]))
            .collect(),
    )
}

/// Reads a polynomial in the [`poly_to_json`] format.
pub fn poly_from_json(v: &serde_json::Value) -> Result<Polynomial> {
    let terms: Vec<(usize, String)> = serde_json::from_value(v.clone())?;
    Polynomial::from_terms(&terms)
        .ok_or_else(|| crate::Error::InvalidParams("bad polynomial coefficient".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(p: &Polynomial, k: usize) -> i64 {
        i64::try_from(p.coeff(k).to_integer()).unwrap()
    }

    #[test]
    fn chord_count_values() {
        let t = chord_counts(4, 10);
        assert_eq!(t.get(0, 3), BigInt::from(5));
        assert_eq!(t.get(1, 2), BigInt::from(1));
        assert_eq!(t.get(1, 3), BigInt::from(10));
        // c_g(n) = 0 for 2g > n, and rows sum to (2n-1)!!
        assert!(t.get(2, 3).is_zero());
        let dfact: BigInt = (1..=9u32).map(|k| BigInt::from(2 * k - 1)).product();
        let row: BigInt = (0..=4).map(|g| t.get(g, 9)).sum();
        assert_eq!(row, dfact);
    }

    #[test]
    fn kappa_values_and_support() {
        assert_eq!(kappa(1), Polynomial::from_integers([0, 0, 1]));
        let k2 = kappa(2);
        assert_eq!((int(&k2, 4), int(&k2, 5)), (21, 105));
        for g in 1..=5u32 {
            let k = kappa(g);
            assert_eq!(k.lowest_degree(), Some(2 * g as usize));
            assert_eq!(k.degree(), Some(3 * g as usize - 1));
            assert!(k.coeffs()[2 * g as usize..].iter().all(|c| c > &BigRational::zero()));
        }
    }

    #[test]
    fn shape_polynomials() {
        let s1 = shape_poly(1);
        assert_eq!(
            s1,
            &Polynomial::monomial(2, BigRational::one()) * &Polynomial::one_plus_x_pow(3)
        );
        assert_eq!(s1.eval_at_one(), BigRational::from_integer(8.into()));
        assert_eq!(int(&shape_poly(2), 4), 21);
        for g in 1..=5u32 {
            let s = shape_poly(g);
            assert_eq!(s.lowest_degree(), Some(2 * g as usize));
            assert_eq!(s.degree(), Some(6 * g as usize - 1));
        }
    }

    #[test]
    fn cg_routes_agree() {
        for g in 1..=3 {
            let a = cg_series(g, 20, CgRoute::Recursion);
            assert_eq!(a, cg_series(g, 20, CgRoute::ShapeInflation), "g={g}");
            assert_eq!(a, cg_series(g, 20, CgRoute::ClosedForm), "g={g}");
        }
        let c1 = cg_series(1, 4, CgRoute::ClosedForm);
        assert_eq!(c1.coeff(2), BigRational::one());
        assert_eq!(c1.coeff(3), BigRational::from_integer(10.into()));
    }

    #[test]
    fn json_round_trip() {
        let p = shape_poly(1);
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
        assert_eq!(
            poly_to_json(&p).to_string(),
            r#"[[2,"1"],[3,"3"],[4,"3"],[5,"1"]]"#
        );
    }
}
