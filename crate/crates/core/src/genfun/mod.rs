//! Generating functions of RNA structures by genus, as truncated power
//! series in `x` (backbone length) with `y`-jets or full `y`-polynomials.
//!
//! With `A = 1 - x^2 y + (x^2 y)^r` and
//! `B = (1 - x) A + (x^2 y)^r (1 + x + ... + x^(lambda-2))`, the genus-0
//! series solves `(x^2 y)^r D_0^2 - B D_0 + A = 0`, and genus `g >= 1`
//! structures are obtained by inflating shapes:
//! `D_g = D_0 S_g(h)` with `h = (x^2 y)^r D_0^2 / (1 - x^2 y - (x^2 y)^r (D_0^2 - 1))`.

mod loops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::PkClass;
use crate::recursions::{cg_series, marked_shape_poly, shape_poly, CgRoute, IrreducibleTable};
use crate::series::{BiPolynomial, BivariateSeries, SeriesError, TruncatedSeries, YJet};
use crate::{Error, Result};

pub use loops::{loop_marked_d0, loop_marked_dg, LoopKind, MultiLoopRule};

type SResult<T> = std::result::Result<T, SeriesError>;

/// Parameters of a structure family and the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GFParams {
    /// Minimum arc length.
    pub lambda: u32,
    /// Minimum stack length.
    pub r: u32,
    pub genus: u32,
    /// Coefficients `x^0 .. x^(order-1)` are exact.
    pub order: usize,
}

impl GFParams {
    pub fn new(lambda: u32, r: u32, genus: u32, order: usize) -> Result<Self> {
        if lambda == 0 || r == 0 {
            return Err(Error::InvalidParams(format!(
                "lambda and r must be at least 1 (got lambda={lambda}, r={r})"
            )));
        }
        if order == 0 {
            return Err(Error::InvalidParams("order must be at least 1".into()));
        }
        Ok(Self {
            lambda,
            r,
            genus,
            order,
        })
    }

    pub fn with_genus(self, genus: u32) -> Self {
        Self { genus, ..self }
    }

    pub fn with_order(self, order: usize) -> Self {
        Self { order, ..self }
    }

    /// Shape inflation needs `lambda <= r + 1` as soon as `g >= 1`.
    pub fn check_shape_range(&self) -> Result<()> {
        if self.genus >= 1 && self.lambda > self.r + 1 {
            return Err(Error::InvalidParams(format!(
                "genus {} needs lambda <= r + 1 (got lambda={}, r={})",
                self.genus, self.lambda, self.r
            )));
        }
        Ok(())
    }

    fn two_r(&self) -> usize {
        2 * self.r as usize
    }
}

/// The polynomials `A(x, y)` and `B(x, y)` of the genus-0 equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ABPair {
    pub a: BiPolynomial,
    pub b: BiPolynomial,
}

pub fn ab_polys(lambda: u32, r: u32) -> ABPair {
    let r = r as usize;
    let x2y_r = BiPolynomial::monomial(2 * r, r, 1.into());
    let a = &(&BiPolynomial::one() - &BiPolynomial::monomial(2, 1, 1.into())) + &x2y_r;
    let one_minus_x = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, -1)]);
    let mut tail = BiPolynomial::zero();
    for i in 0..lambda.saturating_sub(1) as usize {
        tail.add_term(i, 0, 1.into());
    }
    let b = &(&one_minus_x * &a) + &(&x2y_r * &tail);
    ABPair { a, b }
}

/// `(x^2 y)^r`.
fn x2y_r(r: u32) -> BiPolynomial {
    BiPolynomial::monomial(2 * r as usize, r as usize, 1.into())
}

/// Sets `y = 1` in a bivariate polynomial.
fn unmark(p: &BiPolynomial) -> BiPolynomial {
    BiPolynomial::from_x_polynomial(&p.at_y(&BigRational::one()))
}

/// The operations the genus-0 and inflation formulas need, shared by
/// `y`-jets and full bivariate series.
pub trait GfRing: Sized + Clone {
    fn from_bipoly(p: &BiPolynomial, order: usize) -> Self;
    fn order(&self) -> usize;
    fn add(&self, rhs: &Self) -> SResult<Self>;
    fn sub(&self, rhs: &Self) -> SResult<Self>;
    fn mul(&self, rhs: &Self) -> SResult<Self>;
    fn div(&self, rhs: &Self) -> SResult<Self>;
    fn sqrt(&self) -> SResult<Self>;
    fn scale(&self, c: &BigRational) -> Self;
    fn shift_down(&self, k: usize) -> SResult<Self>;
    /// Division by `y^k`.
    fn divide_y_pow(&self, k: usize) -> SResult<Self>;
    /// `f(self, y)`; `self` must vanish at `x = 0`.
    fn compose_into(&self, f: &BiPolynomial) -> SResult<Self>;
}

impl GfRing for YJet {
    fn from_bipoly(p: &BiPolynomial, order: usize) -> Self {
        YJet::from_bipoly(p, order)
    }
    fn order(&self) -> usize {
        YJet::order(self)
    }
    fn add(&self, rhs: &Self) -> SResult<Self> {
        YJet::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> SResult<Self> {
        YJet::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> SResult<Self> {
        YJet::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> SResult<Self> {
        YJet::div(self, rhs)
    }
    fn sqrt(&self) -> SResult<Self> {
        YJet::sqrt(self)
    }
    fn scale(&self, c: &BigRational) -> Self {
        YJet::scale(self, c)
    }
    fn shift_down(&self, k: usize) -> SResult<Self> {
        YJet::shift_down(self, k)
    }
    fn divide_y_pow(&self, k: usize) -> SResult<Self> {
        // jet of y^-k: 1, -k, k(k+1)
        let n = self.order();
        let c = |v: i64| TruncatedSeries::constant(BigRational::from_integer(v.into()), n);
        let k = k as i64;
        let inv = YJet::new(c(1), c(-k), c(k * (k + 1)))?;
        self.mul(&inv)
    }
    fn compose_into(&self, f: &BiPolynomial) -> SResult<Self> {
        if !self.value.coeff(0).is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        Ok(YJet::compose_bipoly(f, self))
    }
}

impl GfRing for BivariateSeries {
    fn from_bipoly(p: &BiPolynomial, order: usize) -> Self {
        BivariateSeries::from_bipoly(p, order)
    }
    fn order(&self) -> usize {
        BivariateSeries::order(self)
    }
    fn add(&self, rhs: &Self) -> SResult<Self> {
        BivariateSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> SResult<Self> {
        BivariateSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> SResult<Self> {
        BivariateSeries::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> SResult<Self> {
        BivariateSeries::div(self, rhs)
    }
    fn sqrt(&self) -> SResult<Self> {
        BivariateSeries::sqrt(self)
    }
    fn scale(&self, c: &BigRational) -> Self {
        BivariateSeries::scale(self, c)
    }
    fn shift_down(&self, k: usize) -> SResult<Self> {
        BivariateSeries::shift_down(self, k)
    }
    fn divide_y_pow(&self, k: usize) -> SResult<Self> {
        BivariateSeries::divide_y_pow(self, k)
    }
    fn compose_into(&self, f: &BiPolynomial) -> SResult<Self> {
        BivariateSeries::compose_bipoly(f, self)
    }
}

/// `D_0` from the closed form. With `marked = false` the arc marker is
/// dropped (`y = 1`).
fn d0_generic<R: GfRing>(lambda: u32, r: u32, order: usize, marked: bool) -> SResult<R> {
    let ABPair { mut a, mut b } = ab_polys(lambda, r);
    let mut x = x2y_r(r);
    if !marked {
        a = unmark(&a);
        b = unmark(&b);
        x = unmark(&x);
    }
    let two_r = 2 * r as usize;
    let big = order + two_r;
    let disc = &(&b * &b) - &(&(&x * &a).scale(&BigInt::from(4)));
    let root = R::from_bipoly(&disc, big).sqrt()?;
    let num = R::from_bipoly(&b, big).sub(&root)?;
    // the numerator vanishes to order 2r; shift_down checks it
    let d = num
        .shift_down(two_r)?
        .scale(&BigRational::new(1.into(), 2.into()));
    if marked {
        d.divide_y_pow(r as usize)
    } else {
        Ok(d)
    }
}

/// The inflation argument `X D_0^2 / (1 - Z - X (D_0^2 - 1))` with
/// `X = x^(2r)` or `(x^2 y)^r` and `Z = x^2` or `x^2 y`.
fn inflation_argument<R: GfRing>(d0: &R, r: u32, marked: bool) -> SResult<R> {
    let n = d0.order();
    let (mut xx, mut z) = (x2y_r(r), BiPolynomial::monomial(2, 1, 1.into()));
    if !marked {
        xx = unmark(&xx);
        z = unmark(&z);
    }
    let xx = R::from_bipoly(&xx, n);
    let one = R::from_bipoly(&BiPolynomial::one(), n);
    let d2 = d0.mul(d0)?;
    let den = one
        .sub(&R::from_bipoly(&z, n))?
        .sub(&xx.mul(&d2.sub(&one)?)?)?;
    xx.mul(&d2)?.div(&den)
}

fn dg_generic<R: GfRing>(p: &GFParams) -> Result<R> {
    p.check_shape_range()?;
    let d0: R = d0_generic(p.lambda, p.r, p.order, true)?;
    if p.genus == 0 {
        return Ok(d0);
    }
    let h = inflation_argument(&d0, p.r, true)?;
    let s = BiPolynomial::from_x_polynomial(&shape_poly(p.genus));
    Ok(d0.mul(&h.compose_into(&s)?)?)
}

/// `D_0(x, y)` as a jet at `y = 1`, `y` marking arcs.
pub fn d0_series(lambda: u32, r: u32, order: usize) -> Result<YJet> {
    GFParams::new(lambda, r, 0, order)?;
    Ok(d0_generic(lambda, r, order, true)?)
}

/// `D_0(x, 1)`.
pub fn d0_unmarked(lambda: u32, r: u32, order: usize) -> Result<TruncatedSeries> {
    GFParams::new(lambda, r, 0, order)?;
    let d: YJet = d0_generic(lambda, r, order, false)?;
    Ok(d.value)
}

/// `(x^2 y)^r D_0^2 - B D_0 + A`, which must vanish identically.
pub fn d0_residual(d0: &YJet, lambda: u32, r: u32) -> Result<YJet> {
    let n = d0.order();
    let ABPair { a, b } = ab_polys(lambda, r);
    let x = YJet::from_bipoly(&x2y_r(r), n);
    let res = x
        .mul(&d0.square())?
        .sub(&YJet::from_bipoly(&b, n).mul(d0)?)?
        .add(&YJet::from_bipoly(&a, n))?;
    Ok(res)
}

/// `D_g(x, y)` as a jet at `y = 1` by shape inflation of `D_0`.
pub fn dg_series(p: &GFParams) -> Result<YJet> {
    dg_generic(p)
}

/// `D_g` via the chord-diagram series: `(A/B) C_g((x^2 y)^r A / B^2)`.
pub fn dg_via_cg(p: &GFParams) -> Result<YJet> {
    p.check_shape_range()?;
    let n = p.order;
    let ABPair { a, b } = ab_polys(p.lambda, p.r);
    let a = YJet::from_bipoly(&a, n);
    let b = YJet::from_bipoly(&b, n);
    let a_over_b = a.div(&b)?;
    let inner = YJet::from_bipoly(&x2y_r(p.r), n)
        .mul(&a_over_b)?
        .div(&b)?;
    let cg = cg_series(p.genus, n + 2, CgRoute::Recursion);
    Ok(a_over_b.mul(&YJet::compose_series(&cg, &inner)?)?)
}

/// Full bivariate `D_g(x, y)` with `y` marking arcs. Intended for small
/// orders, where the exact arc-count distribution is wanted.
pub fn dg_bivariate(p: &GFParams) -> Result<BivariateSeries> {
    dg_generic(p)
}

/// `D^I_g(x, y)` with `y` marking irreducible blocks of class `class`.
pub fn pk_marked_dg(p: &GFParams, class: PkClass, table: &IrreducibleTable) -> Result<YJet> {
    pk_generic(p, class, table)
}

/// Bivariate version of [`pk_marked_dg`], for exact block-count distributions.
pub fn pk_marked_bivariate(
    p: &GFParams,
    class: PkClass,
    table: &IrreducibleTable,
) -> Result<BivariateSeries> {
    pk_generic(p, class, table)
}

fn pk_generic<R: GfRing>(p: &GFParams, class: PkClass, table: &IrreducibleTable) -> Result<R> {
    p.check_shape_range()?;
    if p.genus == 0 {
        return Err(Error::InvalidParams(
            "pseudoknot markers need genus at least 1".into(),
        ));
    }
    let s = marked_shape_poly(p.genus, class, table)?;
    let d0: R = d0_generic(p.lambda, p.r, p.order, false)?;
    let h = inflation_argument(&d0, p.r, false)?;
    Ok(d0.mul(&h.compose_into(&s)?)?)
}

/// `d_g(n)`, the number of structures, as exact integers for `n < order`.
pub fn counts(p: &GFParams) -> Result<Vec<BigInt>> {
    let d = dg_series(p)?;
    Ok(d.value
        .integer_coeffs()
        .expect("structure counts are integers"))
}

/// `P(Y = l) = d_g(n, l) / d_g(n)` for `l = 0 ..= n/2`, `Y` the arc count.
pub fn arc_distribution(p: &GFParams, n: usize) -> Result<Vec<BigRational>> {
    let d = dg_bivariate(&p.with_order(n + 1))?;
    let row = d.coeff(n);
    let total: BigRational = row.coeffs().iter().sum();
    if total.is_zero() {
        return Err(Error::EmptyFamily { n, genus: p.genus });
    }
    Ok((0..=n / 2).map(|l| row.coeff(l) / &total).collect())
}

/// Mean and variance of the arc count over structures of length `n`.
pub fn moments(p: &GFParams, n: usize) -> Result<(BigRational, BigRational)> {
    let d = dg_series(&p.with_order(n + 1))?;
    match (d.mean(n), d.variance(n)) {
        (Some(m), Some(v)) => Ok((m, v)),
        _ => Err(Error::EmptyFamily { n, genus: p.genus }),
    }
}

/// `{"params", "coeffs", "d1", "d2"}` with rational coefficients as strings.
pub fn series_json(params: &impl Serialize, jet: &YJet) -> serde_json::Value {
    serde_json::json!({
        "params": params,
        "coeffs": jet.value.coeff_strings(),
        "d1": jet.d1.coeff_strings(),
        "d2": jet.d2.coeff_strings(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{census_features, count_table, DEFAULT_CEILING};

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coeffs()
            .unwrap()
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn params(lambda: u32, r: u32, g: u32, order: usize) -> GFParams {
        GFParams::new(lambda, r, g, order).unwrap()
    }

    #[test]
    fn ab_examples() {
        let ab = ab_polys(1, 1);
        assert_eq!(ab.a, BiPolynomial::one());
        assert_eq!(ab.b, BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, -1)]));
        let ab = ab_polys(2, 1);
        assert_eq!(ab.a, BiPolynomial::one());
        assert_eq!(
            ab.b,
            BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, -1), (2, 1, 1)])
        );
        let ab = ab_polys(2, 2);
        let a = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (2, 1, -1), (4, 2, 1)]);
        let one_minus_x = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, -1)]);
        assert_eq!(ab.b, &(&one_minus_x * &a) + &BiPolynomial::monomial(4, 2, 1.into()));
        assert_eq!(ab.a, a);
        for (l, r) in [(1, 1), (3, 2), (2, 4)] {
            let ab = ab_polys(l, r);
            assert_eq!(ab.a.coeff(0, 0), 1.into());
            assert_eq!(ab.b.coeff(0, 0), 1.into());
            if r >= 2 {
                assert_eq!(ab.a.x_degree().unwrap(), 2 * r as usize);
            }
        }
    }

    #[test]
    fn d0_examples() {
        let d = d0_series(1, 1, 6).unwrap();
        assert_eq!(ints(&d.value), [1, 1, 2, 4, 9, 21]);
        assert_eq!(d0_series(2, 1, 5).unwrap().value.coeff(4), BigRational::from_integer(4.into()));
        assert_eq!(d0_unmarked(2, 2, 30).unwrap(), d0_series(2, 2, 30).unwrap().value);
    }

    #[test]
    fn d0_residual_vanishes() {
        for (l, r) in [(1, 1), (2, 1), (2, 2), (3, 2), (1, 3), (4, 3)] {
            let d = d0_series(l, r, 60).unwrap();
            let res = d0_residual(&d, l, r).unwrap();
            assert!(res.value.is_zero() && res.d1.is_zero() && res.d2.is_zero(), "{l} {r}");
        }
    }

    #[test]
    fn dg_examples() {
        let d = dg_series(&params(1, 1, 1, 8)).unwrap();
        assert_eq!(ints(&d.value)[..6], [0, 0, 0, 0, 1, 5]);
        for g in 1..=2 {
            let v = ints(&dg_series(&params(1, 1, g, 4 * g as usize + 1)).unwrap().value);
            assert!(v[..4 * g as usize].iter().all(|&c| c == 0));
            assert!(v[4 * g as usize] > 0);
        }
        assert!(dg_series(&params(3, 1, 1, 8)).is_err());
        assert!(dg_series(&params(3, 1, 0, 8)).is_ok());
    }

    #[test]
    fn routes_agree() {
        for (l, r) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            for g in 1..=2 {
                let p = params(l, r, g, 30);
                assert_eq!(dg_series(&p).unwrap(), dg_via_cg(&p).unwrap(), "{l} {r} {g}");
            }
        }
    }

    #[test]
    fn series_match_enumeration() {
        for (l, r) in [(1u32, 1u32), (2, 1), (2, 2)] {
            let table = count_table(11, l as usize, r as usize, DEFAULT_CEILING).unwrap();
            for g in 0..=2 {
                let d = dg_series(&params(l, r, g, 12)).unwrap();
                for n in 0..12 {
                    assert_eq!(d.value.coeff(n), BigRational::from_integer(table.total(g, n).into()));
                    assert_eq!(d.d1.coeff(n), BigRational::from_integer(table.arc_moment(g, n).into()));
                }
            }
        }
    }

    #[test]
    fn distribution() {
        let p = params(1, 1, 1, 1);
        let dist = arc_distribution(&p, 4).unwrap();
        assert_eq!(dist[2], BigRational::one());
        for n in 4..=12 {
            let dist = arc_distribution(&p, n).unwrap();
            assert_eq!(dist.iter().sum::<BigRational>(), BigRational::one());
            let mean: BigRational = dist
                .iter()
                .enumerate()
                .map(|(l, q)| q * BigRational::from_integer(l.into()))
                .sum();
            let var: BigRational = dist
                .iter()
                .enumerate()
                .map(|(l, q)| q * BigRational::from_integer((l * l).into()))
                .sum::<BigRational>()
                - &mean * &mean;
            assert_eq!(moments(&p, n).unwrap(), (mean, var));
            // support: 2gr <= l
            assert!(dist[..2].iter().all(Zero::is_zero));
        }
        assert!(matches!(arc_distribution(&p, 3), Err(Error::EmptyFamily { .. })));
    }

    #[test]
    fn pk_marked() {
        let t = IrreducibleTable::builtin();
        let p = params(1, 1, 1, 11);
        let base = dg_series(&p).unwrap();
        let mut total_d1 = TruncatedSeries::zero(11);
        for class in PkClass::GENUS_ONE {
            let d = pk_marked_dg(&p, class, &t).unwrap();
            assert_eq!(d.value, base.value);
            let expected = if class == PkClass::H { 1 } else { 0 };
            assert_eq!(d.d1.coeff(4), BigRational::from_integer(expected.into()));
            total_d1 = total_d1.add(&d.d1).unwrap();
        }
        // one irreducible block per genus-one structure
        assert_eq!(total_d1, base.value);
        for n in 4..11 {
            let c = census_features(n, 1, 1, 1, DEFAULT_CEILING).unwrap();
            for class in PkClass::GENUS_ONE {
                let d = pk_marked_dg(&p, class, &t).unwrap();
                assert_eq!(d.d1.coeff(n), BigRational::from_integer(c.pk_count(class).into()));
            }
        }
    }

    #[test]
    fn json_shape() {
        let d = d0_series(1, 1, 3).unwrap();
        let v = series_json(&params(1, 1, 0, 3), &d);
        assert_eq!(v["coeffs"], serde_json::json!(["1", "1", "2"]));
        assert_eq!(v["d1"], serde_json::json!(["0", "0", "1"]));
        assert_eq!(v["params"]["lambda"], 1);
    }
}
