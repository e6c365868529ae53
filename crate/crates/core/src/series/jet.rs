use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_orders, BiPolynomial, SeriesError, TruncatedSeries};

type SResult<T> = Result<T, SeriesError>;

/// Second-order jet in `y` at `y = 1` of a bivariate series `F(x, y)`:
/// the series `F(x, 1)`, `F_y(x, 1)` and `F_yy(x, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YJet {
    pub value: TruncatedSeries,
    pub d1: TruncatedSeries,
    pub d2: TruncatedSeries,
}

impl YJet {
    pub fn new(value: TruncatedSeries, d1: TruncatedSeries, d2: TruncatedSeries) -> SResult<Self> {
        check_orders(value.order(), d1.order())?;
        check_orders(value.order(), d2.order())?;
        Ok(Self { value, d1, d2 })
    }

    /// A series that does not depend on `y`.
    pub fn constant(value: TruncatedSeries) -> Self {
        let n = value.order();
        Self {
            value,
            d1: TruncatedSeries::zero(n),
            d2: TruncatedSeries::zero(n),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(TruncatedSeries::one(order))
    }

    /// `x^k`, independent of `y`.
    pub fn monomial(k: usize, order: usize) -> Self {
        Self::constant(TruncatedSeries::monomial(k, order))
    }

    /// The jet of `y^j`: `1`, `j`, `j(j-1)`.
    pub fn y_pow(j: usize, order: usize) -> Self {
        let int = |v: usize| {
            TruncatedSeries::constant(BigRational::from_integer(v.into()), order)
        };
        Self {
            value: TruncatedSeries::one(order),
            d1: int(j),
            d2: int(j * j.saturating_sub(1)),
        }
    }

    /// The jet of `y` itself.
    pub fn y(order: usize) -> Self {
        Self::y_pow(1, order)
    }

    /// Jet of a polynomial in `x` and `y`.
    pub fn from_bipoly(p: &BiPolynomial, order: usize) -> Self {
        let one = BigRational::one();
        let dy = p.partial_y();
        Self {
            value: TruncatedSeries::from_polynomial(&p.at_y(&one), order),
            d1: TruncatedSeries::from_polynomial(&dy.at_y(&one), order),
            d2: TruncatedSeries::from_polynomial(&dy.partial_y().at_y(&one), order),
        }
    }

    pub fn order(&self) -> usize {
        self.value.order()
    }

    /// Picks either this jet or its `y`-free value: used to switch markers on
    /// and off.
    pub fn marked_if(self, on: bool) -> Self {
        if on {
            self
        } else {
            Self::constant(self.value)
        }
    }

    pub fn add(&self, rhs: &Self) -> SResult<Self> {
        Ok(Self {
            value: self.value.add(&rhs.value)?,
            d1: self.d1.add(&rhs.d1)?,
            d2: self.d2.add(&rhs.d2)?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> SResult<Self> {
        Ok(Self {
            value: self.value.sub(&rhs.value)?,
            d1: self.d1.sub(&rhs.d1)?,
            d2: self.d2.sub(&rhs.d2)?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: self.value.neg(),
            d1: self.d1.neg(),
            d2: self.d2.neg(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            value: self.value.scale(c),
            d1: self.d1.scale(c),
            d2: self.d2.scale(c),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Leibniz rule.
    pub fn mul(&self, rhs: &Self) -> SResult<Self> {
        let (a, a1, a2) = (&self.value, &self.d1, &self.d2);
        let (b, b1, b2) = (&rhs.value, &rhs.d1, &rhs.d2);
        let value = a.mul(b)?;
        let d1 = a1.mul(b)?.add(&a.mul(b1)?)?;
        let d2 = a2
            .mul(b)?
            .add(&a1.mul(b1)?.scale_int(2))?
            .add(&a.mul(b2)?)?;
        Ok(Self { value, d1, d2 })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same order")
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| {
            acc.mul(self).expect("same order")
        })
    }

    /// Quotient rule: with `q = a/b`, `q' = (a' - q b')/b` and
    /// `q'' = (a'' - 2 q' b' - q b'')/b`.
    pub fn div(&self, rhs: &Self) -> SResult<Self> {
        let b = &rhs.value;
        let q = self.value.div(b)?;
        let q1 = self.d1.sub(&q.mul(&rhs.d1)?)?.div(b)?;
        let q2 = self
            .d2
            .sub(&q1.mul(&rhs.d1)?.scale_int(2))?
            .sub(&q.mul(&rhs.d2)?)?
            .div(b)?;
        Ok(Self {
            value: q,
            d1: q1,
            d2: q2,
        })
    }

    pub fn inverse(&self) -> SResult<Self> {
        Self::one(self.order()).div(self)
    }

    /// `s = sqrt(a)`: `s' = a'/(2s)`, `s'' = (a'' - 2 s'^2)/(2s)`.
    pub fn sqrt(&self) -> SResult<Self> {
        let s = self.value.sqrt()?;
        let two_s = s.scale_int(2);
        let s1 = self.d1.div(&two_s)?;
        let s2 = self.d2.sub(&s1.square().scale_int(2))?.div(&two_s)?;
        Ok(Self {
            value: s,
            d1: s1,
            d2: s2,
        })
    }

    /// Multiplies every component by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        Self {
            value: self.value.shift_up(k),
            d1: self.d1.shift_up(k),
            d2: self.d2.shift_up(k),
        }
    }

    /// Divides by `x^k`, checking divisibility of every component.
    pub fn shift_down(&self, k: usize) -> SResult<Self> {
        Ok(Self {
            value: self.value.shift_down(k)?,
            d1: self.d1.shift_down(k)?,
            d2: self.d2.shift_down(k)?,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            value: self.value.truncate(order),
            d1: self.d1.truncate(order),
            d2: self.d2.truncate(order),
        }
    }

    /// `F(inner(x, y), y)` for a polynomial `F`, by the chain rule:
    /// `d1 = F_x h1 + F_y`, `d2 = F_xx h1^2 + 2 F_xy h1 + F_x h2 + F_yy`.
    pub fn compose_bipoly(f: &BiPolynomial, inner: &Self) -> Self {
        let one = BigRational::one();
        let at = |p: &BiPolynomial| inner.value.compose_poly(&p.at_y(&one));
        let fx = f.partial_x();
        let fy = f.partial_y();
        let v = at(f);
        let fx0 = at(&fx);
        let h1 = &inner.d1;
        let m = |a: &TruncatedSeries, b: &TruncatedSeries| a.mul(b).expect("same order");
        let d1 = m(&fx0, h1).add(&at(&fy)).expect("same order");
        let d2 = m(&at(&fx.partial_x()), &h1.square())
            .add(&m(&at(&fx.partial_y()), h1).scale_int(2))
            .and_then(|s| s.add(&m(&fx0, &inner.d2)))
            .and_then(|s| s.add(&at(&fy.partial_y())))
            .expect("same order");
        Self { value: v, d1, d2 }
    }

    /// `f(inner)` for a `y`-free series `f` known to at least two more terms
    /// than `inner`, which must vanish at `x = 0`.
    pub fn compose_series(f: &TruncatedSeries, inner: &Self) -> SResult<Self> {
        let n = inner.order();
        if f.order() < n + 2 {
            return Err(SeriesError::OrderMismatch {
                left: f.order(),
                right: n + 2,
            });
        }
        let f0 = f.truncate(n);
        let f1 = f.derivative().truncate(n);
        let f2 = f.derivative().derivative().truncate(n);
        let h = &inner.value;
        let value = f0.compose(h)?;
        let fp = f1.compose(h)?;
        let d1 = fp.mul(&inner.d1)?;
        let d2 = f2
            .compose(h)?
            .mul(&inner.d1.square())?
            .add(&fp.mul(&inner.d2)?)?;
        Ok(Self { value, d1, d2 })
    }

    /// Mean of the marked parameter over objects of size `n`:
    /// `[x^n] d1 / [x^n] value`.
    pub fn mean(&self, n: usize) -> Option<BigRational> {
        let v = self.value.coeff(n);
        (!v.is_zero()).then(|| self.d1.coeff(n) / v)
    }

    /// Variance over objects of size `n`: `E[Y(Y-1)] + E[Y] - E[Y]^2`.
    pub fn variance(&self, n: usize) -> Option<BigRational> {
        let v = self.value.coeff(n);
        if v.is_zero() {
            return None;
        }
        let mean = self.d1.coeff(n) / &v;
        let factorial2 = self.d2.coeff(n) / &v;
        Some(factorial2 + &mean - &mean * &mean)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_have_no_y_derivatives() {
        let j = YJet::constant(TruncatedSeries::geometric(5));
        assert!(j.d1.is_zero() && j.d2.is_zero());
    }

    #[test]
    fn jet_of_x2y() {
        let p = BiPolynomial::monomial(2, 1, 1.into());
        let j = YJet::from_bipoly(&p, 5);
        assert_eq!(j.value, TruncatedSeries::monomial(2, 5));
        assert_eq!(j.d1, TruncatedSeries::monomial(2, 5));
        assert!(j.d2.is_zero());
        // same thing assembled from parts
        let built = YJet::monomial(2, 5).mul(&YJet::y(5)).unwrap();
        assert_eq!(built, j);
    }

    fn bipoly_strategy() -> impl Strategy<Value = BiPolynomial> {
        proptest::collection::vec((0usize..3, 0usize..3, -3i64..4), 1..5)
            .prop_map(|ts| BiPolynomial::from_triples(ts.into_iter().filter(|t| t.0 + t.1 <= 4)))
    }

    proptest! {
        // Jet arithmetic agrees with symbolic differentiation on polynomials of
        // total degree at most 4.
        #[test]
        fn product_and_compose_match_symbolic(
            a in bipoly_strategy(), b in bipoly_strategy(), f in bipoly_strategy()
        ) {
            let n = 10;
            let prod = YJet::from_bipoly(&a, n).mul(&YJet::from_bipoly(&b, n)).unwrap();
            prop_assert_eq!(prod, YJet::from_bipoly(&(&a * &b), n));

            // inner must vanish at x=0: multiply by x
            let inner = &a * &BiPolynomial::monomial(1, 0, 1.into());
            let composed = YJet::compose_bipoly(&f, &YJet::from_bipoly(&inner, n));
            // symbolic f(inner(x,y), y)
            let mut sym = BiPolynomial::zero();
            for (i, j, c) in f.terms() {
                let term = &inner.pow(i) * &BiPolynomial::monomial(0, j, c.clone());
                sym = &sym + &term;
            }
            prop_assert_eq!(composed, YJet::from_bipoly(&sym, n));
        }

        #[test]
        fn quotient_and_sqrt_match_rational_y(a in bipoly_strategy()) {
            let n = 8;
            let den = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 1, -1)]);
            let q = YJet::from_bipoly(&a, n).div(&YJet::from_bipoly(&den, n)).unwrap();
            // 1/(1-xy) = sum x^k y^k, so q = sum_k a(x,y) x^k y^k
            let mut sym = BiPolynomial::zero();
            for k in 0..n {
                sym = &sym + &(&a * &BiPolynomial::monomial(k, k, 1.into()));
            }
            prop_assert_eq!(q, YJet::from_bipoly(&sym.truncate_x(n - 1), n));

            // sqrt(1 + 4 x y)^2 round trip through jets
            let f = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 1, 4)]);
            let s = YJet::from_bipoly(&f, n).sqrt().unwrap();
            prop_assert_eq!(s.square(), YJet::from_bipoly(&f, n));
        }
    }

    #[test]
    fn moments_of_binomial() {
        // (1 + y)^n as coefficients of 1/(1 - x(1+y)): mean n/2, var n/4
        let n = 12;
        let den = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, -1), (1, 1, -1)]);
        let g = YJet::one(n).div(&YJet::from_bipoly(&den, n)).unwrap();
        for k in 1..n {
            assert_eq!(g.mean(k).unwrap(), BigRational::new(k.into(), 2.into()));
            assert_eq!(g.variance(k).unwrap(), BigRational::new(k.into(), 4.into()));
        }
    }
}
