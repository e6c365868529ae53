use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_orders, rational_string, BiPolynomial, Polynomial, SeriesError, TruncatedSeries, YJet};

type SResult<T> = Result<T, SeriesError>;

/// Full bivariate series: the coefficient of `x^n` is a polynomial in `y`.
///
/// Only meant for small orders, where the whole distribution of a marked
/// parameter is wanted rather than its first two moments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Polynomial>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Polynomial::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = Polynomial::one();
        }
        s
    }

    pub fn from_bipoly(p: &BiPolynomial, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, j, c) in p.terms() {
            if i < order {
                let t = Polynomial::monomial(j, BigRational::from_integer(c.clone()));
                s.coeffs[i] = &s.coeffs[i] + &t;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `[x^n]` as a polynomial in `y`.
    pub fn coeff(&self, n: usize) -> Polynomial {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        let n = self.order();
        let mut out = vec![Polynomial::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same order")
    }

    // Constant term as a rational, if it is free of y.
    fn scalar_constant(&self) -> Option<BigRational> {
        let c0 = self.coeff(0);
        match c0.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(c0.coeff(0)),
            Some(_) => None,
        }
    }

    /// `self / rhs`; the divisor's constant term must be a nonzero number.
    pub fn div(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        let b0 = rhs
            .scalar_constant()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::ZeroConstantTerm)?;
        let inv = BigRational::one() / b0;
        let n = self.order();
        let mut q: Vec<Polynomial> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                if !rhs.coeffs[j].is_zero() {
                    acc = &acc - &(&rhs.coeffs[j] * &q[k - j]);
                }
            }
            q.push(acc.scale(&inv));
        }
        Ok(Self { coeffs: q })
    }

    /// Square root of a series with constant term 1.
    pub fn sqrt(&self) -> SResult<Self> {
        match self.scalar_constant() {
            Some(c) if c.is_one() => {}
            _ => return Err(SeriesError::SqrtConstant(format!("{}", self.coeff(0)))),
        }
        let n = self.order();
        let half = BigRational::new(1.into(), 2.into());
        let mut s = vec![Polynomial::one()];
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = &acc - &(&s[j] * &s[k - j]);
            }
            s.push(acc.scale(&half));
        }
        s.truncate(n);
        Ok(Self { coeffs: s })
    }

    /// Divides by `x^k` after checking the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> SResult<Self> {
        if let Some(index) = self.coeffs.iter().take(k).position(|p| !p.is_zero()) {
            return Err(SeriesError::NotDivisible { index, shift: k });
        }
        Ok(Self {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Divides every coefficient by `y^k`, checking exactness.
    pub fn divide_y_pow(&self, k: usize) -> SResult<Self> {
        let mut out = Vec::with_capacity(self.order());
        for (index, p) in self.coeffs.iter().enumerate() {
            if p.lowest_degree().is_some_and(|d| d < k) {
                return Err(SeriesError::NotDivisible { index, shift: k });
            }
            out.push(Polynomial::from_coeffs(
                p.coeffs().iter().skip(k).cloned().collect(),
            ));
        }
        Ok(Self { coeffs: out })
    }

    /// `F(inner(x, y), y)`, with `inner` vanishing at `x = 0`.
    pub fn compose_bipoly(f: &BiPolynomial, inner: &Self) -> SResult<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = inner.order();
        let max_i = f.x_degree().unwrap_or(0);
        // Powers of inner, then sum c y^j inner^i.
        let mut powers = vec![Self::one(n)];
        for _ in 0..max_i {
            let next = powers.last().expect("nonempty").mul(inner)?;
            powers.push(next);
        }
        let mut out = Self::zero(n);
        for (i, j, c) in f.terms() {
            let yj = Polynomial::monomial(j, BigRational::from_integer(c.clone()));
            for (k, p) in powers[i].coeffs.iter().enumerate() {
                if !p.is_zero() {
                    out.coeffs[k] = &out.coeffs[k] + &(p * &yj);
                }
            }
        }
        Ok(out)
    }

    /// Specialises `y`.
    pub fn at_y(&self, y: &BigRational) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs.iter().map(|p| p.eval(y)).collect(), self.order())
    }

    /// The `y`-jet at `y = 1`.
    pub fn to_jet(&self) -> YJet {
        let one = BigRational::one();
        let n = self.order();
        let d = |k: usize| {
            TruncatedSeries::from_coeffs(
                self.coeffs
                    .iter()
                    .map(|p| (0..k).fold(p.clone(), |q, _| q.derivative()).eval(&one))
                    .collect(),
                n,
            )
        };
        YJet {
            value: d(0),
            d1: d(1),
            d2: d(2),
        }
    }

    /// `[x^n y^l]` rendered as strings, for export.
    pub fn row_strings(&self, n: usize) -> Vec<String> {
        self.coeff(n).coeffs().iter().map(rational_string).collect()
    }
}
