use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Polynomial;

/// Sparse polynomial in two indeterminates `x` and `y` with integer
/// coefficients. Keys are `(x exponent, y exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPolynomial {
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(x_exp: usize, y_exp: usize, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(x_exp, y_exp, c);
        p
    }

    /// Builds from `(x exponent, y exponent, coefficient)` triples; repeated
    /// keys are summed.
    pub fn from_triples<I, T>(triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (i, j, c) in triples {
            p.add_term(i, j, c.into());
        }
        p
    }

    /// Lifts an integer polynomial in `x` (no `y` dependence).
    ///
    /// # Panics
    /// If a coefficient of `p` is not an integer.
    pub fn from_x_polynomial(p: &Polynomial) -> Self {
        let coeffs = p
            .integer_coeffs()
            .expect("bivariate polynomials carry integer coefficients");
        Self::from_triples(coeffs.into_iter().enumerate().map(|(i, c)| (i, 0, c)))
    }

    pub fn add_term(&mut self, x_exp: usize, y_exp: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((x_exp, y_exp)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(x_exp, y_exp));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x_exp: usize, y_exp: usize) -> BigInt {
        self.terms
            .get(&(x_exp, y_exp))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in `(x exponent, y exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_triples(self.terms().map(|(i, j, a)| (i, j, a * c)))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn partial_x(&self) -> Self {
        Self::from_triples(
            self.terms()
                .filter(|(i, _, _)| *i > 0)
                .map(|(i, j, c)| (i - 1, j, c * BigInt::from(i))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_triples(
            self.terms()
                .filter(|(_, j, _)| *j > 0)
                .map(|(i, j, c)| (i, j - 1, c * BigInt::from(j))),
        )
    }

    /// Drops every term with x exponent above `max_x`.
    pub fn truncate_x(&self, max_x: usize) -> Self {
        Self::from_triples(
            self.terms()
                .filter(|(i, _, _)| *i <= max_x)
                .map(|(i, j, c)| (i, j, c.clone())),
        )
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coefficient(&self, j: usize) -> Polynomial {
        let deg = self.x_degree().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (i, jj, c) in self.terms() {
            if jj == j {
                coeffs[i] = BigRational::from_integer(c.clone());
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Specialises `y` to a rational value.
    pub fn at_y(&self, y: &BigRational) -> Polynomial {
        let deg = self.x_degree().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (i, j, c) in self.terms() {
            coeffs[i] += BigRational::from_integer(c.clone()) * pow_rational(y, j);
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.at_y(y).eval(x)
    }

    /// `[(x, y) exponents, coefficient-string]` list, sorted.
    pub fn to_terms(&self) -> Vec<((usize, usize), String)> {
        self.terms().map(|(i, j, c)| ((i, j), c.to_string())).collect()
    }

    pub fn from_terms(terms: &[((usize, usize), String)]) -> Option<Self> {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(*i, *j, c.trim().parse().ok()?);
        }
        Some(p)
    }
}

pub(crate) fn pow_rational(base: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * base)
}

impl Add for &BiPolynomial {
    type Output = BiPolynomial;
    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPolynomial {
    type Output = BiPolynomial;
    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BiPolynomial {
    type Output = BiPolynomial;
    fn mul(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = BiPolynomial::zero();
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // y-major grouping reads more naturally for marked polynomials.
        let mut ordered: Vec<_> = self.terms().collect();
        ordered.sort_by_key(|&(i, j, _)| (j, i));
        for (k, (i, j, c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
