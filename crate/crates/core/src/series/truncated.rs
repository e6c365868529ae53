use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_orders, rational_string, Polynomial, SeriesError};

/// A power series in `x` known exactly up to (but excluding) `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

type SResult<T> = Result<T, SeriesError>;

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `x^k`, which is zero when `k >= order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    /// Pads or truncates `coeffs` to `order` entries.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .take(order)
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().take(order).cloned().collect(), order)
    }

    /// `1 / (1 - x)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_coeffs(vec![BigRational::one(); order], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// The same series known to a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot extend a series");
        Self::from_coeffs(self.coeffs[..order].to_vec(), order)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
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

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        let n = self.order();
        let (a, da) = common_denominator(&self.coeffs);
        let (b, db) = common_denominator(&rhs.coeffs);
        let prod = convolve(&a, &b, n);
        let den = da * db;
        Ok(Self {
            coeffs: prod
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        })
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same order")
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> SResult<Self> {
        self.div_into(&Self::one(self.order()))
    }

    /// `self / rhs`.
    pub fn div(&self, rhs: &Self) -> SResult<Self> {
        check_orders(self.order(), rhs.order())?;
        rhs.div_into(self)
    }

    // Solves q * self = a coefficient by coefficient.
    fn div_into(&self, a: &Self) -> SResult<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let b0 = &self.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let (bi, db) = common_denominator(&self.coeffs);
        let (ai, da) = common_denominator(&a.coeffs);
        // a/b = (ai/da) / (bi/db) = (db/da) * ai/bi, and ai/bi is solved over
        // the integers with a single running denominator b0^k when possible.
        if bi[0].abs().is_one() {
            let sign = bi[0].clone();
            let mut q: Vec<BigInt> = Vec::with_capacity(n);
            for k in 0..n {
                let mut acc = ai[k].clone();
                for j in 1..=k {
                    if !bi[j].is_zero() {
                        acc -= &bi[j] * &q[k - j];
                    }
                }
                q.push(acc * &sign);
            }
            let scale = BigRational::new(db, da);
            return Ok(Self {
                coeffs: q
                    .into_iter()
                    .map(|c| BigRational::from_integer(c) * &scale)
                    .collect(),
            });
        }
        let mut q: Vec<BigRational> = Vec::with_capacity(n);
        let inv0 = BigRational::one() / b0;
        for k in 0..n {
            let mut acc = a.coeffs[k].clone();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc -= &self.coeffs[j] * &q[k - j];
                }
            }
            q.push(acc * &inv0);
        }
        Ok(Self { coeffs: q })
    }

    /// Square root with constant term 1; the input's constant term must be 1.
    pub fn sqrt(&self) -> SResult<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtConstant(rational_string(&self.coeffs[0])));
        }
        // s_k = (f_k - sum_{j=1}^{k-1} s_j s_{k-j}) / 2
        let (fi, df) = common_denominator(&self.coeffs);
        if df.is_one() {
            // Integer input usually has an integral root; bail out to the
            // rational recurrence at the first odd numerator.
            let mut int_path = true;
            let mut si: Vec<BigInt> = vec![BigInt::one()];
            for k in 1..n {
                let mut acc = fi[k].clone();
                for j in 1..k {
                    acc -= &si[j] * &si[k - j];
                }
                if acc.is_even() {
                    si.push(acc / 2);
                } else {
                    int_path = false;
                    break;
                }
            }
            if int_path {
                return Ok(Self {
                    coeffs: si.into_iter().map(BigRational::from_integer).collect(),
                });
            }
        }
        let two = BigRational::from_integer(2.into());
        let mut s: Vec<BigRational> = vec![BigRational::one()];
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &s[j] * &s[k - j];
            }
            s.push(acc / &two);
        }
        Ok(Self { coeffs: s })
    }

    /// `self(inner)` by Horner's scheme; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> SResult<Self> {
        check_orders(self.order(), inner.order())?;
        if !inner.coeff(0).is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            if n > 0 {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }

    /// `p(self)` for a polynomial `p`; no constant-term restriction.
    pub fn compose_poly(&self, p: &Polynomial) -> Self {
        let n = self.order();
        let mut acc = Self::zero(n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same order");
            if n > 0 {
                acc.coeffs[0] += c;
            }
        }
        acc
    }

    /// Formal derivative; the top coefficient becomes unknown, so the order
    /// drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_coeffs(
            (1..n)
                .map(|i| &self.coeffs[i] * BigRational::from_integer(i.into()))
                .collect(),
            n.saturating_sub(1),
        )
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Self { coeffs }
    }

    /// Divides by `x^k` after checking that the first `k` coefficients vanish.
    /// The result is known to order `order - k`.
    pub fn shift_down(&self, k: usize) -> SResult<Self> {
        if let Some(index) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible { index, shift: k });
        }
        Ok(Self {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Coefficients rendered as `num` or `num/den`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_polynomial();
        write!(f, "{p} + O(x^{})", self.order())
    }
}

/// Returns integers `c_i` and a positive `d` with `coeffs[i] = c_i / d`.
fn common_denominator(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for c in coeffs {
        if !c.denom().is_one() {
            d = d.lcm(c.denom());
        }
    }
    let ints = coeffs
        .iter()
        .map(|c| {
            if d.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&d / c.denom())
            }
        })
        .collect();
    (ints, d)
}

fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Coefficients of `(1 - 4x)^{-(n + 1/2)}` to `order`.
///
/// Computed as the product of `(1 - 4x)^{-1/2}` (central binomials) with
/// `(1 - 4x)^{-n}`, whose coefficients are `C(n+k-1, k) 4^k`.
pub fn puiseux_expand(n: usize, order: usize) -> TruncatedSeries {
    let mut central = Vec::with_capacity(order);
    let mut c = BigInt::one();
    for k in 0..order {
        central.push(c.clone());
        // C(2k+2, k+1) = C(2k, k) * 2(2k+1)/(k+1)
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 1);
    }
    let mut neg_pow = Vec::with_capacity(order);
    if n == 0 {
        neg_pow.push(BigInt::one());
        neg_pow.resize(order, BigInt::zero());
    } else {
        let mut c = BigInt::one();
        for k in 0..order {
            neg_pow.push(c.clone());
            // C(n+k, k+1) 4^{k+1} = C(n+k-1, k) 4^k * 4(n+k)/(k+1)
            c = c * BigInt::from(4 * (n + k)) / BigInt::from(k + 1);
        }
    }
    let prod = convolve(&central, &neg_pow, order);
    TruncatedSeries {
        coeffs: prod.into_iter().map(BigRational::from_integer).collect(),
    }
}
