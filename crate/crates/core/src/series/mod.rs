//! Exact truncated power series over the rationals.
//!
//! Everything in this module is exact: coefficients are [`BigRational`]s and
//! no operation ever silently changes a series' order. Mixing orders is an
//! error rather than an implicit truncation.

mod bipoly;
mod bivariate;
mod jet;
mod polynomial;
mod truncated;

pub use bipoly::BiPolynomial;
pub use bivariate::BivariateSeries;
pub use jet::YJet;
pub use polynomial::Polynomial;
pub use truncated::{puiseux_expand, TruncatedSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("divisor has a zero constant term")]
    ZeroConstantTerm,

    #[error("square root needs constant term 1, found {0}")]
    SqrtConstant(String),

    #[error("inner series of a composition must have a zero constant term")]
    NonzeroInnerConstant,

    #[error("coefficient of x^{index} is nonzero, cannot divide by x^{shift}")]
    NotDivisible { index: usize, shift: usize },
}

pub(crate) fn check_orders(left: usize, right: usize) -> Result<(), SeriesError> {
    if left == right {
        Ok(())
    } else {
        Err(SeriesError::OrderMismatch { left, right })
    }
}

/// Renders a rational as `num/den`, or just `num` for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num` or `num/den`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
