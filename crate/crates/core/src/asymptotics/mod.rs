//! Singularity analysis: the dominant singularity `rho(y)` of the genus-0
//! series, the central limit parameters of the arc count, leading terms of
//! pseudoknot probabilities, and growth-exponent fits.
//!
//! Real numbers are carried as exact rationals. `rho` is isolated by a
//! sign scan of the discriminant `P(x, y) = B^2 - 4 (x^2 y)^r A` and refined
//! by bisection, so every digit reported is backed by exact evaluation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::PkClass;
use crate::genfun::ab_polys;
use crate::series::BiPolynomial;
use crate::{Error, Result};

/// Default number of significant decimal digits for `rho`.
pub const DEFAULT_DIGITS: u32 = 50;

/// Allowed range of `y` around 1.
pub const Y_RANGE: (f64, f64) = (0.5, 2.0);

const SCAN_STEPS: i64 = 1000;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The discriminant `B^2 - 4 (x^2 y)^r A` as an integer polynomial.
pub fn discriminant(lambda: u32, r: u32) -> BiPolynomial {
    let ab = ab_polys(lambda, r);
    let x = BiPolynomial::monomial(2 * r as usize, r as usize, 1.into());
    &(&ab.b * &ab.b) - &(&x * &ab.a).scale(&BigInt::from(4))
}

fn check_params(lambda: u32, r: u32) -> Result<()> {
    if lambda == 0 || r == 0 {
        return Err(Error::InvalidParams(format!(
            "lambda and r must be at least 1 (got lambda={lambda}, r={r})"
        )));
    }
    Ok(())
}

/// Smallest positive root of `P(., y)` in `(0, 1)`, to `digits` digits.
pub fn rho(lambda: u32, r: u32, y: &BigRational, digits: u32) -> Result<BigRational> {
    check_params(lambda, r)?;
    let yf = y.to_f64().unwrap_or(f64::NAN);
    if !(Y_RANGE.0..=Y_RANGE.1).contains(&yf) {
        return Err(Error::InvalidParams(format!(
            "y = {yf} is outside [{}, {}]",
            Y_RANGE.0, Y_RANGE.1
        )));
    }
    let p = discriminant(lambda, r);
    rho_of(&p, y, digits).ok_or(Error::NoRoot { lambda, r })
}

/// Integer coefficients of `c * P(., y)` for a positive `c`, lowest degree first.
fn integer_section(p: &BiPolynomial, y: &BigRational) -> Vec<BigInt> {
    let q = p.at_y(y);
    let den = q
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    q.coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect()
}

/// Sign of `sum c_i (num/den)^i`, by Horner on `sum c_i num^i den^(d-i)`.
fn sign_at(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> Sign {
    let Some((top, rest)) = coeffs.split_last() else {
        return Sign::NoSign;
    };
    let mut acc = top.clone();
    let mut den_pow = BigInt::one();
    for c in rest.iter().rev() {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    acc.sign()
}

fn rho_of(p: &BiPolynomial, y: &BigRational, digits: u32) -> Option<BigRational> {
    let coeffs = integer_section(p, y);
    let mut den = BigInt::from(SCAN_STEPS);
    let s0 = sign_at(&coeffs, &BigInt::zero(), &den);
    // the root lies in [lo, lo + 1] / den
    let mut lo = None;
    for k in 1..=SCAN_STEPS {
        let s = sign_at(&coeffs, &BigInt::from(k), &den);
        if s == Sign::NoSign {
            return Some(rat(k, SCAN_STEPS));
        }
        if s != s0 {
            lo = Some(BigInt::from(k - 1));
            break;
        }
    }
    let mut lo = lo?;
    let stop = BigInt::from(10).pow(digits + 5);
    while den < stop {
        den *= 2;
        let mid = &lo * 2 + 1;
        match sign_at(&coeffs, &mid, &den) {
            Sign::NoSign => return Some(BigRational::new(mid, den)),
            s if s == s0 => lo = mid,
            _ => lo *= 2,
        }
    }
    Some(BigRational::new(lo * 2 + 1, den * 2))
}

/// `rho(1)` with its first two `y`-derivatives and the resulting
/// mean and variance coefficients of the arc count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityProfile {
    pub lambda: u32,
    pub r: u32,
    #[serde(serialize_with = "ser_decimal")]
    pub rho: BigRational,
    #[serde(serialize_with = "ser_decimal")]
    pub rho_d1: BigRational,
    #[serde(serialize_with = "ser_decimal")]
    pub rho_d2: BigRational,
    /// `mu = -rho'(1) / rho(1)`.
    #[serde(serialize_with = "ser_decimal")]
    pub mu: BigRational,
    /// `sigma^2 = (rho'/rho)^2 - (rho'' + rho')/rho` at `y = 1`.
    #[serde(serialize_with = "ser_decimal")]
    pub sigma2: BigRational,
}

fn ser_decimal<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal(q, 20))
}

impl SingularityProfile {
    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64().expect("finite")
    }

    pub fn sigma2_f64(&self) -> f64 {
        self.sigma2.to_f64().expect("finite")
    }
}

/// Central limit parameters from implicit differentiation of `P(rho(y), y) = 0`:
/// `rho' = -P_y / P_x` and
/// `rho'' = -(P_xx rho'^2 + 2 P_xy rho' + P_yy) / P_x`.
pub fn clt_params(lambda: u32, r: u32, digits: u32) -> Result<SingularityProfile> {
    let one = BigRational::one();
    let rho0 = rho(lambda, r, &one, digits)?;
    let p = discriminant(lambda, r);
    let (px, py) = (p.partial_x(), p.partial_y());
    let at = |q: &BiPolynomial| q.eval(&rho0, &one);
    let px0 = at(&px);
    if px0.abs() < BigRational::new(1.into(), BigInt::from(10).pow(digits / 2)) {
        return Err(Error::Degenerate);
    }
    let d1 = -at(&py) / &px0;
    let d2 = -(at(&px.partial_x()) * &d1 * &d1
        + at(&px.partial_y()) * &d1 * BigInt::from(2)
        + at(&py.partial_y()))
        / &px0;
    let ratio = &d1 / &rho0;
    let mu = -ratio.clone();
    let sigma2 = &ratio * &ratio - (&d2 + &d1) / &rho0;
    Ok(SingularityProfile {
        lambda,
        r,
        rho: rho0,
        rho_d1: d1,
        rho_d2: d2,
        mu,
        sigma2,
    })
}

/// `(mu, sigma^2)` from central differences of `theta(s) = rho(e^s)` with
/// step `h`; a cross-check on [`clt_params`].
pub fn clt_params_finite_difference(lambda: u32, r: u32, h: f64) -> Result<(f64, f64)> {
    let theta = |s: f64| -> Result<f64> {
        let y = BigRational::from_float(s.exp()).expect("finite");
        Ok(rho(lambda, r, &y, 30)?.to_f64().expect("finite"))
    };
    let (tm, t0, tp) = (theta(-h)?, theta(0.0)?, theta(h)?);
    let d1 = (tp - tm) / (2.0 * h);
    // second differences lose about half the digits; use a wider step
    let h2 = h.sqrt() * 1e-2;
    let d2 = (theta(h2)? - 2.0 * t0 + theta(-h2)?) / (h2 * h2);
    Ok((-d1 / t0, (d1 / t0).powi(2) - d2 / t0))
}

/// One cell of the `(lambda, r)` grid.
#[derive(Clone, Debug, Serialize)]
pub struct CltCell {
    pub lambda: u32,
    pub r: u32,
    pub mu: f64,
    pub sigma2: f64,
    #[serde(skip)]
    pub profile: SingularityProfile,
}

/// `mu` and `sigma^2` for `1 <= lambda, r <= max` with `lambda <= r + 1`.
pub fn clt_grid(max: u32, digits: u32) -> Result<Vec<CltCell>> {
    let cells: Vec<(u32, u32)> = (1..=max)
        .flat_map(|l| (1..=max).map(move |r| (l, r)))
        .filter(|&(l, r)| l <= r + 1)
        .collect();
    cells
        .into_par_iter()
        .map(|(lambda, r)| {
            let profile = clt_params(lambda, r, digits)?;
            Ok(CltCell {
                lambda,
                r,
                mu: profile.mu_f64(),
                sigma2: profile.sigma2_f64(),
                profile,
            })
        })
        .collect()
}

/// `mu` grows with `r` at fixed `lambda` and shrinks with `lambda` at fixed `r`.
pub fn grid_is_monotone(grid: &[CltCell]) -> bool {
    let mu = |l: u32, r: u32| grid.iter().find(|c| c.lambda == l && c.r == r).map(|c| &c.profile.mu);
    grid.iter().all(|c| {
        let up_r = mu(c.lambda, c.r + 1).is_none_or(|m| m > &c.profile.mu);
        let up_l = mu(c.lambda + 1, c.r).is_none_or(|m| m < &c.profile.mu);
        up_r && up_l
    })
}

/// CSV rendering of the grid with `digits` decimals.
pub fn grid_csv(grid: &[CltCell], digits: usize) -> String {
    let mut s = String::from("lambda,r,mu,sigma2\n");
    for c in grid {
        s.push_str(&format!(
            "{},{},{},{}\n",
            c.lambda,
            c.r,
            decimal(&c.profile.mu, digits),
            decimal(&c.profile.sigma2, digits)
        ));
    }
    s
}

/// Leading terms of a genus-one block probability at `lambda = r = 1`, as
/// `(constant + root * sqrt(3 pi n) + linear * n) / (16 n - 51)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTerm {
    pub constant: i64,
    pub root: i64,
    pub linear: i64,
}

/// Denominator `16 n - 51` in the same basis.
pub const LEADING_DENOMINATOR: LeadingTerm = LeadingTerm {
    constant: -51,
    root: 0,
    linear: 16,
};

pub fn leading_term(class: PkClass) -> Result<LeadingTerm> {
    Ok(match class {
        PkClass::H => LeadingTerm {
            constant: 288,
            root: 0,
            linear: 0,
        },
        // 24 (sqrt(3 pi n) - 18)
        PkClass::K | PkClass::L => LeadingTerm {
            constant: -432,
            root: 24,
            linear: 0,
        },
        PkClass::M => LeadingTerm {
            constant: 525,
            root: -48,
            linear: 16,
        },
        other => {
            return Err(Error::InvalidParams(format!(
                "no leading term for class {other}"
            )))
        }
    })
}

/// The four numerators add up to the denominator term by term.
pub fn leading_terms_sum_to_one() -> bool {
    let sum = PkClass::GENUS_ONE
        .iter()
        .map(|&c| leading_term(c).expect("genus-one class"))
        .fold((0, 0, 0), |acc, t| {
            (acc.0 + t.constant, acc.1 + t.root, acc.2 + t.linear)
        });
    sum == (
        LEADING_DENOMINATOR.constant,
        LEADING_DENOMINATOR.root,
        LEADING_DENOMINATOR.linear,
    )
}

/// Leading-term value of `P(X^I = 1)` (equal to `E[X^I]` in genus 1) at
/// length `n`, for `g = 1`, `lambda = r = 1`.
pub fn pk_expectation_asymptotic(class: PkClass, n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidParams(format!("n must be at least 4, got {n}")));
    }
    let t = leading_term(class)?;
    let n = n as f64;
    let eval = |t: LeadingTerm| {
        t.constant as f64 + t.root as f64 * (3.0 * std::f64::consts::PI * n).sqrt() + t.linear as f64 * n
    };
    Ok(eval(t) / eval(LEADING_DENOMINATOR))
}

/// Least-squares fit of `log(a_n rho^n) = alpha log n + c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub alpha: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Natural log of a positive rational, without overflow.
pub fn ln_rational(q: &BigRational) -> f64 {
    fn ln_int(v: &BigInt) -> f64 {
        let bits = v.bits();
        if bits <= 60 {
            return v.to_f64().expect("small").ln();
        }
        let shift = bits - 60;
        (v >> shift).to_f64().expect("small").ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_int(q.numer()) - ln_int(q.denom())
}

/// Fits the subexponential exponent of `(n, a_n)` pairs over the later half
/// of the window. `ln_rho` is `log rho`.
pub fn exponent_fit(coeffs: &[(usize, BigRational)], ln_rho: f64) -> Result<ExponentFit> {
    if coeffs.len() < 50 {
        return Err(Error::InvalidParams(format!(
            "exponent fit needs at least 50 coefficients, got {}",
            coeffs.len()
        )));
    }
    let tail = &coeffs[coeffs.len() / 2..];
    if let Some((n, _)) = tail.iter().find(|(_, a)| !a.is_positive()) {
        return Err(Error::InvalidParams(format!("coefficient at n={n} is not positive")));
    }
    let pts: Vec<(f64, f64)> = tail
        .iter()
        .map(|(n, a)| ((*n as f64).ln(), ln_rational(a) + *n as f64 * ln_rho))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let alpha = sxy / sxx;
    Ok(ExponentFit {
        alpha,
        intercept: my - alpha * mx,
        points: pts.len(),
    })
}

/// Decimal expansion of `q` with `digits` digits after the point, rounded
/// half away from zero.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let den: BigInt = q.denom() * 2;
    let num: BigInt = q.numer().abs() * &scale * 2 + q.denom();
    let v = num.div_floor(&den);
    let v = if q.is_negative() { -v } else { v };
    let (sign, mag) = (v.sign(), v.abs().to_string());
    let mag = format!("{mag:0>width$}", width = digits + 1);
    let (int, frac) = mag.split_at(mag.len() - digits);
    let sign = if sign == Sign::Minus { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{dg_series, GFParams};

    /// `10^-digits`.
    fn tolerance(digits: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10).pow(digits))
    }

    fn close(a: &BigRational, b: &BigRational, digits: u32) -> bool {
        (a - b).abs() < tolerance(digits) * BigInt::from(10).pow(6)
    }

    #[test]
    fn rho_examples() {
        let one = BigRational::one();
        let r11 = rho(1, 1, &one, 50).unwrap();
        assert!(close(&r11, &rat(1, 3), 50));
        // 1 / (1 + 2 sqrt(1.21)) = 1/3.2
        let r = rho(1, 1, &rat(121, 100), 50).unwrap();
        assert!(close(&r, &rat(5, 16), 50));
        // (3 - sqrt 5)/2 is the root of x^2 - 3x + 1 in (0, 1)
        let r21 = rho(2, 1, &one, 50).unwrap();
        let q = &r21 * &r21 - &r21 * BigInt::from(3) + &one;
        assert!(q.abs() < tolerance(48));
        assert!((r21.to_f64().unwrap() - 0.381_966_011_250_105_1).abs() < 1e-15);
        assert!(rho(1, 1, &rat(3, 1), 50).is_err());
        assert!(rho(0, 1, &one, 50).is_err());
    }

    #[test]
    fn clt_examples() {
        let p = clt_params(1, 1, 50).unwrap();
        assert!(close(&p.mu, &rat(1, 3), 40));
        // sigma^2 from rho(y) = 1/(1 + 2 sqrt y): 1/18... check with the closed form
        let (mu, s2) = clt_params_finite_difference(1, 1, 1e-8).unwrap();
        assert!((mu - p.mu_f64()).abs() < 1e-6);
        assert!((s2 - p.sigma2_f64()).abs() < 1e-4, "{s2} {}", p.sigma2_f64());
        assert!((clt_params(2, 2, 50).unwrap().mu_f64() - 0.3172).abs() < 5e-5);
        assert!((clt_params(4, 3, 50).unwrap().mu_f64() - 0.3113).abs() < 5e-5);
    }

    #[test]
    fn sigma_closed_form_at_one_one() {
        // theta(s) = 1/(1 + 2 e^(s/2)): mu = 1/3, sigma^2 = 1/9 - 1/6 + ... computed exactly
        // theta' = -e^(s/2) theta^2, theta'' = -e^(s/2) theta^2 / 2 + 2 e^s theta^3
        // at s = 0: theta = 1/3, theta' = -1/9, theta'' = -1/18 + 2/27 = 1/54
        // sigma^2 = (theta'/theta)^2 - theta''/theta = 1/9 - 1/18 = 1/18
        let p = clt_params(1, 1, 50).unwrap();
        assert!(close(&p.sigma2, &rat(1, 18), 40));
    }

    #[test]
    fn grid_monotone_and_positive() {
        let grid = clt_grid(6, 30).unwrap();
        assert_eq!(grid.len(), 26);
        assert!(grid_is_monotone(&grid));
        assert!(grid.iter().all(|c| c.sigma2 > 0.0));
        assert!(grid_csv(&grid, 4).contains("1,1,0.3333,"));
    }

    #[test]
    fn leading_terms() {
        assert!(leading_terms_sum_to_one());
        let h = pk_expectation_asymptotic(PkClass::H, 10_000).unwrap();
        assert!((h - 288.0 / 159_949.0).abs() < 1e-15);
        let total: f64 = PkClass::GENUS_ONE
            .iter()
            .map(|&c| pk_expectation_asymptotic(c, 777).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(pk_expectation_asymptotic(PkClass::M, 10_000_000).unwrap() > 0.99);
        assert!(pk_expectation_asymptotic(PkClass::H, 3).is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal(&rat(-2, 3), 2), "-0.67");
        assert_eq!(decimal(&rat(5, 2), 0), "3");
        assert_eq!(decimal(&rat(1, 20), 1), "0.1");
        assert_eq!(decimal(&rat(-1, 20), 1), "-0.1");
        assert_eq!(decimal(&rat(7, 1), 2), "7.00");
    }

    #[test]
    fn fit_on_genus_zero() {
        let d = dg_series(&GFParams::new(1, 1, 0, 121).unwrap()).unwrap();
        let pts: Vec<_> = (20..121).map(|n| (n, d.value.coeff(n))).collect();
        let fit = exponent_fit(&pts, (1.0f64 / 3.0).ln()).unwrap();
        assert!((fit.alpha + 1.5).abs() < 0.15, "{}", fit.alpha);
        assert!(exponent_fit(&pts[..10], 0.0).is_err());
    }
}
