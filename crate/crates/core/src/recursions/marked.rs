//! Shape polynomials with pseudoknot markers, built from irreducible-shadow
//! polynomials genus by genus.
//!
//! With `S(t) = 1 + sum_g S_g t^g` the shapes satisfy
//! `S = 1 + x (S - 1)^2 + (x + 1) I(u(t), y, t)` where
//! `u(t) = x S^2 / (1 - x (S^2 - 1))`. Reading off `t^g` gives `S_g` from
//! `S_1, ..., S_{g-1}` and `I_1, ..., I_g`; everything stays polynomial.

use crate::diagram::PkClass;
use crate::series::{BiPolynomial, Polynomial};
use crate::{Error, Result};

use super::IrreducibleTable;

/// Truncated series in `t` with bivariate polynomial coefficients.
type TSeries = Vec<BiPolynomial>;

fn tmul(a: &TSeries, b: &TSeries, len: usize) -> TSeries {
    let mut out = vec![BiPolynomial::zero(); len];
    for (i, p) in a.iter().enumerate().take(len) {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate().take(len - i) {
            if !q.is_zero() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
    }
    out
}

fn tone(len: usize) -> TSeries {
    let mut v = vec![BiPolynomial::zero(); len];
    if len > 0 {
        v[0] = BiPolynomial::one();
    }
    v
}

/// `1 / (1 - a)` for `a` with no `t^0` term.
fn tgeometric(a: &TSeries, len: usize) -> TSeries {
    debug_assert!(a.first().is_none_or(|c| c.is_zero()));
    let mut acc = tone(len);
    let mut power = tone(len);
    for _ in 1..len {
        power = tmul(&power, a, len);
        acc = acc.iter().zip(&power).map(|(p, q)| p + q).collect();
    }
    acc
}

fn x_poly() -> BiPolynomial {
    BiPolynomial::monomial(1, 0, 1.into())
}

/// `u(t) = x S^2 / (1 - x (S^2 - 1))` to `len` terms.
fn inflation_argument(s: &TSeries, len: usize) -> TSeries {
    let x = x_poly();
    let s2 = tmul(s, s, len);
    let mut s2m1 = s2.clone();
    s2m1[0] = &s2m1[0] - &BiPolynomial::one();
    let denom_tail: TSeries = s2m1.iter().map(|c| &x * c).collect();
    let num: TSeries = s2.iter().map(|c| &x * c).collect();
    tmul(&num, &tgeometric(&denom_tail, len), len)
}

/// `F(u(t), y)` for a bivariate polynomial `F(x, y)`.
pub fn tseries_compose(f: &BiPolynomial, u: &[BiPolynomial], len: usize) -> Vec<BiPolynomial> {
    let u: TSeries = u.iter().take(len).cloned().collect();
    let max_i = f.x_degree().unwrap_or(0);
    let mut powers = vec![tone(len)];
    for _ in 0..max_i {
        let next = tmul(powers.last().expect("nonempty"), &u, len);
        powers.push(next);
    }
    let mut out = vec![BiPolynomial::zero(); len];
    for (i, j, c) in f.terms() {
        let yc = BiPolynomial::monomial(0, j, c.clone());
        for (k, p) in powers[i].iter().enumerate() {
            out[k] = &out[k] + &(p * &yc);
        }
    }
    out
}

/// The marked genus-one irreducible polynomial `I^I_1(x, y)`.
pub(crate) fn genus_one_seed(class: PkClass) -> Result<BiPolynomial> {
    let t = |v: &[(usize, usize, i64)]| BiPolynomial::from_triples(v.iter().copied());
    Ok(match class {
        PkClass::H => t(&[(2, 1, 1), (3, 0, 2), (4, 0, 1)]),
        PkClass::K | PkClass::L => t(&[(3, 1, 1), (2, 0, 1), (3, 0, 1), (4, 0, 1)]),
        PkClass::M => t(&[(4, 1, 1), (2, 0, 1), (3, 0, 2)]),
        other => {
            return Err(Error::InvalidParams(format!(
                "no marked irreducible polynomial for class {other}"
            )))
        }
    })
}

/// Sum of the terms of the recursion for genus `h` that involve only
/// `S_1..S_{h-1}` and `I_1..I_{h-1}`: `x sum S_i S_{h-i} + (x+1) sum_{j<h} [t^{h-j}] I_j(u)`.
fn lower_terms(shapes: &[BiPolynomial], irr: &[BiPolynomial], h: usize) -> BiPolynomial {
    let x = x_poly();
    let mut acc = BiPolynomial::zero();
    for i in 1..h {
        acc = &acc + &(&x * &(&shapes[i] * &shapes[h - i]));
    }
    let len = h;
    let s: TSeries = shapes[..h].to_vec();
    let u = inflation_argument(&s, len);
    let x1 = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, 1)]);
    for j in 1..h {
        let comp = tseries_compose(&irr[j], &u, len);
        acc = &acc + &(&x1 * &comp[h - j]);
    }
    acc
}

fn irreducible_list(g: u32, seed: BiPolynomial, table: &IrreducibleTable) -> Result<Vec<BiPolynomial>> {
    let mut irr = vec![BiPolynomial::zero(), seed];
    for j in 2..=g {
        irr.push(BiPolynomial::from_x_polynomial(&table.get(j)?));
    }
    Ok(irr)
}

fn build(g: u32, irr: &[BiPolynomial]) -> Vec<BiPolynomial> {
    let x1 = BiPolynomial::from_triples([(0usize, 0usize, 1i64), (1, 0, 1)]);
    let mut shapes = vec![BiPolynomial::one()];
    for h in 1..=g as usize {
        // the j = h term is I_h(u_0) = I_h(x)
        let s = &lower_terms(&shapes, irr, h) + &(&x1 * &irr[h]);
        shapes.push(s);
    }
    shapes
}

/// `S^I_g(x, y)`: genus-`g` shapes by arc count, with `y` marking
/// irreducible blocks of class `I`.
pub fn marked_shape_poly(g: u32, class: PkClass, table: &IrreducibleTable) -> Result<BiPolynomial> {
    if g == 0 {
        return Ok(BiPolynomial::one());
    }
    let irr = irreducible_list(g, genus_one_seed(class)?, table)?;
    Ok(build(g, &irr).pop().expect("nonempty"))
}

/// `S_g(x)` assembled from irreducible polynomials instead of `kappa`.
pub fn shape_poly_from_irreducibles(g: u32, table: &IrreducibleTable) -> Result<Polynomial> {
    if g == 0 {
        return Ok(Polynomial::one());
    }
    let seed = BiPolynomial::from_x_polynomial(&table.get(1)?);
    let irr = irreducible_list(g, seed, table)?;
    Ok(build(g, &irr).pop().expect("nonempty").y_coefficient(0))
}

/// Solves the genus-`g` recursion for `I_g` given the shape polynomials
/// `S_1..S_g` and `I_1..I_{g-1}` (all `y`-free).
pub(crate) fn solve_for_irreducible(
    shapes: &[Polynomial],
    lower: &[Polynomial],
    g: usize,
) -> Result<Polynomial> {
    let shapes_b: Vec<BiPolynomial> = shapes.iter().map(BiPolynomial::from_x_polynomial).collect();
    let mut irr = vec![BiPolynomial::zero()];
    irr.extend(lower.iter().map(BiPolynomial::from_x_polynomial));
    let rest = &shapes_b[g] - &lower_terms(&shapes_b, &irr, g);
    divide_by_one_plus_x(&rest.y_coefficient(0))
}

fn divide_by_one_plus_x(p: &Polynomial) -> Result<Polynomial> {
    let Some(deg) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    // p = (1 + x) q, from the top: q_{k-1} = p_k - q_k
    let mut q = vec![num_rational::BigRational::from_integer(0.into()); deg];
    let mut carry = p.coeff(deg);
    for k in (1..=deg).rev() {
        q[k - 1] = carry.clone();
        carry = p.coeff(k - 1) - &carry;
    }
    if carry != num_rational::BigRational::from_integer(0.into()) {
        return Err(Error::InvalidParams(
            "shape data inconsistent: remainder is not divisible by 1 + x".into(),
        ));
    }
    Ok(Polynomial::from_coeffs(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursions::shape_poly;
    use num_rational::BigRational;

    fn tri(v: &[(usize, usize, i64)]) -> BiPolynomial {
        BiPolynomial::from_triples(v.iter().copied())
    }

    #[test]
    fn s_h_genus_one() {
        let t = IrreducibleTable::builtin();
        let s = marked_shape_poly(1, PkClass::H, &t).unwrap();
        // x^3 (x+1)(x+2) + x^2 (1+x) y
        let expected = tri(&[(3, 0, 2), (4, 0, 3), (5, 0, 1), (2, 1, 1), (3, 1, 1)]);
        assert_eq!(s, expected);
    }

    #[test]
    fn s_h_genus_two() {
        let t = IrreducibleTable::builtin();
        let s = marked_shape_poly(2, PkClass::H, &t).unwrap();
        // x^4 (1+x)^2 (17 + 143x + 447x^2 + 637x^3 + 420x^4 + 105x^5
        //   + (20x + 36x^2 + 14x^3) y + (4 + 5x) y^2)
        let inner = tri(&[
            (0, 0, 17),
            (1, 0, 143),
            (2, 0, 447),
            (3, 0, 637),
            (4, 0, 420),
            (5, 0, 105),
            (1, 1, 20),
            (2, 1, 36),
            (3, 1, 14),
            (0, 2, 4),
            (1, 2, 5),
        ]);
        let pre = &BiPolynomial::monomial(4, 0, 1.into())
            * &tri(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)]);
        assert_eq!(s, &pre * &inner);
    }

    #[test]
    fn unmarking_recovers_shape_polynomials() {
        let t = IrreducibleTable::builtin().with_fallback(3).unwrap();
        for g in 1..=3 {
            for class in PkClass::GENUS_ONE {
                let s = marked_shape_poly(g, class, &t).unwrap();
                assert_eq!(s.at_y(&BigRational::from_integer(1.into())), shape_poly(g));
                assert!(s.y_degree().unwrap() <= g as usize);
                // degree bounds on the marked part
                let dy = s.partial_y().at_y(&BigRational::from_integer(1.into()));
                let bound = match class {
                    PkClass::H => 6 * g - 3,
                    PkClass::K | PkClass::L => 6 * g - 2,
                    _ => 6 * g - 1,
                } as usize;
                assert_eq!(dy.degree(), Some(bound), "g={g} {class}");
            }
            assert_eq!(shape_poly_from_irreducibles(g, &t).unwrap(), shape_poly(g));
        }
    }

    #[test]
    fn one_plus_x_division() {
        let p = Polynomial::from_integers([1, 3, 3, 1]);
        assert_eq!(divide_by_one_plus_x(&p).unwrap(), Polynomial::from_integers([1, 2, 1]));
        assert!(divide_by_one_plus_x(&Polynomial::from_integers([1, 0, 1])).is_err());
    }
}
