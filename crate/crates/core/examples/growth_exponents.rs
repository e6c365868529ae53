//! Fit the subexponential factor n^alpha of d_g(n) rho^n from exact
//! coefficients.
//!
//! Run with `cargo run --release --example growth_exponents`.

use num_traits::One;
use rna_topology::asymptotics::{exponent_fit, ln_rational, rho};
use rna_topology::genfun::{dg_series, GFParams};
use rna_topology::series::BigRational;

fn main() -> rna_topology::Result<()> {
    let order = 401;
    let ln_rho = ln_rational(&rho(1, 1, &BigRational::one(), 30)?);
    let mut last = None;
    for g in 0..=2 {
        let d = dg_series(&GFParams::new(1, 1, g, order)?)?;
        let pairs: Vec<_> = d.value.coeffs().iter().cloned().enumerate().collect();
        let fit = exponent_fit(&pairs, ln_rho)?;
        print!("genus {g}: alpha = {:.3} over {} points", fit.alpha, fit.points);
        if let Some(prev) = last {
            print!(", step from previous genus {:.3}", fit.alpha - prev);
        }
        println!();
        last = Some(fit.alpha);
    }
    Ok(())
}
