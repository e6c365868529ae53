//! Central limit parameters of the arc count over the (lambda, r) grid.
//!
//! Run with `cargo run --release --example limit_laws`.

use rna_topology::asymptotics::{clt_grid, clt_params, decimal, grid_csv, grid_is_monotone};

fn main() -> rna_topology::Result<()> {
    let grid = clt_grid(6, 30)?;
    print!("{}", grid_csv(&grid, 4));
    println!("monotone in lambda and r: {}", grid_is_monotone(&grid));

    let p = clt_params(1, 1, 40)?;
    println!("\nlambda = r = 1 to 30 digits:");
    println!("  rho    = {}", decimal(&p.rho, 30));
    println!("  mu     = {}", decimal(&p.mu, 30));
    println!("  sigma2 = {}", decimal(&p.sigma2, 30));
    Ok(())
}
