//! Closed-form l1, G1 and G2 against the projection engine, and the small-α
//! roots of G1.
//!
//! cargo run --example lyapunov_closed_forms

use hgs::closed_forms::{g1, g1_small_alpha_root, g2, l1_closed, l1_omega0_scaled};
use hgs::hopf::l1_numeric;

fn main() -> hgs::Result<()> {
    let points = [(0.5, 1.0, 0.0, 0.0), (0.3, 2.2, 1.1, 0.6), (0.9, 0.3, 0.0, 0.3), (0.9, 0.2, 0.02, 0.0)];
    println!("{:>24} {:>16} {:>16} {:>9} {:>12} {:>12}", "(beta, alpha, rho, kappa)", "l1 numeric", "l1 closed", "rel", "G1", "G2");
    for (b, a, r, k) in points {
        let n = l1_numeric(b, a, r, k)?;
        let c = l1_closed(b, a, r, k);
        let g1v = if r == 0.0 { format!("{:.5e}", g1(b, a, k)) } else { "-".into() };
        let g2v = if k == 0.0 { format!("{:.5e}", g2(b, a, r)) } else { "-".into() };
        println!(
            "{:>24} {n:>16.9e} {c:>16.9e} {:>9.1e} {g1v:>12} {g2v:>12}",
            format!("({b}, {a}, {r}, {k})"),
            ((n - c) / n).abs()
        );
    }
    println!("\nwith an ω0⁴ denominator (ω0·l1) the value would be {:.9e} at the Watt point", l1_omega0_scaled(0.5, 1.0, 0.0, 0.0));
    println!("G1 roots as alpha -> 0: kappa = 0 at beta = {:.6}, kappa -> 1 at beta = {:.6}",
        g1_small_alpha_root(0.0).unwrap_or(f64::NAN),
        g1_small_alpha_root(1.0).unwrap_or(f64::NAN));
    Ok(())
}
