//! Equilibrium, characteristic roots and stability verdict for a sweep of
//! damping values around ε_c.
//!
//! cargo run --example equilibrium_stability

use hgs::model::{derived_frequencies, equilibrium};
use hgs::stability::{classify, epsilon_critical};
use hgs::DimensionlessParams;

fn main() -> hgs::Result<()> {
    let base = DimensionlessParams::new(0.5, 1.0, 1.0, 0.3, 0.2)?;
    let p0 = equilibrium(&base);
    let f = derived_frequencies(&base);
    println!("P0 = ({:.6}, {:.6}, {:.6})", p0[0], p0[1], p0[2]);
    println!("omega0 = {:.6}, omega1 = {:.6}, eps_c = {:.6}", f.omega0, f.omega1, epsilon_critical(&base));

    for ratio in [0.5, 0.9, 1.0, 1.1, 2.0] {
        let z = base.at_ratio(ratio)?;
        let v = classify(&z);
        let re: Vec<String> = v.roots.iter().map(|r| format!("{:+.4}{:+.4}i", r.re, r.im)).collect();
        println!("eps/eps_c = {ratio:<4} {:?}  roots [{}]", v.classification, re.join(", "));
    }
    Ok(())
}
