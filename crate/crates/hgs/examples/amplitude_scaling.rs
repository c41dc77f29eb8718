//! Square-root growth of the cycle amplitude below ε_c at the Watt point.
//!
//! cargo run --release --example amplitude_scaling

use hgs::orbit::{amplitude_scaling, OrbitOptions};
use hgs::DimensionlessParams;

fn main() -> hgs::Result<()> {
    let z = DimensionlessParams::critical(0.5, 1.0, 0.0, 0.0)?;
    let rows = amplitude_scaling(&z, &[0.04, 0.01, 0.0025], &OrbitOptions::default())?;
    println!("{:>8} {:>12} {:>10} {:>8}", "delta", "amplitude", "period", "ratio");
    for r in rows {
        let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.4}"));
        println!("{:>8} {:>12.6} {:>10.5} {:>8}", r.delta, r.amplitude, r.period, ratio);
    }
    Ok(())
}
