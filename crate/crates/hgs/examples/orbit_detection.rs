//! The cycles born at the Hopf point: an attracting one below ε_c where
//! l1 < 0, a repelling one above ε_c where l1 > 0.
//!
//! cargo run --release --example orbit_detection

use hgs::hopf::lyapunov_coefficient;
use hgs::orbit::{detect_orbit, OrbitOptions};
use hgs::DimensionlessParams;

fn main() -> hgs::Result<()> {
    let opts = OrbitOptions::default();
    for (label, p) in [("supercritical", (0.5, 1.0, 0.0, 0.3)), ("subcritical", (0.9, 0.3, 0.0, 0.3))] {
        let crit = DimensionlessParams::critical(p.0, p.1, p.2, p.3)?;
        let l1 = lyapunov_coefficient(&crit)?.l1;
        println!("{label} point {p:?}: l1 = {l1:.6}");
        for ratio in [0.98, 1.02] {
            let rep = detect_orbit(&crit.at_ratio(ratio)?, &opts)?;
            if rep.found {
                println!(
                    "  eps = {ratio} eps_c: {:?} cycle, period {:.5} (2pi/omega0 = {:.5}), amplitude {:.5}, slope {:.4}, residual {:.1e}",
                    rep.stability, rep.period, rep.linear_period, rep.amplitude, rep.slope, rep.residual
                );
                if let Some(a) = rep.predicted_amplitude {
                    println!("    normal-form amplitude estimate {a:.5}");
                }
            } else {
                println!("  eps = {ratio} eps_c: no cycle ({})", rep.diagnostic);
            }
        }
    }
    Ok(())
}
