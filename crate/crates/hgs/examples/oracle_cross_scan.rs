//! Random-sample comparison of the projection engine with the closed forms,
//! plus the empirical sign constants of G1 and G2.
//!
//! cargo run --release --example oracle_cross_scan [samples] [seed]

use hgs::scan::{oracle_cross_scan, SampleBox};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let r = oracle_cross_scan(&SampleBox::default(), samples, seed);
    println!("{samples} samples per set, seed {seed}");
    println!("max relative |l1_numeric - l1_closed| = {:.3e}", r.max_rel_discrepancy);
    if let Some(p) = r.worst_point {
        println!("  worst at beta {:.4}, alpha {:.4}, rho {:.4}, kappa {:.4}", p.beta, p.alpha, p.rho, p.kappa);
    }
    println!("s1 (G1 vs l1, rho = 0): {:?}", r.s1);
    println!("s2 (G2 vs l1, kappa = 0): {:?}", r.s2);
    println!("engine failures: {}", r.failures);
}
