//! Vyshnegradskii's rule on physical parameters: increasing the friction b
//! stabilizes the governor once (b I / m) η passes 1.
//!
//! cargo run --example vyshnegradskii

use hgs::model::rescale_physical;
use hgs::stability::{classify, vyshnegradskii};
use hgs::PhysicalParams;

fn main() -> hgs::Result<()> {
    let base = PhysicalParams {
        m: 1.0,
        l: 0.5,
        big_l: 0.05,
        k: 2.0,
        b: 0.1,
        g: 9.81,
        c: 1.0,
        mu: 1.0,
        inertia: 2.0,
        load: 0.5,
    };
    println!("{:>6} {:>10} {:>10} {:>8} {:>22}", "b", "eta", "(bI/m)eta", "rule", "classification");
    for b in [0.05, 0.1, 0.2, 0.4, 0.8, 1.6] {
        let p = PhysicalParams { b, ..base };
        let v = vyshnegradskii(&p)?;
        let z = rescale_physical(&p)?.params;
        println!(
            "{b:>6} {:>10.5} {:>10.5} {:>8} {:>22?}",
            v.eta,
            v.criterion,
            if v.stable { "stable" } else { "unstable" },
            classify(&z).classification
        );
    }
    let r = rescale_physical(&base)?;
    println!("\nrescaled: {:?}", r.params);
    println!("time scale {:.5}, y scale {:.5}, z scale {:.5}", r.time_scale, r.y_scale, r.z_scale);
    Ok(())
}
