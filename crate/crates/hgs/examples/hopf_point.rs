//! Critical eigenvectors, first Lyapunov coefficient and transversality at
//! the Hopf point of the Watt governor (ρ = κ = 0).
//!
//! cargo run --example hopf_point

use hgs::hopf::{hopf_frame, lyapunov_coefficient, transversality_closed, transversality_fd};
use hgs::DimensionlessParams;

fn main() -> hgs::Result<()> {
    let z = DimensionlessParams::critical(0.5, 1.0, 0.0, 0.0)?;
    let frame = hopf_frame(&z)?;
    println!("eps_c  = {:.12}", frame.eps_c);
    println!("omega0 = {:.12}", frame.omega0);
    println!("q = {:.6?}", frame.q.as_slice());
    println!("p = {:.6?}", frame.p.as_slice());
    println!("frame residual = {:.2e}", frame.residual());

    let rep = lyapunov_coefficient(&z)?;
    println!("G21 = {:.9}", rep.g21);
    println!("l1  = {:.12} ({:?})", rep.l1, rep.classification);
    println!("h20 residual {:.1e}, Fredholm residual {:.1e}", rep.h20_residual, rep.fredholm_residual);
    println!(
        "transversality: frame {:.9}, closed form {:.9}, finite difference {:.9}",
        rep.transversality,
        transversality_closed(&z),
        transversality_fd(&z)?
    );
    Ok(())
}
