//! Sign maps of G1 (ρ = 0) and G2 (κ = 0) at small α, written as CSV, with
//! the points where the zero contour meets the slice edges.
//!
//! cargo run --release --example sign_map_scan [output-dir]

use hgs::scan::{scan_formula, Axis, Fixed, Formula, Grid, Param};

fn main() -> hgs::Result<()> {
    let out = std::env::args().nth(1).map_or_else(std::env::temp_dir, Into::into);
    std::fs::create_dir_all(&out)?;
    let fixed = Fixed { alpha: 0.01, ..Fixed::default() };

    let g = Grid::new(vec![Axis::new(Param::Kappa, 0.0, 0.999, 300), Axis::new(Param::Beta, 0.05, 0.95, 300)], fixed)?;
    let m = scan_formula(Formula::G1, &g, 0)?;
    std::fs::write(out.join("g1_rho0.csv"), m.to_csv())?;
    std::fs::write(out.join("g1_rho0_contours.csv"), m.contours_csv())?;
    println!("rho = 0: contour meets kappa = 0 at beta {:?}", m.crossings_at_c1(0, 0));
    println!("         and kappa = 0.999 at beta {:?}", m.crossings_at_c1(0, 299));

    let g = Grid::new(vec![Axis::new(Param::Rho, 0.0, 0.2, 300), Axis::new(Param::Beta, 0.05, 0.95, 300)], fixed)?;
    let m = scan_formula(Formula::G2, &g, 0)?;
    std::fs::write(out.join("g2_kappa0.csv"), m.to_csv())?;
    std::fs::write(out.join("g2_kappa0_contours.csv"), m.contours_csv())?;
    if let Some((rho, beta)) = m.contour_max_c1(0) {
        println!("kappa = 0: the zero contour reaches rho = {rho:.4} at beta = {beta:.4}");
    }
    println!("CSV written to {}", out.display());
    Ok(())
}
