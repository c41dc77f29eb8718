use hgs::hopf::{classify_hopf, l1_numeric, HopfClass, DEGENERACY_TOL};
use hgs::scan::{oracle_cross_scan, scan_formula, Axis, Fixed, Formula, Grid, Param, SampleBox};

fn rho0(n1: usize, n2: usize, alpha: f64) -> Grid {
    Grid::new(
        vec![Axis::new(Param::Kappa, 0.0, 0.999, n1), Axis::new(Param::Beta, 0.05, 0.95, n2)],
        Fixed { alpha, ..Fixed::default() },
    )
    .unwrap()
}

fn kappa0(n: usize, alpha: f64) -> Grid {
    Grid::new(
        vec![Axis::new(Param::Rho, 0.0, 2.0, n), Axis::new(Param::Beta, 0.05, 0.95, n)],
        Fixed { alpha, ..Fixed::default() },
    )
    .unwrap()
}

#[test]
fn small_alpha_slice_brackets_reference_points() {
    let g = rho0(400, 400, 0.01);
    let m = scan_formula(Formula::G1, &g, 0).unwrap();
    let h = 0.9 / 399.0;
    let first = m.crossings_at_c1(0, 0);
    assert_eq!(first.len(), 1);
    assert!((first[0] - 0.7746).abs() < h, "{first:?}");
    let last = m.crossings_at_c1(0, 399);
    assert_eq!(last.len(), 1);
    // the κ axis stops at 0.999, a hair short of the κ → 1 limit
    assert!((last[0] - 0.5272).abs() < h, "{last:?}");
}

#[test]
fn sign_field_matches_values() {
    let g = kappa0(25, 1.0);
    let m = scan_formula(Formula::G2, &g, 0).unwrap();
    for (v, s) in m.values.iter().zip(&m.signs) {
        assert_eq!(*s, if *v > 0.0 { 1 } else if *v < 0.0 { -1 } else { 0 });
    }
    assert_eq!(m.masked, 0);
}

#[test]
fn contour_vertices_are_near_zero() {
    let g = rho0(60, 60, 0.5);
    let m = scan_formula(Formula::G1, &g, 0).unwrap();
    let pts = m.contour_points();
    assert!(!pts.is_empty());
    // interpolation error is second order in the cell size
    let scale = m.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    for (k, b) in pts {
        let v = hgs::closed_forms::g1(b, 0.5, k);
        assert!(v.abs() < 1e-2 * scale, "G1({b}, {k}) = {v}");
    }
}

#[test]
fn refinement_moves_vertices_less_than_a_cell() {
    let coarse = scan_formula(Formula::G1, &rho0(31, 31, 0.3), 0).unwrap();
    let fine = scan_formula(Formula::G1, &rho0(61, 61, 0.3), 0).unwrap();
    let diag = (0.999f64 / 30.0).hypot(0.9 / 30.0);
    let segments: Vec<((f64, f64), (f64, f64))> = fine.contours[0]
        .polylines
        .iter()
        .flat_map(|l| l.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let dist = |p: (f64, f64), (a, b): ((f64, f64), (f64, f64))| {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
        (p.0 - a.0 - t * dx).hypot(p.1 - a.1 - t * dy)
    };
    for p in coarse.contour_points() {
        let d = segments.iter().map(|s| dist(p, *s)).fold(f64::INFINITY, f64::min);
        assert!(d < diag, "{p:?} moved {d}");
    }
}

#[test]
fn sign_map_agrees_with_hopf_classification() {
    let g = kappa0(12, 0.8);
    let m = scan_formula(Formula::G2, &g, 0).unwrap();
    for k in 0..g.len() {
        let p = g.point(k);
        let class = classify_hopf(l1_numeric(p.beta, p.alpha, p.rho, p.kappa).unwrap(), DEGENERACY_TOL);
        match m.signs[k] {
            -1 => assert_eq!(class, HopfClass::Supercritical, "{p:?}"),
            1 => assert_eq!(class, HopfClass::Subcritical, "{p:?}"),
            _ => {}
        }
    }
}

#[test]
fn zero_sets_colocate() {
    // every cell edge where G1 flips sign is also a flip of l1 (numeric and
    // closed form), and vice versa
    let g = rho0(30, 30, 1.0);
    let maps: Vec<_> = [Formula::G1, Formula::L1Numeric, Formula::L1Closed]
        .iter()
        .map(|f| scan_formula(*f, &g, 0).unwrap())
        .collect();
    let n = 30;
    for i in 0..n {
        for j in 0..n - 1 {
            let flips: Vec<bool> =
                maps.iter().map(|m| m.signs[i * n + j] != m.signs[i * n + j + 1]).collect();
            assert!(flips.iter().all(|&f| f == flips[0]), "cell ({i}, {j}): {flips:?}");
        }
    }
    assert!(maps[0].contours[0].polylines.len() == maps[1].contours[0].polylines.len());
}

#[test]
fn three_axis_grid_gives_one_contour_set_per_slice() {
    let g = Grid::new(
        vec![
            Axis::new(Param::Alpha, 0.1, 3.0, 4),
            Axis::new(Param::Kappa, 0.0, 0.95, 15),
            Axis::new(Param::Beta, 0.05, 0.95, 15),
        ],
        Fixed::default(),
    )
    .unwrap();
    let m = scan_formula(Formula::G1, &g, 2).unwrap();
    assert_eq!(m.values.len(), 4 * 15 * 15);
    assert_eq!(m.contours.len(), 4);
    assert_eq!(m.contours[3].slice_value, Some(3.0));
    let csv = m.contours_csv();
    assert!(csv.starts_with("slice,polyline,kappa,beta\n"));
    assert!(!m.contours[0].polylines.is_empty());
    let slices: std::collections::BTreeSet<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert!(slices.iter().all(|s| ["0", "1", "2", "3"].contains(s)));
}

#[test]
fn grid_csv_is_row_major() {
    let g = rho0(3, 4, 1.0);
    let csv = scan_formula(Formula::G1, &g, 0).unwrap().to_csv();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 1 + 12);
    assert!(rows[1].starts_with("0,0.05,"));
    assert!(rows[2].starts_with("0,0.35,"));
    assert!(rows[5].starts_with("0.4995,0.05,"));
}

#[test]
fn cross_scan_200_points() {
    let r = oracle_cross_scan(&SampleBox::default(), 200, 42);
    assert!(r.max_rel_discrepancy < 1e-6, "{:?}", r.worst_point);
    assert_eq!(r.failures, 0);
    assert_eq!(r.s1.value, Some(1));
    assert_eq!(r.s2.value, Some(1));
    assert_eq!(r.s1.skipped + r.s2.skipped, 0);
}

#[test]
fn cross_scan_is_seeded() {
    let a = oracle_cross_scan(&SampleBox::default(), 30, 9);
    let b = oracle_cross_scan(&SampleBox::default(), 30, 9);
    assert_eq!(a.max_rel_discrepancy, b.max_rel_discrepancy);
    assert_eq!(a.s1.positive, b.s1.positive);
}
