use hgs::hopf::{classify_hopf, lyapunov_coefficient, HopfClass, DEGENERACY_TOL};
use hgs::model::equilibrium;
use hgs::orbit::{
    amplitude_scaling, detect_orbit, integrate, poincare_returns, start_fate, Fate, OrbitOptions, OrbitStability,
    Termination, Tolerances,
};
use hgs::{DimensionlessParams, State};

fn crit(p: (f64, f64, f64, f64)) -> DimensionlessParams {
    DimensionlessParams::critical(p.0, p.1, p.2, p.3).unwrap()
}

// (β, α, ρ, κ), two per region per special case
const S_RHO0: [(f64, f64, f64, f64); 2] = [(0.5, 1.0, 0.0, 0.0), (0.3, 2.0, 0.0, 0.6)];
const S_KAPPA0: [(f64, f64, f64, f64); 2] = [(0.5, 1.0, 0.5, 0.0), (0.4, 2.0, 1.5, 0.0)];
const U_RHO0: [(f64, f64, f64, f64); 2] = [(0.9, 0.3, 0.0, 0.0), (0.85, 0.2, 0.0, 0.5)];
const U_KAPPA0: [(f64, f64, f64, f64); 2] = [(0.9, 0.1, 0.02, 0.0), (0.9, 0.2, 0.02, 0.0)];

fn hopf_class(p: (f64, f64, f64, f64)) -> HopfClass {
    classify_hopf(lyapunov_coefficient(&crit(p)).unwrap().l1, DEGENERACY_TOL)
}

#[test]
fn consistency_triangle_supercritical() {
    let opts = OrbitOptions::default();
    for p in S_RHO0.iter().chain(&S_KAPPA0) {
        assert_eq!(hopf_class(*p), HopfClass::Supercritical, "{p:?}");
        let below = detect_orbit(&crit(*p).at_ratio(0.98).unwrap(), &opts).unwrap();
        assert!(below.found, "{p:?}: {}", below.diagnostic);
        assert_eq!(below.stability, OrbitStability::Attracting, "{p:?}");
        assert!(below.period > 0.0);
        assert!(below.residual < 1e-8);
        assert!((below.period / below.linear_period - 1.0).abs() < 0.1);
        let above = detect_orbit(&crit(*p).at_ratio(1.02).unwrap(), &opts).unwrap();
        assert!(!above.found, "{p:?}");
    }
}

#[test]
fn consistency_triangle_subcritical() {
    let opts = OrbitOptions::default();
    for p in U_RHO0.iter().chain(&U_KAPPA0) {
        assert_eq!(hopf_class(*p), HopfClass::Subcritical, "{p:?}");
        let above = detect_orbit(&crit(*p).at_ratio(1.02).unwrap(), &opts).unwrap();
        assert!(above.found, "{p:?}: {}", above.diagnostic);
        assert_eq!(above.stability, OrbitStability::Repelling, "{p:?}");
        assert!(above.period > 0.0);
        let below = detect_orbit(&crit(*p).at_ratio(0.98).unwrap(), &opts).unwrap();
        assert!(!below.found, "{p:?}");
    }
}

#[test]
fn repelling_cycle_separates_basins() {
    let opts = OrbitOptions::default();
    let z = crit(U_RHO0[0]).at_ratio(1.02).unwrap();
    let rep = detect_orbit(&z, &opts).unwrap();
    let (x, zz) = rep.fixed_point.unwrap();
    let p0 = equilibrium(&z);
    let at = |s: f64| start_fate(&z, p0[0] + s * (x - p0[0]), p0[2] + s * (zz - p0[2]), &opts).unwrap();
    assert_eq!(at(0.95), Fate::Converged);
    assert_eq!(at(1.05), Fate::Escaped);
}

#[test]
fn amplitude_shrinks_and_period_approaches_linear() {
    let z = crit(S_RHO0[0]);
    let rows = amplitude_scaling(&z, &[0.04, 0.01, 0.0025], &OrbitOptions::default()).unwrap();
    assert!(rows.windows(2).all(|w| w[0].amplitude > w[1].amplitude));
    for r in &rows[..2] {
        let ratio = r.ratio.unwrap();
        assert!((ratio - 2.0).abs() < 0.4, "{ratio}");
    }
    let w0 = hgs::model::derived_frequencies(&z).omega0;
    let last = rows.last().unwrap();
    assert!((last.period * w0 / (2.0 * std::f64::consts::PI) - 1.0).abs() < 0.02);
}

#[test]
fn scaling_rejects_large_offsets() {
    assert!(amplitude_scaling(&crit(S_RHO0[0]), &[0.06], &OrbitOptions::default()).is_err());
}

#[test]
fn detect_requires_near_critical() {
    assert!(detect_orbit(&crit(S_RHO0[0]).at_ratio(0.8).unwrap(), &OrbitOptions::default()).is_err());
}

#[test]
fn returns_contract_toward_attracting_cycle() {
    let z = crit(S_RHO0[0]).at_ratio(0.98).unwrap();
    let p0 = equilibrium(&z);
    let ret = poincare_returns(&(p0 - State::new(0.3, 0.0, 0.0)), &z, 12, Tolerances::ORBIT).unwrap();
    let d: Vec<f64> = ret.windows(2).map(|w| (w[1].x - w[0].x).hypot(w[1].z - w[0].z)).collect();
    let ratios: Vec<f64> = d.windows(2).map(|w| w[1] / w[0]).collect();
    assert!(ratios.iter().all(|&r| r > 0.0 && r < 1.0), "{ratios:?}");
    // after the first return the contraction factor settles
    let tail = &ratios[1..];
    let spread = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - tail.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread < 0.05, "{ratios:?}");
    // and the fixed point is away from P0
    assert!((ret.last().unwrap().x - p0[0]).abs() > 0.1);
}

#[test]
fn trajectory_invariants() {
    let z = crit(S_KAPPA0[0]).at_ratio(0.98).unwrap();
    let p0 = equilibrium(&z);
    let tr = integrate(&(p0 + State::new(0.01, 0.0, 0.0)), &z, 100.0, Tolerances::ORBIT, None).unwrap();
    assert_eq!(tr.termination, Termination::TimeEnd);
    assert!(tr.t.windows(2).all(|w| w[1] > w[0]));
    assert!(tr.states.iter().all(hgs::model::in_domain));
}

#[test]
fn halving_tolerance_changes_little() {
    let z = crit(S_RHO0[0]).at_ratio(1.5).unwrap();
    let s0 = equilibrium(&z) + State::new(0.1, 0.0, 0.0);
    let a = integrate(&s0, &z, 30.0, Tolerances { rel: 1e-8, abs: 1e-8 }, None).unwrap().last().1;
    let b = integrate(&s0, &z, 30.0, Tolerances { rel: 5e-9, abs: 5e-9 }, None).unwrap().last().1;
    assert!((a - b).norm() < 1e-6, "{}", (a - b).norm());
}

#[test]
fn global_error_scales_with_tolerance() {
    let z = crit(S_RHO0[0]).at_ratio(1.5).unwrap();
    let s0 = equilibrium(&z) + State::new(0.1, 0.0, 0.0);
    let run = |tol: f64| integrate(&s0, &z, 20.0, Tolerances { rel: tol, abs: tol }, None).unwrap().last().1;
    let reference = run(1e-12);
    let e6 = (run(1e-6) - reference).norm();
    let e7 = (run(1e-7) - reference).norm();
    let ratio = e6 / e7;
    assert!(ratio > 10.0 / 3.0 && ratio < 30.0, "{e6:e} {e7:e} {ratio}");
}
