//! The twelve acceptance criteria, runnable from the `verify` subcommand and
//! the `acceptance` test target.
//!
//! Each criterion has a correctness check and a wall-clock budget; it passes
//! only when both hold.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_forms::{g1, g1_small_alpha_root, g2, l1_closed};
use crate::error::Result;
use crate::hopf::{l1_numeric, transversality_closed, transversality_fd};
use crate::model::{equilibrium, vector_field, DimensionlessParams, PhysicalParams};
use crate::orbit::{amplitude_scaling, detect_orbit, start_fate, Fate, OrbitOptions, OrbitStability};
use crate::scan::{sign_constant, Axis, Fixed, Formula, Grid, Param, SampleBox};
use crate::stability::{charpoly, epsilon_critical, omega0, routh_hurwitz, vyshnegradskii, CRITICAL_BAND};

/// Region-S points (l1 < 0) for the ρ = 0 and κ = 0 slices, as (β, α, ρ, κ).
pub const SUPERCRITICAL_POINTS: [(f64, f64, f64, f64); 2] = [(0.5, 1.0, 0.0, 0.3), (0.5, 1.0, 0.5, 0.0)];
/// Region-U points (l1 > 0), small enough cycles at 1.02 ε_c to bracket.
pub const SUBCRITICAL_POINTS: [(f64, f64, f64, f64); 2] = [(0.9, 0.3, 0.0, 0.3), (0.9, 0.2, 0.02, 0.0)];
/// Amplitude-scaling test point (the Watt governor).
pub const SCALING_POINT: (f64, f64, f64, f64) = (0.5, 1.0, 0.0, 0.0);

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: {} ({:.2} s / {} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AcceptanceOptions {
    pub seed: u64,
    /// scan workers; 0 = one per core
    pub workers: usize,
}

impl Default for AcceptanceOptions {
    fn default() -> Self {
        AcceptanceOptions { seed: 1, workers: 0 }
    }
}

pub const NAMES: [&str; 12] = [
    "equilibrium residual",
    "critical spectrum",
    "Routh-Hurwitz vs roots",
    "Vyshnegradskii equivalence",
    "Lyapunov oracle equivalence",
    "special-case sign constants",
    "reference roots of G1",
    "transversality",
    "supercritical orbit",
    "subcritical orbit",
    "amplitude scaling",
    "scan determinism",
];

const BUDGETS: [u64; 12] = [1, 1, 1, 1, 5, 30, 1, 2, 60, 60, 120, 30];

fn random_zeta(rng: &mut impl Rng) -> DimensionlessParams {
    let b = SampleBox::default();
    let p = b.sample(rng);
    let eps = rng.random_range(0.01..5.0);
    DimensionlessParams::new(p.beta, p.alpha, eps, p.rho, p.kappa).expect("sample box is admissible")
}

fn random_physical(rng: &mut impl Rng) -> PhysicalParams {
    let mu = rng.random_range(0.5..5.0);
    PhysicalParams {
        m: rng.random_range(0.1..5.0),
        l: rng.random_range(0.1..2.0),
        big_l: rng.random_range(0.0..1.0),
        k: rng.random_range(0.0..20.0),
        b: rng.random_range(0.01..5.0),
        g: 9.81,
        c: rng.random_range(0.5..5.0),
        mu,
        inertia: rng.random_range(0.1..10.0),
        load: mu * rng.random_range(0.05..0.95),
    }
}

fn rng_for(opts: &AcceptanceOptions, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(id as u64))
}

/// Run one criterion (1..=12).
pub fn run_criterion(id: u8, opts: &AcceptanceOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => equilibrium_residual(opts),
        2 => critical_spectrum(opts),
        3 => routh_vs_roots(opts),
        4 => vyshnegradskii_equivalence(opts),
        5 => oracle_equivalence(opts),
        6 => sign_constants(opts),
        7 => reference_roots(),
        8 => transversality_check(opts),
        9 => supercritical_orbits(),
        10 => subcritical_orbits(),
        11 => scaling(),
        12 => determinism(opts),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let budget = Duration::from_secs(BUDGETS.get(id as usize - 1).copied().unwrap_or(0));
    let mut detail = detail;
    if elapsed > budget {
        detail.push_str("; over time budget");
    }
    CriterionResult {
        id,
        name: NAMES.get(id as usize - 1).copied().unwrap_or("?"),
        passed: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

pub fn run_all(opts: &AcceptanceOptions) -> Vec<CriterionResult> {
    (1..=12).map(|id| run_criterion(id, opts)).collect()
}

type Outcome = Result<(bool, String)>;

fn equilibrium_residual(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = random_zeta(&mut rng);
        worst = worst.max(vector_field(&equilibrium(&z), &z)?.norm());
    }
    Ok((worst < 1e-12, format!("max |f(P0)| = {worst:.2e} over 1000 points")))
}

fn critical_spectrum(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = random_zeta(&mut rng).at_critical_damping();
        let (ec, w0) = (z.epsilon(), omega0(&z));
        let r = charpoly(&z).roots();
        let err = (r[0].re + ec).abs().max(r[0].im.abs());
        let err = err.max(r[1].re.abs()).max((r[1].im - w0).abs());
        let err = err.max(r[2].re.abs()).max((r[2].im + w0).abs());
        worst = worst.max(err);
    }
    Ok((worst < 1e-9, format!("max root error = {worst:.2e} over 1000 points")))
}

fn routh_vs_roots(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 3);
    let (mut compared, mut mismatches, mut banded) = (0, 0, 0);
    while compared < 1000 {
        let z = random_zeta(&mut rng);
        let ec = epsilon_critical(&z);
        if (z.epsilon() - ec).abs() <= CRITICAL_BAND * ec {
            banded += 1;
            continue;
        }
        let cp = charpoly(&z);
        let max_re = cp.roots().iter().map(|r| r.re).fold(f64::NEG_INFINITY, f64::max);
        if routh_hurwitz(&cp) != (max_re < 0.0) {
            mismatches += 1;
        }
        compared += 1;
    }
    Ok((mismatches == 0, format!("{mismatches} disagreements in {compared} points ({banded} in critical band)")))
}

fn vyshnegradskii_equivalence(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 4);
    let (mut mismatches, mut stable) = (0, 0);
    for _ in 0..200 {
        let p = random_physical(&mut rng);
        let v = vyshnegradskii(&p)?;
        let z = crate::model::rescale_physical(&p)?.params;
        let by_eps = z.epsilon() > epsilon_critical(&z);
        if v.stable != by_eps {
            mismatches += 1;
        }
        stable += by_eps as usize;
    }
    Ok((mismatches == 0, format!("{mismatches} disagreements in 200 sets ({stable} stable)")))
}

fn oracle_equivalence(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 5);
    let bounds = SampleBox::default();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..200 {
        let p = bounds.sample(&mut rng);
        match l1_numeric(p.beta, p.alpha, p.rho, p.kappa) {
            Ok(ln) => {
                let lc = l1_closed(p.beta, p.alpha, p.rho, p.kappa);
                let rel = (ln - lc).abs() / ln.abs();
                worst = if rel.is_nan() { f64::INFINITY } else { worst.max(rel) };
            }
            Err(_) => failures += 1,
        }
    }
    Ok((
        worst < 1e-6 && failures == 0,
        format!("max relative discrepancy = {worst:.2e} over 200 points, {failures} engine failures"),
    ))
}

fn sign_constants(opts: &AcceptanceOptions) -> Outcome {
    let n = 20;
    let alpha = Axis::new(Param::Alpha, 0.1, 5.0, n);
    let beta = Axis::new(Param::Beta, 0.05, 0.95, n);
    let g_rho0 = Grid::new(vec![alpha, Axis::new(Param::Kappa, 0.0, 0.95, n), beta], Fixed::default())?;
    let g_kappa0 = Grid::new(vec![alpha, Axis::new(Param::Rho, 0.0, 3.0, n), beta], Fixed::default())?;
    let s1 = sign_constant(Formula::G1, &g_rho0, opts.workers)?;
    let s2 = sign_constant(Formula::G2, &g_kappa0, opts.workers)?;

    let m = 50;
    let (a50, b50) = (Axis::new(Param::Alpha, 0.1, 5.0, m), Axis::new(Param::Beta, 0.05, 0.95, m));
    let mut overlap_mismatch = 0;
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (a50.value(i), b50.value(j));
            if g1(b, a, 0.0).signum() != g2(b, a, 0.0).signum() {
                overlap_mismatch += 1;
            }
        }
    }
    let ok = s1.value.is_some() && s1.skipped == 0 && s2.value.is_some() && s2.skipped == 0 && overlap_mismatch == 0;
    let show = |v: Option<i8>| v.map_or("not constant".to_string(), |s| format!("{s:+}"));
    Ok((
        ok,
        format!(
            "s1 = {} ({}+/{}-/{} skipped), s2 = {} ({}+/{}-/{} skipped), overlap mismatches {}",
            show(s1.value),
            s1.positive,
            s1.negative,
            s1.skipped,
            show(s2.value),
            s2.positive,
            s2.negative,
            s2.skipped,
            overlap_mismatch
        ),
    ))
}

fn reference_roots() -> Outcome {
    let r0 = g1_small_alpha_root(0.0);
    let r1 = g1_small_alpha_root(1.0);
    let ok = matches!(r0, Some(r) if (r - 0.7746).abs() < 5e-4) && matches!(r1, Some(r) if (r - 0.5272).abs() < 5e-4);
    let show = |r: Option<f64>| r.map_or("none".to_string(), |r| format!("{r:.6}"));
    let b1 = b1_informational()?;
    Ok((
        ok,
        format!(
            "kappa = 0: beta = {}, kappa -> 1: beta = {}; informational: max rho on the kappa = 0 contour at alpha = 0.01 is {}",
            show(r0),
            show(r1),
            b1.map_or("none".to_string(), |(r, b)| format!("{r:.4} (beta {b:.3})"))
        ),
    ))
}

/// Largest ρ on the G2 = 0 contour of the κ = 0 slice at small α, with its β.
/// Not a gate: the figure this would be compared with does not state its
/// coordinates.
pub fn b1_informational() -> Result<Option<(f64, f64)>> {
    let g = Grid::new(
        vec![Axis::new(Param::Rho, 0.0, 0.2, 201), Axis::new(Param::Beta, 0.05, 0.95, 451)],
        Fixed { alpha: 0.01, ..Fixed::default() },
    )?;
    Ok(crate::scan::scan_formula(Formula::G2, &g, 0)?.contour_max_c1(0))
}

fn transversality_check(opts: &AcceptanceOptions) -> Outcome {
    let mut rng = rng_for(opts, 8);
    let bounds = SampleBox::default();
    let (mut worst, mut max_val) = (0.0f64, f64::NEG_INFINITY);
    for _ in 0..100 {
        let p = bounds.sample(&mut rng);
        let z = DimensionlessParams::critical(p.beta, p.alpha, p.rho, p.kappa)?;
        let closed = transversality_closed(&z);
        let fd = transversality_fd(&z)?;
        worst = worst.max(((closed - fd) / closed).abs());
        max_val = max_val.max(closed).max(fd);
    }
    Ok((
        worst < 1e-4 && max_val < 0.0,
        format!("max relative error = {worst:.2e}, largest value = {max_val:.4} over 100 points"),
    ))
}

fn fmt_point(p: (f64, f64, f64, f64)) -> String {
    format!("(beta {}, alpha {}, rho {}, kappa {})", p.0, p.1, p.2, p.3)
}

fn supercritical_orbits() -> Outcome {
    let opts = OrbitOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in SUPERCRITICAL_POINTS {
        let crit = DimensionlessParams::critical(p.0, p.1, p.2, p.3)?;
        let below = detect_orbit(&crit.at_ratio(0.98)?, &opts)?;
        let period_ok = (below.period / below.linear_period - 1.0).abs() < 0.1;
        let cycle_ok =
            below.found && below.stability == OrbitStability::Attracting && period_ok && below.residual < 1e-8;
        let above = crit.at_ratio(1.02)?;
        let p0 = equilibrium(&above);
        let fate = start_fate(&above, p0[0] - 1e-3, p0[2], &opts)?;
        ok &= cycle_ok && fate == Fate::Converged;
        parts.push(format!(
            "{}: cycle {} slope {:.4} T/T0 {:.4} residual {:.1e}, 1.02: {:?}",
            fmt_point(p),
            if below.found { "found" } else { "missing" },
            below.slope,
            below.period / below.linear_period,
            below.residual,
            fate
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn subcritical_orbits() -> Outcome {
    let opts = OrbitOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in SUBCRITICAL_POINTS {
        let zeta = DimensionlessParams::critical(p.0, p.1, p.2, p.3)?.at_ratio(1.02)?;
        let rep = detect_orbit(&zeta, &opts)?;
        let Some((x, z)) = rep.fixed_point else {
            ok = false;
            parts.push(format!("{}: no cycle ({})", fmt_point(p), rep.diagnostic));
            continue;
        };
        let p0 = equilibrium(&zeta);
        let at = |s: f64| start_fate(&zeta, p0[0] + s * (x - p0[0]), p0[2] + s * (z - p0[2]), &opts);
        let (inside, outside) = (at(0.9)?, at(1.1)?);
        ok &= rep.stability == OrbitStability::Repelling && inside == Fate::Converged && outside == Fate::Escaped;
        parts.push(format!(
            "{}: slope {:.4} amplitude {:.4}, inside {:?}, outside {:?}",
            fmt_point(p),
            rep.slope,
            rep.amplitude,
            inside,
            outside
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn scaling() -> Outcome {
    let p = SCALING_POINT;
    let zeta = DimensionlessParams::critical(p.0, p.1, p.2, p.3)?;
    let rows = amplitude_scaling(&zeta, &[0.04, 0.01], &OrbitOptions::default())?;
    let ratio = rows[0].ratio.unwrap_or(f64::NAN);
    Ok((
        (ratio - 2.0).abs() <= 0.4,
        format!(
            "amplitude {:.5} at delta 0.04, {:.5} at delta 0.01, ratio {:.4}",
            rows[0].amplitude, rows[1].amplitude, ratio
        ),
    ))
}

fn determinism(opts: &AcceptanceOptions) -> Outcome {
    let base = std::env::temp_dir().join(format!(
        "hgs-determinism-{}-{}",
        std::process::id(),
        std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos())
    ));
    let mut outputs = Vec::new();
    for (run, workers) in [(0, opts.workers), (1, opts.workers), (2, 1)] {
        let dir = base.join(format!("run{run}"));
        let args = [
            "hgs", "scan", "--case", "rho0", "--alpha", "0.01", "--grid", "120x120", "--workers",
            &workers.to_string(), "--output-dir", dir.to_str().unwrap_or("."),
        ];
        let code = crate::cli::run_quiet(args.iter().map(|s| s.to_string()));
        if code != 0 {
            let _ = std::fs::remove_dir_all(&base);
            return Ok((false, format!("scan run {run} exited with {code}")));
        }
        let grid = std::fs::read(dir.join("scan_rho0.csv"))?;
        let contours = std::fs::read(dir.join("scan_rho0_contours.csv"))?;
        outputs.push((grid, contours));
    }
    let _ = std::fs::remove_dir_all(&base);
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    Ok((
        same,
        format!(
            "3 runs ({} and 1 workers), {} + {} bytes, {}",
            opts.workers,
            outputs[0].0.len(),
            outputs[0].1.len(),
            if same { "identical" } else { "differ" }
        ),
    ))
}
