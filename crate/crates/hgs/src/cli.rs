//! The `hgs` command line tool.
//!
//! Single-point reports go to stdout as JSON; fields and trajectories are
//! written as CSV under the output directory. Exit codes: 0 success,
//! 1 validation error, 2 numerical failure (or a failed `verify`).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::acceptance::{run_criterion, AcceptanceOptions};
use crate::closed_forms::{g1, g2, l1_closed, l1_omega0_scaled, r_numerator, Symbols};
use crate::config::{Case, RunConfig, ScanFormula};
use crate::error::{HgsError, Result};
use crate::format::{fmt_g, round_json};
use crate::hopf::{
    hopf_frame, l1_numeric, lyapunov_from_frame, transversality_closed, transversality_fd, ClosedForms,
};
use crate::model::{derived_frequencies, equilibrium, rescale_physical, DimensionlessParams};
use crate::orbit::{detect_orbit, integrate, OrbitOptions};
use crate::scan::{oracle_cross_scan, scan_formula, Axis, Fixed, Formula, Grid, Param, SampleBox};
use crate::stability::{classify, epsilon_critical, non_uniformity, Classification};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "hgs", version, about = "Hopf bifurcation analysis of the hexagonal centrifugal governor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the equilibrium and apply Vyshnegradskii's rule
    Stability {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        physical: PhysicalFlags,
    },
    /// Critical eigenvectors, l1 and transversality at ε = ε_c
    Hopf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degeneracy_tol: Option<f64>,
    },
    /// Closed-form R, l1, G1, G2 compared with the projection engine
    Lyapunov {
        #[command(flatten)]
        common: Common,
        /// random points for an additional oracle cross-scan
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        degeneracy_tol: Option<f64>,
    },
    /// Sign map and zero contour of G1, G2 or l1 over a parameter slice
    Scan {
        #[command(flatten)]
        common: Common,
        /// rho0 (plane κ × β) or kappa0 (plane ρ × β)
        #[arg(long)]
        case: Option<String>,
        /// NxM, or KxNxM for K slices in α
        #[arg(long)]
        grid: Option<String>,
        /// auto, l1_numeric or l1_closed
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        beta_min: Option<f64>,
        #[arg(long)]
        beta_max: Option<f64>,
        #[arg(long)]
        kappa_max: Option<f64>,
        #[arg(long)]
        rho_max: Option<f64>,
        #[arg(long)]
        alpha_min: Option<f64>,
        #[arg(long)]
        alpha_max: Option<f64>,
    },
    /// Integrate from near P0 and look for the bifurcating cycle
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        t_end: Option<f64>,
        /// initial displacement x0 − x
        #[arg(long)]
        offset: Option<f64>,
    },
    /// Run the acceptance criteria
    Verify {
        #[command(flatten)]
        common: Common,
        /// run only these criteria (repeatable)
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// flat `key = value` config file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<f64>,
    /// ε / ε_c, instead of --epsilon
    #[arg(long, allow_hyphen_values = true)]
    ratio: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhysicalFlags {
    /// take physical parameters and rescale them first
    #[arg(long)]
    physical: bool,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    arm: Option<f64>,
    #[arg(long)]
    half_edge: Option<f64>,
    #[arg(long)]
    spring: Option<f64>,
    #[arg(long)]
    friction: Option<f64>,
    #[arg(long)]
    gravity: Option<f64>,
    #[arg(long)]
    gear: Option<f64>,
    #[arg(long)]
    torque: Option<f64>,
    #[arg(long)]
    inertia: Option<f64>,
    #[arg(long)]
    load: Option<f64>,
}

type Flags = Vec<(&'static str, String)>;

fn push<T: ToString>(flags: &mut Flags, key: &'static str, v: &Option<T>) {
    if let Some(v) = v {
        flags.push((key, v.to_string()));
    }
}

impl Common {
    fn flags(&self) -> Flags {
        let mut f = Flags::new();
        push(&mut f, "beta", &self.beta);
        push(&mut f, "alpha", &self.alpha);
        push(&mut f, "epsilon", &self.epsilon);
        push(&mut f, "ratio", &self.ratio);
        push(&mut f, "rho", &self.rho);
        push(&mut f, "kappa", &self.kappa);
        push(&mut f, "rtol", &self.rtol);
        push(&mut f, "atol", &self.atol);
        push(&mut f, "workers", &self.workers);
        push(&mut f, "seed", &self.seed);
        push(&mut f, "output_dir", &self.output_dir.as_ref().map(|p| p.display().to_string()));
        f
    }
}

impl PhysicalFlags {
    fn flags(&self) -> Flags {
        let mut f = Flags::new();
        if self.physical {
            f.push(("physical", "true".into()));
        }
        push(&mut f, "mass", &self.mass);
        push(&mut f, "arm", &self.arm);
        push(&mut f, "half_edge", &self.half_edge);
        push(&mut f, "spring", &self.spring);
        push(&mut f, "friction", &self.friction);
        push(&mut f, "gravity", &self.gravity);
        push(&mut f, "gear", &self.gear);
        push(&mut f, "torque", &self.torque);
        push(&mut f, "inertia", &self.inertia);
        push(&mut f, "load", &self.load);
        f
    }
}

/// Defaults, then the config file, then the environment, then `flags`.
fn effective_config(
    file: Option<&Path>,
    env: impl Fn(&str) -> Option<String>,
    flags: &[(&'static str, String)],
) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HgsError::Usage(format!("--config {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    cfg.apply_env(env)?;
    for (key, value) in flags {
        cfg.set(key, value).map_err(|m| HgsError::Usage(format!("--{}: {m}", key.replace('_', "-"))))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn report(command: &str, cfg: &RunConfig, body: Value, agreement: Value) -> Value {
    let mut r = json!({
        "version": VERSION,
        "command": command,
        "config": cfg,
        "agreement": agreement,
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut r, body) {
        dst.extend(src);
    }
    round_json(r)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// ζ from the config: explicit ε, else `ratio`·ε_c with `default_ratio`.
fn zeta_of(cfg: &RunConfig, default_ratio: f64) -> Result<DimensionlessParams> {
    let crit = DimensionlessParams::critical(cfg.beta, cfg.alpha, cfg.rho, cfg.kappa)?;
    match cfg.epsilon {
        Some(e) => crit.with_epsilon(e),
        None => crit.at_ratio(cfg.ratio.unwrap_or(default_ratio)),
    }
}

fn stability_cmd(cfg: &RunConfig) -> Result<Value> {
    let (zeta, rescaling, vysh) = if cfg.physical {
        let r = rescale_physical(&cfg.physical_params())?;
        let v = crate::stability::vyshnegradskii(&cfg.physical_params())?;
        (r.params, Some(r), to_value(&v))
    } else {
        let zeta = zeta_of(cfg, 1.0)?;
        // dimensionless form of (bI/m)η: ε η / α
        let eta = non_uniformity(zeta.beta(), zeta.rho(), zeta.kappa());
        let criterion = zeta.epsilon() * eta / zeta.alpha();
        (zeta, None, json!({"eta_dimensionless": eta, "criterion": criterion, "stable": criterion > 1.0}))
    };
    let v = classify(&zeta);
    let vysh_stable = vysh["stable"].as_bool().unwrap_or(false);
    let agree_vysh = match v.classification {
        Classification::Critical => true,
        c => vysh_stable == (c == Classification::AsymptoticallyStable),
    };
    Ok(report(
        "stability",
        cfg,
        json!({
            "zeta": zeta,
            "rescaling": rescaling,
            "p1": v.charpoly.p1,
            "p2": v.charpoly.p2,
            "p3": v.charpoly.p3,
            "eps_c": v.eps_c,
            "margin": v.margin,
            "classification": v.classification,
            "roots": v.roots,
            "vyshnegradskii": vysh,
        }),
        json!({"roots_vs_margin": v.roots_agree, "vyshnegradskii_vs_margin": agree_vysh}),
    ))
}

fn hopf_cmd(cfg: &RunConfig, degeneracy_tol: f64) -> Result<Value> {
    let zeta = DimensionlessParams::critical(cfg.beta, cfg.alpha, cfg.rho, cfg.kappa)?;
    let frame = hopf_frame(&zeta)?;
    let rep = lyapunov_from_frame(&frame, &ClosedForms::new(&zeta), degeneracy_tol)?;
    let closed = l1_closed(cfg.beta, cfg.alpha, cfg.rho, cfg.kappa);
    let rel = (rep.l1 - closed).abs() / rep.l1.abs();
    let t_closed = transversality_closed(&zeta);
    let t_fd = transversality_fd(&zeta)?;
    Ok(report(
        "hopf",
        cfg,
        json!({
            "eps_c": frame.eps_c,
            "omega0": frame.omega0,
            "q": frame.q,
            "p": frame.p,
            "G21": rep.g21,
            "l1": rep.l1,
            "l1_closed_form": closed,
            "transversality": rep.transversality,
            "transversality_closed_form": t_closed,
            "transversality_finite_difference": t_fd,
            "classification": rep.classification,
            "residuals": {
                "frame": rep.frame_residual,
                "h20": rep.h20_residual,
                "fredholm": rep.fredholm_residual,
            },
        }),
        json!({
            "l1_relative_discrepancy": rel,
            "l1_vs_closed_form": rel < 1e-6,
            "transversality_vs_closed_form": ((rep.transversality - t_closed) / t_closed).abs() < 1e-9,
            "transversality_vs_finite_difference": ((t_fd - t_closed) / t_closed).abs() < 1e-4,
        }),
    ))
}

fn lyapunov_cmd(cfg: &RunConfig, degeneracy_tol: f64) -> Result<Value> {
    let (b, a, r, k) = (cfg.beta, cfg.alpha, cfg.rho, cfg.kappa);
    let zeta = DimensionlessParams::critical(b, a, r, k)?;
    let rep = lyapunov_from_frame(&hopf_frame(&zeta)?, &ClosedForms::new(&zeta), degeneracy_tol)?;
    let numeric = rep.l1;
    let closed = l1_closed(b, a, r, k);
    let rel = (numeric - closed).abs() / numeric.abs();
    let g1v = (r == 0.0).then(|| g1(b, a, k));
    let g2v = (k == 0.0).then(|| g2(b, a, r));
    let same_sign = |g: Option<f64>| g.map(|g| g.signum() == numeric.signum());
    let cross = (cfg.samples > 0).then(|| oracle_cross_scan(&SampleBox::default(), cfg.samples, cfg.seed));
    let mut agreement = json!({
        "l1_relative_discrepancy": rel,
        "l1_vs_closed_form": rel < 1e-6,
        "G1_sign_vs_l1": same_sign(g1v),
        "G2_sign_vs_l1": same_sign(g2v),
    });
    if let Some(c) = &cross {
        agreement["cross_scan_max_relative"] = json!(c.max_rel_discrepancy);
        agreement["cross_scan_vs_closed_form"] = json!(c.max_rel_discrepancy < 1e-6 && c.failures == 0);
    }
    Ok(report(
        "lyapunov",
        cfg,
        json!({
            "eps_c": rep.eps_c,
            "omega0": rep.omega0,
            "R": r_numerator(&Symbols::new(b, a, r, k)),
            "l1_closed_form": closed,
            "l1_omega0_scaled": l1_omega0_scaled(b, a, r, k),
            "l1_numeric": numeric,
            "real_parts": rep.real_parts,
            "G1": g1v,
            "G2": g2v,
            "classification": rep.classification,
            "cross_scan": cross,
        }),
        agreement,
    ))
}

/// Grid for the `scan` subcommand.
pub fn scan_grid(cfg: &RunConfig) -> Result<(Grid, Formula)> {
    let (pinned, c1, formula) = match cfg.case {
        Case::Rho0 => ("rho", Axis::new(Param::Kappa, 0.0, cfg.kappa_max, 0), Formula::G1),
        Case::Kappa0 => ("kappa", Axis::new(Param::Rho, 0.0, cfg.rho_max, 0), Formula::G2),
    };
    let pinned_value = if cfg.case == Case::Rho0 { cfg.rho } else { cfg.kappa };
    if pinned_value != 0.0 {
        return Err(HgsError::Usage(format!("case {pinned}0 pins {pinned} at 0, got {pinned} = {pinned_value}")));
    }
    let n = &cfg.grid;
    let (slices, n1, n2) = if n.len() == 3 { (Some(n[0]), n[1], n[2]) } else { (None, n[0], n[1]) };
    let mut axes = Vec::new();
    if let Some(k) = slices {
        axes.push(Axis::new(Param::Alpha, cfg.alpha_min, cfg.alpha_max, k));
    }
    axes.push(Axis { count: n1, ..c1 });
    axes.push(Axis::new(Param::Beta, cfg.beta_min, cfg.beta_max, n2));
    let fixed = Fixed { beta: cfg.beta, alpha: cfg.alpha, rho: 0.0, kappa: 0.0 };
    let formula = match cfg.formula {
        ScanFormula::Auto => formula,
        ScanFormula::L1Numeric => Formula::L1Numeric,
        ScanFormula::L1Closed => Formula::L1Closed,
    };
    Ok((Grid::new(axes, fixed)?, formula))
}

fn case_name(c: Case) -> &'static str {
    match c {
        Case::Rho0 => "rho0",
        Case::Kappa0 => "kappa0",
    }
}

fn scan_cmd(cfg: &RunConfig) -> Result<Value> {
    let (grid, formula) = scan_grid(cfg)?;
    let map = scan_formula(formula, &grid, cfg.workers)?;
    std::fs::create_dir_all(&cfg.output_dir)?;
    let stem = format!("scan_{}", case_name(cfg.case));
    let grid_path = cfg.output_dir.join(format!("{stem}.csv"));
    let contour_path = cfg.output_dir.join(format!("{stem}_contours.csv"));
    std::fs::write(&grid_path, map.to_csv())?;
    std::fs::write(&contour_path, map.contours_csv())?;

    // spot-check the sign against the projection engine on ~200 points
    let stride = (grid.len() / 200).max(1);
    let (mut checked, mut mismatches) = (0, 0);
    for kk in (0..grid.len()).step_by(stride) {
        let p = grid.point(kk);
        if map.signs[kk] == 0 {
            continue;
        }
        if let Ok(l) = l1_numeric(p.beta, p.alpha, p.rho, p.kappa) {
            checked += 1;
            if l.signum() as i8 != map.signs[kk] {
                mismatches += 1;
            }
        }
    }
    let n1 = grid.axes[grid.axes.len() - 2].count;
    let slices: Vec<Value> = map
        .contours
        .iter()
        .map(|s| {
            json!({
                "slice": s.slice,
                "alpha": s.slice_value.unwrap_or(grid.fixed.alpha),
                "polylines": s.polylines.len(),
                "vertices": s.polylines.iter().map(Vec::len).sum::<usize>(),
                "beta_crossings_first_row": map.crossings_at_c1(s.slice, 0),
                "beta_crossings_last_row": map.crossings_at_c1(s.slice, n1 - 1),
                "contour_max_c1": map.contour_max_c1(s.slice),
            })
        })
        .collect();
    let positive = map.signs.iter().filter(|&&s| s > 0).count();
    let negative = map.signs.iter().filter(|&&s| s < 0).count();
    Ok(report(
        "scan",
        cfg,
        json!({
            "formula": formula.name(),
            "axes": grid.axes,
            "points": grid.len(),
            "positive": positive,
            "negative": negative,
            "masked": map.masked,
            "slices": slices,
            "files": {"grid": grid_path, "contours": contour_path},
        }),
        json!({"sign_vs_l1_checked": checked, "sign_vs_l1_mismatches": mismatches, "sign_vs_l1": mismatches == 0}),
    ))
}

fn simulate_cmd(cfg: &RunConfig) -> Result<Value> {
    let zeta = zeta_of(cfg, 0.98)?;
    let eps_c = epsilon_critical(&zeta);
    let ratio = zeta.epsilon() / eps_c;
    let p0 = equilibrium(&zeta);
    let s0 = p0 - crate::numeric::RVec3::new(cfg.offset, 0.0, 0.0);
    let traj = integrate(&s0, &zeta, cfg.t_end, cfg.tolerances(), None)?;
    std::fs::create_dir_all(&cfg.output_dir)?;
    let path = cfg.output_dir.join("trajectory.csv");
    let mut csv = String::from("t,x,y,z\n");
    for (t, s) in traj.t.iter().zip(&traj.states) {
        csv.push_str(&format!("{},{},{},{}\n", fmt_g(*t), fmt_g(s[0]), fmt_g(s[1]), fmt_g(s[2])));
    }
    std::fs::write(&path, csv)?;

    let orbit = if (ratio - 1.0).abs() < 0.1 {
        let opts = OrbitOptions { tol: cfg.tolerances(), ..OrbitOptions::default() };
        Some(detect_orbit(&zeta, &opts)?)
    } else {
        None
    };
    let mut agreement = json!({});
    if let Some(o) = orbit.as_ref().filter(|o| o.found) {
        agreement["period_vs_linear"] = json!((o.period / o.linear_period - 1.0).abs() < 0.1);
        agreement["residual_below_1e-8"] = json!(o.residual < 1e-8);
        if let Some(pa) = o.predicted_amplitude {
            agreement["amplitude_vs_normal_form_ratio"] = json!(o.amplitude / pa);
        }
    }
    Ok(report(
        "simulate",
        cfg,
        json!({
            "zeta": zeta,
            "eps_c": eps_c,
            "ratio": ratio,
            "omega0": derived_frequencies(&zeta).omega0,
            "start": [s0[0], s0[1], s0[2]],
            "termination": traj.termination,
            "steps": traj.t.len() - 1,
            "final_state": traj.states.last().map(|s| [s[0], s[1], s[2]]),
            "trajectory_file": path,
            "orbit": orbit,
            "orbit_note": if orbit.is_none() { Some("orbit search needs |eps/eps_c - 1| < 0.1") } else { None },
        }),
        agreement,
    ))
}

fn verify_cmd(cfg: &RunConfig, criteria: &[u8], out: &mut dyn Write) -> Result<bool> {
    let opts = AcceptanceOptions { seed: cfg.seed, workers: cfg.workers };
    let ids: Vec<u8> = if criteria.is_empty() { (1..=12).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| !(1..=12).contains(&i)) {
        return Err(HgsError::InvalidParameter { name: "criterion", value: *bad as f64, range: "1..=12" });
    }
    let mut all = true;
    for id in ids {
        let r = run_criterion(id, &opts);
        writeln!(out, "{}", r.line())?;
        all &= r.passed;
    }
    writeln!(out, "verify v{VERSION}: {}", if all { "all criteria passed" } else { "FAILED" })?;
    Ok(all)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let env = |k: &str| std::env::var(k).ok();
    let emit = |out: &mut dyn Write, v: Value| -> Result<i32> {
        writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default())?;
        Ok(0)
    };
    match cli.command {
        Command::Stability { common, physical } => {
            let mut flags = common.flags();
            flags.extend(physical.flags());
            let cfg = effective_config(common.config.as_deref(), env, &flags)?;
            emit(out, stability_cmd(&cfg)?)
        }
        Command::Hopf { common, degeneracy_tol } => {
            let cfg = effective_config(common.config.as_deref(), env, &with(common.flags(), "degeneracy_tol", &degeneracy_tol))?;
            emit(out, hopf_cmd(&cfg, cfg.degeneracy_tol)?)
        }
        Command::Lyapunov { common, samples, degeneracy_tol } => {
            let flags = with(with(common.flags(), "samples", &samples), "degeneracy_tol", &degeneracy_tol);
            let cfg = effective_config(common.config.as_deref(), env, &flags)?;
            emit(out, lyapunov_cmd(&cfg, cfg.degeneracy_tol)?)
        }
        Command::Scan { common, case, grid, formula, beta_min, beta_max, kappa_max, rho_max, alpha_min, alpha_max } => {
            let mut flags = common.flags();
            push(&mut flags, "case", &case);
            push(&mut flags, "grid", &grid);
            push(&mut flags, "formula", &formula);
            push(&mut flags, "beta_min", &beta_min);
            push(&mut flags, "beta_max", &beta_max);
            push(&mut flags, "kappa_max", &kappa_max);
            push(&mut flags, "rho_max", &rho_max);
            push(&mut flags, "alpha_min", &alpha_min);
            push(&mut flags, "alpha_max", &alpha_max);
            let cfg = effective_config(common.config.as_deref(), env, &flags)?;
            emit(out, scan_cmd(&cfg)?)
        }
        Command::Simulate { common, t_end, offset } => {
            let flags = with(with(common.flags(), "t_end", &t_end), "offset", &offset);
            let cfg = effective_config(common.config.as_deref(), env, &flags)?;
            emit(out, simulate_cmd(&cfg)?)
        }
        Command::Verify { common, criteria } => {
            let cfg = effective_config(common.config.as_deref(), env, &common.flags())?;
            Ok(if verify_cmd(&cfg, &criteria, out)? { 0 } else { 2 })
        }
    }
}

fn with<T: ToString>(mut flags: Flags, key: &'static str, v: &Option<T>) -> Flags {
    push(&mut flags, key, v);
    flags
}

/// Run the tool with `argv` (program name first), writing reports to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// [`run_with`] on stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run_with`] with all output discarded; files are still written.
pub fn run_quiet<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::sink(), &mut std::io::sink())
}
