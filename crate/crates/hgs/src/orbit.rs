//! Time integration and empirical detection of the bifurcating cycle.
//!
//! The integrator is Dormand–Prince 5(4) with the 4th-order continuous
//! extension, used to locate crossings of the section `y = 0`. Upward
//! crossings (`y' > 0`) happen on the `x < x0` side of the equilibrium, so
//! the return map acts on `(x, z)` pairs there.

use serde::Serialize;

use crate::error::{HgsError, Result};
use crate::hopf::{lyapunov_coefficient, transversality_closed};
use crate::model::{derived_frequencies, equilibrium, field_raw, in_domain, DimensionlessParams, State};
use crate::stability::epsilon_critical;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Smallest step before the integrator gives up.
pub const MIN_STEP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerances {
    /// Defaults for orbit work.
    pub const ORBIT: Tolerances = Tolerances { rel: 1e-10, abs: 1e-12 };
    /// Looser defaults for scans.
    pub const SCAN: Tolerances = Tolerances { rel: 1e-8, abs: 1e-8 };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rel_tol", self.rel), ("abs_tol", self.abs)] {
            if !(1e-12..=1e-3).contains(&v) {
                return Err(HgsError::InvalidParameter { name, value: v, range: "[1e-12, 1e-3]" });
            }
        }
        Ok(())
    }
}

/// One accepted step with its continuous extension.
#[derive(Debug, Clone)]
pub struct Step {
    pub t0: f64,
    pub t1: f64,
    pub y0: State,
    pub y1: State,
    cont: [State; 5],
}

impl Step {
    /// Dense output at `t ∈ [t0, t1]`.
    pub fn at(&self, t: f64) -> State {
        let th = (t - self.t0) / (self.t1 - self.t0);
        let th1 = 1.0 - th;
        let [r1, r2, r3, r4, r5] = &self.cont;
        r1 + (r2 + (r3 + (r4 + r5 * th1) * th) * th1) * th
    }
}

/// Adaptive Dormand–Prince integrator for the governor field.
pub struct Dopri5<'a> {
    zeta: &'a DimensionlessParams,
    tol: Tolerances,
    pub steps_taken: usize,
    pub max_steps: usize,
}

pub enum Control {
    Continue,
    Stop,
}

impl<'a> Dopri5<'a> {
    pub fn new(zeta: &'a DimensionlessParams, tol: Tolerances) -> Self {
        Dopri5 { zeta, tol, steps_taken: 0, max_steps: 50_000_000 }
    }

    fn f(&self, y: &State) -> State {
        field_raw(y, self.zeta)
    }

    fn err_norm(&self, y: &State, y1: &State, e: &State) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            let sc = self.tol.abs + self.tol.rel * y[i].abs().max(y1[i].abs());
            acc += (e[i] / sc).powi(2);
        }
        (acc / 3.0).sqrt()
    }

    fn initial_step(&self, y: &State, f0: &State) -> f64 {
        let sc = y.map(|v| self.tol.abs + self.tol.rel * v.abs());
        let d0 = y.component_div(&sc).norm();
        let d1 = f0.component_div(&sc).norm();
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.min(0.1)
    }

    /// Integrate from `(t0, y0)` up to `t_end`, calling `on_step` after every
    /// accepted step. Returns the final step's end time and state.
    pub fn run(
        &mut self,
        t0: f64,
        y0: State,
        t_end: f64,
        mut on_step: impl FnMut(&Step) -> Control,
    ) -> Result<(f64, State)> {
        let mut t = t0;
        let mut y = y0;
        let mut k1 = self.f(&y);
        let mut h = self.initial_step(&y, &k1).min(t_end - t0);
        let mut rejected_last = false;
        while t < t_end {
            if self.steps_taken >= self.max_steps {
                return Err(HgsError::StepUnderflow(h));
            }
            if h < MIN_STEP * (1.0 + t.abs()) {
                return Err(HgsError::StepUnderflow(h));
            }
            let last = t + h >= t_end;
            if last {
                h = t_end - t;
            }
            let k2 = self.f(&(y + h * A21 * k1));
            let k3 = self.f(&(y + h * (A31 * k1 + A32 * k2)));
            let k4 = self.f(&(y + h * (A41 * k1 + A42 * k2 + A43 * k3)));
            let k5 = self.f(&(y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4)));
            let k6 = self.f(&(y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5)));
            let y1 = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            let k7 = self.f(&y1);
            let e = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let err = self.err_norm(&y, &y1, &e);
            if !err.is_finite() {
                h *= 0.1;
                rejected_last = true;
                continue;
            }
            if err <= 1.0 {
                let t1 = if last { t_end } else { t + h };
                let dy = y1 - y;
                let r3 = h * k1 - dy;
                let step = Step {
                    t0: t,
                    t1,
                    y0: y,
                    y1,
                    cont: [
                        y,
                        dy,
                        r3,
                        dy - h * k7 - r3,
                        h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7),
                    ],
                };
                self.steps_taken += 1;
                t = t1;
                y = y1;
                k1 = k7;
                if let Control::Stop = on_step(&step) {
                    return Ok((t, y));
                }
                let mut fac = 0.9 * err.max(1e-10).powf(-0.2);
                fac = fac.clamp(0.2, 10.0);
                if rejected_last {
                    fac = fac.min(1.0);
                }
                h *= fac;
                rejected_last = false;
            } else {
                h *= (0.9 * err.powf(-0.2)).max(0.2);
                rejected_last = true;
            }
        }
        Ok((t, y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    TimeEnd,
    DomainExit,
    Converged,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub states: Vec<State>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn last(&self) -> (f64, State) {
        (*self.t.last().unwrap(), *self.states.last().unwrap())
    }
}

/// Integrate the governor field. Stops early on domain exit, or on reaching
/// `converge_radius` of P0 when given.
pub fn integrate(
    s0: &State,
    zeta: &DimensionlessParams,
    t_end: f64,
    tol: Tolerances,
    converge_radius: Option<f64>,
) -> Result<Trajectory> {
    tol.validate()?;
    if !in_domain(s0) {
        return Err(HgsError::Domain(s0[0]));
    }
    let p0 = equilibrium(zeta);
    let mut t = vec![0.0];
    let mut states = vec![*s0];
    let mut termination = Termination::TimeEnd;
    if (s0 - p0).norm() == 0.0 {
        // the equilibrium is a fixed point of the exact flow and of the scheme
        t.push(t_end);
        states.push(*s0);
        return Ok(Trajectory { t, states, termination });
    }
    let mut solver = Dopri5::new(zeta, tol);
    solver.run(0.0, *s0, t_end, |st| {
        if !in_domain(&st.y1) {
            termination = Termination::DomainExit;
            return Control::Stop;
        }
        t.push(st.t1);
        states.push(st.y1);
        if let Some(r) = converge_radius {
            if (st.y1 - p0).norm() < r {
                termination = Termination::Converged;
                return Control::Stop;
            }
        }
        Control::Continue
    })?;
    Ok(Trajectory { t, states, termination })
}

/// Crossing of the section `y = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectionPoint {
    pub t: f64,
    pub x: f64,
    pub z: f64,
}

fn locate_crossing(step: &Step) -> f64 {
    // y changes sign on [t0, t1]; Illinois false position on the dense output
    let (mut a, mut b) = (step.t0, step.t1);
    let (mut fa, mut fb) = (step.y0[1], step.y1[1]);
    let mut side = 0;
    for _ in 0..100 {
        if (b - a).abs() < 1e-13 * (1.0 + b.abs()) {
            break;
        }
        let m = (a * fb - b * fa) / (fb - fa);
        let fm = step.at(m)[1];
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fb.signum() {
            b = m;
            fb = fm;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = m;
            fa = fm;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

/// How a trajectory started on the section ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Fate {
    Done,
    Escaped,
    Converged,
    OutOfTime,
}

struct Walk {
    up: Vec<SectionPoint>,
    down: Vec<SectionPoint>,
    outcome: Fate,
}

/// Follow the flow from `s0` until `n_up` upward section crossings have been
/// recorded, or something else ends the walk.
fn walk(
    s0: &State,
    zeta: &DimensionlessParams,
    n_up: usize,
    t_max: f64,
    tol: Tolerances,
    escape: f64,
    converge: f64,
    settle: f64,
) -> Result<Walk> {
    let p0 = equilibrium(zeta);
    let mut w = Walk { up: Vec::new(), down: Vec::new(), outcome: Fate::OutOfTime };
    if (s0 - p0).norm() <= converge {
        w.outcome = Fate::Converged;
        return Ok(w);
    }
    let mut solver = Dopri5::new(zeta, tol);
    let mut outcome = Fate::OutOfTime;
    solver.run(0.0, *s0, t_max, |st| {
        if !in_domain(&st.y1) || (st.y1[0] - p0[0]).abs() > escape {
            outcome = Fate::Escaped;
            return Control::Stop;
        }
        let (ya, yb) = (st.y0[1], st.y1[1]);
        if ya < 0.0 && yb >= 0.0 || ya > 0.0 && yb <= 0.0 {
            let tc = locate_crossing(st);
            let s = st.at(tc);
            let pt = SectionPoint { t: tc, x: s[0], z: s[2] };
            if ya < 0.0 {
                w.up.push(pt);
                if (pt.x - p0[0]).abs() < converge && (pt.z - p0[2]).abs() < converge {
                    outcome = Fate::Converged;
                    return Control::Stop;
                }
                let n = w.up.len();
                if n >= 2 && settle > 0.0 {
                    let (a, b) = (w.up[n - 2], w.up[n - 1]);
                    if (a.x - b.x).hypot(a.z - b.z) < settle {
                        outcome = Fate::Done;
                        return Control::Stop;
                    }
                }
                if n >= n_up {
                    outcome = Fate::Done;
                    return Control::Stop;
                }
            } else {
                w.down.push(pt);
            }
        }
        Control::Continue
    })?;
    w.outcome = outcome;
    Ok(w)
}

fn time_budget(zeta: &DimensionlessParams, returns: usize) -> f64 {
    let w0 = derived_frequencies(zeta).omega0;
    (returns as f64 + 2.0) * 20.0 * std::f64::consts::PI / w0
}

/// Successive upward crossings of `y = 0` starting from `s0`.
pub fn poincare_returns(
    s0: &State,
    zeta: &DimensionlessParams,
    n_returns: usize,
    tol: Tolerances,
) -> Result<Vec<SectionPoint>> {
    tol.validate()?;
    if !in_domain(s0) {
        return Err(HgsError::Domain(s0[0]));
    }
    let w = walk(s0, zeta, n_returns, time_budget(zeta, n_returns), tol, f64::INFINITY, 1e-13, 0.0)?;
    if w.up.len() < n_returns {
        return Err(HgsError::FewerReturns { found: w.up.len(), wanted: n_returns });
    }
    Ok(w.up)
}

/// Tunables for [`detect_orbit`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitOptions {
    pub tol: Tolerances,
    /// |slope − 1| below this is reported as Inconclusive.
    pub slope_margin: f64,
    /// Fixed-point convergence on the section.
    pub fixed_point_tol: f64,
    pub max_returns: usize,
    /// Bisection bracket on the initial radius.
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub bisection_steps: usize,
    /// |x − x0| beyond this counts as escape.
    pub escape: f64,
    /// Section distance to P0 counted as convergence.
    pub converge: f64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            tol: Tolerances::ORBIT,
            slope_margin: 1e-3,
            fixed_point_tol: 1e-8,
            max_returns: 4000,
            inner_radius: 1e-4,
            outer_radius: 0.3,
            bisection_steps: 40,
            escape: 0.5,
            converge: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitStability {
    Attracting,
    Repelling,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub found: bool,
    pub epsilon: f64,
    pub eps_c: f64,
    /// period of the cycle
    pub period: f64,
    /// max |x − x0| over one period
    pub amplitude: f64,
    /// dominant eigenvalue of the return map at the fixed point
    pub slope: f64,
    pub stability: OrbitStability,
    /// section point (x, z) on the cycle
    pub fixed_point: Option<(f64, f64)>,
    /// |P(s) − s| at the reported fixed point
    pub residual: f64,
    /// 2π/ω0
    pub linear_period: f64,
    /// normal-form amplitude estimate, when l1 has the matching sign
    pub predicted_amplitude: Option<f64>,
    pub diagnostic: String,
}

/// Return map on the section plus its travel time.
struct SectionMap<'a> {
    zeta: &'a DimensionlessParams,
    tol: Tolerances,
    x0: f64,
}

impl SectionMap<'_> {
    fn apply(&self, x: f64, z: f64) -> Result<(f64, f64, f64, f64)> {
        let s = State::new(x, 0.0, z);
        let w = walk(&s, self.zeta, 1, time_budget(self.zeta, 1), self.tol, f64::INFINITY, 0.0, 0.0)?;
        let up = w.up.first().ok_or(HgsError::FewerReturns { found: 0, wanted: 1 })?;
        let down = w.down.iter().map(|d| (d.x - self.x0).abs()).fold(0.0, f64::max);
        let amp = down.max((x - self.x0).abs()).max((up.x - self.x0).abs());
        Ok((up.x, up.z, up.t, amp))
    }

    fn jacobian(&self, x: f64, z: f64) -> Result<[[f64; 2]; 2]> {
        let h = 1e-6;
        let (xp, zp, _, _) = self.apply(x + h, z)?;
        let (xm, zm, _, _) = self.apply(x - h, z)?;
        let (xq, zq, _, _) = self.apply(x, z + h)?;
        let (xn, zn, _, _) = self.apply(x, z - h)?;
        Ok([
            [(xp - xm) / (2.0 * h), (xq - xn) / (2.0 * h)],
            [(zp - zm) / (2.0 * h), (zq - zn) / (2.0 * h)],
        ])
    }

    /// Newton on `P(s) − s`.
    fn polish(&self, x: f64, z: f64, tol: f64) -> Result<(f64, f64, f64)> {
        let (mut x, mut z) = (x, z);
        let mut res = f64::INFINITY;
        for _ in 0..12 {
            let (px, pz, _, _) = self.apply(x, z)?;
            let (fx, fz) = (px - x, pz - z);
            res = fx.hypot(fz);
            if res < 0.01 * tol {
                break;
            }
            let j = self.jacobian(x, z)?;
            let (a, b, c, d) = (j[0][0] - 1.0, j[0][1], j[1][0], j[1][1] - 1.0);
            let det = a * d - b * c;
            if det.abs() < 1e-300 {
                break;
            }
            let dx = (d * fx - b * fz) / det;
            let dz = (-c * fx + a * fz) / det;
            x -= dx;
            z -= dz;
        }
        Ok((x, z, res))
    }
}

fn dominant_eigenvalue(j: &[[f64; 2]; 2]) -> f64 {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr * tr / 4.0 - det;
    if disc >= 0.0 {
        let (l1, l2) = (tr / 2.0 + disc.sqrt(), tr / 2.0 - disc.sqrt());
        if l1.abs() >= l2.abs() {
            l1
        } else {
            l2
        }
    } else {
        // complex pair: report the modulus
        det.abs().sqrt()
    }
}

fn stability_of(slope: f64, margin: f64) -> OrbitStability {
    if slope.abs() < 1.0 - margin {
        OrbitStability::Attracting
    } else if slope.abs() > 1.0 + margin {
        OrbitStability::Repelling
    } else {
        OrbitStability::Inconclusive
    }
}

/// Search for the small cycle near the Hopf point.
///
/// Below ε_c (P0 unstable) the return map is iterated from a perturbed start,
/// looking for an attracting cycle. Above ε_c (P0 stable) the initial radius
/// is bisected between starts that spiral into P0 and starts that escape,
/// looking for a repelling cycle. Either way the fixed point is polished by
/// Newton on the section map.
pub fn detect_orbit(zeta: &DimensionlessParams, opts: &OrbitOptions) -> Result<OrbitReport> {
    opts.tol.validate()?;
    let eps_c = epsilon_critical(zeta);
    let ratio = zeta.epsilon() / eps_c;
    if (ratio - 1.0).abs() >= 0.1 {
        return Err(HgsError::InvalidParameter {
            name: "epsilon/eps_c",
            value: ratio,
            range: "(0.9, 1.1)",
        });
    }
    let p0 = equilibrium(zeta);
    let (x0, z0) = (p0[0], p0[2]);
    let w0 = derived_frequencies(zeta).omega0;
    let crit = zeta.at_critical_damping();
    let l1 = lyapunov_coefficient(&crit)?.l1;
    let gamma = transversality_closed(&crit) * (zeta.epsilon() - eps_c);
    let predicted = if -gamma / l1 > 0.0 { Some(2.0 * (-gamma / l1).sqrt()) } else { None };

    let mut report = OrbitReport {
        found: false,
        epsilon: zeta.epsilon(),
        eps_c,
        period: 0.0,
        amplitude: 0.0,
        slope: 0.0,
        stability: OrbitStability::Inconclusive,
        fixed_point: None,
        residual: f64::NAN,
        linear_period: 2.0 * std::f64::consts::PI / w0,
        predicted_amplitude: predicted,
        diagnostic: String::new(),
    };
    let map = SectionMap { zeta, tol: opts.tol, x0 };

    let start = if ratio < 1.0 {
        let r0 = predicted.unwrap_or(1e-3).clamp(opts.inner_radius, opts.outer_radius);
        let s0 = State::new(x0 - r0, 0.0, z0);
        let w = walk(&s0, zeta, opts.max_returns, time_budget(zeta, opts.max_returns), opts.tol, opts.escape, 0.0, opts.fixed_point_tol)?;
        match w.outcome {
            Fate::Escaped => {
                report.diagnostic = "trajectory left the neighbourhood of P0; no attracting cycle".into();
                return Ok(report);
            }
            Fate::OutOfTime => {
                return Err(HgsError::OrbitNotFound("time budget exhausted while iterating the return map".into()))
            }
            _ => {}
        }
        let last = w.up.last().ok_or(HgsError::FewerReturns { found: 0, wanted: 1 })?;
        (last.x, last.z)
    } else {
        let fate = |r: f64| -> Result<Fate> {
            let s0 = State::new(x0 - r, 0.0, z0);
            let w = walk(&s0, zeta, opts.max_returns, time_budget(zeta, opts.max_returns), opts.tol, opts.escape, opts.converge, 0.0)?;
            Ok(w.outcome)
        };
        let (mut lo, mut hi) = (opts.inner_radius, opts.outer_radius);
        let (f_lo, f_hi) = (fate(lo)?, fate(hi)?);
        if f_lo != Fate::Converged {
            report.diagnostic = format!("innermost start did not converge to P0 ({f_lo:?})");
            return Ok(report);
        }
        if f_hi == Fate::Converged {
            report.diagnostic = "all starts up to the outer radius converge to P0; no repelling cycle".into();
            return Ok(report);
        }
        if f_hi != Fate::Escaped {
            return Err(HgsError::OrbitNotFound(format!("outer start neither escaped nor converged ({f_hi:?})")));
        }
        for _ in 0..opts.bisection_steps {
            let mid = 0.5 * (lo + hi);
            match fate(mid)? {
                Fate::Converged => lo = mid,
                Fate::Escaped => hi = mid,
                other => {
                    return Err(HgsError::OrbitNotFound(format!("bisection start at radius {mid} ended as {other:?}")))
                }
            }
            if hi - lo < 1e-9 {
                break;
            }
        }
        (x0 - 0.5 * (lo + hi), z0)
    };

    let (x, z, _) = map.polish(start.0, start.1, opts.fixed_point_tol)?;
    let (px, pz, period, amp) = map.apply(x, z)?;
    let residual = (px - x).hypot(pz - z);
    if residual > opts.fixed_point_tol || (x - x0).abs() < 1e-7 {
        return Err(HgsError::OrbitNotFound(format!(
            "fixed point did not converge (residual {residual:e}, radius {:e})",
            (x - x0).abs()
        )));
    }
    let slope = dominant_eigenvalue(&map.jacobian(x, z)?);
    report.found = true;
    report.period = period;
    report.amplitude = amp;
    report.slope = slope;
    report.stability = stability_of(slope, opts.slope_margin);
    report.fixed_point = Some((x, z));
    report.residual = residual;
    Ok(report)
}

/// Fate of the start `(x, 0, z)` within the walk budget of `opts`:
/// `Converged` to P0, `Escaped` the neighbourhood, or neither.
pub fn start_fate(zeta: &DimensionlessParams, x: f64, z: f64, opts: &OrbitOptions) -> Result<Fate> {
    opts.tol.validate()?;
    let s0 = State::new(x, 0.0, z);
    if !in_domain(&s0) {
        return Err(HgsError::Domain(x));
    }
    let n = opts.max_returns;
    Ok(walk(&s0, zeta, n, time_budget(zeta, n), opts.tol, opts.escape, opts.converge, 0.0)?.outcome)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    /// ε_c − ε as a fraction of ε_c
    pub delta: f64,
    pub amplitude: f64,
    pub period: f64,
    /// amplitude(δ) / amplitude(next δ); None on the last row
    pub ratio: Option<f64>,
}

/// Cycle amplitude at ε = (1 − δ)ε_c for each δ, with consecutive ratios.
/// With δ shrinking 4× per row the square-root law predicts ratios of 2.
pub fn amplitude_scaling(zeta: &DimensionlessParams, deltas: &[f64], opts: &OrbitOptions) -> Result<Vec<ScalingRow>> {
    let mut rows: Vec<ScalingRow> = Vec::new();
    for &d in deltas {
        if !(d > 0.0 && d <= 0.05) {
            return Err(HgsError::InvalidParameter { name: "delta", value: d, range: "(0, 0.05]" });
        }
        let rep = detect_orbit(&zeta.at_ratio(1.0 - d)?, opts)?;
        if !rep.found {
            return Err(HgsError::OrbitNotFound(format!("delta {d}: {}", rep.diagnostic)));
        }
        rows.push(ScalingRow { delta: d, amplitude: rep.amplitude, period: rep.period, ratio: None });
    }
    for i in 0..rows.len().saturating_sub(1) {
        rows[i].ratio = Some(rows[i].amplitude / rows[i + 1].amplitude);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn watt(ratio: f64) -> DimensionlessParams {
        DimensionlessParams::new(0.5, 1.0, 1.0, 0.0, 0.0).unwrap().at_ratio(ratio).unwrap()
    }

    #[test]
    fn harmonic_accuracy() {
        // the field is not linear, so check against a tightly integrated
        // reference instead
        let z = watt(1.5);
        let s0 = equilibrium(&z) + State::new(0.05, 0.0, 0.0);
        let fine = integrate(&s0, &z, 10.0, Tolerances { rel: 1e-12, abs: 1e-12 }, None).unwrap();
        let coarse = integrate(&s0, &z, 10.0, Tolerances { rel: 1e-6, abs: 1e-8 }, None).unwrap();
        let d = (fine.last().1 - coarse.last().1).norm();
        assert!(d < 1e-5, "{d}");
        assert_eq!(fine.termination, Termination::TimeEnd);
    }

    #[test]
    fn equilibrium_stays_put() {
        let z = watt(1.5);
        let p0 = equilibrium(&z);
        let tr = integrate(&p0, &z, 50.0, Tolerances::ORBIT, None).unwrap();
        assert!(tr.states.iter().all(|s| (s - p0).norm() < 1e-9));
        assert!(poincare_returns(&p0, &z, 1, Tolerances::ORBIT).is_err());
    }

    #[test]
    fn stable_side_converges() {
        let z = watt(2.0);
        let p0 = equilibrium(&z);
        let tr = integrate(&(p0 + State::new(1e-3, 0.0, 0.0)), &z, 500.0, Tolerances::ORBIT, Some(1e-9)).unwrap();
        assert_eq!(tr.termination, Termination::Converged);
    }

    #[test]
    fn domain_exit_is_recorded() {
        let z = watt(0.5);
        let s0 = State::new(0.05, -2.0, 0.5);
        let tr = integrate(&s0, &z, 100.0, Tolerances::ORBIT, None).unwrap();
        assert_eq!(tr.termination, Termination::DomainExit);
        assert!(tr.states.iter().all(in_domain));
        assert!(tr.t.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_tolerances() {
        let z = watt(1.5);
        let p0 = equilibrium(&z);
        assert!(integrate(&p0, &z, 1.0, Tolerances { rel: 1e-2, abs: 1e-12 }, None).is_err());
        assert!(integrate(&p0, &z, 1.0, Tolerances { rel: 1e-10, abs: 1e-13 }, None).is_err());
    }

    #[test]
    fn returns_lie_on_section_left_of_p0() {
        let z = watt(0.98);
        let p0 = equilibrium(&z);
        let rs = poincare_returns(&(p0 + State::new(-0.01, 0.0, 0.0)), &z, 5, Tolerances::ORBIT).unwrap();
        assert_eq!(rs.len(), 5);
        assert!(rs.iter().all(|r| r.x < p0[0]));
        assert!(rs.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn dense_output_is_accurate_mid_step() {
        let z = watt(1.0);
        let s0 = equilibrium(&z) + State::new(0.1, 0.0, 0.0);
        let mut steps = Vec::new();
        Dopri5::new(&z, Tolerances { rel: 1e-9, abs: 1e-12 })
            .run(0.0, s0, 5.0, |s| {
                steps.push(s.clone());
                Control::Continue
            })
            .unwrap();
        let st = &steps[steps.len() / 2];
        let tm = 0.5 * (st.t0 + st.t1);
        let mid = st.at(tm);
        let reference = integrate(&s0, &z, tm, Tolerances { rel: 1e-12, abs: 1e-12 }, None).unwrap().last().1;
        assert!((mid - reference).norm() < 1e-7);
    }
}
