//! Projection method at the Hopf point: critical eigenvectors, the
//! multilinear forms B and C of the Taylor expansion around P0, and the
//! first Lyapunov coefficient
//!
//! ```text
//! h11 = −A⁻¹ B(q, q̄)
//! h20 = (2iω0 I − A)⁻¹ B(q, q)
//! G21 = <p, C(q, q, q̄) + B(q̄, h20) + 2 B(q, h11)>
//! l1  = Re G21 / (2 ω0)
//! ```

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_forms::Symbols;
use crate::error::{HgsError, Result};
use crate::model::{derived_frequencies, equilibrium, field_raw, jacobian, DimensionlessParams, State};
use crate::numeric::{c, cnorm, hermitian_inner, null_vector, solve3, to_complex_mat, CMat3, CVec3, RMat3, RVec3, I};
use crate::stability::{charpoly, epsilon_critical};

/// Default |l1| below which a Hopf point is called degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Largest |ε − ε_c| accepted as "at the Hopf point".
pub const CRITICAL_TOL: f64 = 1e-10;

/// Second and third order terms of the field at P0, in shifted coordinates.
pub trait TaylorForms {
    fn b(&self, u: &CVec3, v: &CVec3) -> CVec3;
    fn c(&self, u: &CVec3, v: &CVec3, w: &CVec3) -> CVec3;
}

/// B and C from their closed-form coefficients.
///
/// Only the x and z directions enter; y appears linearly in the field.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForms {
    b11: f64,
    b13: f64,
    b33: f64,
    b3: f64,
    c111: f64,
    c113: f64,
    c133: f64,
    c3: f64,
}

impl ClosedForms {
    pub fn new(zeta: &DimensionlessParams) -> Self {
        let sym = Symbols::new(zeta.beta(), zeta.alpha(), zeta.rho(), zeta.kappa());
        let (b, a, r, s, w1) = (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.omega1);
        let bw = b.sqrt() * w1;
        ClosedForms {
            b11: -3.0 * bw * (1.0 - r * s * s),
            b33: 2.0 * b * (r + bw),
            b13: 2.0 * s * bw.sqrt() * ((2.0 * b * b - 1.0) - r * bw) / b.sqrt(),
            b3: -a * b,
            c111: (1.0 + (1.0 - r * s * s) * (3.0 - 7.0 * b * b)) / b,
            c133: 2.0 * (2.0 * b * b - 1.0 - r * bw),
            c113: -2.0 * b.sqrt() * s * bw.sqrt() * (r + 4.0 * bw),
            c3: a * bw,
        }
    }
}

impl TaylorForms for ClosedForms {
    fn b(&self, u: &CVec3, v: &CVec3) -> CVec3 {
        let second = u[0] * v[0] * self.b11 + (u[0] * v[2] + u[2] * v[0]) * self.b13 + u[2] * v[2] * self.b33;
        CVec3::new(c(0.0, 0.0), second, u[0] * v[0] * self.b3)
    }

    fn c(&self, u: &CVec3, v: &CVec3, w: &CVec3) -> CVec3 {
        let x = u[0] * v[0] * w[0];
        let xxz = u[0] * v[0] * w[2] + u[0] * v[2] * w[0] + u[2] * v[0] * w[0];
        let xzz = u[0] * v[2] * w[2] + u[2] * v[0] * w[2] + u[2] * v[2] * w[0];
        let second = x * self.c111 + xxz * self.c113 + xzz * self.c133;
        CVec3::new(c(0.0, 0.0), second, x * self.c3)
    }
}

/// B and C from central differences of the vector field with Richardson
/// extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct FiniteDifferenceForms {
    zeta: DimensionlessParams,
    p0: State,
    pub step: f64,
}

impl FiniteDifferenceForms {
    pub fn new(zeta: &DimensionlessParams) -> Self {
        Self { zeta: *zeta, p0: equilibrium(zeta), step: 1e-3 }
    }

    fn f(&self, d: RVec3) -> RVec3 {
        field_raw(&(self.p0 + d), &self.zeta)
    }

    fn hessian_real(&self, u: &RVec3, v: &RVec3, h: f64) -> RVec3 {
        (self.f(h * (u + v)) - self.f(h * (u - v)) - self.f(h * (v - u)) + self.f(-h * (u + v)))
            / (4.0 * h * h)
    }

    fn third_real(&self, u: &RVec3, v: &RVec3, w: &RVec3, h: f64) -> RVec3 {
        let mut acc = RVec3::zeros();
        for su in [1.0, -1.0] {
            for sv in [1.0, -1.0] {
                for sw in [1.0, -1.0] {
                    acc += su * sv * sw * self.f(h * (su * u + sv * v + sw * w));
                }
            }
        }
        acc / (8.0 * h * h * h)
    }

    fn b_real(&self, u: &RVec3, v: &RVec3) -> RVec3 {
        let (nu, nv) = (u.norm(), v.norm());
        if nu == 0.0 || nv == 0.0 {
            return RVec3::zeros();
        }
        let (u, v) = (u / nu, v / nv);
        let h = self.step;
        let t = (4.0 * self.hessian_real(&u, &v, h / 2.0) - self.hessian_real(&u, &v, h)) / 3.0;
        t * nu * nv
    }

    fn c_real(&self, u: &RVec3, v: &RVec3, w: &RVec3) -> RVec3 {
        let (nu, nv, nw) = (u.norm(), v.norm(), w.norm());
        if nu == 0.0 || nv == 0.0 || nw == 0.0 {
            return RVec3::zeros();
        }
        let (u, v, w) = (u / nu, v / nv, w / nw);
        let h = self.step;
        let t = (4.0 * self.third_real(&u, &v, &w, h / 2.0) - self.third_real(&u, &v, &w, h)) / 3.0;
        t * nu * nv * nw
    }
}

fn split(v: &CVec3) -> [RVec3; 2] {
    [v.map(|z| z.re), v.map(|z| z.im)]
}

fn join(re: RVec3, im: RVec3) -> CVec3 {
    CVec3::new(c(re[0], im[0]), c(re[1], im[1]), c(re[2], im[2]))
}

impl TaylorForms for FiniteDifferenceForms {
    fn b(&self, u: &CVec3, v: &CVec3) -> CVec3 {
        let [ur, ui] = split(u);
        let [vr, vi] = split(v);
        let re = self.b_real(&ur, &vr) - self.b_real(&ui, &vi);
        let im = self.b_real(&ur, &vi) + self.b_real(&ui, &vr);
        join(re, im)
    }

    fn c(&self, u: &CVec3, v: &CVec3, w: &CVec3) -> CVec3 {
        // expand over real/imaginary parts; each slot contributes 1 or i
        let parts = [split(u), split(v), split(w)];
        let mut re = RVec3::zeros();
        let mut im = RVec3::zeros();
        for mask in 0..8usize {
            let pick = |k: usize| (mask >> k) & 1;
            let n_imag = pick(0) + pick(1) + pick(2);
            let t = self.c_real(&parts[0][pick(0)], &parts[1][pick(1)], &parts[2][pick(2)]);
            match n_imag {
                0 => re += t,
                1 => im += t,
                2 => re -= t,
                _ => im -= t,
            }
        }
        join(re, im)
    }
}

/// Jacobian at criticality with normalized critical eigenvectors:
/// `A q = iω0 q`, `Aᵀ p = −iω0 p`, `<p, q> = 1`, `q[0] = −i·(positive)`.
#[derive(Debug, Clone, Serialize)]
pub struct HopfFrame {
    #[serde(skip)]
    pub a: RMat3,
    pub eps_c: f64,
    pub omega0: f64,
    pub q: CVec3,
    pub p: CVec3,
}

pub fn hopf_frame(zeta: &DimensionlessParams) -> Result<HopfFrame> {
    let eps_c = epsilon_critical(zeta);
    let off = (zeta.epsilon() - eps_c).abs();
    if off >= CRITICAL_TOL {
        return Err(HgsError::NotCritical(off));
    }
    let a = jacobian(&equilibrium(zeta), zeta)?;
    let omega0 = derived_frequencies(zeta).omega0;
    let roots = charpoly(zeta).roots();
    // expect {real, iω0, −iω0} with the pair simple and on the axis
    if !(omega0 > 0.0)
        || roots[1].im <= 0.0
        || (roots[1] - I * omega0).norm() > 1e-8 * (1.0 + omega0)
    {
        return Err(HgsError::DegenerateSpectrum);
    }
    let ac = to_complex_mat(&a);
    let iw = CMat3::identity() * (I * omega0);
    let q = null_vector(&(ac - iw));
    let p = null_vector(&(ac.transpose() + iw));
    if q[0].norm() < 1e-12 * cnorm(&q) {
        return Err(HgsError::DegenerateSpectrum);
    }
    // gauge: q[0] = −i exactly
    let mut q = q * (-I / q[0]);
    q[0] = -I;
    let s = hermitian_inner(&p, &q);
    if s.norm() < 1e-14 {
        return Err(HgsError::DegenerateSpectrum);
    }
    let p = p / s.conj();
    Ok(HopfFrame { a, eps_c, omega0, q, p })
}

impl HopfFrame {
    /// `q ← c q`, `p ← p / c̄`; keeps `<p, q> = 1`.
    pub fn regauged(&self, factor: Complex64) -> HopfFrame {
        HopfFrame { q: self.q * factor, p: self.p / factor.conj(), ..self.clone() }
    }

    /// Largest of |Aq − iω0q|, |Aᵀp + iω0p|, |<p,q> − 1|.
    pub fn residual(&self) -> f64 {
        let ac = to_complex_mat(&self.a);
        let rq = cnorm(&(ac * self.q - self.q * (I * self.omega0)));
        let rp = cnorm(&(ac.transpose() * self.p + self.p * (I * self.omega0)));
        let rn = (hermitian_inner(&self.p, &self.q) - c(1.0, 0.0)).norm();
        rq.max(rp).max(rn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HopfClass {
    Supercritical,
    Subcritical,
    Degenerate,
}

pub fn classify_hopf(l1: f64, tol: f64) -> HopfClass {
    if l1 < -tol {
        HopfClass::Supercritical
    } else if l1 > tol {
        HopfClass::Subcritical
    } else {
        HopfClass::Degenerate
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LyapunovReport {
    pub eps_c: f64,
    pub omega0: f64,
    pub g21: Complex64,
    pub l1: f64,
    /// Re <p, C(q,q,q̄)>, Re <p, 2B(q,h11)>, Re <p, B(q̄,h20)>
    pub real_parts: [f64; 3],
    pub h11: CVec3,
    pub h20: CVec3,
    /// |(2iω0 I − A) h20 − B(q,q)|
    pub h20_residual: f64,
    /// |<p, rhs − G21 q>|
    pub fredholm_residual: f64,
    pub frame_residual: f64,
    pub transversality: f64,
    pub classification: HopfClass,
}

pub fn lyapunov_from_frame(frame: &HopfFrame, forms: &dyn TaylorForms, tol: f64) -> Result<LyapunovReport> {
    let (q, p, w0) = (frame.q, frame.p, frame.omega0);
    let qb = q.conjugate();
    let a = to_complex_mat(&frame.a);
    let h11 = -solve3(&a, &forms.b(&q, &qb))?;
    let m20 = CMat3::identity() * (I * (2.0 * w0)) - a;
    let bqq = forms.b(&q, &q);
    let h20 = solve3(&m20, &bqq)?;
    let t1 = forms.c(&q, &q, &qb);
    let t2 = forms.b(&q, &h11) * c(2.0, 0.0);
    let t3 = forms.b(&qb, &h20);
    let rhs = t1 + t2 + t3;
    let g21 = hermitian_inner(&p, &rhs);
    let real_parts = [
        hermitian_inner(&p, &t1).re,
        hermitian_inner(&p, &t2).re,
        hermitian_inner(&p, &t3).re,
    ];
    let l1 = g21.re / (2.0 * w0);
    Ok(LyapunovReport {
        eps_c: frame.eps_c,
        omega0: w0,
        g21,
        l1,
        real_parts,
        h11,
        h20,
        h20_residual: cnorm(&(m20 * h20 - bqq)),
        fredholm_residual: hermitian_inner(&p, &(rhs - q * g21)).norm(),
        frame_residual: frame.residual(),
        transversality: transversality(frame),
        classification: classify_hopf(l1, tol),
    })
}

/// Full projection-method report at a critical parameter point, using the
/// closed-form B and C.
pub fn lyapunov_coefficient(zeta: &DimensionlessParams) -> Result<LyapunovReport> {
    let frame = hopf_frame(zeta)?;
    lyapunov_from_frame(&frame, &ClosedForms::new(zeta), DEGENERACY_TOL)
}

/// First Lyapunov coefficient at the Hopf point of (β, α, ρ, κ).
pub fn l1_numeric(beta: f64, alpha: f64, rho: f64, kappa: f64) -> Result<f64> {
    let zeta = DimensionlessParams::critical(beta, alpha, rho, kappa)?;
    Ok(lyapunov_coefficient(&zeta)?.l1)
}

/// γ'(ε_c) = Re <p, (dA/dε) q>; dA/dε has a single −1 at (2,2).
pub fn transversality(frame: &HopfFrame) -> f64 {
    (-frame.p[1].conj() * frame.q[1]).re
}

pub fn transversality_closed(zeta: &DimensionlessParams) -> f64 {
    let w0 = derived_frequencies(zeta).omega0;
    let ec = epsilon_critical(zeta);
    -w0 * w0 / (2.0 * (w0 * w0 + ec * ec))
}

/// d Re λ / dε at ε_c by central differences of the cubic's complex pair.
pub fn transversality_fd(zeta: &DimensionlessParams) -> Result<f64> {
    let ec = epsilon_critical(zeta);
    let h = 1e-6 * ec;
    let re = |e: f64| -> Result<f64> { Ok(charpoly(&zeta.with_epsilon(e)?).roots()[1].re) };
    Ok((re(ec + h)? - re(ec - h)?) / (2.0 * h))
}
