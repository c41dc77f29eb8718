//! Closed-form evaluators: the numerator R of the first Lyapunov
//! coefficient, l1 itself, and the special-case numerators G1 (ρ = 0) and
//! G2 (κ = 0), plus the closed-form eigenvectors and multilinear terms.
//!
//! R and G2 are stored as monomial tables so a bad term can be found by
//! bisecting the table against the projection engine.

use serde::Serialize;

use crate::numeric::{c, compensated_sum, CVec3, I};
use crate::stability::critical_damping;

/// Quantities every closed form is written in.
#[derive(Debug, Clone, Copy)]
pub struct Symbols {
    pub beta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub kappa: f64,
    /// (1 − β²)^{1/2}
    pub s: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub sigma: f64,
    pub eps_c: f64,
    /// ρσ² − 1
    pub u: f64,
}

impl Symbols {
    pub fn new(beta: f64, alpha: f64, rho: f64, kappa: f64) -> Self {
        let b = beta;
        let s = (1.0 - b * b).sqrt();
        let omega0 = ((s.powi(3) + rho * (1.0 - kappa * b.powi(3))) / (b * (rho + s))).sqrt();
        let omega1 = ((1.0 - b * b) / b).sqrt();
        let sigma = ((1.0 - kappa * b) / (rho + omega1 * b.sqrt())).sqrt();
        Symbols {
            beta,
            alpha,
            rho,
            kappa,
            s,
            omega0,
            omega1,
            sigma,
            eps_c: critical_damping(beta, alpha, rho, kappa),
            u: rho * sigma * sigma - 1.0,
        }
    }
}

/// One monomial of R: coefficient and exponents of
/// (β^{1/4}, α, ε_c, ω0, ω1^{1/2}, σ, ρ).
#[derive(Debug, Clone, Copy)]
pub struct RTerm {
    pub coeff: f64,
    pub exps: [i32; 7],
}

const fn rt(coeff: f64, b4: i32, a: i32, e: i32, w0: i32, v: i32, s: i32, r: i32) -> RTerm {
    RTerm { coeff, exps: [b4, a, e, w0, v, s, r] }
}

pub const R_TERMS: [RTerm; 73] = [
    rt(4.0, 24, 4, 2, 0, 16, 0, 0),
    rt(32.0, 24, 4, 0, 2, 16, 0, 0),
    rt(8.0, 23, 3, 3, 0, 13, 1, 0),
    rt(80.0, 23, 3, 1, 2, 13, 1, 0),
    rt(8.0, 22, 4, 2, 0, 14, 0, 1),
    rt(64.0, 22, 4, 0, 2, 14, 0, 1),
    rt(32.0, 22, 2, 2, 2, 10, 2, 0),
    rt(8.0, 21, 3, 3, 0, 11, 1, 1),
    rt(80.0, 21, 3, 1, 2, 11, 1, 1),
    rt(4.0, 20, 4, 2, 0, 12, 0, 2),
    rt(32.0, 20, 4, 0, 2, 12, 0, 2),
    rt(-4.0, 17, 3, 3, 0, 15, 1, 1),
    rt(-40.0, 17, 3, 1, 2, 15, 1, 1),
    rt(-4.0, 16, 2, 4, 2, 8, 0, 0),
    rt(-18.0, 16, 2, 2, 4, 8, 0, 0),
    rt(-26.0, 16, 2, 2, 2, 12, 2, 1),
    rt(-6.0, 16, 2, 2, 2, 12, 0, 0),
    rt(16.0, 16, 2, 0, 6, 8, 0, 0),
    rt(48.0, 16, 2, 0, 4, 12, 2, 1),
    rt(-48.0, 16, 2, 0, 4, 12, 0, 0),
    rt(-4.0, 15, 3, 3, 0, 13, 1, 2),
    rt(-4.0, 15, 3, 3, 0, 13, 1, 0),
    rt(-40.0, 15, 3, 1, 2, 13, 1, 2),
    rt(-40.0, 15, 3, 1, 2, 13, 1, 0),
    rt(12.0, 15, 1, 3, 2, 9, 3, 1),
    rt(-12.0, 15, 1, 3, 2, 9, 1, 0),
    rt(56.0, 15, 1, 1, 6, 5, 1, 0),
    rt(120.0, 15, 1, 1, 4, 9, 3, 1),
    rt(-120.0, 15, 1, 1, 4, 9, 1, 0),
    rt(-2.0, 14, 2, 2, 4, 6, 0, 1),
    rt(6.0, 14, 2, 2, 2, 10, 2, 2),
    rt(-32.0, 14, 2, 2, 2, 10, 2, 0),
    rt(-6.0, 14, 2, 2, 2, 10, 0, 1),
    rt(16.0, 14, 2, 0, 6, 6, 0, 1),
    rt(48.0, 14, 2, 0, 4, 10, 2, 2),
    rt(-48.0, 14, 2, 0, 4, 10, 0, 1),
    rt(-4.0, 13, 3, 3, 0, 11, 1, 1),
    rt(-40.0, 13, 3, 1, 2, 11, 1, 1),
    rt(8.0, 11, 1, 3, 4, 9, 1, 0),
    rt(32.0, 11, 1, 1, 6, 9, 1, 0),
    rt(2.0, 10, 2, 4, 2, 10, 0, 1),
    rt(8.0, 10, 2, 2, 4, 10, 0, 1),
    rt(8.0, 10, 2, 2, 2, 14, 2, 2),
    rt(2.0, 9, 1, 3, 4, 7, 1, 1),
    rt(-6.0, 9, 1, 3, 2, 11, 3, 2),
    rt(6.0, 9, 1, 3, 2, 11, 1, 1),
    rt(-20.0, 9, 1, 1, 6, 7, 1, 1),
    rt(-60.0, 9, 1, 1, 4, 11, 3, 2),
    rt(60.0, 9, 1, 1, 4, 11, 1, 1),
    rt(2.0, 8, 2, 4, 2, 8, 0, 0),
    rt(8.0, 8, 2, 2, 4, 8, 0, 0),
    rt(16.0, 8, 2, 2, 2, 12, 2, 1),
    rt(1.0, 8, 0, 4, 6, 0, 0, 0),
    rt(-4.0, 8, 0, 4, 4, 4, 2, 1),
    rt(4.0, 8, 0, 4, 4, 4, 0, 0),
    rt(8.0, 8, 0, 2, 8, 0, 0, 0),
    rt(2.0, 8, 0, 2, 6, 4, 2, 1),
    rt(-2.0, 8, 0, 2, 6, 4, 0, 0),
    rt(18.0, 8, 0, 2, 4, 8, 4, 2),
    rt(-36.0, 8, 0, 2, 4, 8, 2, 1),
    rt(18.0, 8, 0, 2, 4, 8, 0, 0),
    rt(-6.0, 7, 1, 3, 2, 9, 3, 1),
    rt(6.0, 7, 1, 3, 2, 9, 1, 0),
    rt(-28.0, 7, 1, 1, 6, 5, 1, 0),
    rt(-60.0, 7, 1, 1, 4, 9, 3, 1),
    rt(60.0, 7, 1, 1, 4, 9, 1, 0),
    rt(8.0, 6, 2, 2, 2, 10, 2, 0),
    rt(1.0, 4, 0, 4, 6, 4, 0, 0),
    rt(4.0, 4, 0, 2, 8, 4, 0, 0),
    rt(3.0, 0, 0, 4, 4, 4, 2, 1),
    rt(-4.0, 0, 0, 4, 4, 4, 0, 0),
    rt(12.0, 0, 0, 2, 6, 4, 2, 1),
    rt(-16.0, 0, 0, 2, 6, 4, 0, 0),
];

/// One monomial of G2: coefficient and exponents of (β, α, ρ, (1 − β²)^{1/2}).
#[derive(Debug, Clone, Copy)]
pub struct G2Term {
    pub coeff: f64,
    pub exps: [i32; 4],
}

const fn gt(coeff: i32, b: i32, a: i32, r: i32, s: i32) -> G2Term {
    G2Term { coeff: coeff as f64, exps: [b, a, r, s] }
}

pub const G2_TERMS: [G2Term; 160] = [
    gt(-2, 22, 4, 0, 0),
    gt(42, 20, 4, 2, 0),
    gt(14, 20, 4, 1, 1),
    gt(16, 20, 4, 0, 0),
    gt(-70, 18, 4, 4, 0),
    gt(-70, 18, 4, 3, 1),
    gt(-308, 18, 4, 2, 0),
    gt(-100, 18, 4, 1, 1),
    gt(-56, 18, 4, 0, 0),
    gt(-10, 18, 2, 2, 0),
    gt(-2, 18, 2, 1, 1),
    gt(-2, 18, 2, 0, 0),
    gt(10, 18, 0, 0, 0),
    gt(14, 16, 4, 6, 0),
    gt(42, 16, 4, 5, 1),
    gt(490, 16, 4, 4, 0),
    gt(462, 16, 4, 3, 1),
    gt(966, 16, 4, 2, 0),
    gt(306, 16, 4, 1, 1),
    gt(112, 16, 4, 0, 0),
    gt(14, 16, 2, 4, 0),
    gt(18, 16, 2, 3, 1),
    gt(104, 16, 2, 2, 0),
    gt(27, 16, 2, 1, 1),
    gt(16, 16, 2, 0, 0),
    gt(-86, 16, 0, 0, 0),
    gt(-2, 14, 4, 7, 1),
    gt(-112, 14, 4, 6, 0),
    gt(-280, 14, 4, 5, 1),
    gt(-1400, 14, 4, 4, 0),
    gt(-1260, 14, 4, 3, 1),
    gt(-1680, 14, 4, 2, 0),
    gt(-520, 14, 4, 1, 1),
    gt(-140, 14, 4, 0, 0),
    gt(-4, 14, 2, 5, 1),
    gt(-136, 14, 2, 4, 0),
    gt(-160, 14, 2, 3, 1),
    gt(-430, 14, 2, 2, 0),
    gt(-128, 14, 2, 1, 1),
    gt(-56, 14, 2, 0, 0),
    gt(41, 14, 0, 1, 1),
    gt(328, 14, 0, 0, 0),
    gt(2, 12, 4, 8, 0),
    gt(22, 12, 4, 7, 1),
    gt(308, 12, 4, 6, 0),
    gt(700, 12, 4, 5, 1),
    gt(2100, 12, 4, 4, 0),
    gt(1820, 12, 4, 3, 1),
    gt(1750, 12, 4, 2, 0),
    gt(530, 12, 4, 1, 1),
    gt(112, 12, 4, 0, 0),
    gt(8, 12, 2, 6, 0),
    gt(51, 12, 2, 5, 1),
    gt(494, 12, 2, 4, 0),
    gt(552, 12, 2, 3, 1),
    gt(976, 12, 2, 2, 0),
    gt(319, 12, 2, 1, 1),
    gt(112, 12, 2, 0, 0),
    gt(-52, 12, 0, 2, 0),
    gt(-273, 12, 0, 1, 1),
    gt(-728, 12, 0, 0, 0),
    gt(-6, 10, 4, 8, 0),
    gt(-54, 10, 4, 7, 1),
    gt(-392, 10, 4, 6, 0),
    gt(-840, 10, 4, 5, 1),
    gt(-1750, 10, 4, 4, 0),
    gt(-1470, 10, 4, 3, 1),
    gt(-1092, 10, 4, 2, 0),
    gt(-324, 10, 4, 1, 1),
    gt(-56, 10, 4, 0, 0),
    gt(-46, 10, 2, 6, 0),
    gt(-186, 10, 2, 5, 1),
    gt(-916, 10, 2, 4, 0),
    gt(-1011, 10, 2, 3, 1),
    gt(-1376, 10, 2, 2, 0),
    gt(-480, 10, 2, 1, 1),
    gt(-140, 10, 2, 0, 0),
    gt(-9, 10, 0, 3, 1),
    gt(305, 10, 0, 2, 0),
    gt(777, 10, 0, 1, 1),
    gt(1036, 10, 0, 0, 0),
    gt(6, 8, 4, 8, 0),
    gt(50, 8, 4, 7, 1),
    gt(238, 8, 4, 6, 0),
    gt(490, 8, 4, 5, 1),
    gt(770, 8, 4, 4, 0),
    gt(630, 8, 4, 3, 1),
    gt(378, 8, 4, 2, 0),
    gt(110, 8, 4, 1, 1),
    gt(16, 8, 4, 0, 0),
    gt(4, 8, 2, 7, 1),
    gt(80, 8, 2, 6, 0),
    gt(286, 8, 2, 5, 1),
    gt(1004, 8, 2, 4, 0),
    gt(1121, 8, 2, 3, 1),
    gt(1264, 8, 2, 2, 0),
    gt(457, 8, 2, 1, 1),
    gt(112, 8, 2, 0, 0),
    gt(27, 8, 0, 4, 0),
    gt(29, 8, 0, 3, 1),
    gt(-745, 8, 0, 2, 0),
    gt(-1225, 8, 0, 1, 1),
    gt(-980, 8, 0, 0, 0),
    gt(-2, 6, 4, 8, 0),
    gt(-16, 6, 4, 7, 1),
    gt(-56, 6, 4, 6, 0),
    gt(-112, 6, 4, 5, 1),
    gt(-140, 6, 4, 4, 0),
    gt(-112, 6, 4, 3, 1),
    gt(-56, 6, 4, 2, 0),
    gt(-16, 6, 4, 1, 1),
    gt(-2, 6, 4, 0, 0),
    gt(-5, 6, 2, 7, 1),
    gt(-68, 6, 2, 6, 0),
    gt(-240, 6, 2, 5, 1),
    gt(-710, 6, 2, 4, 0),
    gt(-795, 6, 2, 3, 1),
    gt(-750, 6, 2, 2, 0),
    gt(-272, 6, 2, 1, 1),
    gt(-56, 6, 2, 0, 0),
    gt(-112, 6, 0, 4, 0),
    gt(-3, 6, 0, 3, 1),
    gt(970, 6, 0, 2, 0),
    gt(1155, 6, 0, 1, 1),
    gt(616, 6, 0, 0, 0),
    gt(3, 4, 2, 7, 1),
    gt(40, 4, 2, 6, 0),
    gt(135, 4, 2, 5, 1),
    gt(320, 4, 2, 4, 0),
    gt(345, 4, 2, 3, 1),
    gt(264, 4, 2, 2, 0),
    gt(93, 4, 2, 1, 1),
    gt(16, 4, 2, 0, 0),
    gt(27, 4, 0, 5, 1),
    gt(143, 4, 0, 4, 0),
    gt(-75, 4, 0, 3, 1),
    gt(-710, 4, 0, 2, 0),
    gt(-651, 4, 0, 1, 1),
    gt(-248, 4, 0, 0, 0),
    gt(-2, 2, 2, 7, 1),
    gt(-14, 2, 2, 6, 0),
    gt(-42, 2, 2, 5, 1),
    gt(-70, 2, 2, 4, 0),
    gt(-70, 2, 2, 3, 1),
    gt(-42, 2, 2, 2, 0),
    gt(-14, 2, 2, 1, 1),
    gt(-2, 2, 2, 0, 0),
    gt(-9, 2, 0, 6, 0),
    gt(-47, 2, 0, 5, 1),
    gt(-58, 2, 0, 4, 0),
    gt(88, 2, 0, 3, 1),
    gt(277, 2, 0, 2, 0),
    gt(203, 2, 0, 1, 1),
    gt(58, 2, 0, 0, 0),
    gt(3, 0, 0, 6, 0),
    gt(9, 0, 0, 5, 1),
    gt(-30, 0, 0, 3, 1),
    gt(-45, 0, 0, 2, 0),
    gt(-27, 0, 0, 1, 1),
    gt(-6, 0, 0, 0, 0),
];

/// R(β, α, ρ, κ), numerator of l1.
pub fn r_numerator(sym: &Symbols) -> f64 {
    let bases = [
        sym.beta.powf(0.25),
        sym.alpha,
        sym.eps_c,
        sym.omega0,
        sym.omega1.sqrt(),
        sym.sigma,
        sym.rho,
    ];
    compensated_sum(R_TERMS.iter().map(|t| {
        t.exps.iter().zip(bases.iter()).fold(t.coeff, |acc, (&e, &x)| acc * x.powi(e))
    }))
}

/// `4 β ε_c ω0⁵ ω1² (ε_c⁴ + 5 ε_c² ω0² + 4 ω0⁴)`, always positive.
pub fn l1_denominator(sym: &Symbols) -> f64 {
    let (e, w0) = (sym.eps_c, sym.omega0);
    4.0 * sym.beta * e * w0.powi(5) * sym.omega1.powi(2)
        * (e.powi(4) + 5.0 * e * e * w0 * w0 + 4.0 * w0.powi(4))
}

/// First Lyapunov coefficient from the closed form, `−R / denominator`.
pub fn l1_closed(beta: f64, alpha: f64, rho: f64, kappa: f64) -> f64 {
    let sym = Symbols::new(beta, alpha, rho, kappa);
    -r_numerator(&sym) / l1_denominator(&sym)
}

/// `−R / (4 β ε_c ω0⁴ ω1² (…))`: one fewer power of ω0 in the denominator,
/// i.e. `ω0 · l1`. Same sign as l1; kept for comparison with that scaling.
pub fn l1_omega0_scaled(beta: f64, alpha: f64, rho: f64, kappa: f64) -> f64 {
    let sym = Symbols::new(beta, alpha, rho, kappa);
    -r_numerator(&sym) / l1_denominator(&sym) * sym.omega0
}

/// Numerator of l1 on the slice ρ = 0.
pub fn g1(beta: f64, alpha: f64, kappa: f64) -> f64 {
    let (b, a, k) = (beta, alpha, kappa);
    let a2 = a * a;
    -3.0 + 5.0 * k * b - (a2 - 5.0) * b.powi(2) + k * (a2 - 7.0) * b.powi(3)
        - 2.0 * a2 * k * k * b.powi(4)
        - (a2 * a2 - 2.0 * a2 * k * k) * b.powi(6)
        + a2 * a2 * k * b.powi(7)
}

/// Numerator of l1 on the slice κ = 0.
pub fn g2(beta: f64, alpha: f64, rho: f64) -> f64 {
    let bases = [beta, alpha, rho, (1.0 - beta * beta).sqrt()];
    compensated_sum(G2_TERMS.iter().map(|t| {
        t.exps.iter().zip(bases.iter()).fold(t.coeff, |acc, (&e, &x)| acc * x.powi(e))
    }))
}

/// Critical eigenvector q with `A q = iω0 q`.
pub fn q_vector(sym: &Symbols) -> CVec3 {
    CVec3::new(
        -I,
        c(sym.omega0, 0.0),
        c(sym.alpha * sym.beta.sqrt() * sym.omega1 / sym.omega0, 0.0),
    )
}

/// Adjoint eigenvector p with `Aᵀ p = −iω0 p` and `<p, q> = 1`.
pub fn p_vector(sym: &Symbols) -> CVec3 {
    let (e, w0) = (sym.eps_c, sym.omega0);
    let d = w0 * w0 + e * e;
    CVec3::new(
        c(0.0, -0.5),
        c(w0, -e) / (2.0 * d),
        c(e, w0) * (e * w0) / (2.0 * sym.alpha * sym.beta.sqrt() * sym.omega1 * d),
    )
}

/// B(q, q̄), a real vector.
pub fn b_q_qbar(sym: &Symbols) -> CVec3 {
    let (b, a, w0, w1) = (sym.beta, sym.alpha, sym.omega0, sym.omega1);
    let second = b.sqrt() * w1
        * (3.0 * w0 * w0 * sym.u + 2.0 * a * a * b.powf(1.5) * w1 * (sym.rho + b.sqrt() * w1))
        / (w0 * w0);
    CVec3::new(c(0.0, 0.0), c(second, 0.0), c(-a * b, 0.0))
}

pub fn b_q_q(sym: &Symbols) -> CVec3 {
    let (b, a, r, s, w0, w1) = (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.omega0, sym.omega1);
    let bw = b.sqrt() * w1;
    let re = 2.0 * a * a * b * bw.powf(1.5) * (r + bw) - 3.0 * sym.u * w0 * w0 * bw.sqrt();
    let im = 4.0 * a * s * w0 * w1 * (1.0 - 2.0 * b * b + b.sqrt() * r * w1);
    let second = c(re, im) * (b * w1 * w1 / (w0 * w0 * bw.powf(1.5)));
    CVec3::new(c(0.0, 0.0), second, c(a * b, 0.0))
}

pub fn c_q_q_qbar(sym: &Symbols) -> CVec3 {
    let (b, a, r, s, w0, w1) = (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.omega0, sym.omega1);
    let bw = b.sqrt() * w1;
    let re = w0 * w0 * (4.0 - 3.0 * r * s * s + 7.0 * b * b * sym.u)
        + 2.0 * a * a * b * b * w1 * w1 * (2.0 * b * b - 1.0 - b.sqrt() * r * w1);
    let im = -2.0 * a * b * b * s * w0 * w1 * bw.sqrt() * (r + 4.0 * bw);
    let second = -I * c(re, im) / (b * w0 * w0);
    CVec3::new(c(0.0, 0.0), second, c(0.0, -a * b.sqrt() * w1))
}

/// Re <p, C(q, q, q̄)>.
pub fn partereal1(sym: &Symbols) -> f64 {
    let (b, a, r, s, e, w0, w1) =
        (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.eps_c, sym.omega0, sym.omega1);
    let bw = b.sqrt() * w1;
    let num = 2.0 * a * b.powf(2.25) * s * w0 * w0 * w1.powf(1.5) * (r + 4.0 * bw)
        + e * (w0 * w0 * (3.0 * r * s * s - 4.0 + 7.0 * b * b * (1.0 - r * s * s))
            + b * w0.powi(4)
            + 2.0 * a * a * b * b * w1 * w1 * (1.0 - 2.0 * b * b + b.sqrt() * r * w1));
    -num / (2.0 * b * w0 * w0 * (e * e + w0 * w0))
}

/// Re <p, 2 B(q, h11)>.
pub fn partereal2(sym: &Symbols) -> f64 {
    let (b, a, r, s, e, w0, w1, u) =
        (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.eps_c, sym.omega0, sym.omega1, sym.u);
    let (w02, w12) = (w0 * w0, w1 * w1);
    let lin = w02 + 3.0 * w12 * u;
    let lin2 = 2.0 * w02 + 3.0 * w12 * u;
    let terms = [
        4.0 * a.powi(3) * e * r * s * w1.powf(5.5) * (2.0 * b.powf(3.5) - b.powf(1.5)),
        4.0 * a.powi(4) * b.powf(3.25) * r * r * w1.powi(6),
        8.0 * a.powi(3) * b.powi(4) * e * s * w1.powf(6.5),
        8.0 * a.powi(4) * b.powf(3.75) * r * w1.powi(7),
        -4.0 * a.powi(3) * b.powf(2.5) * e * r * s * w1.powf(7.5),
        4.0 * a.powi(4) * b.powf(4.25) * w1.powi(8),
        b.powf(0.25) * e * e * w0.powi(4) * lin,
        2.0 * a * a * b.powf(1.75) * r * w02 * w1.powi(3) * lin,
        2.0 * a * a * b.powf(2.25) * w02 * w1.powi(4) * lin,
        -2.0 * a * e * s * w02 * w1.powf(2.5) * lin2,
        -2.0 * a * b.sqrt() * e * r * s * w02 * w1.powf(3.5) * lin2,
        -4.0 * a * b * b * e * s * w1.powf(2.5)
            * (a * a * w1.powi(4) * (1.0 + r * r) - 3.0 * w02 * w12 * u - 2.0 * w0.powi(4)),
    ];
    -b.powf(0.75) * compensated_sum(terms) / (e * w0.powi(4) * w12 * (e * e + w02))
}

/// Re <p, B(q̄, h20)>, the ϑ term.
pub fn partereal3(sym: &Symbols) -> f64 {
    let (b, a, r, s, e, w0, w1, u) =
        (sym.beta, sym.alpha, sym.rho, sym.sigma, sym.eps_c, sym.omega0, sym.omega1, sym.u);
    let (e2, w02, w12, s2) = (e * e, w0 * w0, w1 * w1, s * s);
    let a2 = a * a;
    let gap = e2 - 2.0 * w02;
    let inner = 2.0 * w02 * (w02 - 3.0 * w12 * u) + e2 * (4.0 * w02 + 3.0 * w12 * u);
    let spring = a2 * w1.powi(4) * (1.0 + r * r);
    let terms = [
        -8.0 * a2 * b.sqrt() * e * s2 * w02 * w1.powi(5),
        4.0 * a.powi(3) * s * r * w1.powf(5.5) * gap * (2.0 * b.powf(4.25) - b.powf(2.25)),
        4.0 * a.powi(4) * b.powi(4) * e * r * r * w1.powi(6),
        8.0 * a.powi(3) * b.powf(4.75) * s * w1.powf(6.5) * gap,
        -8.0 * a2 * b.powf(1.5) * e * s2 * r * r * w02 * w1.powi(7),
        -4.0 * a.powi(3) * b.powf(3.25) * s * r * w1.powf(7.5) * gap,
        4.0 * a.powi(4) * b.powi(5) * e * w1.powi(8),
        8.0 * a2 * b.powf(4.5) * e * w1.powi(5) * (a2 * r * w12 - 4.0 * s2 * w02),
        2.0 * a2 * b.powi(3) * e * w02 * w1.powi(4) * (3.0 * w02 + w12 * (19.0 * r * s2 - 3.0)),
        2.0 * a2 * b.powf(2.5) * e * w02 * w1.powi(3)
            * (16.0 * s2 * w12 + 3.0 * r * r * s2 * w12 + 3.0 * r * (w02 - w12)),
        -2.0 * a * b.powf(0.75) * s * w02 * w1.powf(2.5) * inner,
        -2.0 * a * b.powf(1.25) * r * s * w02 * w1.powf(3.5) * inner,
        -4.0 * a * b.powf(2.75) * s * w1.powf(2.5)
            * (e2 * (-4.0 * w0.powi(4) - 3.0 * w02 * w12 * u + spring)
                - 2.0 * w02 * (w0.powi(4) - 3.0 * w02 * w12 * u + spring)),
        b * e * w02
            * (e2 * w02 * (w02 + 3.0 * w12 * u)
                - 2.0 * w12 * (3.0 * w0.powi(4) * u + 9.0 * w02 * w12 * u * u + 8.0 * a2 * r * s2 * w1.powi(4))),
    ];
    compensated_sum(terms) / (2.0 * w0.powi(4) * w12 * (e2 * e2 + 5.0 * e2 * w02 + 4.0 * w0.powi(4)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaId {
    R,
    L1,
    G1,
    G2,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedFormValue {
    pub value: f64,
    pub formula: FormulaId,
    pub beta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub kappa: f64,
}

/// Evaluate one of the closed forms. G1 ignores ρ and G2 ignores κ; callers
/// are expected to pass the slice value (0) for those.
pub fn evaluate(formula: FormulaId, beta: f64, alpha: f64, rho: f64, kappa: f64) -> ClosedFormValue {
    let value = match formula {
        FormulaId::R => r_numerator(&Symbols::new(beta, alpha, rho, kappa)),
        FormulaId::L1 => l1_closed(beta, alpha, rho, kappa),
        FormulaId::G1 => g1(beta, alpha, kappa),
        FormulaId::G2 => g2(beta, alpha, rho),
    };
    ClosedFormValue { value, formula, beta, alpha, rho, kappa }
}

/// Root of `f` on `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ
/// in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> Option<f64> {
    let mut flo = f(lo);
    if flo.signum() == f(hi).signum() {
        return None;
    }
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Root of G1 in β along κ = `kappa` in the limit α → 0.
pub fn g1_small_alpha_root(kappa: f64) -> Option<f64> {
    bisect(|b| g1(b, 0.0, kappa), 0.05, 0.99, 80)
}
