//! The governor vector field, its parameters and its equilibrium.
//!
//! State `(x, y, z)`: arm angle, scaled angular rate of the arms, scaled
//! flywheel speed. The field is
//!
//! ```text
//! x' = y
//! y' = ρ z² cos x + (z² + κ) sin x cos x − sin x − ε y
//! z' = α (cos x − β)
//! ```

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{HgsError, Result};
use crate::numeric::{RMat3, RVec3};

/// Above this critical frequency results are flagged as ill-conditioned.
pub const OMEGA0_WARN: f64 = 1e3;

/// The dimensionless parameter vector ζ = (β, α, ε, ρ, κ).
///
/// Fields are private so a value of this type is always admissible:
/// β ∈ (0,1), α > 0, ε > 0, ρ ≥ 0, κ ∈ [0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionlessParams {
    beta: f64,
    alpha: f64,
    epsilon: f64,
    rho: f64,
    kappa: f64,
}

fn check(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(HgsError::InvalidParameter { name, value, range })
    }
}

impl DimensionlessParams {
    pub fn new(beta: f64, alpha: f64, epsilon: f64, rho: f64, kappa: f64) -> Result<Self> {
        check("beta", beta, beta > 0.0 && beta < 1.0, "(0, 1)")?;
        check("alpha", alpha, alpha > 0.0, "(0, inf)")?;
        check("epsilon", epsilon, epsilon > 0.0, "(0, inf)")?;
        check("rho", rho, rho >= 0.0, "[0, inf)")?;
        check("kappa", kappa, (0.0..1.0).contains(&kappa), "[0, 1)")?;
        Ok(Self { beta, alpha, epsilon, rho, kappa })
    }

    /// Same (β, α, ρ, κ) on the Hopf surface ε = ε_c.
    pub fn critical(beta: f64, alpha: f64, rho: f64, kappa: f64) -> Result<Self> {
        // validate with a placeholder ε first, ε_c needs admissible inputs
        let p = Self::new(beta, alpha, 1.0, rho, kappa)?;
        Ok(p.at_critical_damping())
    }

    pub fn at_critical_damping(&self) -> Self {
        Self { epsilon: crate::stability::epsilon_critical(self), ..*self }
    }

    /// Scale ε by `ratio` relative to ε_c.
    pub fn at_ratio(&self, ratio: f64) -> Result<Self> {
        self.with_epsilon(ratio * crate::stability::epsilon_critical(self))
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::new(self.beta, self.alpha, epsilon, self.rho, self.kappa)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Physical parameters of the governor and engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// ball mass, kg
    pub m: f64,
    /// arm length, m
    pub l: f64,
    /// half the horizontal edge, m
    pub big_l: f64,
    /// spring constant, N/m
    pub k: f64,
    /// friction coefficient
    pub b: f64,
    /// gravity, m/s²
    pub g: f64,
    /// gear ratio
    pub c: f64,
    /// steam torque constant, N·m
    pub mu: f64,
    /// flywheel moment of inertia, kg·m²
    pub inertia: f64,
    /// load torque, N·m
    pub load: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m", self.m),
            ("l", self.l),
            ("b", self.b),
            ("g", self.g),
            ("c", self.c),
            ("mu", self.mu),
            ("I", self.inertia),
            ("F", self.load),
        ] {
            check(name, v, v > 0.0, "(0, inf)")?;
        }
        check("L", self.big_l, self.big_l >= 0.0, "[0, inf)")?;
        check("k", self.k, self.k >= 0.0, "[0, inf)")?;
        check("F", self.load, self.load < self.mu, "(0, mu)")?;
        Ok(())
    }
}

/// Result of [`rescale_physical`]: ζ plus the factors relating old and new
/// variables, `t = time_scale·τ`, `y = y_scale·ψ`, `z = z_scale·Ω`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Rescaling {
    pub params: DimensionlessParams,
    pub time_scale: f64,
    pub y_scale: f64,
    pub z_scale: f64,
}

pub fn rescale_physical(p: &PhysicalParams) -> Result<Rescaling> {
    p.validate()?;
    let stiff = 2.0 * p.k * p.l + p.m * p.g;
    let ratio = p.m * p.l / stiff;
    let params = DimensionlessParams::new(
        p.load / p.mu,
        p.c * p.mu / p.inertia * ratio,
        p.b / p.m * ratio.sqrt(),
        p.big_l / p.l,
        2.0 * p.k * p.l / stiff,
    )?;
    Ok(Rescaling {
        params,
        time_scale: ratio.sqrt().recip(),
        y_scale: ratio.sqrt(),
        z_scale: p.c * ratio.sqrt(),
    })
}

/// Phase point (x, y, z).
pub type State = RVec3;

pub fn in_domain(s: &State) -> bool {
    s[0] > 0.0 && s[0] < FRAC_PI_2 && s.iter().all(|v| v.is_finite())
}

fn domain_check(s: &State) -> Result<()> {
    if in_domain(s) {
        Ok(())
    } else {
        Err(HgsError::Domain(s[0]))
    }
}

/// The y-equation without its damping term, `g(x, z)`.
pub(crate) fn g_xz(x: f64, z: f64, zeta: &DimensionlessParams) -> f64 {
    let (s, c) = x.sin_cos();
    zeta.rho * z * z * c + (z * z + zeta.kappa) * s * c - s
}

/// Unchecked field; callers must ensure the state is finite.
pub(crate) fn field_raw(s: &State, zeta: &DimensionlessParams) -> State {
    State::new(
        s[1],
        g_xz(s[0], s[2], zeta) - zeta.epsilon * s[1],
        zeta.alpha * (s[0].cos() - zeta.beta),
    )
}

pub fn vector_field(s: &State, zeta: &DimensionlessParams) -> Result<State> {
    domain_check(s)?;
    Ok(field_raw(s, zeta))
}

/// The unique admissible equilibrium P0.
pub fn equilibrium(zeta: &DimensionlessParams) -> State {
    let b = zeta.beta;
    let s = (1.0 - b * b).sqrt();
    let z0 = (1.0 - zeta.kappa * b).sqrt() * s.sqrt() / (b.sqrt() * (zeta.rho + s).sqrt());
    State::new(b.acos(), 0.0, z0)
}

pub fn jacobian(s: &State, zeta: &DimensionlessParams) -> Result<RMat3> {
    domain_check(s)?;
    let (x, z) = (s[0], s[2]);
    let (sx, cx) = x.sin_cos();
    let (s2, c2) = (2.0 * x).sin_cos();
    let gx = -zeta.rho * z * z * sx + (z * z + zeta.kappa) * c2 - cx;
    let gz = 2.0 * zeta.rho * z * cx + z * s2;
    Ok(RMat3::new(
        0.0, 1.0, 0.0,
        gx, -zeta.epsilon, gz,
        -zeta.alpha * sx, 0.0, 0.0,
    ))
}

/// Frequencies that parametrize the Hopf analysis.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DerivedFrequencies {
    pub omega0: f64,
    pub omega1: f64,
    pub sigma: f64,
    /// Jacobian entry (2,3) at P0.
    pub xi: f64,
    /// Set when ω0 exceeds [`OMEGA0_WARN`].
    pub ill_conditioned: bool,
}

pub fn derived_frequencies(zeta: &DimensionlessParams) -> DerivedFrequencies {
    let (b, r, k) = (zeta.beta, zeta.rho, zeta.kappa);
    let s = (1.0 - b * b).sqrt();
    let omega0 = ((s.powi(3) + r * (1.0 - k * b.powi(3))) / (b * (r + s))).sqrt();
    let omega1 = ((1.0 - b * b) / b).sqrt();
    let sigma = ((1.0 - k * b) / (r + omega1 * b.sqrt())).sqrt();
    let xi = 2.0 * b.sqrt() * s.sqrt() * (1.0 - k * b).sqrt() * (r + s).sqrt();
    DerivedFrequencies { omega0, omega1, sigma, xi, ill_conditioned: omega0 > OMEGA0_WARN }
}
