//! Local stability of the equilibrium: characteristic polynomial,
//! Routh–Hurwitz, the critical damping ε_c and Vyshnegradskii's rule.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::model::{derived_frequencies, rescale_physical, DimensionlessParams, PhysicalParams};
use crate::numeric::{cubic_roots, RMat3};

/// Relative half-width of the band around ε_c classified as critical.
pub const CRITICAL_BAND: f64 = 1e-12;

/// `λ³ + p1 λ² + p2 λ + p3`, the negated characteristic polynomial of Df(P0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharPoly {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl CharPoly {
    pub fn roots(&self) -> [Complex64; 3] {
        cubic_roots(self.p1, self.p2, self.p3)
    }

    /// `p1 p2 − p3`; positive exactly on the stable side.
    pub fn hurwitz_gap(&self) -> f64 {
        self.p1 * self.p2 - self.p3
    }
}

pub fn charpoly(zeta: &DimensionlessParams) -> CharPoly {
    let (b, a, r, k) = (zeta.beta(), zeta.alpha(), zeta.rho(), zeta.kappa());
    let s = (1.0 - b * b).sqrt();
    CharPoly {
        p1: zeta.epsilon(),
        p2: (s.powi(3) + r * (1.0 - k * b.powi(3))) / (b * (r + s)),
        p3: 2.0 * a * b.sqrt() * s.powf(1.5) * (1.0 - k * b).sqrt() * (r + s).sqrt(),
    }
}

/// Coefficients of `det(λI − M)` for any 3×3 matrix.
pub fn charpoly_of_matrix(m: &RMat3) -> CharPoly {
    let minors = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
        + m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)]
        + m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)];
    CharPoly { p1: -m.trace(), p2: minors, p3: -m.determinant() }
}

/// Strict Routh–Hurwitz test for a monic cubic: every coefficient positive
/// and `p1 p2 > p3`. The boundary `p1 p2 = p3` returns false.
pub fn routh_hurwitz(c: &CharPoly) -> bool {
    c.p1 > 0.0 && c.p2 > 0.0 && c.p3 > 0.0 && c.p1 * c.p2 > c.p3
}

/// ε_c(β, α, ρ, κ), the damping at which `p1 p2 = p3`.
pub fn critical_damping(beta: f64, alpha: f64, rho: f64, kappa: f64) -> f64 {
    let b = beta;
    let s = (1.0 - b * b).sqrt();
    2.0 * alpha * b.powf(1.5) * s.powf(1.5) * (1.0 - kappa * b).sqrt() * (rho + s).powf(1.5)
        / (s.powi(3) + rho * (1.0 - kappa * b.powi(3)))
}

/// ε_c for the (β, α, ρ, κ) of `zeta`; its own ε is ignored.
pub fn epsilon_critical(zeta: &DimensionlessParams) -> f64 {
    critical_damping(zeta.beta(), zeta.alpha(), zeta.rho(), zeta.kappa())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    AsymptoticallyStable,
    Unstable,
    Critical,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityVerdict {
    pub classification: Classification,
    pub eps_c: f64,
    /// ε − ε_c
    pub margin: f64,
    pub charpoly: CharPoly,
    pub roots: [Complex64; 3],
    /// Whether the root real parts tell the same story as the margin.
    pub roots_agree: bool,
}

pub fn classify(zeta: &DimensionlessParams) -> StabilityVerdict {
    let eps_c = epsilon_critical(zeta);
    let margin = zeta.epsilon() - eps_c;
    let cp = charpoly(zeta);
    let roots = cp.roots();
    let max_re = roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let classification = if margin.abs() <= CRITICAL_BAND * eps_c {
        Classification::Critical
    } else if margin > 0.0 {
        Classification::AsymptoticallyStable
    } else {
        Classification::Unstable
    };
    let roots_agree = match classification {
        Classification::AsymptoticallyStable => max_re < 0.0,
        Classification::Unstable => max_re > 0.0,
        Classification::Critical => max_re.abs() < 1e-9,
    };
    StabilityVerdict { classification, eps_c, margin, charpoly: cp, roots, roots_agree }
}

/// Dimensionless non-uniformity η(β, ρ, κ) = |dz0/dβ|, which equals α/ε_c.
pub fn non_uniformity(beta: f64, rho: f64, kappa: f64) -> f64 {
    let b = beta;
    let s = (1.0 - b * b).sqrt();
    (s.powi(3) + rho - b.powi(3) * kappa * rho)
        / (2.0 * b.powf(1.5) * s.powf(1.5) * (1.0 - kappa * b).sqrt() * (s + rho).powf(1.5))
}

#[derive(Debug, Clone, Serialize)]
pub struct VyshnegradskiiReport {
    /// |dΩ0/dF| in physical units.
    pub eta: f64,
    pub eta_dimensionless: f64,
    /// (b I / m) η
    pub criterion: f64,
    pub stable: bool,
}

/// Vyshnegradskii's rule `(b I / m) η > 1`.
///
/// η is the physical sensitivity |dΩ0/dF|; the dimensionless form is
/// rescaled by `time_scale / (c μ)`.
pub fn vyshnegradskii(p: &PhysicalParams) -> Result<VyshnegradskiiReport> {
    let r = rescale_physical(p)?;
    let z = &r.params;
    let eta_dimensionless = non_uniformity(z.beta(), z.rho(), z.kappa());
    let eta = eta_dimensionless * r.time_scale / (p.c * p.mu);
    let criterion = p.b * p.inertia / p.m * eta;
    Ok(VyshnegradskiiReport { eta, eta_dimensionless, criterion, stable: criterion > 1.0 })
}

/// ω0 from the frequencies module; re-exported here for callers that only
/// hold a characteristic polynomial.
pub fn omega0(zeta: &DimensionlessParams) -> f64 {
    derived_frequencies(zeta).omega0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{equilibrium, jacobian};

    fn zeta(b: f64, a: f64, e: f64, r: f64, k: f64) -> DimensionlessParams {
        DimensionlessParams::new(b, a, e, r, k).unwrap()
    }

    #[test]
    fn watt_point_coefficients() {
        let c = charpoly(&zeta(0.5, 1.0, 1.0, 0.0, 0.0));
        assert_eq!(c.p1, 1.0);
        assert!((c.p2 - 1.5).abs() < 1e-15);
        assert!((c.p3 - 2.0 * 0.5f64.sqrt() * 0.75).abs() < 1e-15);
        assert!((c.p3 - 1.06066017178).abs() < 1e-10);
    }

    #[test]
    fn charpoly_matches_jacobian() {
        for &(b, a, e, r, k) in &[(0.3, 2.0, 0.4, 1.2, 0.7), (0.8, 0.2, 3.0, 0.0, 0.1), (0.55, 4.0, 1.0, 2.5, 0.0)] {
            let z = zeta(b, a, e, r, k);
            let c = charpoly(&z);
            let j = charpoly_of_matrix(&jacobian(&equilibrium(&z), &z).unwrap());
            for (u, v) in [(c.p1, j.p1), (c.p2, j.p2), (c.p3, j.p3)] {
                assert!((u - v).abs() < 1e-10 * u.abs());
            }
        }
    }

    #[test]
    fn routh_hurwitz_cases() {
        assert!(routh_hurwitz(&CharPoly { p1: 2.0, p2: 2.0, p3: 1.0 }));
        assert!(!routh_hurwitz(&CharPoly { p1: 1.0, p2: 1.0, p3: 2.0 }));
        assert!(!routh_hurwitz(&CharPoly { p1: 1.0, p2: 1.0, p3: 1.0 }));
    }

    #[test]
    fn critical_damping_reductions() {
        let (b, a) = (0.35f64, 1.7);
        assert!((critical_damping(b, a, 0.0, 0.0) - 2.0 * a * b.powf(1.5)).abs() < 1e-14);
        let k = 0.6;
        let want = 2.0 * a * b.powf(1.5) * (1.0 - k * b).sqrt();
        assert!((critical_damping(b, a, 0.0, k) - want).abs() < 1e-14);
        let r = 0.9;
        let s = (1.0 - b * b).sqrt();
        let want = 2.0 * a * b.powf(1.5) * (1.0 - b * b).powf(0.75) * (r + s).powf(1.5)
            / (r + (1.0 - b * b).powf(1.5));
        assert!((critical_damping(b, a, r, 0.0) - want).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_gap_vanishes_at_critical() {
        let z = zeta(0.62, 2.3, 1.0, 0.4, 0.3).at_critical_damping();
        let c = charpoly(&z);
        assert!(c.hurwitz_gap().abs() < 1e-12 * c.p3);
    }

    #[test]
    fn classify_three_regimes() {
        let base = zeta(0.45, 1.4, 1.0, 0.8, 0.2);
        let ec = epsilon_critical(&base);
        let v = classify(&base.with_epsilon(2.0 * ec).unwrap());
        assert_eq!(v.classification, Classification::AsymptoticallyStable);
        assert!(v.roots.iter().all(|z| z.re < 0.0) && v.roots_agree);
        let v = classify(&base.with_epsilon(0.5 * ec).unwrap());
        assert_eq!(v.classification, Classification::Unstable);
        assert!(v.roots[1].re > 0.0 && v.roots_agree);
        let v = classify(&base.at_critical_damping());
        assert_eq!(v.classification, Classification::Critical);
        assert!(v.roots[1].re.abs() < 1e-9 && v.roots_agree);
        assert!((v.roots[0].re + ec).abs() < 1e-9);
        assert!((v.roots[1].im - omega0(&base)).abs() < 1e-9);
    }

    #[test]
    fn non_uniformity_watt_limit() {
        let b = 0.3f64;
        assert!((non_uniformity(b, 0.0, 0.0) - 1.0 / (2.0 * b.powf(1.5))).abs() < 1e-12);
    }

    #[test]
    fn non_uniformity_is_alpha_over_eps_c() {
        let (b, a, r, k) = (0.7, 2.2, 1.3, 0.45);
        assert!((non_uniformity(b, r, k) - a / critical_damping(b, a, r, k)).abs() < 1e-12);
    }

    #[test]
    fn non_uniformity_is_equilibrium_sensitivity() {
        let (r, k, b, h) = (0.8, 0.3, 0.4, 1e-6);
        let z0 = |b: f64| crate::model::equilibrium(&zeta(b, 1.0, 1.0, r, k))[2];
        let d = (z0(b + h) - z0(b - h)) / (2.0 * h);
        assert!((d.abs() - non_uniformity(b, r, k)).abs() < 1e-7);
    }

    #[test]
    fn vyshnegradskii_matches_classification() {
        let mut p = PhysicalParams {
            m: 1.0, l: 1.0, big_l: 0.1, k: 2.0, b: 0.05, g: 9.8,
            c: 1.0, mu: 1.0, inertia: 1.0, load: 0.5,
        };
        for _ in 0..6 {
            let v = vyshnegradskii(&p).unwrap();
            let z = rescale_physical(&p).unwrap().params;
            assert_eq!(v.stable, z.epsilon() > epsilon_critical(&z));
            assert!((v.criterion - z.epsilon() / epsilon_critical(&z)).abs() < 1e-12);
            p.b *= 3.0;
        }
    }
}
