//! Traveling-wave reductions of the form `(dy/dz̄)² = P(y)`.
//!
//! The registry holds the printed reductions of both order-parameter equations
//! plus the exact first integral of the hydrodynamic hard-core equation. Each
//! entry can be checked against closed-form profiles ([`residual`]) and solved
//! independently by quadrature ([`solve_by_quadrature`]).

mod poly;
mod residual;
mod solve;

use serde::{Deserialize, Serialize};

pub use poly::{FactoredPoly, Poly};
pub use residual::{
    consistency_matrix, default_grid, residual, residual_sampled, ConsistencyMatrix, NamedForm,
};
pub use solve::{solve_at, solve_by_quadrature, solve_on};

use crate::error::{precondition, Result};

/// Which reduction an ODE is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OdeKind {
    /// Particle-density variation `f` at half filling: `4f²(γ² − f²)`.
    DensityVariation,
    /// Normalized hard-core condensate density: `(1 − ρ̄)²(ρ̄ − v̄²)`.
    HgpeCondensate,
    /// Normalized condensate variation `f̄_s`: `f̄²(f̄ + γ²)`.
    CondensateVariation,
    /// Real part of the condensate wave function against `w = x/ξ`: `(γ² − ψ²)²/2`.
    GpeRealPartHealing,
    /// Real part against `z̄ = Λz`: `(1 − ψ² − v̄²)²`.
    GpeRealPart,
    /// Normalized condensate density of the weakly interacting gas: `(1 − ρ̄)²(ρ̄ − v̄²)`.
    GpeCondensate,
    /// Exact first integral of the hydrodynamic hard-core equations at half filling,
    /// `4f²(γ² − 4f²)/(1 + 8ζ²f²)` in `z̄ = ζz`.
    HgpeTravelingWave { zeta: f64 },
}

impl OdeKind {
    /// The printed reductions, in registry order.
    pub const PRINTED: [OdeKind; 6] = [
        OdeKind::DensityVariation,
        OdeKind::HgpeCondensate,
        OdeKind::CondensateVariation,
        OdeKind::GpeRealPartHealing,
        OdeKind::GpeRealPart,
        OdeKind::GpeCondensate,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            OdeKind::DensityVariation => "f",
            OdeKind::HgpeCondensate => "rho_s",
            OdeKind::CondensateVariation => "f_s",
            OdeKind::GpeRealPartHealing => "psi_w",
            OdeKind::GpeRealPart => "psi",
            OdeKind::GpeCondensate => "rho_g",
            OdeKind::HgpeTravelingWave { .. } => "f_exact",
        }
    }

    pub fn variable(&self) -> Variable {
        match self {
            OdeKind::DensityVariation | OdeKind::HgpeTravelingWave { .. } => Variable::DensityVariation,
            OdeKind::HgpeCondensate | OdeKind::GpeCondensate => Variable::NormalizedCondensate,
            OdeKind::CondensateVariation => Variable::CondensateVariation,
            OdeKind::GpeRealPartHealing | OdeKind::GpeRealPart => Variable::RealPart,
        }
    }

    pub fn argument(&self) -> Argument {
        match self {
            OdeKind::GpeRealPartHealing => Argument::HealingUnits,
            _ => Argument::Scaled,
        }
    }
}

/// Dependent variable of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    DensityVariation,
    NormalizedCondensate,
    CondensateVariation,
    RealPart,
}

/// Independent variable of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    /// `z̄`: lattice coordinate scaled by ζ (hard-core) or Λ (condensate).
    Scaled,
    /// `w = (x − vt)/ξ`.
    HealingUnits,
}

/// `(dy/dz̄)² = N(y)/D(y)` with `N` kept in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureODE {
    pub kind: OdeKind,
    pub numerator: FactoredPoly,
    pub denominator: Poly,
    pub vbar: f64,
    pub gamma: f64,
}

impl QuadratureODE {
    pub fn new(kind: OdeKind, vbar: f64) -> Result<Self> {
        if !(vbar.is_finite() && (0.0..1.0).contains(&vbar)) {
            return Err(precondition(format!("v̄ = {vbar} must satisfy 0 ≤ v̄ < 1")));
        }
        let gamma = (1.0 - vbar * vbar).sqrt();
        let g2 = gamma * gamma;
        let one = Poly::one();
        let (numerator, denominator) = match kind {
            OdeKind::DensityVariation => (FactoredPoly::new(-4.0, vec![0.0, 0.0, gamma, -gamma]), one),
            OdeKind::HgpeCondensate | OdeKind::GpeCondensate => {
                (FactoredPoly::new(1.0, vec![1.0, 1.0, vbar * vbar]), one)
            }
            OdeKind::CondensateVariation => (FactoredPoly::new(1.0, vec![0.0, 0.0, -g2]), one),
            OdeKind::GpeRealPartHealing => {
                (FactoredPoly::new(0.5, vec![gamma, gamma, -gamma, -gamma]), one)
            }
            OdeKind::GpeRealPart => (FactoredPoly::new(1.0, vec![gamma, gamma, -gamma, -gamma]), one),
            OdeKind::HgpeTravelingWave { zeta } => {
                if !(zeta.is_finite() && zeta > 0.0) {
                    return Err(precondition(format!("ζ = {zeta} must be > 0")));
                }
                let half = gamma / 2.0;
                (
                    FactoredPoly::new(-16.0, vec![0.0, 0.0, half, -half]),
                    Poly::new(vec![1.0, 0.0, 8.0 * zeta * zeta]),
                )
            }
        };
        Ok(QuadratureODE {
            kind,
            numerator,
            denominator,
            vbar,
            gamma,
        })
    }

    pub fn rhs(&self, y: f64) -> f64 {
        self.numerator.eval(y) / self.denominator.eval(y)
    }

    /// Fixed points of the orbit: the multiple roots of `P`.
    pub fn equilibria(&self) -> Vec<f64> {
        self.numerator.multiple_roots()
    }

    /// Turning points: simple roots of `P`.
    pub fn turning_points(&self) -> Vec<f64> {
        self.numerator.simple_roots()
    }

    /// Exponential approach rate `√(P''(y_b)/2)` at an equilibrium.
    pub fn decay_rate(&self, equilibrium: f64) -> f64 {
        let m = self.numerator.multiplicity(equilibrium);
        debug_assert_eq!(m, 2, "decay rate only defined at double roots");
        let curvature = self.numerator.deflated_at(equilibrium, equilibrium, m)
            / self.denominator.eval(equilibrium);
        curvature.sqrt()
    }

    /// Slowest approach rate over all equilibria.
    pub fn slowest_rate(&self) -> f64 {
        self.equilibria()
            .into_iter()
            .map(|e| self.decay_rate(e))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Outcome of an exact coefficient comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub same_variable: bool,
    pub numerator_diff: Vec<f64>,
    pub denominator_diff: Vec<f64>,
}

/// Exact coefficientwise comparison of two reductions.
pub fn polynomial_identity(a: &QuadratureODE, b: &QuadratureODE) -> IdentityReport {
    let same_variable =
        a.kind.variable() == b.kind.variable() && a.kind.argument() == b.kind.argument();
    let numerator_diff = a.numerator.expand().sub(&b.numerator.expand());
    let denominator_diff = a.denominator.sub(&b.denominator);
    let zero = numerator_diff.iter().chain(&denominator_diff).all(|&d| d == 0.0);
    IdentityReport {
        equal: same_variable && zero,
        same_variable,
        numerator_diff,
        denominator_diff,
    }
}

/// Closed-form profiles with analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ClosedForm {
    /// `amplitude · sech(rate · z)`
    Sech { amplitude: f64, rate: f64 },
    /// `base − depth · sech²(rate · z)`
    Sech2 { base: f64, depth: f64, rate: f64 },
    /// `amplitude · tanh(rate · z)`
    Tanh { amplitude: f64, rate: f64 },
}

impl ClosedForm {
    pub fn value(&self, z: f64) -> f64 {
        match *self {
            ClosedForm::Sech { amplitude, rate } => amplitude * sech(rate * z),
            ClosedForm::Sech2 { base, depth, rate } => {
                let s = sech(rate * z);
                base - depth * s * s
            }
            ClosedForm::Tanh { amplitude, rate } => amplitude * (rate * z).tanh(),
        }
    }

    pub fn derivative(&self, z: f64) -> f64 {
        match *self {
            ClosedForm::Sech { amplitude, rate } => {
                let u = rate * z;
                -amplitude * rate * sech(u) * u.tanh()
            }
            ClosedForm::Sech2 { depth, rate, .. } => {
                let u = rate * z;
                let s = sech(u);
                2.0 * depth * rate * s * s * u.tanh()
            }
            ClosedForm::Tanh { amplitude, rate } => {
                let s = sech(rate * z);
                amplitude * rate * s * s
            }
        }
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&z| self.value(z)).collect()
    }
}

pub fn sech(u: f64) -> f64 {
    let a = u.abs();
    if a > 700.0 {
        return 0.0;
    }
    let e = (-a).exp();
    2.0 * e / (1.0 + e * e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_identity_holds_for_all_speeds() {
        for vbar in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let a = QuadratureODE::new(OdeKind::HgpeCondensate, vbar).unwrap();
            let b = QuadratureODE::new(OdeKind::GpeCondensate, vbar).unwrap();
            let r = polynomial_identity(&a, &b);
            assert!(r.equal, "v̄ = {vbar}: {r:?}");
        }
    }

    #[test]
    fn different_variables_are_unequal() {
        let a = QuadratureODE::new(OdeKind::HgpeCondensate, 0.5).unwrap();
        let b = QuadratureODE::new(OdeKind::CondensateVariation, 0.5).unwrap();
        let r = polynomial_identity(&a, &b);
        assert!(!r.equal);
        assert!(!r.same_variable);
    }

    #[test]
    fn speed_mismatch_is_unequal() {
        let a = QuadratureODE::new(OdeKind::HgpeCondensate, 0.3).unwrap();
        let b = QuadratureODE::new(OdeKind::GpeCondensate, 0.4).unwrap();
        let r = polynomial_identity(&a, &b);
        assert!(!r.equal);
        assert!(r.same_variable);
        // constant term −v̄² differs by 0.16 − 0.09
        assert!((r.numerator_diff[0] - 0.07).abs() < 1e-15);
    }

    #[test]
    fn expanded_condensate_polynomial() {
        // (1 − y)²(y − a) = −a + (1 + 2a)y − (2 + a)y² + y³
        let a = 0.25;
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, 0.5).unwrap();
        let p = ode.numerator.expand();
        let want = [-a, 1.0 + 2.0 * a, -(2.0 + a), 1.0];
        for (c, w) in p.coeffs.iter().zip(want) {
            assert!((c - w).abs() < 1e-15);
        }
    }

    #[test]
    fn background_is_an_equilibrium() {
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, 0.6).unwrap();
        assert_eq!(ode.equilibria(), vec![1.0]);
        assert_eq!(ode.rhs(1.0), 0.0);
        assert!((ode.decay_rate(1.0) - 0.8).abs() < 1e-15);
        let kink = QuadratureODE::new(OdeKind::GpeRealPart, 0.6).unwrap();
        assert_eq!(kink.equilibria(), vec![-0.8, 0.8]);
        assert!((kink.decay_rate(0.8) - 1.6).abs() < 1e-15);
    }

    #[test]
    fn closed_form_derivatives_match_central_differences() {
        let forms = [
            ClosedForm::Sech { amplitude: 0.4, rate: 1.6 },
            ClosedForm::Sech2 { base: 1.0, depth: 0.64, rate: 0.4 },
            ClosedForm::Tanh { amplitude: 0.8, rate: 0.8 },
        ];
        let h = 1e-5;
        for f in forms {
            for z in [-2.3, -0.1, 0.0, 0.7, 3.1] {
                let fd = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
                assert!((fd - f.derivative(z)).abs() < 1e-9, "{f:?} at {z}");
            }
        }
    }

    #[test]
    fn sech_is_stable_for_large_arguments() {
        assert_eq!(sech(800.0), 0.0);
        assert!((sech(0.0) - 1.0).abs() < 1e-16);
        assert!((sech(1.0) - 1.0 / 1f64.cosh()).abs() < 1e-15);
    }
}
