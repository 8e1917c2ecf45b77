//! Closed-form soliton profiles of both equations.
//!
//! Positions are lattice coordinates `z = (x − vt)/a` measured from the soliton
//! centre. The hard-core density is available in two shapes: the closed form
//! `1/2 ± (γ/2) sech(2γζz)` and the exact traveling wave of the hydrodynamic
//! equations, obtained by quadrature. Both share amplitude `γ/2` and decay rate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::params::{derive_groups_vbar, PhysicalParams, System};
use crate::profile::{Branch, Profile, ProfileKind, ProfileValues};
use crate::twode::{sech, solve_at, OdeKind, QuadratureODE};

/// Ratio of the continuity law derived from the hard-core equation to the
/// printed hydrodynamic form: `∂ₜρ = κ (t/2) ∂ₓ(ρ_s ∂ₓφ)` with `κ = −2`.
pub const CONTINUITY_KAPPA: f64 = -2.0;

fn gamma_of(vbar: f64) -> Result<f64> {
    if !(vbar.is_finite() && (0.0..1.0).contains(&vbar)) {
        return Err(precondition(format!("v̄ = {vbar} must satisfy 0 ≤ v̄ < 1")));
    }
    Ok((1.0 - vbar * vbar).sqrt())
}

fn dark_or_antidark(branch: Branch) -> Result<f64> {
    match branch {
        Branch::NotApplicable => Err(precondition("hard-core density needs a dark or antidark branch")),
        b => Ok(b.sign()),
    }
}

/// Hard-core particle density `1/2 ± (γ/2) sech(z/Γ_s)`, `Γ_s = (2γζ)⁻¹`.
pub fn hgpe_density(z: f64, vbar: f64, zeta: f64, branch: Branch) -> Result<f64> {
    let gamma = gamma_of(vbar)?;
    let sign = dark_or_antidark(branch)?;
    if !(zeta > 0.0) {
        return Err(precondition(format!("ζ = {zeta} must be > 0")));
    }
    Ok(0.5 + sign * 0.5 * gamma * sech(2.0 * gamma * zeta * z))
}

/// Hard-core condensate density `1/4 − (γ²/4) sech²(z/Γ_s)`, the same for both branches.
pub fn hgpe_condensate(z: f64, vbar: f64, zeta: f64) -> Result<f64> {
    let gamma = gamma_of(vbar)?;
    if !(zeta > 0.0) {
        return Err(precondition(format!("ζ = {zeta} must be > 0")));
    }
    let s = sech(2.0 * gamma * zeta * z);
    Ok(0.25 - 0.25 * gamma * gamma * s * s)
}

/// Condensate wave function `√ρ_g⁰ (γ tanh(γΛz) + i v̄)`.
pub fn gpe_wavefunction(z: f64, vbar: f64, lambda: f64, rho_g0: f64) -> Result<Complex64> {
    let gamma = gamma_of(vbar)?;
    check_lambda(lambda, rho_g0)?;
    Ok(rho_g0.sqrt() * Complex64::new(gamma * (gamma * lambda * z).tanh(), vbar))
}

/// Condensate density `ρ_g⁰ (1 − γ² sech²(γΛz))`.
pub fn gpe_density(z: f64, vbar: f64, lambda: f64, rho_g0: f64) -> Result<f64> {
    let gamma = gamma_of(vbar)?;
    check_lambda(lambda, rho_g0)?;
    let s = sech(gamma * lambda * z);
    Ok(rho_g0 * (1.0 - gamma * gamma * s * s))
}

fn check_lambda(lambda: f64, rho_g0: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda <= std::f64::consts::FRAC_1_SQRT_2) {
        return Err(precondition(format!("Λ = {lambda} must lie in (0, 1/√2]")));
    }
    if !(rho_g0 > 0.0) {
        return Err(precondition(format!("ρ_g⁰ = {rho_g0} must be > 0")));
    }
    Ok(())
}

/// Phase step `2 arctan(γ/v̄)` of the condensate wave function, `π` for a black soliton.
pub fn gpe_phase_step(vbar: f64) -> Result<f64> {
    let gamma = gamma_of(vbar)?;
    Ok(2.0 * gamma.atan2(vbar))
}

/// Which hard-core density profile feeds phase integration and initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityShape {
    /// Exact traveling wave of the hydrodynamic equations.
    #[default]
    Exact,
    /// `1/2 ± (γ/2) sech(2γζz)`.
    ClosedForm,
}

impl std::str::FromStr for DensityShape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(DensityShape::Exact),
            "closed_form" | "closed-form" => Ok(DensityShape::ClosedForm),
            other => Err(format!("expected `exact` or `closed_form`, got `{other}`")),
        }
    }
}

/// Half-filled hard-core density on `z`, either shape.
pub fn hgpe_density_on(
    z: &[f64],
    p: &PhysicalParams,
    vbar: f64,
    branch: Branch,
    shape: DensityShape,
) -> Result<Vec<f64>> {
    let zeta = half_filled_zeta(p, vbar)?;
    let sign = dark_or_antidark(branch)?;
    match shape {
        DensityShape::ClosedForm => z.iter().map(|&x| hgpe_density(x, vbar, zeta, branch)).collect(),
        DensityShape::Exact => {
            let ode = QuadratureODE::new(OdeKind::HgpeTravelingWave { zeta }, vbar)?;
            let zbar: Vec<f64> = z.iter().map(|x| zeta * x).collect();
            let f = solve_at(&ode, sign * 0.5 * ode.gamma, &zbar)?;
            Ok(f.into_iter().map(|f| 0.5 + f).collect())
        }
    }
}

fn half_filled_zeta(p: &PhysicalParams, vbar: f64) -> Result<f64> {
    if p.background_density != 0.5 {
        return Err(precondition(format!(
            "soliton profiles need half filling, got ρ⁰ = {}",
            p.background_density
        )));
    }
    let d = derive_groups_vbar(p, System::Hgpe, vbar)?;
    d.zeta.ok_or_else(|| precondition(format!("ζ undefined: Λ² = {} ≥ 1/2", d.lambda * d.lambda)))
}

/// Traveling-wave phase with its total step.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    pub profile: Profile,
    /// `φ(+∞) − φ(−∞)`.
    pub step: f64,
    /// Set when the density touches 0 or 1 and the phase jumps discontinuously.
    pub black: bool,
}

impl PhaseProfile {
    pub fn note(&self) -> Option<&'static str> {
        self.black.then_some("black soliton: phase step discontinuous")
    }
}

/// Slope `dφ/dz = (2/κ) v (ρ⁰ − ρ)/(t ρ_s)` of a traveling wave at speed `v`.
pub fn phase_slope(rho: f64, speed: f64, hopping: f64) -> f64 {
    let rho_s = rho * (1.0 - rho);
    2.0 / CONTINUITY_KAPPA * speed * (0.5 - rho) / (hopping * rho_s)
}

const GAUSS5: [(f64, f64); 5] = [
    (0.0, 128.0 / 225.0),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Hard-core phase from the traveling-wave continuity law, zero at the left edge.
///
/// The grid must be increasing. The left edge should sit in the background:
/// the phase is not corrected for slope accumulated beyond it.
pub fn hgpe_phase(
    z: &[f64],
    p: &PhysicalParams,
    vbar: f64,
    branch: Branch,
    shape: DensityShape,
) -> Result<PhaseProfile> {
    let sign = dark_or_antidark(branch)?;
    let d = derive_groups_vbar(p, System::Hgpe, vbar)?;
    if vbar == 0.0 {
        // the density reaches 0 or 1 at the centre
        let phi = z
            .iter()
            .map(|&x| if x < 0.0 { 0.0 } else if x == 0.0 { 0.5 * sign * PI } else { sign * PI })
            .collect();
        return Ok(PhaseProfile {
            profile: Profile::real(z.to_vec(), phi, ProfileKind::HgpePhase).with_groups(d).with_branch(branch),
            step: sign * PI,
            black: true,
        });
    }
    let mut nodes = Vec::with_capacity(5 * z.len());
    for w in z.windows(2) {
        let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
        nodes.extend(GAUSS5.iter().map(|(s, _)| mid + half * s));
    }
    let rho = hgpe_density_on(&nodes, p, vbar, branch, shape)?;
    let mut phi = Vec::with_capacity(z.len());
    let mut acc = 0.0;
    phi.push(acc);
    for (k, w) in z.windows(2).enumerate() {
        let half = 0.5 * (w[1] - w[0]);
        let cell: f64 = GAUSS5
            .iter()
            .zip(&rho[5 * k..5 * k + 5])
            .map(|((_, wt), &r)| wt * phase_slope(r, d.speed, p.hopping))
            .sum();
        acc += half * cell;
        phi.push(acc);
    }
    let step = match shape {
        DensityShape::ClosedForm => closed_form_phase_step(&d, p.hopping, branch),
        DensityShape::Exact => acc,
    };
    Ok(PhaseProfile {
        profile: Profile::real(z.to_vec(), phi, ProfileKind::HgpePhase).with_groups(d).with_branch(branch),
        step,
        black: false,
    })
}

/// Total phase step `∓π Λc₀/(tζ) = ∓π √(1 − 2Λ²)` across the closed-form density.
fn closed_form_phase_step(d: &crate::params::DerivedGroups, hopping: f64, branch: Branch) -> f64 {
    let zeta = d.zeta.unwrap_or(f64::INFINITY);
    -2.0 / CONTINUITY_KAPPA * branch.sign() * PI * d.lambda * d.c0 / (hopping * zeta)
}

/// Density, condensate and phase of a half-filled hard-core soliton centred at `x0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HgpeSoliton {
    pub density: Profile,
    pub condensate: Profile,
    pub phase: PhaseProfile,
}

pub fn hgpe_soliton(
    x: &[f64],
    x0: f64,
    p: &PhysicalParams,
    vbar: f64,
    branch: Branch,
    shape: DensityShape,
) -> Result<HgpeSoliton> {
    let d = derive_groups_vbar(p, System::Hgpe, vbar)?;
    let z: Vec<f64> = x.iter().map(|v| v - x0).collect();
    let rho = hgpe_density_on(&z, p, vbar, branch, shape)?;
    let rho_s: Vec<f64> = rho.iter().map(|r| r * (1.0 - r)).collect();
    let mut phase = hgpe_phase(&z, p, vbar, branch, shape)?;
    phase.profile.x = x.to_vec();
    Ok(HgpeSoliton {
        density: Profile::real(x.to_vec(), rho, ProfileKind::HgpeDensity).with_groups(d).with_branch(branch),
        condensate: Profile::real(x.to_vec(), rho_s, ProfileKind::HgpeCondensate).with_groups(d).with_branch(branch),
        phase,
    })
}

/// Condensate dark soliton centred at `x0`: wave function and density.
pub fn gpe_soliton(x: &[f64], x0: f64, p: &PhysicalParams, vbar: f64) -> Result<(Profile, Profile)> {
    let d = derive_groups_vbar(p, System::Gpe, vbar)?;
    let rho_g0 = p.background_density;
    let psi = x
        .iter()
        .map(|&v| gpe_wavefunction(v - x0, vbar, d.lambda, rho_g0))
        .collect::<Result<Vec<_>>>()?;
    let rho = psi.iter().map(|c| c.norm_sqr()).collect();
    let wave = Profile {
        x: x.to_vec(),
        values: ProfileValues::Complex(psi),
        kind: ProfileKind::GpeWavefunction,
        groups: Some(d),
        branch: Branch::NotApplicable,
    };
    let density = Profile::real(x.to_vec(), rho, ProfileKind::GpeDensity).with_groups(d);
    Ok((wave, density))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::symmetric_grid;

    const THIRD: f64 = 1.0 / 3.0;

    #[test]
    fn density_examples() {
        assert_eq!(hgpe_density(0.0, 0.0, 1.0, Branch::Dark).unwrap(), 0.0);
        assert_eq!(hgpe_density(0.0, 0.0, 1.0, Branch::Antidark).unwrap(), 1.0);
        assert!((hgpe_density(0.0, 0.6, 1.0, Branch::Dark).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(hgpe_density(1e3, 0.6, 1.0, Branch::Dark).unwrap(), 0.5);
        assert!(hgpe_density(0.0, 1.0, 1.0, Branch::Dark).is_err());
    }

    #[test]
    fn condensate_examples() {
        assert_eq!(hgpe_condensate(0.0, 0.0, 1.0).unwrap(), 0.0);
        assert!((hgpe_condensate(0.0, 0.6, 1.0).unwrap() - 0.09).abs() < 1e-15);
    }

    #[test]
    fn wavefunction_examples() {
        let psi = gpe_wavefunction(0.0, 0.0, 0.5, 0.25).unwrap();
        assert_eq!(psi, Complex64::new(0.0, 0.0));
        let far = gpe_wavefunction(1e3, 0.6, 0.5, 0.25).unwrap();
        assert!((far - Complex64::new(0.4, 0.3)).norm() < 1e-15);
        assert!((far.norm_sqr() - 0.25).abs() < 1e-15);
        assert!((gpe_phase_step(0.0).unwrap() - PI).abs() < 1e-15);
        assert!((gpe_density(0.0, 0.6, 0.5, 0.25).unwrap() - 0.09).abs() < 1e-15);
    }

    #[test]
    fn exact_and_closed_form_share_amplitude() {
        let p = PhysicalParams::half_filled(THIRD);
        let z = [0.0, 40.0];
        for shape in [DensityShape::Exact, DensityShape::ClosedForm] {
            let r = hgpe_density_on(&z, &p, 0.6, Branch::Dark, shape).unwrap();
            assert!((r[0] - 0.1).abs() < 1e-15);
            assert!((r[1] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_phase_step_is_pi_root_v() {
        let p = PhysicalParams::half_filled(THIRD);
        let z = symmetric_grid(60.0, 4001);
        let ph = hgpe_phase(&z, &p, 0.6, Branch::Dark, DensityShape::ClosedForm).unwrap();
        let want = -PI * THIRD.sqrt();
        assert!((ph.step - want).abs() < 1e-12, "{}", ph.step);
        let last = *ph.profile.as_real().unwrap().last().unwrap();
        assert!((last - want).abs() < 1e-9, "{last}");
    }

    #[test]
    fn exact_phase_step_approaches_pi_slowly() {
        let p = PhysicalParams::half_filled(THIRD);
        let z = symmetric_grid(60.0, 2001);
        let dark = hgpe_phase(&z, &p, 0.6, Branch::Dark, DensityShape::Exact).unwrap();
        let anti = hgpe_phase(&z, &p, 0.6, Branch::Antidark, DensityShape::Exact).unwrap();
        assert!(dark.step < 0.0 && dark.step.abs() < PI);
        assert!((dark.step + anti.step).abs() < 1e-10);
        assert!((dark.step + 2.4134).abs() < 1e-3, "{}", dark.step);
    }

    #[test]
    fn black_soliton_phase_is_flagged() {
        let p = PhysicalParams::half_filled(THIRD);
        let z = symmetric_grid(10.0, 101);
        let ph = hgpe_phase(&z, &p, 0.0, Branch::Dark, DensityShape::Exact).unwrap();
        assert!(ph.black);
        assert_eq!(ph.step, -PI);
        assert!(ph.note().unwrap().contains("discontinuous"));
    }
}
