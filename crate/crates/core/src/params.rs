//! Physical parameters and the derived dimensionless groups.
//!
//! Units: ħ = a = 1 and the continuum mass is tied to the hopping through
//! `t a² = ħ²/m`, so `m = 1/t` and the zero-point velocity is `c₀ = ħ/(m a) = t`.
//! With the default `t = 1` every scale collapses to one.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};

/// Which order-parameter equation a parameter set is interpreted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Hard-core bosons (spin-coherent-state order parameter).
    Hgpe,
    /// Weakly interacting condensate.
    Gpe,
}

impl std::fmt::Display for System {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            System::Hgpe => "hgpe",
            System::Gpe => "gpe",
        })
    }
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hgpe" => Ok(System::Hgpe),
            "gpe" => Ok(System::Gpe),
            other => Err(format!("expected `hgpe` or `gpe`, got `{other}`")),
        }
    }
}

/// Lattice and interaction constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Nearest-neighbour hopping `t`.
    #[serde(rename = "t")]
    pub hopping: f64,
    /// Nearest-neighbour attraction `V`, `0 < V < t`.
    #[serde(rename = "V")]
    pub nn_attraction: f64,
    /// On-site repulsion `U` (condensate side only).
    #[serde(rename = "U")]
    pub onsite_repulsion: f64,
    /// Background particle density: `ρ⁰` for hard-core bosons, `ρ_g⁰` for the condensate.
    #[serde(rename = "rho0")]
    pub background_density: f64,
}

impl PhysicalParams {
    /// Half-filled hard-core parameters with `t = 1`.
    pub fn half_filled(nn_attraction: f64) -> Self {
        PhysicalParams {
            hopping: 1.0,
            nn_attraction,
            onsite_repulsion: 0.0,
            background_density: 0.5,
        }
    }

    pub fn mass(&self) -> f64 {
        1.0 / self.hopping
    }

    /// Easy-plane anisotropy `g = t − V`.
    pub fn anisotropy(&self) -> f64 {
        self.hopping - self.nn_attraction
    }

    /// Zero-point velocity `c₀ = ħ/(m a)`.
    pub fn zero_point_velocity(&self) -> f64 {
        self.hopping
    }

    /// Asymptotic condensate density `ρ_s⁰ = ρ⁰(1 − ρ⁰)` of the hard-core system.
    pub fn hgpe_condensate_density(&self) -> f64 {
        self.background_density * (1.0 - self.background_density)
    }

    /// `c_s = √(2gρ_s⁰/m)`.
    pub fn hgpe_sound_speed(&self) -> f64 {
        (2.0 * self.anisotropy() * self.hgpe_condensate_density() / self.mass()).sqrt()
    }

    /// `c_g = √(Uρ_g⁰/m)`.
    pub fn gpe_sound_speed(&self) -> f64 {
        (self.onsite_repulsion * self.background_density / self.mass()).sqrt()
    }

    /// Checks the invariants shared by both interpretations plus the side-specific ones.
    pub fn validate(&self, system: System) -> Result<()> {
        let finite = [
            self.hopping,
            self.nn_attraction,
            self.onsite_repulsion,
            self.background_density,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(precondition("parameters must be finite"));
        }
        if self.hopping <= 0.0 {
            return Err(precondition(format!("t = {} must be > 0", self.hopping)));
        }
        let g = self.anisotropy();
        if g <= 0.0 {
            return Err(precondition(format!(
                "g ≤ 0: g = t − V = {g} (V = {} must be < t = {})",
                self.nn_attraction, self.hopping
            )));
        }
        match system {
            System::Hgpe => {
                if self.nn_attraction <= 0.0 {
                    return Err(precondition(format!(
                        "V = {} must be > 0 (ζ diverges at V = 0)",
                        self.nn_attraction
                    )));
                }
                let rho = self.background_density;
                if !(rho > 0.0 && rho < 1.0) {
                    return Err(precondition(format!("ρ⁰ = {rho} must lie in (0, 1)")));
                }
            }
            System::Gpe => {
                if self.onsite_repulsion <= 0.0 {
                    return Err(precondition(format!(
                        "U = {} must be > 0",
                        self.onsite_repulsion
                    )));
                }
                if self.background_density <= 0.0 {
                    return Err(precondition(format!(
                        "ρ_g⁰ = {} must be > 0",
                        self.background_density
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Every derived quantity used downstream, evaluated for one side and one soliton speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedGroups {
    pub system: System,
    /// Lab-frame soliton speed `v`.
    pub speed: f64,
    pub g: f64,
    pub mu: f64,
    pub h_z: f64,
    pub c0: f64,
    /// Hard-core sound speed, when `ρ⁰ ∈ (0, 1)`.
    pub c_s: Option<f64>,
    /// Condensate sound speed, when `U > 0`.
    pub c_g: Option<f64>,
    /// Sound speed of the side in use.
    pub c_sound: f64,
    /// `Λ = c_sound / c₀`.
    pub lambda: f64,
    pub vbar: f64,
    pub gamma: f64,
    /// `Λ/√(1 − 2Λ²)`, defined while `Λ² < 1/2`.
    pub zeta: Option<f64>,
    /// Healing length `ξ = a/(√2 Λ)`.
    pub xi: f64,
    /// Hard-core soliton width `Γ_s = (2γζ)⁻¹`.
    pub width_hgpe: Option<f64>,
    /// Width `Γ_g = (2γΛ)⁻¹` assigned to the condensate dip. The density returned by
    /// [`crate::analytic::gpe_density`] is a sech² of width `2 Γ_g`.
    pub width_gpe: f64,
    pub rho_s0: f64,
}

/// Evaluates all derived groups for soliton lab speed `speed`.
pub fn derive_groups(p: &PhysicalParams, system: System, speed: f64) -> Result<DerivedGroups> {
    p.validate(system)?;
    if !(speed.is_finite() && speed >= 0.0) {
        return Err(precondition(format!("v = {speed} must be ≥ 0")));
    }
    let g = p.anisotropy();
    let c0 = p.zero_point_velocity();
    let rho0 = p.background_density;
    let in_unit = rho0 > 0.0 && rho0 < 1.0;
    let c_s = in_unit.then(|| p.hgpe_sound_speed());
    let c_g = (p.onsite_repulsion > 0.0).then(|| p.gpe_sound_speed());
    let (c_sound, mu, rho_s0) = match system {
        System::Hgpe => (p.hgpe_sound_speed(), 2.0 * g * rho0, p.hgpe_condensate_density()),
        System::Gpe => (p.gpe_sound_speed(), p.onsite_repulsion * rho0, rho0),
    };
    let vbar = speed / c_sound;
    if vbar >= 1.0 {
        return Err(precondition(format!(
            "v̄ = v/c = {vbar} must satisfy 0 ≤ v̄ < 1 (γ² = 1 − v̄² ≤ 0 gives a flat profile)"
        )));
    }
    let gamma = (1.0 - vbar * vbar).sqrt();
    let lambda = c_sound / c0;
    let zeta_den = 1.0 - 2.0 * lambda * lambda;
    let zeta = (zeta_den > 0.0).then(|| lambda / zeta_den.sqrt());
    Ok(DerivedGroups {
        system,
        speed,
        g,
        mu,
        h_z: g * (1.0 - 2.0 * rho0),
        c0,
        c_s,
        c_g,
        c_sound,
        lambda,
        vbar,
        gamma,
        zeta,
        xi: 1.0 / (std::f64::consts::SQRT_2 * lambda),
        width_hgpe: zeta.map(|z| 1.0 / (2.0 * gamma * z)),
        width_gpe: 1.0 / (2.0 * gamma * lambda),
        rho_s0,
    })
}

/// Same as [`derive_groups`] with the speed given in units of the side's sound speed.
pub fn derive_groups_vbar(p: &PhysicalParams, system: System, vbar: f64) -> Result<DerivedGroups> {
    p.validate(system)?;
    if !(vbar.is_finite() && vbar >= 0.0) {
        return Err(precondition(format!("v̄ = {vbar} must be ≥ 0")));
    }
    if vbar >= 1.0 {
        return Err(precondition(format!(
            "v̄ = {vbar} must satisfy 0 ≤ v̄ < 1 (γ² = 1 − v̄² ≤ 0 gives a flat profile)"
        )));
    }
    let c = match system {
        System::Hgpe => p.hgpe_sound_speed(),
        System::Gpe => p.gpe_sound_speed(),
    };
    derive_groups(p, system, vbar * c)
}

/// Condensate parameters whose density dip maps onto the half-filled hard-core one:
/// `ρ_g⁰ = 1/4` and `U` chosen so that `c_g = c_s`.
pub fn match_gpe_to_hgpe(p: &PhysicalParams) -> Result<PhysicalParams> {
    p.validate(System::Hgpe)?;
    if p.background_density != 0.5 {
        return Err(precondition(format!(
            "matching requires half filling, got ρ⁰ = {}",
            p.background_density
        )));
    }
    let rho_g0 = 0.25;
    let matched = PhysicalParams {
        onsite_repulsion: 2.0 * p.anisotropy() * p.hgpe_condensate_density() / rho_g0,
        background_density: rho_g0,
        ..*p
    };
    matched.validate(System::Gpe)?;
    Ok(matched)
}

#[cfg(test)]
mod tests {
    use super::*;

    const THIRD: f64 = 1.0 / 3.0;

    #[test]
    fn half_filling_v_third() {
        let p = PhysicalParams::half_filled(THIRD);
        let d = derive_groups(&p, System::Hgpe, 0.0).unwrap();
        assert!((d.g - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.rho_s0 - 0.25).abs() < 1e-15);
        assert!((d.c_sound - THIRD.sqrt()).abs() < 1e-15);
        assert!((d.lambda - 0.577_350_269_189_625_8).abs() < 1e-15);
        assert!((d.zeta.unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(d.h_z, 0.0);
        assert!((d.mu - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn width_at_vbar_point_six() {
        let p = PhysicalParams::half_filled(THIRD);
        let d = derive_groups_vbar(&p, System::Hgpe, 0.6).unwrap();
        assert!((d.gamma - 0.8).abs() < 1e-15);
        assert!((d.width_hgpe.unwrap() - 0.625).abs() < 1e-14);
    }

    #[test]
    fn rejects_sonic_soliton() {
        let p = PhysicalParams::half_filled(THIRD);
        let err = derive_groups_vbar(&p, System::Hgpe, 1.0).unwrap_err();
        assert!(err.to_string().contains("v̄"));
        let c = p.hgpe_sound_speed();
        assert!(derive_groups(&p, System::Hgpe, 1.5 * c).is_err());
    }

    #[test]
    fn rejects_imaginary_sound_speed() {
        let p = PhysicalParams::half_filled(1.2);
        let err = derive_groups(&p, System::Hgpe, 0.0).unwrap_err();
        assert!(err.to_string().contains("g ≤ 0"), "{err}");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn rejects_density_outside_unit_interval() {
        let mut p = PhysicalParams::half_filled(THIRD);
        p.background_density = 1.0;
        assert!(derive_groups(&p, System::Hgpe, 0.0).is_err());
        p.background_density = 0.0;
        assert!(derive_groups(&p, System::Hgpe, 0.0).is_err());
    }

    #[test]
    fn matching_equates_sound_speeds() {
        let p = PhysicalParams::half_filled(THIRD);
        let m = match_gpe_to_hgpe(&p).unwrap();
        assert!((m.onsite_repulsion - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.background_density, 0.25);
        let dg = derive_groups(&m, System::Gpe, 0.0).unwrap();
        let ds = derive_groups(&p, System::Hgpe, 0.0).unwrap();
        assert!((dg.c_sound - ds.c_sound).abs() < 1e-14);
        assert!((dg.c_sound - THIRD.sqrt()).abs() < 1e-15);
        // width ratio of the two width formulas
        let ratio = ds.width_hgpe.unwrap() / dg.width_gpe;
        let expected = (1.0 - 2.0 * ds.lambda * ds.lambda).sqrt();
        assert!((ratio - expected).abs() < 1e-14);
        assert!((ratio - 0.577_350_269_189_625_8).abs() < 1e-14);
    }

    #[test]
    fn matching_near_sonic_attraction() {
        let p = PhysicalParams::half_filled(1.0 - 1e-9);
        let m = match_gpe_to_hgpe(&p).unwrap();
        assert!(m.onsite_repulsion > 0.0 && m.onsite_repulsion < 1e-8);
    }

    #[test]
    fn matching_requires_half_filling() {
        let mut p = PhysicalParams::half_filled(THIRD);
        p.background_density = 0.3;
        assert!(match_gpe_to_hgpe(&p).is_err());
    }

    #[test]
    fn field_vanishes_only_at_half_filling() {
        let mut p = PhysicalParams::half_filled(THIRD);
        for rho in [0.1, 0.25, 0.5, 0.75] {
            p.background_density = rho;
            let d = derive_groups(&p, System::Hgpe, 0.0).unwrap();
            assert_eq!(d.h_z == 0.0, rho == 0.5);
            // h_z = g − μ
            assert!((d.h_z - (d.g - d.mu)).abs() < 1e-15);
        }
    }
}
