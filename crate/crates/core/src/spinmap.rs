//! Classical easy-plane spin image of the hard-core field.
//!
//! `S_z = 1/2 − ρ` and the in-plane component has length `√(1/4 − S_z²)` and
//! azimuth `φ`, so the squared in-plane magnetization is the condensate density.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::pde::HgpeState;

/// Spin triple of length 1/2 at each grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinField {
    pub x: Vec<f64>,
    pub sx: Vec<f64>,
    pub sy: Vec<f64>,
    pub sz: Vec<f64>,
}

impl SpinField {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Polar angle from `+z`.
    pub fn theta(&self) -> Vec<f64> {
        self.sz.iter().map(|&z| (2.0 * z).clamp(-1.0, 1.0).acos()).collect()
    }

    /// Azimuth in the easy plane.
    pub fn azimuth(&self) -> Vec<f64> {
        self.sx.iter().zip(&self.sy).map(|(&x, &y)| y.atan2(x)).collect()
    }

    /// Largest `||S| − 1/2|` over the grid.
    pub fn length_defect(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let n = (self.sx[i].powi(2) + self.sy[i].powi(2) + self.sz[i].powi(2)).sqrt();
                (n - 0.5).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn from_hgpe(s: &HgpeState) -> Result<Self> {
        to_spins(&s.grid.points(), &s.rho, &s.phi)
    }
}

/// Spin image of density and phase fields.
pub fn to_spins(x: &[f64], rho: &[f64], phi: &[f64]) -> Result<SpinField> {
    if rho.len() != x.len() || phi.len() != x.len() {
        return Err(precondition("x, ρ and φ must have equal length"));
    }
    if let Some(r) = rho.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(precondition(format!("ρ = {r} outside [0, 1]")));
    }
    let n = x.len();
    let (mut sx, mut sy, mut sz) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (&r, &p) in rho.iter().zip(phi) {
        let z = 0.5 - r;
        let m = (0.25 - z * z).max(0.0).sqrt();
        sx.push(m * p.cos());
        sy.push(m * p.sin());
        sz.push(z);
    }
    Ok(SpinField { x: x.to_vec(), sx, sy, sz })
}

/// Squared in-plane magnetization `S_x² + S_y²`.
pub fn inplane_mag_sq(s: &SpinField) -> Vec<f64> {
    s.sx.iter().zip(&s.sy).map(|(x, y)| x * x + y * y).collect()
}

/// Constants of the equivalent easy-plane ferromagnetic chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinChainParams {
    /// Exchange `t`.
    pub exchange: f64,
    /// Easy-plane anisotropy `g = t − V`.
    pub anisotropy: f64,
    /// Longitudinal field `h_z = g(1 − 2ρ⁰)`.
    pub field: f64,
    /// Cone angle with `cos θ₀ = 1 − 2ρ⁰`.
    pub cone_angle: f64,
}

pub fn spin_chain_params(p: &crate::params::PhysicalParams) -> Result<SpinChainParams> {
    let rho0 = p.background_density;
    if !(0.0..=1.0).contains(&rho0) {
        return Err(precondition(format!("ρ⁰ = {rho0} outside [0, 1]")));
    }
    let g = p.anisotropy();
    if !(g > 0.0) {
        return Err(precondition(format!("g = t − V = {g} ≤ 0")));
    }
    Ok(SpinChainParams {
        exchange: p.hopping,
        anisotropy: g,
        field: g * (1.0 - 2.0 * rho0),
        cone_angle: (1.0 - 2.0 * rho0).acos(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::PhysicalParams;
    use std::f64::consts::PI;

    #[test]
    fn pointwise_examples() {
        let s = to_spins(&[0.0, 1.0, 2.0], &[0.5, 0.0, 1.0], &[0.0, 0.3, 0.3]).unwrap();
        assert_eq!((s.sx[0], s.sy[0], s.sz[0]), (0.5, 0.0, 0.0));
        assert_eq!(s.sz[1], 0.5);
        assert_eq!(s.sz[2], -0.5);
        let m = inplane_mag_sq(&s);
        assert_eq!(m[1], 0.0);
        assert_eq!(m[2], 0.0);
        assert!(s.length_defect() < 1e-15);
    }

    #[test]
    fn chain_parameters() {
        let c = spin_chain_params(&PhysicalParams::half_filled(1.0 / 3.0)).unwrap();
        assert_eq!(c.field, 0.0);
        assert!((c.cone_angle - PI / 2.0).abs() < 1e-15);
        let q = PhysicalParams { background_density: 0.25, ..PhysicalParams::half_filled(1.0 / 3.0) };
        let c = spin_chain_params(&q).unwrap();
        assert!((c.field - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.cone_angle - PI / 3.0).abs() < 1e-15);
        let mu = 2.0 * c.anisotropy * 0.25;
        assert!((c.field - (c.anisotropy - mu)).abs() < 1e-15);
        let bad = PhysicalParams { background_density: 1.5, ..q };
        assert!(spin_chain_params(&bad).is_err());
    }

    #[test]
    fn out_of_range_density_rejected() {
        assert!(to_spins(&[0.0], &[1.2], &[0.0]).is_err());
    }
}
