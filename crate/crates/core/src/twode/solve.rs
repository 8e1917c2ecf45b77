//! Orbits of `(dy/dz̄)² = P(y)` by direct quadrature of `dz̄ = dy/√P(y)`.
//!
//! Homoclinic orbits start at a simple root of `P` (the turning point) and run
//! to the nearest double root; the profile is even. Kink orbits start at a
//! regular point between two double roots and increase with `z̄`. The sampled
//! positions are obtained by inverting `z̄(y)` with a bracketed Newton iteration.

use quadrature::double_exponential;

use super::{default_grid, QuadratureODE};
use crate::error::{Error, Result};
use crate::profile::{Profile, ProfileKind};

/// Below this `η = |y − y₀|` the integrand is replaced by its two-term series.
const SERIES_ETA: f64 = 1e-8;
const QUAD_TOL: f64 = 1e-14;

struct Leg<'a> {
    ode: &'a QuadratureODE,
    y0: f64,
    dir: f64,
    target: f64,
    eta_end: f64,
    /// Turning-point start: `P ≈ p1·η·(1 + c·η)` as `η → 0`.
    turning: Option<(f64, f64)>,
}

impl Leg<'_> {
    fn y(&self, eta: f64) -> f64 {
        self.y0 + self.dir * eta
    }

    fn slope(&self, eta: f64) -> f64 {
        self.ode.rhs(self.y(eta)).max(0.0).sqrt()
    }

    /// `∫ₐᵇ dη/√P`, with `0 ≤ a ≤ b < eta_end`.
    fn integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match self.turning {
            Some((p1, c)) => {
                // η = σ² removes the inverse-square-root singularity
                let g = |s: f64| {
                    let eta = s * s;
                    if eta < SERIES_ETA {
                        2.0 / p1.sqrt() * (1.0 - 0.5 * c * eta)
                    } else {
                        2.0 * s / self.ode.rhs(self.y(eta)).sqrt()
                    }
                };
                double_exponential::integrate(g, a.sqrt(), b.sqrt(), QUAD_TOL).integral
            }
            None => {
                let g = |eta: f64| 1.0 / self.ode.rhs(self.y(eta)).sqrt();
                double_exponential::integrate(g, a, b, QUAD_TOL).integral
            }
        }
    }

    /// Solves `z_anchor + ∫_{η_anchor}^{η} = target_z` for `η`.
    fn invert(&self, target_z: f64, eta_anchor: f64, z_anchor: f64) -> (f64, f64) {
        let mut lo = eta_anchor;
        let mut hi = self.eta_end;
        let mut eta = match self.turning {
            Some((p1, _)) if eta_anchor == 0.0 => 0.25 * p1 * target_z * target_z,
            _ => eta_anchor + (target_z - z_anchor) * self.slope(eta_anchor),
        };
        let mut z = z_anchor;
        for _ in 0..200 {
            if !(eta > lo && eta < hi) {
                eta = 0.5 * (lo + hi);
            }
            if self.y(eta) == self.target || hi - lo <= 4.0 * f64::EPSILON * self.eta_end {
                break;
            }
            z = z_anchor + self.integral(eta_anchor, eta);
            let f = z - target_z;
            if f.abs() <= 1e-13 * (1.0 + target_z.abs()) {
                return (eta, z);
            }
            if f < 0.0 {
                lo = eta;
            } else {
                hi = eta;
            }
            let newton = eta - f * self.slope(eta);
            eta = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        (eta, z)
    }

    /// Values at the given non-negative distances from the start.
    fn sample(&self, distances: &[(usize, f64)], out: &mut [f64]) {
        let mut order: Vec<(usize, f64)> = distances.to_vec();
        order.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (mut eta_c, mut z_c, mut last) = (0.0, 0.0, 0.0);
        for (idx, d) in order {
            if d == 0.0 {
                out[idx] = self.y0;
                continue;
            }
            if d != last {
                let (eta, z) = self.invert(d, eta_c, z_c);
                eta_c = eta;
                z_c = z;
                last = d;
            }
            out[idx] = self.y(eta_c);
        }
    }
}

fn next_root(roots: &[f64], from: f64, dir: f64) -> Option<f64> {
    roots
        .iter()
        .copied()
        .filter(|&r| (r - from) * dir > 0.0)
        .min_by(|a, b| ((a - from) * dir).total_cmp(&((b - from) * dir)))
}

fn check_denominator(ode: &QuadratureODE, a: f64, b: f64) -> Result<()> {
    for k in 0..=64 {
        let y = a + (b - a) * k as f64 / 64.0;
        if ode.denominator.eval(y) <= 0.0 {
            return Err(Error::NoRealOrbit(format!("denominator of P vanishes near y = {y}")));
        }
    }
    Ok(())
}

fn leg<'a>(ode: &'a QuadratureODE, y0: f64, dir: f64, turning: Option<(f64, f64)>) -> Result<Leg<'a>> {
    let roots = &ode.numerator.roots;
    let target = next_root(roots, y0, dir).ok_or_else(|| {
        Error::NoRealOrbit(format!("no equilibrium beyond y = {y0}: the orbit escapes"))
    })?;
    if ode.numerator.multiplicity(target) < 2 {
        return Err(Error::NoRealOrbit(format!(
            "orbit from y = {y0} ends at the simple root {target} (periodic, not a soliton)"
        )));
    }
    check_denominator(ode, y0, target)?;
    let mid = 0.5 * (y0 + target);
    if ode.rhs(mid) < 0.0 {
        return Err(Error::NoRealOrbit(format!("P({mid}) < 0 on the orbit")));
    }
    Ok(Leg {
        ode,
        y0,
        dir,
        target,
        eta_end: (target - y0).abs(),
        turning,
    })
}

/// Orbit values at signed offsets `z̄` from the centre, which sits at `y0`.
pub fn solve_at(ode: &QuadratureODE, y0: f64, offsets: &[f64]) -> Result<Vec<f64>> {
    let scale = y0.abs().max(1.0);
    let near_root = ode
        .numerator
        .roots
        .iter()
        .copied()
        .find(|r| (r - y0).abs() <= 1e-12 * scale);

    let mut out = vec![0.0; offsets.len()];
    match near_root {
        Some(r) if ode.numerator.multiplicity(r) >= 2 => Err(Error::KinkOrbit(y0)),
        Some(r) => {
            let d0 = ode.denominator.eval(r);
            let p1 = ode.numerator.deflated_at(r, r, 1) / d0;
            let dir = p1.signum();
            let d_log = ode.denominator.derivative().eval(r) / d0;
            let c = dir * (ode.numerator.log_derivative_deflated(r, r) - d_log);
            let leg = leg(ode, r, dir, Some((p1.abs(), c)))?;
            let distances: Vec<(usize, f64)> =
                offsets.iter().enumerate().map(|(i, z)| (i, z.abs())).collect();
            leg.sample(&distances, &mut out);
            Ok(out)
        }
        None => {
            let p0 = ode.rhs(y0);
            if !(p0 > 0.0) {
                return Err(Error::NoRealOrbit(format!("P({y0}) = {p0} < 0")));
            }
            let up = leg(ode, y0, 1.0, None)?;
            let down = leg(ode, y0, -1.0, None)?;
            let (pos, neg): (Vec<_>, Vec<_>) = offsets
                .iter()
                .enumerate()
                .map(|(i, &z)| (i, z))
                .partition(|&(_, z)| z >= 0.0);
            up.sample(&pos, &mut out);
            let neg: Vec<_> = neg.into_iter().map(|(i, z)| (i, -z)).collect();
            down.sample(&neg, &mut out);
            Ok(out)
        }
    }
}

/// Orbit sampled on an explicit grid of `z̄` positions.
pub fn solve_on(ode: &QuadratureODE, y0: f64, grid: &[f64]) -> Result<Profile> {
    let values = solve_at(ode, y0, grid)?;
    Ok(Profile::real(grid.to_vec(), values, ProfileKind::Orbit))
}

/// Orbit through `y0` on the default symmetric grid of the ODE.
pub fn solve_by_quadrature(ode: &QuadratureODE, y0: f64) -> Result<Profile> {
    solve_on(ode, y0, &default_grid(ode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twode::{ClosedForm, OdeKind};

    fn sup_diff(p: &Profile, f: &ClosedForm) -> f64 {
        p.x.iter()
            .zip(p.as_real().unwrap())
            .map(|(&z, &y)| (y - f.value(z)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn condensate_orbit_matches_slow_sech2() {
        let vbar = 0.6;
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, vbar).unwrap();
        let p = solve_by_quadrature(&ode, vbar * vbar).unwrap();
        let g = ode.gamma;
        let form = ClosedForm::Sech2 { base: 1.0, depth: g * g, rate: g / 2.0 };
        assert!(sup_diff(&p, &form) < 1e-8, "{}", sup_diff(&p, &form));
    }

    #[test]
    fn real_part_kink_matches_tanh() {
        let ode = QuadratureODE::new(OdeKind::GpeRealPart, 0.6).unwrap();
        let p = solve_by_quadrature(&ode, 0.0).unwrap();
        let form = ClosedForm::Tanh { amplitude: 0.8, rate: 0.8 };
        assert!(sup_diff(&p, &form) < 1e-8, "{}", sup_diff(&p, &form));
    }

    #[test]
    fn variation_orbit_picks_slow_argument() {
        let ode = QuadratureODE::new(OdeKind::CondensateVariation, 0.6).unwrap();
        let g2 = ode.gamma * ode.gamma;
        let p = solve_by_quadrature(&ode, -g2).unwrap();
        let slow = ClosedForm::Sech2 { base: 0.0, depth: g2, rate: ode.gamma / 2.0 };
        let fast = ClosedForm::Sech2 { base: 0.0, depth: g2, rate: 2.0 * ode.gamma };
        assert!(sup_diff(&p, &slow) < 1e-8);
        assert!(sup_diff(&p, &fast) > 0.1);
    }

    #[test]
    fn starting_at_background_is_a_kink_error() {
        let ode = QuadratureODE::new(OdeKind::GpeRealPart, 0.6).unwrap();
        assert!(matches!(solve_at(&ode, 0.8, &[0.0, 1.0]), Err(Error::KinkOrbit(_))));
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, 0.6).unwrap();
        assert!(matches!(solve_at(&ode, 1.0, &[0.0]), Err(Error::KinkOrbit(_))));
    }

    #[test]
    fn negative_rhs_has_no_orbit() {
        // below the turning point v̄² the cubic is negative
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, 0.6).unwrap();
        assert!(matches!(solve_at(&ode, 0.1, &[0.0]), Err(Error::NoRealOrbit(_))));
    }

    #[test]
    fn regular_start_inside_homoclinic_orbit_is_rejected() {
        let ode = QuadratureODE::new(OdeKind::HgpeCondensate, 0.6).unwrap();
        assert!(matches!(solve_at(&ode, 0.7, &[0.0]), Err(Error::NoRealOrbit(_))));
    }

    #[test]
    fn exact_traveling_wave_has_half_amplitude() {
        let ode = QuadratureODE::new(OdeKind::HgpeTravelingWave { zeta: 1.0 }, 0.5).unwrap();
        let a = ode.gamma / 2.0;
        let v = solve_at(&ode, a, &[0.0, 0.5, -0.5, 30.0]).unwrap();
        assert_eq!(v[0], a);
        assert_eq!(v[1], v[2]);
        assert!(v[1] < a && v[1] > 0.0);
        assert!(v[3] < 1e-12);
    }
}
