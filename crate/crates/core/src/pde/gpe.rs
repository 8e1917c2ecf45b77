use num_complex::Complex64;

use super::{relative_drift, Drift, Grid1D, Observables, Spectral};
use crate::error::{precondition, Error, Result};
use crate::params::{derive_groups_vbar, PhysicalParams, System};
use crate::twode::sech;

/// Condensate wave function on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GpeState {
    pub grid: Grid1D,
    pub psi: Vec<Complex64>,
    pub time: f64,
    pub params: PhysicalParams,
}

impl GpeState {
    pub fn uniform(grid: Grid1D, params: PhysicalParams) -> Result<Self> {
        params.validate(System::Gpe)?;
        let a = params.background_density.sqrt();
        Ok(GpeState {
            grid,
            psi: vec![Complex64::new(a, 0.0); grid.n],
            time: 0.0,
            params,
        })
    }

    pub fn from_field(grid: Grid1D, params: PhysicalParams, psi: Vec<Complex64>) -> Result<Self> {
        params.validate(System::Gpe)?;
        if psi.len() != grid.n {
            return Err(precondition(format!("field has {} points, grid has {}", psi.len(), grid.n)));
        }
        Ok(GpeState { grid, psi, time: 0.0, params })
    }

    /// Dark soliton at `−L/4` moving in `+x` and its conjugate partner at
    /// `+L/4` moving in `−x`, which makes the phase periodic.
    pub fn soliton_pair(grid: Grid1D, params: PhysicalParams, vbar: f64) -> Result<Self> {
        let d = derive_groups_vbar(&params, System::Gpe, vbar)?;
        grid.check_resolves(d.xi, "ξ")?;
        let (x1, x2) = (-0.25 * grid.length, 0.25 * grid.length);
        let k = d.gamma * d.lambda;
        let a = params.background_density.sqrt();
        let psi = grid
            .points()
            .into_iter()
            .map(|x| {
                // unwrapped distances: each tanh must keep its sign across the partner
                let s1 = Complex64::new(d.gamma * (k * (x - x1)).tanh(), vbar);
                let s2 = Complex64::new(d.gamma * (k * (x - x2)).tanh(), -vbar);
                a * s1 * s2
            })
            .collect();
        Ok(GpeState { grid, psi, time: 0.0, params })
    }

    /// Centres of the pair built by [`GpeState::soliton_pair`] at `t = 0`.
    pub fn pair_centres(grid: &Grid1D) -> [f64; 2] {
        [-0.25 * grid.length, 0.25 * grid.length]
    }

    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn chemical_potential(&self) -> f64 {
        self.params.onsite_repulsion * self.params.background_density
    }

    /// Largest `dt` for which the highest Fourier mode turns by less than `π` per step.
    pub fn max_stable_dt(&self) -> f64 {
        let dx = self.grid.dx();
        2.0 * dx * dx / (std::f64::consts::PI * self.params.hopping)
    }

    pub fn observables(&self) -> Observables {
        let dx = self.grid.dx();
        let mut sp = Spectral::new(self.grid.n);
        let mut d = self.psi.clone();
        sp.forward(&mut d);
        for (c, k) in d.iter_mut().zip(self.grid.wavenumbers()) {
            *c *= Complex64::new(0.0, k);
        }
        sp.inverse(&mut d);
        let (u, mu, t) = (self.params.onsite_repulsion, self.chemical_potential(), self.params.hopping);
        let mut n_tot = 0.0;
        let mut energy = 0.0;
        let mut momentum = 0.0;
        for (p, dp) in self.psi.iter().zip(&d) {
            let r = p.norm_sqr();
            n_tot += r;
            energy += 0.5 * t * dp.norm_sqr() + 0.5 * u * r * r - mu * r;
            momentum += (p.conj() * dp).im;
        }
        Observables {
            n_tot: n_tot * dx,
            energy: energy * dx,
            momentum: momentum * dx,
            rho_s: self.density(),
            rho_d: vec![0.0; self.grid.n],
        }
    }

    /// Analytic single-soliton density `ρ_g⁰(1 − γ² sech²(γΛ(x − x0)))` on this grid.
    pub fn analytic_density(&self, vbar: f64, x0: f64) -> Result<Vec<f64>> {
        let d = derive_groups_vbar(&self.params, System::Gpe, vbar)?;
        let k = d.gamma * d.lambda;
        let rho0 = self.params.background_density;
        Ok(self
            .grid
            .points()
            .into_iter()
            .map(|x| {
                let s = sech(k * self.grid.wrap(x - x0));
                rho0 * (1.0 - d.gamma * d.gamma * s * s)
            })
            .collect())
    }
}

/// Strang-split Fourier stepper `N(dt/2) L(dt) N(dt/2)`.
pub struct GpeIntegrator {
    state: GpeState,
    dt: f64,
    spectral: Spectral,
    kinetic: Vec<Complex64>,
    steps: usize,
    start: (f64, f64),
}

impl GpeIntegrator {
    pub fn new(state: GpeState, dt: f64) -> Result<Self> {
        let bound = state.max_stable_dt();
        if !(dt > 0.0 && dt <= bound) {
            return Err(Error::NumericalAbort {
                step: 0,
                message: format!("stability bound violated: dt = {dt} exceeds 2dx²/(πt) = {bound:.6e}"),
            });
        }
        let t = state.params.hopping;
        let kinetic = state
            .grid
            .wavenumbers()
            .into_iter()
            .map(|k| Complex64::from_polar(1.0, -0.5 * t * k * k * dt))
            .collect();
        let obs = state.observables();
        Ok(GpeIntegrator {
            spectral: Spectral::new(state.grid.n),
            state,
            dt,
            kinetic,
            steps: 0,
            start: (obs.n_tot, obs.energy),
        })
    }

    pub fn state(&self) -> &GpeState {
        &self.state
    }

    pub fn into_state(self) -> GpeState {
        self.state
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn nonlinear(&mut self, h: f64) {
        let u = self.state.params.onsite_repulsion;
        let mu = self.state.chemical_potential();
        for c in self.state.psi.iter_mut() {
            *c *= Complex64::from_polar(1.0, -(u * c.norm_sqr() - mu) * h);
        }
    }

    pub fn advance(&mut self, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.nonlinear(0.5 * self.dt);
            self.spectral.forward(&mut self.state.psi);
            for (c, k) in self.state.psi.iter_mut().zip(&self.kinetic) {
                *c *= k;
            }
            self.spectral.inverse(&mut self.state.psi);
            self.nonlinear(0.5 * self.dt);
            self.steps += 1;
            self.state.time = self.steps as f64 * self.dt;
            if self.steps % 64 == 0 {
                self.check_finite()?;
            }
        }
        self.check_finite()
    }

    fn check_finite(&self) -> Result<()> {
        if let Some(i) = self.state.psi.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NumericalAbort {
                step: self.steps,
                message: format!("non-finite field at x = {}", self.state.grid.x(i)),
            });
        }
        Ok(())
    }

    pub fn drift(&self) -> Drift {
        let obs = self.state.observables();
        Drift {
            particle_number: relative_drift(obs.n_tot, self.start.0),
            energy: relative_drift(obs.energy, self.start.1),
        }
    }
}

/// Advances `s` by `steps` steps of size `dt`.
pub fn evolve_gpe(s: GpeState, dt: f64, steps: usize) -> Result<GpeState> {
    let mut it = GpeIntegrator::new(s, dt)?;
    it.advance(steps)?;
    Ok(it.into_state())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matched() -> PhysicalParams {
        PhysicalParams {
            hopping: 1.0,
            nn_attraction: 1.0 / 3.0,
            onsite_repulsion: 4.0 / 3.0,
            background_density: 0.25,
        }
    }

    #[test]
    fn uniform_state_is_stationary() {
        let g = Grid1D::new(100.0, 256).unwrap();
        let s = GpeState::uniform(g, matched()).unwrap();
        let out = evolve_gpe(s.clone(), 0.01, 1000).unwrap();
        for (a, b) in out.psi.iter().zip(&s.psi) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((out.observables().n_tot - 25.0).abs() < 1e-12);
    }

    #[test]
    fn large_step_is_rejected() {
        let g = Grid1D::new(100.0, 256).unwrap();
        let s = GpeState::uniform(g, matched()).unwrap();
        assert!(matches!(GpeIntegrator::new(s, 1.0), Err(Error::NumericalAbort { step: 0, .. })));
    }

    #[test]
    fn pair_is_periodic_and_normalized_far_away() {
        let g = Grid1D::new(200.0, 2048).unwrap();
        let s = GpeState::soliton_pair(g, matched(), 0.5).unwrap();
        assert!((s.psi[0] - s.psi[g.n - 1]).norm() < 1e-3);
        assert!((s.psi[0].norm_sqr() - 0.25).abs() < 1e-14);
        let rho = s.density();
        let i1 = g.n / 4;
        assert!((rho[i1] - 0.25 * 0.25).abs() < 1e-12);
    }
}
