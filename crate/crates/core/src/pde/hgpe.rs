use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::stencil::{d1, d1_half, d2, div, mid, pad};
use super::{periodic_antiderivative, relative_drift, Drift, Grid1D, Observables};
use crate::analytic::{hgpe_density_on, phase_slope, DensityShape};
use crate::error::{precondition, Error, Result};
use crate::params::{derive_groups_vbar, PhysicalParams, System};
use crate::profile::Branch;

/// Default distance the density must keep from 0 and 1 in hydrodynamic runs.
pub const EPS_RHO: f64 = 1e-9;

/// Evolution variables of the hard-core integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HgpeScheme {
    /// Density and phase `(ρ, φ)` with a conservative flux for `ρ`.
    Hydrodynamic,
    /// Density and condensate wave function `(ρ, Ψ_s)`; smooth through density nodes.
    SpinImage,
}

impl std::fmt::Display for HgpeScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HgpeScheme::Hydrodynamic => "hydrodynamic-rk4-fd4",
            HgpeScheme::SpinImage => "spin-image-rk4-fd4",
        })
    }
}

/// Hard-core density and phase on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HgpeState {
    pub grid: Grid1D,
    pub rho: Vec<f64>,
    pub phi: Vec<f64>,
    pub time: f64,
    pub params: PhysicalParams,
    pub scheme: HgpeScheme,
    /// Condensate wave function, carried by the spin-image scheme.
    pub condensate: Option<Vec<Complex64>>,
}

impl HgpeState {
    pub fn uniform(grid: Grid1D, params: PhysicalParams) -> Result<Self> {
        params.validate(System::Hgpe)?;
        Self::from_fields(grid, params, vec![params.background_density; grid.n], vec![0.0; grid.n])
    }

    pub fn from_fields(grid: Grid1D, params: PhysicalParams, rho: Vec<f64>, phi: Vec<f64>) -> Result<Self> {
        params.validate(System::Hgpe)?;
        if rho.len() != grid.n || phi.len() != grid.n {
            return Err(precondition(format!("fields must have {} points", grid.n)));
        }
        Ok(HgpeState {
            grid,
            rho,
            phi,
            time: 0.0,
            params,
            scheme: HgpeScheme::Hydrodynamic,
            condensate: None,
        })
    }

    /// Switches to the spin-image scheme, building `Ψ_s = √ρ_s e^{iφ}`.
    pub fn with_spin_image(mut self) -> Self {
        self.condensate = Some(
            self.rho
                .iter()
                .zip(&self.phi)
                .map(|(&r, &p)| Complex64::from_polar((r * (1.0 - r)).max(0.0).sqrt(), p))
                .collect(),
        );
        self.scheme = HgpeScheme::SpinImage;
        self
    }

    /// Soliton of branch `first` at `−L/4` and its mirror partner at `+L/4`,
    /// both traveling in `+x` at `v̄ c_s`. The partner's opposite phase step
    /// makes the phase periodic. Black pairs (`v̄ = 0`) use the spin-image scheme.
    pub fn soliton_pair(
        grid: Grid1D,
        params: PhysicalParams,
        vbar: f64,
        first: Branch,
        shape: DensityShape,
    ) -> Result<Self> {
        let d = derive_groups_vbar(&params, System::Hgpe, vbar)?;
        let width = d.width_hgpe.ok_or_else(|| precondition("Γ_s undefined for Λ² ≥ 1/2"))?;
        grid.check_resolves(width, "Γ_s")?;
        let [x1, x2] = Self::pair_centres(&grid);
        let x = grid.points();
        let z1: Vec<f64> = x.iter().map(|&x| grid.wrap(x - x1)).collect();
        let z2: Vec<f64> = x.iter().map(|&x| grid.wrap(x - x2)).collect();
        let r1 = hgpe_density_on(&z1, &params, vbar, first, shape)?;
        let r2 = hgpe_density_on(&z2, &params, vbar, first.mirror(), shape)?;
        let rho: Vec<f64> = r1.iter().zip(&r2).map(|(a, b)| a + b - 0.5).collect();
        if vbar == 0.0 {
            let psi = rho
                .iter()
                .zip(&x)
                .map(|(&r, &x)| {
                    let s = (x - x1).signum() * (x - x2).signum();
                    Complex64::new(s * (r * (1.0 - r)).max(0.0).sqrt(), 0.0)
                })
                .collect();
            let phi = x
                .iter()
                .map(|&x| if x > x1 && x < x2 { std::f64::consts::PI } else { 0.0 })
                .collect();
            let mut s = Self::from_fields(grid, params, rho, phi)?;
            s.scheme = HgpeScheme::SpinImage;
            s.condensate = Some(psi);
            return Ok(s);
        }
        let u: Vec<f64> = rho.iter().map(|&r| phase_slope(r, d.speed, params.hopping)).collect();
        let phi = periodic_antiderivative(&grid, &u);
        Self::from_fields(grid, params, rho, phi)
    }

    /// Centres of the pair built by [`HgpeState::soliton_pair`] at `t = 0`.
    pub fn pair_centres(grid: &Grid1D) -> [f64; 2] {
        [-0.25 * grid.length, 0.25 * grid.length]
    }

    /// Particle-hole image `ρ → 1 − ρ`, `φ → −φ`.
    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        m.rho.iter_mut().for_each(|r| *r = 1.0 - *r);
        m.phi.iter_mut().for_each(|p| *p = -*p);
        if let Some(psi) = m.condensate.as_mut() {
            psi.iter_mut().for_each(|c| *c = c.conj());
        }
        m
    }

    pub fn condensate_density(&self) -> Vec<f64> {
        self.rho.iter().map(|r| r * (1.0 - r)).collect()
    }

    pub fn chemical_potential(&self) -> f64 {
        2.0 * self.params.anisotropy() * self.params.background_density
    }

    /// RK4 bound `dt ≤ 0.2 dx²/t` for the dispersive term.
    pub fn max_stable_dt(&self) -> f64 {
        let dx = self.grid.dx();
        0.2 * dx * dx / self.params.hopping
    }

    /// Current `∫ ρ_s ∂ₓφ` in place of the phase gradient when the spin image is carried.
    fn currents(&self) -> Vec<f64> {
        let inv_dx = 1.0 / self.grid.dx();
        match &self.condensate {
            Some(psi) => {
                let re: Vec<f64> = psi.iter().map(|c| c.re).collect();
                let im: Vec<f64> = psi.iter().map(|c| c.im).collect();
                let (mut pr, mut pi) = (Vec::new(), Vec::new());
                pad(&re, &mut pr);
                pad(&im, &mut pi);
                (0..self.grid.n)
                    .map(|i| re[i] * d1(&pi, i, inv_dx) - im[i] * d1(&pr, i, inv_dx))
                    .collect()
            }
            None => {
                let mut pp = Vec::new();
                pad(&self.phi, &mut pp);
                (0..self.grid.n)
                    .map(|i| self.rho[i] * (1.0 - self.rho[i]) * d1(&pp, i, inv_dx))
                    .collect()
            }
        }
    }

    pub fn observables(&self) -> Observables {
        let dx = self.grid.dx();
        let inv_dx = 1.0 / dx;
        let p = &self.params;
        let (t, v, g, mu) = (p.hopping, p.nn_attraction, p.anisotropy(), self.chemical_potential());
        let rho_s = self.condensate_density();
        let r: Vec<f64> = rho_s.iter().map(|s| s.max(0.0).sqrt()).collect();
        let (mut pr, mut prho) = (Vec::new(), Vec::new());
        pad(&r, &mut pr);
        pad(&self.rho, &mut prho);
        let j = self.currents();
        let mut energy = 0.0;
        for i in 0..self.grid.n {
            let kinetic = if rho_s[i] > 0.0 { j[i] * j[i] / rho_s[i] } else { 0.0 };
            let rx = d1(&pr, i, inv_dx);
            let rhox = d1(&prho, i, inv_dx);
            let rho = self.rho[i];
            energy += 0.5 * t * (kinetic + rx * rx) + 0.5 * v * rhox * rhox + g * rho * rho - mu * rho;
        }
        Observables {
            n_tot: self.rho.iter().sum::<f64>() * dx,
            energy: energy * dx,
            momentum: j.iter().sum::<f64>() * dx,
            rho_d: self.rho.iter().zip(&rho_s).map(|(r, s)| r - s).collect(),
            rho_s,
        }
    }
}

struct Work {
    pr: Vec<f64>,
    pa: Vec<f64>,
    pb: Vec<f64>,
    pc: Vec<f64>,
    flux: Vec<f64>,
    pf: Vec<f64>,
}

/// Method-of-lines RK4 stepper for the hard-core equation.
pub struct HgpeIntegrator {
    state: HgpeState,
    dt: f64,
    eps_rho: f64,
    y: Vec<f64>,
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
    work: Work,
    steps: usize,
    start: (f64, f64),
}

impl HgpeIntegrator {
    pub fn new(state: HgpeState, dt: f64) -> Result<Self> {
        Self::with_eps(state, dt, EPS_RHO)
    }

    pub fn with_eps(state: HgpeState, dt: f64, eps_rho: f64) -> Result<Self> {
        let bound = state.max_stable_dt();
        if !(dt > 0.0 && dt <= bound * (1.0 + 1e-12)) {
            return Err(Error::NumericalAbort {
                step: 0,
                message: format!("CFL violated: dt = {dt} exceeds 0.2 dx²/t = {bound:.6e}"),
            });
        }
        let obs = state.observables();
        let y = pack(&state);
        let len = y.len();
        let it = HgpeIntegrator {
            dt,
            eps_rho,
            k: [vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]],
            tmp: vec![0.0; len],
            y,
            work: Work {
                pr: Vec::new(),
                pa: Vec::new(),
                pb: Vec::new(),
                pc: Vec::new(),
                flux: vec![0.0; state.grid.n],
                pf: Vec::new(),
            },
            steps: 0,
            start: (obs.n_tot, obs.energy),
            state,
        };
        it.check_bounds()?;
        Ok(it)
    }

    pub fn state(&self) -> &HgpeState {
        &self.state
    }

    pub fn into_state(self) -> HgpeState {
        self.state
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn drift(&self) -> Drift {
        let obs = self.state.observables();
        Drift {
            particle_number: relative_drift(obs.n_tot, self.start.0),
            energy: relative_drift(obs.energy, self.start.1),
        }
    }

    pub fn advance(&mut self, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.rk4();
            self.steps += 1;
            unpack(&self.y, &mut self.state);
            self.state.time = self.steps as f64 * self.dt;
            self.check_bounds()?;
        }
        Ok(())
    }

    fn rk4(&mut self) {
        let dt = self.dt;
        let n = self.state.grid.n;
        let ctx = Ctx::new(&self.state);
        let scheme = self.state.scheme;
        let [k1, k2, k3, k4] = &mut self.k;
        rhs(scheme, &ctx, n, &self.y, k1, &mut self.work);
        for ((t, y), k) in self.tmp.iter_mut().zip(&self.y).zip(k1.iter()) {
            *t = y + 0.5 * dt * k;
        }
        rhs(scheme, &ctx, n, &self.tmp, k2, &mut self.work);
        for ((t, y), k) in self.tmp.iter_mut().zip(&self.y).zip(k2.iter()) {
            *t = y + 0.5 * dt * k;
        }
        rhs(scheme, &ctx, n, &self.tmp, k3, &mut self.work);
        for ((t, y), k) in self.tmp.iter_mut().zip(&self.y).zip(k3.iter()) {
            *t = y + dt * k;
        }
        rhs(scheme, &ctx, n, &self.tmp, k4, &mut self.work);
        for (i, y) in self.y.iter_mut().enumerate() {
            *y += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    fn check_bounds(&self) -> Result<()> {
        let (lo, hi) = match self.state.scheme {
            HgpeScheme::Hydrodynamic => (self.eps_rho, 1.0 - self.eps_rho),
            HgpeScheme::SpinImage => (-self.eps_rho, 1.0 + self.eps_rho),
        };
        for (i, &v) in self.y.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NumericalAbort {
                    step: self.steps,
                    message: format!("non-finite value in component {i}"),
                });
            }
        }
        if let Some(i) = self.state.rho.iter().position(|&r| !(r >= lo && r <= hi)) {
            return Err(Error::NumericalAbort {
                step: self.steps,
                message: format!(
                    "vacuum/saturation reached: ρ = {} at x = {}",
                    self.state.rho[i],
                    self.state.grid.x(i)
                ),
            });
        }
        Ok(())
    }
}

struct Ctx {
    t: f64,
    v: f64,
    g: f64,
    mu: f64,
    inv_dx: f64,
    inv_dx2: f64,
}

impl Ctx {
    fn new(s: &HgpeState) -> Self {
        let dx = s.grid.dx();
        Ctx {
            t: s.params.hopping,
            v: s.params.nn_attraction,
            g: s.params.anisotropy(),
            mu: s.chemical_potential(),
            inv_dx: 1.0 / dx,
            inv_dx2: 1.0 / (dx * dx),
        }
    }
}

fn pack(s: &HgpeState) -> Vec<f64> {
    let mut y = s.rho.clone();
    match (&s.scheme, &s.condensate) {
        (HgpeScheme::SpinImage, Some(psi)) => {
            y.extend(psi.iter().map(|c| c.re));
            y.extend(psi.iter().map(|c| c.im));
        }
        _ => y.extend_from_slice(&s.phi),
    }
    y
}

fn unpack(y: &[f64], s: &mut HgpeState) {
    let n = s.grid.n;
    s.rho.copy_from_slice(&y[..n]);
    match s.scheme {
        HgpeScheme::Hydrodynamic => s.phi.copy_from_slice(&y[n..2 * n]),
        HgpeScheme::SpinImage => {
            let psi = s.condensate.get_or_insert_with(|| vec![Complex64::new(0.0, 0.0); n]);
            for i in 0..n {
                psi[i] = Complex64::new(y[n + i], y[2 * n + i]);
                s.phi[i] = psi[i].arg();
            }
        }
    }
}

fn rhs(scheme: HgpeScheme, c: &Ctx, n: usize, y: &[f64], dy: &mut [f64], w: &mut Work) {
    match scheme {
        HgpeScheme::Hydrodynamic => rhs_hydro(c, n, y, dy, w),
        HgpeScheme::SpinImage => rhs_spin(c, n, y, dy, w),
    }
}

/// `∂ₜρ = −t ∂ₓ(ρ_s ∂ₓφ)`,
/// `∂ₜφ = (t/2)(1 − 2ρ)(∂ₓₓR/R − (∂ₓφ)²) + V ∂ₓₓρ − (2gρ − μ)`, `R² = ρ(1 − ρ)`.
fn rhs_hydro(c: &Ctx, n: usize, y: &[f64], dy: &mut [f64], w: &mut Work) {
    let (rho, phi) = y.split_at(n);
    let (drho, dphi) = dy.split_at_mut(n);
    pad(rho, &mut w.pr);
    pad(phi, &mut w.pa);
    w.pb.clear();
    w.pb.extend(w.pr.iter().map(|r| r * (1.0 - r)));
    w.pc.clear();
    w.pc.extend(w.pb.iter().map(|s| s.sqrt()));
    for i in 0..n {
        w.flux[i] = mid(&w.pb, i) * d1_half(&w.pa, i, c.inv_dx);
    }
    pad(&w.flux, &mut w.pf);
    for i in 0..n {
        drho[i] = -c.t * div(&w.pf, i, c.inv_dx);
        let r = rho[i];
        let ux = d1(&w.pa, i, c.inv_dx);
        let quantum = d2(&w.pc, i, c.inv_dx2) / w.pc[i + super::stencil::G];
        dphi[i] = 0.5 * c.t * (1.0 - 2.0 * r) * (quantum - ux * ux) + c.v * d2(&w.pr, i, c.inv_dx2)
            - (2.0 * c.g * r - c.mu);
    }
}

/// `∂ₜρ = −t ∂ₓ Im(Ψ̄ ∂ₓΨ)`,
/// `i∂ₜΨ = −(t/2)(1 − 2ρ)∂ₓₓΨ − VΨ∂ₓₓρ + (2gρ − μ)Ψ`.
fn rhs_spin(c: &Ctx, n: usize, y: &[f64], dy: &mut [f64], w: &mut Work) {
    let rho = &y[..n];
    let re = &y[n..2 * n];
    let im = &y[2 * n..];
    pad(rho, &mut w.pr);
    pad(re, &mut w.pa);
    pad(im, &mut w.pb);
    for i in 0..n {
        let (a, b) = (mid(&w.pa, i), mid(&w.pb, i));
        let (ax, bx) = (d1_half(&w.pa, i, c.inv_dx), d1_half(&w.pb, i, c.inv_dx));
        w.flux[i] = a * bx - b * ax;
    }
    pad(&w.flux, &mut w.pf);
    let (drho, rest) = dy.split_at_mut(n);
    let (dre, dim) = rest.split_at_mut(n);
    for i in 0..n {
        drho[i] = -c.t * div(&w.pf, i, c.inv_dx);
        let r = rho[i];
        let rxx = d2(&w.pr, i, c.inv_dx2);
        let lap = 0.5 * c.t * (1.0 - 2.0 * r);
        let pot = 2.0 * c.g * r - c.mu - c.v * rxx;
        let hr = -lap * d2(&w.pa, i, c.inv_dx2) + pot * re[i];
        let hi = -lap * d2(&w.pb, i, c.inv_dx2) + pot * im[i];
        dre[i] = hi;
        dim[i] = -hr;
    }
}

/// Advances `s` by `steps` RK4 steps of size `dt`.
pub fn evolve_hgpe(s: HgpeState, dt: f64, steps: usize) -> Result<HgpeState> {
    let mut it = HgpeIntegrator::new(s, dt)?;
    it.advance(steps)?;
    Ok(it.into_state())
}
