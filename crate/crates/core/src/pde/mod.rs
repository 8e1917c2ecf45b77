//! Time-domain integrators on a periodic one-dimensional grid.
//!
//! The condensate equation is advanced by Strang-split Fourier steps. The
//! hard-core equation is advanced by the method of lines with classical RK4
//! and fourth-order stencils, either in hydrodynamic form `(ρ, φ)` or, when the
//! density touches zero, in the spin-image form `(ρ, Ψ_s)`.

mod gpe;
mod hgpe;
mod stencil;

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

pub use gpe::{evolve_gpe, GpeIntegrator, GpeState};
pub use hgpe::{evolve_hgpe, HgpeIntegrator, HgpeScheme, HgpeState, EPS_RHO};

use crate::error::{precondition, Error, Result};

/// Uniform periodic grid `x_i = −L/2 + i·dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub length: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(length: f64, n: usize) -> Result<Self> {
        if n < 256 || n % 2 != 0 {
            return Err(precondition(format!("grid.n = {n} must be even and ≥ 256")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(precondition(format!("grid.length = {length} must be > 0")));
        }
        Ok(Grid1D { length, n })
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = 2.0 * std::f64::consts::PI / self.length;
        (0..self.n)
            .map(|i| {
                let j = if i < self.n / 2 { i as i64 } else { i as i64 - self.n as i64 };
                dk * j as f64
            })
            .collect()
    }

    /// Signed distance `x − x0` folded into `[−L/2, L/2)`.
    pub fn wrap(&self, d: f64) -> f64 {
        d - self.length * (d / self.length + 0.5).floor()
    }

    /// Requires `dx ≤ width/8`.
    pub fn check_resolves(&self, width: f64, what: &str) -> Result<()> {
        if self.dx() > width / 8.0 * (1.0 + 1e-12) {
            return Err(Error::InsufficientResolution(format!(
                "dx = {} exceeds {what}/8 = {}",
                self.dx(),
                width / 8.0
            )));
        }
        Ok(())
    }
}

/// Conserved and derived quantities of a state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observables {
    pub n_tot: f64,
    pub energy: f64,
    pub momentum: f64,
    /// Condensate density field.
    pub rho_s: Vec<f64>,
    /// Depletion `ρ − ρ_s` (zero for the weakly interacting gas).
    pub rho_d: Vec<f64>,
}

/// Relative drift of the conserved quantities since the start of a run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Drift {
    pub particle_number: f64,
    pub energy: f64,
}

pub(crate) struct Spectral {
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    n: usize,
}

impl Spectral {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let len = fwd.get_inplace_scratch_len().max(inv.get_inplace_scratch_len());
        Spectral {
            fwd,
            inv,
            scratch: vec![Complex64::new(0.0, 0.0); len],
            n,
        }
    }

    pub(crate) fn forward(&mut self, buf: &mut [Complex64]) {
        self.fwd.process_with_scratch(buf, &mut self.scratch);
    }

    /// Normalized inverse transform.
    pub(crate) fn inverse(&mut self, buf: &mut [Complex64]) {
        self.inv.process_with_scratch(buf, &mut self.scratch);
        let s = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|c| *c *= s);
    }
}

/// Zero-mean periodic antiderivative of `u − mean(u)`.
pub fn periodic_antiderivative(grid: &Grid1D, u: &[f64]) -> Vec<f64> {
    let mut sp = Spectral::new(grid.n);
    let mut buf: Vec<Complex64> = u.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    sp.forward(&mut buf);
    for (c, k) in buf.iter_mut().zip(grid.wavenumbers()) {
        *c = if k == 0.0 || c.re.is_nan() { Complex64::new(0.0, 0.0) } else { *c / Complex64::new(0.0, k) };
    }
    // the Nyquist mode has no odd antiderivative on the grid
    buf[grid.n / 2] = Complex64::new(0.0, 0.0);
    sp.inverse(&mut buf);
    buf.into_iter().map(|c| c.re).collect()
}

pub(crate) fn relative_drift(now: f64, start: f64) -> f64 {
    if start == 0.0 {
        now.abs()
    } else {
        ((now - start) / start).abs()
    }
}
