//! Soliton observables extracted from profiles and simulation snapshots.

use nalgebra::{DMatrix, DVector, Matrix4, Vector4};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{hgpe_condensate, DensityShape};
use crate::error::{precondition, Error, Result};
use crate::params::{derive_groups_vbar, PhysicalParams, System};
use crate::pde::{GpeIntegrator, GpeState, Grid1D, HgpeIntegrator, HgpeState};
use crate::profile::{symmetric_grid, Branch, Profile, ProfileKind};
use crate::twode::sech;

/// `sech²(u) = 1/2` at `u = acosh(√2)`.
const HALF_POINT: f64 = 0.881_373_587_019_543;
const MIN_POINTS: usize = 50;
const MAX_ITER: usize = 200;

/// Sign of the fitted sech² term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// `B − A sech²`.
    Dip,
    /// `B + A sech²`.
    Bump,
}

impl Polarity {
    fn sign(self) -> f64 {
        match self {
            Polarity::Dip => -1.0,
            Polarity::Bump => 1.0,
        }
    }
}

/// Parameters of `B ∓ A sech²((x − x₀)/Γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub amplitude: f64,
    pub width: f64,
    pub center: f64,
    pub background: f64,
    pub polarity: Polarity,
    /// Sup-norm of data minus model.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl FitResult {
    pub fn model(&self, x: f64) -> f64 {
        let s = sech((x - self.center) / self.width);
        self.background + self.polarity.sign() * self.amplitude * s * s
    }
}

/// Starting point for [`fit_sech2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitGuess {
    pub amplitude: f64,
    pub width: f64,
    pub center: f64,
    pub background: f64,
    pub polarity: Polarity,
}

/// Guess from moments: extremum location, edge background, half-depth width.
pub fn moment_guess(x: &[f64], y: &[f64]) -> Result<FitGuess> {
    let n = y.len();
    if n < 3 || x.len() != n {
        return Err(Error::NoExtremum(format!("{n} samples")));
    }
    let edge = (n / 20).max(1);
    let background = (y[..edge].iter().sum::<f64>() + y[n - edge..].iter().sum::<f64>()) / (2 * edge) as f64;
    let (imin, &ymin) = y.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let (imax, &ymax) = y.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let (polarity, i0, depth) = if background - ymin >= ymax - background {
        (Polarity::Dip, imin, background - ymin)
    } else {
        (Polarity::Bump, imax, ymax - background)
    };
    if !(depth > 1e-12 * (1.0 + background.abs())) {
        return Err(Error::NoExtremum("profile is flat".into()));
    }
    let level = |i: usize| polarity.sign() * (y[i] - background);
    let half = 0.5 * depth;
    let cross = |step: isize| -> Option<f64> {
        let mut i = i0 as isize;
        while i + step >= 0 && ((i + step) as usize) < n {
            let j = (i + step) as usize;
            if level(j) < half {
                let (a, b) = (level(i as usize), level(j));
                let w = (a - half) / (a - b);
                return Some(x[i as usize] + w * (x[j] - x[i as usize]));
            }
            i += step;
        }
        None
    };
    let hwhm = match (cross(-1), cross(1)) {
        (Some(l), Some(r)) => 0.5 * (r - l),
        (Some(l), None) => x[i0] - l,
        (None, Some(r)) => r - x[i0],
        (None, None) => 0.25 * (x[n - 1] - x[0]),
    };
    Ok(FitGuess {
        amplitude: depth,
        width: hwhm / HALF_POINT,
        center: x[i0],
        background,
        polarity,
    })
}

/// Damped Gauss–Newton fit of a single sech² dip or bump.
pub fn fit_sech2(profile: &Profile, guess: Option<FitGuess>) -> Result<FitResult> {
    let y = profile.real_values();
    fit_sech2_xy(&profile.x, &y, guess)
}

pub fn fit_sech2_xy(x: &[f64], y: &[f64], guess: Option<FitGuess>) -> Result<FitResult> {
    let g = match guess {
        Some(g) => g,
        None => moment_guess(x, y)?,
    };
    let s = g.polarity.sign();
    let mut p = Vector4::new(g.amplitude, g.width, g.center, g.background);
    let inside = x.iter().filter(|&&v| sech((v - p[2]) / p[1]).powi(2) >= 0.01).count();
    if inside < MIN_POINTS {
        return Err(Error::InsufficientResolution(format!(
            "{inside} points across the dip, need ≥ {MIN_POINTS}"
        )));
    }
    let n = x.len();
    let residuals = |p: &Vector4<f64>| -> DVector<f64> {
        DVector::from_iterator(
            n,
            x.iter().zip(y).map(|(&xi, &yi)| {
                let e = sech((xi - p[2]) / p[1]);
                p[3] + s * p[0] * e * e - yi
            }),
        )
    };
    let jacobian = |p: &Vector4<f64>| -> DMatrix<f64> {
        let mut j = DMatrix::zeros(n, 4);
        for (k, &xi) in x.iter().enumerate() {
            let u = (xi - p[2]) / p[1];
            let e = sech(u);
            let e2 = e * e;
            let th = u.tanh();
            j[(k, 0)] = s * e2;
            j[(k, 1)] = s * p[0] * 2.0 * e2 * th * u / p[1];
            j[(k, 2)] = s * p[0] * 2.0 * e2 * th / p[1];
            j[(k, 3)] = 1.0;
        }
        j
    };
    let mut r = residuals(&p);
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let j = jacobian(&p);
        let jt = j.transpose();
        let jtj: Matrix4<f64> = (&jt * &j).fixed_view::<4, 4>(0, 0).into();
        let grad: Vector4<f64> = (&jt * &r).fixed_rows::<4>(0).into();
        let mut accepted = false;
        while lambda < 1e16 {
            let mut a = jtj;
            for d in 0..4 {
                a[(d, d)] += lambda * jtj[(d, d)].max(1e-300);
            }
            let Some(step) = a.lu().solve(&(-grad)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = p + step;
            if !(trial[1] > 0.0 && trial[0] >= 0.0) {
                lambda *= 10.0;
                continue;
            }
            let rt = residuals(&trial);
            let ct = rt.norm_squared();
            if ct <= cost {
                let small = (0..4).all(|k| step[k].abs() <= 1e-12 * (1.0 + p[k].abs()));
                p = trial;
                r = rt;
                cost = ct;
                lambda = (lambda / 10.0).max(1e-12);
                accepted = true;
                converged = small;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            // no descent direction left at working precision
            converged = true;
        }
        if converged {
            break;
        }
    }
    Ok(FitResult {
        amplitude: p[0],
        width: p[1],
        center: p[2],
        background: p[3],
        polarity: g.polarity,
        residual: r.amax(),
        converged,
        iterations,
    })
}

/// Samples of a periodic field within `half_width` of `center`, on unwrapped positions.
pub fn local_profile(grid: &Grid1D, field: &[f64], center: f64, half_width: f64, kind: ProfileKind) -> Profile {
    let mut pts: Vec<(f64, f64)> = (0..grid.n)
        .filter_map(|i| {
            let d = grid.wrap(grid.x(i) - center);
            (d.abs() <= half_width).then_some((center + d, field[i]))
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (x, v) = pts.into_iter().unzip();
    Profile::real(x, v, kind)
}

/// Line fit of soliton centres against time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackResult {
    pub speed: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub times: Vec<f64>,
    pub centers: Vec<f64>,
    pub warning: Option<String>,
}

/// Least-squares speed of the dip through time-ordered `(t, profile)` snapshots.
pub fn track_soliton(snapshots: &[(f64, Profile)]) -> Result<TrackResult> {
    if snapshots.len() < 5 {
        return Err(precondition(format!("{} snapshots, need ≥ 5", snapshots.len())));
    }
    let mut times = Vec::with_capacity(snapshots.len());
    let mut centers = Vec::with_capacity(snapshots.len());
    for (t, p) in snapshots {
        times.push(*t);
        centers.push(fit_sech2(p, None)?.center);
    }
    Ok(line_fit(times, centers))
}

pub(crate) fn line_fit(times: Vec<f64>, centers: Vec<f64>) -> TrackResult {
    let n = times.len() as f64;
    let tm = times.iter().sum::<f64>() / n;
    let cm = centers.iter().sum::<f64>() / n;
    let stt: f64 = times.iter().map(|t| (t - tm).powi(2)).sum();
    let stc: f64 = times.iter().zip(&centers).map(|(t, c)| (t - tm) * (c - cm)).sum();
    let speed = stc / stt;
    let intercept = cm - speed * tm;
    let ss_res: f64 = times
        .iter()
        .zip(&centers)
        .map(|(t, c)| (c - intercept - speed * t).powi(2))
        .sum();
    let ss_tot: f64 = centers.iter().map(|c| (c - cm).powi(2)).sum();
    let r_squared = if ss_res == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    let warning = (r_squared < 0.999).then(|| format!("non-ballistic motion: R² = {r_squared:.6}"));
    TrackResult {
        speed,
        intercept,
        r_squared,
        times,
        centers,
        warning,
    }
}

/// Probe geometry for [`measure_sound_speed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoundProbe {
    /// Gaussian pulse standard deviation.
    pub sigma: f64,
    pub length: f64,
    pub n: usize,
    pub snapshots: usize,
}

impl Default for SoundProbe {
    fn default() -> Self {
        SoundProbe {
            sigma: 20.0,
            length: 400.0,
            n: 800,
            snapshots: 12,
        }
    }
}

/// Result of a sound-speed probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SoundMeasurement {
    pub speed: f64,
    pub right: TrackResult,
    pub left: TrackResult,
    /// Largest front/back half-width mismatch over the tracked pulses.
    pub asymmetry: f64,
}

/// Half-maximum crossings `(left, peak, right)` of the largest positive pulse among `(x, y)`.
fn half_max_crossings(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let (ip, &peak) = y.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    if !(peak > 0.0) || ip == 0 || ip + 1 == y.len() {
        return None;
    }
    let half = 0.5 * peak;
    let find = |step: isize| -> Option<f64> {
        let mut i = ip as isize;
        loop {
            let j = i + step;
            if j < 0 || j as usize >= y.len() {
                return None;
            }
            let (a, b) = (y[i as usize], y[j as usize]);
            if b < half {
                let w = (a - half) / (a - b);
                return Some(x[i as usize] + w * (x[j as usize] - x[i as usize]));
            }
            i = j;
        }
    };
    // parabolic vertex for the peak position
    let (a, b, c) = (y[ip - 1], y[ip], y[ip + 1]);
    let shift = 0.5 * (a - c) / (a - 2.0 * b + c);
    let xp = x[ip] + shift * (x[ip + 1] - x[ip]);
    Some((find(-1)?, xp, find(1)?))
}

/// Speed of a small Gaussian density pulse on the uniform background.
///
/// `eps` is the pulse amplitude relative to the background density.
pub fn measure_sound_speed(system: System, params: &PhysicalParams, eps: f64) -> Result<SoundMeasurement> {
    measure_sound_speed_with(system, params, eps, &SoundProbe::default())
}

pub fn measure_sound_speed_with(
    system: System,
    params: &PhysicalParams,
    eps: f64,
    probe: &SoundProbe,
) -> Result<SoundMeasurement> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(precondition(format!("ε = {eps} must satisfy 0 < ε ≤ 1e-3 of the background")));
    }
    let d = derive_groups_vbar(params, system, 0.0)?;
    let grid = Grid1D::new(probe.length, probe.n)?;
    let rho0 = params.background_density;
    let x = grid.points();
    let pulse: Vec<f64> = x
        .iter()
        .map(|x| rho0 * (1.0 + eps * (-0.5 * (x / probe.sigma).powi(2)).exp()))
        .collect();
    // track once the two halves have separated, stop before they wrap
    let c = d.c_sound;
    let t0 = 3.0 * probe.sigma / c;
    let t1 = (0.5 * probe.length - 3.0 * probe.sigma) / c;
    if !(t1 > t0) {
        return Err(precondition("probe box too short for the pulse width"));
    }
    let k = probe.snapshots.max(5);
    let times: Vec<f64> = (0..k).map(|i| t0 + (t1 - t0) * i as f64 / (k - 1) as f64).collect();

    let mut fields: Vec<(f64, Vec<f64>)> = Vec::with_capacity(k);
    match system {
        System::Hgpe => {
            let s = HgpeState::from_fields(grid, *params, pulse, vec![0.0; grid.n])?;
            let dt = s.max_stable_dt();
            let mut it = HgpeIntegrator::new(s, dt)?;
            for &t in &times {
                let target = (t / dt).round() as usize;
                it.advance(target - it.steps())?;
                fields.push((it.state().time, it.state().rho.clone()));
            }
        }
        System::Gpe => {
            let psi = pulse.iter().map(|r| num_complex::Complex64::new(r.sqrt(), 0.0)).collect();
            let s = GpeState::from_field(grid, *params, psi)?;
            let dt = (0.5 * s.max_stable_dt()).min(0.05);
            let mut it = GpeIntegrator::new(s, dt)?;
            for &t in &times {
                let target = (t / dt).round() as usize;
                it.advance(target - it.steps())?;
                fields.push((it.state().time, it.state().density()));
            }
        }
    }

    let mut asymmetry: f64 = 0.0;
    let (mut rt, mut rc, mut lt, mut lc) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (t, f) in &fields {
        let dev: Vec<f64> = f.iter().map(|r| r - rho0).collect();
        let half = grid.n / 2;
        for (xs, ys, times, centres, forward) in [
            (&x[half..], &dev[half..], &mut rt, &mut rc, 1.0),
            (&x[..half], &dev[..half], &mut lt, &mut lc, -1.0),
        ] {
            let (l, p, r) = half_max_crossings(xs, ys)
                .ok_or_else(|| Error::NoExtremum("sound pulse lost".into()))?;
            let (front, back) = if forward > 0.0 { (r - p, p - l) } else { (p - l, r - p) };
            asymmetry = asymmetry.max((front - back).abs() / (front + back));
            times.push(*t);
            centres.push(0.5 * (l + r));
        }
    }
    if asymmetry > 0.05 {
        return Err(Error::EpsTooLarge(asymmetry));
    }
    let right = line_fit(rt, rc);
    let left = line_fit(lt, lc);
    Ok(SoundMeasurement {
        speed: 0.5 * (right.speed - left.speed),
        right,
        left,
        asymmetry,
    })
}

/// One row of the dark-soliton contrast table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub vbar: f64,
    pub gamma: f64,
    pub depth_analytic: f64,
    pub depth_fit: f64,
    pub width_analytic: f64,
    pub width_fit: f64,
}

/// Where the fitted columns of a sweep come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "source")]
pub enum SweepSource {
    /// Fit of the sampled closed-form condensate dip.
    Analytic,
    /// Fit of the condensate dip of a dark soliton evolved for `duration`.
    Pde { duration: f64, length: f64, n: usize },
}

impl SweepSource {
    pub fn pde_default() -> Self {
        SweepSource::Pde { duration: 5.0, length: 40.0, n: 640 }
    }
}

/// Condensate dip depth and width of the half-filled dark soliton against `v̄`.
pub fn contrast_sweep(vbars: &[f64], params: &PhysicalParams, source: SweepSource) -> Result<Vec<SweepRow>> {
    vbars.par_iter().map(|&v| sweep_point(v, params, source)).collect()
}

fn sweep_point(vbar: f64, params: &PhysicalParams, source: SweepSource) -> Result<SweepRow> {
    let d = derive_groups_vbar(params, System::Hgpe, vbar)?;
    let zeta = d.zeta.ok_or_else(|| precondition("ζ undefined for Λ² ≥ 1/2"))?;
    let width = d.width_hgpe.unwrap_or(f64::INFINITY);
    let depth = d.gamma * d.gamma * d.rho_s0;
    let fit = match source {
        SweepSource::Analytic => {
            let x = symmetric_grid(30.0 * width, 4001);
            let y = x
                .iter()
                .map(|&z| hgpe_condensate(z, vbar, zeta))
                .collect::<Result<Vec<_>>>()?;
            fit_sech2_xy(&x, &y, None)?
        }
        SweepSource::Pde { duration, length, n } => {
            let grid = Grid1D::new(length, n)?;
            let s = HgpeState::soliton_pair(grid, *params, vbar, Branch::Dark, DensityShape::Exact)?;
            let dt = s.max_stable_dt();
            let mut it = HgpeIntegrator::new(s, dt)?;
            it.advance((duration / dt).round() as usize)?;
            let st = it.state();
            let centre = HgpeState::pair_centres(&grid)[0] + d.speed * st.time;
            let p = local_profile(&grid, &st.condensate_density(), centre, 0.25 * length, ProfileKind::HgpeCondensate);
            fit_sech2(&p, None)?
        }
    };
    Ok(SweepRow {
        vbar,
        gamma: d.gamma,
        depth_analytic: depth,
        depth_fit: fit.amplitude,
        width_analytic: width,
        width_fit: fit.width,
    })
}
