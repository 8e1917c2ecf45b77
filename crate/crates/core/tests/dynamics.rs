use solitonlab::analytic::{hgpe_condensate, DensityShape};
use solitonlab::measure::{fit_sech2, fit_sech2_xy, local_profile, measure_sound_speed, track_soliton, FitResult};
use solitonlab::pde::{GpeIntegrator, GpeState, Grid1D, HgpeIntegrator, HgpeScheme, HgpeState};
use solitonlab::profile::symmetric_grid;
use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, Branch, PhysicalParams, ProfileKind, System};

const THIRD: f64 = 1.0 / 3.0;

fn hard_core() -> PhysicalParams {
    PhysicalParams::half_filled(THIRD)
}

fn condensate() -> PhysicalParams {
    match_gpe_to_hgpe(&hard_core()).unwrap()
}

/// Tracked speed and final fit of the left soliton of a condensate pair.
fn run_gpe(vbar: f64, duration: f64, window: f64) -> (f64, f64, FitResult) {
    let p = condensate();
    let d = derive_groups_vbar(&p, System::Gpe, vbar).unwrap();
    let grid = Grid1D::new(200.0, 2048).unwrap();
    let dt = 0.005;
    let mut it = GpeIntegrator::new(GpeState::soliton_pair(grid, p, vbar).unwrap(), dt).unwrap();
    let x1 = GpeState::pair_centres(&grid)[0];
    let mut snaps = Vec::new();
    for k in 0..=6 {
        let target = (duration * k as f64 / 6.0 / dt).round() as usize;
        it.advance(target - it.steps()).unwrap();
        let s = it.state();
        snaps.push((s.time, local_profile(&grid, &s.density(), x1 + d.speed * s.time, window, ProfileKind::GpeDensity)));
    }
    let tr = track_soliton(&snaps).unwrap();
    let fit = fit_sech2(&snaps[snaps.len() - 1].1, None).unwrap();
    (tr.speed, d.speed, fit)
}

/// Tracked speed and final fit of the condensate dip of the left hard-core soliton.
fn run_hgpe(vbar: f64, duration: f64) -> (f64, f64, FitResult) {
    let p = hard_core();
    let d = derive_groups_vbar(&p, System::Hgpe, vbar).unwrap();
    let grid = Grid1D::new(40.0, 640).unwrap();
    let s = HgpeState::soliton_pair(grid, p, vbar, Branch::Dark, DensityShape::Exact).unwrap();
    let dt = s.max_stable_dt();
    let mut it = HgpeIntegrator::new(s, dt).unwrap();
    let x1 = HgpeState::pair_centres(&grid)[0];
    let mut snaps = Vec::new();
    for k in 0..=6 {
        let target = (duration * k as f64 / 6.0 / dt).round() as usize;
        it.advance(target - it.steps()).unwrap();
        let s = it.state();
        let c = x1 + d.speed * s.time;
        snaps.push((s.time, local_profile(&grid, &s.condensate_density(), c, 8.0, ProfileKind::HgpeCondensate)));
    }
    let tr = track_soliton(&snaps).unwrap();
    let fit = fit_sech2(&snaps[snaps.len() - 1].1, None).unwrap();
    (tr.speed, d.speed, fit)
}

#[test]
fn uniform_observables() {
    let grid = Grid1D::new(100.0, 256).unwrap();
    let h = HgpeState::uniform(grid, hard_core()).unwrap().observables();
    assert!((h.n_tot - 50.0).abs() < 1e-12);
    assert!(h.rho_s.iter().chain(&h.rho_d).all(|r| (r - 0.25).abs() < 1e-15));
    let g = GpeState::uniform(grid, condensate()).unwrap().observables();
    assert!((g.n_tot - 25.0).abs() < 1e-12);
}

#[test]
fn condensate_soliton_moves_at_its_speed() {
    let (speed, want, fit) = run_gpe(0.5, 20.0, 15.0);
    assert!((speed - want).abs() / want < 0.01, "{speed} vs {want}");
    assert!((fit.amplitude - 0.75 * 0.25).abs() < 1e-4, "{fit:?}");
}

#[test]
fn shallow_condensate_soliton_persists() {
    let vbar = 0.95;
    let (speed, want, fit) = run_gpe(vbar, 30.0, 30.0);
    let depth = (1.0 - vbar * vbar) * 0.25;
    assert!((speed - want).abs() / want < 0.01, "{speed} vs {want}");
    assert!((fit.amplitude - depth).abs() / depth < 0.01, "{} vs {depth}", fit.amplitude);
}

#[test]
fn hard_core_soliton_moves_at_its_speed() {
    let (speed, want, _) = run_hgpe(0.5, 12.0);
    assert!((speed - want).abs() / want < 0.01, "{speed} vs {want}");
}

#[test]
fn hard_core_condensate_dip_stays_sech2_shaped() {
    let (_, _, fit) = run_hgpe(0.5, 12.0);
    assert!(fit.residual < 1e-3, "sech² fit residual {:.3e}", fit.residual);
}

#[test]
fn fitted_widths_follow_the_rescaling() {
    let (_, _, h) = run_hgpe(0.5, 6.0);
    let (_, _, g) = run_gpe(0.5, 6.0, 15.0);
    let lambda = THIRD.sqrt();
    let want = (1.0 - 2.0 * lambda * lambda).sqrt();
    let ratio = h.width / g.width;
    assert!((ratio - want).abs() / want < 0.02, "Γ_s/Γ_g = {ratio:.5}, expected {want:.5}");
    assert!((h.amplitude - g.amplitude).abs() / g.amplitude < 0.02, "{} vs {}", h.amplitude, g.amplitude);
}

#[test]
fn black_pair_evolves_on_the_spin_image() {
    let p = hard_core();
    let grid = Grid1D::new(40.0, 640).unwrap();
    let s = HgpeState::soliton_pair(grid, p, 0.0, Branch::Dark, DensityShape::Exact).unwrap();
    assert_eq!(s.scheme, HgpeScheme::SpinImage);
    let dt = s.max_stable_dt();
    let mut it = HgpeIntegrator::new(s, dt).unwrap();
    it.advance((4.0 / dt) as usize).unwrap();
    let s = it.state();
    let min = s.rho.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(min.abs() < 1e-3, "node filled to {min}");
    assert!(it.drift().particle_number.abs() < 1e-8);
    let c = HgpeState::pair_centres(&grid)[0];
    let i = s.rho.iter().enumerate().take(grid.n / 2).min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!((grid.x(i) - c).abs() < 2.0 * grid.dx(), "black soliton drifted to {}", grid.x(i));
}

#[test]
fn sound_speed_converges_in_amplitude() {
    for (sys, p) in [(System::Hgpe, hard_core()), (System::Gpe, condensate())] {
        let a = measure_sound_speed(sys, &p, 1e-3).unwrap().speed;
        let b = measure_sound_speed(sys, &p, 5e-4).unwrap().speed;
        let want = THIRD.sqrt();
        assert!((a - want).abs() / want < 0.02, "{sys}: {a}");
        assert!((a - b).abs() / b < 0.005, "{sys}: {a} vs {b}");
    }
}

#[test]
fn closed_form_condensate_dip_fits_exactly() {
    let vbar: f64 = 0.6;
    let x = symmetric_grid(10.0, 801);
    let y: Vec<f64> = x.iter().map(|&z| hgpe_condensate(z, vbar, 1.0).unwrap()).collect();
    let fit = fit_sech2_xy(&x, &y, None).unwrap();
    let gamma = (1.0 - vbar * vbar).sqrt();
    assert!((fit.amplitude - gamma * gamma / 4.0).abs() < 1e-10);
    assert!((fit.width - 1.0 / (2.0 * gamma)).abs() < 1e-10);
    assert!((fit.width - 0.625).abs() < 1e-10);
}
