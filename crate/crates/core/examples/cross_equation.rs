//! Fitted condensate dips of the two equations at matched parameters.

use solitonlab::analytic::DensityShape;
use solitonlab::measure::{fit_sech2, local_profile};
use solitonlab::pde::{evolve_gpe, evolve_hgpe, GpeState, Grid1D, HgpeState};
use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, Branch, PhysicalParams, ProfileKind, System};

fn main() -> solitonlab::Result<()> {
    let hc = PhysicalParams::half_filled(1.0 / 3.0);
    let gp = match_gpe_to_hgpe(&hc)?;
    let vbar = 0.5;

    let grid = Grid1D::new(40.0, 640)?;
    let s = HgpeState::soliton_pair(grid, hc, vbar, Branch::Dark, DensityShape::Exact)?;
    let dt = s.max_stable_dt();
    let steps = (6.0 / dt) as usize;
    let s = evolve_hgpe(s, dt, steps)?;
    let d = derive_groups_vbar(&hc, System::Hgpe, vbar)?;
    let c = HgpeState::pair_centres(&grid)[0] + d.speed * s.time;
    let h = fit_sech2(&local_profile(&grid, &s.condensate_density(), c, 8.0, ProfileKind::HgpeCondensate), None)?;

    let grid = Grid1D::new(200.0, 2048)?;
    let s = evolve_gpe(GpeState::soliton_pair(grid, gp, vbar)?, 0.005, 1200)?;
    let d = derive_groups_vbar(&gp, System::Gpe, vbar)?;
    let c = GpeState::pair_centres(&grid)[0] + d.speed * s.time;
    let g = fit_sech2(&local_profile(&grid, &s.density(), c, 15.0, ProfileKind::GpeDensity), None)?;

    println!("hard-core rho_s dip: depth {:.6} width {:.6} residual {:.2e}", h.amplitude, h.width, h.residual);
    println!("condensate rho_g dip: depth {:.6} width {:.6} residual {:.2e}", g.amplitude, g.width, g.residual);
    println!("width ratio {:.6}, sqrt(1 - 2 Lambda^2) = {:.6}", h.width / g.width, (1.0f64 / 3.0).sqrt());
    Ok(())
}
