//! A moving condensate dark soliton pair, tracked and fitted.

use solitonlab::measure::{fit_sech2, local_profile, track_soliton};
use solitonlab::pde::{GpeIntegrator, GpeState, Grid1D};
use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, PhysicalParams, ProfileKind, System};

fn main() -> solitonlab::Result<()> {
    let p = match_gpe_to_hgpe(&PhysicalParams::half_filled(1.0 / 3.0))?;
    let vbar = 0.5;
    let d = derive_groups_vbar(&p, System::Gpe, vbar)?;
    let grid = Grid1D::new(200.0, 2048)?;
    let dt = 0.005;
    let mut it = GpeIntegrator::new(GpeState::soliton_pair(grid, p, vbar)?, dt)?;
    let x1 = GpeState::pair_centres(&grid)[0];
    let mut snaps = Vec::new();
    for k in 0..=6 {
        it.advance((5.0 * k as f64 / dt).round() as usize - it.steps())?;
        let s = it.state();
        snaps.push((s.time, local_profile(&grid, &s.density(), x1 + d.speed * s.time, 15.0, ProfileKind::GpeDensity)));
    }
    let tr = track_soliton(&snaps)?;
    let fit = fit_sech2(&snaps[snaps.len() - 1].1, None)?;
    println!("speed {:.6} (predicted {:.6}), R^2 {:.8}", tr.speed, d.speed, tr.r_squared);
    println!("dip depth {:.6}, width {:.6}", fit.amplitude, fit.width);
    println!("drift {:?}", it.drift());
    Ok(())
}
