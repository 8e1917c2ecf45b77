//! Dark and antidark hard-core solitons and the condensate dark soliton at one speed.

use solitonlab::analytic::{gpe_phase_step, gpe_soliton, hgpe_soliton, DensityShape};
use solitonlab::profile::symmetric_grid;
use solitonlab::{match_gpe_to_hgpe, Branch, PhysicalParams};

fn main() -> solitonlab::Result<()> {
    let p = PhysicalParams::half_filled(1.0 / 3.0);
    let vbar = 0.6;
    let x = symmetric_grid(8.0, 17);
    let dark = hgpe_soliton(&x, 0.0, &p, vbar, Branch::Dark, DensityShape::Exact)?;
    let anti = hgpe_soliton(&x, 0.0, &p, vbar, Branch::Antidark, DensityShape::Exact)?;
    let (_, rho_g) = gpe_soliton(&x, 0.0, &match_gpe_to_hgpe(&p)?, vbar)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "x", "rho dark", "rho anti", "rho_s", "rho_g");
    for i in 0..x.len() {
        println!(
            "{:>6.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            x[i],
            dark.density.real_values()[i],
            anti.density.real_values()[i],
            dark.condensate.real_values()[i],
            rho_g.real_values()[i]
        );
    }
    println!("hard-core phase step {:.6}", dark.phase.step);
    println!("condensate phase step {:.6}", gpe_phase_step(vbar)?);
    let black = hgpe_soliton(&x, 0.0, &p, 0.0, Branch::Dark, DensityShape::Exact)?;
    println!("v = 0: step {:.6} ({})", black.phase.step, black.phase.note().unwrap_or(""));
    Ok(())
}
