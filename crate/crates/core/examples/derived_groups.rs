//! Dimensionless groups of the half-filled hard-core system and its matched condensate.

use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, PhysicalParams, System};

fn main() -> solitonlab::Result<()> {
    let hc = PhysicalParams::half_filled(1.0 / 3.0);
    let gp = match_gpe_to_hgpe(&hc)?;
    println!("matched condensate: U = {:.6}, rho0 = {}", gp.onsite_repulsion, gp.background_density);
    for (name, p, sys) in [("hard-core", hc, System::Hgpe), ("condensate", gp, System::Gpe)] {
        let d = derive_groups_vbar(&p, sys, 0.5)?;
        println!(
            "{name:>10}: c = {:.6}  Lambda = {:.6}  gamma = {:.6}  zeta = {:?}  xi = {:.6}  h_z = {}",
            d.c_sound, d.lambda, d.gamma, d.zeta, d.xi, d.h_z
        );
    }
    Ok(())
}
