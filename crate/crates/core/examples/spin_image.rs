//! Easy-plane spin image of dark and antidark hard-core solitons.

use solitonlab::analytic::{hgpe_soliton, DensityShape};
use solitonlab::profile::symmetric_grid;
use solitonlab::spinmap::{inplane_mag_sq, spin_chain_params, to_spins};
use solitonlab::{Branch, PhysicalParams};

fn main() -> solitonlab::Result<()> {
    let p = PhysicalParams::half_filled(1.0 / 3.0);
    let c = spin_chain_params(&p)?;
    println!("exchange {} anisotropy {:.6} field {} cone {:.6}", c.exchange, c.anisotropy, c.field, c.cone_angle);
    let x = symmetric_grid(4.0, 9);
    for branch in [Branch::Dark, Branch::Antidark] {
        let s = hgpe_soliton(&x, 0.0, &p, 0.6, branch, DensityShape::Exact)?;
        let spins = to_spins(&x, &s.density.real_values(), &s.phase.profile.real_values())?;
        let m = inplane_mag_sq(&spins);
        println!("{branch:?}: S_z {:?}", spins.sz.iter().map(|v| format!("{v:+.4}")).collect::<Vec<_>>());
        println!("{branch:?}: M^2 {:?}", m.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>());
    }
    Ok(())
}
