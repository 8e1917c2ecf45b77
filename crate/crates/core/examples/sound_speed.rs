//! Sound fronts launched by a small Gaussian bump in both equations.

use solitonlab::measure::measure_sound_speed;
use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, PhysicalParams, System};

fn main() -> solitonlab::Result<()> {
    let hc = PhysicalParams::half_filled(1.0 / 3.0);
    let gp = match_gpe_to_hgpe(&hc)?;
    for (p, sys) in [(hc, System::Hgpe), (gp, System::Gpe)] {
        let want = derive_groups_vbar(&p, sys, 0.0)?.c_sound;
        for eps in [1e-3, 5e-4] {
            let m = measure_sound_speed(sys, &p, eps)?;
            println!("{sys} eps {eps:.0e}: {:.6} (predicted {want:.6}), asymmetry {:.4}", m.speed, m.asymmetry);
        }
    }
    Ok(())
}
