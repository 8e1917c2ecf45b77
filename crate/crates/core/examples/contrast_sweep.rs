//! Condensate dip depth and width of the half-filled dark soliton against speed.

use solitonlab::measure::{contrast_sweep, SweepSource};
use solitonlab::PhysicalParams;

fn main() -> solitonlab::Result<()> {
    let p = PhysicalParams::half_filled(1.0 / 3.0);
    let vbars: Vec<f64> = (0..20).map(|i| 0.05 * i as f64).collect();
    let analytic = contrast_sweep(&vbars, &p, SweepSource::Analytic)?;
    println!("{:>5} {:>10} {:>10} {:>10}", "vbar", "depth", "width", "fit width");
    for r in &analytic {
        println!("{:>5.2} {:>10.6} {:>10.6} {:>10.6}", r.vbar, r.depth_analytic, r.width_analytic, r.width_fit);
    }
    let evolved = contrast_sweep(&[0.3, 0.6, 0.9], &p, SweepSource::pde_default())?;
    println!("after evolution:");
    for r in &evolved {
        println!("{:>5.2} {:>10.6} {:>10.6}", r.vbar, r.depth_fit, r.width_fit);
    }
    Ok(())
}
