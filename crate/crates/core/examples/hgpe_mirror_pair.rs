//! Dark and antidark hard-core pairs evolved side by side.

use solitonlab::analytic::DensityShape;
use solitonlab::pde::{Grid1D, HgpeIntegrator, HgpeState};
use solitonlab::{Branch, PhysicalParams};

fn main() -> solitonlab::Result<()> {
    let p = PhysicalParams::half_filled(1.0 / 3.0);
    let grid = Grid1D::new(40.0, 640)?;
    let dark = HgpeState::soliton_pair(grid, p, 0.5, Branch::Dark, DensityShape::Exact)?;
    let anti = dark.mirror();
    let dt = dark.max_stable_dt();
    println!("scheme {}, dt {dt:.3e}", dark.scheme);
    let mut a = HgpeIntegrator::new(dark, dt)?;
    let mut b = HgpeIntegrator::new(anti, dt)?;
    for _ in 0..4 {
        let n = (2.0 / dt) as usize;
        a.advance(n)?;
        b.advance(n)?;
        let (sa, sb) = (a.state(), b.state());
        let gap = sa.rho.iter().zip(&sb.rho).map(|(x, y)| (x + y - 1.0).abs()).fold(0.0, f64::max);
        let min = sa.rho.iter().cloned().fold(1.0, f64::min);
        println!("t = {:5.2}  min rho {min:.6}  mirror gap {gap:.2e}", sa.time);
    }
    println!("drift {:?}", a.drift());
    Ok(())
}
