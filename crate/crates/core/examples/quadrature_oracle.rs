//! Orbits of the reductions by direct quadrature, against their closed forms.

use solitonlab::twode::{polynomial_identity, solve_by_quadrature, ClosedForm, OdeKind, QuadratureODE};

fn main() -> solitonlab::Result<()> {
    let vbar: f64 = 0.6;
    let g = (1.0 - vbar * vbar).sqrt();
    let cases = [
        (OdeKind::GpeRealPart, ClosedForm::Tanh { amplitude: g, rate: g }),
        (OdeKind::HgpeCondensate, ClosedForm::Sech2 { base: 1.0, depth: g * g, rate: g / 2.0 }),
        (OdeKind::DensityVariation, ClosedForm::Sech { amplitude: g, rate: 2.0 * g }),
    ];
    for (kind, form) in cases {
        let ode = QuadratureODE::new(kind, vbar)?;
        let orbit = solve_by_quadrature(&ode, form.value(0.0))?;
        let err = orbit
            .real_values()
            .iter()
            .zip(form.sample(&orbit.x))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("{:>8}: {} points, sup error {err:.2e}", kind.id(), orbit.len());
    }
    let a = QuadratureODE::new(OdeKind::HgpeCondensate, vbar)?;
    let b = QuadratureODE::new(OdeKind::GpeCondensate, vbar)?;
    println!("condensate reductions identical: {}", polynomial_identity(&a, &b).equal);
    let exact = QuadratureODE::new(OdeKind::HgpeTravelingWave { zeta: 1.0 }, vbar)?;
    let orbit = solve_by_quadrature(&exact, 0.5 * exact.gamma)?;
    println!("exact hard-core wave: peak {:.6} over {} points", orbit.real_values()[orbit.len() / 2], orbit.len());
    Ok(())
}
