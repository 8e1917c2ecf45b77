use proptest::prelude::*;

use solitonlab::analytic::{gpe_density, hgpe_density, hgpe_density_on, DensityShape};
use solitonlab::measure::fit_sech2_xy;
use solitonlab::pde::{Grid1D, HgpeIntegrator, HgpeState};
use solitonlab::profile::symmetric_grid;
use solitonlab::spinmap::{inplane_mag_sq, to_spins};
use solitonlab::twode::{residual_sampled, solve_by_quadrature, ClosedForm, OdeKind, QuadratureODE};
use solitonlab::{derive_groups_vbar, match_gpe_to_hgpe, Branch, PhysicalParams, System};

fn sech2(x: f64) -> f64 {
    1.0 / x.cosh().powi(2)
}

proptest! {
    #[test]
    fn gamma_and_speed_lie_on_the_unit_circle(v in 0.01f64..0.49, vbar in 0.0f64..0.99) {
        let d = derive_groups_vbar(&PhysicalParams::half_filled(v), System::Hgpe, vbar).unwrap();
        prop_assert!((d.gamma * d.gamma + vbar * vbar - 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_filled_anisotropy_from_first_principles(t in 0.2f64..5.0, frac in 0.01f64..0.49) {
        let v = frac * t;
        let p = PhysicalParams { hopping: t, nn_attraction: v, onsite_repulsion: 0.0, background_density: 0.5 };
        let d = derive_groups_vbar(&p, System::Hgpe, 0.0).unwrap();
        let c0 = t;
        let lambda = d.c_sound / c0;
        prop_assert!((lambda * lambda - (t - v) / (2.0 * t)).abs() < 1e-14);
        prop_assert_eq!(d.h_z, 0.0);
    }

    #[test]
    fn matching_equates_sound_speeds(v in 0.01f64..0.49) {
        let hc = PhysicalParams::half_filled(v);
        let gp = match_gpe_to_hgpe(&hc).unwrap();
        let cs = derive_groups_vbar(&hc, System::Hgpe, 0.0).unwrap().c_sound;
        let cg = derive_groups_vbar(&gp, System::Gpe, 0.0).unwrap().c_sound;
        prop_assert!((cs - cg).abs() < 1e-14);
    }

    #[test]
    fn branches_mirror_and_share_the_condensate(z in -20.0f64..20.0, vbar in 0.0f64..0.99, zeta in 0.2f64..3.0) {
        let d = hgpe_density(z, vbar, zeta, Branch::Dark).unwrap();
        let a = hgpe_density(z, vbar, zeta, Branch::Antidark).unwrap();
        prop_assert!((d + a - 1.0).abs() < 1e-15);
        prop_assert!((d * (1.0 - d) - a * (1.0 - a)).abs() < 1e-15);
        prop_assert_eq!(d, hgpe_density(-z, vbar, zeta, Branch::Dark).unwrap());
    }

    #[test]
    fn condensate_density_completes_the_square(z in -30.0f64..30.0, vbar in 0.0f64..0.99, lambda in 0.05f64..0.7) {
        let rho0 = 0.25;
        let gamma = (1.0 - vbar * vbar).sqrt();
        let r = gpe_density(z, vbar, lambda, rho0).unwrap();
        prop_assert!((r / rho0 + gamma * gamma * sech2(gamma * lambda * z) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn real_part_front_generates_the_condensate_parent(z in -20.0f64..20.0, vbar in 0.0f64..0.99) {
        let g = (1.0 - vbar * vbar).sqrt();
        let f = ClosedForm::Tanh { amplitude: g, rate: g };
        let (y, dy) = (f.value(z), f.derivative(z));
        let rho = y * y + vbar * vbar;
        let drho = 2.0 * y * dy;
        let rhs = 4.0 * (1.0 - rho).powi(2) * (rho - vbar * vbar);
        prop_assert!((drho * drho - rhs).abs() < 1e-14);
    }

    #[test]
    fn sech2_fit_is_equivariant(a in 0.05f64..0.3, w in 0.4f64..2.0, shift in -3.0f64..3.0, lift in -1.0f64..1.0) {
        let x = symmetric_grid(12.0, 601);
        let y: Vec<f64> = x.iter().map(|&x| 0.25 - a * sech2(x / w) + 0.002 * (x / w).sin() / (1.0 + x * x)).collect();
        let base = fit_sech2_xy(&x, &y, None).unwrap();
        let xs: Vec<f64> = x.iter().map(|v| v + shift).collect();
        let ys: Vec<f64> = y.iter().map(|v| v + lift).collect();
        let moved = fit_sech2_xy(&xs, &ys, None).unwrap();
        prop_assert!((moved.amplitude - base.amplitude).abs() < 1e-8);
        prop_assert!((moved.width - base.width).abs() < 1e-8);
        prop_assert!((moved.center - base.center - shift).abs() < 1e-8);
        prop_assert!((moved.background - base.background - lift).abs() < 1e-8);
    }

    #[test]
    fn spin_image_closure(rho in prop::collection::vec(0.0f64..=1.0, 1..64), seed in 0.0f64..6.3) {
        let x: Vec<f64> = (0..rho.len()).map(|i| i as f64).collect();
        let phi: Vec<f64> = (0..rho.len()).map(|i| seed * i as f64).collect();
        let s = to_spins(&x, &rho, &phi).unwrap();
        prop_assert!(s.length_defect() < 1e-12);
        for (m, r) in inplane_mag_sq(&s).iter().zip(&rho) {
            prop_assert!((m - r * (1.0 - r)).abs() < 1e-12);
        }
        let flipped: Vec<f64> = rho.iter().map(|r| 1.0 - r).collect();
        let t = to_spins(&x, &flipped, &phi).unwrap();
        for i in 0..rho.len() {
            prop_assert!((t.sz[i] + s.sz[i]).abs() < 1e-15);
        }
        for (a, b) in inplane_mag_sq(&t).iter().zip(inplane_mag_sq(&s)) {
            prop_assert!((a - b).abs() < 1e-15);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_orbits_are_even_monotone_and_consistent(vbar in 0.05f64..0.95, which in 0usize..4) {
        let kind = [
            OdeKind::HgpeCondensate,
            OdeKind::CondensateVariation,
            OdeKind::DensityVariation,
            OdeKind::GpeCondensate,
        ][which];
        let ode = QuadratureODE::new(kind, vbar).unwrap();
        let g = ode.gamma;
        let start = match kind {
            OdeKind::DensityVariation => g,
            OdeKind::CondensateVariation => -g * g,
            _ => 1.0 - g * g,
        };
        let p = solve_by_quadrature(&ode, start).unwrap();
        prop_assert!(residual_sampled(&ode, &p).unwrap() < 1e-7);
        let y = p.real_values();
        let n = y.len();
        for i in 0..n / 2 {
            prop_assert!((y[i] - y[n - 1 - i]).abs() < 1e-15);
        }
        let rising = y[n / 2] < y[0];
        for w in y[n / 2..].windows(2) {
            let ok = if rising { w[1] >= w[0] } else { w[1] <= w[0] };
            prop_assert!(ok);
        }
    }

    #[test]
    fn exact_hard_core_wave_has_mirror_branches(vbar in 0.05f64..0.95) {
        let p = PhysicalParams::half_filled(1.0 / 3.0);
        let z = symmetric_grid(15.0, 301);
        let d = hgpe_density_on(&z, &p, vbar, Branch::Dark, DensityShape::Exact).unwrap();
        let a = hgpe_density_on(&z, &p, vbar, Branch::Antidark, DensityShape::Exact).unwrap();
        for (x, y) in d.iter().zip(&a) {
            prop_assert!((x + y - 1.0).abs() < 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn evolved_pairs_stay_mirrored(vbar in 0.3f64..0.9, antidark in any::<bool>()) {
        let p = PhysicalParams::half_filled(1.0 / 3.0);
        let grid = Grid1D::new(16.0, 256).unwrap();
        let first = if antidark { Branch::Antidark } else { Branch::Dark };
        let s = HgpeState::soliton_pair(grid, p, vbar, first, DensityShape::Exact).unwrap();
        let m = s.mirror();
        let dt = s.max_stable_dt();
        let mut a = HgpeIntegrator::new(s, dt).unwrap();
        let mut b = HgpeIntegrator::new(m, dt).unwrap();
        a.advance(400).unwrap();
        b.advance(400).unwrap();
        for (x, y) in a.state().rho.iter().zip(&b.state().rho) {
            prop_assert!((x + y - 1.0).abs() < 1e-6);
        }
        prop_assert!(a.drift().particle_number.abs() < 1e-8);
    }
}
