//! Residuals of closed forms and sampled orbits against the reductions.

use serde::Serialize;

use super::{ClosedForm, OdeKind, QuadratureODE, Variable};
use crate::error::{Error, Result};
use crate::profile::{symmetric_grid, Profile};

const BACKGROUND_TOL: f64 = 1e-8;
const GRID_POINTS: usize = 8193;
const DECAY_LENGTHS: f64 = 26.0;

/// Symmetric `z̄` grid wide enough for the slowest equilibrium approach.
pub fn default_grid(ode: &QuadratureODE) -> Vec<f64> {
    symmetric_grid(DECAY_LENGTHS / ode.slowest_rate(), GRID_POINTS)
}

fn check_background(ode: &QuadratureODE, end_values: [f64; 2]) -> Result<()> {
    let eq = ode.equilibria();
    for y in end_values {
        let gap = eq.iter().map(|e| (y - e).abs()).fold(f64::INFINITY, f64::min);
        if !(gap <= BACKGROUND_TOL) {
            return Err(Error::GridTooShort(format!(
                "end value {y:.3e} is {gap:.3e} from the nearest equilibrium"
            )));
        }
    }
    Ok(())
}

/// Sup-norm of `(dy/dz̄)² − P(y)` over the grid, using the analytic derivative.
pub fn residual(ode: &QuadratureODE, form: &ClosedForm, grid: &[f64]) -> Result<f64> {
    if grid.len() < 3 {
        return Err(Error::GridTooShort(format!("{} points", grid.len())));
    }
    check_background(ode, [form.value(grid[0]), form.value(grid[grid.len() - 1])])?;
    let r = |z: f64| {
        let d = form.derivative(z);
        (d * d - ode.rhs(form.value(z))).abs()
    };
    let (k, best) = grid
        .iter()
        .enumerate()
        .map(|(i, &z)| (i, r(z)))
        .fold((0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
    let lo = grid[k.saturating_sub(1)];
    let hi = grid[(k + 1).min(grid.len() - 1)];
    Ok(best.max(golden_max(r, lo, hi)))
}

/// Maximum of a unimodal function on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Residual of a sampled orbit, with sixth-order central differences.
pub fn residual_sampled(ode: &QuadratureODE, profile: &Profile) -> Result<f64> {
    let y = profile.real_values();
    let n = y.len();
    if n < 7 {
        return Err(Error::GridTooShort(format!("{n} points")));
    }
    check_background(ode, [y[0], y[n - 1]])?;
    let h = profile.spacing();
    const C: [f64; 3] = [45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0];
    let mut sup: f64 = 0.0;
    for i in 3..n - 3 {
        let d = (C[0] * (y[i + 1] - y[i - 1]) + C[1] * (y[i + 2] - y[i - 2]) + C[2] * (y[i + 3] - y[i - 3])) / h;
        sup = sup.max((d * d - ode.rhs(y[i])).abs());
    }
    Ok(sup)
}

/// A closed form under test, tagged with the variable and argument it is written in.
#[derive(Debug, Clone, Serialize)]
pub struct NamedForm {
    pub id: &'static str,
    pub expression: &'static str,
    pub variable: Variable,
    pub healing_units: bool,
    pub form: ClosedForm,
}

impl NamedForm {
    /// Every printed or self-consistent closed form at speed `v̄`.
    pub fn catalogue(vbar: f64) -> Vec<NamedForm> {
        let g = (1.0 - vbar * vbar).sqrt();
        let g2 = g * g;
        let scaled = |id, expression, variable, form| NamedForm {
            id,
            expression,
            variable,
            healing_units: false,
            form,
        };
        vec![
            scaled(
                "f_amp_gamma",
                "γ sech(2γz̄)",
                Variable::DensityVariation,
                ClosedForm::Sech { amplitude: g, rate: 2.0 * g },
            ),
            scaled(
                "f_canonical",
                "(γ/2) sech(2γz̄)",
                Variable::DensityVariation,
                ClosedForm::Sech { amplitude: g / 2.0, rate: 2.0 * g },
            ),
            scaled(
                "rho_s_bar_sech2_2gz",
                "1 − γ² sech²(2γz̄)",
                Variable::NormalizedCondensate,
                ClosedForm::Sech2 { base: 1.0, depth: g2, rate: 2.0 * g },
            ),
            scaled(
                "rho_s_bar_sech2_gz_half",
                "1 − γ² sech²(γz̄/2)",
                Variable::NormalizedCondensate,
                ClosedForm::Sech2 { base: 1.0, depth: g2, rate: g / 2.0 },
            ),
            scaled(
                "f_s_bar_sech2_2gz",
                "−γ² sech²(2γz̄)",
                Variable::CondensateVariation,
                ClosedForm::Sech2 { base: 0.0, depth: g2, rate: 2.0 * g },
            ),
            scaled(
                "f_s_bar_sech2_gz_half",
                "−γ² sech²(γz̄/2)",
                Variable::CondensateVariation,
                ClosedForm::Sech2 { base: 0.0, depth: g2, rate: g / 2.0 },
            ),
            NamedForm {
                id: "psi_r_w",
                expression: "γ tanh(γw/√2)",
                variable: Variable::RealPart,
                healing_units: true,
                form: ClosedForm::Tanh { amplitude: g, rate: g / 2f64.sqrt() },
            },
            scaled(
                "psi_r",
                "γ tanh(γz̄)",
                Variable::RealPart,
                ClosedForm::Tanh { amplitude: g, rate: g },
            ),
            scaled(
                "rho_g_bar",
                "ψ_r² + v̄² = 1 − γ² sech²(γz̄)",
                Variable::NormalizedCondensate,
                ClosedForm::Sech2 { base: 1.0, depth: g2, rate: g },
            ),
        ]
    }

    /// Whether the form is written in the same variables as the reduction.
    pub fn applies_to(&self, kind: OdeKind) -> bool {
        self.variable == kind.variable()
            && self.healing_units == (kind.argument() == super::Argument::HealingUnits)
    }
}

/// Sup-norm residuals of every closed form against every printed reduction.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyMatrix {
    pub vbar: f64,
    pub rows: Vec<NamedForm>,
    pub cols: Vec<OdeKind>,
    /// `cells[row][col]`; `None` where the variables differ.
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Evaluates the full matrix at speed `v̄`.
pub fn consistency_matrix(vbar: f64) -> Result<ConsistencyMatrix> {
    let rows = NamedForm::catalogue(vbar);
    let cols = OdeKind::PRINTED.to_vec();
    let odes = cols
        .iter()
        .map(|&k| QuadratureODE::new(k, vbar))
        .collect::<Result<Vec<_>>>()?;
    let grids: Vec<Vec<f64>> = odes.iter().map(default_grid).collect();
    let mut cells = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut line = Vec::with_capacity(cols.len());
        for (ode, grid) in odes.iter().zip(&grids) {
            line.push(if row.applies_to(ode.kind) {
                Some(residual(ode, &row.form, grid)?)
            } else {
                None
            });
        }
        cells.push(line);
    }
    Ok(ConsistencyMatrix { vbar, rows, cols, cells })
}

impl ConsistencyMatrix {
    pub fn cell(&self, row: &str, col: OdeKind) -> Option<f64> {
        let r = self.rows.iter().position(|f| f.id == row)?;
        let c = self.cols.iter().position(|&k| k == col)?;
        self.cells[r][c]
    }

    /// Aligned text table, one row per closed form.
    pub fn to_text(&self) -> String {
        let mut out = format!("v̄ = {}\n{:<26}", self.vbar, "form \\ ode");
        for c in &self.cols {
            out.push_str(&format!("{:>11}", c.id()));
        }
        out.push('\n');
        for (row, line) in self.rows.iter().zip(&self.cells) {
            out.push_str(&format!("{:<26}", row.id));
            for cell in line {
                match cell {
                    Some(v) => out.push_str(&format!("{v:>11.3e}")),
                    None => out.push_str(&format!("{:>11}", "-")),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vbar": self.vbar,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "id": r.id,
                "expression": r.expression,
            })).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|c| c.id()).collect::<Vec<_>>(),
            "cells": self.cells,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ode(kind: OdeKind, vbar: f64) -> QuadratureODE {
        QuadratureODE::new(kind, vbar).unwrap()
    }

    #[test]
    fn tanh_front_solves_real_part_equation() {
        let o = ode(OdeKind::GpeRealPart, 0.5);
        let g = o.gamma;
        let r = residual(&o, &ClosedForm::Tanh { amplitude: g, rate: g }, &default_grid(&o)).unwrap();
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn half_amplitude_sech_misses_by_three_quarters_gamma_to_fourth() {
        let o = ode(OdeKind::DensityVariation, 0.0);
        let r = residual(&o, &ClosedForm::Sech { amplitude: 0.5, rate: 2.0 }, &default_grid(&o)).unwrap();
        assert!((r - 0.75).abs() < 1e-10, "{r}");
    }

    #[test]
    fn fast_sech2_misses_variation_equation_by_twenty_ninths() {
        let vbar = 0.3;
        let o = ode(OdeKind::CondensateVariation, vbar);
        let g = o.gamma;
        let form = ClosedForm::Sech2 { base: 0.0, depth: g * g, rate: 2.0 * g };
        let r = residual(&o, &form, &default_grid(&o)).unwrap();
        assert!((r - 20.0 / 9.0 * g.powi(6)).abs() < 1e-10, "{r}");
    }

    #[test]
    fn short_grid_is_rejected() {
        let o = ode(OdeKind::GpeRealPart, 0.5);
        let g = o.gamma;
        let grid = symmetric_grid(2.0, 101);
        let e = residual(&o, &ClosedForm::Tanh { amplitude: g, rate: g }, &grid);
        assert!(matches!(e, Err(Error::GridTooShort(_))));
    }

    #[test]
    fn matrix_shape_and_mismatch_cells() {
        let m = consistency_matrix(0.5).unwrap();
        assert_eq!(m.rows.len(), 9);
        assert_eq!(m.cols.len(), 6);
        assert!(m.cell("psi_r", OdeKind::DensityVariation).is_none());
        assert!(m.cell("psi_r_w", OdeKind::GpeRealPartHealing).unwrap() < 1e-12);
        assert!(m.cell("rho_g_bar", OdeKind::GpeCondensate).unwrap() > 1e-3);
        let text = m.to_text();
        assert_eq!(text.lines().count(), 11);
    }
}
