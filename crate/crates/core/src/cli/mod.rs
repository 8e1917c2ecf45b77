//! Command-line front end: flat configuration, run manifests and subcommands.

mod config;
mod manifest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{Config, KEYS, OUT_ENV};
pub use manifest::{RunManifest, MANIFEST_FILE};

use crate::analytic::{gpe_soliton, hgpe_soliton, CONTINUITY_KAPPA};
use crate::error::{precondition, Error, Result};
use crate::measure::{contrast_sweep, fit_sech2_xy, measure_sound_speed, SweepSource};
use crate::params::{derive_groups_vbar, System};
use crate::pde::{GpeIntegrator, GpeState, Grid1D, HgpeIntegrator, HgpeState, EPS_RHO};
use crate::profile::symmetric_grid;
use crate::spinmap::{inplane_mag_sq, spin_chain_params, to_spins};
use crate::twode::consistency_matrix;

/// Subcommands that produce artifacts from a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Derived dimensionless groups.
    Params,
    /// Analytic soliton profile on a grid.
    Profile,
    /// Residual table of the closed forms against the traveling-wave equations.
    Residual,
    /// Time evolution of a soliton pair.
    Evolve,
    /// sech² fit of one column of a CSV file.
    Fit,
    /// Condensate dip depth and width against v̄.
    Sweep,
    /// Sound speed from a small Gaussian pulse.
    Sound,
    /// Classical spin image of a hard-core profile.
    Spinmap,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Params => "params",
            Command::Profile => "profile",
            Command::Residual => "residual",
            Command::Evolve => "evolve",
            Command::Fit => "fit",
            Command::Sweep => "sweep",
            Command::Sound => "sound",
            Command::Spinmap => "spinmap",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "params" => Command::Params,
            "profile" => Command::Profile,
            "residual" => Command::Residual,
            "evolve" => Command::Evolve,
            "fit" => Command::Fit,
            "sweep" => Command::Sweep,
            "sound" => Command::Sound,
            "spinmap" => Command::Spinmap,
            other => {
                return Err(Error::InvalidValue { key: "command".into(), value: other.into() });
            }
        })
    }
}

#[derive(Debug, Subcommand)]
enum Action {
    #[command(flatten)]
    Run(Command),
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(Debug, Parser)]
#[command(name = "solitonlab", version, about = "One-dimensional soliton lab")]
struct Args {
    #[command(subcommand)]
    action: Action,
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one key, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Output directory, overriding the environment and the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

/// Outcome of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub dir: PathBuf,
    pub files: Vec<String>,
    pub summary: String,
}

/// Parses `args`, runs, prints and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(args) {
        Ok(r) => {
            print!("{}", r.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(args: Args) -> Result<RunReport> {
    match args.action {
        Action::Replay { manifest } => {
            let m = RunManifest::read(&manifest)?;
            let mut cfg = Config::from_map(&m.config)?;
            for s in &args.set {
                cfg.set_pair(s)?;
            }
            let dir = cfg.output_dir(args.out.as_deref());
            run(m.command.parse()?, &cfg, &dir)
        }
        Action::Run(cmd) => {
            let mut cfg = match &args.config {
                Some(p) => Config::load(p)?,
                None => Config::new(),
            };
            for s in &args.set {
                cfg.set_pair(s)?;
            }
            let dir = cfg.output_dir(args.out.as_deref());
            run(cmd, &cfg, &dir)
        }
    }
}

/// Runs `cmd` with `cfg`, writing artifacts and then the manifest into `dir`.
pub fn run(cmd: Command, cfg: &Config, dir: &Path) -> Result<RunReport> {
    std::fs::create_dir_all(dir)?;
    let mut ctx = Ctx {
        dir: dir.to_path_buf(),
        files: Vec::new(),
        summary: String::new(),
        manifest: RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: cmd.name().into(),
            config: cfg.entries().clone(),
            config_hash: cfg.hash(),
            params: None,
            groups: None,
            scheme: None,
            dt: None,
            steps: None,
            grid: None,
            kappa: CONTINUITY_KAPPA,
            drift: None,
            files: Vec::new(),
            timestamp: 0,
        },
    };
    match cmd {
        Command::Params => cmd_params(cfg, &mut ctx)?,
        Command::Profile => cmd_profile(cfg, &mut ctx)?,
        Command::Residual => cmd_residual(cfg, &mut ctx)?,
        Command::Evolve => cmd_evolve(cfg, &mut ctx)?,
        Command::Fit => cmd_fit(cfg, &mut ctx)?,
        Command::Sweep => cmd_sweep(cfg, &mut ctx)?,
        Command::Sound => cmd_sound(cfg, &mut ctx)?,
        Command::Spinmap => cmd_spinmap(cfg, &mut ctx)?,
    }
    ctx.manifest.files = ctx.files.clone();
    ctx.manifest.timestamp = manifest::now();
    ctx.manifest.write(dir)?;
    Ok(RunReport { dir: ctx.dir, files: ctx.files, summary: ctx.summary })
}

struct Ctx {
    dir: PathBuf,
    files: Vec<String>,
    summary: String,
    manifest: RunManifest,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.summary.push_str(s.as_ref());
        self.summary.push('\n');
    }

    fn write_text(&mut self, name: &str, text: &str) -> Result<()> {
        std::fs::write(self.dir.join(name), text)?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn write_json<T: serde::Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(v)? + "\n";
        self.write_text(name, &text)
    }

    /// Columns formatted with 17 significant digits.
    fn write_csv(&mut self, name: &str, header: &[&str], cols: &[&[f64]]) -> Result<()> {
        let path = self.dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        let n = cols.first().map_or(0, |c| c.len());
        for i in 0..n {
            w.write_record(cols.iter().map(|c| format!("{:.16e}", c[i])))?;
        }
        w.flush()?;
        self.files.push(name.to_string());
        Ok(())
    }
}

fn vbar(cfg: &Config) -> Result<f64> {
    cfg.f64_or("vbar", 0.5)
}

fn cmd_params(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let system = cfg.system()?;
    let p = cfg.params(system)?;
    let d = derive_groups_vbar(&p, system, vbar(cfg)?)?;
    ctx.manifest.params = Some(p);
    ctx.manifest.groups = Some(d);
    ctx.line(format!("system  {system}"));
    ctx.line(format!("g       {:.10}", d.g));
    ctx.line(format!("mu      {:.10}", d.mu));
    ctx.line(format!("h_z     {:.10}", d.h_z));
    ctx.line(format!("c_sound {:.10}", d.c_sound));
    ctx.line(format!("Lambda  {:.10}", d.lambda));
    ctx.line(format!("gamma   {:.10}", d.gamma));
    if let Some(z) = d.zeta {
        ctx.line(format!("zeta    {z:.10}"));
    }
    ctx.line(format!("xi      {:.10}", d.xi));
    ctx.write_json("groups.json", &d)
}

fn cmd_profile(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let system = cfg.system()?;
    let p = cfg.params(system)?;
    let v = vbar(cfg)?;
    let x = symmetric_grid(0.5 * cfg.f64_or("grid.length", 40.0)?, cfg.usize_or("grid.n", 801)?);
    ctx.manifest.params = Some(p);
    ctx.manifest.groups = Some(derive_groups_vbar(&p, system, v)?);
    match system {
        System::Hgpe => {
            let s = hgpe_soliton(&x, 0.0, &p, v, cfg.branch()?, cfg.shape()?)?;
            ctx.write_csv(
                "profile.csv",
                &["x", "rho", "rho_s", "phi"],
                &[&x, &s.density.real_values(), &s.condensate.real_values(), &s.phase.profile.real_values()],
            )?;
            ctx.line(format!("phase step {:.10}", s.phase.step));
            if let Some(n) = s.phase.note() {
                ctx.line(n);
            }
        }
        System::Gpe => {
            let (wave, rho) = gpe_soliton(&x, 0.0, &p, v)?;
            let psi = wave.as_complex().unwrap_or_default();
            let re: Vec<f64> = psi.iter().map(|c| c.re).collect();
            let im: Vec<f64> = psi.iter().map(|c| c.im).collect();
            ctx.write_csv("profile.csv", &["x", "re_psi", "im_psi", "rho_g"], &[&x, &re, &im, &rho.real_values()])?;
        }
    }
    ctx.line(format!("{} points written to profile.csv", x.len()));
    Ok(())
}

fn cmd_residual(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let m = consistency_matrix(vbar(cfg)?)?;
    let text = m.to_text();
    ctx.write_text("residual.txt", &text)?;
    ctx.write_json("residual.json", &m.to_json())?;
    ctx.summary.push_str(&text);
    Ok(())
}

fn cmd_evolve(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let system = cfg.system()?;
    let p = cfg.params(system)?;
    let v = vbar(cfg)?;
    let (l0, n0) = match system {
        System::Hgpe => (40.0, 640),
        System::Gpe => (200.0, 2048),
    };
    let grid = Grid1D::new(cfg.f64_or("grid.length", l0)?, cfg.usize_or("grid.n", n0)?)?;
    let dt = cfg.require_f64("dt")?;
    let steps = cfg.require_usize("steps")?;
    let every = cfg.usize_or("snapshot.every", steps.max(1))?.max(1);
    ctx.manifest.params = Some(p);
    ctx.manifest.groups = Some(derive_groups_vbar(&p, system, v)?);
    ctx.manifest.grid = Some(grid);
    ctx.manifest.dt = Some(dt);
    ctx.manifest.steps = Some(steps);
    let x = grid.points();
    let mut done = 0;
    let mut k = 0;
    match system {
        System::Hgpe => {
            let s = HgpeState::soliton_pair(grid, p, v, cfg.branch()?, cfg.shape()?)?;
            ctx.manifest.scheme = Some(s.scheme.to_string());
            let mut it = HgpeIntegrator::new(s, dt)?;
            loop {
                let s = it.state();
                let rho: Vec<f64> = s.rho.clone();
                ctx.write_csv(
                    &format!("snap_{k:06}.csv"),
                    &["x", "rho", "phi", "rho_s"],
                    &[&x, &rho, &s.phi, &s.condensate_density()],
                )?;
                k += 1;
                if done == steps {
                    break;
                }
                let n = every.min(steps - done);
                it.advance(n)?;
                done += n;
            }
            ctx.manifest.drift = Some(it.drift());
        }
        System::Gpe => {
            let s = GpeState::soliton_pair(grid, p, v)?;
            ctx.manifest.scheme = Some("split-step-fourier-strang".into());
            let mut it = GpeIntegrator::new(s, dt)?;
            loop {
                let s = it.state();
                let re: Vec<f64> = s.psi.iter().map(|c| c.re).collect();
                let im: Vec<f64> = s.psi.iter().map(|c| c.im).collect();
                ctx.write_csv(
                    &format!("snap_{k:06}.csv"),
                    &["x", "re_psi", "im_psi", "rho_g"],
                    &[&x, &re, &im, &s.density()],
                )?;
                k += 1;
                if done == steps {
                    break;
                }
                let n = every.min(steps - done);
                it.advance(n)?;
                done += n;
            }
            ctx.manifest.drift = Some(it.drift());
        }
    }
    let d = ctx.manifest.drift.unwrap_or_default();
    ctx.line(format!("{k} snapshots, t = {:.6}", steps as f64 * dt));
    ctx.line(format!("particle-number drift {:.3e}", d.particle_number));
    ctx.line(format!("energy drift {:.3e}", d.energy));
    Ok(())
}

/// Named columns of a CSV file.
pub fn read_columns(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.clone();
    let idx = names
        .iter()
        .map(|n| {
            header
                .iter()
                .position(|h| h.trim() == *n)
                .ok_or_else(|| Error::InvalidValue { key: "column".into(), value: n.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols = vec![Vec::new(); names.len()];
    for rec in r.records() {
        let rec = rec?;
        for (c, &i) in cols.iter_mut().zip(&idx) {
            let s = rec.get(i).unwrap_or("").trim();
            c.push(s.parse().map_err(|_| Error::InvalidValue { key: names[0].into(), value: s.into() })?);
        }
    }
    Ok(cols)
}

fn input(cfg: &Config) -> Result<PathBuf> {
    cfg.get("input").map(PathBuf::from).ok_or_else(|| Error::MissingKey("input".into()))
}

fn cmd_fit(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let path = input(cfg)?;
    let column = cfg.get("column").unwrap_or("rho_s");
    let cols = read_columns(&path, &["x", column])?;
    let fit = fit_sech2_xy(&cols[0], &cols[1], None)?;
    ctx.write_json("fit.json", &fit)?;
    ctx.line(format!("amplitude  {:.10}", fit.amplitude));
    ctx.line(format!("width      {:.10}", fit.width));
    ctx.line(format!("center     {:.10}", fit.center));
    ctx.line(format!("background {:.10}", fit.background));
    ctx.line(format!("residual   {:.3e}", fit.residual));
    Ok(())
}

fn cmd_sweep(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let p = cfg.params(System::Hgpe)?;
    let vbars = cfg
        .f64_list("sweep.vbar")?
        .unwrap_or_else(|| (1..=19).map(|i| 0.05 * i as f64).collect());
    let source = if cfg.bool_or("sweep.pde", false)? { SweepSource::pde_default() } else { SweepSource::Analytic };
    let rows = contrast_sweep(&vbars, &p, source)?;
    ctx.manifest.params = Some(p);
    let col = |f: fn(&crate::measure::SweepRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    ctx.write_csv(
        "sweep.csv",
        &["vbar", "gamma", "depth_analytic", "depth_fit", "width_analytic", "width_fit"],
        &[
            &col(|r| r.vbar),
            &col(|r| r.gamma),
            &col(|r| r.depth_analytic),
            &col(|r| r.depth_fit),
            &col(|r| r.width_analytic),
            &col(|r| r.width_fit),
        ],
    )?;
    ctx.line(format!("{} rows written to sweep.csv", rows.len()));
    Ok(())
}

fn cmd_sound(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let system = cfg.system()?;
    let p = cfg.params(system)?;
    let eps = cfg.f64_or("sound.eps", 1e-3)?;
    let m = measure_sound_speed(system, &p, eps)?;
    let d = derive_groups_vbar(&p, system, 0.0)?;
    ctx.manifest.params = Some(p);
    ctx.manifest.groups = Some(d);
    ctx.write_json("sound.json", &m)?;
    ctx.line(format!("measured  {:.6}", m.speed));
    ctx.line(format!("predicted {:.6}", d.c_sound));
    ctx.line(format!("relative error {:.3e}", (m.speed - d.c_sound).abs() / d.c_sound));
    Ok(())
}

fn cmd_spinmap(cfg: &Config, ctx: &mut Ctx) -> Result<()> {
    let (x, mut rho, phi) = match cfg.get("input") {
        Some(_) => {
            let mut c = read_columns(&input(cfg)?, &["x", "rho", "phi"])?;
            let phi = c.pop().unwrap_or_default();
            let rho = c.pop().unwrap_or_default();
            (c.pop().unwrap_or_default(), rho, phi)
        }
        None => {
            let p = cfg.params(System::Hgpe)?;
            ctx.manifest.params = Some(p);
            ctx.manifest.groups = Some(derive_groups_vbar(&p, System::Hgpe, vbar(cfg)?)?);
            let x = symmetric_grid(0.5 * cfg.f64_or("grid.length", 40.0)?, cfg.usize_or("grid.n", 801)?);
            let s = hgpe_soliton(&x, 0.0, &p, vbar(cfg)?, cfg.branch()?, cfg.shape()?)?;
            let rho = s.density.real_values().into_owned();
            let phi = s.phase.profile.real_values().into_owned();
            (x, rho, phi)
        }
    };
    for r in rho.iter_mut() {
        if *r < 0.0 && *r >= -EPS_RHO {
            *r = 0.0;
        } else if *r > 1.0 && *r <= 1.0 + EPS_RHO {
            *r = 1.0;
        }
    }
    let s = to_spins(&x, &rho, &phi)?;
    let m = inplane_mag_sq(&s);
    ctx.write_csv("spins.csv", &["x", "sx", "sy", "sz", "mperp2"], &[&x, &s.sx, &s.sy, &s.sz, &m])?;
    if let Some(p) = ctx.manifest.params {
        let c = spin_chain_params(&p)?;
        ctx.write_json("chain.json", &c)?;
        ctx.line(format!("exchange {:.10} anisotropy {:.10} field {:.10}", c.exchange, c.anisotropy, c.field));
    }
    ctx.line(format!("spin length defect {:.3e}", s.length_defect()));
    if x.is_empty() {
        return Err(precondition("empty input"));
    }
    Ok(())
}
