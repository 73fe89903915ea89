//! `nhosc`: datasets for the non-Hermitian Caldirola–Kanai oscillator and the
//! verification suite.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use nhosc::classical::{closed_form, expanding_transform, integrate_numeric, Direction};
use nhosc::io::{self, ConfigFile};
use nhosc::model::MassLaw;
use nhosc::quantum::{point_map, wave_grid, GridSpec};
use nhosc::verify::{self, Selection, Suite};
use nhosc::{ClassicalState64, Error, ErmakovSolution64, ModelConfig64, Result, SeriesControl};

const MAX_SAMPLES: usize = 10_000_000;
const MAX_NX: usize = 1 << 16;
const MAX_NT: usize = 1 << 14;
const THREADS_VAR: &str = "OSC_SEED_THREADS";

#[derive(Parser, Debug)]
#[command(name = "nhosc", version, about = "Exact solutions of non-Hermitian Caldirola-Kanai oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical trajectory: columns t,Q,Qdot,calQ,calQdot
    Classical {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: TimeWindow,
        /// Initial data (calQ(0), calQdot(0)) in expanding coordinates
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,2")]
        ic: (f64, f64),
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Ermakov width and displacement: columns t,sigma,sigmadot,gamma,gammadot
    Ermakov {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        window: TimeWindow,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        output: Output,
    },
    /// psi_n, its bi-orthogonal partner and the density on a grid
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Bi-orthogonal density only: columns t,x,density
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        transform: TransformArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Runs the verification checks and prints a pass/fail table
    Verify {
        /// all, classical, ermakov, quantum, specfun or properties
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict damping-dependent checks to one damping constant (0 or 1)
        #[arg(long)]
        gamma: Option<f64>,
    },
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// JSON configuration file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mass at t = 0 [default: 1]
    #[arg(long)]
    m0: Option<f64>,
    /// Frequency of the stationary oscillator [default: 1]
    #[arg(long)]
    w0: Option<f64>,
    /// [default: 1]
    #[arg(long)]
    hbar: Option<f64>,
    /// Damping constant of the mass m0 exp(-gamma t) [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Non-Hermitian coupling of the x p terms [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    omega0: Option<f64>,
    /// Non-Hermitian coupling of the p terms [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<f64>,
    /// Inferred from gamma when absent
    #[arg(long, value_enum)]
    mass_law: Option<MassLawArg>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum MassLawArg {
    Constant,
    Exponential,
}

impl ModelArgs {
    fn resolve(&self) -> Result<ModelConfig64> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let flags = ConfigFile {
            m0: self.m0,
            w0: self.w0,
            hbar: self.hbar,
            gamma: self.gamma,
            omega0: self.omega0,
            v0: self.v0,
            mass_law: self.mass_law.map(|m| match m {
                MassLawArg::Constant => MassLaw::Constant,
                MassLawArg::Exponential => MassLaw::Exponential,
            }),
        };
        file.overlay(&flags).resolve()
    }
}

#[derive(Args, Debug, Clone)]
struct TimeWindow {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
}

impl TimeWindow {
    fn count(&self) -> Result<usize> {
        if !(self.t0.is_finite() && self.t1.is_finite() && self.t1 > self.t0) {
            return Err(Error::Config(format!("empty time window [{}, {}]", self.t0, self.t1)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        let steps = ((self.t1 - self.t0) / self.dt - 1e-9).ceil();
        if steps + 1.0 > MAX_SAMPLES as f64 {
            return Err(Error::Config(format!("{steps} time steps exceed the limit {MAX_SAMPLES}")));
        }
        Ok(steps as usize)
    }

    /// `t0, t0 + dt, ...` up to and including `t1`.
    fn times(&self) -> Result<Vec<f64>> {
        let n = self.count()?;
        Ok((0..=n).map(|i| (self.t0 + i as f64 * self.dt).min(self.t1)).collect())
    }
}

#[derive(Args, Debug, Clone)]
struct TransformArgs {
    /// Coefficient of q1^2 in sigma^2; the q2^2 coefficient follows from the Wronskian
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    a: f64,
    /// Coefficient of q1 q2 in sigma^2
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    /// Initial data of the classical solution whose negative is the displacement
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,2")]
    ic: (f64, f64),
}

impl TransformArgs {
    fn build(&self, cfg: &ModelConfig64) -> Result<ErmakovSolution64> {
        let ic = ClassicalState64::new(0.0, self.ic.0, self.ic.1);
        ErmakovSolution64::build(cfg, self.a, self.b, &ic, &SeriesControl::default())
    }
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Quantum number
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = -8.0, allow_hyphen_values = true)]
    x_min: f64,
    #[arg(long, default_value_t = 8.0, allow_hyphen_values = true)]
    x_max: f64,
    #[arg(long, default_value_t = 512)]
    nx: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long, default_value_t = 64)]
    nt: usize,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec<f64>> {
        if self.nx > MAX_NX || self.nt > MAX_NT {
            return Err(Error::Config(format!(
                "grid {} x {} exceeds the limits nx <= {MAX_NX}, nt <= {MAX_NT}",
                self.nt, self.nx
            )));
        }
        GridSpec::uniform(self.x_min, self.x_max, self.nx, self.t0, self.t1, self.nt)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    /// Closed-form solution
    Closed,
    /// Fixed-step RK4 with step dt
    Rk4,
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn write(&self, f: impl FnOnce(&mut dyn Write, Format) -> Result<()>) -> Result<()> {
        match &self.out {
            Some(p) => {
                let file = File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                let mut w = BufWriter::new(file);
                f(&mut w, self.format)?;
                w.flush()?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut w = BufWriter::new(PipeWatch { inner: stdout.lock(), closed: false });
                let res = f(&mut w, self.format).and_then(|_| w.flush().map_err(Error::from));
                // a reader that stops early (`| head`) is not a failure
                if res.is_err() && w.get_ref().closed {
                    return Ok(());
                }
                res?;
            }
        }
        Ok(())
    }
}

struct PipeWatch<W> {
    inner: W,
    closed: bool,
}

impl<W: Write> PipeWatch<W> {
    fn note<T>(&mut self, r: std::io::Result<T>) -> std::io::Result<T> {
        if let Err(e) = &r {
            self.closed |= e.kind() == std::io::ErrorKind::BrokenPipe;
        }
        r
    }
}

impl<W: Write> Write for PipeWatch<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let r = self.inner.write(buf);
        self.note(r)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        let r = self.inner.flush();
        self.note(r)
    }
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got '{s}'"));
    }
    let p = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("'{v}' is not a finite number"))
    };
    Ok((p(parts[0])?, p(parts[1])?))
}

fn classical(model: &ModelArgs, window: &TimeWindow, ic: (f64, f64), method: Method, output: &Output) -> Result<()> {
    let cfg = model.resolve()?;
    let ic = ClassicalState64::new(0.0, ic.0, ic.1);
    let rows = match method {
        Method::Closed => closed_form(&ic, &cfg, &SeriesControl::default())?.sample(&window.times()?)?,
        Method::Rk4 => {
            if window.t0 != 0.0 {
                return Err(Error::Config("rk4 integrates from t0 = 0".into()));
            }
            window.count()?;
            let raw0 = expanding_transform(&ic, &cfg, Direction::Inverse);
            integrate_numeric(&raw0, &cfg, window.t1, window.dt)?
                .into_iter()
                .map(|s| (s, expanding_transform(&s, &cfg, Direction::Forward)))
                .collect()
        }
    };
    output.write(|w, f| match f {
        Format::Csv => io::write_trajectory_csv(w, &rows),
        Format::Json => io::write_trajectory_json(w, &rows),
    })
}

fn ermakov(model: &ModelArgs, window: &TimeWindow, transform: &TransformArgs, output: &Output) -> Result<()> {
    let cfg = model.resolve()?;
    let sol = transform.build(&cfg)?;
    let rows = window
        .times()?
        .par_iter()
        .map(|&t| sol.eval(t))
        .collect::<Result<Vec<_>>>()?;
    output.write(|w, f| match f {
        Format::Csv => io::write_ermakov_csv(w, &rows),
        Format::Json => io::write_ermakov_json(w, &rows),
    })
}

fn grid(model: &ModelArgs, grid: &GridArgs, transform: &TransformArgs, output: &Output, density_only: bool) -> Result<()> {
    let cfg = model.resolve()?;
    let spec = grid.spec()?;
    let pt = point_map(transform.build(&cfg)?)?;
    let g = wave_grid(grid.n, &pt, &spec)?;
    output.write(|w, f| match (f, density_only) {
        (Format::Csv, false) => io::write_wavegrid_csv(w, &g),
        (Format::Json, false) => io::write_wavegrid_json(w, &g),
        (Format::Csv, true) => io::write_density_csv(w, &g),
        (Format::Json, true) => io::write_density_json(w, &g),
    })
}

/// Prints the table; `Ok(true)` when every selected check passed.
fn run_verify(suite: &str, gamma: Option<f64>) -> Result<bool> {
    let suites = Suite::parse(suite).ok_or_else(|| {
        Error::Config(format!(
            "unknown suite '{suite}' (expected all, classical, ermakov, quantum, specfun or properties)"
        ))
    })?;
    let gammas = match gamma {
        None => vec![0.0, 1.0],
        Some(g) if g == 0.0 || g == 1.0 => vec![g],
        Some(g) => return Err(Error::Config(format!("verify is defined for gamma 0 or 1, got {g}"))),
    };
    let reports = verify::run(&Selection { suites, gammas });
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed);
    Ok(failed == 0)
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_VAR} must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("{THREADS_VAR}: {e}")))
}

fn execute(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    match &cli.command {
        Command::Classical { model, window, ic, method, output } => classical(model, window, *ic, *method, output)?,
        Command::Ermakov { model, window, transform, output } => ermakov(model, window, transform, output)?,
        Command::Wavefunction { model, grid: g, transform, output } => grid(model, g, transform, output, false)?,
        Command::Density { model, grid: g, transform, output } => grid(model, g, transform, output, true)?,
        Command::Verify { suite, gamma } => return run_verify(suite, *gamma),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let code = e.exit_code();
            eprintln!("nhosc: error[{}] (exit {code}): {e}", e.kind());
            ExitCode::from(code as u8)
        }
    }
}
