//! Configuration files and dataset writers.
//!
//! Numbers are written with 17 significant digits, which round-trips every
//! `f64` exactly and keeps output byte-identical between runs.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalState;
use crate::error::{Error, Result};
use crate::ermakov::ErmakovValues;
use crate::model::{FrequencyLaw, MassLaw, ModelConfig};
use crate::quantum::WaveGrid;

/// Partial configuration as read from a file or collected from flags.
/// Missing keys fall back to `m₀ = ħ = w₀ = 1`, `Γ = Ω₀ = v₀ = 0`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub m0: Option<f64>,
    pub w0: Option<f64>,
    pub hbar: Option<f64>,
    pub gamma: Option<f64>,
    pub omega0: Option<f64>,
    pub v0: Option<f64>,
    pub mass_law: Option<MassLaw>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    /// Values set in `top` win over values set here.
    pub fn overlay(&self, top: &ConfigFile) -> ConfigFile {
        ConfigFile {
            m0: top.m0.or(self.m0),
            w0: top.w0.or(self.w0),
            hbar: top.hbar.or(self.hbar),
            gamma: top.gamma.or(self.gamma),
            omega0: top.omega0.or(self.omega0),
            v0: top.v0.or(self.v0),
            mass_law: top.mass_law.or(self.mass_law),
        }
    }

    /// Fills defaults and validates. Without an explicit `mass_law` it follows `gamma`.
    pub fn resolve(&self) -> Result<ModelConfig<f64>> {
        let gamma = self.gamma.unwrap_or(0.0);
        let cfg = ModelConfig {
            m0: self.m0.unwrap_or(1.0),
            w0: self.w0.unwrap_or(1.0),
            hbar: self.hbar.unwrap_or(1.0),
            gamma,
            omega0: self.omega0.unwrap_or(0.0),
            v0: self.v0.unwrap_or(0.0),
            mass_law: self.mass_law.unwrap_or(if gamma == 0.0 {
                MassLaw::Constant
            } else {
                MassLaw::Exponential
            }),
            frequency_law: FrequencyLaw::Constant,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<ModelConfig<f64>> {
    ConfigFile::load(path)?.resolve()
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_row<W: Write + ?Sized>(w: &mut W, xs: &[f64]) -> Result<()> {
    let line: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    writeln!(w, "{}", line.join(","))?;
    Ok(())
}

fn json_array(xs: impl IntoIterator<Item = f64>) -> String {
    let v: Vec<String> = xs.into_iter().map(num).collect();
    format!("[{}]", v.join(","))
}

fn json_table<W: Write + ?Sized>(w: &mut W, format: &str, columns: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let cols: Vec<String> = columns.iter().map(|c| format!("\"{c}\"")).collect();
    writeln!(w, "{{\"format\":\"{format}\",\"columns\":[{}],\"rows\":[", cols.join(","))?;
    for (i, r) in rows.iter().enumerate() {
        let sep = if i + 1 < rows.len() { "," } else { "" };
        writeln!(w, "{}{sep}", json_array(r.iter().copied()))?;
    }
    writeln!(w, "]}}")?;
    Ok(())
}

pub const TRAJECTORY_COLUMNS: [&str; 5] = ["t", "Q", "Qdot", "calQ", "calQdot"];
pub const ERMAKOV_COLUMNS: [&str; 5] = ["t", "sigma", "sigmadot", "gamma", "gammadot"];
pub const WAVEGRID_COLUMNS: [&str; 7] = ["t", "x", "re_psi", "im_psi", "re_psit", "im_psit", "density"];

fn trajectory_rows(rows: &[(ClassicalState<f64>, ClassicalState<f64>)]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|(raw, e)| vec![raw.t, raw.q, raw.qdot, e.q, e.qdot])
        .collect()
}

fn ermakov_rows(rows: &[ErmakovValues<f64>]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|v| vec![v.t, v.sigma, v.sigmadot, v.gamma, v.gammadot])
        .collect()
}

/// Raw and expanding-coordinate states, one row per sample.
pub fn write_trajectory_csv<W: Write + ?Sized>(
    w: &mut W,
    rows: &[(ClassicalState<f64>, ClassicalState<f64>)],
) -> Result<()> {
    writeln!(w, "{}", TRAJECTORY_COLUMNS.join(","))?;
    for r in trajectory_rows(rows) {
        csv_row(w, &r)?;
    }
    Ok(())
}

pub fn write_trajectory_json<W: Write + ?Sized>(
    w: &mut W,
    rows: &[(ClassicalState<f64>, ClassicalState<f64>)],
) -> Result<()> {
    json_table(w, "trajectory-v1", &TRAJECTORY_COLUMNS, &trajectory_rows(rows))
}

pub fn write_ermakov_csv<W: Write + ?Sized>(w: &mut W, rows: &[ErmakovValues<f64>]) -> Result<()> {
    writeln!(w, "{}", ERMAKOV_COLUMNS.join(","))?;
    for r in ermakov_rows(rows) {
        csv_row(w, &r)?;
    }
    Ok(())
}

pub fn write_ermakov_json<W: Write + ?Sized>(w: &mut W, rows: &[ErmakovValues<f64>]) -> Result<()> {
    json_table(w, "ermakov-v1", &ERMAKOV_COLUMNS, &ermakov_rows(rows))
}

fn check_complete(g: &WaveGrid<f64>) -> Result<()> {
    let cells = g.nx * g.nt();
    if g.psi.len() != cells || g.psi_tilde.len() != cells || g.density.len() != cells {
        return Err(Error::GridMismatch(format!(
            "grid of {} x {} is missing psi, psi~ or density samples",
            g.nt(),
            g.nx
        )));
    }
    Ok(())
}

pub fn write_wavegrid_csv<W: Write + ?Sized>(w: &mut W, g: &WaveGrid<f64>) -> Result<()> {
    check_complete(g)?;
    writeln!(w, "{}", WAVEGRID_COLUMNS.join(","))?;
    for (it, &t) in g.t_samples.iter().enumerate() {
        let (p, q, d) = (g.row(&g.psi, it), g.row(&g.psi_tilde, it), g.row(&g.density, it));
        for ix in 0..g.nx {
            csv_row(w, &[t, g.x(ix), p[ix].re, p[ix].im, q[ix].re, q[ix].im, d[ix]])?;
        }
    }
    Ok(())
}

/// One object per time slice, each holding the five sampled arrays.
pub fn write_wavegrid_json<W: Write + ?Sized>(w: &mut W, g: &WaveGrid<f64>) -> Result<()> {
    check_complete(g)?;
    writeln!(
        w,
        "{{\"format\":\"wavegrid-v1\",\"n\":{},\"x_min\":{},\"x_max\":{},\"nx\":{},\"slices\":[",
        g.n,
        num(g.x_min),
        num(g.x_max),
        g.nx
    )?;
    for (it, &t) in g.t_samples.iter().enumerate() {
        let (p, q, d) = (g.row(&g.psi, it), g.row(&g.psi_tilde, it), g.row(&g.density, it));
        let sep = if it + 1 < g.nt() { "," } else { "" };
        writeln!(
            w,
            "{{\"t\":{},\"re_psi\":{},\"im_psi\":{},\"re_psit\":{},\"im_psit\":{},\"density\":{}}}{sep}",
            num(t),
            json_array(p.iter().map(|z| z.re)),
            json_array(p.iter().map(|z| z.im)),
            json_array(q.iter().map(|z| z.re)),
            json_array(q.iter().map(|z| z.im)),
            json_array(d.iter().copied()),
        )?;
    }
    writeln!(w, "]}}")?;
    Ok(())
}

pub const DENSITY_COLUMNS: [&str; 3] = ["t", "x", "density"];

fn check_density(g: &WaveGrid<f64>) -> Result<()> {
    if g.density.len() != g.nx * g.nt() {
        return Err(Error::GridMismatch(format!("grid of {} x {} has no density samples", g.nt(), g.nx)));
    }
    Ok(())
}

/// The bi-orthogonal density alone.
pub fn write_density_csv<W: Write + ?Sized>(w: &mut W, g: &WaveGrid<f64>) -> Result<()> {
    check_density(g)?;
    writeln!(w, "{}", DENSITY_COLUMNS.join(","))?;
    for (it, &t) in g.t_samples.iter().enumerate() {
        for (ix, &d) in g.row(&g.density, it).iter().enumerate() {
            csv_row(w, &[t, g.x(ix), d])?;
        }
    }
    Ok(())
}

pub fn write_density_json<W: Write + ?Sized>(w: &mut W, g: &WaveGrid<f64>) -> Result<()> {
    check_density(g)?;
    writeln!(
        w,
        "{{\"format\":\"density-v1\",\"n\":{},\"x_min\":{},\"x_max\":{},\"nx\":{},\"slices\":[",
        g.n,
        num(g.x_min),
        num(g.x_max),
        g.nx
    )?;
    for (it, &t) in g.t_samples.iter().enumerate() {
        let sep = if it + 1 < g.nt() { "," } else { "" };
        let d = json_array(g.row(&g.density, it).iter().copied());
        writeln!(w, "{{\"t\":{},\"density\":{d}}}{sep}", num(t))?;
    }
    writeln!(w, "]}}")?;
    Ok(())
}
