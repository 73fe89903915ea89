//! Acceptance checks for the whole library, each against an independent
//! oracle or invariant, with fixed tolerances.

pub mod oracle;
mod props;

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classical::{
    bessel_homogeneous, const_mass_solution, exp_mass_solution, expanding_transform,
    integrate_numeric, ClassicalState, Direction,
};
use crate::ermakov::{homogeneous_pair, ErmakovSolution};
use crate::error::Result;
use crate::fd::{d1, d2_from_samples, offsets, FdOrder};
use crate::model::ModelConfig;
use crate::quad::pairwise_sum;
use crate::quantum::{
    biorthonormality_gram, point_map, schrodinger_residual, wave_grid, Flavor, GridSpec,
    PointTransform, ResidualSteps, WaveField,
};
use crate::specfun::{bessel_j, gamma_complex, hyp1f2, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Below(f64),
    Above(f64),
    Zero,
}

/// One measured quantity and the bound it must respect.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub label: String,
    pub value: f64,
    pub bound: Bound,
    pub passed: bool,
    /// Set for a bound the exact solution is known not to meet.
    pub known_failure: Option<&'static str>,
}

impl Item {
    pub fn below(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Item {
            label: label.into(),
            value,
            bound: Bound::Below(limit),
            passed: value < limit,
            known_failure: None,
        }
    }

    pub fn above(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Item {
            label: label.into(),
            value,
            bound: Bound::Above(limit),
            passed: value > limit,
            known_failure: None,
        }
    }

    /// Exactly zero, for identities that hold bit for bit.
    pub fn zero(label: impl Into<String>, value: f64) -> Self {
        Item {
            label: label.into(),
            value,
            bound: Bound::Zero,
            passed: value == 0.0,
            known_failure: None,
        }
    }

    fn known(mut self, why: &'static str) -> Self {
        self.known_failure = Some(why);
        self
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = match self.bound {
            Bound::Below(l) => format!("< {l:e}"),
            Bound::Above(l) => format!("> {l:e}"),
            Bound::Zero => "exactly 0".to_string(),
        };
        write!(f, "{} = {:.3e} ({bound})", self.label, self.value)?;
        if !self.passed {
            write!(f, " FAIL")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Ermakov,
    Quantum,
    Specfun,
    Properties,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        Some(match s {
            "all" => vec![
                Suite::Classical,
                Suite::Ermakov,
                Suite::Quantum,
                Suite::Specfun,
                Suite::Properties,
            ],
            "classical" => vec![Suite::Classical],
            "ermakov" => vec![Suite::Ermakov],
            "quantum" => vec![Suite::Quantum],
            "specfun" => vec![Suite::Specfun],
            "properties" => vec![Suite::Properties],
            _ => return None,
        })
    }
}

/// Which checks to run: by suite and, for checks defined per damping
/// constant, by `Γ ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub suites: Vec<Suite>,
    pub gammas: Vec<f64>,
}

impl Default for Selection {
    fn default() -> Self {
        Selection {
            suites: Suite::parse("all").expect("known suite"),
            gammas: vec![0.0, 1.0],
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: u8,
    pub title: &'static str,
    pub items: Vec<Item>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.items.iter().all(|i| i.passed)
    }

    /// Failed, but only on bounds marked as known failures.
    pub fn known_failure_only(&self) -> bool {
        !self.passed()
            && self.error.is_none()
            && self.items.iter().all(|i| i.passed || i.known_failure.is_some())
    }

    /// `PASS`/`FAIL`, the title, then every measured item on one line.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let body = match &self.error {
            Some(e) => format!("error: {e}"),
            None => self.items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "),
        };
        let mut s = format!(
            "[{status}] {:>2} {} ({:.2} s): {body}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        );
        for i in self.items.iter().filter(|i| !i.passed) {
            if let Some(why) = i.known_failure {
                s.push_str(&format!(" [known: {why}]"));
            }
        }
        s
    }
}

type CheckFn = fn(&[f64]) -> Result<Vec<Item>>;

struct Check {
    id: u8,
    title: &'static str,
    suite: Suite,
    /// Damping constants the check is defined for.
    gammas: &'static [f64],
    run: CheckFn,
}

const CHECKS: [Check; 10] = [
    Check { id: 1, title: "closed orbit, constant mass", suite: Suite::Classical, gammas: &[0.0], run: closed_orbit },
    Check { id: 2, title: "exponential-mass closed form vs RK4", suite: Suite::Classical, gammas: &[1.0], run: exp_mass_vs_rk4 },
    Check { id: 3, title: "small-coupling Bessel limit", suite: Suite::Classical, gammas: &[1.0], run: bessel_limit },
    Check { id: 4, title: "Wronskian invariants", suite: Suite::Ermakov, gammas: &[0.0, 1.0], run: wronskians },
    Check { id: 5, title: "Ermakov and displacement residuals", suite: Suite::Ermakov, gammas: &[0.0, 1.0], run: ermakov_certificate },
    Check { id: 6, title: "Schrodinger residual", suite: Suite::Quantum, gammas: &[0.0, 1.0], run: schrodinger },
    Check { id: 7, title: "bi-orthonormality", suite: Suite::Quantum, gammas: &[0.0, 1.0], run: biorthonormality },
    Check { id: 8, title: "Hermitian limit", suite: Suite::Quantum, gammas: &[0.0, 1.0], run: hermitian_limit },
    Check { id: 9, title: "special functions vs oracles", suite: Suite::Specfun, gammas: &[0.0, 1.0], run: special_functions },
    Check { id: 10, title: "randomized property suites", suite: Suite::Properties, gammas: &[0.0, 1.0], run: props::run },
];

/// Runs the selected checks in order; a check whose damping constants are all
/// deselected is skipped.
pub fn run(sel: &Selection) -> Vec<CheckReport> {
    CHECKS
        .iter()
        .filter(|c| sel.suites.contains(&c.suite))
        .filter_map(|c| {
            let gammas: Vec<f64> = c.gammas.iter().copied().filter(|g| sel.gammas.contains(g)).collect();
            if gammas.is_empty() {
                return None;
            }
            let start = Instant::now();
            let out = (c.run)(&gammas);
            let elapsed = start.elapsed();
            let (items, error) = match out {
                Ok(items) => (items, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            Some(CheckReport {
                id: c.id,
                title: c.title,
                items,
                error,
                elapsed,
            })
        })
        .collect()
}

fn reference(gamma: f64) -> Result<ModelConfig<f64>> {
    ModelConfig::units(1.0, gamma, 1.5, 2.0)
}

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

/// `max` that keeps NaN, so a broken evaluation cannot pass a bound.
pub(crate) fn worse(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// `min` that keeps NaN.
fn least(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, worse)
}

fn closed_orbit(_: &[f64]) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = reference(0.0)?;
    let omega = cfg.omega_eff2(0.0).sqrt();
    let period = 2.0 * std::f64::consts::PI / omega;
    let mut items = Vec::new();
    for qd0 in [2.0, 4.0] {
        let ic = ClassicalState::new(0.0, 0.0, qd0);
        let sol = const_mass_solution(&ic, &cfg)?;
        let end = sol.eval(period)?;
        items.push(Item::below(
            format!("closure, closed form, ic (0,{qd0})"),
            (end.q - ic.q).hypot(end.qdot - ic.qdot),
            1e-6,
        ));
        let n = 20_000;
        let traj = integrate_numeric(&ic, &cfg, period, period / n as f64)?;
        let last = traj[n];
        items.push(Item::below(
            format!("closure, RK4, ic (0,{qd0})"),
            (last.q - ic.q).hypot(last.qdot - ic.qdot),
            1e-6,
        ));
        // the mean over one period of a displaced cosine is its centre
        let qs: Vec<f64> = traj[..n].iter().map(|s| s.q).collect();
        let centre = pairwise_sum(&qs) / n as f64;
        items.push(Item::below(format!("|centre + 0.6|, ic (0,{qd0})"), (centre + 0.6).abs(), 1e-9));
    }
    items.push(Item::below("runtime [s]", start.elapsed().as_secs_f64(), 1.0));
    Ok(items)
}

fn exp_mass_vs_rk4(_: &[f64]) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = reference(1.0)?;
    let ic = ClassicalState::new(0.0, 0.0, 2.0);
    let sol = exp_mass_solution(&ic, &cfg, &ctl())?;
    let step = 1e-4;
    let raw0 = expanding_transform(&ic, &cfg, Direction::Inverse);
    let traj = integrate_numeric(&raw0, &cfg, 3.0, step)?;
    let every = 50;
    let picks: Vec<ClassicalState<f64>> = traj
        .iter()
        .step_by(every)
        .skip(1)
        .map(|s| expanding_transform(s, &cfg, Direction::Forward))
        .collect();
    let ts: Vec<f64> = picks.iter().map(|s| s.t).collect();
    let closed = sol.sample(&ts)?;
    let dev = max_of(picks.iter().zip(&closed).map(|(r, (_, c))| (r.q - c.q).abs()));
    let mut items = vec![Item::below("max |dQ| vs RK4 on (0,3]", dev, 1e-6)];
    // the orbit never comes back to its initial state
    let gap = closed
        .iter()
        .filter(|(_, c)| c.t >= 0.5)
        .map(|(_, c)| (c.q - ic.q).hypot(c.qdot - ic.qdot))
        .fold(f64::INFINITY, least);
    items.push(Item::above("min distance to initial state, t in [0.5,3]", gap, 1e-2));
    let end = closed.last().expect("samples").1;
    items.push(
        Item::above("|dQ/dt(3)|", end.qdot.abs(), ic.qdot.abs())
            .known("exact solution is near a velocity turning point at t = 3"),
    );
    let envelope = max_of(closed.iter().filter(|(_, c)| c.t >= 2.0).map(|(_, c)| c.qdot.abs()));
    items.push(Item::above("max |dQ/dt| on [2,3]", envelope, ic.qdot.abs()));
    items.push(Item::below("runtime [s]", start.elapsed().as_secs_f64(), 5.0));
    Ok(items)
}

fn bessel_limit(_: &[f64]) -> Result<Vec<Item>> {
    let cfg = ModelConfig::units(1.0, 1.0, 1e-6, 0.0)?;
    let d = cfg.ck_derived()?;
    let nu_g = oracle::ln_gamma(Complex64::new(1.0, d.lambda)).exp();
    let freq = (cfg.w0 * cfg.w0 - cfg.gamma * cfg.gamma / 4.0).sqrt();
    let dev = (0..=40)
        .into_par_iter()
        .map(|i| {
            let t = 0.05 * i as f64;
            let (q1, _) = bessel_homogeneous(t, &cfg)?;
            let want = Complex64::new(0.0, freq * t).exp() / nu_g;
            Ok((q1 - want).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(vec![Item::below("max |Q_h1 - e^{i w t}/Gamma(1+i Lambda)| on [0,2]", max_of(dev), 1e-4)])
}

fn wronskians(gammas: &[f64]) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for &g in gammas {
        let cfg = reference(g)?;
        let pair = homogeneous_pair(&cfg, &ctl())?;
        let (expected, t_end) = if g == 0.0 {
            ((cfg.w0 * cfg.w0 + 4.0 * cfg.omega0 * cfg.omega0).sqrt(), 10.0)
        } else {
            let l = cfg.ck_derived()?.lambda;
            (g / std::f64::consts::PI * (std::f64::consts::PI * l).sinh(), 3.0)
        };
        let n = 1000;
        let ws = (0..n)
            .into_par_iter()
            .map(|i| Ok(pair.eval(t_end * i as f64 / (n - 1) as f64)?.wronskian()))
            .collect::<Result<Vec<f64>>>()?;
        let mean = pairwise_sum(&ws) / n as f64;
        let var: Vec<f64> = ws.iter().map(|w| (w - mean) * (w - mean)).collect();
        let sd = (pairwise_sum(&var) / n as f64).sqrt();
        items.push(Item::below(format!("Gamma={g}: stddev/mean"), sd / mean.abs(), 1e-8));
        items.push(Item::below(
            format!("Gamma={g}: |mean - W0|/W0"),
            (mean - expected).abs() / expected.abs(),
            1e-8,
        ));
        // derivatives by differencing instead of the termwise series
        let h = 1.0 / 1024.0;
        let fd = (0..50)
            .into_par_iter()
            .map(|i| {
                let t = t_end * (i as f64 + 0.5) / 50.0;
                let q1 = |s: f64| pair.eval(s).map(|v| v.q1).unwrap_or(f64::NAN);
                let q2 = |s: f64| pair.eval(s).map(|v| v.q2).unwrap_or(f64::NAN);
                let v = pair.eval(t)?;
                let w = v.q1 * d1(q2, t, h, FdOrder::Eighth) - d1(q1, t, h, FdOrder::Eighth) * v.q2;
                Ok((w - expected).abs() / expected.abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        items.push(Item::below(format!("Gamma={g}: differenced Wronskian"), max_of(fd), 1e-8));
    }
    Ok(items)
}

fn ermakov_certificate(gammas: &[f64]) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let order = FdOrder::Eighth;
    for &g in gammas {
        let sol = ErmakovSolution::standard(&reference(g)?, &ctl())?;
        let cfg = sol.cfg;
        let rows = (0..=200)
            .into_par_iter()
            .map(|i| {
                let t = -5.0 + 0.05 * i as f64;
                let h = sol.residual_step(t)?;
                let v = offsets(order)
                    .map(|j| sol.eval(t + j as f64 * h))
                    .collect::<Result<Vec<_>>>()?;
                let c = v[order.half_width()];
                let sig: Vec<f64> = v.iter().map(|v| v.sigma).collect();
                let gam: Vec<f64> = v.iter().map(|v| v.gamma).collect();
                let w2 = cfg.omega_eff2(t);
                let rs = (d2_from_samples(&sig, h, order) + w2 * c.sigma
                    - cfg.w0 * cfg.w0 / c.sigma.powi(3))
                .abs();
                let rg = (d2_from_samples(&gam, h, order) + w2 * c.gamma - cfg.gamma_drive(t)).abs();
                let min_sig = sig.iter().copied().fold(f64::INFINITY, least);
                Ok((rs, rg, min_sig))
            })
            .collect::<Result<Vec<_>>>()?;
        items.push(Item::below(format!("Gamma={g}: Ermakov residual on [-5,5]"), max_of(rows.iter().map(|r| r.0)), 1e-6));
        items.push(Item::below(format!("Gamma={g}: displacement residual on [-5,5]"), max_of(rows.iter().map(|r| r.1)), 1e-6));
        let scan = (0..=2000)
            .into_par_iter()
            .map(|i| sol.sigma(-5.0 + 0.005 * i as f64))
            .collect::<Result<Vec<f64>>>()?;
        let min_sig = scan.into_iter().chain(rows.iter().map(|r| r.2)).fold(f64::INFINITY, least);
        items.push(Item::above(format!("Gamma={g}: min sigma on [-5,5]"), min_sig, 0.0));
    }
    Ok(items)
}

fn standard_transform(g: f64) -> Result<PointTransform<f64>> {
    point_map(ErmakovSolution::standard(&reference(g)?, &ctl())?)
}

fn schrodinger(gammas: &[f64]) -> Result<Vec<Item>> {
    let start = Instant::now();
    let mut items = Vec::new();
    let xs: Vec<f64> = (0..512).map(|i| -8.0 + 16.0 * i as f64 / 511.0).collect();
    let ts: Vec<f64> = (0..256).map(|i| 2.0 * i as f64 / 255.0).collect();
    for &g in gammas {
        let pt = standard_transform(g)?;
        for n in 0..=2 {
            let field = WaveField::new(&pt, n, Flavor::Psi)?;
            let r = schrodinger_residual(&field, pt.cfg(), &xs, &ts, &ResidualSteps::default())?;
            items.push(Item::below(format!("Gamma={g} n={n}: residual"), r.max, 1e-4));
        }
    }
    items.push(Item::below("runtime [s]", start.elapsed().as_secs_f64(), 60.0));
    Ok(items)
}

fn biorthonormality(gammas: &[f64]) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    for &g in gammas {
        let pt = standard_transform(g)?;
        let reps = [0.0, 0.5, 1.5]
            .par_iter()
            .map(|&t| biorthonormality_gram(&pt, 4, t))
            .collect::<Result<Vec<_>>>()?;
        for r in &reps[1..] {
            items.push(Item::below(format!("Gamma={g} t={}: max|G-I|", r.t), r.deviation(), 1e-6));
            items.push(Item::below(format!("Gamma={g} t={}: |G01|", r.t), r.matrix[0][1].norm(), 1e-6));
        }
        let drift = max_of(reps.iter().map(|r| r.distance(&reps[0])));
        items.push(Item::below(format!("Gamma={g}: max|G(t)-G(0)|"), drift, 1e-6));
        let mass = max_of(reps.iter().flat_map(|r| r.density_integrals.iter().map(|m| (m - 1.0).abs())));
        items.push(Item::below(format!("Gamma={g}: max|int P_n - 1|"), mass, 1e-6));
        let edge = max_of(reps.iter().map(|r| if r.truncated { r.boundary } else { 0.0 }));
        items.push(Item::below(format!("Gamma={g}: untruncated edge"), edge, 1e-10));
    }
    Ok(items)
}

/// `H_n` from its explicit sum, `n! Σ (-1)^m (2x)^{n-2m} / (m!(n-2m)!)`.
fn hermite_explicit(n: u32, x: f64) -> f64 {
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    (0..=n / 2)
        .map(|m| {
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            s * fact(n) * (2.0 * x).powi((n - 2 * m) as i32) / (fact(m) * fact(n - 2 * m))
        })
        .sum()
}

fn hermitian_limit(gammas: &[f64]) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let rest = ClassicalState::new(0.0, 0.0, 0.0);
    for &g in gammas {
        let cfg = ModelConfig::units(1.0, g, 0.0, 0.0)?;
        let pt = point_map(ErmakovSolution::build(&cfg, 1.0, 0.0, &rest, &ctl())?)?;
        let spec = GridSpec::new(-6.0, 6.0, 241, vec![0.0, 0.7, 1.9])?;
        let mut flavour_gap = 0.0f64;
        let mut density_gap = 0.0f64;
        let mut stationary_gap = 0.0f64;
        for n in 0..=4 {
            let grid = wave_grid(n, &pt, &spec)?;
            for (i, (p, q)) in grid.psi.iter().zip(&grid.psi_tilde).enumerate() {
                flavour_gap = worse(flavour_gap, (p - q).norm());
                let d = grid.density[i];
                density_gap = worse(density_gap, (d - p.norm_sqr()).abs() / p.norm_sqr().max(1e-300));
                if g == 0.0 {
                    let (it, ix) = (i / grid.nx, i % grid.nx);
                    let (t, x) = (grid.t_samples[it], grid.x(ix));
                    let e = cfg.w0 * (n as f64 + 0.5);
                    let norm = (1.0 / std::f64::consts::PI).sqrt().sqrt()
                        / (2f64.powi(n as i32) * (1..=n).map(f64::from).product::<f64>()).sqrt();
                    let phi = norm * (-x * x / 2.0).exp() * hermite_explicit(n, x);
                    let want = Complex64::new(0.0, -e * t).exp() * phi;
                    stationary_gap = worse(stationary_gap, (p - want).norm());
                }
            }
        }
        items.push(Item::below(format!("Gamma={g}: max|psi~ - psi|"), flavour_gap, 1e-14));
        items.push(Item::below(format!("Gamma={g}: max rel |P - |psi|^2|"), density_gap, 1e-14));
        if g == 0.0 {
            items.push(Item::below("Gamma=0: max|psi - e^{-iEt} Phi_n|", stationary_gap, 1e-12));
        } else {
            // the conventional damped oscillator equation is still solved
            let xs: Vec<f64> = (0..64).map(|i| -6.0 + 12.0 * i as f64 / 63.0).collect();
            let ts: Vec<f64> = (0..16).map(|i| 2.0 * i as f64 / 15.0).collect();
            let field = WaveField::new(&pt, 1, Flavor::Psi)?;
            let r = schrodinger_residual(&field, &cfg, &xs, &ts, &ResidualSteps::default())?;
            items.push(Item::below(format!("Gamma={g}: residual n=1"), r.max, 1e-4));
        }
    }
    Ok(items)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn special_functions(_: &[f64]) -> Result<Vec<Item>> {
    let c = ctl();
    let cfg = reference(1.0)?;
    let d = cfg.ck_derived()?;
    let l = d.lambda;
    let i = Complex64::new(0.0, 1.0);
    let ts: Vec<f64> = (0..=40).map(|k| -5.0 + 0.25 * k as f64).collect();
    let j = ts
        .par_iter()
        .map(|&t| {
            let x = 2.0 * d.omega_bar * (cfg.gamma * t).exp();
            let mut e = 0.0f64;
            for nu in [i * l, -i * l] {
                e = worse(e, rel(bessel_j(nu, x, &c)?, oracle::bessel_j(nu, x)));
            }
            Ok(e)
        })
        .collect::<Result<Vec<f64>>>()?;
    let spot = rel(bessel_j(i * 0.866_025_4, 3.0, &c)?, oracle::bessel_j(i * 0.866_025_4, 3.0));
    let (a, b1, b2) = (0.75 - i * (l / 2.0), 1.0 - i * l, 1.75 - i * (l / 2.0));
    let f = ts
        .par_iter()
        .map(|&t| {
            let z = -(d.omega_bar * (cfg.gamma * t).exp()).powi(2);
            Ok(rel(hyp1f2(a, b1, b2, z, &c)?, oracle::hyp1f2(a, b1, b2, z)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut g = 0.0f64;
    for y in [0.25, 0.866, 2.0, l] {
        let v = gamma_complex(Complex64::new(1.0, y))?.norm_sqr();
        let want = std::f64::consts::PI * y / (std::f64::consts::PI * y).sinh();
        g = worse(g, (v - want).abs() / want);
    }
    Ok(vec![
        Item::below("J_{+-i Lambda} rel. error, x in 3 e^{[-5,5]}", worse(max_of(j), spot), 1e-10),
        Item::below("1F2 rel. error, z in -2.25 e^{[-10,10]}", max_of(f), 1e-10),
        Item::below("|Gamma(1+iy)|^2 identity", g, 1e-10),
    ])
}
