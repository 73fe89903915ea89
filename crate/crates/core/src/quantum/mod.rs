//! Quantum picture: the point transformation onto the stationary oscillator,
//! the wavefunctions `ψ_n`, their conjugates `ψ̃_n`, and verifiers.
//!
//! With `y = (μx + γ)/σ`, `ξ = sqrt(m₀w₀/ħ) y` and `Φ_n` the normalized
//! oscillator eigenfunction,
//!
//! ```text
//! ψ_n = e^{-iw₀(n+½)τ} sqrt(μ/σ) Φ_n(y)
//!       · exp[-i(m₀/ħ)((μ/σ)(𝒲_μ x²/2 + 𝒲_γ x) + ζ)] · exp[(m₀/ħ)(Ω₀x² + v₀x)]
//! ```
//!
//! and `ψ̃_n` is the same with the last factor inverted. `ζ = (μ/σ)ξ₁` and the
//! `sqrt(μ/σ)` prefactor is `exp[(m₀/ħ)μ²ξ₂]`.

use std::cell::RefCell;
use std::sync::Arc;

use rayon::prelude::*;

use crate::ermakov::{ErmakovSolution, ErmakovValues};
use crate::error::{Error, Result};
use crate::model::ModelConfig;
use crate::quad::{integrate, QuadControl};
use crate::scalar::Scalar;

mod verify;
mod wave;

pub use verify::{
    biorthonormality_gram, schrodinger_residual, Field, FnField, GramReport, ResidualReport,
    ResidualSteps, WaveField,
};
pub use wave::{
    biorthogonal_density, conjugate_wavefunction, wave_grid, wavefunction, Flavor, GridSpec,
    Wave, WaveGrid, MAX_LEVEL,
};

/// Everything the wavefunctions need at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSlice<T> {
    pub t: T,
    pub mu: T,
    pub mu_dot: T,
    pub sigma: T,
    pub sigma_dot: T,
    pub gamma: T,
    pub gamma_dot: T,
    /// `τ = ∫₀ᵗ dt'/σ²`
    pub tau: T,
    /// `ζ = (μ/σ) ξ₁`
    pub zeta: T,
}

impl<T: Scalar> TimeSlice<T> {
    pub fn y(&self, x: T) -> T {
        (self.mu * x + self.gamma) / self.sigma
    }

    /// `𝒲_μ = σμ̇ - σ̇μ`
    pub fn w_mu(&self) -> T {
        self.sigma * self.mu_dot - self.sigma_dot * self.mu
    }

    /// `𝒲_γ = σγ̇ - σ̇γ`
    pub fn w_gamma(&self) -> T {
        self.sigma * self.gamma_dot - self.sigma_dot * self.gamma
    }

    pub fn xi1(&self) -> T {
        self.sigma / self.mu * self.zeta
    }

    /// `ξ₂ = (ħ/2m₀μ²) ln(μ/σ)`; it carries no additive constant.
    pub fn xi2(&self, cfg: &ModelConfig<T>) -> T {
        cfg.hbar / (T::lit(2.0) * cfg.m0 * self.mu * self.mu) * (self.mu / self.sigma).ln()
    }
}

/// The map `(x, t) ↦ (y, τ)` built on an Ermakov solution, anchored at `t = 0`.
#[derive(Debug, Clone)]
pub struct PointTransform<T> {
    erm: Arc<ErmakovSolution<T>>,
    quad: QuadControl,
    /// `γ𝒲_γ/2σ` at `t = 0`
    anchor: T,
}

fn quad_control<T: Scalar>() -> QuadControl {
    let eps = T::epsilon().to_f64_lossy();
    QuadControl {
        abs_tol: (100.0 * eps).max(1e-14),
        rel_tol: (100.0 * eps).max(1e-13),
        ..QuadControl::default()
    }
}

impl<T: Scalar> PointTransform<T> {
    pub fn new(erm: Arc<ErmakovSolution<T>>) -> Result<Self> {
        let v0 = erm.eval(T::zero())?;
        let mut pt = PointTransform {
            erm,
            quad: quad_control::<T>(),
            anchor: T::zero(),
        };
        pt.anchor = pt.local(&v0, T::zero(), T::zero()).boundary_term();
        Ok(pt)
    }

    pub fn cfg(&self) -> &ModelConfig<T> {
        &self.erm.cfg
    }

    pub fn ermakov(&self) -> &ErmakovSolution<T> {
        &self.erm
    }

    // slice with given integrals; zeta is completed by the boundary term
    fn local(&self, v: &ErmakovValues<T>, tau: T, drift: T) -> TimeSlice<T> {
        let cfg = &self.erm.cfg;
        let mut s = TimeSlice {
            t: v.t,
            mu: cfg.mu(v.t),
            mu_dot: cfg.mu_dot(v.t),
            sigma: v.sigma,
            sigma_dot: v.sigmadot,
            gamma: v.gamma,
            gamma_dot: v.gammadot,
            tau,
            zeta: T::zero(),
        };
        s.zeta = s.boundary_term() - self.anchor + drift;
        s
    }

    /// `(dτ/dt, dζ_drift/dt) = (1/σ², v₀²/2μ² - v₀Ω₀γ/μ³)`.
    fn rates(&self, t: T) -> Result<(T, T)> {
        let v = self.erm.eval(t)?;
        let cfg = &self.erm.cfg;
        let mu = cfg.mu(t);
        let drift = cfg.v0 * cfg.v0 / (T::lit(2.0) * mu * mu)
            - cfg.v0 * cfg.omega0 * v.gamma / (mu * mu * mu);
        Ok((T::one() / (v.sigma * v.sigma), drift))
    }

    fn gap(&self, a: T, b: T) -> Result<(T, T)> {
        let tau = quad_checked(|s| self.rates(s).map(|r| r.0), a, b, &self.quad)?;
        let cfg = &self.erm.cfg;
        let drift = if cfg.v0 == T::zero() {
            T::zero()
        } else {
            quad_checked(|s| self.rates(s).map(|r| r.1), a, b, &self.quad)?
        };
        Ok((tau, drift))
    }

    pub fn slice(&self, t: T) -> Result<TimeSlice<T>> {
        if !t.is_finite() {
            return Err(Error::domain("point_map", format!("time {t}")));
        }
        let (tau, drift) = self.gap(T::zero(), t)?;
        let v = self.erm.eval(t)?;
        check_sigma(&v)?;
        Ok(self.local(&v, tau, drift))
    }

    /// Slices at many times. The integrals are accumulated over consecutive
    /// gaps of the sorted times, so nearby times share almost all the work
    /// and their differences are accurate to rounding.
    pub fn slices(&self, ts: &[T]) -> Result<Vec<TimeSlice<T>>> {
        if let Some(t) = ts.iter().find(|t| !t.is_finite()) {
            return Err(Error::domain("point_map", format!("time {t}")));
        }
        let mut knots: Vec<T> = ts.to_vec();
        knots.push(T::zero());
        knots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        knots.dedup();
        let gaps: Vec<(T, T)> = knots
            .par_windows(2)
            .map(|w| self.gap(w[0], w[1]))
            .collect::<Result<_>>()?;
        let origin = knots.iter().position(|&t| t == T::zero()).expect("0 is a knot");
        let mut acc = vec![(T::zero(), T::zero()); knots.len()];
        for i in origin + 1..knots.len() {
            acc[i] = (acc[i - 1].0 + gaps[i - 1].0, acc[i - 1].1 + gaps[i - 1].1);
        }
        for i in (0..origin).rev() {
            acc[i] = (acc[i + 1].0 - gaps[i].0, acc[i + 1].1 - gaps[i].1);
        }
        let at_knots: Vec<TimeSlice<T>> = knots
            .par_iter()
            .zip(acc.par_iter())
            .map(|(&t, &(tau, drift))| {
                let v = self.erm.eval(t)?;
                check_sigma(&v)?;
                Ok(self.local(&v, tau, drift))
            })
            .collect::<Result<_>>()?;
        Ok(ts
            .iter()
            .map(|t| {
                let i = knots
                    .binary_search_by(|k| k.partial_cmp(t).expect("finite"))
                    .expect("every time is a knot");
                at_knots[i]
            })
            .collect())
    }
}

impl<T: Scalar> TimeSlice<T> {
    fn boundary_term(&self) -> T {
        self.gamma * self.w_gamma() / (T::lit(2.0) * self.sigma)
    }
}

fn check_sigma<T: Scalar>(v: &ErmakovValues<T>) -> Result<()> {
    if v.sigma > T::zero() && v.sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::singular("point_map", format!("sigma = {} at t = {}", v.sigma, v.t)))
    }
}

/// Adaptive quadrature of a fallible integrand; the first failure is reported.
fn quad_checked<T: Scalar, F: Fn(T) -> Result<T>>(
    f: F,
    a: T,
    b: T,
    ctl: &QuadControl,
) -> Result<T> {
    let fail = RefCell::new(None);
    let r = integrate(
        |s| match f(s) {
            Ok(v) => v,
            Err(e) => {
                fail.borrow_mut().get_or_insert(e);
                T::nan()
            }
        },
        a,
        b,
        ctl,
    );
    if let Some(e) = fail.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// `(ξ₁(t), ξ₂(t))`.
pub fn phase_integrals<T: Scalar>(pt: &PointTransform<T>, t: T) -> Result<(T, T)> {
    let s = pt.slice(t)?;
    Ok((s.xi1(), s.xi2(pt.cfg())))
}

/// Convenience constructor for the transform of an owned Ermakov solution.
pub fn point_map<T: Scalar>(erm: ErmakovSolution<T>) -> Result<PointTransform<T>> {
    PointTransform::new(Arc::new(erm))
}
