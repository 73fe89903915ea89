//! Ermakov width `σ(t)` and displacement `γ(t)` of the point transformation.
//!
//! With a homogeneous pair `(q₁, q₂)` of `q̈ + Ω²_eff q = 0` (Wronskian `W₀`),
//! `σ = (a q₁² + b q₁q₂ + c q₂²)^{1/2}` solves `σ̈ + Ω²_eff σ = w₀²/σ³` when
//! `4ac - b² = 4w₀²/W₀²`; `γ = -𝒬` solves the driven linear equation.

use std::sync::Arc;

use crate::classical::{
    const_mass_solution, exp_mass_solution_with, ClassicalSolution, ClassicalState, ExpMassBasis,
};
use crate::error::{Error, Result};
use crate::fd::{d2_from_samples, offsets, FdOrder};
use crate::model::ModelConfig;
use crate::scalar::Scalar;
use crate::specfun::SeriesControl;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// `(cos ωt, sin ωt)` for constant mass.
    Trig,
    /// `(Re, Im)` of the Bessel solution for exponential mass.
    BesselReIm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairValues<T> {
    pub q1: T,
    pub q2: T,
    pub q1dot: T,
    pub q2dot: T,
}

impl<T: Scalar> PairValues<T> {
    pub fn wronskian(&self) -> T {
        self.q1 * self.q2dot - self.q1dot * self.q2
    }
}

#[derive(Debug, Clone)]
enum PairEngine<T> {
    Trig { omega: T },
    Bessel { basis: Arc<ExpMassBasis<T>> },
}

/// Two independent real solutions of `q̈ + (w₀² - Γ²/4 + 4Ω₀²e^{2Γt}) q = 0`.
#[derive(Debug, Clone)]
pub struct HomogeneousPair<T> {
    pub kind: PairKind,
    /// Exact Wronskian `q₁q̇₂ - q̇₁q₂`.
    pub w0: T,
    engine: PairEngine<T>,
}

pub fn homogeneous_pair<T: Scalar>(
    cfg: &ModelConfig<T>,
    ctl: &SeriesControl,
) -> Result<HomogeneousPair<T>> {
    cfg.validate()?;
    if cfg.gamma == T::zero() {
        let omega = cfg.omega_eff2(T::zero()).sqrt();
        Ok(HomogeneousPair {
            kind: PairKind::Trig,
            w0: omega,
            engine: PairEngine::Trig { omega },
        })
    } else {
        let basis = Arc::new(ExpMassBasis::new(cfg, ctl)?);
        Ok(HomogeneousPair {
            kind: PairKind::BesselReIm,
            w0: basis.wronskian(),
            engine: PairEngine::Bessel { basis },
        })
    }
}

impl<T: Scalar> HomogeneousPair<T> {
    pub fn eval(&self, t: T) -> Result<PairValues<T>> {
        match &self.engine {
            PairEngine::Trig { omega } => {
                let (s, c) = (*omega * t).sin_cos();
                Ok(PairValues {
                    q1: c,
                    q2: s,
                    q1dot: -*omega * s,
                    q2dot: *omega * c,
                })
            }
            PairEngine::Bessel { basis } => {
                let b = basis.eval(t)?;
                Ok(PairValues {
                    q1: b.qh.re,
                    q2: b.qh.im,
                    q1dot: b.qh_dot.re,
                    q2dot: b.qh_dot.im,
                })
            }
        }
    }

    fn basis(&self) -> Option<&Arc<ExpMassBasis<T>>> {
        match &self.engine {
            PairEngine::Bessel { basis } => Some(basis),
            PairEngine::Trig { .. } => None,
        }
    }

    /// Same pair multiplied by `lambda` (Wronskian scales by `lambda²`).
    pub fn scaled(&self, lambda: T) -> ScaledPair<'_, T> {
        ScaledPair { pair: self, lambda }
    }
}

/// View of a pair scaled by a constant, for superposition checks.
pub struct ScaledPair<'a, T> {
    pair: &'a HomogeneousPair<T>,
    lambda: T,
}

impl<T: Scalar> ScaledPair<'_, T> {
    pub fn eval(&self, t: T) -> Result<PairValues<T>> {
        let v = self.pair.eval(t)?;
        let l = self.lambda;
        Ok(PairValues {
            q1: l * v.q1,
            q2: l * v.q2,
            q1dot: l * v.q1dot,
            q2dot: l * v.q2dot,
        })
    }

    pub fn w0(&self) -> T {
        self.lambda * self.lambda * self.pair.w0
    }
}

/// Quadratic-form coefficients of `σ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> SigmaForm<T> {
    /// Derives `c = (b² + 4w₀²/W₀²)/(4a)`; requires `a > 0`.
    pub fn from_constraint(a: T, b: T, w0_freq: T, wronskian: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() || !b.is_finite() {
            return Err(Error::singular(
                "Ermakov quadratic form",
                format!("a = {a} must be positive for σ² to stay positive"),
            ));
        }
        if wronskian == T::zero() || !wronskian.is_finite() {
            return Err(Error::singular("homogeneous pair", format!("Wronskian {wronskian}")));
        }
        let k = T::lit(2.0) * w0_freq / wronskian;
        Ok(SigmaForm {
            a,
            b,
            c: (b * b + k * k) / (T::lit(4.0) * a),
        })
    }

    /// `(σ, σ̇)` for the trigonometric pair, via the double-angle form
    /// `σ² = ((a+c) + (a-c)cos 2ωt + b sin 2ωt)/2`, which avoids the rounding of `cos² + sin²`.
    pub fn sigma_trig(&self, omega: T, t: T) -> Result<(T, T)> {
        let half = T::lit(0.5);
        let (s2w, c2w) = (T::lit(2.0) * omega * t).sin_cos();
        let d = self.a - self.c;
        let s2 = half * ((self.a + self.c) + d * c2w + self.b * s2w);
        if !(s2 > T::zero()) || !s2.is_finite() {
            return Err(Error::singular("Ermakov width", format!("σ² = {s2}")));
        }
        let s = s2.sqrt();
        // d(σ²)/dt = ω(b cos 2ωt - (a-c) sin 2ωt)
        Ok((s, omega * (self.b * c2w - d * s2w) / (T::lit(2.0) * s)))
    }

    /// `(σ, σ̇)` from pair values.
    pub fn sigma(&self, v: &PairValues<T>) -> Result<(T, T)> {
        let s2 = self.a * v.q1 * v.q1 + self.b * v.q1 * v.q2 + self.c * v.q2 * v.q2;
        if !(s2 > T::zero()) || !s2.is_finite() {
            return Err(Error::singular("Ermakov width", format!("σ² = {s2}")));
        }
        let s = s2.sqrt();
        let two = T::lit(2.0);
        let num = two * self.a * v.q1 * v.q1dot
            + self.b * (v.q1dot * v.q2 + v.q1 * v.q2dot)
            + two * self.c * v.q2 * v.q2dot;
        Ok((s, num / (two * s)))
    }
}

/// `σ, σ̇, γ, γ̇` at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErmakovValues<T> {
    pub t: T,
    pub sigma: T,
    pub sigmadot: T,
    pub gamma: T,
    pub gammadot: T,
}

/// Complete point-transformation ingredients: `σ` from the pair and `γ = -𝒬`.
#[derive(Debug, Clone)]
pub struct ErmakovSolution<T> {
    pub cfg: ModelConfig<T>,
    pub form: SigmaForm<T>,
    pub pair: HomogeneousPair<T>,
    /// Classical solution whose negative is `γ`; `None` means `γ ≡ 0`.
    pub classical: Option<ClassicalSolution<T>>,
}

/// `σ` part only (`γ ≡ 0`).
pub fn sigma_build<T: Scalar>(
    pair: HomogeneousPair<T>,
    a: T,
    b: T,
    cfg: &ModelConfig<T>,
) -> Result<ErmakovSolution<T>> {
    let form = SigmaForm::from_constraint(a, b, cfg.w0, pair.w0)?;
    Ok(ErmakovSolution {
        cfg: *cfg,
        form,
        pair,
        classical: None,
    })
}

/// Classical solution `𝒬` whose negative is `γ`, sharing the Bessel basis of `pair`.
pub fn gamma_build<T: Scalar>(
    cfg: &ModelConfig<T>,
    ic: &ClassicalState<T>,
    pair: &HomogeneousPair<T>,
) -> Result<ClassicalSolution<T>> {
    match pair.basis() {
        None => const_mass_solution(ic, cfg),
        Some(basis) => exp_mass_solution_with(ic, cfg, basis.clone()),
    }
}

impl<T: Scalar> ErmakovSolution<T> {
    /// `σ` from `(a, b)` and `γ = -𝒬` with `𝒬` fixed by `ic` (expanding coordinates at `t = 0`).
    pub fn build(
        cfg: &ModelConfig<T>,
        a: T,
        b: T,
        ic: &ClassicalState<T>,
        ctl: &SeriesControl,
    ) -> Result<Self> {
        let pair = homogeneous_pair(cfg, ctl)?;
        let classical = gamma_build(cfg, ic, &pair)?;
        let mut sol = sigma_build(pair, a, b, cfg)?;
        sol.classical = Some(classical);
        Ok(sol)
    }

    /// The default width and displacement: `a = 1`, `b = 0`, `γ = -𝒬` with `𝒬(0) = 0`, `𝒬̇(0) = 2`.
    pub fn standard(cfg: &ModelConfig<T>, ctl: &SeriesControl) -> Result<Self> {
        let ic = ClassicalState::new(T::zero(), T::zero(), T::lit(2.0));
        Self::build(cfg, T::one(), T::zero(), &ic, ctl)
    }

    pub fn eval(&self, t: T) -> Result<ErmakovValues<T>> {
        let (pv, gq) = match self.pair.basis() {
            Some(basis) => {
                let bv = basis.eval(t)?;
                let pv = PairValues {
                    q1: bv.qh.re,
                    q2: bv.qh.im,
                    q1dot: bv.qh_dot.re,
                    q2dot: bv.qh_dot.im,
                };
                let g = match &self.classical {
                    Some(c) if c.basis().is_some() => Some(c.eval_with(t, &bv)),
                    Some(c) => Some(c.eval(t)?),
                    None => None,
                };
                (pv, g)
            }
            None => {
                let g = match &self.classical {
                    Some(c) => Some(c.eval(t)?),
                    None => None,
                };
                (self.pair.eval(t)?, g)
            }
        };
        let (sigma, sigmadot) = match &self.pair.engine {
            PairEngine::Trig { omega } => self.form.sigma_trig(*omega, t)?,
            PairEngine::Bessel { .. } => self.form.sigma(&pv)?,
        };
        let (gamma, gammadot) = gq.map_or((T::zero(), T::zero()), |s| (-s.q, -s.qdot));
        Ok(ErmakovValues {
            t,
            sigma,
            sigmadot,
            gamma,
            gammadot,
        })
    }

    pub fn sigma(&self, t: T) -> Result<T> {
        if let PairEngine::Trig { omega } = &self.pair.engine {
            return Ok(self.form.sigma_trig(*omega, t)?.0);
        }
        let v = self.pair.eval(t)?;
        Ok(self.form.sigma(&v)?.0)
    }

    pub fn gamma(&self, t: T) -> Result<T> {
        match &self.classical {
            Some(c) => Ok(-c.eval(t)?.q),
            None => Ok(T::zero()),
        }
    }

    /// Step for the residual stencils, scaled to the fastest local time scale:
    /// the oscillation rate `Ω_eff` or the phase rate `w₀/σ²` (fast where `σ` dips).
    /// Rounded down to a power of two so that the stencil abscissae `t + jh` are exact.
    pub fn residual_step(&self, t: T) -> Result<T> {
        let sig = self.sigma(t)?;
        let rate = self
            .cfg
            .omega_eff2(t)
            .abs()
            .sqrt()
            .max(self.cfg.w0 / (sig * sig))
            .max(T::lit(1e-3));
        let h = (T::lit(0.02) / rate).min(T::lit(1e-2)).max(T::lit(1e-6));
        Ok(T::lit(2.0).powi(h.log2().floor().to_i32().unwrap_or(-20)))
    }
}

/// `|σ̈ + Ω²_eff σ - w₀²/σ³|` for any candidate `σ`, with `σ̈` from a central stencil.
pub fn ermakov_residual_fn<T: Scalar, F>(
    sigma: F,
    cfg: &ModelConfig<T>,
    t: T,
    h: T,
    order: FdOrder,
) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    let s: Vec<T> = offsets(order)
        .map(|j| sigma(t + T::lit(j as f64) * h))
        .collect::<Result<_>>()?;
    let sc = s[order.half_width()];
    let w2 = cfg.w0 * cfg.w0;
    Ok((d2_from_samples(&s, h, order) + cfg.omega_eff2(t) * sc - w2 / (sc * sc * sc)).abs())
}

/// Ermakov residual with the plain three-point second difference.
pub fn ermakov_residual<T: Scalar>(sol: &ErmakovSolution<T>, t: T, h: T) -> Result<T> {
    ermakov_residual_fn(|s| sol.sigma(s), &sol.cfg, t, h, FdOrder::Second)
}

pub fn ermakov_residual_with<T: Scalar>(
    sol: &ErmakovSolution<T>,
    t: T,
    h: T,
    order: FdOrder,
) -> Result<T> {
    ermakov_residual_fn(|s| sol.sigma(s), &sol.cfg, t, h, order)
}

/// `|γ̈ + Ω²_eff γ - 2v₀Ω₀/μ³|`.
pub fn gamma_residual<T: Scalar>(
    sol: &ErmakovSolution<T>,
    t: T,
    h: T,
    order: FdOrder,
) -> Result<T> {
    let g: Vec<T> = offsets(order)
        .map(|j| sol.gamma(t + T::lit(j as f64) * h))
        .collect::<Result<_>>()?;
    let gc = g[order.half_width()];
    Ok((d2_from_samples(&g, h, order) + sol.cfg.omega_eff2(t) * gc - sol.cfg.gamma_drive(t)).abs())
}
