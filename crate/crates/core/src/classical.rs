//! Classical trajectories of the non-Hermitian Caldirola–Kanai oscillator.
//!
//! Initial data for the closed-form solutions are given in expanding
//! coordinates `(𝒬(0), 𝒬̇(0))`; since `𝒬 = e^{-Γt/2} Q` the positions agree at
//! `t = 0` and only the velocities differ (by `Γ Q(0)/2`).

use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{CkDerived, ModelConfig};
use crate::scalar::{cplx, Scalar, C};
use crate::specfun::{
    bessel_series, gamma_complex, hyp1f2_series, rgamma_complex, SeriesControl, SeriesVar,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState<T> {
    pub t: T,
    pub q: T,
    pub qdot: T,
}

impl<T: Scalar> ClassicalState<T> {
    pub fn new(t: T, q: T, qdot: T) -> Self {
        ClassicalState { t, q, qdot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Raw `(Q, Q̇)` to expanding `(𝒬, 𝒬̇)`.
    Forward,
    Inverse,
}

/// `Q̈ = ΓQ̇ - (w₀² + 4Ω₀²e^{2Γt})Q - 2Ω₀v₀e^{2Γt}`.
pub fn eom_rhs<T: Scalar>(s: &ClassicalState<T>, cfg: &ModelConfig<T>) -> T {
    let e2 = (T::lit(2.0) * cfg.gamma * s.t).exp();
    let four = T::lit(4.0);
    cfg.gamma * s.qdot
        - (cfg.w2(s.t) + four * cfg.omega0 * cfg.omega0 * e2) * s.q
        - T::lit(2.0) * cfg.omega0 * cfg.v0 * e2
}

/// Complex canonical momentum `P = m₀e^{-Γt}Q̇ - 2im₀(Ω₀Q + v₀)`.
pub fn canonical_momentum<T: Scalar>(s: &ClassicalState<T>, cfg: &ModelConfig<T>) -> C<T> {
    cplx(
        cfg.m0 * (-cfg.gamma * s.t).exp() * s.qdot,
        -T::lit(2.0) * cfg.m0 * (cfg.omega0 * s.q + cfg.v0),
    )
}

pub fn expanding_transform<T: Scalar>(
    s: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    dir: Direction,
) -> ClassicalState<T> {
    let g2 = cfg.gamma * T::lit(0.5);
    match dir {
        Direction::Forward => {
            let e = (-g2 * s.t).exp();
            ClassicalState::new(s.t, e * s.q, e * (s.qdot - g2 * s.q))
        }
        Direction::Inverse => {
            let e = (g2 * s.t).exp();
            ClassicalState::new(s.t, e * s.q, e * (s.qdot + g2 * s.q))
        }
    }
}

/// Fixed-step classical RK4 on the raw equation of motion from `ic` to `t_end`.
///
/// The step is shrunk slightly if needed so the last sample lands on `t_end`.
pub fn integrate_numeric<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    t_end: T,
    step: T,
) -> Result<Vec<ClassicalState<T>>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(Error::domain("integrate_numeric", format!("step must be positive, got {step}")));
    }
    let span = t_end - ic.t;
    let ratio = (span.abs() / step).to_f64_lossy();
    let n = (ratio - 1e-9).ceil().max(0.0) as usize;
    let mut out = Vec::with_capacity(n + 1);
    out.push(*ic);
    if n == 0 {
        return Ok(out);
    }
    let h = span / T::of(n);
    let half = T::lit(0.5);
    let f = |t: T, q: T, p: T| (p, eom_rhs(&ClassicalState::new(t, q, p), cfg));
    let (mut q, mut p) = (ic.q, ic.qdot);
    for i in 0..n {
        let t = ic.t + h * T::of(i);
        let (k1q, k1p) = f(t, q, p);
        let (k2q, k2p) = f(t + half * h, q + half * h * k1q, p + half * h * k1p);
        let (k3q, k3p) = f(t + half * h, q + half * h * k2q, p + half * h * k2p);
        let (k4q, k4p) = f(t + h, q + h * k3q, p + h * k3p);
        let sixth = h / T::lit(6.0);
        q += sixth * (k1q + T::lit(2.0) * (k2q + k3q) + k4q);
        p += sixth * (k1p + T::lit(2.0) * (k2p + k3p) + k4p);
        out.push(ClassicalState::new(ic.t + h * T::of(i + 1), q, p));
    }
    Ok(out)
}

/// Values of the Bessel-type homogeneous solution `𝒬_{h;1}` and the particular
/// solution `𝒬_p` (with time derivatives) at one instant.
#[derive(Debug, Clone, Copy)]
pub struct BasisValues<T> {
    pub qh: C<T>,
    pub qh_dot: C<T>,
    pub qp: C<T>,
    pub qp_dot: C<T>,
}

/// Closed-form ingredients for exponential mass (`Γ > 0`, `w₀ > Γ/2`).
///
/// `𝒬_{h;1} = J_{iΛ}(X)/Ω̄₀^{iΛ}` with `X = 2Ω̄₀e^{Γt}`, and
/// `𝒬_p = C e^{(3/2-iΛ)Γt} J_{iΛ}(X) ₁F₂(3/4-iΛ/2; 1-iΛ, 7/4-iΛ/2; -X²/4)`.
///
/// Internally `J_{iΛ}(X)/Ω̄₀^{iΛ} = e^{iΛΓt} S(w)/Γ(1+iΛ)` with `S` the bare
/// series in `w = -Ω̄₀²e^{2Γt}`; `w` is formed in extended precision so that
/// the values stay smooth in `t` even where `X` is large.
#[derive(Debug, Clone)]
pub struct ExpMassBasis<T> {
    cfg: ModelConfig<T>,
    ck: CkDerived<T>,
    ctl: SeriesControl,
    nu: C<T>,
    rg: C<T>,
    cp: C<T>,
    hyp: (C<T>, C<T>, C<T>),
}

impl<T: Scalar> ExpMassBasis<T> {
    pub fn new(cfg: &ModelConfig<T>, ctl: &SeriesControl) -> Result<Self> {
        let ck = cfg.ck_derived()?;
        let lam = ck.lambda;
        let i = cplx(T::zero(), T::one());
        let nu = i * lam;
        let half = T::lit(0.5);
        let a = cplx(T::lit(0.75), -half * lam);
        let b1 = cplx(T::one(), -lam);
        let b2 = cplx(T::lit(1.75), -half * lam);
        let rg = rgamma_complex(cplx(T::one(), lam))?;
        let pi = T::PI();
        // C Ω̄^{iΛ}/Γ(1+iΛ), with C = iπv̄Ω̄^{1-iΛ}/(2 sinh πΛ) · Γ(a)/(Γ(b2)Γ(b1))
        let pre = i * pi * ck.v_bar * ck.omega_bar / (T::lit(2.0) * (pi * lam).sinh());
        let cp = pre * gamma_complex(a)? * rgamma_complex(b2)? * rgamma_complex(b1)? * rg;
        Ok(ExpMassBasis {
            cfg: *cfg,
            ck,
            ctl: *ctl,
            nu,
            rg,
            cp,
            hyp: (a, b1, b2),
        })
    }

    pub fn derived(&self) -> &CkDerived<T> {
        &self.ck
    }

    /// Wronskian of `(Re 𝒬_{h;1}, Im 𝒬_{h;1})`: `(Γ/π) sinh(πΛ)`.
    pub fn wronskian(&self) -> T {
        self.cfg.gamma / T::PI() * (T::PI() * self.ck.lambda).sinh()
    }

    pub fn eval(&self, t: T) -> Result<BasisValues<T>> {
        let g = self.cfg.gamma;
        let zero = cplx(T::zero(), T::zero());
        let phase = (self.nu * g * t).exp() * self.rg;
        if self.ck.omega_bar == T::zero() {
            // Ω₀ → 0 limit: e^{iΛΓt}/Γ(1+iΛ), no drive
            return Ok(BasisValues {
                qh: phase,
                qh_dot: phase * self.nu * g,
                qp: zero,
                qp_dot: zero,
            });
        }
        let w = SeriesVar::Exp {
            coef: -self.ck.omega_bar * self.ck.omega_bar,
            rate: T::lit(2.0) * g,
            t,
        };
        let js = bessel_series(self.nu, w, &self.ctl)?;
        let qh = phase * js.sum;
        let qh_dot = phase * js.wsum * g;
        if self.ck.v_bar == T::zero() {
            return Ok(BasisValues {
                qh,
                qh_dot,
                qp: zero,
                qp_dot: zero,
            });
        }
        let (a, b1, b2) = self.hyp;
        let fs = hyp1f2_series(a, b1, b2, w, &self.ctl)?;
        let (s, f) = (js.sum, fs.sum);
        let e = self.cp * (T::lit(1.5) * g * t).exp();
        // X dS/dX = W - νS
        let xds = js.wsum - self.nu * s;
        let qp = e * s * f;
        let qp_dot = e * g * (s * f * T::lit(1.5) + xds * f + s * fs.wsum * T::lit(2.0));
        Ok(BasisValues {
            qh,
            qh_dot,
            qp,
            qp_dot,
        })
    }
}

/// `(𝒬_{h;1}(t), 𝒬_{h;2}(t))`, the second being the complex conjugate of the first.
pub fn bessel_homogeneous<T: Scalar>(t: T, cfg: &ModelConfig<T>) -> Result<(C<T>, C<T>)> {
    let b = ExpMassBasis::new(cfg, &SeriesControl::default())?.eval(t)?;
    Ok((b.qh, b.qh.conj()))
}

/// Particular solution `𝒬_p(t)`; `2 Re 𝒬_p` solves the driven expanding-coordinate equation.
pub fn particular_solution<T: Scalar>(t: T, cfg: &ModelConfig<T>) -> Result<C<T>> {
    Ok(ExpMassBasis::new(cfg, &SeriesControl::default())?.eval(t)?.qp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionKind<T> {
    ConstMassClosedForm { amplitude: T, phase: T },
    ExpMassClosedForm { l1: T, l2: T },
    Numeric { step: T },
}

#[derive(Debug, Clone)]
enum Engine<T> {
    Const { omega: T, offset: T },
    Exp { basis: Arc<ExpMassBasis<T>> },
    Numeric,
}

/// A classical trajectory fixed by its initial data, evaluable at any `t`.
#[derive(Debug, Clone)]
pub struct ClassicalSolution<T> {
    pub cfg: ModelConfig<T>,
    /// Initial data in expanding coordinates at `t = 0`.
    pub ic: ClassicalState<T>,
    pub kind: SolutionKind<T>,
    engine: Engine<T>,
}

/// Closed form for constant mass, `𝒬 = 𝒜 cos(ωt + φ) - 2Ω₀v₀/ω²` with `ω² = w₀² + 4Ω₀²`.
pub fn const_mass_solution<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
) -> Result<ClassicalSolution<T>> {
    if cfg.gamma != T::zero() {
        return Err(Error::domain("const_mass_solution", "requires gamma = 0"));
    }
    let omega2 = cfg.omega_eff2(T::zero());
    let omega = omega2.sqrt();
    let offset = T::lit(2.0) * cfg.omega0 * cfg.v0 / omega2;
    let x = ic.q + offset;
    let y = -ic.qdot / omega;
    Ok(ClassicalSolution {
        cfg: *cfg,
        ic: ClassicalState::new(T::zero(), ic.q, ic.qdot),
        kind: SolutionKind::ConstMassClosedForm {
            amplitude: x.hypot(y),
            phase: y.atan2(x),
        },
        engine: Engine::Const { omega, offset },
    })
}

/// Closed form for exponential mass, `𝒬 = ℓ₁ Re𝒬_{h;1} + ℓ₂ Im𝒬_{h;1} + 2Re𝒬_p`.
pub fn exp_mass_solution<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    ctl: &SeriesControl,
) -> Result<ClassicalSolution<T>> {
    let basis = Arc::new(ExpMassBasis::new(cfg, ctl)?);
    exp_mass_solution_with(ic, cfg, basis)
}

pub(crate) fn exp_mass_solution_with<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    basis: Arc<ExpMassBasis<T>>,
) -> Result<ClassicalSolution<T>> {
    let b = basis.eval(T::zero())?;
    let two = T::lit(2.0);
    let (q1, q2, d1, d2) = (b.qh.re, b.qh.im, b.qh_dot.re, b.qh_dot.im);
    let r1 = ic.q - two * b.qp.re;
    let r2 = ic.qdot - two * b.qp_dot.re;
    let det = q1 * d2 - q2 * d1;
    let scale = (q1.abs() + q2.abs()) * (d1.abs() + d2.abs());
    if !(det.abs() > T::lit(1e-12) * scale) {
        return Err(Error::singular(
            "initial-value system",
            format!("determinant {det} vanishes relative to {scale}"),
        ));
    }
    let l1 = (r1 * d2 - q2 * r2) / det;
    let l2 = (q1 * r2 - r1 * d1) / det;
    Ok(ClassicalSolution {
        cfg: *cfg,
        ic: ClassicalState::new(T::zero(), ic.q, ic.qdot),
        kind: SolutionKind::ExpMassClosedForm { l1, l2 },
        engine: Engine::Exp { basis },
    })
}

/// RK4-backed solution: every evaluation integrates from `t = 0` with the given step.
pub fn numeric_solution<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    step: T,
) -> Result<ClassicalSolution<T>> {
    if !(step > T::zero()) {
        return Err(Error::domain("numeric_solution", format!("step must be positive, got {step}")));
    }
    Ok(ClassicalSolution {
        cfg: *cfg,
        ic: ClassicalState::new(T::zero(), ic.q, ic.qdot),
        kind: SolutionKind::Numeric { step },
        engine: Engine::Numeric,
    })
}

/// Closed-form solution appropriate for the configuration's mass law.
pub fn closed_form<T: Scalar>(
    ic: &ClassicalState<T>,
    cfg: &ModelConfig<T>,
    ctl: &SeriesControl,
) -> Result<ClassicalSolution<T>> {
    if cfg.gamma == T::zero() {
        const_mass_solution(ic, cfg)
    } else {
        exp_mass_solution(ic, cfg, ctl)
    }
}

impl<T: Scalar> ClassicalSolution<T> {
    /// `(𝒬(t), 𝒬̇(t))` in expanding coordinates.
    pub fn eval(&self, t: T) -> Result<ClassicalState<T>> {
        match &self.engine {
            Engine::Const { omega, offset } => {
                let SolutionKind::ConstMassClosedForm { amplitude, phase } = self.kind else {
                    unreachable!()
                };
                let arg = *omega * t + phase;
                Ok(ClassicalState::new(
                    t,
                    amplitude * arg.cos() - *offset,
                    -amplitude * *omega * arg.sin(),
                ))
            }
            Engine::Exp { basis } => Ok(self.eval_with(t, &basis.eval(t)?)),
            Engine::Numeric => {
                let SolutionKind::Numeric { step } = self.kind else {
                    unreachable!()
                };
                let raw0 = expanding_transform(&self.ic, &self.cfg, Direction::Inverse);
                let traj = integrate_numeric(&raw0, &self.cfg, t, step)?;
                let last = *traj.last().expect("trajectory has its initial point");
                Ok(expanding_transform(&last, &self.cfg, Direction::Forward))
            }
        }
    }

    /// Evaluation reusing basis values computed elsewhere at the same `t`.
    pub fn eval_with(&self, t: T, b: &BasisValues<T>) -> ClassicalState<T> {
        let SolutionKind::ExpMassClosedForm { l1, l2 } = self.kind else {
            panic!("eval_with needs an exponential-mass closed form");
        };
        let two = T::lit(2.0);
        ClassicalState::new(
            t,
            l1 * b.qh.re + l2 * b.qh.im + two * b.qp.re,
            l1 * b.qh_dot.re + l2 * b.qh_dot.im + two * b.qp_dot.re,
        )
    }

    pub(crate) fn basis(&self) -> Option<&Arc<ExpMassBasis<T>>> {
        match &self.engine {
            Engine::Exp { basis } => Some(basis),
            _ => None,
        }
    }

    /// `(Q(t), Q̇(t))` in raw coordinates.
    pub fn raw(&self, t: T) -> Result<ClassicalState<T>> {
        Ok(expanding_transform(&self.eval(t)?, &self.cfg, Direction::Inverse))
    }

    /// The complex combination `κ𝒬_{h;1} + conj(κ𝒬_{h;1}) + 𝒬_p + conj(𝒬_p)`,
    /// `κ = (ℓ₁ - iℓ₂)/2`, whose real part is `𝒬(t)`. Its imaginary part measures
    /// rounding only.
    pub fn pre_projection(&self, t: T) -> Result<C<T>> {
        let (SolutionKind::ExpMassClosedForm { l1, l2 }, Some(basis)) = (self.kind, self.basis())
        else {
            return Err(Error::domain("pre_projection", "requires an exponential-mass closed form"));
        };
        let b = basis.eval(t)?;
        let half = T::lit(0.5);
        let k = Complex::new(half * l1, -half * l2);
        Ok(k * b.qh + (k * b.qh).conj() + b.qp + b.qp.conj())
    }

    /// Evaluates `(raw, expanding)` states at each `t`, in parallel.
    pub fn sample(&self, ts: &[T]) -> Result<Vec<(ClassicalState<T>, ClassicalState<T>)>> {
        ts.par_iter()
            .map(|&t| {
                let e = self.eval(t)?;
                Ok((expanding_transform(&e, &self.cfg, Direction::Inverse), e))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{d2_from_samples, FdOrder};
    use proptest::prelude::*;

    fn reference(gamma: f64) -> ModelConfig<f64> {
        ModelConfig::units(1.0, gamma, 1.5, 2.0).unwrap()
    }

    #[test]
    fn rhs_examples() {
        let sho = ModelConfig::units(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(eom_rhs(&ClassicalState::new(0.0, 1.0, 0.0), &sho), -1.0);
        assert_eq!(eom_rhs(&ClassicalState::new(0.0, 0.0, 2.0), &reference(0.0)), -6.0);
        assert_eq!(eom_rhs(&ClassicalState::new(0.0, 0.0, 2.0), &reference(1.0)), -4.0);
        let p = canonical_momentum(&ClassicalState::new(0.0, 1.0, 2.0), &reference(1.0));
        assert_eq!(p, Complex::new(2.0, -7.0));
    }

    #[test]
    fn expanding_transform_identity_at_zero_gamma() {
        let s = ClassicalState::new(0.7, -1.2, 3.4);
        assert_eq!(expanding_transform(&s, &reference(0.0), Direction::Forward), s);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn expanding_transform_roundtrip(t in -3.0f64..3.0, q in -5.0f64..5.0, p in -5.0f64..5.0, g in 0.0f64..2.0) {
            let cfg = ModelConfig::units(1.0, g, 1.5, 2.0).unwrap();
            let s = ClassicalState::new(t, q, p);
            let b = expanding_transform(&expanding_transform(&s, &cfg, Direction::Forward), &cfg, Direction::Inverse);
            prop_assert!((b.q - q).abs() < 1e-14 * (1.0 + q.abs()));
            prop_assert!((b.qdot - p).abs() < 1e-14 * (1.0 + p.abs() + q.abs()));
        }
    }

    #[test]
    fn sho_energy_drift() {
        let sho = ModelConfig::units(1.0, 0.0, 0.0, 0.0).unwrap();
        let tr = integrate_numeric(&ClassicalState::new(0.0, 1.0, 0.0), &sho, 20.0 * std::f64::consts::PI, 1e-3).unwrap();
        let e = |s: &ClassicalState<f64>| 0.5 * (s.q * s.q + s.qdot * s.qdot);
        let drift = tr.iter().map(|s| (e(s) - 0.5).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-10, "{drift}");
    }

    #[test]
    fn rk4_is_fourth_order() {
        let cfg = reference(0.0);
        let ic = ClassicalState::new(0.0, 0.0, 2.0);
        let exact = const_mass_solution(&ic, &cfg).unwrap();
        let err = |h: f64| {
            integrate_numeric(&ic, &cfg, 2.0, h)
                .unwrap()
                .iter()
                .map(|s| (s.q - exact.eval(s.t).unwrap().q).abs())
                .fold(0.0, f64::max)
        };
        let r = err(0.02) / err(0.01);
        assert!((r - 16.0).abs() < 1.0, "ratio {r}");
    }

    #[test]
    fn const_mass_matches_rk4_and_closes() {
        let cfg = reference(0.0);
        let period = 2.0 * std::f64::consts::PI / 10f64.sqrt();
        for v in [2.0, 4.0] {
            let ic = ClassicalState::new(0.0, 0.0, v);
            let sol = const_mass_solution(&ic, &cfg).unwrap();
            let s0 = sol.eval(0.0).unwrap();
            assert!((s0.q - ic.q).abs() < 1e-15 && (s0.qdot - ic.qdot).abs() < 1e-14);
            let sp = sol.eval(period).unwrap();
            assert!((sp.q - s0.q).abs() + (sp.qdot - s0.qdot).abs() < 1e-12);
            let tr = integrate_numeric(&ic, &cfg, period, 1e-4).unwrap();
            for s in tr.iter().step_by(97) {
                assert!((s.q - sol.eval(s.t).unwrap().q).abs() < 1e-8);
            }
        }
        // fixed point of the displaced oscillator
        let fp = const_mass_solution(&ClassicalState::new(0.0, -0.6, 0.0), &cfg).unwrap();
        let SolutionKind::ConstMassClosedForm { amplitude, .. } = fp.kind else { panic!() };
        assert_eq!(amplitude, 0.0);
        for i in 0..500 {
            assert!((fp.eval(i as f64 * 0.02).unwrap().q + 0.6).abs() < 1e-12);
        }
    }

    #[test]
    fn expanding_equation_residual_of_numeric_solution() {
        let cfg = reference(1.0);
        let h = 1e-3;
        let tr = integrate_numeric(&ClassicalState::new(0.0, 0.0, 2.0), &cfg, 1.5, h / 4.0).unwrap();
        let ex: Vec<_> = tr
            .iter()
            .step_by(4)
            .map(|s| expanding_transform(s, &cfg, Direction::Forward))
            .collect();
        for i in (4..ex.len() - 4).step_by(50) {
            let w: Vec<f64> = ex[i - 4..=i + 4].iter().map(|s| s.q).collect();
            let t = ex[i].t;
            let r = d2_from_samples(&w, h, FdOrder::Eighth)
                + cfg.omega_eff2(t) * ex[i].q
                + 2.0 * cfg.omega0 * cfg.v0 * (1.5 * t).exp();
            assert!(r.abs() < 1e-8, "t={t} r={r}");
        }
    }

    #[test]
    fn homogeneous_pair_properties() {
        let cfg = reference(1.0);
        let basis = ExpMassBasis::new(&cfg, &SeriesControl::default()).unwrap();
        let (a, b) = bessel_homogeneous(0.4, &cfg).unwrap();
        assert_eq!(b, a.conj());
        for i in 0..=30 {
            let t = 0.1 * i as f64;
            let v = basis.eval(t).unwrap();
            let w = v.qh.re * v.qh_dot.im - v.qh_dot.re * v.qh.im;
            assert!((w / basis.wronskian() - 1.0).abs() < 1e-10, "t={t}");
        }
        assert!((basis.wronskian() - 2.40723585940613998).abs() < 1e-13);
    }

    #[test]
    fn small_omega_limit() {
        let cfg = ModelConfig::units(1.0, 1.0, 1e-6, 2.0).unwrap();
        let lam = 0.75f64.sqrt();
        let rg = crate::specfun::gamma_complex(Complex::new(1.0, lam)).unwrap();
        for i in 0..=20 {
            let t = 0.1 * i as f64;
            let (q, _) = bessel_homogeneous(t, &cfg).unwrap();
            let lim = Complex::new(0.0, lam * t).exp() / rg;
            assert!((q - lim).norm() < 1e-4);
        }
    }

    #[test]
    fn particular_solution_value_and_trivial_case() {
        let q = particular_solution(0.0, &reference(1.0)).unwrap();
        // frozen from an independent mpmath evaluation of 2 Re 𝒬_p(0)
        assert!((2.0 * q.re + 0.95977112608786612).abs() < 1e-13, "{q}");
        let novel = ModelConfig::units(1.0, 1.0, 1.5, 0.0).unwrap();
        assert_eq!(particular_solution(0.7, &novel).unwrap(), Complex::new(0.0, 0.0));
    }

    #[test]
    fn exp_mass_fit_and_growth() {
        let cfg = reference(1.0);
        let ic = ClassicalState::new(0.0, 0.0, 2.0);
        let sol = exp_mass_solution(&ic, &cfg, &SeriesControl::default()).unwrap();
        let s0 = sol.eval(0.0).unwrap();
        assert!((s0.q - 0.0).abs() + (s0.qdot - 2.0).abs() < 1e-10);
        // the endpoint itself sits near a turning point of the velocity ...
        let s3 = sol.eval(3.0).unwrap();
        assert!((s3.qdot + 0.5851663).abs() < 1e-6, "{}", s3.qdot);
        // ... while the velocity envelope over the last local period has grown
        let period = 2.0 * std::f64::consts::PI / cfg.omega_eff2(3.0).sqrt();
        let env = (0..=100)
            .map(|i| sol.eval(3.0 - period * i as f64 / 100.0).unwrap().qdot.abs())
            .fold(0.0, f64::max);
        assert!(env > 2.0 * 4.0, "{env}");
        for t in [0.5, 1.7, 2.9] {
            assert!(sol.pre_projection(t).unwrap().im.abs() < 1e-12);
        }
        let raw0 = sol.raw(0.0).unwrap();
        assert!((raw0.qdot - 2.0).abs() < 1e-10);
    }

    #[test]
    fn numeric_solution_evaluator() {
        let cfg = reference(1.0);
        let ic = ClassicalState::new(0.0, 0.3, 2.0);
        let num = numeric_solution(&ic, &cfg, 1e-3).unwrap();
        let cf = exp_mass_solution(&ic, &cfg, &SeriesControl::default()).unwrap();
        for t in [0.0, 0.8, 1.6] {
            let (a, b) = (num.eval(t).unwrap(), cf.eval(t).unwrap());
            assert!((a.q - b.q).abs() < 1e-8 && (a.qdot - b.qdot).abs() < 1e-7, "t={t}");
        }
        assert!(integrate_numeric(&ic, &cfg, 1.0, 0.0).is_err());
    }
}
