//! Parameter algebra: the bosonic coefficient set `{α₁, α₂, β₁, β₂, θ}`, the
//! position–momentum set `{m, w², Ω, v, F}`, conversions, classification and
//! the Caldirola–Kanai family.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// How the mass scale `μ(t)` depends on time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MassLaw {
    /// `μ ≡ 1` (requires `Γ = 0`).
    Constant,
    /// `μ² = e^{-Γt}`.
    Exponential,
}

/// How the frequency depends on time. Only `w(t) = w₀` is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrequencyLaw {
    #[default]
    Constant,
}

/// Physical constants of one member of the non-Hermitian Caldirola–Kanai family
/// `H = p²/2m + m w₀² x²/2 + iΩ{x, p} + i v p` with `m = m₀μ²`, `Ω = Ω₀/μ²`, `v = v₀/μ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig<T> {
    pub m0: T,
    pub w0: T,
    pub hbar: T,
    pub gamma: T,
    pub omega0: T,
    pub v0: T,
    pub mass_law: MassLaw,
    pub frequency_law: FrequencyLaw,
}

impl<T: Scalar> Default for ModelConfig<T> {
    fn default() -> Self {
        ModelConfig {
            m0: T::one(),
            w0: T::one(),
            hbar: T::one(),
            gamma: T::zero(),
            omega0: T::zero(),
            v0: T::zero(),
            mass_law: MassLaw::Constant,
            frequency_law: FrequencyLaw::Constant,
        }
    }
}

/// Dimensionless constants of the Bessel reduction for `Γ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkDerived<T> {
    /// `Λ = sqrt(w₀²/Γ² - 1/4)`
    pub lambda: T,
    /// `Ω̄₀ = Ω₀/Γ`
    pub omega_bar: T,
    /// `v̄₀ = v₀/Γ`
    pub v_bar: T,
}

impl<T: Scalar> ModelConfig<T> {
    /// Builds a validated configuration, picking the mass law from `gamma`.
    pub fn new(m0: T, w0: T, hbar: T, gamma: T, omega0: T, v0: T) -> Result<Self> {
        let cfg = ModelConfig {
            m0,
            w0,
            hbar,
            gamma,
            omega0,
            v0,
            mass_law: if gamma == T::zero() {
                MassLaw::Constant
            } else {
                MassLaw::Exponential
            },
            frequency_law: FrequencyLaw::Constant,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Unit-system shorthand with `m₀ = ħ = 1`.
    pub fn units(w0: T, gamma: T, omega0: T, v0: T) -> Result<Self> {
        Self::new(T::one(), w0, T::one(), gamma, omega0, v0)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("m0", self.m0),
            ("w0", self.w0),
            ("hbar", self.hbar),
            ("gamma", self.gamma),
            ("omega0", self.omega0),
            ("v0", self.v0),
        ];
        for (k, v) in named {
            if !v.is_finite() {
                return Err(Error::Config(format!("{k} must be finite, got {v}")));
            }
        }
        for (k, v) in &named[..3] {
            if !(*v > T::zero()) {
                return Err(Error::Config(format!("{k} must be positive, got {v}")));
            }
        }
        for (k, v) in &named[4..] {
            if *v < T::zero() {
                return Err(Error::Config(format!("{k} must be nonnegative, got {v}")));
            }
        }
        match (self.mass_law, self.gamma == T::zero()) {
            (MassLaw::Constant, false) => Err(Error::Config(format!(
                "mass_law constant requires gamma = 0, got {}",
                self.gamma
            ))),
            (MassLaw::Exponential, true) => Err(Error::Config(
                "mass_law exponential requires gamma != 0".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Ω₀ = v₀ = 0: the Hamiltonian is self-adjoint.
    pub fn is_hermitian(&self) -> bool {
        self.omega0 == T::zero() && self.v0 == T::zero()
    }

    /// The conjugate family obtained by `Ω₀ → -Ω₀`, `v₀ → -v₀`.
    ///
    /// The result deliberately skips [`validate`](Self::validate) (signs are negative).
    pub fn adjoint(&self) -> Self {
        ModelConfig {
            omega0: -self.omega0,
            v0: -self.v0,
            ..*self
        }
    }

    /// `μ(t) = e^{-Γt/2}`.
    pub fn mu(&self, t: T) -> T {
        (-self.gamma * t * T::lit(0.5)).exp()
    }

    pub fn mu_dot(&self, t: T) -> T {
        -self.gamma * T::lit(0.5) * self.mu(t)
    }

    pub fn mu_ddot(&self, t: T) -> T {
        let g = self.gamma * T::lit(0.5);
        g * g * self.mu(t)
    }

    pub fn mass(&self, t: T) -> T {
        self.m0 * (-self.gamma * t).exp()
    }

    pub fn w2(&self, _t: T) -> T {
        match self.frequency_law {
            FrequencyLaw::Constant => self.w0 * self.w0,
        }
    }

    /// `Ω(t) = Ω₀/μ²`.
    pub fn omega(&self, t: T) -> T {
        self.omega0 * (self.gamma * t).exp()
    }

    /// `v(t) = v₀/μ²`.
    pub fn v(&self, t: T) -> T {
        self.v0 * (self.gamma * t).exp()
    }

    /// Effective squared frequency `w² + 4Ω₀²/μ⁴ - μ̈/μ` of the Ermakov system.
    pub fn omega_eff2(&self, t: T) -> T {
        let e = (T::lit(2.0) * self.gamma * t).exp();
        let g = self.gamma * T::lit(0.5);
        self.w2(t) - g * g + T::lit(4.0) * self.omega0 * self.omega0 * e
    }

    /// Right-hand side `2v₀Ω₀/μ³` of the inhomogeneous (γ) equation.
    pub fn gamma_drive(&self, t: T) -> T {
        T::lit(2.0) * self.v0 * self.omega0 * (T::lit(1.5) * self.gamma * t).exp()
    }

    pub fn quad_at(&self, t: T) -> QuadratureParams<T> {
        QuadratureParams {
            m: self.mass(t),
            w2: self.w2(t),
            omega: self.omega(t),
            v: self.v(t),
            f: T::zero(),
        }
    }

    /// Bessel-reduction constants; requires `Γ > 0` and `w₀ > Γ/2`.
    pub fn ck_derived(&self) -> Result<CkDerived<T>> {
        if self.gamma == T::zero() {
            return Err(Error::domain("ck_derived", "requires gamma != 0"));
        }
        if self.gamma < T::zero() {
            return Err(Error::domain(
                "ck_derived",
                format!("negative damping exponent {} is not supported", self.gamma),
            ));
        }
        let l2 = self.w0 * self.w0 / (self.gamma * self.gamma) - T::lit(0.25);
        if !(l2 > T::zero()) {
            return Err(Error::domain(
                "ck_derived",
                format!(
                    "w0 = {} must exceed gamma/2 = {} (overdamped regime not supported)",
                    self.w0,
                    self.gamma * T::lit(0.5)
                ),
            ));
        }
        Ok(CkDerived {
            lambda: l2.sqrt(),
            omega_bar: self.omega0 / self.gamma,
            v_bar: self.v0 / self.gamma,
        })
    }
}

/// Bosonic coefficient set (dimensionless, real: class IV and its subclasses).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonicParams<T> {
    pub alpha1: T,
    pub alpha2: T,
    pub beta1: T,
    pub beta2: T,
    pub theta: T,
}

/// Complex extension of [`BosonicParams`], used only for classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonicParamsC<T> {
    pub alpha1: C<T>,
    pub alpha2: C<T>,
    pub beta1: C<T>,
    pub beta2: C<T>,
    pub theta: C<T>,
}

impl<T: Scalar> BosonicParams<T> {
    pub fn new(alpha1: T, alpha2: T, beta1: T, beta2: T, theta: T) -> Result<Self> {
        let p = BosonicParams {
            alpha1,
            alpha2,
            beta1,
            beta2,
            theta,
        };
        if [alpha1, alpha2, beta1, beta2, theta].iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("BosonicParams", "non-finite coefficient"));
        }
        Ok(p)
    }

    pub fn to_complex(&self) -> BosonicParamsC<T> {
        let c = |x: T| Complex::new(x, T::zero());
        BosonicParamsC {
            alpha1: c(self.alpha1),
            alpha2: c(self.alpha2),
            beta1: c(self.beta1),
            beta2: c(self.beta2),
            theta: c(self.theta),
        }
    }

    pub fn classify(&self) -> ConfigClass {
        classify(&self.to_complex())
    }
}

impl<T: Scalar> BosonicParamsC<T> {
    /// Real class-IV parameters, or an unsupported-configuration error.
    pub fn to_real(&self) -> Result<BosonicParams<T>> {
        let all = [self.alpha1, self.alpha2, self.beta1, self.beta2, self.theta];
        if all.iter().any(|z| z.im != T::zero()) {
            return Err(Error::Unsupported(
                "complex bosonic coefficients (class III) are not handled by the solvers".into(),
            ));
        }
        BosonicParams::new(all[0].re, all[1].re, all[2].re, all[3].re, all[4].re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigClass {
    /// `α = β = 0`, `θ = 1/2`.
    HarmonicOscillator,
    /// `β_j = conj(α_j)`, `θ` real.
    Hermitian,
    /// Complex coefficients without the Hermitian pairing.
    GlobalNonHermitian,
    /// All coefficients real.
    NonHermitian,
}

impl ConfigClass {
    pub fn roman(self) -> &'static str {
        match self {
            ConfigClass::HarmonicOscillator => "I",
            ConfigClass::Hermitian => "II",
            ConfigClass::GlobalNonHermitian => "III",
            ConfigClass::NonHermitian => "IV",
        }
    }
}

pub fn classify<T: Scalar>(p: &BosonicParamsC<T>) -> ConfigClass {
    let zero = Complex::new(T::zero(), T::zero());
    let half = Complex::new(T::lit(0.5), T::zero());
    if [p.alpha1, p.alpha2, p.beta1, p.beta2].iter().all(|z| *z == zero) && p.theta == half {
        return ConfigClass::HarmonicOscillator;
    }
    if p.beta1 == p.alpha1.conj() && p.beta2 == p.alpha2.conj() && p.theta.im == T::zero() {
        return ConfigClass::Hermitian;
    }
    let all = [p.alpha1, p.alpha2, p.beta1, p.beta2, p.theta];
    if all.iter().all(|z| z.im == T::zero()) {
        return ConfigClass::NonHermitian;
    }
    ConfigClass::GlobalNonHermitian
}

/// Position–momentum coefficient set at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureParams<T> {
    pub m: T,
    pub w2: T,
    pub omega: T,
    pub v: T,
    pub f: T,
}

pub fn quad_from_bosonic<T: Scalar>(
    p: &BosonicParams<T>,
    cfg: &ModelConfig<T>,
) -> Result<QuadratureParams<T>> {
    let two = T::lit(2.0);
    let s = p.alpha2 + p.beta2;
    let den = two * p.theta - s;
    if !(den > T::zero()) {
        return Err(Error::domain(
            "quad_from_bosonic",
            format!("mass denominator 2θ-(α₂+β₂) = {den} is not positive"),
        ));
    }
    let (m0, w0, hb) = (cfg.m0, cfg.w0, cfg.hbar);
    Ok(QuadratureParams {
        m: m0 / den,
        w2: w0 * w0 * (T::lit(4.0) * p.theta * p.theta - s * s),
        omega: -w0 * (p.alpha2 - p.beta2),
        v: -(hb * w0 / (two * m0)).sqrt() * (p.alpha1 - p.beta1),
        f: (m0 * hb * w0 * w0 / two).sqrt() * (p.alpha1 + p.beta1),
    })
}

pub fn bosonic_from_quad<T: Scalar>(
    q: &QuadratureParams<T>,
    cfg: &ModelConfig<T>,
) -> Result<BosonicParams<T>> {
    if !(q.m > T::zero()) {
        return Err(Error::domain(
            "bosonic_from_quad",
            format!("mass must be positive, got {}", q.m),
        ));
    }
    let (m0, w0, hb) = (cfg.m0, cfg.w0, cfg.hbar);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let m = q.m;
    let mw2 = m * m * q.w2;
    let base = m0 * m0 * w0 * w0;
    let cross = two * m0 * w0 * m * q.omega;
    let den2 = four * m0 * w0 * w0 * m;
    let den1 = (two * hb * m0 * w0 * w0).sqrt();
    let mv = m0 * w0.sqrt() * q.v;
    BosonicParams::new(
        (q.f - mv) / den1,
        (mw2 - base - cross) / den2,
        (q.f + mv) / den1,
        (mw2 - base + cross) / den2,
        (base + mw2) / den2,
    )
}

/// Bosonic coefficients of the non-Hermitian Caldirola–Kanai oscillator at time `t` (with `F = 0`).
pub fn preset_caldirola_kanai<T: Scalar>(cfg: &ModelConfig<T>, t: T) -> BosonicParams<T> {
    let half = T::lit(0.5);
    let gt = cfg.gamma * t;
    let e = gt.exp();
    let sh = gt.sinh();
    let om = cfg.omega0 / (T::lit(2.0) * cfg.w0) * e;
    let beta1 = (cfg.m0 / (T::lit(2.0) * cfg.hbar * cfg.w0)).sqrt() * cfg.v0 * e;
    BosonicParams {
        alpha1: -beta1,
        alpha2: -half * sh - om,
        beta1,
        beta2: -half * sh + om,
        theta: half * gt.cosh(),
    }
}

/// Stationary energy `E_n = ħw₀(n + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<T> {
    pub n: u32,
    pub energy: T,
}

impl<T: Scalar> EnergyLevel<T> {
    pub fn new(n: u32, cfg: &ModelConfig<T>) -> Self {
        EnergyLevel {
            n,
            energy: cfg.hbar * cfg.w0 * (T::of(n as usize) + T::lit(0.5)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference() -> ModelConfig<f64> {
        ModelConfig::units(1.0, 1.0, 1.5, 2.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ModelConfig::new(1.0, 1.0, 1.0, 0.0, 1.5, 2.0).is_ok());
        assert!(matches!(ModelConfig::new(0.0, 1.0, 1.0, 0.0, 0.0, 0.0), Err(Error::Config(_))));
        assert!(ModelConfig::new(1.0, 1.0, 1.0, 0.0, -1.0, 0.0).is_err());
        assert!(ModelConfig::new(1.0, f64::NAN, 1.0, 0.0, 0.0, 0.0).is_err());
        let mut c = reference();
        c.mass_law = MassLaw::Constant;
        assert!(c.validate().is_err());
    }

    #[test]
    fn harmonic_oscillator_quadrature() {
        let cfg = ModelConfig::<f64>::default();
        let p = BosonicParams::new(0.0, 0.0, 0.0, 0.0, 0.5).unwrap();
        let q = quad_from_bosonic(&p, &cfg).unwrap();
        assert_eq!(q, QuadratureParams { m: 1.0, w2: 1.0, omega: 0.0, v: 0.0, f: 0.0 });
        let back = bosonic_from_quad(&q, &cfg).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.classify(), ConfigClass::HarmonicOscillator);
    }

    #[test]
    fn preset_at_origin() {
        let p = preset_caldirola_kanai(&reference(), 0.0);
        assert_eq!(p.alpha2, -0.75);
        assert_eq!(p.beta2, 0.75);
        assert_eq!(p.theta, 0.5);
        assert!((p.beta1 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(p.alpha1, -p.beta1);
        let q = QuadratureParams { m: 1.0, w2: 1.0, omega: 1.5, v: 2.0, f: 0.0 };
        let b = bosonic_from_quad(&q, &reference()).unwrap();
        assert!((b.alpha2 + 0.75).abs() < 1e-15 && (b.beta2 - 0.75).abs() < 1e-15);
        assert!((b.theta - 0.5).abs() < 1e-15);
        assert!((b.beta1 - 2f64.sqrt()).abs() < 1e-15 && (b.alpha1 + 2f64.sqrt()).abs() < 1e-15);
        let h = ModelConfig::units(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(
            preset_caldirola_kanai(&h, 3.7).classify(),
            ConfigClass::HarmonicOscillator
        );
        assert_eq!(p.classify(), ConfigClass::NonHermitian);
    }

    #[test]
    fn preset_preserves_constraints() {
        for cfg in [reference(), ModelConfig::new(1.3, 0.8, 0.7, 0.4, 0.9, 1.1).unwrap()] {
            for i in 0..=60 {
                let t = -3.0 + 0.1 * i as f64;
                let q = quad_from_bosonic(&preset_caldirola_kanai(&cfg, t), &cfg).unwrap();
                let mu2 = cfg.mu(t).powi(2);
                // cosh + sinh cancels for t < 0, so mass and w² only hold to ~1e-13
                assert!((q.m / (cfg.m0 * (-cfg.gamma * t).exp()) - 1.0).abs() < 1e-12);
                assert!((q.w2 / (cfg.w0 * cfg.w0) - 1.0).abs() < 1e-12);
                assert!((mu2 * q.omega - cfg.omega0).abs() < 1e-14 * cfg.omega0.max(1.0));
                assert!((mu2 * q.v - cfg.v0).abs() < 1e-14 * cfg.v0.max(1.0));
                assert!(q.f.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn classification() {
        let c = |a: f64, b: f64| Complex::new(a, b);
        let herm = BosonicParamsC {
            alpha1: c(0.1, 0.2),
            alpha2: c(0.3, -0.4),
            beta1: c(0.1, -0.2),
            beta2: c(0.3, 0.4),
            theta: c(0.7, 0.0),
        };
        assert_eq!(classify(&herm), ConfigClass::Hermitian);
        let glob = BosonicParamsC { beta2: c(0.3, 0.5), ..herm };
        assert_eq!(classify(&glob), ConfigClass::GlobalNonHermitian);
        assert!(matches!(glob.to_real(), Err(Error::Unsupported(_))));
        let real = BosonicParams::new(0.1, -0.2, 0.3, 0.25, 0.6).unwrap();
        assert_eq!(real.classify(), ConfigClass::NonHermitian);
        // Ω₀ = v₀ = 0 makes the CK family Hermitian at every t
        let h = ModelConfig::units(1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(preset_caldirola_kanai(&h, 0.8).classify(), ConfigClass::Hermitian);
    }

    #[test]
    fn nonpositive_mass_rejected() {
        let p = BosonicParams::new(0.0, 0.6, 0.0, 0.6, 0.5).unwrap();
        assert!(matches!(quad_from_bosonic(&p, &reference()), Err(Error::Domain { .. })));
        let q = QuadratureParams { m: 0.0, w2: 1.0, omega: 0.0, v: 0.0, f: 0.0 };
        assert!(bosonic_from_quad(&q, &reference()).is_err());
    }

    #[test]
    fn ck_derived_constants() {
        let d = reference().ck_derived().unwrap();
        assert!((d.lambda - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(d.omega_bar, 1.5);
        assert!(ModelConfig::units(1.0, 0.0, 1.5, 2.0).unwrap().ck_derived().is_err());
        assert!(ModelConfig::units(1.0, 2.0, 1.5, 2.0).unwrap().ck_derived().is_err());
        assert!(ModelConfig::units(1.0, -1.0, 1.5, 2.0).unwrap().ck_derived().is_err());
    }

    #[test]
    fn energies() {
        let e = EnergyLevel::new(3, &ModelConfig::new(1.0, 2.0, 0.5, 0.0, 0.0, 0.0).unwrap());
        assert_eq!(e.energy, 3.5);
    }

    pub(crate) fn class_iv() -> impl Strategy<Value = (BosonicParams<f64>, ModelConfig<f64>)> {
        (
            (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, 0.05f64..3.0),
            (0.2f64..5.0, 0.2f64..5.0, 0.2f64..5.0),
        )
            .prop_map(|((a1, s, d, b1, margin), (m0, w0, hb))| {
                // pick θ so that 2θ - (α₂+β₂) = margin > 0
                let a2 = 0.5 * (s + d);
                let b2 = 0.5 * (s - d);
                let theta = 0.5 * (margin + s);
                (
                    BosonicParams::new(a1, a2, b1, b2, theta).unwrap(),
                    ModelConfig::new(m0, w0, hb, 0.0, 0.0, 0.0).unwrap(),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn conversion_roundtrip((p, cfg) in class_iv()) {
            let q = quad_from_bosonic(&p, &cfg).unwrap();
            prop_assert!(q.m > 0.0);
            let b = bosonic_from_quad(&q, &cfg).unwrap();
            let scale = [p.alpha1, p.alpha2, p.beta1, p.beta2, p.theta]
                .iter().fold(1.0f64, |a, v| a.max(v.abs()));
            for (x, y) in [(b.alpha1, p.alpha1), (b.alpha2, p.alpha2), (b.beta1, p.beta1),
                           (b.beta2, p.beta2), (b.theta, p.theta)] {
                prop_assert!((x - y).abs() <= 1e-12 * scale, "{x} vs {y}");
            }
        }
    }
}
