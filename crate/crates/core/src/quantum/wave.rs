use rayon::prelude::*;

use super::{PointTransform, TimeSlice};
use crate::error::{Error, Result};
use crate::model::{EnergyLevel, ModelConfig};
use crate::scalar::{Scalar, C};
use crate::specfun::hermite;

/// Highest level accepted; `H_n` times the Gaussian stays representable on any
/// reasonable grid up to here.
pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `ψ_n`, solution for the Hamiltonian itself.
    Psi,
    /// `ψ̃_n`, solution for its adjoint (`Ω₀ → -Ω₀`, `v₀ → -v₀`).
    Conjugate,
}

/// One member of the family, ready to evaluate on any [`TimeSlice`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave<T> {
    pub n: u32,
    pub flavor: Flavor,
    level: EnergyLevel<T>,
    /// `m₀/ħ`
    k: T,
    sqrt_kw0: T,
    w0: T,
    /// `±Ω₀`, `±v₀` (sign by flavour)
    omega0: T,
    v0: T,
    /// `½ ln N_n`, `N_n = sqrt(m₀w₀/πħ)/(2ⁿ n!)`
    ln_norm: T,
}

impl<T: Scalar> Wave<T> {
    pub fn new(n: u32, cfg: &ModelConfig<T>, flavor: Flavor) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(Error::domain(
                "wavefunction",
                format!("level {n} above the supported maximum {MAX_LEVEL}"),
            ));
        }
        let k = cfg.m0 / cfg.hbar;
        let kw0 = k * cfg.w0;
        let ln_fact: T = (2..=n as usize).map(|j| T::of(j).ln()).fold(T::zero(), |a, b| a + b);
        let ln_n = T::lit(0.5) * (kw0 / T::PI()).ln() - T::of(n as usize) * T::LN_2() - ln_fact;
        let s = match flavor {
            Flavor::Psi => T::one(),
            Flavor::Conjugate => -T::one(),
        };
        Ok(Wave {
            n,
            flavor,
            level: EnergyLevel::new(n, cfg),
            k,
            sqrt_kw0: kw0.sqrt(),
            w0: cfg.w0,
            omega0: s * cfg.omega0,
            v0: s * cfg.v0,
            ln_norm: T::lit(0.5) * ln_n,
        })
    }

    pub fn energy(&self) -> T {
        self.level.energy
    }

    /// `ξ = sqrt(m₀w₀/ħ) y`
    pub fn xi(&self, s: &TimeSlice<T>, x: T) -> T {
        self.sqrt_kw0 * s.y(x)
    }

    /// The wavefunction at `(x, s.t)`. All exponents are combined before a
    /// single `exp`, so the Gaussian and the non-gauge growth never overflow
    /// separately.
    pub fn eval(&self, s: &TimeSlice<T>, x: T) -> Result<C<T>> {
        let half = T::lit(0.5);
        let xi = self.xi(s, x);
        let h = hermite(self.n, xi)?;
        let re = self.ln_norm + half * (s.mu / s.sigma).ln() - half * xi * xi
            + self.k * (self.omega0 * x * x + self.v0 * x);
        let gauge = s.mu / s.sigma * (s.w_mu() * x * x * half + s.w_gamma() * x) + s.zeta;
        let im = -(self.w0 * (T::of(self.n as usize) + half) * s.tau + self.k * gauge);
        Ok(C::from_polar(re.exp(), im) * h)
    }
}

/// Uniform position grid and a list of sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    pub nx: usize,
    pub t: Vec<T>,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, nx: usize, t: Vec<T>) -> Result<Self> {
        if nx < 16 {
            return Err(Error::Config(format!("nx must be at least 16, got {nx}")));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::Config(format!("empty position window [{x_min}, {x_max}]")));
        }
        if t.is_empty() || t.iter().any(|t| !t.is_finite()) {
            return Err(Error::Config("time samples must be finite and non-empty".into()));
        }
        Ok(GridSpec { x_min, x_max, nx, t })
    }

    /// `nt` equally spaced times from `t0` to `t1` inclusive.
    pub fn uniform(x_min: T, x_max: T, nx: usize, t0: T, t1: T, nt: usize) -> Result<Self> {
        if nt == 0 || (nt > 1 && !(t1 > t0)) {
            return Err(Error::Config(format!("empty time window [{t0}, {t1}] with {nt} samples")));
        }
        let t = if nt == 1 {
            vec![t0]
        } else {
            (0..nt).map(|i| t0 + (t1 - t0) * T::of(i) / T::of(nt - 1)).collect()
        };
        Self::new(x_min, x_max, nx, t)
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::of(self.nx - 1)
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + (self.x_max - self.x_min) * T::of(i) / T::of(self.nx - 1)
    }

    pub fn xs(&self) -> Vec<T> {
        (0..self.nx).map(|i| self.x(i)).collect()
    }
}

/// Samples of `ψ_n`, `ψ̃_n` and `𝒫_n = |ψ̃_n* ψ_n|`, row-major `[time][x]`.
/// Parts that were not computed are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveGrid<T> {
    pub n: u32,
    pub x_min: T,
    pub x_max: T,
    pub nx: usize,
    pub t_samples: Vec<T>,
    pub psi: Vec<C<T>>,
    pub psi_tilde: Vec<C<T>>,
    pub density: Vec<T>,
}

impl<T: Scalar> WaveGrid<T> {
    fn empty(n: u32, spec: &GridSpec<T>) -> Self {
        WaveGrid {
            n,
            x_min: spec.x_min,
            x_max: spec.x_max,
            nx: spec.nx,
            t_samples: spec.t.clone(),
            psi: Vec::new(),
            psi_tilde: Vec::new(),
            density: Vec::new(),
        }
    }

    pub fn nt(&self) -> usize {
        self.t_samples.len()
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + (self.x_max - self.x_min) * T::of(i) / T::of(self.nx - 1)
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::of(self.nx - 1)
    }

    pub fn row<'a, S>(&self, data: &'a [S], it: usize) -> &'a [S] {
        &data[it * self.nx..(it + 1) * self.nx]
    }

    fn same_frame(&self, other: &Self) -> bool {
        self.n == other.n
            && self.x_min == other.x_min
            && self.x_max == other.x_max
            && self.nx == other.nx
            && self.t_samples == other.t_samples
    }
}

fn sample<T: Scalar>(
    n: u32,
    pt: &PointTransform<T>,
    spec: &GridSpec<T>,
    flavors: &[Flavor],
) -> Result<Vec<Vec<C<T>>>> {
    let waves: Vec<Wave<T>> = flavors
        .iter()
        .map(|&f| Wave::new(n, pt.cfg(), f))
        .collect::<Result<_>>()?;
    let slices = pt.slices(&spec.t)?;
    let xs = spec.xs();
    let rows: Vec<Vec<Vec<C<T>>>> = slices
        .par_iter()
        .map(|s| {
            waves
                .iter()
                .map(|w| xs.iter().map(|&x| w.eval(s, x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok((0..waves.len())
        .map(|k| rows.iter().flat_map(|r| r[k].iter().copied()).collect())
        .collect())
}

/// `ψ_n` on the grid.
pub fn wavefunction<T: Scalar>(
    n: u32,
    pt: &PointTransform<T>,
    spec: &GridSpec<T>,
) -> Result<WaveGrid<T>> {
    let mut g = WaveGrid::empty(n, spec);
    g.psi = sample(n, pt, spec, &[Flavor::Psi])?.remove(0);
    Ok(g)
}

/// `ψ̃_n` on the grid, from the same `σ`, `γ`, `τ` as `ψ_n`.
pub fn conjugate_wavefunction<T: Scalar>(
    n: u32,
    pt: &PointTransform<T>,
    spec: &GridSpec<T>,
) -> Result<WaveGrid<T>> {
    let mut g = WaveGrid::empty(n, spec);
    g.psi_tilde = sample(n, pt, spec, &[Flavor::Conjugate])?.remove(0);
    Ok(g)
}

/// Combines `ψ` from one grid with `ψ̃` from another and forms `|ψ̃* ψ|`.
pub fn biorthogonal_density<T: Scalar>(
    psi: &WaveGrid<T>,
    psi_tilde: &WaveGrid<T>,
) -> Result<WaveGrid<T>> {
    let cells = psi.nx * psi.nt();
    if !psi.same_frame(psi_tilde) || psi.psi.len() != cells || psi_tilde.psi_tilde.len() != cells {
        return Err(Error::GridMismatch(format!(
            "psi grid (n={}, {}x{}, {} values) does not match psi~ grid (n={}, {}x{}, {} values)",
            psi.n,
            psi.nt(),
            psi.nx,
            psi.psi.len(),
            psi_tilde.n,
            psi_tilde.nt(),
            psi_tilde.nx,
            psi_tilde.psi_tilde.len()
        )));
    }
    let mut g = psi.clone();
    g.psi_tilde = psi_tilde.psi_tilde.clone();
    g.density = g
        .psi
        .iter()
        .zip(&g.psi_tilde)
        .map(|(p, q)| (q.conj() * p).norm())
        .collect();
    Ok(g)
}

/// `ψ_n`, `ψ̃_n` and the density in one pass.
pub fn wave_grid<T: Scalar>(
    n: u32,
    pt: &PointTransform<T>,
    spec: &GridSpec<T>,
) -> Result<WaveGrid<T>> {
    let mut parts = sample(n, pt, spec, &[Flavor::Psi, Flavor::Conjugate])?;
    let mut g = WaveGrid::empty(n, spec);
    g.psi_tilde = parts.pop().expect("two parts");
    g.psi = parts.pop().expect("two parts");
    g.density = g
        .psi
        .iter()
        .zip(&g.psi_tilde)
        .map(|(p, q)| (q.conj() * p).norm())
        .collect();
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ClassicalState;
    use crate::ermakov::ErmakovSolution;
    use crate::quantum::point_map;
    use crate::specfun::SeriesControl;
    use proptest::prelude::*;

    fn pt_of(cfg: ModelConfig<f64>, ic: (f64, f64)) -> PointTransform<f64> {
        let ic = ClassicalState::new(0.0, ic.0, ic.1);
        point_map(ErmakovSolution::build(&cfg, 1.0, 0.0, &ic, &SeriesControl::default()).unwrap())
            .unwrap()
    }

    fn reference(gamma: f64) -> PointTransform<f64> {
        pt_of(ModelConfig::units(1.0, gamma, 1.5, 2.0).unwrap(), (0.0, 2.0))
    }

    // Φ_n(x) for m₀ = ħ = w₀ = 1, by direct formula.
    fn phi(n: u32, x: f64) -> f64 {
        let mut f = 1.0;
        for j in 1..=n {
            f *= j as f64;
        }
        let norm = (std::f64::consts::PI.sqrt() * 2f64.powi(n as i32) * f).sqrt();
        hermite(n, x).unwrap() * (-x * x / 2.0).exp() / norm
    }

    #[test]
    fn stationary_limit_is_the_oscillator_eigenstate() {
        let pt = pt_of(ModelConfig::units(1.0, 0.0, 0.0, 0.0).unwrap(), (0.0, 0.0));
        for n in 0..5 {
            let w = Wave::new(n, pt.cfg(), Flavor::Psi).unwrap();
            let wt = Wave::new(n, pt.cfg(), Flavor::Conjugate).unwrap();
            for t in [0.0, 0.7, 2.9] {
                let s = pt.slice(t).unwrap();
                for x in [-3.0, -0.4, 0.0, 1.2, 5.0] {
                    let want = C::from_polar(phi(n, x), -(n as f64 + 0.5) * t);
                    let got = w.eval(&s, x).unwrap();
                    assert!((got - want).norm() < 1e-14, "n={n} t={t} x={x}");
                    assert_eq!(wt.eval(&s, x).unwrap(), got);
                }
            }
        }
    }

    #[test]
    fn level_guard() {
        let cfg = ModelConfig::units(1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(Wave::new(MAX_LEVEL, &cfg, Flavor::Psi).is_ok());
        assert!(Wave::new(MAX_LEVEL + 1, &cfg, Flavor::Psi).is_err());
    }

    #[test]
    fn nodes_count_equals_level() {
        for g in [0.0, 1.0] {
            let pt = reference(g);
            let spec = GridSpec::uniform(-10.0, 10.0, 4001, 0.0, 2.0, 5).unwrap();
            let base = wavefunction(0, &pt, &spec).unwrap();
            for n in 1..=4 {
                let wg = wavefunction(n, &pt, &spec).unwrap();
                let slices = pt.slices(&spec.t).unwrap();
                for (it, s) in slices.iter().enumerate() {
                    let unphase = C::from_polar(1.0, n as f64 * s.tau);
                    // far tails: |q|² underflows inside the complex division
                    let r: Vec<f64> = wg
                        .row(&wg.psi, it)
                        .iter()
                        .zip(base.row(&base.psi, it))
                        .filter(|(_, q)| q.norm() > 1e-150)
                        .map(|(p, q)| (p / q * unphase).re)
                        .collect();
                    let changes = r.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
                    assert_eq!(changes, n as usize, "Γ={g} n={n} t={}", s.t);
                }
            }
        }
    }

    #[test]
    fn density_orderings_agree_and_match_the_product() {
        let pt = reference(1.0);
        let spec = GridSpec::uniform(-4.0, 4.0, 33, 0.0, 1.0, 3).unwrap();
        let a = wavefunction(2, &pt, &spec).unwrap();
        let b = conjugate_wavefunction(2, &pt, &spec).unwrap();
        let g = biorthogonal_density(&a, &b).unwrap();
        assert_eq!(g, wave_grid(2, &pt, &spec).unwrap());
        for i in 0..g.density.len() {
            let other = (g.psi[i].conj() * g.psi_tilde[i]).norm();
            assert!((g.density[i] - other).abs() <= 1e-14 * g.density[i]);
            assert!(g.density[i] >= 0.0);
        }
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let pt = reference(0.0);
        let s1 = GridSpec::uniform(-4.0, 4.0, 33, 0.0, 1.0, 3).unwrap();
        let s2 = GridSpec::uniform(-4.0, 4.0, 35, 0.0, 1.0, 3).unwrap();
        let a = wavefunction(0, &pt, &s1).unwrap();
        let b = conjugate_wavefunction(0, &pt, &s2).unwrap();
        assert!(matches!(biorthogonal_density(&a, &b), Err(Error::GridMismatch(_))));
        assert!(biorthogonal_density(&a, &a).is_err());
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(-1.0, 1.0, 15, vec![0.0]).is_err());
        assert!(GridSpec::new(1.0, 1.0, 16, vec![0.0]).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 16, vec![]).is_err());
        assert!(GridSpec::uniform(-1.0, 1.0, 16, 1.0, 0.0, 4).is_err());
        let g = GridSpec::uniform(-8.0, 8.0, 512, 0.0, 2.0, 256).unwrap();
        assert_eq!(g.x(511), 8.0);
        assert_eq!(g.t[255], 2.0);
    }

    #[test]
    fn hermitian_case_has_identical_flavours() {
        let pt = pt_of(ModelConfig::units(1.0, 1.0, 0.0, 0.0).unwrap(), (0.3, -0.2));
        let g = wave_grid(1, &pt, &GridSpec::uniform(-5.0, 5.0, 41, 0.0, 2.0, 4).unwrap()).unwrap();
        assert_eq!(g.psi, g.psi_tilde);
        for (p, d) in g.psi.iter().zip(&g.density) {
            assert!((p.norm_sqr() - d).abs() <= 1e-15 * d.max(1e-300));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        // |ψ_n| depends on (x, t) only through y and the two real prefactors.
        #[test]
        fn modulus_profile_follows_y(n in 0u32..6, x in -4.0f64..4.0, t in 0.0f64..2.0) {
            let pt = reference(1.0);
            let cfg = *pt.cfg();
            let s = pt.slice(t).unwrap();
            let w = Wave::new(n, &cfg, Flavor::Psi).unwrap();
            let psi = w.eval(&s, x).unwrap();
            let pre = (s.mu / s.sigma).sqrt() * (cfg.omega0 * x * x + cfg.v0 * x).exp();
            let want = phi(n, s.y(x)).abs();
            prop_assert!((psi.norm() / pre - want).abs() <= 1e-12 * want.max(1e-3));
            let unphased = psi * C::from_polar(1.0, w.energy() * s.tau);
            prop_assert!((unphased.norm() - psi.norm()).abs() <= 1e-14 * psi.norm());
        }
    }
}
