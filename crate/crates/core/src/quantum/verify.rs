use rayon::prelude::*;

use super::wave::{Flavor, Wave};
use super::{PointTransform, TimeSlice};
use crate::error::{Error, Result};
use crate::fd::{offsets, weights, FdOrder};
use crate::model::ModelConfig;
use crate::quad::{pairwise_sum, simpson};
use crate::scalar::{cplx, Scalar, C};

/// A wavefunction that can be sampled anywhere: prepare per-time state once,
/// then evaluate at arbitrary `x`.
pub trait Field<T: Scalar>: Sync {
    type Slice: Send + Sync;
    fn slices(&self, ts: &[T]) -> Result<Vec<Self::Slice>>;
    fn eval(&self, s: &Self::Slice, x: T) -> Result<C<T>>;
}

/// `ψ_n` or `ψ̃_n` through a point transform.
#[derive(Debug, Clone, Copy)]
pub struct WaveField<'a, T> {
    pub pt: &'a PointTransform<T>,
    pub wave: Wave<T>,
}

impl<'a, T: Scalar> WaveField<'a, T> {
    pub fn new(pt: &'a PointTransform<T>, n: u32, flavor: Flavor) -> Result<Self> {
        Ok(WaveField {
            pt,
            wave: Wave::new(n, pt.cfg(), flavor)?,
        })
    }
}

impl<T: Scalar> Field<T> for WaveField<'_, T> {
    type Slice = TimeSlice<T>;
    fn slices(&self, ts: &[T]) -> Result<Vec<TimeSlice<T>>> {
        self.pt.slices(ts)
    }
    fn eval(&self, s: &TimeSlice<T>, x: T) -> Result<C<T>> {
        self.wave.eval(s, x)
    }
}

/// Any closure `(x, t) ↦ ψ`.
pub struct FnField<F>(pub F);

impl<T: Scalar, F: Fn(T, T) -> C<T> + Sync> Field<T> for FnField<F> {
    type Slice = T;
    fn slices(&self, ts: &[T]) -> Result<Vec<T>> {
        Ok(ts.to_vec())
    }
    fn eval(&self, t: &T, x: T) -> Result<C<T>> {
        Ok((self.0)(x, *t))
    }
}

/// Steps of the difference stencils; the field is sampled off the grid at
/// `x + j hx` and `t + j ht`. The default time step is small because the
/// phase of a squeezed packet turns fast far from its centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSteps<T> {
    pub hx: T,
    pub ht: T,
    pub order: FdOrder,
}

impl<T: Scalar> Default for ResidualSteps<T> {
    fn default() -> Self {
        ResidualSteps {
            hx: T::lit(1.0 / 1024.0),
            ht: T::lit(1.0 / 32768.0),
            order: FdOrder::Eighth,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    /// Largest per-slice relative residual.
    pub max: T,
    pub worst_t: T,
    pub per_slice: Vec<T>,
}

fn cd1<T: Scalar>(s: &[C<T>], h: T, order: FdOrder) -> C<T> {
    let k = order.half_width();
    let (w1, _, _) = weights(order);
    let mut acc = cplx(T::zero(), T::zero());
    for (j, w) in w1.iter().enumerate() {
        acc += (s[k + j + 1] - s[k - j - 1]) * T::lit(*w);
    }
    acc / h
}

fn cd2<T: Scalar>(s: &[C<T>], h: T, order: FdOrder) -> C<T> {
    let k = order.half_width();
    let (_, c0, w2) = weights(order);
    let mut acc = s[k] * T::lit(c0);
    for (j, w) in w2.iter().enumerate() {
        acc += (s[k + j + 1] + s[k - j - 1]) * T::lit(*w);
    }
    acc / (h * h)
}

/// Relative residual of
/// `iħ∂ₜψ = [-ħ²/2m ∂ₓ² + 2ħΩx∂ₓ + ħv∂ₓ + m w² x²/2 + F x + ħΩ] ψ`
/// on each time slice of the grid: `‖residual‖₂ / ‖ψ‖₂` over the `x` samples.
pub fn schrodinger_residual<T: Scalar, F: Field<T>>(
    field: &F,
    cfg: &ModelConfig<T>,
    xs: &[T],
    ts: &[T],
    steps: &ResidualSteps<T>,
) -> Result<ResidualReport<T>> {
    if xs.is_empty() || ts.is_empty() {
        return Err(Error::GridMismatch("empty residual grid".into()));
    }
    let order = steps.order;
    let k = order.half_width();
    let offs: Vec<T> = offsets(order).map(|j| T::lit(j as f64)).collect();
    let times: Vec<T> = ts
        .iter()
        .flat_map(|&t| offs.iter().map(move |&j| t + j * steps.ht))
        .collect();
    let slices = field.slices(&times)?;
    let hbar = cfg.hbar;
    let i = cplx(T::zero(), T::one());
    let per_slice: Vec<T> = ts
        .par_iter()
        .enumerate()
        .map(|(it, &t)| {
            let sl = &slices[it * offs.len()..(it + 1) * offs.len()];
            let q = cfg.quad_at(t);
            let mut res = Vec::with_capacity(xs.len());
            let mut mag = Vec::with_capacity(xs.len());
            let mut sx = vec![cplx(T::zero(), T::zero()); offs.len()];
            let mut st = sx.clone();
            for &x in xs {
                for (j, &o) in offs.iter().enumerate() {
                    sx[j] = field.eval(&sl[k], x + o * steps.hx)?;
                    st[j] = if j == k { sx[k] } else { field.eval(&sl[j], x)? };
                }
                let psi = sx[k];
                let px = cd1(&sx, steps.hx, order);
                let pxx = cd2(&sx, steps.hx, order);
                let pt = cd1(&st, steps.ht, order);
                let h_psi = pxx * (-hbar * hbar / (T::lit(2.0) * q.m))
                    + px * (T::lit(2.0) * hbar * q.omega * x + hbar * q.v)
                    + psi * (q.m * q.w2 * x * x * T::lit(0.5) + q.f * x + hbar * q.omega);
                res.push(pt * i * hbar - h_psi);
                mag.push(psi);
            }
            // scale out the magnitude so the squares cannot overflow
            let top = mag.iter().map(|p| p.norm()).fold(T::zero(), T::max);
            if !(top > T::zero() && top.is_finite()) {
                return Err(Error::range(
                    "schrodinger_residual",
                    format!("wavefunction magnitude {top} at t = {t}"),
                ));
            }
            let sq = |v: &[C<T>]| pairwise_sum(&v.iter().map(|z| (z / top).norm_sqr()).collect::<Vec<_>>());
            Ok((sq(&res) / sq(&mag)).sqrt())
        })
        .collect::<Result<_>>()?;
    let (worst, max) = per_slice
        .iter()
        .enumerate()
        .fold((0, T::zero()), |a, (j, &r)| if r > a.1 || r.is_nan() { (j, r) } else { a });
    Ok(ResidualReport {
        max,
        worst_t: ts[worst],
        per_slice,
    })
}

/// Inner products `G_mn = ∫ψ̃_m* ψ_n dx` at one time, with the densities
/// `∫|ψ̃_n* ψ_n| dx` and their centroids.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport<T> {
    pub t: T,
    pub matrix: Vec<Vec<C<T>>>,
    pub density_integrals: Vec<T>,
    pub centroids: Vec<T>,
    pub window: (T, T),
    pub points: usize,
    /// Largest integrand magnitude at the window edges.
    pub boundary: T,
    /// Set when the window could not be widened enough to bring `boundary`
    /// under the threshold.
    pub truncated: bool,
}

impl<T: Scalar> GramReport<T> {
    /// `max |G - I|`
    pub fn deviation(&self) -> T {
        let mut d = T::zero();
        for (m, row) in self.matrix.iter().enumerate() {
            for (n, g) in row.iter().enumerate() {
                let e = if m == n { T::one() } else { T::zero() };
                d = d.max((g - cplx(e, T::zero())).norm());
            }
        }
        d
    }

    /// `max |G - G'|` against another time.
    pub fn distance(&self, other: &Self) -> T {
        self.matrix
            .iter()
            .flatten()
            .zip(other.matrix.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

pub const GRAM_POINTS: usize = 4001;
const TAIL: f64 = 1e-10;

/// Bi-orthonormality check for levels `0..=n_max` at time `t`, by composite
/// Simpson quadrature on a window around the packet centre `x = -γ/μ` that is
/// widened until the integrands at its edges fall below `1e-10`.
pub fn biorthonormality_gram<T: Scalar>(
    pt: &PointTransform<T>,
    n_max: u32,
    t: T,
) -> Result<GramReport<T>> {
    if n_max > 6 {
        return Err(Error::domain("biorthonormality_gram", format!("n_max = {n_max} > 6")));
    }
    let cfg = pt.cfg();
    let s = pt.slice(t)?;
    let levels = n_max as usize + 1;
    let psi: Vec<Wave<T>> = (0..=n_max)
        .map(|n| Wave::new(n, cfg, Flavor::Psi))
        .collect::<Result<_>>()?;
    let tilde: Vec<Wave<T>> = (0..=n_max)
        .map(|n| Wave::new(n, cfg, Flavor::Conjugate))
        .collect::<Result<_>>()?;
    let centre = -s.gamma / s.mu;
    let unit = s.sigma / (s.mu * (cfg.m0 * cfg.w0 / cfg.hbar).sqrt());
    let edge = |x: T| -> Result<T> {
        let mut b = T::zero();
        for m in 0..levels {
            let a = tilde[m].eval(&s, x)?.conj();
            for p in &psi {
                b = b.max((a * p.eval(&s, x)?).norm());
            }
        }
        Ok(b)
    };
    let mut half = T::lit(8.0);
    let (mut boundary, mut truncated);
    loop {
        boundary = edge(centre - half * unit)?.max(edge(centre + half * unit)?);
        truncated = !(boundary < T::lit(TAIL));
        if !truncated || half > T::lit(64.0) {
            break;
        }
        half *= T::lit(1.25);
    }
    let (lo, hi) = (centre - half * unit, centre + half * unit);
    let np = GRAM_POINTS;
    let h = (hi - lo) / T::of(np - 1);
    let xs: Vec<T> = (0..np).map(|j| lo + (hi - lo) * T::of(j) / T::of(np - 1)).collect();
    let eval_all = |waves: &[Wave<T>]| -> Result<Vec<Vec<C<T>>>> {
        waves
            .par_iter()
            .map(|w| xs.iter().map(|&x| w.eval(&s, x)).collect())
            .collect()
    };
    let pv = eval_all(&psi)?;
    let tv = eval_all(&tilde)?;
    let mut matrix = vec![vec![cplx(T::zero(), T::zero()); levels]; levels];
    for m in 0..levels {
        for n in 0..levels {
            let f: Vec<C<T>> = tv[m].iter().zip(&pv[n]).map(|(a, b)| a.conj() * b).collect();
            matrix[m][n] = simpson(&f, h)?;
        }
    }
    let mut density_integrals = Vec::with_capacity(levels);
    let mut centroids = Vec::with_capacity(levels);
    for n in 0..levels {
        let d: Vec<T> = tv[n].iter().zip(&pv[n]).map(|(a, b)| (a.conj() * b).norm()).collect();
        let xd: Vec<T> = d.iter().zip(&xs).map(|(d, x)| *d * *x).collect();
        let mass = simpson(&d, h)?;
        density_integrals.push(mass);
        centroids.push(simpson(&xd, h)? / mass);
    }
    Ok(GramReport {
        t,
        matrix,
        density_integrals,
        centroids,
        window: (lo, hi),
        points: np,
        boundary,
        truncated,
    })
}
