//! Quadrature: adaptive Gauss–Kronrod for smooth 1-D integrals, composite
//! Simpson on uniform samples, and pairwise summation.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadControl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadControl {
    fn default() -> Self {
        QuadControl {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

fn gk15<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        k += T::lit(WGK[j]) * s;
        if j % 2 == 1 {
            g += T::lit(WG[j / 2]) * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Globally adaptive 15-point Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    ctl: &QuadControl,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let total: T = pairwise_sum(&parts.iter().map(|p| p.2).collect::<Vec<_>>());
        let err: T = pairwise_sum(&parts.iter().map(|p| p.3).collect::<Vec<_>>());
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::Integration(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        let tol = T::lit(ctl.abs_tol).max(T::lit(ctl.rel_tol) * total.abs());
        if err <= tol {
            return Ok(QuadResult {
                value: total,
                error: err,
                intervals: parts.len(),
            });
        }
        if parts.len() >= ctl.max_intervals {
            return Err(Error::Integration(format!(
                "error estimate {err:e} above tolerance {tol:e} after {} subintervals",
                parts.len()
            )));
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, p)| {
                if p.3 > acc.1 {
                    (i, p.3)
                } else {
                    acc
                }
            });
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let m = (lo + hi) * T::lit(0.5);
        if m <= lo.min(hi) || m >= lo.max(hi) {
            return Err(Error::Integration(format!(
                "interval [{lo}, {hi}] cannot be bisected further"
            )));
        }
        let (v1, e1) = gk15(&f, lo, m);
        let (v2, e2) = gk15(&f, m, hi);
        parts.push((lo, m, v1, e1));
        parts.push((m, hi, v2, e2));
    }
}

/// Pairwise (cascade) summation; deterministic for a given input order.
pub fn pairwise_sum<S>(xs: &[S]) -> S
where
    S: Copy + Add<Output = S> + Zero,
{
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        return xs.iter().fold(S::zero(), |a, &b| a + b);
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// Composite Simpson rule on uniformly spaced samples (odd count, at least 3).
pub fn simpson<T, S>(ys: &[S], h: T) -> Result<S>
where
    T: Scalar,
    S: Copy + Add<Output = S> + Mul<T, Output = S> + Zero,
{
    let n = ys.len();
    if n < 3 || n % 2 == 0 {
        return Err(Error::GridMismatch(format!(
            "Simpson rule needs an odd number (>= 3) of samples, got {n}"
        )));
    }
    let weighted: Vec<S> = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let w = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            y * T::lit(w)
        })
        .collect();
    Ok(pairwise_sum(&weighted) * (h / T::lit(3.0)))
}
