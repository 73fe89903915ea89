//! Special-function kernels: Hermite polynomials, complex Gamma, Bessel `J_ν`
//! of complex order and the hypergeometric `1F2`, all from their defining
//! power series.

mod bessel;
mod dd;
mod gamma;
mod hermite;
mod hyp;
pub(crate) mod wide;

pub use bessel::{bessel_j, bessel_j_xd};
pub(crate) use bessel::bessel_series;
pub use gamma::{gamma_complex, ln_gamma_complex, rgamma_complex};
pub use hermite::{hermite, hermite_all};
pub use hyp::{hyp1f2, hyp1f2_zd};
pub(crate) use hyp::hyp1f2_series;


use crate::error::{Error, Result};
use crate::scalar::{cplx, Scalar, C};
use dd::DoubleDouble;
use wide::{Arith, Plain, Wide};

/// Stopping rule for power series.
///
/// Summation stops once two consecutive terms fall below
/// `rel_tol * |partial sum| + abs_floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: 5000,
            rel_tol: 1e-18,
            abs_floor: 1e-300,
        }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, abs_floor: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Config("max_terms must be at least 1".into()));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::Config(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if !(abs_floor >= 0.0 && abs_floor.is_finite()) {
            return Err(Error::Config(format!("abs_floor must be nonnegative, got {abs_floor}")));
        }
        Ok(SeriesControl {
            max_terms,
            rel_tol,
            abs_floor,
        })
    }
}

/// Series value `Σ t_k` together with the weighted sum `Σ w_k t_k`.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOut<T> {
    pub sum: C<T>,
    pub wsum: C<T>,
    pub terms: usize,
}

/// Shape of a series with `t_0 = 1`: the ratio `t_{k+1}/t_k` and weights `w_k`.
pub(crate) trait SeriesShape<T: Scalar> {
    fn op(&self) -> &'static str;
    /// Estimate of `|t_{k+1}/t_k|`, for precision planning.
    fn ratio_mag(&self, k: usize) -> f64;
    fn step<A: Arith<T>>(&self, ar: &A, consts: &[A::V], k: usize, t: &A::V) -> A::V;
    fn weight<A: Arith<T>>(&self, ar: &A, consts: &[A::V], k: usize) -> A::V;
    /// Constants lifted once into the arithmetic back end.
    fn constants<A: Arith<T>>(&self, ar: &A) -> Vec<A::V>;
}

/// The real variable a series is expanded in, described so that the wide back
/// end can form it without first rounding it to `T`.
#[derive(Debug, Clone, Copy)]
pub enum SeriesVar<T> {
    Value(T),
    /// `-x²/4`
    NegQuarterSquare(T),
    /// `coef * exp(rate * t)`
    Exp { coef: T, rate: T, t: T },
}

impl<T: Scalar> SeriesVar<T> {
    pub(crate) fn approx(&self) -> f64 {
        match *self {
            SeriesVar::Value(v) => v.to_f64_lossy(),
            SeriesVar::NegQuarterSquare(x) => {
                let x = x.to_f64_lossy();
                -x * x / 4.0
            }
            SeriesVar::Exp { coef, rate, t } => {
                coef.to_f64_lossy() * (rate.to_f64_lossy() * t.to_f64_lossy()).exp()
            }
        }
    }

    pub(crate) fn lift<A: Arith<T>>(&self, ar: &A) -> A::V {
        match *self {
            SeriesVar::Value(v) => ar.lift(cplx(v, T::zero())),
            SeriesVar::NegQuarterSquare(x) => {
                let xv = ar.lift(cplx(x, T::zero()));
                ar.div(&ar.mul(&xv, &xv), &ar.int(-4))
            }
            SeriesVar::Exp { coef, rate, t } => ar.exp_mul(coef, rate, t),
        }
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.approx().is_finite()
    }
}

struct Plan {
    ln_max: f64,
    terms: usize,
}

fn plan<T: Scalar, S: SeriesShape<T>>(s: &S, max_terms: usize) -> Plan {
    let mut lm = 0.0f64;
    let mut ln_max = 0.0f64;
    let mut k = 0;
    while k < max_terms {
        let r = s.ratio_mag(k);
        if r == 0.0 {
            break;
        }
        lm += r.ln();
        ln_max = ln_max.max(lm);
        k += 1;
        if r < 1.0 && lm < -50.0 {
            break;
        }
    }
    Plan { ln_max, terms: k }
}

fn drive<T: Scalar, S: SeriesShape<T>, A: Arith<T>>(
    s: &S,
    ar: &A,
    ctl: &SeriesControl,
) -> Result<SeriesOut<T>> {
    let consts: Vec<A::V> = s.constants(ar);
    let mut t = ar.int(1);
    let mut sum = t.clone();
    let mut wsum = ar.mul(&s.weight(ar, &consts, 0), &t);
    let mut small = 0;
    for k in 0..ctl.max_terms {
        t = s.step(ar, &consts, k, &t);
        let wt = ar.mul(&s.weight(ar, &consts, k + 1), &t);
        sum = ar.add(&sum, &t);
        wsum = ar.add(&wsum, &wt);
        let tm = ar.mag(&t);
        let wm = ar.mag(&wt);
        if !tm.is_finite() {
            break;
        }
        let ok = tm <= ctl.rel_tol * ar.mag(&sum) + ctl.abs_floor
            && wm <= ctl.rel_tol * ar.mag(&wsum) + ctl.abs_floor;
        if ok {
            small += 1;
            if small >= 2 {
                return Ok(SeriesOut {
                    sum: ar.lower(&sum),
                    wsum: ar.lower(&wsum),
                    terms: k + 2,
                });
            }
        } else {
            small = 0;
        }
    }
    let p = ar.lower(&sum);
    Err(Error::Convergence {
        op: s.op(),
        terms: ctl.max_terms,
        partial_re: p.re.to_f64_lossy(),
        partial_im: p.im.to_f64_lossy(),
    })
}

/// Ceiling on the working precision; beyond it the ascending series is
/// hopeless in reasonable time.
const MAX_PREC_BITS: f64 = 20_000.0;

/// Bits a double-double sum may give up to cancellation and rounding growth
/// while still leaving the result well below one `f64` ulp.
const DD_BUDGET_BITS: f64 = 40.0;

/// Sums the series in plain arithmetic when the terms never grow, in
/// double-double when the cancellation is moderate, otherwise in fixed-point
/// arithmetic wide enough to absorb it.
pub(crate) fn sum_series<T: Scalar, S: SeriesShape<T>>(
    s: &S,
    ctl: &SeriesControl,
) -> Result<SeriesOut<T>> {
    let p = plan(s, ctl.max_terms);
    if p.ln_max <= std::f64::consts::LN_2 {
        return drive(s, &Plain, ctl);
    }
    let lost = p.ln_max / std::f64::consts::LN_2;
    if lost + 2.0 * ((p.terms + 1) as f64).log2() <= DD_BUDGET_BITS {
        return drive(s, &DoubleDouble, ctl);
    }
    let guard = 2.0 * ((p.terms + 1) as f64).log2().ceil() + 32.0;
    let bits = 64.0 + lost.ceil() + guard;
    if !bits.is_finite() || bits > MAX_PREC_BITS {
        return Err(Error::range(
            s.op(),
            format!("series cancellation of {lost:.0} bits exceeds the supported range"),
        ));
    }
    drive(s, &Wide::new(bits as u64), ctl)
}

/// True for `z` equal to `0, -1, -2, ...`.
pub(crate) fn is_nonpositive_integer<T: Scalar>(z: C<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}
