//! Reference values computed independently of the library kernels: ascending
//! series summed in decimal fixed point, and `Γ` by Stirling's series after
//! upward recurrence.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, Zero};

/// Complex number scaled by `10^digits`.
#[derive(Clone, Debug)]
struct Dec {
    re: BigInt,
    im: BigInt,
}

struct Decimal {
    digits: u32,
    one: BigInt,
}

impl Decimal {
    fn new(digits: u32) -> Self {
        Decimal {
            digits,
            one: BigInt::from(10u32).pow(digits),
        }
    }

    fn real(&self, x: f64) -> BigInt {
        let (m, e, s) = x.integer_decode();
        let v = BigInt::from(m) * &self.one;
        let v = if e >= 0 { v << e as usize } else { v >> (-e) as usize };
        if s < 0 {
            -v
        } else {
            v
        }
    }

    fn c(&self, z: Complex64) -> Dec {
        Dec {
            re: self.real(z.re),
            im: self.real(z.im),
        }
    }

    fn int(&self, k: i64) -> Dec {
        Dec {
            re: BigInt::from(k) * &self.one,
            im: BigInt::zero(),
        }
    }

    fn add(&self, a: &Dec, b: &Dec) -> Dec {
        Dec {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    fn mul(&self, a: &Dec, b: &Dec) -> Dec {
        Dec {
            re: (&a.re * &b.re - &a.im * &b.im) / &self.one,
            im: (&a.re * &b.im + &a.im * &b.re) / &self.one,
        }
    }

    fn div(&self, a: &Dec, b: &Dec) -> Dec {
        let den = &b.re * &b.re + &b.im * &b.im;
        Dec {
            re: (&a.re * &b.re + &a.im * &b.im) * &self.one / &den,
            im: (&a.im * &b.re - &a.re * &b.im) * &self.one / &den,
        }
    }

    /// True once `|a| < 10^-exp`.
    fn below(&self, a: &Dec, exp: u32) -> bool {
        let lim = BigInt::from(10u32).pow(self.digits.saturating_sub(exp));
        a.re.abs() < lim && a.im.abs() < lim
    }

    fn to_f64(&self, v: &BigInt) -> f64 {
        let s = v.abs().to_string();
        let d = self.digits as usize;
        let s = if s.len() <= d {
            format!("0.{}{s}", "0".repeat(d - s.len()))
        } else {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        };
        let x: f64 = s.parse().expect("decimal literal");
        if v.is_negative() {
            -x
        } else {
            x
        }
    }

    fn lower(&self, a: &Dec) -> Complex64 {
        Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }
}

/// Sums `Σ t_k` with `t_0 = 1` and `t_{k+1} = t_k · num(k) / den(k)` until the
/// terms stay under `10^-40`. `log10_peak` bounds the largest term.
fn decimal_series<N, D>(log10_peak: f64, min_terms: usize, num: N, den: D) -> Complex64
where
    N: Fn(&Decimal, i64) -> Dec,
    D: Fn(&Decimal, i64) -> Dec,
{
    let digits = 60 + log10_peak.max(0.0).ceil() as u32;
    let ar = Decimal::new(digits);
    let mut t = ar.int(1);
    let mut s = t.clone();
    let mut k = 0i64;
    loop {
        t = ar.div(&ar.mul(&t, &num(&ar, k)), &den(&ar, k));
        s = ar.add(&s, &t);
        k += 1;
        if k as usize >= min_terms && ar.below(&t, 40) {
            break;
        }
    }
    ar.lower(&s)
}

/// `Σ (-x²/4)^k / (k! (ν+1)_k)`, the series part of `J_ν(x)`.
pub fn bessel_series(nu: Complex64, x: f64) -> Complex64 {
    let w = -x * x / 4.0;
    // |t_k| <= (x/2)^{2k}/(k!)² <= e^x
    let peak = x * std::f64::consts::LOG10_E;
    decimal_series(
        peak,
        (x as usize) + 10,
        |ar, _| ar.c(Complex64::new(w, 0.0)),
        |ar, k| ar.mul(&ar.int(k + 1), &ar.add(&ar.c(nu), &ar.int(k + 1))),
    )
}

/// `ln Γ(z)` for `Re z > 0`: shift to `Re z ≥ 12`, Stirling's series there.
/// The truncation error at `|z| ≥ 12` is below `1e-16`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut shift = Complex64::new(0.0, 0.0);
    let mut z = z;
    while z.re < 12.0 {
        prod *= z;
        if prod.norm() > 1e200 {
            shift += prod.ln();
            prod = Complex64::new(1.0, 0.0);
        }
        z += 1.0;
    }
    // the branch of the log is irrelevant once exponentiated
    shift += prod.ln();
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Bernoulli terms B_{2j}/(2j(2j-1) z^{2j-1})
    let coef = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
    ];
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in coef {
        corr += p * c;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + corr - shift
}

/// `J_ν(x) = (x/2)^ν / Γ(ν+1) · series`.
pub fn bessel_j(nu: Complex64, x: f64) -> Complex64 {
    let pre = (nu * (x / 2.0).ln() - ln_gamma(nu + 1.0)).exp();
    pre * bessel_series(nu, x)
}

/// `1F2(a; b1, b2; z)` for real `z`.
pub fn hyp1f2(a: Complex64, b1: Complex64, b2: Complex64, z: f64) -> Complex64 {
    // with |a| and |b| small the peak is near k = sqrt|z|, below e^{2 sqrt|z|} times a power
    let r = z.abs().sqrt();
    let grow = |p: Complex64| p.norm() + 1.0;
    let peak = (2.0 * r + 2.0 * (r + 1.0).ln() * grow(a)) * std::f64::consts::LOG10_E;
    decimal_series(
        peak,
        (2.0 * r) as usize + 10,
        |ar, k| ar.mul(&ar.add(&ar.c(a), &ar.int(k)), &ar.c(Complex64::new(z, 0.0))),
        |ar, k| {
            ar.mul(
                &ar.mul(&ar.add(&ar.c(b1), &ar.int(k)), &ar.add(&ar.c(b2), &ar.int(k))),
                &ar.int(k + 1),
            )
        },
    )
}
