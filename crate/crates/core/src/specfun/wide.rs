//! Arithmetic back ends for the power-series kernels.
//!
//! Alternating series such as `J_ν(x)` for large `x` lose about `log2(max term)`
//! bits to cancellation. [`Wide`] carries complex values as binary fixed-point
//! big integers with a precision chosen per call so that the final result is
//! accurate to working precision; [`Plain`] is the fast path used when the
//! terms never grow.

use num_bigint::BigInt;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::scalar::{cplx, Scalar, C};

pub(crate) trait Arith<T: Scalar> {
    type V: Clone;
    fn lift(&self, z: C<T>) -> Self::V;
    fn int(&self, k: i64) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Self::V;
    /// Modulus as an `f64` (used only for stopping tests and diagnostics).
    fn mag(&self, a: &Self::V) -> f64;
    fn lower(&self, a: &Self::V) -> C<T>;
    /// `coef * exp(rate * t)` with the product `rate * t` formed exactly.
    fn exp_mul(&self, coef: T, rate: T, t: T) -> Self::V;
}

pub(crate) struct Plain;

impl<T: Scalar> Arith<T> for Plain {
    type V = C<T>;
    fn lift(&self, z: C<T>) -> C<T> {
        z
    }
    fn int(&self, k: i64) -> C<T> {
        cplx(T::lit(k as f64), T::zero())
    }
    fn add(&self, a: &C<T>, b: &C<T>) -> C<T> {
        a + b
    }
    fn mul(&self, a: &C<T>, b: &C<T>) -> C<T> {
        a * b
    }
    fn div(&self, a: &C<T>, b: &C<T>) -> C<T> {
        a / b
    }
    fn mag(&self, a: &C<T>) -> f64 {
        a.norm().to_f64_lossy()
    }
    fn lower(&self, a: &C<T>) -> C<T> {
        *a
    }
    fn exp_mul(&self, coef: T, rate: T, t: T) -> C<T> {
        cplx(coef * (rate * t).exp(), T::zero())
    }
}

/// Complex fixed-point number: value = (re + i im) / 2^prec.
#[derive(Clone, Debug)]
pub(crate) struct Fx {
    re: BigInt,
    im: BigInt,
}

pub(crate) struct Wide {
    prec: u64,
}

impl Wide {
    pub(crate) fn new(prec: u64) -> Self {
        Wide { prec }
    }

    fn real<T: Scalar>(&self, x: T) -> BigInt {
        if x == T::zero() {
            return BigInt::zero();
        }
        let (mant, exp, sign) = Float::integer_decode(x);
        let mut v = BigInt::from(mant);
        let shift = exp as i64 + self.prec as i64;
        if shift >= 0 {
            v <<= shift as u64;
        } else {
            v >>= (-shift) as u64;
        }
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    // exact product of two floats, as a fixed-point value
    fn product<T: Scalar>(&self, a: T, b: T) -> BigInt {
        if a == T::zero() || b == T::zero() {
            return BigInt::zero();
        }
        let (ma, ea, sa) = Float::integer_decode(a);
        let (mb, eb, sb) = Float::integer_decode(b);
        let mut v = BigInt::from(ma) * BigInt::from(mb);
        let shift = ea as i64 + eb as i64 + self.prec as i64;
        if shift >= 0 {
            v <<= shift as u64;
        } else {
            v >>= (-shift) as u64;
        }
        if (sa < 0) != (sb < 0) {
            -v
        } else {
            v
        }
    }

    // exp of a fixed-point value: Taylor series on y / 2^m, then m squarings
    fn exp_fx(&self, y: &BigInt) -> BigInt {
        let m = (y.bits() as i64 - self.prec as i64 + 8).max(0) as u64;
        let p = self.prec + m + 16;
        let r = y << 16u32; // y / 2^m at precision p
        let one = BigInt::one() << p;
        let mut sum = one.clone();
        let mut term = one;
        let mut k = 1u64;
        loop {
            term = ((&term * &r) >> p) / BigInt::from(k);
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        for _ in 0..m {
            sum = (&sum * &sum) >> p;
        }
        sum >> (p - self.prec)
    }

    // a * b / 2^prec, rounding toward negative infinity.
    fn rmul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.prec
    }
}

/// `v / 2^prec` as an `f64`, correct to about one ulp for any `prec`.
pub(crate) fn scaled_to_f64(v: &BigInt, prec: u64) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return 0.0;
    }
    let (m, e) = if bits > 64 {
        let sh = bits - 64;
        ((v >> sh).to_f64().unwrap_or(f64::NAN), sh as i64 - prec as i64)
    } else {
        (v.to_f64().unwrap_or(f64::NAN), -(prec as i64))
    };
    ldexp(m, e)
}

fn ldexp(m: f64, e: i64) -> f64 {
    // split to keep each factor a normal power of two
    let mut m = m;
    let mut e = e;
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

impl<T: Scalar> Arith<T> for Wide {
    type V = Fx;
    fn lift(&self, z: C<T>) -> Fx {
        Fx {
            re: self.real(z.re),
            im: self.real(z.im),
        }
    }
    fn int(&self, k: i64) -> Fx {
        Fx {
            re: BigInt::from(k) << self.prec,
            im: BigInt::zero(),
        }
    }
    fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }
    fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: self.rmul(&a.re, &b.re) - self.rmul(&a.im, &b.im),
            im: self.rmul(&a.re, &b.im) + self.rmul(&a.im, &b.re),
        }
    }
    fn div(&self, a: &Fx, b: &Fx) -> Fx {
        // a / b = a conj(b) / |b|^2
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            let inf = BigInt::one() << (self.prec + 4096);
            return Fx {
                re: inf.clone(),
                im: inf,
            };
        }
        let nr = &a.re * &b.re + &a.im * &b.im;
        let ni = &a.im * &b.re - &a.re * &b.im;
        Fx {
            re: (nr << self.prec) / &den,
            im: (ni << self.prec) / &den,
        }
    }
    fn mag(&self, a: &Fx) -> f64 {
        let r = scaled_to_f64(&a.re, self.prec);
        let i = scaled_to_f64(&a.im, self.prec);
        r.hypot(i)
    }
    fn lower(&self, a: &Fx) -> C<T> {
        cplx(
            T::lit(scaled_to_f64(&a.re, self.prec)),
            T::lit(scaled_to_f64(&a.im, self.prec)),
        )
    }
    fn exp_mul(&self, coef: T, rate: T, t: T) -> Fx {
        let e = self.exp_fx(&self.product(rate, t));
        Fx {
            re: self.rmul(&self.real(coef), &e),
            im: BigInt::zero(),
        }
    }
}
