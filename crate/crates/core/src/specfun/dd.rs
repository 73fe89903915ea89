//! Double-double complex arithmetic: each component is an unevaluated sum
//! `hi + lo` of two `f64`, giving about 106 significant bits. Used for series
//! whose cancellation is moderate, where it is far cheaper than [`super::wide::Wide`].

use super::wide::Arith;
use crate::scalar::{cplx, Scalar, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub(crate) fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::norm(s, e + f)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    pub(crate) fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::norm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::norm(p, e + self.lo * b)
    }

    pub(crate) fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 }.add(Dd::from_f64(q3))
    }

    fn ldexp(self, e: i32) -> Dd {
        let s = 2f64.powi(e);
        Dd {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// `e^x`: `x = k ln2 + r`, Taylor series for `expm1(r/2⁹)`, then nine
    /// doublings `expm1(2u) = expm1(u)(2 + expm1(u))`.
    pub(crate) fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(k)).ldexp(-9);
        let mut term = r;
        let mut s = r;
        for j in 2..20 {
            term = term.mul(r).div(Dd::from_f64(j as f64));
            s = s.add(term);
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..9 {
            s = s.mul(Dd::from_f64(2.0).add(s));
        }
        Dd::from_f64(1.0).add(s).ldexp(k as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cdd {
    re: Dd,
    im: Dd,
}

pub(crate) struct DoubleDouble;

impl<T: Scalar> Arith<T> for DoubleDouble {
    type V = Cdd;
    fn lift(&self, z: C<T>) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re.to_f64_lossy()),
            im: Dd::from_f64(z.im.to_f64_lossy()),
        }
    }
    fn int(&self, k: i64) -> Cdd {
        Cdd {
            re: Dd::from_f64(k as f64),
            im: Dd::ZERO,
        }
    }
    fn add(&self, a: &Cdd, b: &Cdd) -> Cdd {
        Cdd {
            re: a.re.add(b.re),
            im: a.im.add(b.im),
        }
    }
    fn mul(&self, a: &Cdd, b: &Cdd) -> Cdd {
        Cdd {
            re: a.re.mul(b.re).sub(a.im.mul(b.im)),
            im: a.re.mul(b.im).add(a.im.mul(b.re)),
        }
    }
    fn div(&self, a: &Cdd, b: &Cdd) -> Cdd {
        let den = b.re.mul(b.re).add(b.im.mul(b.im));
        let nr = a.re.mul(b.re).add(a.im.mul(b.im));
        let ni = a.im.mul(b.re).sub(a.re.mul(b.im));
        Cdd {
            re: nr.div(den),
            im: ni.div(den),
        }
    }
    fn mag(&self, a: &Cdd) -> f64 {
        a.re.to_f64().hypot(a.im.to_f64())
    }
    fn lower(&self, a: &Cdd) -> C<T> {
        cplx(T::lit(a.re.to_f64()), T::lit(a.im.to_f64()))
    }
    fn exp_mul(&self, coef: T, rate: T, t: T) -> Cdd {
        let (p, e) = two_prod(rate.to_f64_lossy(), t.to_f64_lossy());
        Cdd {
            re: Dd::norm(p, e).exp().mul_f64(coef.to_f64_lossy()),
            im: Dd::ZERO,
        }
    }
}
