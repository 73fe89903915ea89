use crate::error::{Error, Result};
use crate::scalar::{is_finite_c, Scalar, C};

use super::gamma::ln_gamma_complex;
use super::wide::Arith;
use super::{is_nonpositive_integer, sum_series, SeriesControl, SeriesOut, SeriesShape, SeriesVar};

// J_ν(x) = (x/2)^ν / Γ(ν+1) · Σ t_k,  t_{k+1} = t_k · w / ((k+1)(ν+k+1)),  w = -x²/4.
// The weighted sum with w_k = ν + 2k gives x J'_ν(x) after the same prefactor.
struct JSeries<T> {
    nu: C<T>,
    w: SeriesVar<T>,
    wf: f64,
    nu_f: (f64, f64),
}

impl<T: Scalar> SeriesShape<T> for JSeries<T> {
    fn op(&self) -> &'static str {
        "bessel_j"
    }
    fn ratio_mag(&self, k: usize) -> f64 {
        let kp = (k + 1) as f64;
        let d = (self.nu_f.0 + kp).hypot(self.nu_f.1);
        self.wf.abs() / (kp * d)
    }
    fn constants<A: Arith<T>>(&self, ar: &A) -> Vec<A::V> {
        vec![ar.lift(self.nu), self.w.lift(ar)]
    }
    fn step<A: Arith<T>>(&self, ar: &A, c: &[A::V], k: usize, t: &A::V) -> A::V {
        let num = ar.mul(t, &c[1]);
        let kp = ar.int(k as i64 + 1);
        let den = ar.mul(&kp, &ar.add(&c[0], &kp));
        ar.div(&num, &den)
    }
    fn weight<A: Arith<T>>(&self, ar: &A, c: &[A::V], k: usize) -> A::V {
        ar.add(&c[0], &ar.int(2 * k as i64))
    }
}

/// Bare series `(Σ t_k, Σ (ν+2k) t_k)` of `J_ν` in the variable `w = -x²/4`.
pub(crate) fn bessel_series<T: Scalar>(
    nu: C<T>,
    w: SeriesVar<T>,
    ctl: &SeriesControl,
) -> Result<SeriesOut<T>> {
    if is_nonpositive_integer(nu + T::one()) {
        return Err(Error::domain("bessel_j", format!("order {nu} needs the reflection formula")));
    }
    if !w.is_finite() {
        return Err(Error::domain("bessel_j", "non-finite argument"));
    }
    let series = JSeries {
        nu,
        w,
        wf: w.approx(),
        nu_f: (nu.re.to_f64_lossy(), nu.im.to_f64_lossy()),
    };
    sum_series(&series, ctl)
}

/// Bessel function of the first kind `J_ν(x)` for complex order and `x > 0`,
/// from the ascending series.
pub fn bessel_j<T: Scalar>(nu: C<T>, x: T, ctl: &SeriesControl) -> Result<C<T>> {
    Ok(bessel_j_xd(nu, x, ctl)?.0)
}

/// `(J_ν(x), x J'_ν(x))`, both from the same series pass.
pub fn bessel_j_xd<T: Scalar>(nu: C<T>, x: T, ctl: &SeriesControl) -> Result<(C<T>, C<T>)> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("bessel_j", format!("argument must be positive, got {x}")));
    }
    if !is_finite_c(nu) {
        return Err(Error::domain("bessel_j", format!("non-finite order {nu}")));
    }
    if is_nonpositive_integer(nu) && nu.re != T::zero() {
        // J_{-n} = (-1)^n J_n
        let n = (-nu.re).to_f64_lossy() as i64;
        let (j, xd) = bessel_j_xd(-nu, x, ctl)?;
        let s = if n % 2 == 0 { T::one() } else { -T::one() };
        return Ok((j * s, xd * s));
    }
    let out = bessel_series(nu, SeriesVar::NegQuarterSquare(x), ctl)?;
    let half = x * T::lit(0.5);
    let lnp = nu * half.ln() - ln_gamma_complex(nu + T::one())?;
    let pref = lnp.exp();
    let j = pref * out.sum;
    let xd = pref * out.wsum;
    if !is_finite_c(j) || !is_finite_c(xd) {
        return Err(Error::range("bessel_j", format!("J_{nu}({x}) not representable")));
    }
    Ok((j, xd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn integer_orders_match_reference_values() {
        // J_0(1), J_1(2.5), J_0(30) (frozen from mpmath)
        let j0 = bessel_j(Complex64::new(0.0, 0.0), 1.0, &ctl()).unwrap();
        assert!((j0.re - 0.76519768655796655145).abs() < 1e-15);
        let j1 = bessel_j(Complex64::new(1.0, 0.0), 2.5, &ctl()).unwrap();
        assert!((j1.re - 0.49709410246427404).abs() < 1e-15);
        let j = bessel_j(Complex64::new(0.0, 0.0), 30.0, &ctl()).unwrap();
        assert!((j.re + 0.086367983581040211).abs() < 1e-15);
        let jm = bessel_j(Complex64::new(-1.0, 0.0), 2.5, &ctl()).unwrap();
        assert!((jm.re + j1.re).abs() < 1e-16);
    }

    #[test]
    fn small_argument_limit() {
        let j = bessel_j(Complex64::new(0.0, 0.0), 1e-12, &ctl()).unwrap();
        assert!((j - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        let nu = Complex64::new(0.0, 1.0);
        assert!(matches!(bessel_j(nu, 0.0, &ctl()), Err(Error::Domain { .. })));
        assert!(matches!(bessel_j(nu, -1.0, &ctl()), Err(Error::Domain { .. })));
        let tight = SeriesControl::new(3, 1e-16, 0.0).unwrap();
        match bessel_j(nu, 5.0, &tight) {
            Err(Error::Convergence { terms, .. }) => assert_eq!(terms, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn derivative_matches_neighbour_order_identity() {
        // x J'_ν = x (J_{ν-1} - J_{ν+1}) / 2
        let nu = Complex64::new(0.0, 0.8660254037844386);
        for x in [0.3, 3.0, 17.0, 55.0] {
            let (_, xd) = bessel_j_xd(nu, x, &ctl()).unwrap();
            let a = bessel_j(nu - 1.0, x, &ctl()).unwrap();
            let b = bessel_j(nu + 1.0, x, &ctl()).unwrap();
            let id = (a - b) * (x / 2.0);
            assert!((xd - id).norm() <= 1e-13 * id.norm().max(1e-3), "x={x}");
        }
    }

    #[test]
    fn bessel_ode_residual() {
        for lam in [0.5, 0.866, 2.0] {
            let nu = Complex64::new(0.0, lam);
            for i in 0..=30 {
                let x = 0.5 + 7.5 * i as f64 / 30.0;
                let h = 1e-4;
                let f = |s: f64| bessel_j(nu, s, &ctl()).unwrap();
                let (fm, f0, fp) = (f(x - h), f(x), f(x + h));
                let d1 = (fp - fm) / (2.0 * h);
                let d2 = (fp - 2.0 * f0 + fm) / (h * h);
                let r = d2 * x * x + d1 * x + f0 * (x * x - nu * nu);
                let scale = (f0 * (x * x - nu * nu)).norm().max((d2 * x * x).norm());
                assert!(r.norm() / scale < 1e-6, "lam={lam} x={x}");
            }
        }
    }

    #[test]
    fn large_argument_keeps_full_accuracy() {
        // J_0(445), frozen from mpmath
        let j = bessel_j(Complex64::new(0.0, 0.0), 445.0, &ctl()).unwrap();
        assert!((j.re + 0.011935275729839978).abs() < 1e-16, "{j}");
    }

    #[test]
    fn f32_instantiation() {
        let j = bessel_j(num_complex::Complex32::new(0.0, 0.0), 1.0f32, &ctl()).unwrap();
        assert!((j.re - 0.7651977).abs() < 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn conjugation_symmetry(li in 0usize..3, x in 1e-3f64..10.0) {
            let lam = [0.5, 0.866, 2.0][li];
            let a = bessel_j(Complex64::new(0.0, lam), x, &ctl()).unwrap();
            let b = bessel_j(Complex64::new(0.0, -lam), x, &ctl()).unwrap();
            prop_assert!((b - a.conj()).norm() <= 1e-12 * a.norm().max(1e-300));
        }
    }
}
