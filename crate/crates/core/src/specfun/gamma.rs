use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cplx, is_finite_c, Scalar, C};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn check_pole<T: Scalar>(z: C<T>, op: &'static str) -> Result<()> {
    if !is_finite_c(z) {
        return Err(Error::domain(op, format!("non-finite argument {z}")));
    }
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::domain(op, format!("pole at {}", z.re)));
    }
    Ok(())
}

// ln Γ(z) for Re z >= 1/2.
fn ln_gamma_right<T: Scalar>(z: C<T>) -> C<T> {
    let zm = z - T::one();
    let mut acc = cplx(T::lit(LANCZOS[0]), T::zero());
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + (zm + T::of(i)).inv() * T::lit(c);
    }
    let t = zm + T::lit(LANCZOS_G + 0.5);
    let half_ln_2pi = T::lit(0.918_938_533_204_672_8);
    (zm + T::lit(0.5)) * t.ln() - t + acc.ln() + half_ln_2pi
}

/// `sin(pi z)` with the real part reduced exactly modulo 2 first.
fn sin_pi<T: Scalar>(z: C<T>) -> C<T> {
    let two = T::lit(2.0);
    let r = z.re - two * (z.re / two).round();
    let pi = T::PI();
    let (s, c) = (pi * r).sin_cos();
    cplx(s * (pi * z.im).cosh(), c * (pi * z.im).sinh())
}

/// Principal-branch-free logarithm of Γ(z): returns `ln|Γ(z)| + i arg` where the
/// imaginary part is only defined modulo 2π. Suitable for `exp` afterwards.
pub fn ln_gamma_complex<T: Scalar>(z: C<T>) -> Result<C<T>> {
    check_pole(z, "ln_gamma_complex")?;
    if z.re >= T::lit(0.5) {
        return Ok(ln_gamma_right(z));
    }
    // Γ(z) Γ(1-z) = π / sin(πz)
    let one = cplx(T::one(), T::zero());
    let s = sin_pi(z);
    Ok(cplx(T::PI().ln(), T::zero()) - s.ln() - ln_gamma_right(one - z))
}

/// Complex Gamma function (Lanczos, g = 7, with reflection for `Re z < 1/2`).
pub fn gamma_complex<T: Scalar>(z: C<T>) -> Result<C<T>> {
    let v = ln_gamma_complex(z)?.exp();
    if !is_finite_c(v) {
        return Err(Error::range("gamma_complex", format!("Γ({z}) not representable")));
    }
    Ok(v)
}

/// `1/Γ(z)`, which is entire: returns zero at the poles instead of failing.
pub fn rgamma_complex<T: Scalar>(z: C<T>) -> Result<C<T>> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    Ok((-ln_gamma_complex(z)?).exp())
}
