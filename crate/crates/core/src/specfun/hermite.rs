use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Physicists' Hermite polynomial `H_n(z)` by upward recurrence.
pub fn hermite<T: Scalar>(n: u32, z: T) -> Result<T> {
    let mut out = [T::zero()];
    hermite_into(n, z, &mut out[..], true)?;
    Ok(out[0])
}

/// `H_0(z), ..., H_{n_max}(z)`.
pub fn hermite_all<T: Scalar>(n_max: u32, z: T) -> Result<Vec<T>> {
    let mut out = vec![T::zero(); n_max as usize + 1];
    hermite_into(n_max, z, &mut out, false)?;
    Ok(out)
}

fn hermite_into<T: Scalar>(n: u32, z: T, out: &mut [T], last_only: bool) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::domain("hermite", format!("non-finite argument {z}")));
    }
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = T::one();
    let store = |k: usize, v: T, out: &mut [T]| {
        if !last_only {
            out[k] = v;
        }
    };
    store(0, cur, out);
    for k in 0..n {
        // H_{k+1} = 2z H_k - 2k H_{k-1}
        let next = two * z * cur - two * T::of(k as usize) * prev;
        if !next.is_finite() {
            return Err(Error::range(
                "hermite",
                format!("H_{} overflows at z = {z}", k + 1),
            ));
        }
        prev = cur;
        cur = next;
        store(k as usize + 1, cur, out);
    }
    if last_only {
        out[0] = cur;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite(0, 0.7).unwrap(), 1.0);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0);
        let z: f64 = 0.3;
        let brute = 32.0 * z.powi(5) - 160.0 * z.powi(3) + 120.0 * z;
        assert!((hermite(5, z).unwrap() - brute).abs() < 1e-12);
        assert!((hermite(5, z).unwrap() - 31.75776).abs() < 1e-10);
        assert_eq!(hermite(3, 2.0f32).unwrap(), 40.0);
    }

    #[test]
    fn recurrence_and_parity_on_grid() {
        for i in 0..=100 {
            let z = -5.0 + 0.1 * i as f64;
            let h = hermite_all(21, z).unwrap();
            for n in 1..=20usize {
                let lhs = 2.0 * z * h[n] - 2.0 * n as f64 * h[n - 1];
                assert_eq!(h[n + 1], lhs);
                assert_eq!(hermite(n as u32, z).unwrap(), h[n]);
                let m = hermite(n as u32, -z).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(m, sign * h[n]);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            hermite(200, 1e150f64),
            Err(Error::Range { .. })
        ));
        assert!(hermite(3, f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn parity_random(n in 0u32..=20, z in -5.0f64..5.0) {
            let a = hermite(n, z).unwrap();
            let b = hermite(n, -z).unwrap();
            prop_assert_eq!(b, if n % 2 == 0 { a } else { -a });
        }
    }
}
