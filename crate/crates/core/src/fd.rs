//! Central finite-difference stencils used by the residual checks.

use crate::scalar::Scalar;

/// Accuracy order of a central stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    Second,
    Fourth,
    Sixth,
    Eighth,
}

impl FdOrder {
    /// Half-width of the stencil (number of points on each side).
    pub fn half_width(self) -> usize {
        match self {
            FdOrder::Second => 1,
            FdOrder::Fourth => 2,
            FdOrder::Sixth => 3,
            FdOrder::Eighth => 4,
        }
    }

    // weights for offsets 1..=half_width, first derivative (antisymmetric)
    fn d1(self) -> &'static [f64] {
        match self {
            FdOrder::Second => &[1.0 / 2.0],
            FdOrder::Fourth => &[2.0 / 3.0, -1.0 / 12.0],
            FdOrder::Sixth => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
            FdOrder::Eighth => &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
        }
    }

    // (centre, offsets 1..=half_width), second derivative (symmetric)
    fn d2(self) -> (f64, &'static [f64]) {
        match self {
            FdOrder::Second => (-2.0, &[1.0]),
            FdOrder::Fourth => (-5.0 / 2.0, &[4.0 / 3.0, -1.0 / 12.0]),
            FdOrder::Sixth => (-49.0 / 18.0, &[3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0]),
            FdOrder::Eighth => (
                -205.0 / 72.0,
                &[8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
            ),
        }
    }
}

/// Offsets `-k..=k` (in units of the step) at which a stencil samples.
pub fn offsets(order: FdOrder) -> impl Iterator<Item = i32> {
    let k = order.half_width() as i32;
    -k..=k
}

/// First derivative from samples at `x + j h`, `j = -k..=k` (centre included).
pub fn d1_from_samples<T: Scalar>(samples: &[T], h: T, order: FdOrder) -> T {
    let k = order.half_width();
    debug_assert_eq!(samples.len(), 2 * k + 1);
    let mut acc = T::zero();
    for (j, w) in order.d1().iter().enumerate() {
        acc += T::lit(*w) * (samples[k + j + 1] - samples[k - j - 1]);
    }
    acc / h
}

/// Second derivative from samples at `x + j h`, `j = -k..=k`.
pub fn d2_from_samples<T: Scalar>(samples: &[T], h: T, order: FdOrder) -> T {
    let k = order.half_width();
    debug_assert_eq!(samples.len(), 2 * k + 1);
    let (c0, ws) = order.d2();
    let mut acc = T::lit(c0) * samples[k];
    for (j, w) in ws.iter().enumerate() {
        acc += T::lit(*w) * (samples[k + j + 1] + samples[k - j - 1]);
    }
    acc / (h * h)
}

/// First derivative of `f` at `x`.
pub fn d1<T: Scalar, F: FnMut(T) -> T>(mut f: F, x: T, h: T, order: FdOrder) -> T {
    let s: Vec<T> = offsets(order).map(|j| f(x + T::lit(j as f64) * h)).collect();
    d1_from_samples(&s, h, order)
}

/// Second derivative of `f` at `x`.
pub fn d2<T: Scalar, F: FnMut(T) -> T>(mut f: F, x: T, h: T, order: FdOrder) -> T {
    let s: Vec<T> = offsets(order).map(|j| f(x + T::lit(j as f64) * h)).collect();
    d2_from_samples(&s, h, order)
}

/// Weights exposed for complex-valued stencils: `(d1 weights, d2 centre, d2 weights)`.
pub fn weights(order: FdOrder) -> (&'static [f64], f64, &'static [f64]) {
    let (c, w2) = order.d2();
    (order.d1(), c, w2)
}
