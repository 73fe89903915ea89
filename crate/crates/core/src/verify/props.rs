//! Randomized property suites with a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{worse, Item};
use crate::classical::{const_mass_solution, integrate_numeric, ClassicalState};
use crate::error::Result;
use crate::model::{bosonic_from_quad, quad_from_bosonic, BosonicParams, ModelConfig};
use crate::specfun::{bessel_j, hermite_all, SeriesControl};
use num_complex::Complex64;

pub const CASES: usize = 200;
const SEED: u64 = 0x5eed_0f_05c;

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn conversion_roundtrip() -> Result<f64> {
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let cfg = ModelConfig::new(
            r.gen_range(0.5..2.0),
            r.gen_range(0.5..2.0),
            r.gen_range(0.5..2.0),
            0.0,
            0.0,
            0.0,
        )?;
        let (a2, b2) = (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let den: f64 = r.gen_range(0.2..3.0);
        let p = BosonicParams::new(
            r.gen_range(-2.0..2.0),
            a2,
            r.gen_range(-2.0..2.0),
            b2,
            (den + a2 + b2) / 2.0,
        )?;
        let back = bosonic_from_quad(&quad_from_bosonic(&p, &cfg)?, &cfg)?;
        let pairs = [
            (p.alpha1, back.alpha1),
            (p.alpha2, back.alpha2),
            (p.beta1, back.beta1),
            (p.beta2, back.beta2),
            (p.theta, back.theta),
        ];
        for (a, b) in pairs {
            worst = worse(worst, (a - b).abs() / a.abs().max(1.0));
        }
    }
    Ok(worst)
}

/// Largest recurrence defect and number of parity violations.
fn hermite_recurrence_parity() -> Result<(f64, usize)> {
    let mut r = rng(2);
    let mut defect = 0.0f64;
    let mut parity = 0;
    for _ in 0..CASES {
        let z: f64 = r.gen_range(-5.0..5.0);
        let n = r.gen_range(1..=20usize);
        let h = hermite_all(n as u32 + 1, z)?;
        let hm = hermite_all(n as u32 + 1, -z)?;
        let next = 2.0 * z * h[n] - 2.0 * n as f64 * h[n - 1];
        defect = worse(defect, (h[n + 1] - next).abs());
        for (k, (a, b)) in h.iter().zip(&hm).enumerate() {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            if *b != s * a {
                parity += 1;
            }
        }
    }
    Ok((defect, parity))
}

fn bessel_conjugation() -> Result<f64> {
    let mut r = rng(3);
    let ctl = SeriesControl::default();
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let l: f64 = r.gen_range(0.1..2.0);
        let x: f64 = r.gen_range(1e-3..10.0);
        let p = bessel_j(Complex64::new(0.0, l), x, &ctl)?;
        let m = bessel_j(Complex64::new(0.0, -l), x, &ctl)?;
        worst = worse(worst, (m - p.conj()).norm() / p.norm());
    }
    Ok(worst)
}

/// Observed convergence orders `log2(e(h)/e(h/2))`: (min, max).
fn rk4_order() -> Result<(f64, f64)> {
    let mut r = rng(4);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let t_end = 2.0;
    for _ in 0..CASES {
        let cfg = ModelConfig::units(r.gen_range(0.5..2.0), 0.0, r.gen_range(0.0..1.5), r.gen_range(0.0..2.0))?;
        let ic = ClassicalState::new(0.0, r.gen_range(-1.0..1.0), r.gen_range(-2.0..2.0));
        let exact = const_mass_solution(&ic, &cfg)?;
        let err = |h: f64| -> Result<f64> {
            let traj = integrate_numeric(&ic, &cfg, t_end, h)?;
            let mut e = 0.0f64;
            for s in &traj {
                let x = exact.eval(s.t)?;
                e = worse(worse(e, (s.q - x.q).abs()), (s.qdot - x.qdot).abs());
            }
            Ok(e)
        };
        let p = (err(0.02)? / err(0.01)?).log2();
        lo = lo.min(p);
        hi = worse(hi, p);
    }
    Ok((lo, hi))
}

pub fn run(_: &[f64]) -> Result<Vec<Item>> {
    let (defect, parity) = hermite_recurrence_parity()?;
    let (lo, hi) = rk4_order()?;
    let n = CASES;
    Ok(vec![
        Item::below(format!("conversion roundtrip, {n} cases"), conversion_roundtrip()?, 1e-12),
        Item::zero(format!("Hermite recurrence defect, {n} cases"), defect),
        Item::zero(format!("Hermite parity violations, {n} cases"), parity as f64),
        Item::below(format!("J conjugation symmetry, {n} cases"), bessel_conjugation()?, 1e-12),
        Item::above(format!("RK4 order (min), {n} cases"), lo, 3.8),
        Item::below(format!("RK4 order (max), {n} cases"), hi, 4.2),
    ])
}
