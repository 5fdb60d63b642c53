//! Aberth–Ehrlich simultaneous iteration, in `f64` for cheap starting values
//! and in rounded dyadic arithmetic when `f64` is not good enough.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::cx::{eval_with_derivative, Cx};

const MAX_ITER: usize = 500;

fn initial_points(n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Root approximations from double-precision iteration on the monic
/// normalisation of `coeffs`; `None` if the coefficients do not fit `f64` or
/// the iteration fails to settle.
pub(crate) fn aberth_f64(coeffs: &[BigInt]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lc = BigRational::from_integer(coeffs[n].clone());
    let mut c = Vec::with_capacity(n + 1);
    for x in coeffs {
        let v = (BigRational::from_integer(x.clone()) / &lc).to_f64()?;
        if !v.is_finite() {
            return None;
        }
        c.push(v);
    }
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z = initial_points(n, radius.min(1e150));
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &ci in c.iter().rev() {
            dp = dp * x + p;
            p = p * x + ci;
        }
        (p, dp)
    };
    for _ in 0..MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    z.iter().all(|x| x.is_finite()).then_some(z)
}

/// Same iteration with every intermediate rounded to multiples of
/// `2^-bits`, started from `start` (or a circle when `None`).
pub(crate) fn aberth_dyadic(coeffs: &[BigInt], bits: u32, start: Option<Vec<Cx>>) -> Vec<Cx> {
    let n = coeffs.len() - 1;
    let k = bits as i64;
    let mut z = start.unwrap_or_else(|| {
        let lc = coeffs[n].to_f64().unwrap_or(f64::MAX).abs();
        let m = coeffs[..n].iter().filter_map(|c| c.to_f64()).fold(0.0f64, |m, v| m.max(v.abs()));
        let radius = (1.0 + m / lc).min(1e150);
        initial_points(n, radius).into_iter().map(|w| Cx::from_f64(w.re, w.im).unwrap().round(k)).collect()
    });
    let tol = BigRational::new(1.into(), BigInt::from(1) << (bits as usize));
    for _ in 0..MAX_ITER {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[i]);
            if p.norm_sqr().is_zero() {
                continue;
            }
            let Some(w) = p.div(&dp) else { continue };
            let mut s = Cx::zero();
            for j in (0..n).filter(|&j| j != i) {
                if let Some(inv) = Cx::new(BigRational::from_integer(1.into()), BigRational::zero())
                    .div(&z[i].sub(&z[j]))
                {
                    s = s.add(&inv.round(k));
                }
            }
            let Some(step) = w.div(&w.mul(&s).one_minus()) else { continue };
            let step = step.round(k);
            if step.norm_sqr() > &tol * &tol {
                done = false;
            }
            z[i] = z[i].sub(&step);
        }
        if done {
            break;
        }
    }
    z
}
