//! Complex numbers with exact rational parts, rounded to a dyadic grid on
//! demand. Used for high-precision iteration and for exact residual checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ball::round_to_grid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cx {
    pub re: BigRational,
    pub im: BigRational,
}

impl Cx {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(BigRational::from_float(re)?, BigRational::from_float(im)?))
    }

    /// Rounds both parts to multiples of `2^-k`.
    pub fn round(&self, k: i64) -> Self {
        Self::new(round_to_grid(&self.re, k), round_to_grid(&self.im, k))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(
            (&self.re * &o.re + &self.im * &o.im) / &n,
            (&self.im * &o.re - &self.re * &o.im) / &n,
        ))
    }

    /// `1 - self`
    pub fn one_minus(&self) -> Self {
        Self::new(BigRational::from_integer(1.into()) - &self.re, -&self.im)
    }
}

/// Exact `p(z)` and `p'(z)` for integer coefficients (ascending).
pub(crate) fn eval_with_derivative(coeffs: &[BigInt], z: &Cx) -> (Cx, Cx) {
    let mut p = Cx::zero();
    let mut dp = Cx::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z);
        p.re += BigRational::from_integer(c.clone());
    }
    (p, dp)
}
