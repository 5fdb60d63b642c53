//! Midpoint-radius arithmetic on exact dyadic rationals.
//!
//! Every operation is carried out exactly in ℚ; [`RealBall::round`] then
//! snaps the midpoint to a dyadic grid and folds the exact rounding error
//! into the radius. Enclosures are therefore rigorous without relying on
//! floating-point rounding modes.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Significant bits kept in radii.
const RADIUS_BITS: u32 = 32;

/// Approximate `floor(log2 |x|)`, off by at most one. `x` must be nonzero.
fn log2_approx(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Nearest multiple of `2^-k`.
pub fn round_to_grid(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        let s = pow2(k as u64);
        let num: BigInt = x.numer() * &s * 2 + x.denom();
        let n = num.div_floor(&(x.denom() * 2));
        BigRational::new(n, s)
    } else {
        let s = pow2((-k) as u64);
        let num: BigInt = x.numer() * 2 + x.denom() * &s;
        let n = num.div_floor(&(x.denom() * &s * 2));
        BigRational::from_integer(n * s)
    }
}

/// Nearest dyadic with roughly `prec` significant bits.
pub fn round_to_bits(x: &BigRational, prec: u32) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    round_to_grid(x, prec as i64 - log2_approx(x))
}

/// Smallest dyadic with `bits` significant bits that is `>= x` (for x ≥ 0).
pub fn round_up(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    let k = bits as i64 - log2_approx(x);
    if k >= 0 {
        let s = pow2(k as u64);
        BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
    } else {
        let s = BigRational::from_integer(pow2((-k) as u64));
        (x / &s).ceil() * s
    }
}

/// Upper bound for `sqrt(x)`, x ≥ 0, accurate to about `bits` bits.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return x.clone();
    }
    let k = (bits as i64 - log2_approx(x) / 2).max(0) as u64;
    // sqrt(x) * 2^k = sqrt(x * 4^k)
    let scaled = (x * BigRational::from_integer(pow2(2 * k))).ceil().to_integer();
    let mut s = scaled.sqrt();
    if &s * &s < scaled {
        s += 1;
    }
    BigRational::new(s, pow2(k))
}

/// Closed real interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBall {
    mid: BigRational,
    rad: BigRational,
}

impl RealBall {
    pub fn new(mid: BigRational, rad: BigRational) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        Self { mid, rad }
    }

    pub fn exact(mid: BigRational) -> Self {
        Self { mid, rad: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::exact(BigRational::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &BigRational, hi: &BigRational) -> Self {
        let two = BigRational::from_integer(2.into());
        Self::new((lo + hi) / &two, (hi - lo).abs() / two)
    }

    pub fn mid(&self) -> &BigRational {
        &self.mid
    }

    pub fn rad(&self) -> &BigRational {
        &self.rad
    }

    pub fn lo(&self) -> BigRational {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> BigRational {
        &self.mid + &self.rad
    }

    pub fn width(&self) -> BigRational {
        &self.rad * BigRational::from_integer(2.into())
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        (&self.mid - x).abs() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        (&self.mid - &other.mid).abs() <= &self.rad + &other.rad
    }

    /// Certified comparison; `None` when the intervals overlap.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.hi() < other.lo() {
            Some(Ordering::Less)
        } else if other.hi() < self.lo() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// The single integer inside the ball, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let lo = self.lo().ceil().to_integer();
        let hi = self.hi().floor().to_integer();
        (lo == hi).then_some(lo)
    }

    pub fn abs_upper(&self) -> BigRational {
        self.mid.abs() + &self.rad
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { mid: &self.mid * k, rad: &self.rad * k.abs() }
    }

    pub fn sqr(&self) -> Self {
        let m = self.mid.abs();
        let two = BigRational::from_integer(2.into());
        Self { mid: &self.mid * &self.mid, rad: &two * &m * &self.rad + &self.rad * &self.rad }
    }

    /// Snaps the midpoint to `prec` significant bits and keeps the radius short.
    pub fn round(self, prec: u32) -> Self {
        let mid = round_to_bits(&self.mid, prec);
        let err = (&mid - &self.mid).abs();
        let rad = round_up(&(self.rad + err), RADIUS_BITS);
        Self { mid, rad }
    }

    /// Union hull.
    pub fn hull(&self, other: &Self) -> Self {
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        Self::from_endpoints(&lo, &hi)
    }
}

impl Add for &RealBall {
    type Output = RealBall;
    fn add(self, rhs: Self) -> RealBall {
        RealBall { mid: &self.mid + &rhs.mid, rad: &self.rad + &rhs.rad }
    }
}

impl Sub for &RealBall {
    type Output = RealBall;
    fn sub(self, rhs: Self) -> RealBall {
        RealBall { mid: &self.mid - &rhs.mid, rad: &self.rad + &rhs.rad }
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall { mid: -&self.mid, rad: self.rad.clone() }
    }
}

impl Mul for &RealBall {
    type Output = RealBall;
    fn mul(self, rhs: Self) -> RealBall {
        let rad = self.mid.abs() * &rhs.rad + rhs.mid.abs() * &self.rad + &self.rad * &rhs.rad;
        RealBall { mid: &self.mid * &rhs.mid, rad }
    }
}

/// Rectangular complex enclosure `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexInterval {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        Self { re, im }
    }

    pub fn real(re: RealBall) -> Self {
        Self { re, im: RealBall::zero() }
    }

    pub fn zero() -> Self {
        Self::real(RealBall::zero())
    }

    pub fn one() -> Self {
        Self::real(RealBall::from_i64(1))
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: self.re.scale(k), im: self.im.scale(k) }
    }

    /// `|z|²` as a real enclosure.
    pub fn norm_sqr(&self) -> RealBall {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn round(self, prec: u32) -> Self {
        Self { re: self.re.round(prec), im: self.im.round(prec) }
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    /// Largest of the two radii.
    pub fn max_rad(&self) -> BigRational {
        self.re.rad().max(self.im.rad()).clone()
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: Self) -> ComplexInterval {
        ComplexInterval { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: Self) -> ComplexInterval {
        ComplexInterval { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval { re: -&self.re, im: -&self.im }
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: Self) -> ComplexInterval {
        ComplexInterval {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

/// Coefficients (ascending) of `∏ (t - v)`, expanded as a balanced product
/// tree so the result does not depend on evaluation order.
pub fn product_from_roots(values: &[ComplexInterval], prec: u32) -> Vec<ComplexInterval> {
    fn rec(values: &[ComplexInterval], prec: u32) -> Vec<ComplexInterval> {
        match values.len() {
            0 => vec![ComplexInterval::one()],
            1 => vec![-&values[0], ComplexInterval::one()],
            n => {
                let (a, b) = values.split_at(n / 2);
                poly_mul(&rec(a, prec), &rec(b, prec), prec)
            }
        }
    }
    rec(values, prec)
}

fn poly_mul(a: &[ComplexInterval], b: &[ComplexInterval], prec: u32) -> Vec<ComplexInterval> {
    let mut out = vec![ComplexInterval::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out.into_iter().map(|c| c.round(prec)).collect()
}
