//! Certified isolation of the complex roots of a squarefree rational
//! polynomial, in a fixed order, together with the conjugation involution.
//!
//! Real roots are isolated exactly with a Sturm sequence and narrowed with a
//! safeguarded Newton iteration; every real enclosure is an interval whose
//! endpoints carry opposite signs. Non-real roots start from Aberth–Ehrlich
//! approximations and are polished by Newton's method on dyadic complex
//! numbers. Each disk `|z - m| ≤ n·|p(m)/p'(m)|` is evaluated exactly and
//! contains a root; disks in the open upper half plane that are pairwise
//! disjoint then account for every non-real root.
//!
//! Order: real roots ascending, then conjugate pairs by ascending real part,
//! ties broken by ascending `|Im|`, each pair stored as `(upper, lower)`.

mod aberth;
pub(crate) mod cx;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{sqrt_upper, ComplexInterval, RealBall};
use crate::error::{Error, Result};
use crate::exactnum::{is_squarefree, sign_at, RationalPolynomial, SturmSequence};
use crate::invbirkhoff::Involution;
use cx::{eval_with_derivative, Cx};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Hard ceiling on internal precision before giving up.
const MAX_WORKING_BITS: u32 = 1 << 16;

/// Extra bits carried beyond the requested radius.
const GUARD_BITS: u32 = 16;

/// Disk `|z - (re + i·im)| ≤ radius` known to contain exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    re: BigRational,
    im: BigRational,
    radius: BigRational,
    precision_bits: u32,
    real: bool,
}

impl ComplexBall {
    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// True when the root is proven real (imaginary part exactly zero).
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn conj(&self) -> Self {
        Self { im: -&self.im, ..self.clone() }
    }

    /// Midpoint as a pair of doubles, for display.
    pub fn approx(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Enclosing rectangle.
    pub fn to_interval(&self) -> ComplexInterval {
        let re = RealBall::new(self.re.clone(), self.radius.clone());
        if self.real {
            ComplexInterval::real(re)
        } else {
            ComplexInterval::new(re, RealBall::new(self.im.clone(), self.radius.clone()))
        }
    }

    /// Whether `other` lies inside this disk.
    pub fn contains_ball(&self, other: &Self) -> bool {
        let slack = &self.radius - &other.radius;
        if slack.is_negative() {
            return false;
        }
        let dre = &self.re - &other.re;
        let dim = &self.im - &other.im;
        &dre * &dre + &dim * &dim <= &slack * &slack
    }

    fn mid(&self) -> Cx {
        Cx::new(self.re.clone(), self.im.clone())
    }
}

/// Ordered certified roots of one polynomial plus its conjugation involution.
#[derive(Clone, Debug)]
pub struct RootSystem {
    poly: RationalPolynomial,
    roots: Vec<ComplexBall>,
    conj_involution: Involution,
    n_real: usize,
    n_pairs: usize,
    precision_bits: u32,
}

impl RootSystem {
    pub fn poly(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn roots(&self) -> &[ComplexBall] {
        &self.roots
    }

    pub fn conj_involution(&self) -> &Involution {
        &self.conj_involution
    }

    pub fn n_real(&self) -> usize {
        self.n_real
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    /// `(n_real, n_pairs)`
    pub fn signature(&self) -> (usize, usize) {
        (self.n_real, self.n_pairs)
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn intervals(&self) -> Vec<ComplexInterval> {
        self.roots.iter().map(ComplexBall::to_interval).collect()
    }
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Isolates every root of `p` to radius at most `2^-precision_bits`.
pub fn isolate_roots(p: &RationalPolynomial, precision_bits: u32) -> Result<RootSystem> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegreeTooSmall),
    };
    if !is_squarefree(p)? {
        return Err(Error::RootsNotSimple);
    }
    let ints = p.primitive_integer();
    let sturm = SturmSequence::new(p)?;
    let mut roots: Vec<ComplexBall> = sturm
        .isolate()
        .into_iter()
        .map(|(a, b)| refine_real(&ints, a, b, precision_bits))
        .collect();
    let n_real = roots.len();
    let n_pairs = (n - n_real) / 2;
    if n_pairs > 0 {
        roots.extend(isolate_pairs(&ints, n_pairs, precision_bits)?);
    }
    Ok(RootSystem {
        poly: p.clone(),
        roots,
        conj_involution: Involution::canonical(n_real, n_pairs),
        n_real,
        n_pairs,
        precision_bits,
    })
}

/// Shrinks every ball to radius at most `2^-precision_bits`, keeping the
/// order; each new ball lies inside the old one.
pub fn refine(rs: &RootSystem, precision_bits: u32) -> Result<RootSystem> {
    if precision_bits <= rs.precision_bits {
        return Ok(rs.clone());
    }
    let ints = rs.poly.primitive_integer();
    let mut roots: Vec<ComplexBall> = rs.roots[..rs.n_real]
        .iter()
        .map(|b| {
            if b.radius.is_zero() {
                ComplexBall { precision_bits, ..b.clone() }
            } else {
                refine_real(&ints, &b.re - &b.radius, &b.re + &b.radius, precision_bits)
            }
        })
        .collect();
    let old_upper: Vec<&ComplexBall> = rs.roots[rs.n_real..].iter().step_by(2).collect();
    let mut target = precision_bits;
    loop {
        let mids = old_upper.iter().map(|b| b.mid()).collect();
        if let Some(upper) = certify_upper(&ints, mids, target) {
            if upper.iter().zip(&old_upper).all(|(new, old)| old.contains_ball(new)) {
                for b in upper {
                    let b = ComplexBall { precision_bits, ..b };
                    roots.push(b.clone());
                    roots.push(b.conj());
                }
                return Ok(RootSystem { roots, precision_bits, ..rs.clone() });
            }
        }
        target = target.checked_mul(2).filter(|&t| t <= MAX_WORKING_BITS).ok_or_else(|| {
            Error::PrecisionExhausted { bits: MAX_WORKING_BITS, reason: "root refinement".into() }
        })?;
    }
}

/// Narrows a sign-change interval `(a, b)` around a single real root.
fn refine_real(ints: &[BigInt], mut a: BigRational, mut b: BigRational, bits: u32) -> ComplexBall {
    let exact = |x: BigRational| ComplexBall {
        re: x,
        im: BigRational::zero(),
        radius: BigRational::zero(),
        precision_bits: bits,
        real: true,
    };
    let target = pow2_inv(bits) * BigRational::from_integer(2.into());
    let grid = (bits + GUARD_BITS) as i64;
    let p = RationalPolynomial::from_integers(ints);
    let dp = p.derivative();
    let sa = sign_at(ints, &a);
    let two = BigRational::from_integer(2.into());
    while &b - &a > target {
        let m = (&a + &b) / &two;
        let dpm = dp.eval(&m);
        let mut narrowed = false;
        if !dpm.is_zero() {
            let step = p.eval(&m) / dpm;
            let x = crate::ball::round_to_grid(&(&m - &step), grid);
            let delta = (&step * &step * BigRational::from_integer(16.into())).max(pow2_inv(bits + GUARD_BITS));
            if delta < (&b - &a) / BigRational::from_integer(4.into()) {
                let (lo, hi) = (&x - &delta, &x + &delta);
                if lo > a && hi < b {
                    let (sl, sh) = (sign_at(ints, &lo), sign_at(ints, &hi));
                    if sl == 0 {
                        return exact(lo);
                    }
                    if sh == 0 {
                        return exact(hi);
                    }
                    if sl != sh {
                        a = lo;
                        b = hi;
                        narrowed = true;
                    }
                }
            }
        }
        if !narrowed {
            let sm = sign_at(ints, &m);
            if sm == 0 {
                return exact(m);
            }
            if sm == sa {
                a = m;
            } else {
                b = m;
            }
        }
    }
    ComplexBall {
        re: (&a + &b) / &two,
        im: BigRational::zero(),
        radius: (&b - &a) / two,
        precision_bits: bits,
        real: true,
    }
}

/// Certified balls for all non-real roots, in storage order.
fn isolate_pairs(ints: &[BigInt], n_pairs: usize, bits: u32) -> Result<Vec<ComplexBall>> {
    let mut approx: Option<Vec<Cx>> =
        aberth::aberth_f64(ints).and_then(|z| z.iter().map(|w| Cx::from_f64(w.re, w.im)).collect());
    let mut wp = 64u32;
    let mut target = bits;
    loop {
        if let Some(all) = &approx {
            let mut upper: Vec<Cx> = all.iter().filter(|z| z.im.is_positive()).cloned().collect();
            upper.sort_by(|x, y| y.im.cmp(&x.im));
            upper.truncate(n_pairs);
            if upper.len() == n_pairs {
                if let Some(balls) = certify_upper(ints, upper, target) {
                    match order_pairs(balls) {
                        Some(sorted) => {
                            return Ok(sorted
                                .into_iter()
                                .flat_map(|b| {
                                    let b = ComplexBall { precision_bits: bits, ..b };
                                    let c = b.conj();
                                    [b, c]
                                })
                                .collect())
                        }
                        // pair order undecided: shrink the balls further
                        None => target = target.saturating_mul(2),
                    }
                }
            }
        }
        wp = wp.saturating_mul(2);
        if wp > MAX_WORKING_BITS || target > MAX_WORKING_BITS {
            return Err(Error::PrecisionExhausted {
                bits: MAX_WORKING_BITS,
                reason: "complex root certification".into(),
            });
        }
        approx = Some(aberth::aberth_dyadic(ints, wp, approx));
    }
}

/// Polishes approximations to roots in the upper half plane and certifies
/// them; `None` if any check fails.
fn certify_upper(ints: &[BigInt], approx: Vec<Cx>, bits: u32) -> Option<Vec<ComplexBall>> {
    let n = BigRational::from_integer((ints.len() - 1).into());
    let grid = (bits + GUARD_BITS) as i64;
    let limit = pow2_inv(bits);
    let mut out: Vec<ComplexBall> = Vec::with_capacity(approx.len());
    for z in approx {
        let m = polish(ints, z, grid)?;
        let (pm, dpm) = eval_with_derivative(ints, &m);
        let d2 = dpm.norm_sqr();
        if d2.is_zero() {
            return None;
        }
        let r2 = &n * &n * pm.norm_sqr() / d2;
        let r = sqrt_upper(&r2, 40);
        if r > limit || m.im <= r {
            return None;
        }
        let ball = ComplexBall { re: m.re, im: m.im, radius: r, precision_bits: bits, real: false };
        let disjoint = out.iter().all(|o| {
            let dre = &o.re - &ball.re;
            let dim = &o.im - &ball.im;
            let s = &o.radius + &ball.radius;
            &dre * &dre + &dim * &dim > &s * &s
        });
        if !disjoint {
            return None;
        }
        out.push(ball);
    }
    Some(out)
}

fn polish(ints: &[BigInt], z: Cx, grid: i64) -> Option<Cx> {
    let mut z = z.round(grid);
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (2 * grid as usize));
    let max_iter = 80 + 2 * (64 - (grid as u64).leading_zeros() as usize);
    for _ in 0..max_iter {
        let (p, dp) = eval_with_derivative(ints, &z);
        if p.norm_sqr().is_zero() {
            return Some(z);
        }
        let step = p.div(&dp)?.round(grid);
        z = z.sub(&step);
        if step.norm_sqr() <= tol {
            break;
        }
    }
    Some(z)
}

/// Certified comparison of two upper-half-plane balls by real part, then
/// by imaginary part.
fn compare_pairs(a: &ComplexBall, b: &ComplexBall) -> Option<Ordering> {
    let re_a = RealBall::new(a.re.clone(), a.radius.clone());
    let re_b = RealBall::new(b.re.clone(), b.radius.clone());
    re_a.compare(&re_b).or_else(|| {
        let im_a = RealBall::new(a.im.clone(), a.radius.clone());
        let im_b = RealBall::new(b.im.clone(), b.radius.clone());
        im_a.compare(&im_b)
    })
}

fn order_pairs(mut balls: Vec<ComplexBall>) -> Option<Vec<ComplexBall>> {
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            compare_pairs(&balls[i], &balls[j])?;
        }
    }
    balls.sort_by(|a, b| compare_pairs(a, b).unwrap());
    Some(balls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::product_from_roots;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    #[test]
    fn cube_roots_of_unity() {
        let rs = isolate_roots(&p(&[-1, 0, 0, 1]), 64).unwrap();
        assert_eq!(rs.signature(), (1, 1));
        let one = rs.roots()[0].to_interval();
        assert!(one.re.contains(&BigRational::one()) && one.re.rad() <= &pow2_inv(64));
        let (re, im) = rs.roots()[1].approx();
        assert!((re + 0.5).abs() < 1e-15 && (im - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(rs.roots()[2], rs.roots()[1].conj());
        assert_eq!(rs.conj_involution().images(), &[0, 2, 1]);
    }

    #[test]
    fn signatures_from_examples() {
        assert_eq!(isolate_roots(&p(&[-7, -3, 1, 2]), 128).unwrap().signature(), (1, 1));
        assert_eq!(isolate_roots(&p(&[4, -5, -1, 3]), 128).unwrap().signature(), (1, 1));
        let rs = isolate_roots(&p(&[3, 4, -5, 1]), 128).unwrap();
        assert_eq!(rs.signature(), (3, 0));
        let xs: Vec<f64> = rs.roots().iter().map(|b| b.approx().0).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_repeated_roots() {
        assert_eq!(isolate_roots(&p(&[1, -2, 1]), 64).unwrap_err(), Error::RootsNotSimple);
        assert_eq!(isolate_roots(&p(&[5]), 64).unwrap_err(), Error::DegreeTooSmall);
    }

    #[test]
    fn equal_real_parts_order_by_imaginary_part() {
        // (z^2 + 1)(z^2 + 4)
        let rs = isolate_roots(&p(&[4, 0, 5, 0, 1]), 64).unwrap();
        let ims: Vec<f64> = rs.roots().iter().map(|b| b.approx().1).collect();
        assert!((ims[0] - 1.0).abs() < 1e-12 && (ims[1] + 1.0).abs() < 1e-12);
        assert!((ims[2] - 2.0).abs() < 1e-12 && (ims[3] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn refine_shrinks_and_nests() {
        let rs = isolate_roots(&p(&[-1, 0, 0, 1]), 64).unwrap();
        let fine = refine(&rs, 256).unwrap();
        let bound = pow2_inv(200);
        for (old, new) in rs.roots().iter().zip(fine.roots()) {
            assert!(new.radius() < &bound);
            assert!(old.contains_ball(new));
        }
        let twice = refine(&refine(&rs, 128).unwrap(), 256).unwrap();
        for (a, b) in twice.roots().iter().zip(fine.roots()) {
            assert!(a.to_interval().overlaps(&b.to_interval()));
        }
    }

    #[test]
    fn vieta_round_trip() {
        let poly = p(&[-7, -3, 1, 2]);
        let rs = isolate_roots(&poly, 128).unwrap();
        let coeffs = product_from_roots(&rs.intervals(), 160);
        let monic = poly.monic();
        for (c, exact) in coeffs.iter().zip(monic.coeffs()) {
            assert!(c.re.contains(exact));
            assert!(c.im.contains_zero());
        }
    }
}
