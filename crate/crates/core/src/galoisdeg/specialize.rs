//! From orbit values to the rational polynomial `Φ_{p,q}(h_M)`.
//!
//! With `a`, `b` the leading coefficients of the primitive integer forms of
//! `p`, `q`, every value `v` of the orbit satisfies: `s·v` is an algebraic
//! integer for `s = 2d·a²·b²`. Hence `∏(t − s·v)` has integer coefficients
//! `E_j`, and the coefficient of `tʲ` in the monic `∏(t − v)` is
//! `E_j / s^(n−j)`. Rounding the enclosure of each `E_j` to its unique
//! integer is the certificate; minimal-denominator reconstruction with the
//! configured bound must agree with it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};

use super::orbit::{orbit_values, Orbit};
use super::CostForm;
use crate::ball::{product_from_roots, ComplexInterval};
use crate::error::{Error, Result};
use crate::exactnum::{rational_reconstruct, RationalPolynomial, Reconstruction};
use crate::rootcert::{refine, RootSystem};

/// `2d·a²·b²`
pub fn orbit_scale(pr: &RootSystem, qr: &RootSystem) -> BigInt {
    let a = pr.poly().primitive_integer().pop().unwrap();
    let b = qr.poly().primitive_integer().pop().unwrap();
    BigInt::from(2 * pr.degree()) * &a * &a * &b * &b
}

/// Default reconstruction bound `2^(precision/3)`.
pub fn default_denominator_bound(precision_bits: u32) -> BigInt {
    BigInt::one() << (precision_bits / 3) as usize
}

/// Result of one specialisation attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    Certified(RationalPolynomial),
    /// Enclosures too wide; the reason names the first failing coefficient.
    NeedsPrecision(String),
}

/// Bits needed to hold the integer part of the expanded product.
fn magnitude_bits(w: &[ComplexInterval]) -> u32 {
    let bits: f64 = w
        .iter()
        .map(|z| {
            let m = z.re.abs_upper().to_f64().unwrap_or(f64::MAX) + z.im.abs_upper().to_f64().unwrap_or(f64::MAX);
            (1.0 + m).log2()
        })
        .sum();
    bits.min(1e6).ceil() as u32 + 1
}

/// Coefficient enclosures of `∏(t − w)` at a precision that keeps the
/// integer parts.
pub(crate) fn integer_product(w: &[ComplexInterval], prec: u32) -> Vec<ComplexInterval> {
    product_from_roots(w, prec + magnitude_bits(w) + 64)
}

/// Expands the monic `∏(t − v)` over `values` and certifies its rational
/// coefficients, given a scale `s` making every `s·v` integral.
pub fn specialize_hm(
    values: &[ComplexInterval],
    scale: &BigInt,
    denominator_bound: &BigInt,
    precision_bits: u32,
) -> Result<Specialized> {
    let n = values.len();
    let s = BigRational::from_integer(scale.clone());
    let w: Vec<ComplexInterval> = values.iter().map(|v| v.scale(&s)).collect();
    let coeffs = integer_product(&w, precision_bits);
    let mut out = Vec::with_capacity(n + 1);
    for (j, c) in coeffs.iter().enumerate() {
        if !c.im.contains_zero() {
            return Err(Error::Consistency(format!("coefficient of t^{j} has a nonzero imaginary part")));
        }
        let Some(e) = c.re.unique_integer() else {
            return Ok(Specialized::NeedsPrecision(format!("coefficient of t^{j} is not pinned to an integer")));
        };
        let denom = Pow::pow(&s, (n - j) as u32);
        let exact = BigRational::from_integer(e) / &denom;
        let check = rational_reconstruct(&(c.re.lo() / &denom), &(c.re.hi() / &denom), denominator_bound)?;
        match check {
            Reconstruction::Unique(r) if r == exact => out.push(exact),
            Reconstruction::Unique(r) => {
                return Ok(Specialized::NeedsPrecision(format!(
                    "coefficient of t^{j}: reconstruction gives {r}, lattice rounding gives {exact}"
                )))
            }
            _ => {
                return Ok(Specialized::NeedsPrecision(format!(
                    "coefficient of t^{j} is not uniquely reconstructible under the denominator bound"
                )))
            }
        }
    }
    Ok(Specialized::Certified(RationalPolynomial::new(out)))
}

/// Knobs for [`specialize_orbit`].
#[derive(Clone, Debug)]
pub struct SpecializeOptions {
    pub max_precision: u32,
    /// `None` means `2^(precision/3)` at each attempted precision.
    pub denominator_bound: Option<BigInt>,
}

/// Certified `Φ_{p,q}(h_M)` with the data used to obtain it.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub h: RationalPolynomial,
    pub values: Vec<ComplexInterval>,
    pub precision_bits: u32,
    pub denominator_bound: BigInt,
    pub scale: BigInt,
}

/// Evaluates the orbit and specialises, doubling the root precision until the
/// coefficients are certified or `max_precision` is exceeded.
pub fn specialize_orbit(
    form: &CostForm,
    orbit: &Orbit,
    pr: &RootSystem,
    qr: &RootSystem,
    opts: &SpecializeOptions,
) -> Result<Specialization> {
    let scale = orbit_scale(pr, qr);
    let mut pr = pr.clone();
    let mut qr = qr.clone();
    loop {
        let prec = pr.precision_bits().min(qr.precision_bits());
        let bound = opts.denominator_bound.clone().unwrap_or_else(|| default_denominator_bound(prec));
        let values = orbit_values(form, orbit, &pr, &qr)?;
        match specialize_hm(&values, &scale, &bound, prec)? {
            Specialized::Certified(h) => {
                return Ok(Specialization { h, values, precision_bits: prec, denominator_bound: bound, scale })
            }
            Specialized::NeedsPrecision(reason) => {
                let next = prec.saturating_mul(2);
                if next > opts.max_precision {
                    return Err(Error::PrecisionExhausted {
                        bits: opts.max_precision,
                        reason: format!("{reason}; raise the precision cap or the denominator bound"),
                    });
                }
                pr = refine(&pr, next)?;
                qr = refine(&qr, next)?;
            }
        }
    }
}
