use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Outcome of [`rational_reconstruct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    /// The only rational with denominator ≤ H in the interval.
    Unique(BigRational),
    /// The simplest candidate fits the bound, but another fraction with
    /// denominator ≤ H also lies in the interval.
    NotUnique { simplest: BigRational, other: BigRational },
    /// Even the simplest rational in the interval exceeds the bound.
    DenominatorTooLarge { simplest: BigRational },
}

impl Reconstruction {
    pub fn unique(&self) -> Option<&BigRational> {
        match self {
            Reconstruction::Unique(r) => Some(r),
            _ => None,
        }
    }
}

/// The rational of minimal denominator in `[lo, hi]` (smallest absolute
/// numerator among those), found through the continued-fraction expansion of
/// the interval.
pub fn simplest_in(lo: &BigRational, hi: &BigRational) -> Result<BigRational> {
    if lo > hi {
        return Err(Error::InvertedInterval);
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Ok(BigRational::zero());
    }
    if hi.is_negative() {
        return Ok(-simplest_positive(-hi, -lo));
    }
    Ok(simplest_positive(lo.clone(), hi.clone()))
}

fn simplest_positive(mut lo: BigRational, mut hi: BigRational) -> BigRational {
    let mut terms: Vec<BigInt> = Vec::new();
    loop {
        let c = lo.ceil();
        if c <= hi {
            terms.push(c.to_integer());
            break;
        }
        let f = lo.floor();
        terms.push(f.to_integer());
        let (nlo, nhi) = ((&hi - &f).recip(), (&lo - &f).recip());
        lo = nlo;
        hi = nhi;
    }
    let mut x = BigRational::from_integer(terms.pop().unwrap());
    while let Some(t) = terms.pop() {
        x = BigRational::from_integer(t) + x.recip();
    }
    x
}

/// Neighbours of `u/v` in the Farey sequence of order `bound`.
fn farey_neighbours(x: &BigRational, bound: &BigInt) -> (BigRational, BigRational) {
    let (u, v) = (x.numer(), x.denom());
    let inv = if v.is_one() {
        BigInt::zero()
    } else {
        let e = u.mod_floor(v).extended_gcd(v);
        e.x.mod_floor(v)
    };
    // left: u*b - a*v = 1, b ≡ u⁻¹ (mod v), b maximal ≤ bound
    let b = &inv + v * (bound - &inv).div_floor(v);
    let a = (u * &b - BigInt::one()) / v;
    // right: c*v - u*e = 1, e ≡ -u⁻¹ (mod v)
    let e0 = (v - &inv).mod_floor(v);
    let e = &e0 + v * (bound - &e0).div_floor(v);
    let c = (u * &e + BigInt::one()) / v;
    (BigRational::new(a, b), BigRational::new(c, e))
}

/// Recovers an exact rational from a certified enclosure `[lo, hi]`.
///
/// The answer is certified when it is the only fraction with denominator at
/// most `denominator_bound` in the interval; any enclosure of width below
/// `1/(2H²)` around a rational with denominator ≤ H is always accepted.
pub fn rational_reconstruct(
    lo: &BigRational,
    hi: &BigRational,
    denominator_bound: &BigInt,
) -> Result<Reconstruction> {
    let simplest = simplest_in(lo, hi)?;
    let bound = if denominator_bound.is_positive() { denominator_bound.clone() } else { BigInt::one() };
    if simplest.denom() > &bound {
        return Ok(Reconstruction::DenominatorTooLarge { simplest });
    }
    let (left, right) = farey_neighbours(&simplest, &bound);
    if &left >= lo {
        return Ok(Reconstruction::NotUnique { simplest, other: left });
    }
    if &right <= hi {
        return Ok(Reconstruction::NotUnique { simplest, other: right });
    }
    Ok(Reconstruction::Unique(simplest))
}
