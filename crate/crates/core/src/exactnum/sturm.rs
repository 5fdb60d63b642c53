use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{is_squarefree, sign_at, RationalPolynomial};
use crate::error::{Error, Result};

/// Sturm chain of a squarefree polynomial, each member stored as a primitive
/// integer polynomial (positive rescaling only, so signs are preserved).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        if !is_squarefree(p)? {
            return Err(Error::NotSquarefree);
        }
        let mut chain = vec![positive_primitive(p), positive_primitive(&p.derivative())];
        loop {
            let n = chain.len();
            let a = RationalPolynomial::from_integers(&chain[n - 2]);
            let b = RationalPolynomial::from_integers(&chain[n - 1]);
            let (_, r) = a.div_rem(&b);
            if r.is_zero() {
                break;
            }
            chain.push(positive_primitive(&-&r));
        }
        Ok(Self { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Sign variations at a finite point.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_variations(self.chain.iter().map(|c| sign_at(c, x)))
    }

    /// Sign variations at +∞ (`positive`) or −∞.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|c| {
            let lc_sign: i8 = if c.last().unwrap().is_negative() { -1 } else { 1 };
            let deg_odd = (c.len() - 1) % 2 == 1;
            if !positive && deg_odd {
                -lc_sign
            } else {
                lc_sign
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    fn poly(&self) -> &[BigInt] {
        &self.chain[0]
    }

    /// Disjoint open intervals `(a, b)`, ascending, each holding exactly one
    /// real root, with `p(a)` and `p(b)` nonzero and of opposite sign.
    pub fn isolate(&self) -> Vec<(BigRational, BigRational)> {
        let total = self.real_root_count();
        if total == 0 {
            return Vec::new();
        }
        let bound = cauchy_bound(self.poly());
        let mut out = Vec::with_capacity(total);
        // depth-first, left half first, so the output is ascending
        let mut stack = vec![(-bound.clone(), bound, total)];
        while let Some((a, b, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let m = self.split_point(&a, &b);
                    let left = self.count_in(&a, &m);
                    stack.push((m.clone(), b, n - left));
                    stack.push((a, m, left));
                }
            }
        }
        out
    }

    /// A point strictly inside `(a, b)` where `p` does not vanish.
    fn split_point(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let width = b - a;
        let mut den = 2i64;
        loop {
            for num in 1..den {
                let m = a + &width * BigRational::new(num.into(), den.into());
                if sign_at(self.poly(), &m) != 0 {
                    return m;
                }
            }
            den += 1;
        }
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn positive_primitive(p: &RationalPolynomial) -> Vec<BigInt> {
    // primitive_integer normalises the leading coefficient to be positive;
    // undo that flip if it changed the sign.
    let ints = p.primitive_integer();
    let flipped = p.leading().is_some_and(|lc| lc.is_negative());
    if flipped {
        ints.into_iter().map(|c| -c).collect()
    } else {
        ints
    }
}

/// Strict bound on the absolute value of every root: `1 + max |c_i / c_n|`,
/// rounded up to a power of two.
pub(crate) fn cauchy_bound(coeffs: &[BigInt]) -> BigRational {
    let lc = coeffs.last().unwrap().abs();
    let mut m = BigRational::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        let r = BigRational::new(c.abs(), lc.clone());
        if r > m {
            m = r;
        }
    }
    let b = m + BigRational::one();
    let mut pow = BigRational::one();
    while pow < b {
        pow *= BigRational::from_integer(2.into());
    }
    pow
}

/// Exact number of distinct real roots by Sturm's theorem.
pub fn real_root_count(p: &RationalPolynomial) -> Result<usize> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall);
    }
    Ok(SturmSequence::new(p)?.real_root_count())
}
