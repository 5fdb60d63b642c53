//! Minimal polynomial of `W₂²` inside `Φ_{p,q}(h_M)`.
//!
//! The squarefree part of `h` is scaled to a monic integer polynomial and
//! sieved modulo primes for admissible factor degrees. If none survive up to
//! `n/2`, `h` is irreducible. Otherwise every conjugation-closed set of roots
//! of an admissible size is tested, smallest size first: a set that is the
//! root set of a rational factor has an integral scaled product, which is
//! then confirmed by exact division. The first factor found has no proper
//! factor of its own; if it does not vanish at `W₂²` it is divided out and
//! the search restarts on the quotient.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::modp::degree_sieve;
use super::specialize::integer_product;
use crate::ball::{ComplexInterval, RealBall};
use crate::error::{Error, Result};
use crate::exactnum::{poly_gcd, RationalPolynomial, SturmSequence};
use crate::rootcert::{isolate_roots, refine, RootSystem};

/// Certificate attached to the returned factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalFactorStatus {
    /// `h` itself is irreducible, so it is the minimal polynomial.
    CertifiedIrreducible,
    /// A proper factor of `h` was extracted and proven minimal.
    FactorExtracted,
    /// The search budget ran out; the factor is a multiple of the minimal
    /// polynomial and its degree only an upper bound.
    BoundOnly,
}

impl MinimalFactorStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::CertifiedIrreducible => "certified-irreducible",
            Self::FactorExtracted => "factor-extracted",
            Self::BoundOnly => "bound-only",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalFactorOptions {
    /// Largest subset size tried in the exhaustive search.
    pub max_factor_degree: usize,
    /// Maximum number of root subsets examined.
    pub subset_budget: u64,
    pub precision_bits: u32,
    pub max_precision: u32,
}

impl Default for MinimalFactorOptions {
    fn default() -> Self {
        Self { max_factor_degree: 6, subset_budget: 1_000_000, precision_bits: 128, max_precision: 4096 }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalFactor {
    /// Monic factor of `h` vanishing at `W₂²`.
    pub factor: RationalPolynomial,
    pub status: MinimalFactorStatus,
    /// Surviving proper factor degrees of the squarefree part of `h`.
    pub admissible_degrees: Vec<usize>,
    pub primes_used: usize,
    pub subsets_examined: u64,
}

/// Smallest `s` (up to unfactored cofactors) with `s^(n−j)·c_j ∈ ℤ` for the
/// monic `h = Σ c_j tʲ`.
pub fn integral_scale(h: &RationalPolynomial) -> BigInt {
    let n = h.degree().unwrap_or(0);
    let primes = small_primes(100_000);
    let mut s = BigInt::one();
    let mut leftover = BigInt::one();
    let mut exps: Vec<u32> = vec![0; primes.len()];
    for (j, c) in h.coeffs().iter().enumerate().take(n) {
        let mut den = c.denom().clone();
        let k = (n - j) as u32;
        for (pi, &p) in primes.iter().enumerate() {
            if den.is_one() {
                break;
            }
            let pb = BigInt::from(p);
            let mut v = 0u32;
            while (&den % &pb).is_zero() {
                den /= &pb;
                v += 1;
            }
            exps[pi] = exps[pi].max(v.div_ceil(k));
        }
        leftover = leftover.lcm(&den);
    }
    for (pi, &p) in primes.iter().enumerate() {
        if exps[pi] > 0 {
            s *= Pow::pow(&BigInt::from(p), exps[pi]);
        }
    }
    s * leftover
}

fn small_primes(limit: usize) -> Vec<u64> {
    let mut sieve = vec![true; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            out.push(i as u64);
            let mut k = i * i;
            while k <= limit {
                sieve[k] = false;
                k += i;
            }
        }
    }
    out
}

/// `s^(n−j)·c_j`: the monic integer polynomial with roots `s·v`.
fn scaled_integer_form(h: &RationalPolynomial, s: &BigInt) -> Vec<BigInt> {
    let n = h.degree().unwrap();
    h.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| (c * BigRational::from_integer(Pow::pow(s, (n - j) as u32))).to_integer())
        .collect()
}

fn squarefree_part(h: &RationalPolynomial) -> Result<RationalPolynomial> {
    let g = poly_gcd(h, &h.derivative())?;
    Ok(h.exact_div(&g).expect("gcd divides").monic())
}

/// Whether the real root enclosed by `ball` (an isolating sign-change
/// interval of a multiple of `f`) is a root of `f`.
fn vanishes_on(f: &RationalPolynomial, ball: &RealBall) -> bool {
    if ball.rad().is_zero() {
        return f.eval(ball.mid()).is_zero();
    }
    let (a, b) = (f.eval(&ball.lo()), f.eval(&ball.hi()));
    a.signum() * b.signum() < BigRational::zero()
}

/// Whether `p` has a root in the closed interval of `w2`.
fn encloses_root(p: &RationalPolynomial, w2: &RealBall) -> Result<bool> {
    let (lo, hi) = (w2.lo(), w2.hi());
    if p.eval(&lo).is_zero() {
        return Ok(true);
    }
    Ok(SturmSequence::new(p)?.count_in(&lo, &hi) > 0)
}

/// Index of the unique real root of `rs` meeting `w2`, refining if needed.
fn locate(rs: &mut RootSystem, w2: &RealBall, max_precision: u32) -> Result<usize> {
    loop {
        let hits: Vec<usize> = (0..rs.n_real())
            .filter(|&i| rs.roots()[i].to_interval().re.overlaps(w2))
            .collect();
        match hits.len() {
            0 => return Err(Error::NoEnclosedRoot),
            1 => return Ok(hits[0]),
            _ => {
                let next = rs.precision_bits().saturating_mul(2);
                if next > max_precision {
                    return Err(Error::PrecisionExhausted {
                        bits: max_precision,
                        reason: "the W2 enclosure meets several roots of h".into(),
                    });
                }
                *rs = refine(rs, next)?;
            }
        }
    }
}

enum Trial {
    Excluded,
    Factor(RationalPolynomial),
}

/// Tests one root subset; refines `rs` in place when the enclosures are too
/// wide to decide.
fn try_subset(
    current: &RationalPolynomial,
    rs: &mut RootSystem,
    subset: &[usize],
    s: &BigInt,
    max_precision: u32,
) -> Result<Trial> {
    let sr = BigRational::from_integer(s.clone());
    loop {
        let w: Vec<ComplexInterval> = subset.iter().map(|&i| rs.roots()[i].to_interval().scale(&sr)).collect();
        let coeffs = integer_product(&w, rs.precision_bits());
        let mut ints = Vec::with_capacity(coeffs.len());
        let mut ambiguous = false;
        for c in &coeffs {
            if !c.im.contains_zero() {
                return Ok(Trial::Excluded);
            }
            match c.re.unique_integer() {
                Some(e) => ints.push(e),
                None if c.re.width() < BigRational::one() => return Ok(Trial::Excluded),
                None => {
                    ambiguous = true;
                    break;
                }
            }
        }
        if !ambiguous {
            let k = subset.len();
            let f = RationalPolynomial::new(
                ints.into_iter()
                    .enumerate()
                    .map(|(j, e)| BigRational::from_integer(e) / Pow::pow(&sr, (k - j) as u32))
                    .collect(),
            );
            let (_, r) = current.div_rem(&f);
            return Ok(if r.is_zero() { Trial::Factor(f) } else { Trial::Excluded });
        }
        let next = rs.precision_bits().saturating_mul(2);
        if next > max_precision {
            return Err(Error::PrecisionExhausted {
                bits: max_precision,
                reason: "subset product enclosures stay wider than 1".into(),
            });
        }
        *rs = refine(rs, next)?;
    }
}

/// Cheap rigorous exclusion: the scaled root sum of a rational factor is an
/// integer.
fn e1_excludes(mids: &[(f64, f64)], rads: &[f64], subset: &[usize]) -> bool {
    let mut sum = 0.0f64;
    let mut err = 0.0f64;
    let mut mag = 0.0f64;
    for &i in subset {
        sum += mids[i].0;
        err += rads[i];
        mag += mids[i].0.abs();
    }
    let err = err * (1.0 + 1e-9) + 1e-9 * (1.0 + mag);
    if !(sum.is_finite() && err.is_finite()) || err >= 0.5 {
        return false;
    }
    (sum - err).ceil() > (sum + err).floor()
}

/// Conjugation-closed index sets of total size `k`, as unions of real roots
/// and conjugate pairs.
fn closed_subsets(n_real: usize, n_pairs: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=(k / 2).min(n_pairs)).flat_map(move |m| {
        let r = k - 2 * m;
        let reals: Vec<Vec<usize>> =
            if r <= n_real { (0..n_real).combinations(r).collect() } else { Vec::new() };
        let pairs: Vec<Vec<usize>> = (0..n_pairs).combinations(m).collect();
        reals
            .into_iter()
            .cartesian_product(pairs)
            .map(move |(rs, ps)| {
                let mut v = rs;
                for t in ps {
                    v.push(n_real + 2 * t);
                    v.push(n_real + 2 * t + 1);
                }
                v
            })
            .collect::<Vec<_>>()
    })
}

/// Finds the monic minimal polynomial of the real number enclosed by `w2`
/// among the factors of `h`.
pub fn minimal_factor(h: &RationalPolynomial, w2: &RealBall, opts: &MinimalFactorOptions) -> Result<MinimalFactor> {
    let deg_h = match h.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::DegreeTooSmall),
    };
    let h = h.monic();
    let mut current = squarefree_part(&h)?;
    let mut first_sieve: Option<Vec<usize>> = None;
    let mut primes_used = 0;
    let mut examined = 0u64;
    'outer: loop {
        let n = current.degree().unwrap();
        let finish = |factor: RationalPolynomial, examined| {
            let status = if factor.degree() == Some(deg_h) {
                MinimalFactorStatus::CertifiedIrreducible
            } else {
                MinimalFactorStatus::FactorExtracted
            };
            (factor, status, examined)
        };
        if n == 1 {
            if !encloses_root(&current, w2)? {
                return Err(Error::NoEnclosedRoot);
            }
            let (factor, status, examined) = finish(current, examined);
            return Ok(report(factor, status, first_sieve, primes_used, examined));
        }
        let s = integral_scale(&current);
        let sieve = degree_sieve(&scaled_integer_form(&current, &s));
        primes_used += sieve.primes.len();
        if first_sieve.is_none() {
            first_sieve = Some(sieve.admissible.clone());
        }
        let sizes: Vec<usize> = sieve.admissible.iter().copied().filter(|&k| k <= n / 2).collect();
        if sizes.is_empty() {
            if !encloses_root(&current, w2)? {
                return Err(Error::NoEnclosedRoot);
            }
            let (factor, status, examined) = finish(current, examined);
            return Ok(report(factor, status, first_sieve, primes_used, examined));
        }
        let mut rs = isolate_roots(&current, opts.precision_bits)?;
        let r0 = locate(&mut rs, w2, opts.max_precision)?;
        for k in sizes {
            if k > opts.max_factor_degree {
                return Ok(report(current, MinimalFactorStatus::BoundOnly, first_sieve, primes_used, examined));
            }
            let sr = s.to_f64().unwrap_or(f64::INFINITY);
            let mids: Vec<(f64, f64)> =
                rs.roots().iter().map(|b| (b.approx().0 * sr, b.approx().1 * sr)).collect();
            let rads: Vec<f64> = rs.roots().iter().map(|b| b.radius().to_f64().unwrap_or(f64::INFINITY) * sr).collect();
            for subset in closed_subsets(rs.n_real(), rs.n_pairs(), k) {
                examined += 1;
                if examined > opts.subset_budget {
                    return Ok(report(current, MinimalFactorStatus::BoundOnly, first_sieve, primes_used, examined));
                }
                if e1_excludes(&mids, &rads, &subset) {
                    continue;
                }
                if let Trial::Factor(f) = try_subset(&current, &mut rs, &subset, &s, opts.max_precision)? {
                    let r0_ball = rs.roots()[r0].to_interval().re;
                    if vanishes_on(&f, &r0_ball) {
                        let (factor, status, examined) = finish(f, examined);
                        return Ok(report(factor, status, first_sieve, primes_used, examined));
                    }
                    current = current.exact_div(&f).expect("certified factor").monic();
                    continue 'outer;
                }
            }
        }
        let (factor, status, examined) = finish(current, examined);
        return Ok(report(factor, status, first_sieve, primes_used, examined));
    }
}

fn report(
    factor: RationalPolynomial,
    status: MinimalFactorStatus,
    first_sieve: Option<Vec<usize>>,
    primes_used: usize,
    subsets_examined: u64,
) -> MinimalFactor {
    MinimalFactor {
        factor,
        status,
        admissible_degrees: first_sieve.unwrap_or_default(),
        primes_used,
        subsets_examined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_factor_of_product() {
        let h = RationalPolynomial::from_i64(&[2, -3, 1]);
        let out = minimal_factor(&h, &RealBall::exact(q(1, 1)), &Default::default()).unwrap();
        assert_eq!(out.factor, RationalPolynomial::from_i64(&[-1, 1]));
        assert_eq!(out.status, MinimalFactorStatus::FactorExtracted);
        let out = minimal_factor(&h, &RealBall::exact(q(2, 1)), &Default::default()).unwrap();
        assert_eq!(out.factor, RationalPolynomial::from_i64(&[-2, 1]));
    }

    #[test]
    fn irreducible_input() {
        let h = RationalPolynomial::from_i64(&[-2, 0, 1]);
        let w2 = RealBall::new(q(14142, 10000), q(1, 1000));
        let out = minimal_factor(&h, &w2, &Default::default()).unwrap();
        assert_eq!(out.factor, h);
        assert_eq!(out.status, MinimalFactorStatus::CertifiedIrreducible);
    }

    #[test]
    fn cubic_inside_sextic_with_rational_scale() {
        // (t^3 - 2)(t^3 - t/4 - 1/2) with the real cube root of 2 as target
        let a = RationalPolynomial::from_i64(&[-2, 0, 0, 1]);
        let b = RationalPolynomial::new(vec![q(-1, 2), q(-1, 4), q(0, 1), q(1, 1)]);
        let h = &a * &b;
        let w2 = RealBall::new(q(12599, 10000), q(1, 10000));
        let out = minimal_factor(&h, &w2, &Default::default()).unwrap();
        assert_eq!(out.factor, a);
        assert_eq!(out.status, MinimalFactorStatus::FactorExtracted);
    }

    #[test]
    fn missing_root_is_an_error() {
        let h = RationalPolynomial::from_i64(&[-2, 0, 1]);
        let err = minimal_factor(&h, &RealBall::exact(q(3, 1)), &Default::default()).unwrap_err();
        assert_eq!(err, Error::NoEnclosedRoot);
    }

    #[test]
    fn repeated_roots_are_removed_first() {
        // (t - 1)^2 (t^2 - 3)
        let h = &RationalPolynomial::from_i64(&[1, -2, 1]) * &RationalPolynomial::from_i64(&[-3, 0, 1]);
        let out = minimal_factor(&h, &RealBall::exact(q(1, 1)), &Default::default()).unwrap();
        assert_eq!(out.factor, RationalPolynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn scale_for_power_denominators() {
        // t^2 - t/6 + 1/216 needs s² divisible by 216, so s = 36
        let h = RationalPolynomial::new(vec![q(1, 216), q(-1, 6), q(1, 1)]);
        let s = integral_scale(&h);
        let ints = scaled_integer_form(&h, &s);
        assert_eq!(ints, [6, -6, 1].map(BigInt::from).to_vec());
        assert_eq!(s, BigInt::from(36));
    }
}
