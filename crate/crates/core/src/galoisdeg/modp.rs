//! Factor-degree patterns modulo small primes.
//!
//! For a monic squarefree `H ∈ ℤ[t]` and a prime `p` with `H mod p`
//! squarefree, the degrees of the irreducible factors of `H mod p` are known
//! from distinct-degree factorisation. The degree of any factor of `H` over
//! ℚ is a subset sum of that multiset, so intersecting subset-sum sets over
//! several primes bounds the possible factor degrees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIME_LO: u64 = 1 << 16;
const PRIME_HI: u64 = 1 << 17;
const MIN_PRIMES: usize = 8;
const MAX_PRIMES: usize = 64;
const STABLE_WINDOW: usize = 8;
const SEED: u64 = 0x5eed_0f_9a1015;

type Poly = Vec<u64>;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let f = r[top] * inv % p;
        if f != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let k = top - db + i;
                r[k] = (r[k] + p - f * bi % p) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quot(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0; r.len() - db];
    for top in (db..r.len()).rev() {
        let f = r[top] * inv % p;
        q[top - db] = f;
        if f != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let k = top - db + i;
                r[k] = (r[k] + p - f * bi % p) % p;
            }
        }
    }
    q
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&trim(out), m, p)
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn derivative(a: &[u64], p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

/// Degrees of the irreducible factors of a squarefree monic `f` over `F_p`.
fn distinct_degree(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = f.to_vec();
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while f.len() - 1 >= 2 * i {
        h = powmod(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        let dg = g.len() - 1;
        if dg > 0 {
            out.extend(std::iter::repeat(i).take(dg / i));
            f = quot(&f, &g, p);
            h = rem(&h, &f, p);
        }
        i += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Outcome of the modular degree analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSieve {
    /// Degrees in `1..n` a factor over ℚ could have.
    pub admissible: Vec<usize>,
    pub primes: Vec<u64>,
}

impl DegreeSieve {
    /// True when no proper factor degree survives.
    pub fn proves_irreducible(&self) -> bool {
        self.admissible.is_empty()
    }
}

/// Runs the sieve on a monic squarefree integer polynomial (ascending).
pub fn degree_sieve(h: &[BigInt]) -> DegreeSieve {
    let n = h.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut alive = vec![true; n + 1];
    let mut primes = Vec::new();
    let mut last_change = 0;
    let mut tried = 0;
    while primes.len() < MAX_PRIMES && tried < 100 * MAX_PRIMES {
        if primes.len() >= MIN_PRIMES && primes.len() - last_change >= STABLE_WINDOW {
            break;
        }
        tried += 1;
        let p = rng.gen_range(PRIME_LO..PRIME_HI);
        if !is_prime(p) || primes.contains(&p) {
            continue;
        }
        let pb = BigInt::from(p);
        let f: Poly = trim(h.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect());
        if f.len() != n + 1 || gcd(&f, &derivative(&f, p), p).len() != 1 {
            continue;
        }
        let sums = subset_sums(&distinct_degree(&f, p), n);
        primes.push(p);
        let mut changed = false;
        for k in 0..=n {
            if alive[k] && !sums[k] {
                alive[k] = false;
                changed = true;
            }
        }
        if changed {
            last_change = primes.len();
        }
    }
    let admissible = (1..n).filter(|&k| alive[k]).collect();
    DegreeSieve { admissible, primes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn ddf_on_known_factorisations() {
        let p = 65537;
        // (t^2 + 1) has two roots mod 65537 (p ≡ 1 mod 4)
        assert_eq!(distinct_degree(&[1, 0, 1], p), vec![1, 1]);
        // t^2 - 3 is irreducible mod 65537 (3 is a non-residue)
        assert_eq!(distinct_degree(&[p - 3, 0, 1], p), vec![2]);
    }

    #[test]
    fn irreducible_quartic_is_proven() {
        // t^4 - 2 has Galois group D4; Frobenius classes give {4} and {2,2}
        // patterns but never certify a linear factor
        let s = degree_sieve(&ints(&[-2, 0, 0, 0, 1]));
        assert!(!s.admissible.contains(&1) && !s.admissible.contains(&3));
        assert!(s.primes.len() >= MIN_PRIMES);
    }

    #[test]
    fn reducible_polynomial_keeps_its_degrees() {
        // (t^2 - 2)(t^3 - 3)
        let s = degree_sieve(&ints(&[6, 0, -3, -2, 0, 1]));
        assert!(s.admissible.contains(&2) && s.admissible.contains(&3));
    }

    #[test]
    fn cubic_with_full_galois_group() {
        // t^3 - t - 1: S3, a 3-cycle Frobenius rules out degrees 1 and 2
        assert!(degree_sieve(&ints(&[-1, -1, 0, 1])).proves_irreducible());
    }
}
