//! Exact scalars, polynomials and linear algebra over ℚ.

mod matrix;
mod poly;
mod reconstruct;
mod sturm;

pub use matrix::{affine_rank, RationalMatrix};
pub use poly::{fmt_rational, is_squarefree, poly_gcd, RationalPolynomial};
pub use reconstruct::{rational_reconstruct, simplest_in, Reconstruction};
pub use sturm::{real_root_count, SturmSequence};

pub(crate) use poly::sign_at;


use num_bigint::BigInt;
use num_rational::BigRational;
use std::str::FromStr;

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (d != BigInt::from(0)).then(|| BigRational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-25/18"), Some(BigRational::new((-25).into(), 18.into())));
        assert_eq!(parse_rational("7"), Some(BigRational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
