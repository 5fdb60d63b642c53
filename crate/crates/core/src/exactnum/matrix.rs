use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&e| BigRational::from_integer(e.into())).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigRational>> =
            self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect();
        bareiss_rank(integer_rows(&rows), self.cols)
    }
}

/// Scales every row by the lcm of its denominators so elimination can stay
/// in the integers.
fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; every division is exact.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = m.len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev_pivot;
            }
            // columns left of `col` in rows below the pivot are already zero
            for c in 0..col {
                m[r][c] = BigInt::zero();
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Dimension of the affine hull of a set of equally shaped matrices: the rank
/// of the differences `v_i - v_0`.
pub fn affine_rank(points: &[RationalMatrix]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointList)?;
    let width = first.rows * first.cols;
    let mut diffs = Vec::with_capacity(points.len().saturating_sub(1));
    for p in &points[1..] {
        if (p.rows, p.cols) != (first.rows, first.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                p.rows, p.cols, first.rows, first.cols
            )));
        }
        diffs.push(p.entries.iter().zip(&first.entries).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    if diffs.is_empty() {
        return Ok(0);
    }
    Ok(bareiss_rank(integer_rows(&diffs), width))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3(e: [i64; 9]) -> RationalMatrix {
        RationalMatrix::from_i64(3, 3, &e).unwrap()
    }

    #[test]
    fn square_has_affine_rank_two() {
        // doubled matrices of the four vertices of the invariant square for d = 3
        let pts = vec![
            m3([2, 0, 0, 0, 2, 0, 0, 0, 2]),
            m3([2, 0, 0, 0, 0, 2, 0, 2, 0]),
            m3([0, 1, 1, 1, 1, 0, 1, 0, 1]),
            m3([0, 1, 1, 1, 0, 1, 1, 1, 0]),
        ];
        assert_eq!(affine_rank(&pts).unwrap(), 2);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(affine_rank(&[m3([1; 9])]).unwrap(), 0);
        assert_eq!(affine_rank(&[]), Err(Error::EmptyPointList));
        let other = RationalMatrix::zeros(2, 2);
        assert!(matches!(affine_rank(&[m3([0; 9]), other]), Err(Error::ShapeMismatch(_))));
        assert!(RationalMatrix::from_i64(2, 2, &[1, 2, 3]).is_err());
    }

    #[test]
    fn rank_with_fractions() {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let m = RationalMatrix::new(
            2,
            2,
            vec![half.clone(), one.clone(), one.clone(), BigRational::from_integer(2.into())],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }
}
