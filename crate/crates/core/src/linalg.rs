//! Exact rank and affine dimension by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vector::RationalVector;

/// Clears denominators row by row.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

/// Rank of an integer matrix. Pivot: first nonzero entry in column order.
pub fn rank_int(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                // Exact by Sylvester's identity.
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rank_int(integer_rows(rows))
}

/// Dimension of the affine hull: rank of `{v - v0}`.
pub fn affine_dimension(vectors: &[RationalVector]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    if vectors.iter().any(|v| v.len() != first.len()) {
        return Err(Error::Malformed("vectors differ in length".into()));
    }
    let diffs: Vec<Vec<Rational>> =
        vectors[1..].iter().map(|v| v.entries().iter().zip(first.entries()).map(|(a, b)| a - b).collect()).collect();
    Ok(rank(&diffs))
}

/// Integer form of [`affine_dimension`] for vertex vectors.
pub fn affine_dimension_ints(vectors: &[Vec<i64>]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let diffs = vectors[1..].iter().map(|v| v.iter().zip(first).map(|(a, b)| BigInt::from(a - b)).collect()).collect();
    Ok(rank_int(diffs))
}

/// A basis of `{x : rows · x = 0}` with integer entries.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<BigInt>> {
    // Reduced row echelon form over the rationals.
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Bareiss determinant of a small integer matrix; `None` on overflow.
pub fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].checked_mul(a[i][j])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&rows(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&rows(&[&[0, 0, 0]])), 0);
        assert_eq!(rank(&rows(&[&[0, 1, 1], &[0, 2, 2], &[1, 0, 0], &[1, 1, 1]])), 2);
        assert_eq!(rank(&[vec![ratio(1, 2), ratio(1, 3)], vec![int(3), int(2)]]), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn affine_dims() {
        let v = |xs: &[i64]| RationalVector::from_ints(3, xs).unwrap();
        assert_eq!(affine_dimension(&[v(&[1, 2, 3])]).unwrap(), 0);
        assert_eq!(affine_dimension(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap(), 2);
        assert_eq!(affine_dimension(&[v(&[1, 1, 1]), v(&[2, 2, 2]), v(&[3, 3, 3])]).unwrap(), 1);
        assert!(matches!(affine_dimension(&[]), Err(Error::EmptyInput)));
        assert_eq!(affine_dimension_ints(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap(), 2);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let m = rows(&[&[1, 1, 0, 0], &[0, 1, 1, 0]]);
        let ns = nullspace(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * Rational::from_integer(b.clone())).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(det_i128(&[vec![2, 0], vec![0, 3]]), Some(6));
        assert_eq!(det_i128(&[vec![0, 1], vec![1, 0]]), Some(-1));
        assert_eq!(det_i128(&[vec![1, 2], vec![2, 4]]), Some(0));
        assert_eq!(det_i128(&[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]), Some(1));
    }
}
