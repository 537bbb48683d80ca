//! Fraction-free elimination on matrices with univariate polynomial entries.

use super::binary::UniPoly;
use crate::error::Result;

/// Rank over the fraction field `Q(t)`, by fraction-free (Bareiss) echelon reduction.
pub fn rank_uni(mut m: Vec<Vec<UniPoly>>) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = UniPoly::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = m[i][j].mul(&m[rank][col]).sub(&m[i][col].mul(&m[rank][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][col] = UniPoly::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Determinant of a square matrix, by Bareiss elimination.
pub fn det_uni(mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let mut prev = UniPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(UniPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.scale(&-super::rat(1)) } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn rank_and_det() {
        // [[t, 1], [t^2, t]] is singular
        let m = vec![vec![u(&[0, 1]), u(&[1])], vec![u(&[0, 0, 1]), u(&[0, 1])]];
        assert_eq!(rank_uni(m.clone()).unwrap(), 1);
        assert!(det_uni(m).unwrap().is_zero());
        // [[t, 1], [1, t]] has determinant t^2 - 1
        let m = vec![vec![u(&[0, 1]), u(&[1])], vec![u(&[1]), u(&[0, 1])]];
        assert_eq!(det_uni(m.clone()).unwrap(), u(&[-1, 0, 1]));
        assert_eq!(rank_uni(m).unwrap(), 2);
    }
}
