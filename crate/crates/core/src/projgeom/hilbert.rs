use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::exactmath::poly::monomial_count;
use crate::exactmath::{certified_piece, graded_piece, rat, CertifiedPiece, Mat, MultiPoly, Rational};

/// Dimension of the degree-`d` part of `k[x_0..x_{n-1}] / (gens)`.
pub fn hilbert_function(nvars: usize, gens: &[MultiPoly], d: u32) -> Result<usize> {
    check_arity(nvars, gens)?;
    Ok(monomial_count(nvars, d) - graded_piece(gens, d)?.dimension)
}

/// Modular certificate for the same value; see [`certified_piece`].
pub fn hilbert_function_certified(
    nvars: usize,
    gens: &[MultiPoly],
    d: u32,
    points: &[Vec<Rational>],
) -> Result<CertifiedPiece> {
    check_arity(nvars, gens)?;
    certified_piece(gens, d, points)
}

fn check_arity(nvars: usize, gens: &[MultiPoly]) -> Result<()> {
    match gens.iter().position(|g| g.nvars() != nvars) {
        Some(i) => Err(ForgeError::Dimension(format!(
            "generator {i} has {} variables, expected {nvars}",
            gens[i].nvars()
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HilbertFit {
    /// Coefficients of the interpolating polynomial, constant term first.
    pub coeffs: Vec<String>,
    pub dimension: usize,
    pub degree: String,
    pub check_degree: u32,
    pub predicted: String,
    pub observed: usize,
    pub check_passed: bool,
}

/// Interpolates exactly through `samples` and validates the fit at `check`.
///
/// The projective dimension is the polynomial degree and the variety degree is
/// the leading coefficient times `dimension!`.
pub fn fit_hilbert_polynomial(samples: &[(u32, usize)], check: (u32, usize)) -> Result<HilbertFit> {
    let k = samples.len();
    if k == 0 {
        return Err(ForgeError::Dimension("no samples to fit".into()));
    }
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|&(d, v)| {
            let mut row: Vec<Rational> = (0..k).map(|e| num_traits::pow(rat(d as i64), e)).collect();
            row.push(rat(v as i64));
            row
        })
        .collect();
    let r = Mat::from_rows(rows).rref();
    if r.rank != k || r.pivots.contains(&k) {
        return Err(ForgeError::Dimension("sample degrees are not distinct".into()));
    }
    let coeffs: Vec<Rational> = (0..k).map(|i| r.reduced[(i, k)].clone()).collect();
    let dimension = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let factorial = (1..=dimension as i64).fold(Rational::one(), |acc, i| acc * rat(i));
    let degree = &coeffs[dimension] * factorial;
    let x = rat(check.0 as i64);
    let predicted = coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * &x + c);
    Ok(HilbertFit {
        coeffs: coeffs.iter().map(crate::exactmath::rational::to_text).collect(),
        dimension,
        degree: crate::exactmath::rational::to_text(&degree),
        check_degree: check.0,
        check_passed: predicted == rat(check.1 as i64),
        predicted: crate::exactmath::rational::to_text(&predicted),
        observed: check.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_ideal() {
        assert_eq!(hilbert_function(7, &[], 2).unwrap(), 28);
    }

    #[test]
    fn fit_twisted_cubic() {
        let samples: Vec<(u32, usize)> = (3..5).map(|d| (d, 3 * d as usize + 1)).collect();
        let fit = fit_hilbert_polynomial(&samples, (7, 22)).unwrap();
        assert_eq!(fit.dimension, 1);
        assert_eq!(fit.degree, "3/1");
        assert!(fit.check_passed);
    }

    #[test]
    fn fit_detects_bad_check() {
        let samples: Vec<(u32, usize)> = (3..5).map(|d| (d, 3 * d as usize + 1)).collect();
        assert!(!fit_hilbert_polynomial(&samples, (7, 23)).unwrap().check_passed);
    }
}
