//! Degree-by-degree linear algebra on homogeneous ideals.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::Mat;
use super::modp::{ModMatrix, PRIMES};
use super::poly::{monomial_count, monomials_of_degree, Monomial, MultiPoly};
use super::rational::{common_denominator, Rational};
use crate::error::{ForgeError, Result};

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub dimension: usize,
    pub basis: Vec<MultiPoly>,
}

/// Checks homogeneity and returns the generator degrees (zero generators map to `None`).
fn generator_degrees(gens: &[MultiPoly]) -> Result<Vec<Option<u32>>> {
    gens.iter()
        .enumerate()
        .map(|(index, g)| {
            if g.is_zero() {
                Ok(None)
            } else {
                g.homogeneous_degree()
                    .map(Some)
                    .ok_or(ForgeError::Inhomogeneous { index })
            }
        })
        .collect()
}

/// The degree-`d` part of the ideal spanned by `gens`, as an exact reduced basis.
pub fn graded_piece(gens: &[MultiPoly], d: u32) -> Result<GradedPiece> {
    let n = match gens.first() {
        Some(g) => g.nvars(),
        None => {
            return Ok(GradedPiece {
                dimension: 0,
                basis: vec![],
            })
        }
    };
    let degs = generator_degrees(gens)?;
    let cols = monomials_of_degree(n, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (g, deg) in gens.iter().zip(&degs) {
        let Some(deg) = *deg else { continue };
        if deg > d {
            continue;
        }
        for mu in monomials_of_degree(n, d - deg) {
            let mut row = vec![Rational::zero(); cols.len()];
            for (m, c) in g.terms() {
                row[index[&m.mul(&mu)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let r = Mat::from_rows_with_cols(rows, cols.len()).rref();
    let basis = (0..r.rank)
        .map(|i| MultiPoly::from_coefficient_vector(&cols, r.reduced.row(i)))
        .collect();
    Ok(GradedPiece {
        dimension: r.rank,
        basis,
    })
}

/// Rank bounds for the degree-`d` piece of an ideal, certified modulo a prime.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertifiedPiece {
    pub degree: u32,
    pub prime: u64,
    pub rows: usize,
    pub cols: usize,
    /// Rank of the multiplication matrix mod p; a lower bound for the ideal dimension.
    pub ideal_lower: usize,
    /// Columns minus the rank mod p of the evaluation matrix at zeros of the ideal.
    pub ideal_upper: usize,
    pub points: usize,
}

impl CertifiedPiece {
    pub fn exact_dimension(&self) -> Option<usize> {
        (self.ideal_lower == self.ideal_upper).then_some(self.ideal_lower)
    }

    pub fn exact_quotient(&self) -> Option<usize> {
        self.exact_dimension().map(|k| self.cols - k)
    }
}

/// Integer scaling of a generator reduced mod `p`, or `None` if the reduction vanishes.
fn reduce_poly(g: &MultiPoly, p: u64) -> Option<Vec<(Monomial, u64)>> {
    let den = common_denominator(g.terms().map(|(_, c)| c));
    let pb = BigInt::from(p);
    let out: Vec<(Monomial, u64)> = g
        .terms()
        .map(|(m, c)| {
            let v = (c * Rational::from_integer(den.clone())).to_integer();
            (m.clone(), v.mod_floor(&pb).to_u64().unwrap())
        })
        .filter(|(_, v)| *v != 0)
        .collect();
    (!out.is_empty()).then_some(out)
}

fn reduce_point(x: &[Rational], p: u64) -> Option<Vec<u64>> {
    let ints = super::rational::primitive_integers(x);
    let pb = BigInt::from(p);
    let v: Vec<u64> = ints.iter().map(|z| z.mod_floor(&pb).to_u64().unwrap()).collect();
    v.iter().any(|&z| z != 0).then_some(v)
}

/// Certifies `dim I_d` by sandwiching it between two ranks over a prime field.
///
/// `rank_p(M) <= rank_Q(M) = dim I_d` for the multiplication matrix `M`, and since
/// every element of `I_d` vanishes at each of `points`, `dim I_d <= cols - rank_Q(E)
/// <= cols - rank_p(E)` for the evaluation matrix `E`. The points are checked to be
/// exact zeros of every generator first.
pub fn certified_piece(gens: &[MultiPoly], d: u32, points: &[Vec<Rational>]) -> Result<CertifiedPiece> {
    let n = gens
        .first()
        .map(MultiPoly::nvars)
        .ok_or_else(|| ForgeError::Dimension("no generators".into()))?;
    let degs = generator_degrees(gens)?;
    for x in points {
        for (gi, g) in gens.iter().enumerate() {
            let v = g.eval(x);
            if !v.is_zero() {
                return Err(ForgeError::NotContained {
                    generator: gi,
                    parameter: format!("{x:?}"),
                    value: v.to_string(),
                });
            }
        }
    }
    let cols = monomials_of_degree(n, d);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut chosen = None;
    for &p in &PRIMES {
        let lower = multiplication_rank(gens, &degs, d, &cols, &index, p);
        let Some((lower, rows)) = lower else { continue };
        let Some(eval_rank) = evaluation_rank(points, &cols, p) else { continue };
        let cert = CertifiedPiece {
            degree: d,
            prime: p,
            rows,
            cols: cols.len(),
            ideal_lower: lower,
            ideal_upper: cols.len() - eval_rank,
            points: points.len(),
        };
        let done = cert.exact_dimension().is_some();
        chosen = Some(cert);
        if done {
            break;
        }
    }
    chosen.ok_or(ForgeError::NoGoodPrime)
}

fn multiplication_rank(
    gens: &[MultiPoly],
    degs: &[Option<u32>],
    d: u32,
    cols: &[Monomial],
    index: &HashMap<&Monomial, usize>,
    p: u64,
) -> Option<(usize, usize)> {
    let n = cols.first()?.nvars();
    let mut reduced = Vec::new();
    for (g, deg) in gens.iter().zip(degs) {
        match deg {
            Some(deg) if *deg <= d => reduced.push((reduce_poly(g, p)?, *deg)),
            _ => {}
        }
    }
    let rows: usize = reduced.iter().map(|(_, deg)| monomial_count(n, d - deg)).sum();
    let mut m = ModMatrix::zeros(rows, cols.len(), p);
    let mut r = 0;
    for (terms, deg) in &reduced {
        for mu in monomials_of_degree(n, d - deg) {
            for (mono, c) in terms {
                m.set(r, index[&mono.mul(&mu)], *c);
            }
            r += 1;
        }
    }
    Some((m.rank(), rows))
}

fn evaluation_rank(points: &[Vec<Rational>], cols: &[Monomial], p: u64) -> Option<usize> {
    let mut e = ModMatrix::zeros(points.len(), cols.len(), p);
    for (r, x) in points.iter().enumerate() {
        let xp = reduce_point(x, p)?;
        let max_e = cols.iter().map(Monomial::degree).max().unwrap_or(0) as usize;
        let pows: Vec<Vec<u64>> = xp
            .iter()
            .map(|&v| {
                let mut acc = vec![1u64; max_e + 1];
                for k in 1..=max_e {
                    acc[k] = acc[k - 1] * v % p;
                }
                acc
            })
            .collect();
        for (c, mono) in cols.iter().enumerate() {
            let v = mono
                .0
                .iter()
                .enumerate()
                .fold(1u64, |acc, (i, &k)| acc * pows[i][k as usize] % p);
            e.set(r, c, v);
        }
    }
    Some(e.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(Monomial(e.to_vec()), rat(1))
    }

    #[test]
    fn direct_span() {
        let gens = vec![mono(&[2, 0]), mono(&[1, 1])];
        let gp = graded_piece(&gens, 3).unwrap();
        assert_eq!(gp.dimension, 3);
        // x^3, x^2 y, x y^2 but never y^3
        assert!(gp.basis.iter().all(|b| b.coeff(&Monomial(vec![0, 3])).is_zero()));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let g = &mono(&[2, 0]) + &mono(&[1, 0]);
        assert_eq!(
            graded_piece(&[mono(&[1, 1]), g], 3).unwrap_err(),
            ForgeError::Inhomogeneous { index: 1 }
        );
    }

    #[test]
    fn certified_matches_exact_on_twisted_cubic() {
        // ideal of the twisted cubic (s^3, s^2 t, s t^2, t^3)
        let x = |i| MultiPoly::var(4, i);
        let gens = vec![
            &(&x(0) * &x(2)) - &(&x(1) * &x(1)),
            &(&x(0) * &x(3)) - &(&x(1) * &x(2)),
            &(&x(1) * &x(3)) - &(&x(2) * &x(2)),
        ];
        let points: Vec<Vec<Rational>> = (-6i64..7)
            .map(|t| vec![rat(1), rat(t), rat(t * t), rat(t * t * t)])
            .collect();
        for d in 2..5 {
            let exact = graded_piece(&gens, d).unwrap().dimension;
            let cert = certified_piece(&gens, d, &points).unwrap();
            assert_eq!(cert.exact_dimension(), Some(exact));
            // HF of the twisted cubic is 3d + 1
            assert_eq!(cert.exact_quotient(), Some(3 * d as usize + 1));
        }
    }

    fn gens_strategy() -> impl Strategy<Value = Vec<MultiPoly>> {
        let quad = proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..5).prop_map(|ts| {
            MultiPoly::from_terms(
                3,
                ts.into_iter()
                    .filter(|((a, b), _)| a + b <= 2)
                    .map(|((a, b), c)| (vec![a, b, 2 - a - b], rat(c))),
            )
        });
        proptest::collection::vec(quad, 1..4)
    }

    /// Brute-force span: all products pushed into an explicit list, then ranked.
    fn naive_dimension(gens: &[MultiPoly], d: u32) -> usize {
        let cols = monomials_of_degree(3, d);
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.total_degree().unwrap();
            for a in 0..=d {
                for b in 0..=d {
                    if a + b + dg <= d {
                        let c = d - dg - a - b;
                        let prod = g * &mono(&[a, b, c]);
                        rows.push(prod.coefficient_vector(&cols));
                    }
                }
            }
        }
        Mat::from_rows_with_cols(rows, cols.len()).rank()
    }

    proptest! {
        #[test]
        fn matches_naive_oracle_and_is_monotone(gens in gens_strategy(), extra in gens_strategy(), d in 2u32..5) {
            let dim = graded_piece(&gens, d).unwrap().dimension;
            prop_assert_eq!(dim, naive_dimension(&gens, d));
            let mut more = gens.clone();
            more.extend(extra);
            prop_assert!(graded_piece(&more, d).unwrap().dimension >= dim);
        }
    }
}
