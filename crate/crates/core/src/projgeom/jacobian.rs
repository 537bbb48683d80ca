use num_traits::Zero;

use super::curve::ParamCurve;
use crate::error::{ForgeError, Result};
use crate::exactmath::polymat::{det_uni, rank_uni};
use crate::exactmath::{rat, BinaryForm, MultiPoly, UniPoly};

#[derive(Clone, Debug)]
pub struct JacobianOnCurve {
    pub generic_rank: usize,
    /// Gcd of the maximal nonvanishing minors; constant iff the rank never drops.
    pub drop_locus: BinaryForm,
    pub minors_examined: usize,
}

/// Rank of the Jacobian of `gens` along `curve`, with the locus where it drops.
pub fn jacobian_on_curve(gens: &[MultiPoly], curve: &ParamCurve) -> Result<JacobianOnCurve> {
    let n = curve.ncoords();
    let mut row_degrees = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let dg = g.homogeneous_degree().ok_or(ForgeError::Inhomogeneous { index: i })?;
        let pulled = curve.compose(g)?;
        if !pulled.is_zero() {
            return Err(not_contained(i, &pulled));
        }
        row_degrees.push((dg as usize).saturating_sub(1) * curve.degree());
    }
    let entries: Vec<Vec<BinaryForm>> = gens
        .iter()
        .zip(&row_degrees)
        .map(|(g, &deg)| {
            (0..n)
                .map(|j| {
                    let dj = g.derivative(j);
                    if dj.is_zero() {
                        Ok(BinaryForm::zero(deg))
                    } else {
                        curve.compose(&dj)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let uni: Vec<Vec<UniPoly>> = entries
        .iter()
        .map(|row| row.iter().map(BinaryForm::dehomogenize).collect())
        .collect();
    let generic_rank = rank_uni(uni.clone())?;
    if generic_rank == 0 {
        return Ok(JacobianOnCurve {
            generic_rank,
            drop_locus: BinaryForm::from_i64(&[1]),
            minors_examined: 0,
        });
    }
    let mut gcd: Option<BinaryForm> = None;
    let mut examined = 0;
    'outer: for rs in subsets(gens.len(), generic_rank) {
        let deg: usize = rs.iter().map(|&r| row_degrees[r]).sum();
        for cs in subsets(n, generic_rank) {
            let sub: Vec<Vec<UniPoly>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| uni[r][c].clone()).collect())
                .collect();
            let minor = BinaryForm::homogenize(&det_uni(sub)?, deg);
            examined += 1;
            if minor.is_zero() {
                continue;
            }
            let g = match gcd {
                None => minor,
                Some(g) => g.gcd(&minor),
            };
            let done = g.degree() == 0;
            gcd = Some(g);
            if done {
                break 'outer;
            }
        }
    }
    Ok(JacobianOnCurve {
        generic_rank,
        drop_locus: gcd.expect("a nonzero maximal minor exists at the generic rank"),
        minors_examined: examined,
    })
}

fn not_contained(generator: usize, pulled: &BinaryForm) -> ForgeError {
    let sample = (0i64..)
        .map(|k| (rat(1), rat(k)))
        .chain(std::iter::once((rat(0), rat(1))))
        .find(|(s, t)| !pulled.eval(s, t).is_zero())
        .expect("a nonzero form has a nonzero value");
    ForgeError::NotContained {
        generator,
        parameter: format!("({}:{})", sample.0, sample.1),
        value: pulled.eval(&sample.0, &sample.1).to_string(),
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{hankel_cubic, quadrics_through, rnc_param};

    #[test]
    fn secant_cubic_singular_along_quartic() {
        let j = jacobian_on_curve(&[hankel_cubic()], &rnc_param(4)).unwrap();
        assert_eq!(j.generic_rank, 0);
    }

    #[test]
    fn containment_violation_reported() {
        let err = jacobian_on_curve(&[MultiPoly::var(5, 0)], &rnc_param(4)).unwrap_err();
        match err {
            ForgeError::NotContained { generator, .. } => assert_eq!(generator, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quartic_is_smooth_on_its_quadrics() {
        // the six quadrics cut B scheme-theoretically, so the rank is 3 everywhere
        let b = rnc_param(4);
        let (_, qs) = quadrics_through(&b, &[]).unwrap();
        let j = jacobian_on_curve(&qs, &b).unwrap();
        assert_eq!(j.generic_rank, 3);
        assert_eq!(j.drop_locus.degree(), 0);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(7, 4).len(), 35);
        assert_eq!(subsets(6, 4).len(), 15);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
