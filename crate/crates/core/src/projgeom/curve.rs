use num_traits::Zero;

use super::space::ProjPoint;
use crate::error::{ForgeError, Result};
use crate::exactmath::binary::gcd_all;
use crate::exactmath::poly::{det_poly, monomials_of_degree};
use crate::exactmath::{BinaryForm, Mat, MultiPoly, Rational};

/// A curve `P^1 -> P^n` given by `n + 1` binary forms of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve {
    components: Vec<BinaryForm>,
}

impl ParamCurve {
    /// Builds the curve, rejecting mixed degrees and base points.
    pub fn new(components: Vec<BinaryForm>) -> Result<Self> {
        let c = Self::new_unchecked(components)?;
        if !c.is_base_point_free() {
            return Err(ForgeError::NotGeneric("parametrization has a base point".into()));
        }
        Ok(c)
    }

    /// Builds the curve without the base-point check (degrees must still agree).
    pub fn new_unchecked(components: Vec<BinaryForm>) -> Result<Self> {
        let d = components
            .first()
            .ok_or_else(|| ForgeError::Dimension("curve with no components".into()))?
            .degree();
        if components.iter().any(|c| c.degree() != d) {
            return Err(ForgeError::Dimension("components of different degrees".into()));
        }
        Ok(ParamCurve { components })
    }

    pub fn components(&self) -> &[BinaryForm] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn ncoords(&self) -> usize {
        self.components.len()
    }

    /// True when the components have no common projective root.
    pub fn is_base_point_free(&self) -> bool {
        gcd_all(&self.components).is_some_and(|g| g.degree() == 0)
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Result<ProjPoint> {
        ProjPoint::new(self.eval_vector(s, t))
    }

    pub fn eval_vector(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(s, t)).collect()
    }

    /// Components as polynomials in `(s, t)`.
    pub fn as_multipolys(&self) -> Vec<MultiPoly> {
        self.components.iter().map(BinaryForm::to_multipoly).collect()
    }

    /// `f` pulled back along the parametrization, of degree `deg f * deg curve`.
    pub fn compose(&self, f: &MultiPoly) -> Result<BinaryForm> {
        if f.nvars() != self.ncoords() {
            return Err(ForgeError::Dimension(format!(
                "polynomial in {} variables on a curve in {} coordinates",
                f.nvars(),
                self.ncoords()
            )));
        }
        let deg = f
            .homogeneous_degree()
            .ok_or(ForgeError::Inhomogeneous { index: 0 });
        let deg = match (f.is_zero(), deg) {
            (true, _) => 0,
            (false, d) => d? as usize,
        };
        let pulled = f.substitute(&self.as_multipolys());
        if pulled.is_zero() {
            return Ok(BinaryForm::zero(deg * self.degree()));
        }
        BinaryForm::from_multipoly(&pulled, deg * self.degree())
    }
}

/// The rational normal curve `(s^d, s^(d-1) t, ..., t^d)`.
pub fn rnc_param(d: usize) -> ParamCurve {
    ParamCurve::new((0..=d).map(|k| BinaryForm::monomial(d, k)).collect())
        .expect("the rational normal curve is base-point free")
}

/// Determinant of the 3x3 Hankel matrix of `x0..x4`.
pub fn hankel_cubic() -> MultiPoly {
    let x = |i| MultiPoly::var(5, i);
    let m = (0..3)
        .map(|r| (0..3).map(|c| x(r + c)).collect())
        .collect();
    det_poly(m).expect("3x3 determinant")
}

/// A line in projective space swept by two parametrized points `p(z)`, `q(z)`.
#[derive(Clone, Debug)]
pub struct ParamLine {
    pub p: Vec<BinaryForm>,
    pub q: Vec<BinaryForm>,
}

/// Quadrics vanishing identically on `curve` and on every supplied line.
///
/// The basis is the null space of the linear conditions, in the grlex monomial
/// basis of quadrics.
pub fn quadrics_through(curve: &ParamCurve, extra: &[ParamLine]) -> Result<(usize, Vec<MultiPoly>)> {
    let n = curve.ncoords();
    let monos = monomials_of_degree(n, 2);
    let pairs: Vec<(usize, usize)> = monos
        .iter()
        .map(|m| {
            let idx: Vec<usize> = m
                .0
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            (idx[0], idx[1])
        })
        .collect();
    let mut blocks: Vec<Vec<BinaryForm>> = Vec::new();
    let b = curve.components();
    blocks.push(pairs.iter().map(|&(i, j)| b[i].mul(&b[j])).collect());
    for line in extra {
        if line.p.len() != n || line.q.len() != n {
            return Err(ForgeError::Dimension("line lives in a different ambient space".into()));
        }
        let (p, q) = (&line.p, &line.q);
        blocks.push(pairs.iter().map(|&(i, j)| p[i].mul(&p[j])).collect());
        blocks.push(pairs.iter().map(|&(i, j)| q[i].mul(&q[j])).collect());
        let half = crate::exactmath::frac(1, 2);
        blocks.push(
            pairs
                .iter()
                .map(|&(i, j)| {
                    if i == j {
                        p[i].mul(&q[i])
                    } else {
                        p[i].mul(&q[j]).add(&p[j].mul(&q[i])).scale(&half)
                    }
                })
                .collect(),
        );
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for block in &blocks {
        let deg = block[0].degree();
        for k in 0..=deg {
            let row: Vec<Rational> = block.iter().map(|f| f.coeff(k).clone()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let r = Mat::from_rows_with_cols(rows, monos.len()).rref();
    let basis: Vec<MultiPoly> = r
        .kernel_basis
        .iter()
        .map(|v| MultiPoly::from_coefficient_vector(&monos, v))
        .collect();
    Ok((basis.len(), basis))
}
