use std::fmt;

use num_traits::{One, Zero};

use crate::error::{ForgeError, Result};
use crate::exactmath::{Mat, Rational};

/// A point of projective space, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let first = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(ForgeError::ZeroForm { op: "projective point" })?
            .clone();
        let inv = first.recip();
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&v| crate::exactmath::rat(v)).collect())
    }

    /// The coordinate point `e_i` of `P^(n-1)`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        ProjPoint { coords: c }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Number of homogeneous coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

/// A linear subspace, kept as the nonzero rows of a reduced row-echelon matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ncoords: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(ncoords: usize, vectors: &[Vec<Rational>]) -> Self {
        let r = Mat::from_rows_with_cols(vectors.to_vec(), ncoords).rref();
        Subspace {
            ncoords,
            basis: (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect(),
            pivots: r.pivots,
        }
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Vector-space dimension.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Rational::zero(); self.ncoords];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in rebuilt.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.contains(p.coords())
    }

    /// Linear forms vanishing on the subspace (a basis of the annihilator).
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        Mat::from_rows_with_cols(self.basis.clone(), self.ncoords)
            .rref()
            .kernel_basis
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ncoords, &v)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(P^{} in P^{})", self.dim(), self.ncoords as i64 - 1)
    }
}

/// Smallest linear subspace containing `points`.
pub fn span(points: &[ProjPoint]) -> Result<Subspace> {
    let n = points
        .first()
        .ok_or_else(|| ForgeError::Dimension("span of no points".into()))?
        .len();
    if points.iter().any(|p| p.len() != n) {
        return Err(ForgeError::Dimension("points in different ambient spaces".into()));
    }
    let v: Vec<Vec<Rational>> = points.iter().map(|p| p.coords.clone()).collect();
    Ok(Subspace::from_vectors(n, &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn canonical_scaling() {
        let p = ProjPoint::from_i64(&[0, 2, 4]).unwrap();
        let q = ProjPoint::from_i64(&[0, -1, -2]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.coords()[1], rat(1));
        assert!(ProjPoint::from_i64(&[0, 0]).is_err());
    }

    #[test]
    fn spans() {
        let p = ProjPoint::from_i64(&[1, 2, 3]).unwrap();
        assert_eq!(span(std::slice::from_ref(&p)).unwrap().dim(), 0);
        let q = ProjPoint::from_i64(&[0, 1, 0]).unwrap();
        let l = span(&[p.clone(), q.clone()]).unwrap();
        assert_eq!(l.dim(), 1);
        let mid = ProjPoint::from_i64(&[1, 3, 3]).unwrap();
        assert!(l.contains_point(&mid));
        assert_eq!(span(&[p, q, mid]).unwrap(), l);
        assert_eq!(l.annihilator().len(), 1);
    }
}
