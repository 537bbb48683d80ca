use std::fmt;

use num_traits::Zero;

use crate::error::{ForgeError, Result};
use crate::exactmath::{Mat, MultiPoly, Rational};
use crate::projgeom::{ProjPoint, Subspace};

/// Index pairs `(i, j)`, `i < j`, in coordinate order.
pub const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

pub const PLUECKER_ORDER: &str = "p01,p02,p03,p04,p12,p13,p14,p23,p24,p34; p_ij = x_i y_j - x_j y_i";

/// Coordinate index of `p_ij` for `i < j`.
pub fn pair_index(i: usize, j: usize) -> usize {
    PAIRS
        .iter()
        .position(|&(a, b)| (a, b) == (i, j))
        .unwrap_or_else(|| panic!("no Pluecker coordinate p{i}{j}"))
}

/// Signed entry `x_ij` of the skew matrix attached to a vector of `∧^2`.
pub fn skew_entry<T: Clone + std::ops::Neg<Output = T>>(v: &[T], i: usize, j: usize, zero: T) -> T {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => v[pair_index(i, j)].clone(),
        std::cmp::Ordering::Greater => -v[pair_index(j, i)].clone(),
        std::cmp::Ordering::Equal => zero,
    }
}

/// A point of P^9 in the coordinates above.
#[derive(Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    coords: Vec<Rational>,
}

impl PlueckerVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != 10 {
            return Err(ForgeError::Dimension(format!("{} Pluecker coordinates", coords.len())));
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(ForgeError::ZeroForm { op: "Pluecker vector" });
        }
        Ok(PlueckerVector { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        skew_entry(&self.coords, i, j, Rational::zero())
    }

    pub fn to_point(&self) -> ProjPoint {
        ProjPoint::new(self.coords.clone()).expect("nonzero by construction")
    }

    pub fn residual(&self) -> [Rational; 5] {
        residual(&self.coords)
    }

    pub fn is_decomposable(&self) -> bool {
        self.residual().iter().all(Zero::is_zero)
    }

    /// The skew-symmetric 5x5 matrix `(p_ij)`.
    pub fn skew_matrix(&self) -> Mat {
        let mut m = Mat::zeros(5, 5);
        for i in 0..5 {
            for j in 0..5 {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }

    /// The underlying line of P^4 as a 2-dimensional subspace of k^5.
    pub fn line(&self) -> Result<Subspace> {
        if !self.is_decomposable() {
            return Err(not_decomposable(&self.residual()));
        }
        let cols = self.skew_matrix().transpose().to_rows();
        Ok(Subspace::from_vectors(5, &cols))
    }
}

impl fmt::Debug for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "P[{}]", c.join(", "))
    }
}

pub(crate) fn not_decomposable(res: &[Rational]) -> ForgeError {
    ForgeError::NotDecomposable(res.iter().map(|q| q.to_string()).collect())
}

/// `p_ij = p_i q_j - p_j q_i`.
pub fn pluecker_of_line(p: &ProjPoint, q: &ProjPoint) -> Result<PlueckerVector> {
    if p.len() != 5 || q.len() != 5 {
        return Err(ForgeError::Dimension("lines must live in P^4".into()));
    }
    let (x, y) = (p.coords(), q.coords());
    let coords: Vec<Rational> = PAIRS.iter().map(|&(i, j)| &x[i] * &y[j] - &x[j] * &y[i]).collect();
    if coords.iter().all(Zero::is_zero) {
        return Err(ForgeError::EqualPoints);
    }
    Ok(PlueckerVector { coords })
}

/// Quadratic Pfaffian of the principal 4x4 block on `idx`, evaluated through `get`.
fn pfaffian4<T, F>(idx: [usize; 4], get: F) -> T
where
    F: Fn(usize, usize) -> T,
    T: std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::ops::Add<Output = T>,
{
    let [a, b, c, d] = idx;
    get(a, b) * get(c, d) - get(a, c) * get(b, d) + get(a, d) * get(b, c)
}

fn complement(k: usize) -> [usize; 4] {
    let v: Vec<usize> = (0..5).filter(|&i| i != k).collect();
    [v[0], v[1], v[2], v[3]]
}

/// The five relations; relation `k` is the Pfaffian of the block omitting index `k`.
pub fn pluecker_relations() -> Vec<MultiPoly> {
    (0..5)
        .map(|k| pfaffian4(complement(k), |i, j| MultiPoly::var(10, pair_index(i, j))))
        .collect()
}

/// The relations evaluated at `v`.
pub fn residual(v: &[Rational]) -> [Rational; 5] {
    std::array::from_fn(|k| pfaffian4(complement(k), |i, j| v[pair_index(i, j)].clone()))
}

/// The five 4x4 Pfaffians of a skew matrix (the components of `ω ∧ ω` up to a factor 2).
pub fn pfaffians_of_skew(m: &Mat) -> [Rational; 5] {
    std::array::from_fn(|k| pfaffian4(complement(k), |i, j| m[(i, j)].clone()))
}

/// The same Pfaffians for a skew matrix of polynomials.
pub fn pfaffians_of_poly_skew(m: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    (0..5)
        .map(|k| pfaffian4(complement(k), |i, j| m[i][j].clone()))
        .collect()
}

/// Result of joining two points of G(1,4) by a line of P^9.
#[derive(Clone, Debug)]
pub struct PencilJoin {
    pub line: Subspace,
    /// Common point of the two lines of P^4, or `None` when they are skew.
    pub center: Option<ProjPoint>,
}

impl PencilJoin {
    pub fn is_skew(&self) -> bool {
        self.center.is_none()
    }
}

pub fn pencil_join(g1: &PlueckerVector, g2: &PlueckerVector) -> Result<PencilJoin> {
    let l1 = g1.line()?;
    let l2 = g2.line()?;
    if g1.to_point() == g2.to_point() {
        return Err(ForgeError::EqualPoints);
    }
    let line = Subspace::from_vectors(10, &[g1.coords.clone(), g2.coords.clone()]);
    // solve a1 u1 + a2 u2 = b1 w1 + b2 w2
    let mut rows = Vec::new();
    for c in 0..5 {
        let mut r: Vec<Rational> = l1.basis().iter().map(|v| v[c].clone()).collect();
        r.extend(l2.basis().iter().map(|v| -v[c].clone()));
        rows.push(r);
    }
    let ker = Mat::from_rows(rows).rref().kernel_basis;
    let center = match ker.as_slice() {
        [k] => {
            let mut x = vec![Rational::zero(); 5];
            for (a, u) in k.iter().zip(l1.basis()) {
                for (xi, ui) in x.iter_mut().zip(u) {
                    *xi += a * ui;
                }
            }
            Some(ProjPoint::new(x)?)
        }
        _ => None,
    };
    Ok(PencilJoin { line, center })
}
