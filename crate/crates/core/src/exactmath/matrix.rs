//! Dense rational matrices and exact row reduction.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{rat, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub kernel_basis: Vec<Vec<Rational>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds with an explicit column count so `0 x n` matrices keep their width.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|row| row.len() == cols), "ragged rows");
        Mat {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Reduced row-echelon form, pivot columns and a null-space basis.
    pub fn rref(&self) -> Rref {
        let (rank, reduced, pivots, _) = self.eliminate(false);
        let kernel_basis = kernel_from_rref(&reduced, &pivots);
        Rref {
            rank,
            reduced,
            pivots,
            kernel_basis,
        }
    }

    /// Like [`Mat::rref`] but also returns the invertible `P` with `P * self == reduced`.
    pub fn rref_with_transform(&self) -> (Rref, Mat) {
        let (rank, reduced, pivots, p) = self.eliminate(true);
        let kernel_basis = kernel_from_rref(&reduced, &pivots);
        (
            Rref {
                rank,
                reduced,
                pivots,
                kernel_basis,
            },
            p.expect("transform requested"),
        )
    }

    fn eliminate(&self, track: bool) -> (usize, Mat, Vec<usize>, Option<Mat>) {
        let mut m = self.clone();
        let mut p = track.then(|| Mat::identity(self.rows));
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(piv, rank);
            if let Some(p) = p.as_mut() {
                p.swap_rows(piv, rank);
            }
            let inv = m[(rank, col)].recip();
            m.scale_row(rank, &inv);
            if let Some(p) = p.as_mut() {
                p.scale_row(rank, &inv);
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                m.axpy_row(r, rank, &f);
                if let Some(p) = p.as_mut() {
                    p.axpy_row(r, rank, &f);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (rank, m, pivots, p)
    }

    pub fn rank(&self) -> usize {
        self.echelon_rank()
    }

    /// Rank via forward elimination only (no back substitution).
    fn echelon_rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let inv = m[(rank, col)].recip();
            for r in rank + 1..m.rows {
                let f = &m[(r, col)] * &inv;
                if !f.is_zero() {
                    m.axpy_row(r, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det *= &pv;
            let inv = pv.recip();
            for r in col + 1..n {
                let f = &m[(r, col)] * &inv;
                if !f.is_zero() {
                    m.axpy_row(r, col, &f);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Rational) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            if !v.is_zero() {
                *v *= f;
            }
        }
    }

    /// row[dst] -= f * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, f: &Rational) {
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = f * s;
            self.data[dst * self.cols + c] -= delta;
        }
    }
}

fn kernel_from_rref(reduced: &Mat, pivots: &[usize]) -> Vec<Vec<Rational>> {
    let cols = reduced.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Convenience: the free function form of [`Mat::rref`].
pub fn rref(m: &Mat) -> (usize, Mat, Vec<Vec<Rational>>) {
    let r = m.rref();
    (r.rank, r.reduced, r.kernel_basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_rank() {
        let (rank, reduced, kernel) = rref(&Mat::identity(3));
        assert_eq!(rank, 3);
        assert_eq!(reduced, Mat::identity(3));
        assert!(kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis.len(), 2);
        for v in &r.kernel_basis {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn empty_matrix() {
        let m = Mat::from_rows_with_cols(vec![], 4);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis.len(), 4);
    }

    #[test]
    fn determinant() {
        let m = Mat::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det(), rat(0));
        let m = Mat::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(m.det(), rat(-1));
    }

    fn small_matrix() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Mat::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| rat(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_transpose(m in small_matrix()) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
            prop_assert_eq!(r.rank, m.transpose().rank());
            prop_assert_eq!(r.rank + r.kernel_basis.len(), m.cols());
            for v in &r.kernel_basis {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn elimination_trace_reconstructs(m in small_matrix()) {
            let (r, p) = m.rref_with_transform();
            prop_assert_eq!(p.mul(&m), r.reduced);
            prop_assert!(!p.det().is_zero());
        }
    }
}
