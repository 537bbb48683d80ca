use num_traits::Zero;

use super::pluecker::PAIRS;
use crate::error::{ForgeError, Result};
use crate::exactmath::{frac, Mat, MultiPoly, Rational};

/// A quadric of P^4 by its symmetric matrix; `Q(x) = x^T M x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric5 {
    m: Mat,
}

impl Quadric5 {
    pub fn new(m: Mat) -> Result<Self> {
        if m.rows() != 5 || m.cols() != 5 || !m.is_symmetric() {
            return Err(ForgeError::Dimension("expected a symmetric 5x5 matrix".into()));
        }
        Ok(Quadric5 { m })
    }

    /// Reads a quadratic form in 5 variables.
    pub fn from_poly(q: &MultiPoly) -> Result<Self> {
        if q.nvars() != 5 || !(q.is_zero() || q.homogeneous_degree() == Some(2)) {
            return Err(ForgeError::Dimension("expected a quadratic form on P^4".into()));
        }
        let mut m = Mat::zeros(5, 5);
        for (mono, c) in q.terms() {
            let idx: Vec<usize> = (0..5).flat_map(|i| std::iter::repeat_n(i, mono.0[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[(i, i)] = c.clone();
            } else {
                m[(i, j)] = c * frac(1, 2);
                m[(j, i)] = c * frac(1, 2);
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn det(&self) -> Rational {
        self.m.det()
    }

    pub fn is_smooth(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn bil(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let my = self.m.mul_vec(y);
        x.iter().zip(&my).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.bil(x, x)
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut q = MultiPoly::zero(5);
        for i in 0..5 {
            for j in 0..5 {
                let mut e = vec![0; 5];
                e[i] += 1;
                e[j] += 1;
                q.add_term(crate::exactmath::Monomial(e), self.m[(i, j)].clone());
            }
        }
        q
    }
}

/// The symmetric 10x10 matrix `∧^2 M` in Pluecker coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compound10 {
    c: Mat,
}

impl Compound10 {
    pub fn matrix(&self) -> &Mat {
        &self.c
    }

    /// `W(p) = p^T C p`.
    pub fn eval(&self, p: &[Rational]) -> Rational {
        let cp = self.c.mul_vec(p);
        p.iter().zip(&cp).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `C p`, half the gradient of `W` at `p`.
    pub fn half_gradient(&self, p: &[Rational]) -> Vec<Rational> {
        self.c.mul_vec(p)
    }

    /// `W` as a quadratic form in the ten Pluecker variables.
    pub fn to_poly(&self) -> MultiPoly {
        let mut w = MultiPoly::zero(10);
        for a in 0..10 {
            for b in 0..10 {
                let mut e = vec![0; 10];
                e[a] += 1;
                e[b] += 1;
                w.add_term(crate::exactmath::Monomial(e), self.c[(a, b)].clone());
            }
        }
        w
    }
}

/// `C_{(ij),(kl)} = M_ik M_jl - M_il M_jk`.
pub fn second_compound(q: &Quadric5) -> Compound10 {
    let m = &q.m;
    let mut c = Mat::zeros(10, 10);
    for (a, &(i, j)) in PAIRS.iter().enumerate() {
        for (b, &(k, l)) in PAIRS.iter().enumerate() {
            c[(a, b)] = &m[(i, k)] * &m[(j, l)] - &m[(i, l)] * &m[(j, k)];
        }
    }
    Compound10 { c }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::grassmann::pluecker::pluecker_of_line;
    use crate::projgeom::ProjPoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_compound() {
        let c = second_compound(&Quadric5::new(Mat::identity(5)).unwrap());
        assert_eq!(c.matrix(), &Mat::identity(10));
    }

    #[test]
    fn line_inside_quadric() {
        // x0 x1 + x2 x3 + x4^2 contains span(e0, e3)
        let mut m = Mat::zeros(5, 5);
        for (i, j) in [(0, 1), (2, 3)] {
            m[(i, j)] = frac(1, 2);
            m[(j, i)] = frac(1, 2);
        }
        m[(4, 4)] = rat(1);
        let q = Quadric5::new(m).unwrap();
        assert!(q.is_smooth());
        let c = second_compound(&q);
        let p = pluecker_of_line(&ProjPoint::unit(5, 0), &ProjPoint::unit(5, 3)).unwrap();
        assert!(c.eval(p.coords()).is_zero());
        // tangentially, the gradient pairs to zero with every line through a point of the line
        for k in 0..5 {
            for base in [0, 3] {
                if k == base {
                    continue;
                }
                let e = pluecker_of_line(&ProjPoint::unit(5, base), &ProjPoint::unit(5, k)).unwrap();
                let g = c.half_gradient(p.coords());
                let pairing = g.iter().zip(e.coords()).fold(rat(0), |acc, (a, b)| acc + a * b);
                assert!(pairing.is_zero());
            }
        }
    }

    #[test]
    fn evaluation_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut m = Mat::zeros(5, 5);
            for i in 0..5 {
                for j in i..5 {
                    let v = rat(rng.random_range(-5..=5));
                    m[(i, j)] = v.clone();
                    m[(j, i)] = v;
                }
            }
            let x: Vec<Rational> = (0..5).map(|_| rat(rng.random_range(-6..=6))).collect();
            let y: Vec<Rational> = (0..5).map(|_| rat(rng.random_range(-6..=6))).collect();
            let q = Quadric5::new(m).unwrap();
            let c = second_compound(&q);
            let p: Vec<Rational> = PAIRS.iter().map(|&(i, j)| &x[i] * &y[j] - &x[j] * &y[i]).collect();
            let rhs = q.eval(&x) * q.eval(&y) - q.bil(&x, &y) * q.bil(&x, &y);
            assert_eq!(c.eval(&p), rhs);
        }
    }

    #[test]
    fn poly_round_trip() {
        let q = Quadric5::new(Mat::from_i64(&[
            &[1, 2, 0, 0, 0],
            &[2, 0, 1, 0, 0],
            &[0, 1, 3, 0, 1],
            &[0, 0, 0, -1, 0],
            &[0, 0, 1, 0, 2],
        ]))
        .unwrap();
        assert_eq!(Quadric5::from_poly(&q.to_poly()).unwrap(), q);
    }
}
