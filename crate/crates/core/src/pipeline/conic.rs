use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::base::BaseGeometry;
use crate::error::{ForgeError, Result};
use crate::exactmath::binary::gcd_all;
use crate::exactmath::polymat::det_uni;
use crate::exactmath::rational::{primitive_integers, to_text};
use crate::exactmath::symmetric::symmetric_reduce;
use crate::exactmath::{discriminant, rat, BinaryForm, Mat, MultiPoly, Rational, UniPoly};
use crate::grassmann::{homogenize_elementary, Quadric5};
use crate::projgeom::{quadrics_through, ParamLine};

/// RNG stream used for conic draws.
pub const CONIC_STREAM: u64 = 0;

/// A smooth conic of P^2 parametrized by three binary quadrics `(a(t), b(t), c(t))`.
#[derive(Clone, Debug)]
pub struct ConicA {
    forms: [BinaryForm; 3],
    implicit: MultiPoly,
    on_diagonal: BinaryForm,
    diagonal_disc: Rational,
}

impl ConicA {
    /// Validates the genericity gates in order: no base point, smooth image,
    /// transversal to the diagonal conic.
    pub fn from_forms(forms: [BinaryForm; 3]) -> Result<Self> {
        if forms.iter().any(|f| f.degree() != 2) {
            return Err(ForgeError::Dimension("conic components must be binary quadrics".into()));
        }
        if !gcd_all(&forms).is_some_and(|g| g.degree() == 0) {
            return Err(ForgeError::NotGeneric("parametrization has a base point".into()));
        }
        let m = coefficient_matrix(&forms);
        if m.rank() < 3 {
            return Err(ForgeError::NotGeneric("implicit conic is degenerate".into()));
        }
        let implicit = implicit_equation(&m);
        let [a, b, c] = &forms;
        let on_diagonal = b.mul(b).sub(&a.mul(c).scale(&rat(4)));
        if on_diagonal.is_zero() {
            return Err(ForgeError::NotGeneric("conic lies on the diagonal conic".into()));
        }
        let diagonal_disc = discriminant(&on_diagonal)?;
        if diagonal_disc.is_zero() {
            return Err(ForgeError::NotGeneric("A∩D not reduced: the conic is tangent to the diagonal conic".into()));
        }
        Ok(ConicA {
            forms,
            implicit,
            on_diagonal,
            diagonal_disc,
        })
    }

    pub fn from_coefficients(c: &[i64; 9]) -> Result<Self> {
        Self::from_forms(forms_from_coefficients(c))
    }

    pub fn forms(&self) -> &[BinaryForm; 3] {
        &self.forms
    }

    pub fn implicit(&self) -> &MultiPoly {
        &self.implicit
    }

    /// `b^2 - 4ac` pulled back to the parameter line.
    pub fn on_diagonal(&self) -> &BinaryForm {
        &self.on_diagonal
    }

    pub fn diagonal_disc(&self) -> &Rational {
        &self.diagonal_disc
    }

    pub fn as_multipolys(&self) -> Vec<MultiPoly> {
        self.forms.iter().map(BinaryForm::to_multipoly).collect()
    }

    /// Two vectors of degree-6 forms spanning the bisecant line over each point of the conic.
    ///
    /// The line over `z` is the kernel of the 3x5 band matrix of `(a, b, c)`; the
    /// spanners are the kernel vectors with vanishing first and last coordinate.
    pub fn line_spanners(&self) -> Result<(Vec<BinaryForm>, Vec<BinaryForm>)> {
        Ok((band_kernel_vector(&self.forms, 0)?, band_kernel_vector(&self.forms, 4)?))
    }
}

fn forms_from_coefficients(c: &[i64; 9]) -> [BinaryForm; 3] {
    std::array::from_fn(|i| BinaryForm::from_i64(&c[3 * i..3 * i + 3]))
}

/// Row `i` holds component `i` in the basis `t0^2, t0 t1, t1^2`.
pub fn coefficient_matrix(forms: &[BinaryForm; 3]) -> Mat {
    Mat::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect())
}

/// With `Y = M^-1 (a, b, c)` the image satisfies `Y1^2 = Y0 Y2`.
fn implicit_equation(m: &Mat) -> MultiPoly {
    let (r, inv) = m.rref_with_transform();
    debug_assert_eq!(r.rank, 3);
    let y: Vec<MultiPoly> = (0..3)
        .map(|i| MultiPoly::linear(inv.row(i)))
        .collect();
    let f = &(&y[1] * &y[1]) - &(&y[0] * &y[2]);
    let coeffs: Vec<Rational> = f.terms().map(|(_, c)| c.clone()).collect();
    let ints = primitive_integers(&coeffs);
    MultiPoly::from_terms(
        3,
        f.terms()
            .map(|(m, _)| m.0.clone())
            .zip(ints.into_iter().map(Rational::from_integer))
            .collect::<Vec<_>>(),
    )
}

fn band_kernel_vector(forms: &[BinaryForm; 3], zero_at: usize) -> Result<Vec<BinaryForm>> {
    let uni: Vec<UniPoly> = forms.iter().map(BinaryForm::dehomogenize).collect();
    let mut rows: Vec<Vec<UniPoly>> = (0..3)
        .map(|r| {
            (0..5)
                .map(|c| if c >= r && c - r < 3 { uni[c - r].clone() } else { UniPoly::zero() })
                .collect()
        })
        .collect();
    rows.push((0..5).map(|c| if c == zero_at { UniPoly::one() } else { UniPoly::zero() }).collect());
    (0..5)
        .map(|j| {
            let minor: Vec<Vec<UniPoly>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let d = det_uni(minor)?;
            let d = if j % 2 == 1 { d.scale(&rat(-1)) } else { d };
            Ok(BinaryForm::homogenize(&d, 6))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConicAttempt {
    /// `a0 a1 a2 b0 b1 b2 c0 c1 c2`, coefficient `k` multiplying `t0^(2-k) t1^k`.
    pub coefficients: [i64; 9],
    pub rejected: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ConicChoice {
    pub conic: Option<ConicA>,
    pub attempts: Vec<ConicAttempt>,
    pub retry_budget: u32,
}

/// Draws conics with coefficients in `[-3, 3]` until one passes every gate,
/// making at most `retries + 1` attempts.
pub fn choose_conic(seed: u64, retries: u32) -> ConicChoice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(CONIC_STREAM);
    let mut attempts = Vec::new();
    for _ in 0..=retries {
        let coefficients: [i64; 9] = std::array::from_fn(|_| rng.random_range(-3..=3));
        match ConicA::from_coefficients(&coefficients) {
            Ok(conic) => {
                attempts.push(ConicAttempt {
                    coefficients,
                    rejected: None,
                });
                return ConicChoice {
                    conic: Some(conic),
                    attempts,
                    retry_budget: retries,
                };
            }
            Err(e) => attempts.push(ConicAttempt {
                coefficients,
                rejected: Some(e.to_string()),
            }),
        }
    }
    ConicChoice {
        conic: None,
        attempts,
        retry_budget: retries,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SplittingType {
    pub pair: (i64, i64),
    pub h0: usize,
    /// `(m, h0(T(m)))` over the scanned twists.
    pub profile: Vec<(i64, usize)>,
}

fn h0_line(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        (k + 1) as usize
    }
}

/// Splitting type of the tangent bundle of P^2 restricted to the image of
/// `(a, b, c)`, read off the Euler sequence `0 -> O -> O(2)^3 -> T -> 0` on P^1.
///
/// `h0(T(m)) = 3 h0(O(m+2)) - h0(O(m)) + dim ker(H1(O(m)) -> H1(O(m+2))^3)`; the
/// kernel is the cokernel of the Serre-dual multiplication map
/// `H0(O(-m-4))^3 -> H0(O(-m-2))`, `(g_i) -> sum g_i z_i`.
pub fn splitting_type_of(forms: &[BinaryForm; 3]) -> Result<SplittingType> {
    if forms.iter().any(|f| f.degree() != 2) || forms.iter().all(BinaryForm::is_zero) {
        return Err(ForgeError::Dimension("expected three binary quadrics, not all zero".into()));
    }
    let mut profile = Vec::new();
    for m in -8i64..=2 {
        let mut h = 3 * h0_line(m + 2) - h0_line(m);
        if m <= -2 {
            let src = -m - 4;
            let target = (-m - 1) as usize;
            let rank = if src < 0 {
                0
            } else {
                let src = src as usize;
                let mut cols = Vec::new();
                for f in forms {
                    for k in 0..=src {
                        cols.push(f.mul(&BinaryForm::monomial(src, k)).coeffs().to_vec());
                    }
                }
                Mat::from_rows(cols).rank()
            };
            h += target - rank;
        }
        profile.push((m, h));
    }
    let degree = profile.iter().find(|&&(m, _)| m == 0).map(|&(_, h)| h as i64 - 2).unwrap();
    let m_min = profile
        .iter()
        .find(|&&(_, h)| h > 0)
        .map(|&(m, _)| m)
        .ok_or_else(|| ForgeError::Dimension("twist range too small".into()))?;
    let q = -m_min;
    let pair = (degree - q, q);
    let predicted = |m: i64| h0_line(pair.0 + m) + h0_line(pair.1 + m);
    if profile.iter().any(|&(m, h)| predicted(m) != h) {
        return Err(ForgeError::NotGeneric("twist profile is not of a split rank-2 bundle".into()));
    }
    Ok(SplittingType {
        pair,
        h0: profile.iter().find(|&&(m, _)| m == 0).unwrap().1,
        profile,
    })
}

pub fn splitting_type(a: &ConicA) -> Result<SplittingType> {
    splitting_type_of(a.forms())
}

#[derive(Clone, Debug)]
pub struct QuadricThroughLines {
    pub quadric: Quadric5,
    pub solution_dim: usize,
    pub cross_check_dim: usize,
    pub cross_check_agrees: bool,
}

/// Polarization `Q(x, y)` of a quadratic form.
fn polar(q: &MultiPoly, x: &[MultiPoly], y: &[MultiPoly]) -> MultiPoly {
    let sum: Vec<MultiPoly> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    (&(&q.substitute(&sum) - &q.substitute(x)) - &q.substitute(y)).scale(&crate::exactmath::frac(1, 2))
}

/// The unique quadric through the quartic containing the bisecant line over every point of `a`.
///
/// A quadric through the quartic contains the line over `z` iff its polar form
/// vanishes at the two points over the roots of `z`. That condition is symmetric in
/// the roots and is rewritten through `e1 = -b/a`, `e2 = c/a`.
pub fn conic_to_quadric(a: &ConicA, base: &BaseGeometry) -> Result<QuadricThroughLines> {
    let s1 = MultiPoly::var(2, 0);
    let s2 = MultiPoly::var(2, 1);
    let b1: Vec<MultiPoly> = (0..5).map(|k| s1.pow(4 - k)).collect();
    let b2: Vec<MultiPoly> = (0..5).map(|k| s2.pow(4 - k)).collect();
    let [za, zb, zc] = &a.as_multipolys()[..] else { unreachable!() };
    let mut columns = Vec::new();
    for q in &base.quadrics_b {
        let r = symmetric_reduce(&polar(q, &b1, &b2))?;
        let f = homogenize_elementary(&r, 4, za, zb, zc)
            .ok_or_else(|| ForgeError::Dimension("polar form exceeds degree 4 in a root".into()))?;
        columns.push(if f.is_zero() { BinaryForm::zero(8) } else { BinaryForm::from_multipoly(&f, 8)? });
    }
    let rows: Vec<Vec<Rational>> = (0..=8)
        .map(|k| columns.iter().map(|c| c.coeff(k).clone()).collect())
        .collect();
    let kernel = Mat::from_rows(rows).rref().kernel_basis;
    if kernel.len() != 1 {
        return Err(ForgeError::NotGeneric(format!(
            "quadrics containing the lines form a space of dimension {}",
            kernel.len()
        )));
    }
    let c: Vec<Rational> = primitive_integers(&kernel[0]).into_iter().map(Rational::from_integer).collect();
    let poly = base
        .quadrics_b
        .iter()
        .zip(&c)
        .fold(MultiPoly::zero(5), |acc, (q, w)| acc + q.scale(w));
    let quadric = Quadric5::from_poly(&poly)?;
    if !quadric.is_smooth() {
        return Err(ForgeError::NotGeneric("quadric containing the lines is singular".into()));
    }
    let (u, w) = a.line_spanners()?;
    let (cross_check_dim, cross) = quadrics_through(&base.b, &[ParamLine { p: u, q: w }])?;
    let cross_check_agrees = cross_check_dim == 1 && proportional(&cross[0], &poly);
    Ok(QuadricThroughLines {
        quadric,
        solution_dim: kernel.len(),
        cross_check_dim,
        cross_check_agrees,
    })
}

/// True when `f = c g` for a nonzero constant `c`.
pub fn proportional(f: &MultiPoly, g: &MultiPoly) -> bool {
    let Some((m, cf)) = f.leading() else {
        return g.is_zero();
    };
    let cg = g.coeff(m);
    !cg.is_zero() && &g.scale(&(cf / cg)) == f
}

/// Matrix text of a quadric for certificates.
pub fn quadric_rows(q: &Quadric5) -> Vec<Vec<String>> {
    q.matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(to_text).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::base::build_base;

    #[test]
    fn implicit_vanishes_on_conic() {
        let a = ConicA::from_coefficients(&[1, 0, 1, 2, 1, 0, 0, -1, 3]).unwrap();
        let pulled = a.implicit().substitute(&a.as_multipolys());
        assert!(pulled.is_zero());
    }

    #[test]
    fn standard_conic_is_tangent_to_diagonal() {
        // z = (t^2, t, 1) meets b^2 = 4ac in two double points
        let err = ConicA::from_coefficients(&[0, 0, 1, 0, 1, 0, 1, 0, 0]).unwrap_err();
        assert!(err.to_string().contains("A∩D not reduced"), "{err}");
    }

    #[test]
    fn gates_fire_in_order() {
        // common root at t1 = 0
        let e = ConicA::from_coefficients(&[1, 0, 0, 1, 1, 0, 2, 3, 0]).unwrap_err();
        assert!(e.to_string().contains("base point"));
        // dependent rows
        let e = ConicA::from_coefficients(&[1, 0, 0, 0, 0, 1, 1, 0, 1]).unwrap_err();
        assert!(e.to_string().contains("degenerate"));
    }

    #[test]
    fn band_kernel_is_the_line() {
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        let (u, w) = a.line_spanners().unwrap();
        for v in [&u, &w] {
            for r in 0..3 {
                let mut acc = BinaryForm::zero(8);
                for k in 0..3 {
                    acc = acc.add(&a.forms()[k].mul(&v[r + k]));
                }
                assert!(acc.is_zero());
            }
        }
        assert!(u[0].is_zero() && w[4].is_zero());
    }

    #[test]
    fn balanced_splitting() {
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        let s = splitting_type(&a).unwrap();
        assert_eq!(s.pair, (3, 3));
        assert_eq!(s.h0, 8);
    }

    #[test]
    fn unbalanced_counterexample() {
        // (t^2, 1, t^2 + 1): dependent pairing rows
        let z = [
            BinaryForm::from_i64(&[0, 0, 1]),
            BinaryForm::from_i64(&[1, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 1]),
        ];
        let s = splitting_type_of(&z).unwrap();
        assert_eq!(s.pair, (2, 4));
        assert_eq!(s.h0, 8);
    }

    #[test]
    fn splitting_is_moebius_invariant() {
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        for m in [[2, 1, 1, 1], [0, 1, -1, 3], [1, -2, 3, 5]] {
            let mm: Vec<Rational> = m.iter().map(|&v| rat(v)).collect();
            let g: [BinaryForm; 3] =
                std::array::from_fn(|i| a.forms()[i].linear_substitute([&mm[0], &mm[1], &mm[2], &mm[3]]));
            assert_eq!(splitting_type_of(&g).unwrap().pair, (3, 3));
        }
    }

    #[test]
    fn quadric_contains_every_line() {
        let base = build_base().unwrap();
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        let q = conic_to_quadric(&a, &base).unwrap();
        assert_eq!(q.solution_dim, 1);
        assert!(q.cross_check_agrees);
        // independent check: Q vanishes on both spanners and their polar pairing
        let (u, w) = a.line_spanners().unwrap();
        let qp = q.quadric.to_poly();
        for t in -3..=3 {
            let uu: Vec<Rational> = u.iter().map(|f| f.eval(&rat(1), &rat(t))).collect();
            let ww: Vec<Rational> = w.iter().map(|f| f.eval(&rat(1), &rat(t))).collect();
            for lam in -2..=2 {
                let p: Vec<Rational> = uu.iter().zip(&ww).map(|(x, y)| x * rat(lam) + y).collect();
                assert!(qp.eval(&p).is_zero());
            }
        }
    }
}
