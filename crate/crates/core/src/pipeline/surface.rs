use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::conic::ConicA;
use super::fp;
use super::sextic::{NikulinSystem, SexticA, Threefold};
use crate::error::{ForgeError, Result};
use crate::exactmath::poly::{monomials_of_degree, resultant_in};
use crate::exactmath::rational::{is_rational_square, mod_prime, to_text};
use crate::exactmath::symmetric::symmetric_reduce;
use crate::exactmath::{frac, is_squarefree, rat, BinaryForm, Mat, MultiPoly, Rational, UniPoly};
use crate::grassmann::{bisecant_at, homogenize_elementary, pencil_join, PlueckerVector, PAIRS};
use crate::projgeom::{jacobian_on_curve, rnc_param};

/// RNG stream for surface coefficients.
pub const SURFACE_STREAM: u64 = 1;
/// RNG stream for the sampled smoothness test.
pub const SAMPLE_STREAM: u64 = 3;
/// Primes tried for the sampled smoothness test.
pub const SAMPLE_PRIMES: [u64; 3] = [10_007, 10_009, 10_037];
/// Number of points of the surface sampled over the prime field.
pub const SAMPLE_POINTS: usize = 24;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SampledSmoothness {
    pub prime: u64,
    pub lines: usize,
    pub points: usize,
    pub singular_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceReport {
    pub independent_of_pluecker: bool,
    pub jacobian_rank_on_sextic: usize,
    pub drop_locus_degree: usize,
    /// Smoothness off the sextic is only sampled over a prime field.
    pub sampled: SampledSmoothness,
}

#[derive(Clone, Debug)]
pub struct SurfaceS {
    /// The chosen quadric through the sextic, in span coordinates.
    pub g: MultiPoly,
    pub coefficients: Vec<i64>,
    /// The restricted Pluecker relations followed by `g`.
    pub gens: Vec<MultiPoly>,
    pub report: SurfaceReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SurfaceAttempt {
    pub coefficients: Vec<i64>,
    pub rejected: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SurfaceChoice {
    pub surface: Option<SurfaceS>,
    pub attempts: Vec<SurfaceAttempt>,
}

/// Validates a quadric `g` through the sextic as the last equation of the surface.
///
/// `coefficients` only documents how `g` was formed.
pub fn validate_surface(g: MultiPoly, coefficients: Vec<i64>, t: &Threefold, x: &SexticA, seed: u64) -> Result<SurfaceS> {
    let rnc = rnc_param(6);
    if g.nvars() != 7 || g.homogeneous_degree() != Some(2) {
        return Err(ForgeError::Dimension("surface equation must be a quadric on the span".into()));
    }
    if !rnc.compose(&g)?.is_zero() {
        return Err(ForgeError::NotGeneric("quadric does not contain the sextic".into()));
    }
    let mut gens = t.quadrics.clone();
    gens.push(g.clone());
    let monos = monomials_of_degree(7, 2);
    let independent = Mat::from_rows(gens.iter().map(|q| q.coefficient_vector(&monos)).collect()).rank() == 6;
    if !independent {
        return Err(ForgeError::NotGeneric("quadric lies in the span of the Pluecker relations".into()));
    }
    let j = jacobian_on_curve(&gens, &rnc)?;
    if j.generic_rank != 4 {
        return Err(ForgeError::NotGeneric(format!("Jacobian rank {} along the sextic", j.generic_rank)));
    }
    if j.drop_locus.degree() != 0 {
        return Err(ForgeError::NotGeneric(format!(
            "surface is singular at {} points of the sextic",
            j.drop_locus.degree()
        )));
    }
    let sampled = sample_smoothness(&gens, x, seed)?;
    if sampled.singular_points > 0 {
        return Err(ForgeError::NotGeneric(format!(
            "{} sampled points are singular mod {}",
            sampled.singular_points, sampled.prime
        )));
    }
    Ok(SurfaceS {
        g,
        coefficients,
        gens,
        report: SurfaceReport {
            independent_of_pluecker: independent,
            jacobian_rank_on_sextic: j.generic_rank,
            drop_locus_degree: j.drop_locus.degree(),
            sampled,
        },
    })
}

/// Draws `g = sum c_k g_k` with `c_k` in `[-2, 2]` over the Nikulin basis until it
/// passes [`validate_surface`], making at most `retries + 1` attempts.
pub fn pick_surface(n: &NikulinSystem, t: &Threefold, x: &SexticA, seed: u64, retries: u32) -> SurfaceChoice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SURFACE_STREAM);
    let mut attempts = Vec::new();
    for _ in 0..=retries {
        let c: Vec<i64> = loop {
            let c: Vec<i64> = (0..n.basis.len()).map(|_| rng.random_range(-2..=2)).collect();
            if c.iter().any(|&v| v != 0) {
                break c;
            }
        };
        let g = n
            .basis
            .iter()
            .zip(&c)
            .fold(MultiPoly::zero(7), |acc, (b, &w)| acc + b.scale(&rat(w)));
        match validate_surface(g, c.clone(), t, x, seed) {
            Ok(s) => {
                attempts.push(SurfaceAttempt {
                    coefficients: c,
                    rejected: None,
                });
                return SurfaceChoice {
                    surface: Some(s),
                    attempts,
                };
            }
            Err(e) => attempts.push(SurfaceAttempt {
                coefficients: c,
                rejected: Some(e.to_string()),
            }),
        }
    }
    SurfaceChoice { surface: None, attempts }
}

struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    fn new(f: &MultiPoly, p: u64) -> Option<Self> {
        let terms = f
            .terms()
            .map(|(m, c)| mod_prime(c, p).map(|v| (m.0.clone(), v)))
            .collect::<Option<Vec<_>>>()?;
        Some(ModPoly { terms })
    }

    fn eval(&self, x: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (m, c)| {
            let mut v = *c;
            for (xi, &e) in x.iter().zip(m) {
                for _ in 0..e {
                    v = v * xi % p;
                }
            }
            (acc + v) % p
        })
    }
}

/// Points of the surface over `F_p`, found on the curves `tau -> line through x0 + tau x1`
/// of the threefold, with the Jacobian rank tested at each.
pub fn sample_smoothness(gens: &[MultiPoly], x: &SexticA, seed: u64) -> Result<SampledSmoothness> {
    'primes: for &p in &SAMPLE_PRIMES {
        let Some(forms) = x
            .net
            .forms()
            .iter()
            .map(|w| (0..5).map(|i| (0..5).map(|j| mod_prime(&w[(i, j)], p)).collect::<Option<Vec<_>>>()).collect())
            .collect::<Option<Vec<Vec<Vec<u64>>>>>()
        else {
            continue;
        };
        let Some(vmod) = (0..10)
            .map(|j| (0..7).map(|k| mod_prime(&x.v[k][j], p)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<Vec<u64>>>>()
        else {
            continue;
        };
        let vt: Vec<Vec<u64>> = (0..7).map(|k| (0..10).map(|j| vmod[j][k]).collect()).collect();
        let pivots = fp::echelon(&mut vt.clone(), p);
        if pivots.len() != 7 {
            continue;
        }
        let block: Vec<Vec<u64>> = pivots.iter().map(|&i| vmod[i].clone()).collect();
        let Some(inv) = fp::inverse(&block, p) else { continue };
        let mut polys = Vec::new();
        let mut grads = Vec::new();
        for g in gens {
            let Some(mp) = ModPoly::new(g, p) else { continue 'primes };
            let Some(dg) = g.gradient().iter().map(|d| ModPoly::new(d, p)).collect::<Option<Vec<_>>>() else {
                continue 'primes;
            };
            polys.push(mp);
            grads.push(dg);
        }
        let last = polys.len() - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(SAMPLE_STREAM);
        let mut out = SampledSmoothness {
            prime: p,
            lines: 0,
            points: 0,
            singular_points: 0,
        };
        while out.points < SAMPLE_POINTS && out.lines < 400 {
            out.lines += 1;
            let x0: Vec<u64> = (0..5).map(|_| rng.random_range(0..p)).collect();
            let x1: Vec<u64> = (0..5).map(|_| rng.random_range(0..p)).collect();
            for tau in 0..p {
                let pt: Vec<u64> = x0.iter().zip(&x1).map(|(a, b)| (a + tau * b) % p).collect();
                let rows: Vec<Vec<u64>> = forms.iter().map(|w| fp::mat_vec(w, &pt, p)).collect();
                let ker = fp::kernel(&rows, 5, p);
                if ker.len() != 2 {
                    continue;
                }
                let Some(plk) = ker.iter().map(|y| wedge(&pt, y, p)).find(|w| w.iter().any(|&c| c != 0)) else {
                    continue;
                };
                let rhs: Vec<u64> = pivots.iter().map(|&i| plk[i]).collect();
                let y = fp::mat_vec(&inv, &rhs, p);
                if fp::mat_vec(&vmod, &y, p) != plk {
                    return Err(ForgeError::NotGeneric("sampled line leaves the span".into()));
                }
                if polys[last].eval(&y, p) != 0 || polys.iter().any(|q| q.eval(&y, p) != 0) {
                    continue;
                }
                let jac: Vec<Vec<u64>> = grads.iter().map(|g| g.iter().map(|d| d.eval(&y, p)).collect()).collect();
                out.points += 1;
                if fp::rank(&jac, p) != 4 {
                    out.singular_points += 1;
                }
                if out.points >= SAMPLE_POINTS {
                    break;
                }
            }
        }
        return Ok(out);
    }
    Err(ForgeError::NoGoodPrime)
}

fn wedge(x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    PAIRS.iter().map(|&(i, j)| (x[i] * y[j] + p * p - x[j] * y[i]) % p).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalLineCheck {
    pub root: Vec<String>,
    pub lies_on_surface: bool,
    pub meets_at_root: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EightLinesReport {
    pub branch_form: String,
    pub lines_form: Vec<String>,
    pub degree: usize,
    pub division_exact: bool,
    pub elementary_cross_check: bool,
    pub squarefree: bool,
    pub coprime_to_branch: bool,
    /// Shift `(s0, s1) -> (s0 + c s1, s1)` making the leading coefficient nonzero.
    pub elimination_shift: i64,
    pub disjointness_resultant_digits: usize,
    pub disjointness_resultant_sha256: String,
    pub disjoint: bool,
    pub rational_line_checks: Vec<RationalLineCheck>,
}

impl EightLinesReport {
    pub fn passed(&self) -> bool {
        self.degree == 8
            && self.division_exact
            && self.elementary_cross_check
            && self.squarefree
            && self.coprime_to_branch
            && self.disjoint
            && self.rational_line_checks.iter().all(|c| c.lies_on_surface && c.meets_at_root)
    }
}

#[derive(Clone, Debug)]
pub struct EightLines {
    /// Binary octic in the parameter of the quartic; its roots are the line centers.
    pub beta: BinaryForm,
    pub report: EightLinesReport,
}

/// `kappa_k(s)`: the coefficient of `t^k` in `a(t) s0^2 + b(t) s0 s1 + c(t) s1^2`.
fn kappas(a: &ConicA) -> [BinaryForm; 3] {
    std::array::from_fn(|k| {
        let f = a.forms();
        BinaryForm::new(vec![f[0].coeff(k).clone(), f[1].coeff(k).clone(), f[2].coeff(k).clone()])
    })
}

/// Polar form `G(nu(t1), nu(t2))` on the normal sextic `nu(t) = (1, t, ..., t^6)`.
fn polar_on_sextic(g: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(2);
    for (m, c) in g.terms() {
        let idx: Vec<u32> = (0..7).flat_map(|i| std::iter::repeat_n(i as u32, m.0[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            out.add_term(crate::exactmath::Monomial(vec![i, i]), c.clone());
        } else {
            let half = c * frac(1, 2);
            out.add_term(crate::exactmath::Monomial(vec![i, j]), half.clone());
            out.add_term(crate::exactmath::Monomial(vec![j, i]), half);
        }
    }
    out
}

fn uni_in(p: &UniPoly, nvars: usize, var: usize) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        p.coeffs().iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            (e, c.clone())
        }),
    )
}

/// The lines of the surface through points of the quartic: centers `o` are the roots of
/// an octic `beta`, obtained from the polar condition on the two points of the sextic
/// over `o` after removing the branch quartic.
pub fn eight_lines(s: &SurfaceS, a: &ConicA) -> Result<EightLines> {
    let k = kappas(a);
    let km: Vec<MultiPoly> = k.iter().map(BinaryForm::to_multipoly).collect();
    let r = symmetric_reduce(&polar_on_sextic(&s.g))?;
    let f = homogenize_elementary(&r, 6, &km[2], &km[1], &km[0])
        .ok_or_else(|| ForgeError::Dimension("polar form exceeds degree 6 in a root".into()))?;
    if f.is_zero() {
        return Err(ForgeError::NotGeneric("every line of the family lies on the surface".into()));
    }
    let f = BinaryForm::from_multipoly(&f, 12)?;
    let branch = k[1].mul(&k[1]).sub(&k[2].mul(&k[0]).scale(&rat(4)));
    let (beta, rem) = f.div_rem(&branch)?;
    let division_exact = rem.is_zero();
    let e1 = MultiPoly::var(2, 0);
    let e2 = MultiPoly::var(2, 1);
    let disc_e = &(&e1 * &e1) - &e2.scale(&rat(4));
    let elementary_cross_check = r
        .div_exact(&disc_e)
        .ok()
        .and_then(|rp| homogenize_elementary(&rp, 4, &km[2], &km[1], &km[0]))
        .and_then(|b| BinaryForm::from_multipoly(&b, 8).ok())
        .is_some_and(|b| b == beta);
    let squarefree = !beta.is_zero() && is_squarefree(&beta)?;
    let coprime_to_branch = beta.gcd(&branch).degree() == 0;
    let (shift, resultant) = disjointness_resultant(&beta, &k)?;
    let digits = resultant.numer().to_string().trim_start_matches('-').len();
    let digest = hex::encode(Sha256::digest(to_text(&resultant).as_bytes()));
    let rational_line_checks = rational_roots_homogeneous(&beta)
        .into_iter()
        .filter_map(|root| check_rational_line(&root, a, s).transpose())
        .collect::<Result<Vec<_>>>()?;
    let report = EightLinesReport {
        branch_form: format!("{branch:?}"),
        lines_form: beta.coeffs().iter().map(to_text).collect(),
        degree: beta.degree(),
        division_exact,
        elementary_cross_check,
        squarefree,
        coprime_to_branch,
        elimination_shift: shift,
        disjointness_resultant_digits: digits,
        disjointness_resultant_sha256: digest,
        disjoint: !resultant.is_zero(),
        rational_line_checks,
    };
    Ok(EightLines { beta, report })
}

/// `Res_u(beta(u), Res_u'(beta~(u, u'), Psi(u, u')))`, where `Psi` is the resultant in
/// `t` of the conditions `o(u) ∈ V(z(t))`, `o(u') ∈ V(z(t))` divided by `(u - u')^2`,
/// and `beta~ = (beta(u') - beta(u)) / (u' - u)`. It vanishes iff some center lies in
/// the plane of another.
fn disjointness_resultant(beta: &BinaryForm, k: &[BinaryForm; 3]) -> Result<(i64, Rational)> {
    let one = Rational::one();
    let zero = Rational::zero();
    let shift = (0..)
        .find(|&c| !beta.eval(&rat(c), &one).is_zero())
        .expect("a nonzero form has a non-root");
    let c = rat(shift);
    let sub = [&one, &c, &zero, &one];
    let b = beta.linear_substitute(sub).dehomogenize();
    let kk: Vec<UniPoly> = k.iter().map(|f| f.linear_substitute(sub).dehomogenize()).collect();
    // variables (u, u', t)
    let t = MultiPoly::var(3, 2);
    let phi = |var: usize| {
        kk.iter()
            .enumerate()
            .fold(MultiPoly::zero(3), |acc, (i, q)| acc + &uni_in(q, 3, var) * &t.pow(i as u32))
    };
    let res_t = resultant_in(&phi(0), &phi(1), 2, 2, 2)?;
    let diag = &MultiPoly::var(3, 0) - &MultiPoly::var(3, 1);
    let psi = res_t.div_exact(&(&diag * &diag))?;
    let bu = uni_in(&b, 3, 0);
    let bv = uni_in(&b, 3, 1);
    let bt = (&bv - &bu).div_exact(&(-&diag))?;
    let dpsi = psi.degree_in(1).unwrap_or(0) as usize;
    let theta = resultant_in(&bt, &psi, 1, 7, dpsi)?;
    let dtheta = theta.degree_in(0).unwrap_or(0) as usize;
    let r = resultant_in(&bu, &theta, 0, 8, dtheta)?;
    let value = r
        .as_constant()
        .ok_or_else(|| ForgeError::Dimension("elimination left a variable".into()))?;
    Ok((shift, value))
}

/// Rational roots `(s0 : s1)` of a binary form.
fn rational_roots_homogeneous(f: &BinaryForm) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = f
        .dehomogenize()
        .rational_roots()
        .into_iter()
        .map(|u| (Rational::one(), u))
        .collect();
    if f.coeff(0).is_zero() {
        out.push((Rational::zero(), Rational::one()));
    }
    out
}

/// When both points of the sextic over a rational center are rational, checks the line directly.
fn check_rational_line(root: &(Rational, Rational), a: &ConicA, s: &SurfaceS) -> Result<Option<RationalLineCheck>> {
    let (s0, s1) = root;
    let k = kappas(a);
    let (c0, c1, c2) = (k[0].eval(s0, s1), k[1].eval(s0, s1), k[2].eval(s0, s1));
    // roots (t0 : t1) of c0 t0^2 + c1 t0 t1 + c2 t1^2
    let mut params: Vec<(Rational, Rational)> = Vec::new();
    if c2.is_zero() {
        if c1.is_zero() {
            return Ok(None);
        }
        params.push((Rational::one(), -&c0 / &c1));
        params.push((Rational::zero(), Rational::one()));
    } else {
        let disc = &c1 * &c1 - rat(4) * &c0 * &c2;
        let Some(sq) = is_rational_square(&disc) else { return Ok(None) };
        if sq.is_zero() {
            return Ok(None);
        }
        for sign in [1, -1] {
            params.push((Rational::one(), (-&c1 + rat(sign) * &sq) / (rat(2) * &c2)));
        }
    }
    let rnc = rnc_param(6);
    let nu: Vec<Vec<Rational>> = params.iter().map(|(p, q)| rnc.eval_vector(p, q)).collect();
    let lies_on_surface = (1..=3).all(|lam| {
        let p: Vec<Rational> = nu[0].iter().zip(&nu[1]).map(|(x, y)| x + rat(lam) * y).collect();
        s.g.eval(&p).is_zero()
    });
    let lines: Vec<PlueckerVector> = params
        .iter()
        .map(|(p, q)| {
            let z: Vec<Rational> = a.forms().iter().map(|f| f.eval(p, q)).collect();
            PlueckerVector::new(bisecant_at(&z))
        })
        .collect::<Result<_>>()?;
    let join = pencil_join(&lines[0], &lines[1])?;
    let center = rnc_param(4).eval(s0, s1)?;
    Ok(Some(RationalLineCheck {
        root: vec![to_text(s0), to_text(s1)],
        lies_on_surface,
        meets_at_root: join.center.as_ref() == Some(&center),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{build_base, build_sextic, build_threefold, nikulin_system};
    use num_traits::ToPrimitive;

    struct Chain {
        a: ConicA,
        x: SexticA,
        t: Threefold,
        n: NikulinSystem,
    }

    fn chain() -> Chain {
        let base = build_base().unwrap();
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        let x = build_sextic(&a, &base).unwrap();
        let t = build_threefold(&x, 1).unwrap();
        let n = nikulin_system(&t).unwrap();
        Chain { a, x, t, n }
    }

    fn f(q: &Rational) -> f64 {
        q.to_f64().unwrap()
    }

    #[test]
    fn surface_and_lines() {
        let c = chain();
        let choice = pick_surface(&c.n, &c.t, &c.x, 1, 8);
        let s = choice.surface.expect("a surface within the budget");
        assert_eq!(s.report.sampled.singular_points, 0);
        assert_eq!(s.report.sampled.points, SAMPLE_POINTS);
        let lines = eight_lines(&s, &c.a).unwrap();
        assert!(lines.report.passed(), "{:?}", lines.report);

        // float oracle: F(s) = kappa2^6 G(nu(t1), nu(t2)) at the two roots of Phi(s, .)
        let k = kappas(&c.a);
        let branch = k[1].mul(&k[1]).sub(&k[2].mul(&k[0]).scale(&rat(4)));
        let gmat: Vec<Vec<f64>> = {
            let mut m = vec![vec![0.0; 7]; 7];
            for (mono, coef) in s.g.terms() {
                let idx: Vec<usize> = (0..7).flat_map(|i| std::iter::repeat_n(i, mono.0[i] as usize)).collect();
                let v = f(coef);
                if idx[0] == idx[1] {
                    m[idx[0]][idx[0]] = v;
                } else {
                    m[idx[0]][idx[1]] = v / 2.0;
                    m[idx[1]][idx[0]] = v / 2.0;
                }
            }
            m
        };
        let mut tested = 0;
        for num in -12..=12 {
            let su = rat(num) / rat(5);
            let (c0, c1, c2) = (f(&k[0].eval(&rat(1), &su)), f(&k[1].eval(&rat(1), &su)), f(&k[2].eval(&rat(1), &su)));
            let disc = c1 * c1 - 4.0 * c0 * c2;
            if disc <= 1e-6 || c2.abs() < 1e-6 {
                continue;
            }
            let t1 = (-c1 + disc.sqrt()) / (2.0 * c2);
            let t2 = (-c1 - disc.sqrt()) / (2.0 * c2);
            let bil: f64 = (0..7)
                .flat_map(|i| (0..7).map(move |j| (i, j)))
                .map(|(i, j)| gmat[i][j] * t1.powi(i as i32) * t2.powi(j as i32))
                .sum();
            let expect = c2.powi(6) * bil;
            let got = f(&lines.beta.eval(&rat(1), &su)) * f(&branch.eval(&rat(1), &su));
            assert!((expect - got).abs() <= 1e-7 * (1.0 + expect.abs()), "{expect} vs {got}");
            tested += 1;
        }
        assert!(tested >= 5);
    }

    #[test]
    fn rejects_pluecker_relation() {
        let c = chain();
        let e = validate_surface(c.t.quadrics[0].clone(), vec![], &c.t, &c.x, 1).unwrap_err();
        assert!(e.to_string().contains("span of the Pluecker"));
    }

    #[test]
    fn rejects_product_of_linear_forms() {
        let c = chain();
        let g = &MultiPoly::var(7, 0) * &MultiPoly::var(7, 6);
        let e = validate_surface(g, vec![], &c.t, &c.x, 1).unwrap_err();
        assert!(e.to_string().contains("does not contain"));
    }

    #[test]
    fn rejects_surface_singular_on_sextic() {
        // choose c with grad G(e0) in the span of the Pluecker gradients at e0 = nu(0)
        let c = chain();
        let e0: Vec<Rational> = (0..7).map(|i| rat(i64::from(i == 0))).collect();
        let grad = |q: &MultiPoly| -> Vec<Rational> { q.gradient().iter().map(|d| d.eval(&e0)).collect() };
        let cols: Vec<Vec<Rational>> = c
            .n
            .basis
            .iter()
            .map(grad)
            .chain(c.t.quadrics.iter().map(|q| grad(q).into_iter().map(|v| -v).collect()))
            .collect();
        let rows: Vec<Vec<Rational>> = (0..7).map(|r| cols.iter().map(|v| v[r].clone()).collect()).collect();
        let ker = Mat::from_rows(rows).rref().kernel_basis;
        let coeffs = ker.iter().find(|k| k[..10].iter().any(|v| !v.is_zero())).expect("codimension two condition");
        let g = c
            .n
            .basis
            .iter()
            .zip(&coeffs[..10])
            .fold(MultiPoly::zero(7), |acc, (b, w)| acc + b.scale(w));
        let e = validate_surface(g, vec![], &c.t, &c.x, 1).unwrap_err();
        assert!(e.to_string().contains("singular at"), "{e}");
    }
}
