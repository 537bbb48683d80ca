use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::base::BaseGeometry;
use super::conic::ConicA;
use crate::error::{ForgeError, Result};
use crate::exactmath::binary::gcd_all;
use crate::exactmath::poly::monomials_of_degree;
use crate::exactmath::rational::{from_text, to_text};
use crate::exactmath::{rat, BinaryForm, Mat, MultiPoly, Rational};
use crate::grassmann::{
    net_smoothness, pluecker_relations, second_compound, Compound10, HyperplaneNet, NetSmoothness, Quadric5, PAIRS,
};
use crate::projgeom::{
    fit_hilbert_polynomial, hilbert_function, hilbert_function_certified, jacobian_on_curve, rnc_param, HilbertFit,
    ParamCurve,
};

/// RNG stream used for rational points of the threefold.
pub const POINT_STREAM: u64 = 2;

/// The sextic curve in G(1,4), with coordinates `y_0..y_6` on its span.
///
/// A point `sum_k y_k v_k` of the span has coordinates `y`, where `v_k` is the
/// coefficient vector of `t0^(6-k) t1^k`; in these coordinates the sextic is the
/// rational normal curve `(t0^6, ..., t1^6)`.
#[derive(Clone, Debug)]
pub struct SexticA {
    pub components: Vec<BinaryForm>,
    pub v: Vec<Vec<Rational>>,
    pub net: HyperplaneNet,
    pivots: Vec<usize>,
    inverse: Mat,
    pub report: SexticReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SexticReport {
    pub degree: usize,
    pub content_free: bool,
    pub in_grassmannian: bool,
    pub sample_parameters: usize,
    pub sample_span_rank: usize,
    pub coefficient_rank: usize,
    pub net_annihilates: bool,
    pub hyperplanes: Vec<Vec<String>>,
}

impl SexticReport {
    pub fn passed(&self) -> bool {
        self.degree == 6
            && self.content_free
            && self.in_grassmannian
            && self.sample_span_rank == 7
            && self.coefficient_rank == 7
            && self.net_annihilates
    }
}

pub fn build_sextic(a: &ConicA, base: &BaseGeometry) -> Result<SexticA> {
    let z = a.as_multipolys();
    let components: Vec<BinaryForm> = base
        .phi
        .iter()
        .map(|f| BinaryForm::from_multipoly(&f.substitute(&z), 6))
        .collect::<Result<_>>()?;
    let content_free = gcd_all(&components).is_some_and(|g| g.degree() == 0);
    let curve = ParamCurve::new_unchecked(components.clone())?;
    let in_grassmannian = pluecker_relations()
        .iter()
        .map(|r| curve.compose(r))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(BinaryForm::is_zero);
    let samples: Vec<Vec<Rational>> = (0..13).map(|t| curve.eval_vector(&rat(1), &rat(t))).collect();
    let sample_span_rank = Mat::from_rows(samples).rank();
    let v: Vec<Vec<Rational>> = (0..=6)
        .map(|k| components.iter().map(|c| c.coeff(k).clone()).collect())
        .collect();
    let vt = Mat::from_rows(v.clone());
    let r = vt.rref();
    let coefficient_rank = r.rank;
    let annihilator = crate::projgeom::Subspace::from_vectors(10, &v).annihilator();
    let net = HyperplaneNet::from_hyperplanes(&annihilator)?;
    let net_annihilates = v.iter().all(|x| net.annihilates(x));
    let report = SexticReport {
        degree: 6,
        content_free,
        in_grassmannian,
        sample_parameters: 13,
        sample_span_rank,
        coefficient_rank,
        net_annihilates,
        hyperplanes: net.hyperplanes().iter().map(|h| h.iter().map(to_text).collect()).collect(),
    };
    if !report.passed() {
        return Err(ForgeError::NotGeneric(format!("sextic check failed: {report:?}")));
    }
    let pivots = r.pivots.clone();
    let block = Mat::from_rows(
        (0..7)
            .map(|j| pivots.iter().map(|&p| v[j][p].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
    .transpose();
    let (_, inverse) = block.rref_with_transform();
    Ok(SexticA {
        components,
        v,
        net,
        pivots,
        inverse,
        report,
    })
}

impl SexticA {
    pub fn curve(&self) -> ParamCurve {
        ParamCurve::new_unchecked(self.components.clone()).expect("ten sextic components")
    }

    /// `sum_k y_k v_k`.
    pub fn to_ambient(&self, y: &[Rational]) -> Vec<Rational> {
        (0..10)
            .map(|j| y.iter().zip(&self.v).fold(Rational::zero(), |acc, (c, vk)| acc + c * &vk[j]))
            .collect()
    }

    /// Coordinates of `p` on the span, or `None` if `p` lies outside it.
    pub fn coordinates(&self, p: &[Rational]) -> Option<Vec<Rational>> {
        let rhs: Vec<Rational> = self.pivots.iter().map(|&i| p[i].clone()).collect();
        let y = self.inverse.mul_vec(&rhs);
        (self.to_ambient(&y) == p).then_some(y)
    }

    /// Pulls a form on P^9 back to the span.
    pub fn restrict(&self, f: &MultiPoly) -> MultiPoly {
        let lin: Vec<MultiPoly> = (0..10)
            .map(|j| {
                let coeffs: Vec<Rational> = self.v.iter().map(|vk| vk[j].clone()).collect();
                MultiPoly::linear(&coeffs)
            })
            .collect();
        f.substitute(&lin)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertValue {
    pub degree: u32,
    pub value: usize,
    pub method: &'static str,
    pub prime: Option<u64>,
    pub ideal_bounds: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreefoldReport {
    pub smoothness: NetSmoothness,
    pub hilbert: Vec<HilbertValue>,
    pub fit: HilbertFit,
    pub dimension: usize,
    pub degree: String,
    pub rational_points: usize,
    pub jacobian_points: usize,
    pub jacobian_ranks: Vec<usize>,
}

impl ThreefoldReport {
    pub fn passed(&self) -> bool {
        self.smoothness.smooth
            && self.fit.check_passed
            && self.dimension == 3
            && from_text(&self.degree).is_ok_and(|d| d == rat(5))
            && self.jacobian_ranks.iter().all(|&r| r == 3)
    }
}

#[derive(Clone, Debug)]
pub struct Threefold {
    /// The Pluecker relations restricted to the span.
    pub quadrics: Vec<MultiPoly>,
    /// Rational points, in span coordinates.
    pub points: Vec<Vec<Rational>>,
    pub report: ThreefoldReport,
}

/// Rational points of the linear section, from lines through random points of P^4.
pub fn threefold_points(x: &SexticA, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(POINT_STREAM);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count {
        tries += 1;
        let p: Vec<Rational> = (0..5).map(|_| rat(rng.random_range(-9..=9))).collect();
        let Some(line) = x.net.line_through(&p) else { continue };
        let Some(y) = x.coordinates(line.coords()) else { continue };
        let key: Vec<String> = line.to_point().coords().iter().map(to_text).collect();
        if seen.insert(key) {
            out.push(y);
        }
    }
    out
}

/// Maximal degree with an exact rational computation; higher degrees are certified mod p.
pub const EXACT_HF_DEGREE: u32 = 3;

pub fn build_threefold(x: &SexticA, seed: u64) -> Result<Threefold> {
    let quadrics: Vec<MultiPoly> = pluecker_relations().iter().map(|r| x.restrict(r)).collect();
    let smoothness = net_smoothness(&x.net)?;
    let points = threefold_points(x, seed, 500);
    let mut hilbert = Vec::new();
    for d in 1..=7u32 {
        if d <= EXACT_HF_DEGREE {
            hilbert.push(HilbertValue {
                degree: d,
                value: hilbert_function(7, &quadrics, d)?,
                method: "exact",
                prime: None,
                ideal_bounds: None,
            });
        } else {
            let c = hilbert_function_certified(7, &quadrics, d, &points)?;
            let value = c.exact_quotient().ok_or_else(|| {
                ForgeError::NotGeneric(format!(
                    "degree {d} bounds do not meet: {} <= dim I_d <= {}",
                    c.ideal_lower, c.ideal_upper
                ))
            })?;
            hilbert.push(HilbertValue {
                degree: d,
                value,
                method: "certified mod p",
                prime: Some(c.prime),
                ideal_bounds: Some((c.ideal_lower, c.ideal_upper)),
            });
        }
    }
    let samples: Vec<(u32, usize)> = hilbert[2..6].iter().map(|h| (h.degree, h.value)).collect();
    let fit = fit_hilbert_polynomial(&samples, (7, hilbert[6].value))?;
    let grads: Vec<Vec<MultiPoly>> = quadrics.iter().map(MultiPoly::gradient).collect();
    let jacobian_ranks: Vec<usize> = points
        .iter()
        .take(24)
        .map(|y| Mat::from_rows(grads.iter().map(|g| g.iter().map(|d| d.eval(y)).collect()).collect()).rank())
        .collect();
    let report = ThreefoldReport {
        smoothness,
        dimension: fit.dimension,
        degree: fit.degree.clone(),
        hilbert,
        fit,
        rational_points: points.len(),
        jacobian_points: jacobian_ranks.len(),
        jacobian_ranks,
    };
    Ok(Threefold {
        quadrics,
        points,
        report,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrollReport {
    pub quartic_on_cubic: bool,
    pub quartic_on_quadric: bool,
    pub cubic_gradient_vanishes: bool,
    pub jacobian_generic_rank: usize,
}

impl ScrollReport {
    pub fn passed(&self) -> bool {
        self.quartic_on_cubic && self.quartic_on_quadric && self.cubic_gradient_vanishes && self.jacobian_generic_rank <= 1
    }
}

/// The scroll `V ∩ Q` is singular along the quartic: the cubic is, and `V, Q` have
/// Jacobian rank at most one there.
pub fn build_scroll(q: &Quadric5, base: &BaseGeometry) -> Result<ScrollReport> {
    let qp = q.to_poly();
    let quartic_on_cubic = base.b.compose(&base.v)?.is_zero();
    let quartic_on_quadric = base.b.compose(&qp)?.is_zero();
    let cubic_gradient_vanishes = base
        .v
        .gradient()
        .iter()
        .map(|g| base.b.compose(g))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(BinaryForm::is_zero);
    let j = jacobian_on_curve(&[base.v.clone(), qp], &base.b)?;
    Ok(ScrollReport {
        quartic_on_cubic,
        quartic_on_quadric,
        cubic_gradient_vanishes,
        jacobian_generic_rank: j.generic_rank,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FakeK3Report {
    pub vanishes_on_sextic: bool,
    /// `<C A(t), tau>` vanishes for every tangent direction `tau` of G(1,4) along the sextic.
    pub tangential_gradient_zero: bool,
    pub tangent_pairings_checked: usize,
    pub pluecker_jacobian_rank: usize,
    pub with_w_jacobian_rank: usize,
    pub independent_of_pluecker: bool,
    /// Twice the degree of the threefold.
    pub degree: Option<i64>,
}

impl FakeK3Report {
    pub fn passed(&self) -> bool {
        self.vanishes_on_sextic
            && self.tangential_gradient_zero
            && self.pluecker_jacobian_rank == 3
            && self.with_w_jacobian_rank == 3
            && self.independent_of_pluecker
            && self.degree == Some(10)
    }
}

#[derive(Clone, Debug)]
pub struct FakeK3 {
    pub compound: Compound10,
    /// The compound quadric restricted to the span.
    pub w: MultiPoly,
    pub report: FakeK3Report,
}

fn coefficient_rank(polys: &[MultiPoly], nvars: usize) -> usize {
    let monos = monomials_of_degree(nvars, 2);
    Mat::from_rows(polys.iter().map(|p| p.coefficient_vector(&monos)).collect()).rank()
}

/// The surface cut on the threefold by the quadric complex of lines meeting `Q`
/// tangentially, i.e. `W = ∧^2 Q`.
pub fn build_fake_k3(q: &Quadric5, a: &ConicA, x: &SexticA, t: &Threefold) -> Result<FakeK3> {
    let compound = second_compound(q);
    let w_full = compound.to_poly();
    let curve = x.curve();
    let vanishes_on_sextic = curve.compose(&w_full)?.is_zero();
    let c = compound.matrix();
    let ca: Vec<BinaryForm> = (0..10)
        .map(|i| {
            (0..10).fold(BinaryForm::zero(6), |acc, j| acc.add(&x.components[j].scale(&c[(i, j)])))
        })
        .collect();
    let (u, w) = a.line_spanners()?;
    let mut tangential_gradient_zero = true;
    let mut checked = 0;
    for spanner in [&u, &w] {
        for k in 0..5 {
            // pairing with spanner ∧ e_k
            let mut acc = BinaryForm::zero(12);
            for (idx, &(i, j)) in PAIRS.iter().enumerate() {
                if j == k {
                    acc = acc.add(&ca[idx].mul(&spanner[i]));
                }
                if i == k {
                    acc = acc.sub(&ca[idx].mul(&spanner[j]));
                }
            }
            checked += 1;
            tangential_gradient_zero &= acc.is_zero();
        }
    }
    let w_res = x.restrict(&w_full);
    let rnc = rnc_param(6);
    let pluecker_jacobian_rank = jacobian_on_curve(&t.quadrics, &rnc)?.generic_rank;
    let mut with_w = t.quadrics.clone();
    with_w.push(w_res.clone());
    let with_w_jacobian_rank = jacobian_on_curve(&with_w, &rnc)?.generic_rank;
    let independent_of_pluecker = coefficient_rank(&with_w, 7) == 6;
    let degree = from_text(&t.report.fit.degree)
        .ok()
        .filter(|d| d.is_integer())
        .and_then(|d| i64::try_from(d.to_integer() * 2).ok());
    Ok(FakeK3 {
        compound,
        w: w_res,
        report: FakeK3Report {
            vanishes_on_sextic,
            tangential_gradient_zero,
            tangent_pairings_checked: checked,
            pluecker_jacobian_rank,
            with_w_jacobian_rank,
            independent_of_pluecker,
            degree,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NikulinReport {
    pub evaluation_rank: usize,
    pub kernel_dim: usize,
    pub pluecker_in_kernel: bool,
    pub quotient_dim: usize,
    pub projective_dim: usize,
}

impl NikulinReport {
    pub fn passed(&self) -> bool {
        self.pluecker_in_kernel && self.kernel_dim == 15 && self.quotient_dim == 10
    }
}

/// Quadrics through the sextic modulo those through the threefold.
#[derive(Clone, Debug)]
pub struct NikulinSystem {
    /// Representatives completing the restricted Pluecker relations to a basis of `I_A(2)`.
    pub basis: Vec<MultiPoly>,
    pub report: NikulinReport,
}

pub fn nikulin_system(t: &Threefold) -> Result<NikulinSystem> {
    let monos = monomials_of_degree(7, 2);
    // y_i y_j restricts to t^(i+j) on the normal sextic
    let mut eval = Mat::zeros(13, monos.len());
    for (c, m) in monos.iter().enumerate() {
        let deg: u32 = m.0.iter().enumerate().map(|(i, &e)| i as u32 * e).sum();
        eval[(deg as usize, c)] = rat(1);
    }
    let r = eval.rref();
    let kernel = r.kernel_basis;
    let pl: Vec<Vec<Rational>> = t.quadrics.iter().map(|q| q.coefficient_vector(&monos)).collect();
    let pluecker_in_kernel = pl.iter().all(|v| eval.mul_vec(v).iter().all(Zero::is_zero));
    let mut rows = pl.clone();
    let mut rank = Mat::from_rows(rows.clone()).rank();
    let mut basis = Vec::new();
    for k in &kernel {
        rows.push(k.clone());
        let next = Mat::from_rows(rows.clone()).rank();
        if next > rank {
            rank = next;
            basis.push(MultiPoly::from_coefficient_vector(&monos, k));
        } else {
            rows.pop();
        }
    }
    let report = NikulinReport {
        evaluation_rank: r.rank,
        kernel_dim: kernel.len(),
        pluecker_in_kernel,
        quotient_dim: basis.len(),
        projective_dim: basis.len().saturating_sub(1),
    };
    Ok(NikulinSystem { basis, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{build_base, conic_to_quadric};

    fn setup() -> (BaseGeometry, ConicA, SexticA) {
        let base = build_base().unwrap();
        let a = ConicA::from_coefficients(&[1, 2, -1, 0, 1, 3, 2, -1, 1]).unwrap();
        let x = build_sextic(&a, &base).unwrap();
        (base, a, x)
    }

    #[test]
    fn sextic_chart_round_trip() {
        let (_, _, x) = setup();
        let y: Vec<Rational> = (0..7).map(|k| rat(k * k - 3)).collect();
        assert_eq!(x.coordinates(&x.to_ambient(&y)), Some(y));
        let mut off = x.to_ambient(&vec![rat(1); 7]);
        off[0] += rat(1);
        // off the span unless the first coordinate is free, which the net forbids
        assert!(x.net.annihilates(&off) == x.coordinates(&off).is_some());
    }

    #[test]
    fn sextic_is_normal_in_chart() {
        let (_, _, x) = setup();
        for t in -2..=2 {
            let p = x.curve().eval_vector(&rat(1), &rat(t));
            let y = x.coordinates(&p).unwrap();
            let expect: Vec<Rational> = (0..7).map(|k| num_traits::pow(rat(t), k)).collect();
            assert_eq!(y, expect);
        }
    }

    #[test]
    fn threefold_and_surfaces() {
        let (base, a, x) = setup();
        let t = build_threefold(&x, 1).unwrap();
        let hf: Vec<usize> = t.report.hilbert.iter().map(|h| h.value).collect();
        assert_eq!(hf, vec![7, 23, 54, 105, 181, 287, 428]);
        assert!(t.report.passed(), "{:?}", t.report);
        let q = conic_to_quadric(&a, &base).unwrap().quadric;
        assert!(build_scroll(&q, &base).unwrap().passed());
        let k3 = build_fake_k3(&q, &a, &x, &t).unwrap();
        assert!(k3.report.passed(), "{:?}", k3.report);
        let n = nikulin_system(&t).unwrap();
        assert!(n.report.passed(), "{:?}", n.report);
        let rnc = rnc_param(6);
        for g in &n.basis {
            assert!(rnc.compose(g).unwrap().is_zero());
        }
    }
}
