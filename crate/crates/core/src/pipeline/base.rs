use num_traits::Zero;
use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::exactmath::{rat, MultiPoly};
use crate::grassmann::{bisecant_at, bisecant_map, pluecker_relations};
use crate::projgeom::{hankel_cubic, quadrics_through, rnc_param, ParamCurve};

/// The fixed objects every run starts from.
#[derive(Clone, Debug)]
pub struct BaseGeometry {
    /// The standard rational normal quartic.
    pub b: ParamCurve,
    /// The secant cubic.
    pub v: MultiPoly,
    /// Bisecant cubics on P^2.
    pub phi: Vec<MultiPoly>,
    /// The diagonal conic `b^2 - 4ac`.
    pub d: MultiPoly,
    /// Basis of the quadrics through `b`.
    pub quadrics_b: Vec<MultiPoly>,
    pub report: BaseReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseReport {
    pub secant_on_quartic_degree: usize,
    pub secant_on_quartic_zero: bool,
    pub bisecant_in_grassmannian: bool,
    pub bisecant_cubic: bool,
    pub coordinate_line_check: bool,
    pub diagonal_double_root_check: bool,
    pub quadrics_through_quartic: usize,
}

impl BaseReport {
    pub fn passed(&self) -> bool {
        self.secant_on_quartic_zero
            && self.bisecant_in_grassmannian
            && self.bisecant_cubic
            && self.coordinate_line_check
            && self.diagonal_double_root_check
            && self.quadrics_through_quartic == 6
    }
}

/// The diagonal conic of P^2 = quadrics on P^1: `b^2 - 4ac`.
pub fn diagonal_conic() -> MultiPoly {
    let v = |i| MultiPoly::var(3, i);
    &(&v(1) * &v(1)) - &(&v(0) * &v(2)).scale(&rat(4))
}

pub fn build_base() -> Result<BaseGeometry> {
    let b = rnc_param(4);
    let v = hankel_cubic();
    let on_b = b.compose(&v)?;
    let phi = bisecant_map();
    let in_g = pluecker_relations().iter().all(|r| r.substitute(&phi).is_zero());
    let cubic = phi.len() == 10 && phi.iter().all(|f| f.homogeneous_degree() == Some(3));
    let coordinate_line = bisecant_at(&[rat(0), rat(1), rat(0)])
        .iter()
        .enumerate()
        .all(|(k, x)| (k == 3) != x.is_zero());
    let d = diagonal_conic();
    let double_root = d.eval(&[rat(1), rat(2), rat(1)]).is_zero();
    let (nq, quadrics_b) = quadrics_through(&b, &[])?;
    let report = BaseReport {
        secant_on_quartic_degree: on_b.degree(),
        secant_on_quartic_zero: on_b.is_zero(),
        bisecant_in_grassmannian: in_g,
        bisecant_cubic: cubic,
        coordinate_line_check: coordinate_line,
        diagonal_double_root_check: double_root,
        quadrics_through_quartic: nq,
    };
    if !report.passed() {
        return Err(ForgeError::NotGeneric(format!("base geometry check failed: {report:?}")));
    }
    Ok(BaseGeometry {
        b,
        v,
        phi,
        d,
        quadrics_b,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_builds() {
        let base = build_base().unwrap();
        assert_eq!(base.report.secant_on_quartic_degree, 12);
        assert_eq!(base.quadrics_b.len(), 6);
    }
}
