use super::pluecker::PAIRS;
use crate::error::Result;
use crate::exactmath::symmetric::symmetric_reduce;
use crate::exactmath::{rat, MultiPoly};

/// Rewrites `r(e1, e2)` at `e1 = -b/a`, `e2 = c/a` and clears `a^deg`, in variables `(a, b, c)`.
///
/// Fails if some term `e1^p e2^q` has `p + q > deg`.
pub fn homogenize_elementary(r: &MultiPoly, deg: u32, a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Option<MultiPoly> {
    let n = a.nvars();
    let minus_b = -b;
    let mut out = MultiPoly::zero(n);
    for (m, coef) in r.terms() {
        let (p, q) = (m.0[0], m.0[1]);
        if p + q > deg {
            return None;
        }
        let term = &(&minus_b.pow(p) * &c.pow(q)) * &a.pow(deg - p - q);
        out = out + term.scale(coef);
    }
    Some(out)
}

/// The ten cubics in `(a, b, c)` sending the binary quadric `a s^2 + b s t + c t^2`
/// to the Pluecker point of the line through the two points of the quartic over its roots.
pub fn bisecant_map() -> Vec<MultiPoly> {
    bisecant_map_checked().expect("bisecant construction is exact")
}

fn bisecant_map_checked() -> Result<Vec<MultiPoly>> {
    // b(s) = (s^4, s^3, s^2, s, 1) at the two roots s1, s2
    let s1 = MultiPoly::var(2, 0);
    let s2 = MultiPoly::var(2, 1);
    let b1: Vec<MultiPoly> = (0..5).map(|k| s1.pow(4 - k)).collect();
    let b2: Vec<MultiPoly> = (0..5).map(|k| s2.pow(4 - k)).collect();
    let diff = &s1 - &s2;
    let a = MultiPoly::var(3, 0);
    let b = MultiPoly::var(3, 1);
    let c = MultiPoly::var(3, 2);
    PAIRS
        .iter()
        .map(|&(i, j)| {
            let minor = &(&b1[i] * &b2[j]) - &(&b1[j] * &b2[i]);
            let sym = minor.div_exact(&diff)?;
            let r = symmetric_reduce(&sym)?;
            Ok(homogenize_elementary(&r, 3, &a, &b, &c).expect("each root appears to degree at most 3"))
        })
        .collect()
}

/// Evaluates the bisecant cubics at a rational quadric.
pub fn bisecant_at(z: &[crate::exactmath::Rational]) -> Vec<crate::exactmath::Rational> {
    bisecant_map().iter().map(|f| f.eval(z)).collect()
}

/// Pullback of the hyperplane `sum h_k p_k` under the bisecant map.
pub fn hyperplane_pullback(phi: &[MultiPoly], h: &[i64]) -> MultiPoly {
    phi.iter()
        .zip(h)
        .fold(MultiPoly::zero(3), |acc, (f, &w)| acc + f.scale(&rat(w)))
}
