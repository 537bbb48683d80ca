//! Rewriting symmetric polynomials in elementary symmetric functions.

use num_traits::Zero;

use super::poly::{Monomial, MultiPoly};
use crate::error::{ForgeError, Result};

/// Rewrites a symmetric `p(u, v)` as `r(e1, e2)` with `e1 = u + v`, `e2 = u v`.
pub fn symmetric_reduce(p: &MultiPoly) -> Result<MultiPoly> {
    if p.nvars() != 2 {
        return Err(ForgeError::Dimension(format!(
            "symmetric_reduce expects 2 variables, got {}",
            p.nvars()
        )));
    }
    symmetric_reduce_pair(p, 0, 1)
}

/// Symmetric reduction in the variable pair `(i, j)`; other variables are parameters.
///
/// In the output, slot `i` holds `e1` and slot `j` holds `e2`.
pub fn symmetric_reduce_pair(p: &MultiPoly, i: usize, j: usize) -> Result<MultiPoly> {
    assert!(i != j && i < p.nvars() && j < p.nvars(), "bad variable pair");
    check_symmetric(p, i, j)?;
    let n = p.nvars();
    let e1 = &MultiPoly::var(n, i) + &MultiPoly::var(n, j);
    let e2 = &MultiPoly::var(n, i) * &MultiPoly::var(n, j);
    let mut e1_pows = vec![MultiPoly::one(n)];
    let mut e2_pows = vec![MultiPoly::one(n)];

    let mut rest = p.clone();
    let mut out = MultiPoly::zero(n);
    while let Some((m, c)) = leading_in_pair(&rest, i, j) {
        let (a, b) = (m.0[i], m.0[j]);
        debug_assert!(a >= b);
        let (k1, k2) = ((a - b) as usize, b as usize);
        while e1_pows.len() <= k1 {
            let next = e1_pows.last().unwrap() * &e1;
            e1_pows.push(next);
        }
        while e2_pows.len() <= k2 {
            let next = e2_pows.last().unwrap() * &e2;
            e2_pows.push(next);
        }
        let mut param = m.clone();
        param.0[i] = 0;
        param.0[j] = 0;
        let expanded = (&e1_pows[k1] * &e2_pows[k2]).mul_monomial(&param, &c);
        rest = &rest - &expanded;
        let mut target = param;
        target.0[i] = a - b;
        target.0[j] = b;
        out.add_term(target, c);
    }
    Ok(out)
}

/// Term with the largest `i`-exponent (ties broken by grlex), which for a
/// symmetric polynomial always has `exp_i >= exp_j`.
fn leading_in_pair(p: &MultiPoly, i: usize, j: usize) -> Option<(Monomial, num_rational::BigRational)> {
    p.terms()
        .max_by(|(m1, _), (m2, _)| {
            (m1.0[i], m1.0[j])
                .cmp(&(m2.0[i], m2.0[j]))
                .then_with(|| m1.cmp(m2))
        })
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn check_symmetric(p: &MultiPoly, i: usize, j: usize) -> Result<()> {
    for (m, c) in p.terms() {
        let mut sw = m.clone();
        sw.0.swap(i, j);
        let c2 = p.coeff(&sw);
        if &c2 != c {
            return Err(ForgeError::NotSymmetric {
                monomial: format!("{m:?}"),
                swapped: format!("{sw:?}"),
                lhs: c.to_string(),
                rhs: if c2.is_zero() { "0".into() } else { c2.to_string() },
            });
        }
    }
    Ok(())
}

/// Weighted degree with `e1` of weight 1 and `e2` of weight 2 (slots 0 and 1).
pub fn weighted_degree(r: &MultiPoly) -> Option<u32> {
    r.terms().map(|(m, _)| m.0[0] + 2 * m.0[1]).max()
}

/// Substitutes `e1 = u + v`, `e2 = u v` back into a two-variable `r`.
pub fn expand_elementary(r: &MultiPoly) -> MultiPoly {
    let u = MultiPoly::var(2, 0);
    let v = MultiPoly::var(2, 1);
    r.substitute(&[&u + &v, &u * &v])
}
