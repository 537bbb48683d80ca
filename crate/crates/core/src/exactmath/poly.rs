//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. The order is global, so iteration order, bases and
//! printed output are all deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{rat, Rational};
use crate::error::{ForgeError, Result};

/// Default cap on the number of terms a product may produce.
pub const TERM_BUDGET: usize = 4_000_000;

/// Monomial ordering name recorded in certificates.
pub const MONOMIAL_ORDER: &str = "grlex (x0 > x1 > ... within a degree)";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", display_monomial(self, None))
    }
}

fn display_monomial(m: &Monomial, names: Option<&[&str]>) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = names
                .and_then(|n| n.get(i).map(|s| s.to_string()))
                .unwrap_or_else(|| format!("x{i}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// All monomials of total degree `d` in `n` variables, in descending grlex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Largest monomial in grlex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// `Some(d)` when every term has degree `d`; the zero polynomial is homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul_checked(&self, other: &Self, budget: usize) -> Result<Self> {
        assert_eq!(self.nvars, other.nvars, "arity mismatch in product");
        let bound = self.terms.len().saturating_mul(other.terms.len());
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
            if out.terms.len() > budget {
                return Err(ForgeError::TermBudget {
                    terms: out.terms.len().max(bound.min(out.terms.len())),
                    budget,
                });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one arity.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let target = subs.first().map_or(0, MultiPoly::nvars);
        // cache powers of each substitute
        let mut powers: Vec<Vec<MultiPoly>> = subs.iter().map(|s| vec![MultiPoly::one(s.nvars)]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = out + t;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * rat(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Embeds into `nvars` variables, sending old variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i, j);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(ForgeError::InexactDivision(format!(
                "remainder with {} terms",
                r.terms.len()
            )));
        }
        Ok(q)
    }

    /// Division by leading terms: the remainder has no term divisible by lt(divisor).
    pub fn div_rem(&self, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        let (lm, lc) = divisor
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(ForgeError::ZeroForm { op: "div_rem" })?;
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        let mut out_rem = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = &c * &inv;
                    rem = &rem - &divisor.mul_monomial(&qm, &qc);
                    quot.add_term(qm, qc);
                }
                None => {
                    rem.terms.remove(&m);
                    out_rem.add_term(m, c);
                }
            }
        }
        Ok((quot, out_rem))
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({})*{}", c, display_monomial(m, Some(names))))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Coefficient vector against a list of monomials (missing entries are zero).
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coefficient_vector(basis: &[Monomial], coeffs: &[Rational]) -> MultiPoly {
        let n = basis.first().map_or(0, Monomial::nvars);
        let mut p = Self::zero(n);
        for (m, c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let s: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{m:?}"))
            .collect();
        write!(f, "{}", s.join(" + "))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in sum");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in difference");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_checked(rhs, TERM_BUDGET)
            .unwrap_or_else(|e| panic!("polynomial product exceeded budget: {e}"))
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// Determinant of a square matrix of polynomials (fraction-free Bareiss).
pub fn det_poly(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Err(ForgeError::Dimension("empty determinant".into()));
    }
    let nv = m[0][0].nvars();
    let mut sign = false;
    let mut prev = MultiPoly::one(nv);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero(nv)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}

/// Resultant with respect to `var`, using the formal degrees `deg_f`, `deg_g`.
pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, var: usize, deg_f: usize, deg_g: usize) -> Result<MultiPoly> {
    let nv = f.nvars();
    let mut fc = f.coefficients_in(var);
    let mut gc = g.coefficients_in(var);
    if fc.len() > deg_f + 1 || gc.len() > deg_g + 1 {
        return Err(ForgeError::Dimension("formal degree below actual degree".into()));
    }
    fc.resize(deg_f + 1, MultiPoly::zero(nv));
    gc.resize(deg_g + 1, MultiPoly::zero(nv));
    let n = deg_f + deg_g;
    if n == 0 {
        return Ok(MultiPoly::one(nv));
    }
    let mut rows = Vec::with_capacity(n);
    // coefficient order: highest power first
    for shift in 0..deg_g {
        let mut row = vec![MultiPoly::zero(nv); n];
        for k in 0..=deg_f {
            row[shift + k] = fc[deg_f - k].clone();
        }
        rows.push(row);
    }
    for shift in 0..deg_f {
        let mut row = vec![MultiPoly::zero(nv); n];
        for k in 0..=deg_g {
            row[shift + k] = gc[deg_g - k].clone();
        }
        rows.push(row);
    }
    det_poly(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Monomial(vec![2, 0, 0]));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomial_count(7, 2), 28);
        assert_eq!(monomial_count(10, 2), 55);
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let f = &(&x(n, 0) - &x(n, 1)) * &(&x(n, 0) + &x(n, 1).pow(2));
        let q = f.div_exact(&(&x(n, 0) - &x(n, 1))).unwrap();
        assert_eq!(q, &x(n, 0) + &x(n, 1).pow(2));
        assert!(f.div_exact(&(&x(n, 0) + &MultiPoly::one(n))).is_err());
    }

    #[test]
    fn substitution_and_derivative() {
        let n = 2;
        let f = &x(n, 0).pow(2) * &x(n, 1);
        let g = f.substitute(&[&x(n, 0) + &x(n, 1), x(n, 1)]);
        assert_eq!(g.eval(&[rat(1), rat(2)]), rat(18));
        assert_eq!(f.derivative(0), (&x(n, 0) * &x(n, 1)).scale(&rat(2)));
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_x(x - a, x - b) = a - b in Q[a,b,x]
        let n = 3;
        let f = &x(n, 2) - &x(n, 0);
        let g = &x(n, 2) - &x(n, 1);
        let r = resultant_in(&f, &g, 2, 1, 1).unwrap();
        assert_eq!(r, &x(n, 0) - &x(n, 1));
    }

    #[test]
    fn term_budget_fails_loudly() {
        let f = (0..6).fold(MultiPoly::zero(6), |acc, i| acc + x(6, i));
        let f3 = f.pow(3);
        assert!(f3.mul_checked(&f3, 100).is_err());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(3, ts.into_iter().map(|((a, b, c), v)| (vec![a, b, c], rat(v))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!(a.terms().all(|(_, v)| !v.is_zero()));
        }

        #[test]
        fn division_round_trip(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b).unwrap(), a);
        }
    }
}
