//! Binary forms and univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::matrix::Mat;
use super::poly::{Monomial, MultiPoly};
use super::rational::{rat, Rational};
use crate::error::{ForgeError, Result};

/// Dense univariate polynomial; `coeffs[k]` multiplies `t^k`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Composition `self(other(t))`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(other).add(&Self::constant(c.clone())))
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(ForgeError::ZeroForm { op: "univariate division" })?;
        let inv = d.lc().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(ForgeError::InexactDivision(format!("univariate remainder {r:?}")));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part (product of distinct irreducible factors, monic).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Rational roots, each once, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Signed;
        let Some(deg) = self.degree() else {
            return vec![];
        };
        if deg == 0 {
            return vec![];
        }
        let mut roots = Vec::new();
        // strip a power of t
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(Rational::zero());
        }
        let ints = super::rational::primitive_integers(&self.coeffs[low..]);
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut out = Vec::new();
            let mut k = BigInt::one();
            while &k * &k <= *n {
                if n.is_multiple_of(&k) {
                    out.push(k.clone());
                    out.push(n / &k);
                }
                k += 1;
            }
            out
        };
        let shifted = Self::new(self.coeffs[low..].to_vec());
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1, -1] {
                    let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                    if shifted.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})t^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homogeneous form of degree `d` in `(s, t)`; `coeffs[k]` multiplies `s^(d-k) t^k`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Self::new(vec![Rational::zero(); d + 1])
    }

    /// `s^(d-k) t^k`.
    pub fn monomial(d: usize, k: usize) -> Self {
        let mut c = vec![Rational::zero(); d + 1];
        c[k] = Rational::one();
        Self::new(c)
    }

    /// The linear form `p s + q t`.
    pub fn linear(p: Rational, q: Rational) -> Self {
        Self::new(vec![p, q])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0 && !self.is_zero()
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let d = self.degree();
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(s.clone(), d - k) * num_traits::pow(t.clone(), k);
        }
        acc
    }

    /// `f(1, t)` as a univariate polynomial.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Homogenizes `p` to degree `d >= deg p`.
    pub fn homogenize(p: &UniPoly, d: usize) -> Self {
        assert!(p.degree().unwrap_or(0) <= d, "homogenization degree too small");
        Self::new((0..=d).map(|k| p.coeff(k)).collect())
    }

    /// Order of vanishing at `(s:t) = (0:1)`, i.e. the power of `s` dividing the form.
    pub fn s_multiplicity(&self) -> usize {
        self.degree() - self.dehomogenize().degree().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::new(vec![Rational::one()]), |acc, _| acc.mul(self))
    }

    pub fn partial_s(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new((0..d).map(|k| &self.coeffs[k] * rat((d - k) as i64)).collect())
    }

    pub fn partial_t(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new((0..d).map(|k| &self.coeffs[k + 1] * rat((k + 1) as i64)).collect())
    }

    /// Substitutes `(s, t) -> (a s + b t, c s + d t)`.
    pub fn linear_substitute(&self, m: [&Rational; 4]) -> Self {
        let d = self.degree();
        let new_s = BinaryForm::linear(m[0].clone(), m[1].clone());
        let new_t = BinaryForm::linear(m[2].clone(), m[3].clone());
        let mut out = Self::zero(d);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&new_s.pow((d - k) as u32).mul(&new_t.pow(k as u32)).scale(c));
        }
        out
    }

    /// Gcd, normalized so its dehomogenized part is monic.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let smult = self.s_multiplicity().min(other.s_multiplicity());
        let d = g.degree().unwrap_or(0) + smult;
        Self::homogenize(&g, d)
    }

    fn normalized(&self) -> Self {
        let lc = self.coeffs.iter().rev().find(|c| !c.is_zero());
        match lc {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(ForgeError::ZeroForm { op: "binary form division" });
        }
        if divisor.degree() > self.degree() {
            return Ok((Self::zero(0), self.clone()));
        }
        // long division in s-descending order, i.e. from coefficient index 0
        let dd = divisor.degree();
        let lead = divisor.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let mut rem = self.coeffs.clone();
        let qd = self.degree() - dd;
        let mut quot = vec![Rational::zero(); qd + 1];
        let inv = divisor.coeffs[lead].recip();
        for k in 0..=qd {
            let idx = k + lead;
            if idx >= rem.len() {
                break;
            }
            let c = &rem[idx] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(ForgeError::InexactDivision(format!(
                "binary form of degree {} by degree {}",
                self.degree(),
                divisor.degree()
            )));
        }
        Ok(q)
    }

    /// Converts to a `MultiPoly` in the variables `(s, t)`.
    pub fn to_multipoly(&self) -> MultiPoly {
        let d = self.degree() as u32;
        MultiPoly::from_terms(
            2,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![d - k as u32, k as u32], c.clone())),
        )
    }

    /// Reads a homogeneous two-variable polynomial of degree `d`.
    pub fn from_multipoly(p: &MultiPoly, d: usize) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(ForgeError::Dimension(format!("expected 2 variables, got {}", p.nvars())));
        }
        let mut c = vec![Rational::zero(); d + 1];
        for (m, v) in p.terms() {
            if m.degree() as usize != d {
                return Err(ForgeError::Inhomogeneous { index: 0 });
            }
            c[m.0[1] as usize] = v.clone();
        }
        Ok(Self::new(c))
    }

    /// Reads a polynomial in one variable `t` (any arity, variable index `var`) as a form of degree `d`.
    pub fn from_univariate_in(p: &MultiPoly, var: usize, d: usize) -> Result<Self> {
        let mut c = vec![Rational::zero(); d + 1];
        for (m, v) in p.terms() {
            let k = m.0[var] as usize;
            if m.degree() as usize != k || k > d {
                return Err(ForgeError::Dimension("not univariate of bounded degree".into()));
            }
            c[k] = v.clone();
        }
        Ok(Self::new(c))
    }

    pub fn trimmed_degree(&self) -> Option<usize> {
        // highest k with c_k != 0 measured as a polynomial in t after dehomogenizing is not the
        // projective degree; this is the degree bound with leading zero s-powers removed
        let first = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some(self.degree() - first)
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})s^{}t^{k}", d - k))
            .collect();
        if parts.is_empty() {
            write!(f, "0[deg {d}]")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Sylvester matrix of `f, g` with their formal degrees.
pub fn sylvester(f: &BinaryForm, g: &BinaryForm) -> Mat {
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (k, c) in f.coeffs().iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (k, c) in g.coeffs().iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    Mat::from_rows_with_cols(rows, size)
}

pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Rational> {
    for h in [f, g] {
        if h.degree() < 1 {
            return Err(ForgeError::DegreeTooSmall {
                op: "resultant",
                got: h.degree(),
                min: 1,
            });
        }
    }
    Ok(sylvester(f, g).det())
}

/// Discriminant: `b^2 - 4ac` in degree 2, and `(-1)^(d(d-1)/2) Res(f_s, f_t) / d^(d-2)` in general.
pub fn discriminant(f: &BinaryForm) -> Result<Rational> {
    let d = f.degree();
    if d < 2 {
        return Err(ForgeError::DegreeTooSmall {
            op: "discriminant",
            got: d,
            min: 2,
        });
    }
    if d == 2 {
        let (a, b, c) = (f.coeff(0), f.coeff(1), f.coeff(2));
        return Ok(b * b - rat(4) * a * c);
    }
    let r = resultant(&f.partial_s(), &f.partial_t())?;
    let norm = num_traits::pow(rat(d as i64), d - 2);
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * r / norm)
}

/// Normalization string recorded in certificates.
pub const DISCRIMINANT_NORM: &str = "deg 2: b^2-4ac; deg d: (-1)^(d(d-1)/2) Res(f_s,f_t)/d^(d-2)";

pub fn is_squarefree(f: &BinaryForm) -> Result<bool> {
    if f.is_zero() {
        return Err(ForgeError::ZeroForm { op: "is_squarefree" });
    }
    if f.degree() < 1 {
        return Err(ForgeError::DegreeTooSmall {
            op: "is_squarefree",
            got: 0,
            min: 1,
        });
    }
    let g = f.gcd(&f.partial_s()).gcd(&f.partial_t());
    Ok(g.degree() == 0)
}

/// Gcd of a list of forms; `None` if every form is zero.
pub fn gcd_all<'a>(forms: impl IntoIterator<Item = &'a BinaryForm>) -> Option<BinaryForm> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.normalized(),
            Some(g) => g.gcd(f),
        });
        if acc.as_ref().is_some_and(|g| g.degree() == 0) {
            break;
        }
    }
    acc
}

/// Monomial basis of forms of degree `d` as two-variable `MultiPoly` monomials.
pub fn binary_monomial(d: u32, k: u32) -> Monomial {
    Monomial(vec![d - k, k])
}
