//! The rank-9 lattice `Z L ⊕ N` of a genus-8 Nikulin surface.
//!
//! Classes are integer vectors over the basis `(L; m; n1..n7)`, where `N` is the
//! even lattice spanned by `n1..n8` and `m = (n1 + ... + n8) / 2`, and `n8` is
//! eliminated as `2m - n1 - ... - n7`.

mod search;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::exactmath::{rat, Mat};

pub use search::{enumerate_classes, SearchCertificate, SliceCount};

pub const GENUS: i64 = 8;

/// Gram matrix on `(L; m; n1..n7)` for genus `g`.
pub fn gram(g: i64) -> [[i64; 9]; 9] {
    let mut m = [[0i64; 9]; 9];
    m[0][0] = 2 * g - 2;
    m[1][1] = -4;
    for i in 2..9 {
        m[1][i] = -1;
        m[i][1] = -1;
        m[i][i] = -2;
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DivisorClass {
    pub x: i64,
    pub y: i64,
    pub z: [i64; 7],
}

impl DivisorClass {
    pub fn new(x: i64, y: i64, z: [i64; 7]) -> Self {
        DivisorClass { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, [0; 7])
    }

    pub fn coords(&self) -> [i64; 9] {
        let mut c = [0; 9];
        c[0] = self.x;
        c[1] = self.y;
        c[2..].copy_from_slice(&self.z);
        c
    }

    pub fn from_coords(c: [i64; 9]) -> Self {
        let mut z = [0; 7];
        z.copy_from_slice(&c[2..]);
        Self::new(c[0], c[1], z)
    }

    pub fn self_intersection(&self) -> i64 {
        pair(self, self)
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L + {}m + {:?}.n", self.x, self.y, self.z)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        let (a, b) = (self.coords(), o.coords());
        DivisorClass::from_coords(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::from_coords(self.coords().map(|v| -v))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::from_coords(d.coords().map(|v| self * v))
    }
}

pub fn pair(d1: &DivisorClass, d2: &DivisorClass) -> i64 {
    let g = gram(GENUS);
    let (a, b) = (d1.coords(), d2.coords());
    (0..9)
        .map(|i| (0..9).map(|j| a[i] * g[i][j] * b[j]).sum::<i64>())
        .sum()
}

fn basis_vector(i: usize) -> DivisorClass {
    let mut c = [0; 9];
    c[i] = 1;
    DivisorClass::from_coords(c)
}

/// `L`, `M`, `H = L - M`, `A = L - 2M` and `N1..N8`.
pub fn named_class(name: &str) -> Result<DivisorClass> {
    let l = basis_vector(0);
    let m = basis_vector(1);
    match name {
        "L" => Ok(l),
        "M" => Ok(m),
        "H" => Ok(l - m),
        "A" => Ok(l - 2 * m),
        "N8" => Ok(2 * m - (2..9).map(basis_vector).fold(DivisorClass::zero(), |a, b| a + b)),
        _ => {
            let i: usize = name
                .strip_prefix('N')
                .and_then(|s| s.parse().ok())
                .filter(|i| (1..=7).contains(i))
                .ok_or_else(|| ForgeError::UnknownClass(name.into()))?;
            Ok(basis_vector(i + 1))
        }
    }
}

/// The eight classes `N1..N8`.
pub fn nodal_classes() -> Vec<DivisorClass> {
    (1..=8).map(|i| named_class(&format!("N{i}")).unwrap()).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AdjointIdentities {
    pub a_sq: i64,
    pub a_prime_sq: i64,
    pub a_a_prime: i64,
    pub diff_sq: i64,
    pub h_diff: i64,
    pub holds: bool,
}

/// Pairings of `A` and `A' = 2H - A - N` with `N = N1 + ... + N8`.
pub fn adjoint_identities() -> AdjointIdentities {
    let h = named_class("H").unwrap();
    let a = named_class("A").unwrap();
    let n = nodal_classes().into_iter().fold(DivisorClass::zero(), |x, y| x + y);
    let ap = 2 * h - a - n;
    let diff = a - ap;
    let r = AdjointIdentities {
        a_sq: pair(&a, &a),
        a_prime_sq: pair(&ap, &ap),
        a_a_prime: pair(&a, &ap),
        diff_sq: pair(&diff, &diff),
        h_diff: pair(&h, &diff),
        holds: false,
    };
    let target = 2 * GENUS - 18;
    AdjointIdentities {
        holds: (r.a_sq, r.a_prime_sq, r.a_a_prime, r.diff_sq, r.h_diff) == (target, target, target, 0, 0),
        ..r
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Signature {
    pub leading_minors: Vec<i64>,
    pub positive: usize,
    pub negative: usize,
}

/// Signature from the signs of the leading principal minors (all must be nonzero).
pub fn signature() -> Result<Signature> {
    let g = gram(GENUS);
    let mut minors = Vec::new();
    for k in 1..=9 {
        let rows: Vec<&[i64]> = g[..k].iter().map(|r| &r[..k]).collect();
        let d = Mat::from_i64(&rows).det();
        if d == rat(0) {
            return Err(ForgeError::NotGeneric(format!("leading minor {k} vanishes")));
        }
        minors.push(d.to_integer().try_into().expect("minor fits in i64"));
    }
    let mut negative = 0;
    let mut prev = 1i64;
    for &d in &minors {
        if (d < 0) != (prev < 0) {
            negative += 1;
        }
        prev = d;
    }
    Ok(Signature {
        leading_minors: minors,
        positive: 9 - negative,
        negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(name: &str) -> DivisorClass {
        named_class(name).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(pair(&c("L"), &c("L")), 14);
        assert_eq!(pair(&c("M"), &c("M")), -4);
        assert_eq!(pair(&c("H"), &c("H")), 10);
        assert_eq!(pair(&c("A"), &c("H")), 6);
        assert_eq!(pair(&c("A"), &c("A")), -2);
        for n in nodal_classes() {
            assert_eq!(pair(&c("A"), &n), 2);
            assert_eq!(pair(&c("H"), &n), 1);
            assert_eq!(pair(&n, &n), -2);
        }
        assert_eq!(pair(&c("N8"), &c("N1")), 0);
        assert!(named_class("N9").is_err());
        assert!(named_class("Q").is_err());
    }

    #[test]
    fn identities() {
        let t = adjoint_identities();
        assert!(t.holds);
        assert_eq!(t.a_prime_sq, -2);
        assert_eq!(t.diff_sq, 0);
        assert_eq!(t.h_diff, 0);
    }

    #[test]
    fn hyperbolic_signature() {
        let s = signature().unwrap();
        assert_eq!((s.positive, s.negative), (1, 8));
    }

    fn class() -> impl Strategy<Value = DivisorClass> {
        proptest::array::uniform9(-20i64..21).prop_map(DivisorClass::from_coords)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn even_and_symmetric(d in class(), e in class()) {
            prop_assert_eq!(pair(&d, &d).rem_euclid(2), 0);
            prop_assert_eq!(pair(&d, &e), pair(&e, &d));
        }

        #[test]
        fn l_orthogonal_to_nikulin_part(mut d in class()) {
            d.x = 0;
            prop_assert_eq!(pair(&c("L"), &d), 0);
        }
    }
}
