//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so this module only adds constructors and the `"num/den"`
//! text form used by certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ForgeError, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serializes as `"num/den"`; integers still carry `/1`.
pub fn to_text(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn from_text(s: &str) -> Result<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| ForgeError::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| ForgeError::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(ForgeError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales `values` to coprime integers (first nonzero entry positive).
pub fn primitive_integers(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Reduces `q` modulo the prime `p`, or `None` if `p` divides the denominator.
pub fn mod_prime(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num * crate::exactmath::modp::inv_mod(den, p) % p)
}

/// Integer square root test: `Some(r)` with `r*r == n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn is_rational_square(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let q = frac(-6, 4);
        assert_eq!(to_text(&q), "-3/2");
        assert_eq!(from_text("-3/2").unwrap(), q);
        assert_eq!(from_text("7").unwrap(), rat(7));
        assert!(from_text("1/0").is_err());
    }

    #[test]
    fn lowest_terms() {
        let q = frac(10, -4);
        assert_eq!(q.numer(), &BigInt::from(-5));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![frac(-1, 2), frac(1, 3), rat(0)];
        let ints = primitive_integers(&v);
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(mod_prime(&frac(1, 2), 7), Some(4));
        assert_eq!(mod_prime(&frac(1, 7), 7), None);
        assert_eq!(mod_prime(&rat(-1), 7), Some(6));
    }
}
