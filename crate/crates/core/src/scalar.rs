//! Scalar abstraction shared by every algebraic container in the crate.
//!
//! All of the polynomial, series and matrix code is written against
//! [`Field`]. The exact instantiation used throughout is [`Rational`]
//! (`BigRational`); [`Dual`] numbers carry first-order derivatives through
//! the same code paths, and `f64` is available for quick experiments.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// A commutative field (or, for [`Dual`], a local ring whose units are
/// recognizable through [`Field::is_unit`]).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self;

    fn from_frac(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    fn from_rational(r: &Rational) -> Self {
        from_bigint::<Self>(r.numer()) / from_bigint::<Self>(r.denom())
    }

    /// Whether `self` may be used as a divisor.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

fn from_bigint<K: Field>(n: &BigInt) -> K {
    let (sign, digits) = n.to_u32_digits();
    let base = K::from_int(1 << 32);
    let mut acc = K::zero();
    for d in digits.iter().rev() {
        acc = acc * base.clone() + K::from_int(*d as i64);
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_frac(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
}

impl Field for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

/// Canonical `"num/den"` rendering used by every report.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Element `re + du·δ` of `K[δ]/(δ²)`.
///
/// Evaluating any rational expression over dual numbers yields its value
/// together with its exact first derivative along the direction carried by
/// `δ`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Dual<K> {
    pub re: K,
    pub du: K,
}

impl<K: Field> Dual<K> {
    pub fn new(re: K, du: K) -> Self {
        Dual { re, du }
    }
    pub fn constant(re: K) -> Self {
        Dual { re, du: K::zero() }
    }
    pub fn variable(re: K) -> Self {
        Dual { re, du: K::one() }
    }
}

impl<K: Field> fmt::Display for Dual<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+({})δ", self.re, self.du)
    }
}

impl<K: Field> Add for Dual<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, du: self.du + o.du }
    }
}

impl<K: Field> Sub for Dual<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, du: self.du - o.du }
    }
}

impl<K: Field> Mul for Dual<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let du = self.re.clone() * o.du + self.du * o.re.clone();
        Dual { re: self.re * o.re, du }
    }
}

impl<K: Field> Div for Dual<K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.re.is_unit(), "division by a non-invertible dual number");
        let re = self.re.clone() / o.re.clone();
        let du = (self.du * o.re.clone() - self.re * o.du) / (o.re.clone() * o.re);
        Dual { re, du }
    }
}

impl<K: Field> Neg for Dual<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, du: -self.du }
    }
}

impl<K: Field> Zero for Dual<K> {
    fn zero() -> Self {
        Dual { re: K::zero(), du: K::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
}

impl<K: Field> One for Dual<K> {
    fn one() -> Self {
        Dual { re: K::one(), du: K::zero() }
    }
}

impl<K: Field> Field for Dual<K> {
    fn from_int(n: i64) -> Self {
        Dual::constant(K::from_int(n))
    }
    fn is_unit(&self) -> bool {
        self.re.is_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_is_exact() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational(" -7 "), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(rational_string(&rat(-4, 6)), "-2/3");
        assert_eq!(rational_string(&int(5)), "5/1");
    }

    #[test]
    fn dual_numbers_differentiate_quotients() {
        // d/dx (x^2 + 1)/(x - 3) at x = 1 is (2x(x-3) - (x^2+1))/(x-3)^2 = -6/4
        let x = Dual::variable(int(1));
        let one = Dual::<Rational>::one();
        let f = (x.clone() * x.clone() + one) / (x - Dual::from_int(3));
        assert_eq!(f.re, int(-1));
        assert_eq!(f.du, rat(-3, 2));
    }

    #[test]
    fn big_rationals_embed_exactly() {
        let big = parse_rational("-123456789012345678901234567890/7").unwrap();
        let d: Dual<Rational> = Dual::from_rational(&big);
        assert_eq!(d.re, big);
        assert!((f64::from_rational(&rat(1, 4)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(2, 3).pow(5), rat(32, 243));
        assert_eq!(int(7).pow(0), int(1));
    }
}
