//! Scalar abstraction: exact, totally ordered field elements.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact scalar: an element of a totally ordered field with no rounding.
///
/// Every comparison downstream (gauge maxima, cone membership, simplex
/// pivoting, fan signatures) is an exact sign or equality test, so
/// implementors must satisfy `a + (-a) == 0` and `a * (1/a) == 1`
/// identically. Floating-point types do not qualify.
pub trait Scalar: Clone + Debug + Display + Eq + Ord + Hash + Signed {
    fn from_int(n: i64) -> Self;

    /// The reduced fraction `num/den`, or `None` when `den == 0`.
    fn from_fraction(num: i64, den: i64) -> Option<Self>;

    /// Parses `"p/q"` or `"p"`. Decimal and exponent notation are rejected.
    fn parse(text: &str) -> Option<Self>;

    /// Scales a nonzero vector to the canonical representative of its ray.
    fn primitive_ray(coords: &[Self]) -> Vec<Self>;

    /// Nearest `f64`; used only in plot/mesh payloads, never in decisions.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_fraction(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            None
        } else {
            Some(BigRational::new(num.into(), den.into()))
        }
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).ok()?,
                BigInt::from_str(d.trim()).ok()?,
            ),
            None => (BigInt::from_str(text).ok()?, BigInt::from(1)),
        };
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num, den))
        }
    }

    fn primitive_ray(coords: &[Self]) -> Vec<Self> {
        let lcm = coords
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if gcd.is_zero() {
            return coords.to_vec();
        }
        nums.into_iter()
            .map(|n| BigRational::from_integer(n / &gcd))
            .collect()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Sign of a nonzero quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `None` for zero.
    pub fn of<S: Scalar>(x: &S) -> Option<Sign> {
        if x.is_zero() {
            None
        } else if x.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `x` for `Plus`, `-x` for `Minus`.
    pub fn apply<S: Scalar>(self, x: S) -> S {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}
