//! Exact rationals.
//!
//! Values that fit in machine words are kept as a reduced `i64` pair and
//! promoted to big integers only when an operation overflows. Every value is
//! canonical (lowest terms, positive denominator, small form whenever it
//! fits), so structural equality is numeric equality.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigInt, BigInt),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseScalarError {
    Empty,
    BadInteger(String),
    ZeroDenominator,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseScalarError::Empty => write!(f, "empty scalar"),
            ParseScalarError::BadInteger(s) => write!(f, "invalid integer `{s}`"),
            ParseScalarError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub const fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub const fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub const fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / g);
        if d.sign() == Sign::Minus {
            n = -n;
            d = -d;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(n, d)),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(n, _) => n.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denom(&self) -> BigInt {
        self.big_parts().1
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(n, d) => Self::from_big(d.clone(), n.clone()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `(-1)^k`.
    pub fn sign(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        }
    }

    /// Greatest common divisor of two integers (both must be integral).
    pub(crate) fn int_gcd(&self, other: &Self) -> Self {
        debug_assert!(self.is_integer() && other.is_integer());
        match (&self.0, &other.0) {
            (Repr::Small(a, _), Repr::Small(b, _)) => {
                Self::from_i128(gcd_i128(*a as i128, *b as i128), 1)
            }
            _ => Self::from_big(self.numer().gcd(&other.numer()), BigInt::one()),
        }
    }

    /// `lcm(self, denom(other))` for an integral `self`.
    pub(crate) fn denom_lcm(&self, other: &Self) -> Self {
        debug_assert!(self.is_integer());
        Self::from_big(self.numer().lcm(&other.denom()), BigInt::one())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Scalar::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                        (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                            Some(s) => Scalar::from_i128(s, z),
                            None => big_add(self, rhs),
                        },
                        _ => big_add(self, rhs),
                    }
                }
            }
            _ => big_add(self, rhs),
        }
    }
}

fn big_add(x: &Scalar, y: &Scalar) -> Scalar {
    let (a, b) = x.big_parts();
    let (c, d) = y.big_parts();
    Scalar::from_big(a * &d + c * &b, b * d)
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Scalar::zero(),
            (Repr::Small(1, 1), _) => rhs.clone(),
            (_, Repr::Small(1, 1)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(c), b.checked_mul(d)) {
                    (Some(n), Some(m)) => Scalar::from_i128(n, m),
                    _ => big_mul(self, rhs),
                }
            }
            _ => big_mul(self, rhs),
        }
    }
}

fn big_mul(x: &Scalar, y: &Scalar) -> Scalar {
    let (a, b) = x.big_parts();
    let (c, d) = y.big_parts();
    Scalar::from_big(a * c, b * d)
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar(Repr::Small(m, *d)),
                None => Scalar::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(n, d) => Scalar::from_big(-n.clone(), d.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.big_parts();
                let (c, d) = other.big_parts();
                (a * d).cmp(&(c * b))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) if d.is_one() => write!(f, "{n}"),
            Repr::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Result<BigInt, ParseScalarError> {
    // accept the unicode minus sign as well
    let t = s.trim().replace('\u{2212}', "-");
    let t = t.strip_prefix('+').unwrap_or(&t);
    BigInt::from_str(t).map_err(|_| ParseScalarError::BadInteger(s.trim().to_string()))
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses `"p"` or `"p/q"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        match s.split_once('/') {
            None => Ok(Scalar::from_big(parse_int(s)?, BigInt::one())),
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(ParseScalarError::ZeroDenominator);
                }
                Ok(Scalar::from_big(parse_int(n)?, d))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(format!("{}", q(-6, 4)), "-3/2");
        assert_eq!(format!("{}", q(0, -5)), "0");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(..)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let m = Scalar::from_int(i64::MIN);
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!("-3/2".parse::<Scalar>().unwrap(), q(-3, 2));
        assert_eq!("\u{2212}3/2".parse::<Scalar>().unwrap(), q(-3, 2));
        assert_eq!(" 4/-8 ".parse::<Scalar>().unwrap(), q(-1, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in -1000i64..1000, b in 1i64..50, c in -1000i64..1000, d in 1i64..50) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            prop_assert_eq!(format!("{}", x).parse::<Scalar>().unwrap(), x);
        }

        #[test]
        fn big_and_small_paths_agree(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>()) {
            let x = q(a, b);
            let y = Scalar::from_int(c);
            let small = &(&x * &y) + &x;
            let big = big_add(&big_mul(&x, &y), &x);
            prop_assert_eq!(small, big);
        }
    }
}
