//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (the coefficient field for every
//! surface computation) and the two-element field (used for the truncated
//! polynomial check). Arithmetic never rounds. Rationals are kept in lowest
//! terms with a positive denominator; an intermediate result that does not fit
//! in 64-bit numerator/denominator panics instead of wrapping.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A field with exact arithmetic.
pub trait Field:
    Copy
    + Eq
    + Hash
    + Send
    + Sync
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = Error>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Short name used in reports (`"Q"`, `"F2"`).
    const NAME: &'static str;
    const CHARACTERISTIC: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Image of an integer under the canonical ring map.
    fn from_i64(n: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A rational number `num/den` in lowest terms with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn narrow(n: i128) -> i64 {
    i64::try_from(n)
        .unwrap_or_else(|_| panic!("rational coefficient overflow: {n} does not fit in i64"))
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den`, normalizing to lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_wide(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    fn from_wide(mut num: i128, mut den: i128) -> Rational {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        Rational {
            num: narrow(num),
            den: narrow(den),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn abs(self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        if self.den == 1 && rhs.den == 1 {
            return Rational::integer(
                self.num
                    .checked_add(rhs.num)
                    .unwrap_or_else(|| narrow(self.num as i128 + rhs.num as i128)),
            );
        }
        let (a, b, c, d) = (
            self.num as i128,
            self.den as i128,
            rhs.num as i128,
            rhs.den as i128,
        );
        Rational::from_wide(a * d + c * b, b * d)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        if self.den == 1 && rhs.den == 1 {
            return Rational::integer(
                self.num
                    .checked_mul(rhs.num)
                    .unwrap_or_else(|| narrow(self.num as i128 * rhs.num as i128)),
            );
        }
        Rational::from_wide(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self * rhs.inv().expect("division by zero")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: self
                .num
                .checked_neg()
                .expect("rational coefficient overflow"),
            den: self.den,
        }
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = *self * rhs;
    }
}

impl Field for Rational {
    const NAME: &'static str = "Q";
    const CHARACTERISTIC: u64 = 0;

    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn from_i64(n: i64) -> Self {
        Rational::integer(n)
    }
    fn inv(self) -> Option<Self> {
        if self.num == 0 {
            None
        } else {
            Some(Rational::from_wide(self.den as i128, self.num as i128))
        }
    }
}

/// Signed form: `+3`, `-1/2`, `+0`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.num < 0 { '-' } else { '+' };
        if self.den == 1 {
            write!(f, "{sign}{}", self.num.unsigned_abs())
        } else {
            write!(f, "{sign}{}/{}", self.num.unsigned_abs(), self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid rational coefficient `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => 1,
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl Div for Gf2 {
    type Output = Gf2;
    fn div(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0, "division by zero");
        self
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl AddAssign for Gf2 {
    fn add_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl SubAssign for Gf2 {
    fn sub_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
impl MulAssign for Gf2 {
    fn mul_assign(&mut self, rhs: Gf2) {
        self.0 &= rhs.0;
    }
}

impl Field for Gf2 {
    const NAME: &'static str = "F2";
    const CHARACTERISTIC: u64 = 2;

    fn zero() -> Self {
        Gf2::ZERO
    }
    fn one() -> Self {
        Gf2::ONE
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn from_i64(n: i64) -> Self {
        Gf2(n.rem_euclid(2) == 1)
    }
    fn inv(self) -> Option<Self> {
        self.0.then_some(self)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "+1" } else { "+0" })
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gf2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid F2 coefficient `{s}`")))?;
        Ok(Gf2::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(Rational::new(0, -7), Rational::ZERO);
        assert_eq!(Rational::new(0, -7).denom(), 1);
    }

    #[test]
    fn display_and_parse() {
        for (r, s) in [
            (Rational::new(-1, 2), "-1/2"),
            (Rational::integer(3), "+3"),
            (Rational::ZERO, "+0"),
        ] {
            assert_eq!(r.to_string(), s);
            assert_eq!(s.parse::<Rational>().unwrap(), r);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn gf2_table() {
        assert_eq!(Gf2::ONE + Gf2::ONE, Gf2::ZERO);
        assert_eq!(-Gf2::ONE, Gf2::ONE);
        assert_eq!(Gf2::from_i64(-3), Gf2::ONE);
        assert_eq!(Gf2::from_i64(4), Gf2::ZERO);
        assert_eq!(Gf2::ZERO.inv(), None);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_panics() {
        let big = Rational::integer(i64::MAX / 2 + 1);
        let _ = big * Rational::integer(4);
    }

    proptest! {
        #[test]
        fn inverse_round_trip(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(a != 0 && b != 0);
            let x = Rational::new(a, b);
            let y = Rational::new(b, a);
            prop_assert_eq!(x * y, Rational::ONE);
            prop_assert_eq!(x * x.inv().unwrap(), Rational::ONE);
        }

        #[test]
        fn field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y) - y, x);
            prop_assert_eq!(x * (y + Rational::ONE), x * y + x);
            prop_assert!(x.denom() > 0);
            prop_assert_eq!(num_integer::gcd(x.numer(), x.denom()), 1);
        }
    }
}
