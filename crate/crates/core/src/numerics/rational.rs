use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed rational, always in lowest terms with a
/// positive denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    /// `1 / denom` for a non-zero integer.
    pub fn recip_of(denom: impl Into<BigInt>) -> Result<Self> {
        Self::new(1, denom)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// `self / 2^k`.
    pub fn halve(&self, k: u32) -> Self {
        let denom = self.denom() << k as usize;
        Self(BigRational::new(self.numer().clone(), denom))
    }

    /// `self * 2^k`.
    pub fn double(&self, k: u32) -> Self {
        let numer = self.numer() << k as usize;
        Self(BigRational::new(numer, self.denom().clone()))
    }

    /// `(-1)^n * self`.
    pub fn alternate(self, n: u64) -> Self {
        if n.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// `p` for integers, `p/q` otherwise.
    pub fn compact(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact rational value of a finite float.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Self)
    }

    /// Nearest `f64`, ties to even. Overflows to infinity, underflows
    /// through the subnormal range to zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let negative = self.is_negative();
        let p = self.numer().magnitude();
        let q = self.denom().magnitude();

        // find e with 2^52 <= p / (q 2^e) < 2^53
        let mut e = p.bits() as i64 - q.bits() as i64 - 53;
        let (mut m, mut rem);
        loop {
            (m, rem) = scaled_div_rem(p, q, e);
            if m.bits() > 53 {
                e += 1;
            } else if m.bits() < 53 && e > -1074 {
                e -= 1;
            } else {
                break;
            }
        }
        if e < -1074 {
            e = -1074;
            (m, rem) = scaled_div_rem(p, q, e);
        }
        let twice_rem = rem << 1usize;
        let den = if e >= 0 { q << e as usize } else { q.clone() };
        let round_up = match twice_rem.cmp(&den) {
            Ordering::Greater => true,
            Ordering::Equal => m.is_odd(),
            Ordering::Less => false,
        };
        if round_up {
            m += 1u32;
            if m.bits() > 53 {
                m >>= 1usize;
                e += 1;
            }
        }
        let mantissa = m.to_u64().unwrap_or(0);
        let magnitude = if e + 52 > 1023 {
            f64::INFINITY
        } else if mantissa < (1u64 << 52) {
            // subnormal: e == -1074
            f64::from_bits(mantissa)
        } else {
            let biased = (e + 52 + 1023) as u64;
            f64::from_bits((biased << 52) | (mantissa & ((1u64 << 52) - 1)))
        };
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// `floor(p / (q 2^e))` and the remainder, with the remainder expressed
/// over the scaled denominator.
fn scaled_div_rem(p: &BigUint, q: &BigUint, e: i64) -> (BigUint, BigUint) {
    if e >= 0 {
        p.div_rem(&(q << e as usize))
    } else {
        (p << (-e) as usize).div_rem(q)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, integers, and decimal literals with an optional
/// exponent (`0.25`, `5e-5`, `-1.5E+3`). Decimals are parsed exactly.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            input: s.to_string(),
            expected: "a rational `p/q` or decimal literal",
        };
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            return Self::new(p, q);
        }

        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
            None => (s, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let scale = exponent as i64 - frac_part.len() as i64;
        if scale.unsigned_abs() > 100_000 {
            return Err(err());
        }
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Self(value))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'b ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for ExactRational {
    fn sub_assign(&mut self, rhs: ExactRational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&ExactRational> for ExactRational {
    fn mul_assign(&mut self, rhs: &ExactRational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for ExactRational {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl From<BigInt> for ExactRational {
    fn from(value: BigInt) -> Self {
        Self::from_integer(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Cmp,
    Abs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOutcome {
    Value(ExactRational),
    Ordering(Ordering),
}

/// Single entry point over the scalar operations; unary ops ignore `y`.
pub fn rational_arith(op: ArithOp, x: &ExactRational, y: &ExactRational) -> Result<ArithOutcome> {
    Ok(match op {
        ArithOp::Add => ArithOutcome::Value(x + y),
        ArithOp::Sub => ArithOutcome::Value(x - y),
        ArithOp::Mul => ArithOutcome::Value(x * y),
        ArithOp::Div => ArithOutcome::Value(x.checked_div(y)?),
        ArithOp::Neg => ArithOutcome::Value(-x),
        ArithOp::Cmp => ArithOutcome::Ordering(x.cmp(y)),
        ArithOp::Abs => ArithOutcome::Value(x.abs()),
    })
}
