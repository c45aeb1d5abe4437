//! Exact rational numbers.
//!
//! Every click-through rate, value, price and welfare figure in this crate is a
//! [`Rational`]. Values are always kept in lowest terms with a positive
//! denominator, so structural equality is numeric equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of fractional digits in the convenience decimal rendering.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed number `{0}`")]
    Malformed(String),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Returns `None` for a zero denominator.
    pub fn checked_new(numer: i64, denom: i64) -> Option<Self> {
        if denom == 0 {
            return None;
        }
        Some(Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    /// `numer / denom`, reduced.
    ///
    /// Panics on a zero denominator; use [`Rational::checked_new`] for
    /// untrusted input.
    pub fn new(numer: i64, denom: i64) -> Self {
        Self::checked_new(numer, denom).expect("zero denominator")
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(numer, denom)))
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

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Lossy conversion, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits, with trailing zeros removed.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let negative = self.0.is_negative();
        let numer = self.0.numer().abs();
        let denom = self.0.denom();
        let (int_part, mut rem) = numer.div_rem(denom);
        let mut frac = String::with_capacity(digits);
        let ten = BigInt::from(10);
        for _ in 0..digits {
            if rem.is_zero() {
                break;
            }
            rem *= &ten;
            let (d, r) = rem.div_rem(denom);
            frac.push_str(&d.to_string());
            rem = r;
        }
        while frac.ends_with('0') {
            frac.pop();
        }
        let sign = if negative && !(int_part.is_zero() && frac.is_empty()) {
            "-"
        } else {
            ""
        };
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }

    pub fn decimal(&self) -> String {
        self.to_decimal_string(DECIMAL_DIGITS)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

/// Accepts integers (`"7"`), fractions (`"23/3"`, `"-1/2"`) and plain
/// decimals (`"0.1"`, `"-.25"`). Decimals are read exactly: `"0.1"` is `1/10`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let malformed = || ParseRationalError::Malformed(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let numer = parse_integer(n.trim()).ok_or_else(malformed)?;
            let denom = parse_integer(d.trim()).ok_or_else(malformed)?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (int_digits, frac_digits) = body.split_once('.').unwrap_or((body, ""));
        if int_digits.is_empty() && frac_digits.is_empty() {
            return Err(malformed());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_digits) || !all_digits(frac_digits) {
            return Err(malformed());
        }
        let joined = format!("{int_digits}{frac_digits}");
        let mut numer: BigInt = joined.parse().map_err(|_| malformed())?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac_digits.len());
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

// Serialized as `{"exact": "23/3", "decimal": "7.666666666666"}`. Deserialization
// reads `exact` and ignores `decimal`; a bare string is accepted as well.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl<'de> Visitor<'de> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a fraction string or an object with an `exact` field")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Rational, A::Error> {
                let mut exact: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key == "exact" {
                        exact = Some(map.next_value()?);
                    } else {
                        map.next_value::<de::IgnoredAny>()?;
                    }
                }
                let exact = exact.ok_or_else(|| de::Error::missing_field("exact"))?;
                exact.parse().map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}
