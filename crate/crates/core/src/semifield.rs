//! Idempotent semifields over exact rationals.
//!
//! A [`Scalar`] is either the semifield zero or a finite exact rational.
//! What the finite value *means* (and how two scalars combine) is decided by
//! a [`Semifield`] instance. [`MaxPlus`] is the reference instance used by the
//! optimiser, the scheduler and all file formats; [`MinPlus`], [`MaxTimes`]
//! and [`MinTimes`] exist so the generic algebra can be checked against more
//! than one carrier.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero as _};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of an idempotent semifield: the zero `𝟘`, or a finite value.
///
/// `Zero` is a separate tag, never a sentinel number, so arithmetic on it is
/// always routed through the absorbing/neutral rules of the semifield.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Zero,
    Finite(BigRational),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// `numer / denom` in lowest terms. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Scalar::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Zero)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_zero()
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Scalar::Zero => None,
            Scalar::Finite(v) => Some(v),
        }
    }

    /// The finite value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.finite()
            .filter(|v| v.is_integer())
            .and_then(|v| v.to_integer().to_i64())
    }

    /// Lossy conversion used only for drawing.
    pub fn to_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        self.finite().and_then(|v| v.to_f64())
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Finite(v)
    }
}

/// Max-plus rendering: `𝟘` prints as `-inf`, integers as plain literals and
/// other rationals as `p/q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Zero => f.pad("-inf"),
            Scalar::Finite(v) if v.is_integer() => f.pad(&v.numer().to_string()),
            Scalar::Finite(v) => f.pad(&format!("{}/{}", v.numer(), v.denom())),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal {0:?}")]
pub struct ParseScalarError(pub String);

/// Accepts `-inf`, integers, `p/q` rationals and plain decimals (`1.25`).
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        if t.eq_ignore_ascii_case("-inf") {
            return Ok(Scalar::Zero);
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::Finite(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = match int {
                "" | "-" | "+" => BigInt::zero(),
                _ => int.parse().map_err(|_| err())?,
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac_part: BigInt = frac.parse().map_err(|_| err())?;
            let mut numer = int_part.abs() * &scale + frac_part;
            if negative {
                numer = -numer;
            }
            return Ok(Scalar::Finite(BigRational::new(numer, scale)));
        }
        let v: BigInt = t.parse().map_err(|_| err())?;
        Ok(Scalar::Finite(BigRational::from_integer(v)))
    }
}

/// Which of the four shipped semifields a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemifieldTag {
    MaxPlus,
    MinPlus,
    MaxTimes,
    MinTimes,
}

impl fmt::Display for SemifieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemifieldTag::MaxPlus => "max-plus",
            SemifieldTag::MinPlus => "min-plus",
            SemifieldTag::MaxTimes => "max-times",
            SemifieldTag::MinTimes => "min-times",
        })
    }
}

/// An idempotent semifield with a total order.
///
/// Implementors supply the identity, the multiplication on finite values, the
/// inverse and the total order on finite values. Addition is the maximum in
/// that order, `𝟘` sits below every finite value, is neutral for `⊕` and
/// absorbing for `⊗`.
pub trait Semifield:
    Copy + Clone + Default + fmt::Debug + PartialEq + Eq + Send + Sync + 'static
{
    const TAG: SemifieldTag;

    fn one() -> Scalar;

    /// Whether a finite rational belongs to the carrier set.
    fn contains(value: &BigRational) -> bool;

    fn mul_finite(a: &BigRational, b: &BigRational) -> BigRational;

    fn inv_finite(a: &BigRational) -> BigRational;

    /// Total order on finite values, consistent with `a <= b iff a ⊕ b = b`.
    fn cmp_finite(a: &BigRational, b: &BigRational) -> Ordering;

    fn cmp(a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::Zero, Scalar::Zero) => Ordering::Equal,
            (Scalar::Zero, _) => Ordering::Less,
            (_, Scalar::Zero) => Ordering::Greater,
            (Scalar::Finite(x), Scalar::Finite(y)) => Self::cmp_finite(x, y),
        }
    }

    fn le(a: &Scalar, b: &Scalar) -> bool {
        Self::cmp(a, b) != Ordering::Greater
    }

    fn lt(a: &Scalar, b: &Scalar) -> bool {
        Self::cmp(a, b) == Ordering::Less
    }

    fn add(a: &Scalar, b: &Scalar) -> Scalar {
        if Self::cmp(a, b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Greatest lower bound in the semifield order.
    fn meet(a: &Scalar, b: &Scalar) -> Scalar {
        if Self::cmp(a, b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    fn mul(a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(Self::mul_finite(x, y)),
            _ => Scalar::Zero,
        }
    }

    fn inv(a: &Scalar) -> Result<Scalar> {
        match a {
            Scalar::Zero => Err(Error::InversionOfZero),
            Scalar::Finite(x) => Ok(Scalar::Finite(Self::inv_finite(x))),
        }
    }

    /// Inverse used by conjugate transposition: `𝟘` maps to `𝟘`.
    fn conj(a: &Scalar) -> Scalar {
        match a {
            Scalar::Zero => Scalar::Zero,
            Scalar::Finite(x) => Scalar::Finite(Self::inv_finite(x)),
        }
    }

    /// Integer power by iterated multiplication; negative powers go through
    /// the inverse.
    fn pow(a: &Scalar, k: i64) -> Result<Scalar> {
        let base = if k < 0 { Self::inv(a)? } else { a.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = Self::mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Checks that every finite value lies in the carrier set.
    fn validate(a: &Scalar) -> Result<()> {
        match a {
            Scalar::Finite(x) if !Self::contains(x) => Err(Error::InvalidValue(a.to_string())),
            _ => Ok(()),
        }
    }
}

/// `(ℚ ∪ {−∞}, max, +)`: `𝟙 = 0`, `x⁻¹ = −x`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MaxPlus;

/// `(ℚ ∪ {+∞}, min, +)`: the order is reversed, `𝟘` stands for `+∞`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MinPlus;

/// `(ℚ₊ ∪ {0}, max, ×)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MaxTimes;

/// `(ℚ₊ ∪ {+∞}, min, ×)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MinTimes;

impl Semifield for MaxPlus {
    const TAG: SemifieldTag = SemifieldTag::MaxPlus;

    fn one() -> Scalar {
        Scalar::Finite(BigRational::zero())
    }

    fn contains(_: &BigRational) -> bool {
        true
    }

    fn mul_finite(a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn inv_finite(a: &BigRational) -> BigRational {
        -a
    }

    fn cmp_finite(a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
}

impl Semifield for MinPlus {
    const TAG: SemifieldTag = SemifieldTag::MinPlus;

    fn one() -> Scalar {
        Scalar::Finite(BigRational::zero())
    }

    fn contains(_: &BigRational) -> bool {
        true
    }

    fn mul_finite(a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn inv_finite(a: &BigRational) -> BigRational {
        -a
    }

    fn cmp_finite(a: &BigRational, b: &BigRational) -> Ordering {
        b.cmp(a)
    }
}

impl Semifield for MaxTimes {
    const TAG: SemifieldTag = SemifieldTag::MaxTimes;

    fn one() -> Scalar {
        Scalar::Finite(BigRational::one())
    }

    fn contains(value: &BigRational) -> bool {
        value.is_positive()
    }

    fn mul_finite(a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv_finite(a: &BigRational) -> BigRational {
        a.recip()
    }

    fn cmp_finite(a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
}

impl Semifield for MinTimes {
    const TAG: SemifieldTag = SemifieldTag::MinTimes;

    fn one() -> Scalar {
        Scalar::Finite(BigRational::one())
    }

    fn contains(value: &BigRational) -> bool {
        value.is_positive()
    }

    fn mul_finite(a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv_finite(a: &BigRational) -> BigRational {
        a.recip()
    }

    fn cmp_finite(a: &BigRational, b: &BigRational) -> Ordering {
        b.cmp(a)
    }
}

/// `a ⊕ b` in max-plus.
pub fn scalar_add(a: &Scalar, b: &Scalar) -> Scalar {
    MaxPlus::add(a, b)
}

/// `a ⊗ b` in max-plus.
pub fn scalar_mul(a: &Scalar, b: &Scalar) -> Scalar {
    MaxPlus::mul(a, b)
}

/// `a⁻¹` in max-plus.
pub fn scalar_inv(a: &Scalar) -> Result<Scalar> {
    MaxPlus::inv(a)
}

/// `aᵏ` in max-plus.
pub fn scalar_pow(a: &Scalar, k: i64) -> Result<Scalar> {
    MaxPlus::pow(a, k)
}
