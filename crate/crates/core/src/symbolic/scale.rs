use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::{rational_power, PowerProduct};

use super::SpaceError;

/// A named base for formal powers. When `value` is set the base is
/// substituted eagerly and behaves like the rational it names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Base {
    pub name: String,
    pub value: Option<BigRational>,
}

impl Base {
    pub fn opaque(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value: None,
        }
    }

    pub fn declared(name: impl Into<String>, value: BigRational) -> Result<Self, SpaceError> {
        if !(value.is_positive() && value < BigRational::one()) {
            return Err(SpaceError::RatioOutOfRange(value.to_string()));
        }
        Ok(Self {
            name: name.into(),
            value: Some(value),
        })
    }
}

/// A contraction ratio in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScaleFactor {
    Rational(BigRational),
    /// `base^exponent` with `exponent > 0`.
    BasePower { base: Base, exponent: BigRational },
}

impl ScaleFactor {
    pub fn rational(q: BigRational) -> Result<Self, SpaceError> {
        if !(q.is_positive() && q < BigRational::one()) {
            return Err(SpaceError::RatioOutOfRange(q.to_string()));
        }
        Ok(ScaleFactor::Rational(q))
    }

    /// `1/den`, the usual fractal-cube ratio.
    pub fn reciprocal(den: u64) -> Result<Self, SpaceError> {
        Self::rational(BigRational::new(1.into(), den.into()))
    }

    pub fn power(base: Base, exponent: BigRational) -> Result<Self, SpaceError> {
        if !exponent.is_positive() {
            return Err(SpaceError::NonPositiveExponent(exponent.to_string()));
        }
        Ok(ScaleFactor::BasePower { base, exponent })
    }

    pub fn to_power_product(&self) -> PowerProduct {
        match self {
            ScaleFactor::Rational(q) => {
                PowerProduct::from_rational(q).expect("validated positive")
            }
            ScaleFactor::BasePower { base, exponent } => match &base.value {
                Some(v) => PowerProduct::from_rational(v)
                    .expect("validated positive")
                    .pow(exponent),
                None => PowerProduct::symbol(&base.name, exponent.clone()),
            },
        }
    }

    /// Rebuilds a scale factor from a power product: a rational, or a
    /// positive power of a single opaque base.
    pub fn from_power_product(v: &PowerProduct) -> Option<Self> {
        if let Some(q) = v.to_rational() {
            return Self::rational(q).ok();
        }
        if v.primes().next().is_some() {
            return None;
        }
        let mut bases = v.bases();
        let (name, e) = bases.next()?;
        if bases.next().is_some() || !e.is_positive() {
            return None;
        }
        Some(ScaleFactor::BasePower {
            base: Base::opaque(name),
            exponent: e.clone(),
        })
    }

    /// Name of the opaque base this factor depends on, if any.
    pub fn opaque_base(&self) -> Option<&str> {
        match self {
            ScaleFactor::BasePower { base, .. } if base.value.is_none() => Some(&base.name),
            _ => None,
        }
    }

    /// `self^k` when it stays representable as a scale factor.
    pub fn pow(&self, k: &BigRational) -> Option<Self> {
        if !k.is_positive() {
            return None;
        }
        match self {
            ScaleFactor::Rational(q) => rational_power(q, k).map(ScaleFactor::Rational),
            ScaleFactor::BasePower { base, exponent } => Some(ScaleFactor::BasePower {
                base: base.clone(),
                exponent: exponent * k,
            }),
        }
    }

    /// Exact order, when decidable.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        self.to_power_product().compare(&other.to_power_product())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.to_power_product().to_rational()
    }
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleFactor::Rational(q) => write!(f, "{q}"),
            ScaleFactor::BasePower { base, exponent } if exponent.is_one() => {
                write!(f, "{}", base.name)
            }
            ScaleFactor::BasePower { base, exponent } if exponent.is_integer() => {
                write!(f, "{}^{exponent}", base.name)
            }
            ScaleFactor::BasePower { base, exponent } => {
                write!(f, "{}^({exponent})", base.name)
            }
        }
    }
}

impl TryFrom<BigRational> for ScaleFactor {
    type Error = SpaceError;

    fn try_from(q: BigRational) -> Result<Self, SpaceError> {
        Self::rational(q)
    }
}
