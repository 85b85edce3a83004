use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{log_ratio, rational_to_f64, LogRatio, PowerProduct};

/// An exact Hölder exponent.
///
/// `LogRatio { from, to }` denotes `log(to) / log(from)`: the exponent that
/// sends `from` to `to`. It arises when the source and target weights are
/// multiplicatively independent, so the exponent is irrational but still
/// acts exactly on every power of `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Rational(BigRational),
    LogRatio { from: PowerProduct, to: PowerProduct },
}

impl Exponent {
    pub fn one() -> Self {
        Exponent::Rational(BigRational::one())
    }

    /// The exponent sending `from` to `to`, collapsed to a rational when
    /// the two are dependent. Both arguments must differ from one.
    pub fn sending(from: &PowerProduct, to: &PowerProduct) -> Option<Self> {
        match log_ratio(to, from).ok()? {
            LogRatio::Rational(k) => Some(Exponent::Rational(k)),
            LogRatio::Incommensurable => Some(Exponent::LogRatio {
                from: from.clone(),
                to: to.clone(),
            }),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Rational(k) => Some(k),
            Exponent::LogRatio { .. } => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Exponent::Rational(k) => k.is_positive(),
            // Both ends lie in (0, 1) or both above one for every exponent we build.
            Exponent::LogRatio { from, to } => from.cmp_one() == to.cmp_one(),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Exponent::Rational(k) => Exponent::Rational(k.recip()),
            Exponent::LogRatio { from, to } => Exponent::LogRatio {
                from: to.clone(),
                to: from.clone(),
            },
        }
    }

    /// `v^self`, when exact. A log-ratio exponent only acts on values
    /// dependent on its `from` end.
    pub fn apply(&self, v: &PowerProduct) -> Option<PowerProduct> {
        match self {
            Exponent::Rational(k) => Some(v.pow(k)),
            Exponent::LogRatio { from, to } => {
                if v.is_one() {
                    return Some(PowerProduct::one());
                }
                match log_ratio(v, from).ok()? {
                    LogRatio::Rational(k) => Some(to.pow(&k)),
                    LogRatio::Incommensurable => None,
                }
            }
        }
    }

    /// Product of exponents, when it stays representable.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        use Exponent::*;
        let raw = match (self, other) {
            (Rational(a), Rational(b)) => return Some(Rational(a * b)),
            (Rational(k), LogRatio { from, to }) | (LogRatio { from, to }, Rational(k)) => {
                (from.clone(), to.pow(k))
            }
            (LogRatio { from: a, to: b }, LogRatio { from: c, to: d }) => {
                // (log b / log a)(log d / log c)
                if let Ok(super::LogRatio::Rational(k)) = log_ratio(b, c) {
                    (a.clone(), d.pow(&k))
                } else if let Ok(super::LogRatio::Rational(k)) = log_ratio(d, a) {
                    (c.clone(), b.pow(&k))
                } else {
                    return None;
                }
            }
        };
        Exponent::sending(&raw.0, &raw.1)
    }

    /// Exact equality, when decidable.
    pub fn exact_eq(&self, other: &Self) -> Option<bool> {
        use Exponent::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Some(a == b),
            // A log-ratio is only built for independent ends, so it is irrational.
            (Rational(_), LogRatio { .. }) | (LogRatio { .. }, Rational(_)) => Some(false),
            (LogRatio { from: a, to: b }, LogRatio { from: c, to: d }) => {
                match log_ratio(a, c).ok()? {
                    super::LogRatio::Rational(k) => Some(*b == d.pow(&k)),
                    super::LogRatio::Incommensurable => None,
                }
            }
        }
    }

    pub fn approx(&self) -> Option<f64> {
        match self {
            Exponent::Rational(k) => Some(rational_to_f64(k)),
            Exponent::LogRatio { from, to } => Some(to.ln()? / from.ln()?),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(k) => write!(f, "{k}"),
            Exponent::LogRatio { from, to } => write!(f, "log({to})/log({from})"),
        }
    }
}
