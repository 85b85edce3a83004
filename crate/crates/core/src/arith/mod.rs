//! Exact arithmetic kernel.
//!
//! Every "is this log-ratio rational?" question in the crate is answered
//! here, by factorization and exponent-vector parallelism. No floating point
//! participates in any decision.

mod exponent;
mod factor;
pub mod poly;
mod power;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use exponent::Exponent;
pub use factor::{exponent_vector, factorize, is_probable_prime, PrimeExponentVector};
pub use power::PowerProduct;
pub(crate) use power::{big_ln, rational_to_f64};

/// Arbitrary-precision rational. `num_rational` keeps it in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot factor zero")]
    ZeroFactorization,
    #[error("expected a positive rational, got {0}")]
    NonPositive(String),
    #[error("log ratio undefined: {0} equals one")]
    UnitArgument(String),
}

/// Outcome of testing whether `log a / log b` is rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LogRatio {
    /// `log a / log b = p/q`, verified by `a^q = b^p`.
    Rational(BigRational),
    Incommensurable,
}

impl LogRatio {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            LogRatio::Rational(q) => Some(q),
            LogRatio::Incommensurable => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, LogRatio::Rational(_))
    }
}

/// Shorthand for building a rational from machine integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Decides whether `log a / log b` is rational for positive rationals
/// `a, b ≠ 1`.
pub fn mult_dependence(a: &BigRational, b: &BigRational) -> Result<LogRatio, ArithError> {
    for x in [a, b] {
        if !x.is_positive() {
            return Err(ArithError::NonPositive(x.to_string()));
        }
        if x.is_one() {
            return Err(ArithError::UnitArgument(x.to_string()));
        }
    }
    log_ratio(&PowerProduct::from_rational(a)?, &PowerProduct::from_rational(b)?)
}

/// `log a / log b` over power products. Symbolic bases are independent
/// generators, so a value involving a base is only dependent on values
/// involving the same base in the same proportion.
pub fn log_ratio(a: &PowerProduct, b: &PowerProduct) -> Result<LogRatio, ArithError> {
    if a.is_one() {
        return Err(ArithError::UnitArgument(a.to_string()));
    }
    if b.is_one() {
        return Err(ArithError::UnitArgument(b.to_string()));
    }
    let va = a.keyed();
    let vb = b.keyed();
    if va.len() != vb.len() || va.iter().zip(&vb).any(|((ka, _), (kb, _))| ka != kb) {
        return Ok(LogRatio::Incommensurable);
    }
    // Candidate p/q from the first coordinate, then cross-check the rest.
    let k = va[0].1 / vb[0].1;
    let parallel = va
        .iter()
        .zip(&vb)
        .all(|((_, ea), (_, eb))| **ea == &k * *eb);
    Ok(if parallel {
        LogRatio::Rational(k)
    } else {
        LogRatio::Incommensurable
    })
}

/// `q^e` when it is an exact rational.
pub fn rational_power(q: &BigRational, e: &BigRational) -> Option<BigRational> {
    if !q.is_positive() {
        return None;
    }
    if e.is_zero() {
        return Some(BigRational::one());
    }
    PowerProduct::rational_exact(q, e)
}

/// Integer power of a rational (negative exponents invert).
pub fn rational_powi(q: &BigRational, e: i64) -> BigRational {
    let mag = BigInt::from(e.unsigned_abs());
    let mut out = BigRational::one();
    let mut base = q.clone();
    let mut k = mag;
    while !k.is_zero() {
        if (&k % 2u32).is_one() {
            out *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependence_examples() {
        assert_eq!(
            mult_dependence(&ratio(4, 1), &ratio(8, 1)).unwrap(),
            LogRatio::Rational(ratio(2, 3))
        );
        assert_eq!(
            mult_dependence(&ratio(1, 4), &ratio(1, 8)).unwrap(),
            LogRatio::Rational(ratio(2, 3))
        );
        assert_eq!(
            mult_dependence(&ratio(12, 1), &ratio(18, 1)).unwrap(),
            LogRatio::Incommensurable
        );
        assert_eq!(
            mult_dependence(&ratio(2, 1), &ratio(3, 1)).unwrap(),
            LogRatio::Incommensurable
        );
        // Reciprocals are dependent with a negative ratio.
        assert_eq!(
            mult_dependence(&ratio(2, 1), &ratio(1, 2)).unwrap(),
            LogRatio::Rational(ratio(-1, 1))
        );
    }

    #[test]
    fn degenerate_arguments_rejected() {
        assert!(matches!(
            mult_dependence(&ratio(1, 1), &ratio(2, 1)),
            Err(ArithError::UnitArgument(_))
        ));
        assert!(matches!(
            mult_dependence(&ratio(2, 1), &ratio(0, 1)),
            Err(ArithError::NonPositive(_))
        ));
    }

    #[test]
    fn symbolic_bases_are_independent() {
        let l2 = PowerProduct::symbol("lam", ratio(2, 1));
        let l3 = PowerProduct::symbol("lam", ratio(3, 1));
        let m = PowerProduct::symbol("mu", ratio(1, 1));
        assert_eq!(log_ratio(&l2, &l3).unwrap(), LogRatio::Rational(ratio(2, 3)));
        assert_eq!(log_ratio(&l2, &m).unwrap(), LogRatio::Incommensurable);
        let half = PowerProduct::from_rational(&ratio(1, 2)).unwrap();
        assert_eq!(log_ratio(&l2, &half).unwrap(), LogRatio::Incommensurable);
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rational_power(&ratio(1, 4), &ratio(1, 2)), Some(ratio(1, 2)));
        assert_eq!(rational_power(&ratio(1, 2), &ratio(3, 1)), Some(ratio(1, 8)));
        assert_eq!(rational_power(&ratio(1, 2), &ratio(1, 2)), None);
        assert_eq!(rational_power(&ratio(8, 27), &ratio(-2, 3)), Some(ratio(9, 4)));
        assert_eq!(rational_powi(&ratio(2, 3), -2), ratio(9, 4));
    }
}
