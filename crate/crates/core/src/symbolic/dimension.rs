use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{big_ln, PowerProduct};

use super::{ScaleFactor, SpaceError, SymbolicSpace};

/// Bisection bracket and iteration cap for the Moran equation.
pub const MORAN_BRACKET: (f64, f64) = (1e-9, 64.0);
pub const MORAN_MAX_ITER: usize = 200;
pub const MORAN_TOLERANCE: f64 = 1e-12;

/// `log numerator / log denominator`, kept symbolically next to its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogQuotient {
    pub numerator: BigRational,
    pub denominator: BigRational,
}

impl LogQuotient {
    pub fn value(&self) -> f64 {
        ln_rational(&self.numerator) / ln_rational(&self.denominator)
    }
}

impl fmt::Display for LogQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log {}/log {}", self.numerator, self.denominator)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dimension {
    pub value: f64,
    pub exact: String,
}

fn ln_rational(q: &BigRational) -> f64 {
    big_ln(q.numer().magnitude()) - big_ln(q.denom().magnitude())
}

/// Hausdorff dimension `log N / -log r` of a uniform space with a rational
/// (or declared-base) weight.
pub fn dimension_uniform(space: &SymbolicSpace) -> Result<(Dimension, LogQuotient), SpaceError> {
    let r = space.uniform_weight().ok_or(SpaceError::NotUniform)?;
    let r = r.as_rational().ok_or(SpaceError::NotNumeric(r.to_string()))?;
    let q = LogQuotient {
        numerator: BigRational::from_integer(space.alphabet().into()),
        denominator: r.recip(),
    };
    Ok((
        Dimension {
            value: q.value(),
            exact: q.to_string(),
        },
        q,
    ))
}

/// Root `s > 0` of `Σ exp(-a_i s) = 1` for positive `a_i` (the logs of the
/// reciprocal ratios). Bisection on the decreasing function over the fixed
/// bracket.
pub fn moran_root(neg_logs: &[f64]) -> Result<f64, SpaceError> {
    if neg_logs.len() < 2 {
        return Err(SpaceError::TooFewRatios(neg_logs.len()));
    }
    let f = |s: f64| neg_logs.iter().map(|a| (-a * s).exp()).sum::<f64>() - 1.0;
    let (mut lo, mut hi) = MORAN_BRACKET;
    if f(hi) > 0.0 {
        return Err(SpaceError::MoranBracket);
    }
    for _ in 0..MORAN_MAX_ITER {
        if hi - lo <= MORAN_TOLERANCE * 0.5 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Similarity dimension of `(r_1, …, r_m)` with numeric ratios.
pub fn dimension_moran(ratios: &[ScaleFactor]) -> Result<f64, SpaceError> {
    let logs = ratios
        .iter()
        .map(|r| {
            r.to_power_product()
                .ln()
                .map(|l| -l)
                .ok_or_else(|| SpaceError::NotNumeric(r.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    moran_root(&logs)
}

/// Moran root for ratios that are all powers of one value, in units of
/// `-log base`: the root `u` of `Σ base^(e_i u) = 1`. The true dimension is
/// `u / -log base`, so ratios of such roots are base-independent.
pub fn moran_root_in_base(exponents: &[BigRational]) -> Result<f64, SpaceError> {
    let logs: Vec<f64> = exponents
        .iter()
        .map(crate::arith::rational_to_f64)
        .collect();
    moran_root(&logs)
}

/// Numeric `-log` of a power product; `None` when a symbolic base remains.
pub fn neg_log(v: &PowerProduct) -> Option<f64> {
    v.ln().map(|l| -l)
}
