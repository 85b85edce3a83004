use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{exact_root, exponent_vector};
use super::ArithError;

/// A positive real of the form `∏ p^(e_p) · ∏ β^(f_β)` with rational
/// exponents, where `p` ranges over primes and `β` over named symbolic
/// bases. Symbolic bases are opaque values in `(0, 1)` and are treated as
/// multiplicatively independent of each other and of every rational.
///
/// This is the value type for weights, distances, and certificate
/// constants: it is closed under products and rational powers, and
/// comparison is exact whenever it is decidable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerProduct {
    primes: BTreeMap<BigUint, BigRational>,
    bases: BTreeMap<String, BigRational>,
}

fn bump<K: Ord + Clone>(map: &mut BTreeMap<K, BigRational>, key: &K, by: &BigRational) {
    if by.is_zero() {
        return;
    }
    let slot = map.entry(key.clone()).or_insert_with(BigRational::zero);
    *slot += by;
    if slot.is_zero() {
        map.remove(key);
    }
}

impl PowerProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_rational(q: &BigRational) -> Result<Self, ArithError> {
        let v = exponent_vector(q)?;
        Ok(Self {
            primes: v
                .iter()
                .map(|(p, e)| (p.clone(), BigRational::from_integer(e.into())))
                .collect(),
            bases: BTreeMap::new(),
        })
    }

    pub fn from_integer(n: u64) -> Result<Self, ArithError> {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// `base^exponent` for an opaque symbolic base.
    pub fn symbol(base: &str, exponent: BigRational) -> Self {
        let mut bases = BTreeMap::new();
        if !exponent.is_zero() {
            bases.insert(base.to_string(), exponent);
        }
        Self {
            primes: BTreeMap::new(),
            bases,
        }
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty() && self.bases.is_empty()
    }

    pub fn is_symbolic(&self) -> bool {
        !self.bases.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.primes.iter()
    }

    pub fn bases(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.bases.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in &other.primes {
            bump(&mut out.primes, p, e);
        }
        for (b, e) in &other.bases {
            bump(&mut out.bases, b, e);
        }
        out
    }

    pub fn recip(&self) -> Self {
        self.pow(&-BigRational::one())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn pow(&self, e: &BigRational) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        Self {
            primes: self.primes.iter().map(|(p, x)| (p.clone(), x * e)).collect(),
            bases: self.bases.iter().map(|(b, x)| (b.clone(), x * e)).collect(),
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        self.pow(&BigRational::from_integer(e.into()))
    }

    /// The value as a rational, when every exponent is an integer and no
    /// symbolic base remains.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.bases.is_empty() {
            return None;
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.primes {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer().abs().to_u32()?;
            if e.is_positive() {
                num *= p.pow(k);
            } else {
                den *= p.pow(k);
            }
        }
        Some(BigRational::new(num.into(), den.into()))
    }

    /// Natural logarithm, available when no symbolic base is present.
    pub fn ln(&self) -> Option<f64> {
        if !self.bases.is_empty() {
            return None;
        }
        Some(
            self.primes
                .iter()
                .map(|(p, e)| big_ln(p) * rational_to_f64(e))
                .sum(),
        )
    }

    /// Exact comparison with `1`. `None` when the answer depends on the
    /// unknown value of a symbolic base.
    pub fn cmp_one(&self) -> Option<Ordering> {
        let mut verdict = self.prime_part_cmp_one();
        for e in self.bases.values() {
            // Each base lies in (0, 1): a positive power is below one.
            let part = if e.is_positive() {
                Ordering::Less
            } else {
                Ordering::Greater
            };
            verdict = match verdict {
                Ordering::Equal => part,
                v if v == part => v,
                _ => return None,
            };
        }
        Some(verdict)
    }

    fn prime_part_cmp_one(&self) -> Ordering {
        if self.primes.is_empty() {
            return Ordering::Equal;
        }
        // Raise to the lcm of exponent denominators, then compare integers.
        let lcm = self
            .primes
            .values()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.primes {
            let k = (e * BigRational::from_integer(lcm.clone())).to_integer();
            let power = p.pow(k.magnitude().to_u32().expect("exponent fits in u32"));
            if k.is_positive() {
                num *= power;
            } else {
                den *= power;
            }
        }
        num.cmp(&den)
    }

    /// Exact order between two values, when decidable.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        self.div(other).cmp_one()
    }

    /// Exact `k`-th root of a rational raised to the given exponent; used by
    /// [`super::rational_power`].
    pub(crate) fn rational_exact(q: &BigRational, e: &BigRational) -> Option<BigRational> {
        let k = e.denom().to_u32()?;
        let num = exact_root(q.numer().magnitude(), k)?;
        let den = exact_root(q.denom().magnitude(), k)?;
        let root = BigRational::new(num.into(), den.into());
        let m = e.numer().to_i32()?;
        Some(num_traits::pow::Pow::pow(&root, m))
    }

    /// The combined sparse exponent vector over primes and symbolic bases.
    pub(crate) fn keyed(&self) -> Vec<(Key<'_>, &BigRational)> {
        self.primes
            .iter()
            .map(|(p, e)| (Key::Prime(p), e))
            .chain(self.bases.iter().map(|(b, e)| (Key::Base(b), e)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Key<'a> {
    Prime(&'a BigUint),
    Base(&'a str),
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = big_ln(q.numer().magnitude());
        let d = big_ln(q.denom().magnitude());
        (n - d).exp()
    })
}

/// Natural log of a positive big integer, accurate to f64 precision even
/// beyond the f64 range.
pub(crate) fn big_ln(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite for < 1000 bits").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, base: &dyn fmt::Display, e: &BigRational) -> fmt::Result {
    if e.is_one() {
        write!(f, "{base}")
    } else if e.is_integer() {
        write!(f, "{base}^{e}")
    } else {
        write!(f, "{base}^({e})")
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (p, e) in &self.primes {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            fmt_exp(f, p, e)?;
        }
        for (b, e) in &self.bases {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            fmt_exp(f, b, e)?;
        }
        Ok(())
    }
}
