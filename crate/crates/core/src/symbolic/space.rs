use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::arith::PowerProduct;
use crate::budget::Budget;

use super::point::{common_prefix_length, SymbolicPoint};
use super::{ScaleFactor, SpaceError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weights {
    Uniform(ScaleFactor),
    Vector(Vec<ScaleFactor>),
}

/// `(Ω_N, ρ)`: one-sided sequences over `{0, …, N-1}` with the metric
/// `ρ(x, y) = w(x ∧ y)`, the product of the weights along the common prefix.
#[derive(Clone, Debug)]
pub struct SymbolicSpace {
    alphabet: u32,
    weights: Weights,
    // Power-product form of each weight, one entry for uniform spaces.
    cached: Vec<PowerProduct>,
}

impl PartialEq for SymbolicSpace {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.weights == other.weights
    }
}

impl Eq for SymbolicSpace {}

/// An exact distance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Zero,
    Positive(PowerProduct),
}

impl Distance {
    pub fn as_power(&self) -> Option<&PowerProduct> {
        match self {
            Distance::Zero => None,
            Distance::Positive(v) => Some(v),
        }
    }

    /// Exact order; `None` only when symbolic bases make it undecidable.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Zero, Distance::Zero) => Some(Ordering::Equal),
            (Distance::Zero, Distance::Positive(_)) => Some(Ordering::Less),
            (Distance::Positive(_), Distance::Zero) => Some(Ordering::Greater),
            (Distance::Positive(a), Distance::Positive(b)) => a.compare(b),
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Zero => write!(f, "0"),
            Distance::Positive(v) => write!(f, "{v}"),
        }
    }
}

impl SymbolicSpace {
    pub fn uniform(alphabet: u32, r: ScaleFactor) -> Result<Self, SpaceError> {
        if alphabet < 2 {
            return Err(SpaceError::AlphabetTooSmall(alphabet));
        }
        let cached = vec![r.to_power_product()];
        Ok(Self {
            alphabet,
            weights: Weights::Uniform(r),
            cached,
        })
    }

    /// Vector weights `(r_0, …, r_{N-1})`. Symbolic weights must all be
    /// powers of one opaque base; mixing them with rationals is rejected.
    pub fn vector(weights: Vec<ScaleFactor>) -> Result<Self, SpaceError> {
        let alphabet = weights.len() as u32;
        if alphabet < 2 {
            return Err(SpaceError::AlphabetTooSmall(alphabet));
        }
        let opaque: BTreeSet<Option<&str>> = weights.iter().map(|w| w.opaque_base()).collect();
        if opaque.len() > 1 {
            return Err(SpaceError::MixedBases);
        }
        let cached = weights.iter().map(|w| w.to_power_product()).collect();
        Ok(Self {
            alphabet,
            weights: Weights::Vector(weights),
            cached,
        })
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.weights, Weights::Uniform(_))
    }

    /// The uniform weight, if any.
    pub fn uniform_weight(&self) -> Option<&ScaleFactor> {
        match &self.weights {
            Weights::Uniform(r) => Some(r),
            Weights::Vector(_) => None,
        }
    }

    /// The weight of `symbol` as a power product.
    pub fn weight_of(&self, symbol: u32) -> &PowerProduct {
        if self.cached.len() == 1 {
            &self.cached[0]
        } else {
            &self.cached[symbol as usize]
        }
    }

    /// Same alphabet and numerically identical weights, regardless of how
    /// the weights were written.
    pub fn same_metric(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        (0..self.alphabet).all(|s| self.weight_of(s) == other.weight_of(s))
    }

    /// `r_{a_1} ⋯ r_{a_k}`; the empty word weighs one.
    pub fn word_weight(&self, word: &[u32]) -> PowerProduct {
        match &self.weights {
            Weights::Uniform(_) => self.cached[0].powi(word.len() as i64),
            Weights::Vector(_) => word
                .iter()
                .fold(PowerProduct::one(), |acc, &s| acc.mul(&self.cached[s as usize])),
        }
    }

    pub fn check_point(&self, x: &SymbolicPoint) -> Result<(), SpaceError> {
        x.check_alphabet(self.alphabet)
    }

    pub fn common_prefix_length(
        &self,
        x: &SymbolicPoint,
        y: &SymbolicPoint,
    ) -> Result<Option<usize>, SpaceError> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(common_prefix_length(x, y))
    }

    pub fn distance(&self, x: &SymbolicPoint, y: &SymbolicPoint) -> Result<Distance, SpaceError> {
        Ok(match self.common_prefix_length(x, y)? {
            None => Distance::Zero,
            Some(k) => Distance::Positive(self.word_weight(&x.prefix(k))),
        })
    }

    /// One point per depth-`k` word, `word · 0^∞`, in lexicographic order.
    pub fn enumerate_cylinder_points(
        &self,
        depth: u32,
        budget: &Budget,
    ) -> Result<Vec<SymbolicPoint>, SpaceError> {
        let count = (self.alphabet as u64)
            .checked_pow(depth)
            .filter(|&c| c <= budget.max_points)
            .ok_or(SpaceError::EnumerationLimit {
                alphabet: self.alphabet,
                depth,
                limit: budget.max_points,
            })?;
        let n = self.alphabet as u64;
        Ok((0..count)
            .map(|mut i| {
                let mut word = vec![0u32; depth as usize];
                for slot in word.iter_mut().rev() {
                    *slot = (i % n) as u32;
                    i /= n;
                }
                SymbolicPoint::word_then_zeros(word)
            })
            .collect())
    }
}

impl fmt::Display for SymbolicSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.weights {
            Weights::Uniform(r) => write!(f, "(Ω_{}, ρ_{r})", self.alphabet),
            Weights::Vector(ws) => {
                let ws: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "(Ω_{}, ρ_({}))", self.alphabet, ws.join(", "))
            }
        }
    }
}
