use std::fmt;

use num_integer::Integer;

use super::SpaceError;

/// An eventually periodic sequence `preperiod · period^∞`, always held in
/// canonical form: the period is primitive and the preperiod is as short as
/// possible. Structural equality is therefore sequence equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicPoint {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl SymbolicPoint {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self, SpaceError> {
        if period.is_empty() {
            return Err(SpaceError::EmptyPeriod);
        }
        let mut p = Self { preperiod, period };
        p.canonicalize();
        Ok(p)
    }

    /// `word · 0^∞`, the representative used for cylinder enumeration.
    pub fn word_then_zeros(word: Vec<u32>) -> Self {
        Self::new(word, vec![0]).expect("nonempty period")
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// The `i`-th symbol (0-based).
    #[inline]
    pub fn symbol(&self, i: usize) -> u32 {
        let pre = self.preperiod.len();
        if i < pre {
            self.preperiod[i]
        } else {
            self.period[(i - pre) % self.period.len()]
        }
    }

    /// The first `len` symbols.
    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (0..len).map(|i| self.symbol(i)).collect()
    }

    pub fn max_symbol(&self) -> u32 {
        self.preperiod
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: u32) -> Result<(), SpaceError> {
        let m = self.max_symbol();
        if m >= alphabet {
            return Err(SpaceError::SymbolOutOfRange {
                symbol: m,
                alphabet,
            });
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(d) = (1..n)
            .filter(|&d| n.is_multiple_of(d))
            .find(|&d| (d..n).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        // Absorb trailing preperiod symbols into a rotated period.
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    /// Rewrites the point with a preperiod of length `pre_len` (at least the
    /// canonical one) and a period whose length is a multiple of `unit`.
    /// The result is not canonical; callers regroup and re-canonicalize.
    pub(crate) fn unrolled(&self, pre_len: usize, unit: usize) -> (Vec<u32>, Vec<u32>) {
        debug_assert!(pre_len >= self.preperiod.len());
        let per_len = self.period.len().lcm(&unit);
        let pre = self.prefix(pre_len);
        let per = (pre_len..pre_len + per_len).map(|i| self.symbol(i)).collect();
        (pre, per)
    }
}

/// Length of the maximal common prefix of `x` and `y`; `None` when the
/// points are equal (infinite common prefix).
pub fn common_prefix_length(x: &SymbolicPoint, y: &SymbolicPoint) -> Option<usize> {
    if x == y {
        return None;
    }
    // Beyond max(pre) both are periodic with period lcm(|per_x|, |per_y|).
    let bound = x.preperiod.len().max(y.preperiod.len()) + x.period.len().lcm(&y.period.len());
    (0..bound).find(|&i| x.symbol(i) != y.symbol(i))
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[u32]| {
            w.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if !self.preperiod.is_empty() {
            write!(f, "{}·", join(&self.preperiod))?;
        }
        write!(f, "({})^∞", join(&self.period))
    }
}
