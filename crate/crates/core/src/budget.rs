//! Limits on exhaustive enumeration.

use std::env;

/// Environment variable overriding [`Budget::max_pairs`].
pub const MAX_PAIRS_ENV: &str = "HOLDER_LAB_MAX_PAIRS";

pub const DEFAULT_MAX_POINTS: u64 = 1 << 22;
pub const DEFAULT_MAX_PAIRS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_points: u64,
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_points: DEFAULT_MAX_POINTS,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

impl Budget {
    /// Defaults, with `HOLDER_LAB_MAX_PAIRS` applied when it parses.
    pub fn from_env() -> Self {
        let mut b = Self::default();
        if let Some(n) = env::var(MAX_PAIRS_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            b.max_pairs = n;
        }
        b
    }

    /// Unordered pairs of distinct points among `points`.
    pub fn pair_count(points: u64) -> u64 {
        points.saturating_mul(points.saturating_sub(1)) / 2
    }

    /// Largest depth `k` whose `alphabet^k` points stay within both limits.
    pub fn deepest(&self, alphabet: u32) -> u32 {
        let mut k = 0;
        let mut points: u64 = 1;
        loop {
            let Some(next) = points.checked_mul(alphabet as u64) else {
                return k;
            };
            if next > self.max_points || Self::pair_count(next) > self.max_pairs {
                return k;
            }
            points = next;
            k += 1;
        }
    }
}
