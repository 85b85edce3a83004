use std::cmp::Ordering;
use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::PowerProduct;
use crate::budget::Budget;
use crate::exec::Execution;
use crate::symbolic::{SymbolicPoint, SymbolicSpace};

use super::{MapWitness, WitnessError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremes {
    pub max: String,
    pub min: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: (usize, usize),
    pub source_prefix: usize,
    /// `None` when both points have the same image.
    pub target_prefix: Option<usize>,
    pub ratio: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub depth: u32,
    pub pair_count: u64,
    /// Distinct `(source prefix, target prefix)` classes checked exactly.
    pub distance_classes: usize,
    pub claimed_s: String,
    #[serde(rename = "claimed_C")]
    pub claimed_c: String,
    /// Extremes of `d' / d^s` over all pairs; absent when nothing was checked.
    pub observed_extremes: Option<Extremes>,
    pub violations: Vec<Violation>,
}

/// Distance class of a pair: prefix length, plus the prefix word when the
/// weights are not uniform. `None` length means the points coincide.
type PrefixKey = (Option<u32>, Vec<u32>);

/// Points expanded to a common horizon, so prefix comparison is a slice scan.
struct Expanded<'a> {
    space: &'a SymbolicSpace,
    horizon: usize,
    symbols: Vec<u32>,
}

const MAX_HORIZON: usize = 1 << 12;

impl<'a> Expanded<'a> {
    fn new(space: &'a SymbolicSpace, points: &[SymbolicPoint]) -> Option<Self> {
        let pre = points.iter().map(|p| p.preperiod().len()).max().unwrap_or(0);
        let mut per = 1usize;
        for p in points {
            per = per.lcm(&p.period().len());
            if per > MAX_HORIZON {
                return None;
            }
        }
        let horizon = pre + per;
        let mut symbols = Vec::with_capacity(horizon * points.len());
        for p in points {
            symbols.extend((0..horizon).map(|i| p.symbol(i)));
        }
        Some(Self {
            space,
            horizon,
            symbols,
        })
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.symbols[i * self.horizon..(i + 1) * self.horizon]
    }

    /// Past the horizon both points repeat with a common period, so no
    /// difference within it means the points are equal.
    fn key(&self, i: usize, j: usize) -> PrefixKey {
        let (a, b) = (self.row(i), self.row(j));
        match a.iter().zip(b).position(|(x, y)| x != y) {
            None => (None, Vec::new()),
            Some(k) if self.space.is_uniform() => (Some(k as u32), Vec::new()),
            Some(k) => (Some(k as u32), a[..k].to_vec()),
        }
    }

    fn weight(&self, key: &PrefixKey) -> Option<PowerProduct> {
        let len = key.0?;
        Some(if self.space.is_uniform() {
            self.space.weight_of(0).powi(len as i64)
        } else {
            self.space.word_weight(&key.1)
        })
    }
}

type ClassMap = HashMap<(PrefixKey, PrefixKey), (usize, usize)>;

fn merge(mut a: ClassMap, b: ClassMap) -> ClassMap {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        a.entry(k).and_modify(|w| *w = (*w).min(v)).or_insert(v);
    }
    a
}

fn compare(a: &PowerProduct, b: &PowerProduct) -> Result<Ordering, WitnessError> {
    a.compare(b)
        .ok_or_else(|| WitnessError::Undecidable(format!("{a} against {b}")))
}

/// Checks `C^{-1} d^s <= d' <= C d^s` for every unordered pair of the
/// depth-`depth` cylinder points `word·0^∞` of the source, exactly.
///
/// Pairs are grouped by the prefixes that determine `d` and `d'`; one exact
/// comparison per class covers all its pairs. Violations report the least
/// pair `(i, j)` of each failing class, indices in lexicographic order of
/// the source words.
pub fn verify_witness(
    witness: &MapWitness,
    depth: u32,
    budget: &Budget,
    exec: Execution,
) -> Result<VerificationReport, WitnessError> {
    let points = witness.source().enumerate_cylinder_points(depth, budget)?;
    let pair_count = Budget::pair_count(points.len() as u64);
    if pair_count > budget.max_pairs {
        return Err(WitnessError::PairBudget {
            pairs: pair_count,
            limit: budget.max_pairs,
        });
    }
    let images = exec.map(&points, |x| witness.eval(x));
    let (src, tgt) = match (
        Expanded::new(witness.source(), &points),
        Expanded::new(witness.target(), &images),
    ) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(WitnessError::NotRepresentable("image period horizon".into())),
    };

    let n = points.len();
    let classes = exec.fold_range(
        n,
        ClassMap::new,
        |mut acc, i| {
            for j in i + 1..n {
                acc.entry((src.key(i, j), tgt.key(i, j))).or_insert((i, j));
            }
            acc
        },
        merge,
    );
    let mut classes: Vec<_> = classes.into_iter().collect();
    classes.sort_by_key(|(_, pair)| *pair);

    let cert = witness.certificate();
    let c_inv = cert.c.recip();
    let mut extremes: Option<(PowerProduct, PowerProduct)> = None;
    let mut violations = Vec::new();
    for ((sk, tk), pair) in &classes {
        let source_prefix = sk.0.expect("enumerated points are distinct") as usize;
        let d = src.weight(sk).expect("distinct points");
        let ds = cert.s.apply(&d).ok_or_else(|| {
            WitnessError::NotRepresentable(format!("{d}^({})", cert.s))
        })?;
        let Some(d2) = tgt.weight(tk) else {
            violations.push(Violation {
                pair: *pair,
                source_prefix,
                target_prefix: None,
                ratio: "0".into(),
                reason: "images coincide".into(),
            });
            continue;
        };
        let ratio = d2.div(&ds);
        let reason = if compare(&ratio, &cert.c)? == Ordering::Greater {
            Some("above C")
        } else if compare(&ratio, &c_inv)? == Ordering::Less {
            Some("below 1/C")
        } else {
            None
        };
        if let Some(reason) = reason {
            violations.push(Violation {
                pair: *pair,
                source_prefix,
                target_prefix: tk.0.map(|k| k as usize),
                ratio: ratio.to_string(),
                reason: reason.into(),
            });
        }
        extremes = Some(match extremes {
            None => (ratio.clone(), ratio),
            Some((hi, lo)) => {
                let hi = if compare(&ratio, &hi)? == Ordering::Greater { ratio.clone() } else { hi };
                let lo = if compare(&ratio, &lo)? == Ordering::Less { ratio } else { lo };
                (hi, lo)
            }
        });
    }

    Ok(VerificationReport {
        pass: violations.is_empty(),
        depth,
        pair_count,
        distance_classes: classes.len(),
        claimed_s: cert.s.to_string(),
        claimed_c: cert.c.to_string(),
        observed_extremes: extremes.map(|(hi, lo)| Extremes {
            max: hi.to_string(),
            min: lo.to_string(),
        }),
        violations,
    })
}
