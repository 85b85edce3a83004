use num_rational::BigRational;

use crate::arith::poly::moran_roots_coincide;
use crate::arith::{log_ratio, ratio, Exponent, LogRatio, PowerProduct};
use crate::symbolic::{moran_root, moran_root_in_base, neg_log, ScaleFactor};

use super::two_branch::{classify_two_branch_lipschitz, TwoBranchInstance};
use super::{rule, ClassifyError, HolderExponent, Verdict, VerdictKind};

/// `E ~ F` (Hölder) reduced to `E' ~ F` (Lipschitz) with
/// `E' = (r₁^s, …, r_m^s)` and `s = dim E / dim F`.
#[derive(Clone, Debug)]
pub struct ReducedInstance {
    /// `None` when no dimension can be computed (unrelated opaque bases).
    pub s: Option<HolderExponent>,
    /// `E'`, when `s` is exact.
    pub reduced: Option<Vec<PowerProduct>>,
    /// The Lipschitz verdict on `(E', F)`.
    pub verdict: Verdict,
}

/// Writes every value as `base^k` for the first value as base.
fn common_base(values: &[PowerProduct]) -> Option<Vec<BigRational>> {
    let base = values.first()?;
    values
        .iter()
        .map(|v| match log_ratio(v, base).ok()? {
            LogRatio::Rational(k) => Some(k),
            LogRatio::Incommensurable => None,
        })
        .collect()
}

fn numeric_dimension_ratio(e: &[PowerProduct], f: &[PowerProduct]) -> Option<f64> {
    let logs = |xs: &[PowerProduct]| xs.iter().map(neg_log).collect::<Option<Vec<_>>>();
    if let (Some(le), Some(lf)) = (logs(e), logs(f)) {
        return Some(moran_root(&le).ok()? / moran_root(&lf).ok()?);
    }
    let all: Vec<PowerProduct> = e.iter().chain(f).cloned().collect();
    let exps = common_base(&all)?;
    let (ee, ef) = exps.split_at(e.len());
    Some(moran_root_in_base(ee).ok()? / moran_root_in_base(ef).ok()?)
}

/// Multiset equality.
pub(super) fn same_multiset(a: &[PowerProduct], b: &[PowerProduct]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut rest: Vec<&PowerProduct> = b.iter().collect();
    a.iter().all(|x| match rest.iter().position(|y| *y == x) {
        Some(i) => {
            rest.swap_remove(i);
            true
        }
        None => false,
    })
}

/// Exact test `dim E' = dim F`.
fn same_dimension(e: &[PowerProduct], f: &[PowerProduct]) -> bool {
    if same_multiset(e, f) {
        return true;
    }
    let all: Vec<PowerProduct> = e.iter().chain(f).cloned().collect();
    let Some(exps) = common_base(&all) else {
        return false;
    };
    let (ee, ef) = exps.split_at(e.len());
    moran_roots_coincide(ee, ef) == Some(true)
}

/// Exponents that can relate `E` and `F` under a known rule: `1`, and
/// `k · log t_j / log r_i` for `k ∈ {1/2, 1, 2}`.
fn candidates(e: &[PowerProduct], f: &[PowerProduct]) -> Vec<Exponent> {
    let mut out = vec![Exponent::one()];
    for r in e {
        for t in f {
            for k in [ratio(1, 2), ratio(1, 1), ratio(2, 1)] {
                if let Some(x) = Exponent::sending(r, &t.pow(&k)) {
                    if !out.iter().any(|y| y.exact_eq(&x) == Some(true)) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

fn lipschitz_on_reduced(reduced: &[PowerProduct], f: &[PowerProduct]) -> Verdict {
    if same_multiset(reduced, f) {
        return Verdict::new(VerdictKind::LipschitzEquivalent, rule::DIMENSION_REDUCTION);
    }
    if let ([a, b], [c, d]) = (reduced, f) {
        if let (Some(x), Some(y)) = (
            TwoBranchInstance::from_values(a, b),
            TwoBranchInstance::from_values(c, d),
        ) {
            let mut v = classify_two_branch_lipschitz(&x, &y);
            v.witness = None;
            return v;
        }
    }
    Verdict::unknown(
        rule::DIMENSION_REDUCTION,
        format!(
            "no rule decides Lipschitz equivalence for {} and {} branches with distinct ratios",
            reduced.len(),
            f.len()
        ),
    )
}

/// Reduces Hölder equivalence of `E` and `F` to Lipschitz equivalence of
/// `E'` and `F`. The exponent is exact when a candidate exponent matches
/// the numeric dimension ratio and `dim E' = dim F` is verified exactly;
/// otherwise it is reported numerically and the verdict is `Unknown`,
/// except for two-branch instances over one common base, where every
/// equivalence would have produced a verified candidate.
pub fn reduce_holder_to_lipschitz(
    e: &[ScaleFactor],
    f: &[ScaleFactor],
) -> Result<ReducedInstance, ClassifyError> {
    for side in [e, f] {
        if side.len() < 2 {
            return Err(crate::symbolic::SpaceError::TooFewRatios(side.len()).into());
        }
    }
    let ev: Vec<PowerProduct> = e.iter().map(ScaleFactor::to_power_product).collect();
    let fv: Vec<PowerProduct> = f.iter().map(ScaleFactor::to_power_product).collect();
    let numeric = numeric_dimension_ratio(&ev, &fv);

    for sigma in candidates(&ev, &fv) {
        let Some(approx) = sigma.approx() else { continue };
        if let Some(s) = numeric {
            if (approx - s).abs() > 1e-9 * s.max(1.0) {
                continue;
            }
        }
        let Some(reduced) = ev.iter().map(|r| sigma.apply(r)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if same_dimension(&reduced, &fv) {
            let verdict = lipschitz_on_reduced(&reduced, &fv);
            return Ok(ReducedInstance {
                s: Some(HolderExponent::exact(sigma)),
                reduced: Some(reduced),
                verdict,
            });
        }
    }

    let s = numeric.map(|approx| HolderExponent {
        exact: None,
        approx,
    });
    let all: Vec<PowerProduct> = ev.iter().chain(&fv).cloned().collect();
    let verdict = if ev.len() == 2 && fv.len() == 2 && common_base(&all).is_some() {
        Verdict::not_equivalent(
            rule::DIMENSION_REDUCTION,
            "no exponent relates the instances through a known rule",
        )
    } else {
        Verdict::unknown(
            rule::DIMENSION_REDUCTION,
            "the dimension ratio is not known exactly",
        )
    };
    Ok(ReducedInstance {
        s,
        reduced: None,
        verdict,
    })
}
