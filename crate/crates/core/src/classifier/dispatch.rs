use crate::symbolic::{ScaleFactor, SpaceError, SymbolicSpace};

use super::reduce::{reduce_holder_to_lipschitz, same_multiset};
use super::two_branch::{classify_two_branch_holder, classify_two_branch_lipschitz, TwoBranchInstance};
use super::uniform::classify_symbolic;
use super::{rule, ClassifyError, Mode, Verdict, VerdictKind};

/// The uniform space of a ratio vector whose entries all coincide.
pub fn uniform_model(ratios: &[ScaleFactor]) -> Option<SymbolicSpace> {
    let first = ratios.first()?.to_power_product();
    if ratios.iter().any(|r| r.to_power_product() != first) {
        return None;
    }
    SymbolicSpace::uniform(ratios.len() as u32, ratios[0].clone()).ok()
}

/// Self-similar sets given by their ratio vectors (strong separation is
/// assumed, so each is identified with its symbolic model).
///
/// Uniform pairs use the symbolic rule, two-branch pairs the two-branch
/// rules, and everything else the dimension reduction.
pub fn classify_self_similar(
    e: &[ScaleFactor],
    f: &[ScaleFactor],
    mode: Mode,
) -> Result<Verdict, ClassifyError> {
    for side in [e, f] {
        if side.len() < 2 {
            return Err(SpaceError::TooFewRatios(side.len()).into());
        }
    }
    if let (Some(a), Some(b)) = (uniform_model(e), uniform_model(f)) {
        return classify_symbolic(&a, &b, mode);
    }
    if e.len() == 2 && f.len() == 2 {
        let (a, b) = (TwoBranchInstance::from_slice(e)?, TwoBranchInstance::from_slice(f)?);
        return Ok(match mode {
            Mode::Lipschitz => classify_two_branch_lipschitz(&a, &b),
            Mode::Holder => classify_two_branch_holder(&a, &b),
        });
    }
    let ev: Vec<_> = e.iter().map(ScaleFactor::to_power_product).collect();
    let fv: Vec<_> = f.iter().map(ScaleFactor::to_power_product).collect();
    match mode {
        Mode::Lipschitz if same_multiset(&ev, &fv) => {
            Ok(Verdict::new(VerdictKind::LipschitzEquivalent, rule::IDENTITY))
        }
        Mode::Lipschitz => Ok(Verdict::unknown(
            rule::DIMENSION_REDUCTION,
            "no rule decides Lipschitz equivalence for these ratio vectors",
        )),
        Mode::Holder => {
            let reduced = reduce_holder_to_lipschitz(e, f)?;
            Ok(match reduced.verdict.kind {
                VerdictKind::LipschitzEquivalent => Verdict::holder(
                    reduced.s.expect("exact exponent on success"),
                    rule::DIMENSION_REDUCTION,
                ),
                _ => Verdict {
                    rule: rule::DIMENSION_REDUCTION,
                    ..reduced.verdict
                },
            })
        }
    }
}
