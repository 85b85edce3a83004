//! Decision procedures for Lipschitz and strict Hölder equivalence.
//!
//! Every verdict is reached through exact multiplicative-dependence tests;
//! floating-point dimensions only appear in reports. `Unknown` is returned
//! when no rule covers an instance or the deciding equality is out of reach.

mod dispatch;
mod reduce;
mod two_branch;
mod uniform;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Exponent};
use crate::cube::CubeError;
use crate::exec::Execution;
use crate::symbolic::SpaceError;
use crate::witness::{MapWitness, WitnessError, WitnessSummary};

pub use dispatch::{classify_self_similar, uniform_model};
pub use reduce::{reduce_holder_to_lipschitz, ReducedInstance};
pub use two_branch::{classify_two_branch_holder, classify_two_branch_lipschitz, TwoBranchInstance};
pub use uniform::{classify_cubes_holder, classify_cubes_lipschitz, classify_symbolic, CubeOptions};

/// Names of the decision rules a verdict can cite.
pub mod rule {
    pub const IDENTITY: &str = "identity";
    pub const CUBE_LIPSCHITZ: &str = "cube-lipschitz";
    pub const CUBE_HOLDER: &str = "cube-holder";
    pub const SYMBOLIC_LIPSCHITZ: &str = "symbolic-lipschitz";
    pub const SYMBOLIC_HOLDER: &str = "symbolic-holder";
    pub const TWO_BRANCH_LIPSCHITZ_INDEPENDENT: &str = "two-branch-lipschitz-independent";
    pub const TWO_BRANCH_LIPSCHITZ_DEPENDENT: &str = "two-branch-lipschitz-dependent";
    pub const TWO_BRANCH_LIPSCHITZ_MIXED: &str = "two-branch-lipschitz-mixed";
    pub const TWO_BRANCH_HOLDER_INDEPENDENT: &str = "two-branch-holder-independent";
    pub const TWO_BRANCH_HOLDER_PROPORTIONAL: &str = "two-branch-holder-proportional";
    pub const TWO_BRANCH_HOLDER_PATTERN: &str = "two-branch-holder-pattern";
    pub const TWO_BRANCH_HOLDER_MIXED: &str = "two-branch-holder-mixed";
    pub const DIMENSION_REDUCTION: &str = "dimension-reduction";
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("symbolic classification needs uniform weights")]
    NotUniform,
    #[error("expected {expected} ratios, got {got}")]
    RatioCount { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Lipschitz,
    Holder,
}

/// A Hölder exponent in the source-to-target direction: `d' ≍ d^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderExponent {
    pub exact: Option<Exponent>,
    pub approx: f64,
}

impl HolderExponent {
    pub fn exact(e: Exponent) -> Self {
        let approx = e.approx().unwrap_or(f64::NAN);
        Self {
            exact: Some(e),
            approx,
        }
    }

    pub fn recip(&self) -> Self {
        Self {
            exact: self.exact.as_ref().map(Exponent::recip),
            approx: 1.0 / self.approx,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerdictKind {
    LipschitzEquivalent,
    StrictlyHolderEquivalent(HolderExponent),
    NotEquivalent(String),
    Unknown(String),
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::LipschitzEquivalent => "LipschitzEquivalent",
            VerdictKind::StrictlyHolderEquivalent(_) => "StrictlyHolderEquivalent",
            VerdictKind::NotEquivalent(_) => "NotEquivalent",
            VerdictKind::Unknown(_) => "Unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<MapWitness>,
    pub rule: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    /// Exact form, e.g. `3/2` or `log(1/2)/log(1/27)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub den: Option<i64>,
    pub approx: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<ExponentReport>,
    pub theorem: &'static str,
    pub witness: Option<WitnessSummary>,
    pub reasons: Vec<String>,
}

impl Verdict {
    pub(crate) fn new(kind: VerdictKind, rule: &'static str) -> Self {
        Self {
            kind,
            witness: None,
            rule,
        }
    }

    pub(crate) fn with_witness(mut self, witness: Option<MapWitness>) -> Self {
        self.witness = witness;
        self
    }

    pub(crate) fn not_equivalent(rule: &'static str, reason: impl Into<String>) -> Self {
        Self::new(VerdictKind::NotEquivalent(reason.into()), rule)
    }

    pub(crate) fn unknown(rule: &'static str, reason: impl Into<String>) -> Self {
        Self::new(VerdictKind::Unknown(reason.into()), rule)
    }

    pub(crate) fn holder(e: HolderExponent, rule: &'static str) -> Self {
        Self::new(VerdictKind::StrictlyHolderEquivalent(e), rule)
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(
            self.kind,
            VerdictKind::LipschitzEquivalent | VerdictKind::StrictlyHolderEquivalent(_)
        )
    }

    pub fn exponent(&self) -> Option<&HolderExponent> {
        match &self.kind {
            VerdictKind::StrictlyHolderEquivalent(e) => Some(e),
            _ => None,
        }
    }

    pub fn report(&self) -> VerdictReport {
        let exponent = self.exponent().map(|e| {
            let rational = e.exact.as_ref().and_then(Exponent::as_rational);
            let small = |v: &num_bigint::BigInt| i64::try_from(v).ok();
            ExponentReport {
                exact: e.exact.as_ref().map(ToString::to_string),
                num: rational.and_then(|k| small(k.numer())),
                den: rational.and_then(|k| small(k.denom())),
                approx: e.approx,
            }
        });
        let reasons = match &self.kind {
            VerdictKind::NotEquivalent(r) | VerdictKind::Unknown(r) => vec![r.clone()],
            _ => Vec::new(),
        };
        VerdictReport {
            kind: self.kind.name(),
            exponent,
            theorem: self.rule,
            witness: self.witness.as_ref().map(MapWitness::summary),
            reasons,
        }
    }
}

/// Classifies independent items, possibly in parallel; output order
/// follows input order.
pub fn classify_batch<T, F>(items: &[T], exec: Execution, classify: F) -> Vec<Result<Verdict, ClassifyError>>
where
    T: Sync,
    F: Fn(&T) -> Result<Verdict, ClassifyError> + Sync + Send,
{
    exec.map(items, classify)
}
